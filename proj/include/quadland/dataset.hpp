#ifndef QUADLAND_DATASET_HPP_
#define QUADLAND_DATASET_HPP_

#include <Eigen/Dense>
#include <string>

namespace quadland {

enum class Task { kRegression, kClassification };

std::string to_string(Task task);

/// A sample of n input vectors (rows of `inputs`) with scalar labels.
/// Classification labels live in {-1, +1}.
struct Dataset {
  Eigen::MatrixXd inputs;  // n x d
  Eigen::VectorXd labels;  // n
  Task task = Task::kRegression;

  Eigen::Index n() const { return inputs.rows(); }
  Eigen::Index d() const { return inputs.cols(); }

  /// Throws std::invalid_argument on any invariant violation:
  /// n >= 1, d >= 1, finite entries, label/row count agreement,
  /// classification labels in {-1, +1}.
  void validate() const;
};

}  // namespace quadland

#endif  // QUADLAND_DATASET_HPP_
