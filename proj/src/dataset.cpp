#include "quadland/dataset.hpp"

#include <cmath>
#include <stdexcept>

namespace quadland {

std::string to_string(Task task) {
  return task == Task::kRegression ? "regression" : "classification";
}

void Dataset::validate() const {
  if (inputs.rows() < 1 || inputs.cols() < 1) {
    throw std::invalid_argument("dataset: need n >= 1 and d >= 1");
  }
  if (labels.size() != inputs.rows()) {
    throw std::invalid_argument("dataset: label count " +
                                std::to_string(labels.size()) +
                                " does not match sample count " +
                                std::to_string(inputs.rows()));
  }
  if (!inputs.allFinite() || !labels.allFinite()) {
    throw std::invalid_argument("dataset: non-finite entry");
  }
  if (task == Task::kClassification) {
    for (Eigen::Index i = 0; i < labels.size(); ++i) {
      if (labels[i] != 1.0 && labels[i] != -1.0) {
        throw std::invalid_argument(
            "dataset: classification label at sample " + std::to_string(i) +
            " is not in {-1, +1}");
      }
    }
  }
}

}  // namespace quadland
