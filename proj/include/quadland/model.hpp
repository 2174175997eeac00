#ifndef QUADLAND_MODEL_HPP_
#define QUADLAND_MODEL_HPP_

#include <Eigen/Dense>
#include <optional>

#include "quadland/dataset.hpp"
#include "quadland/loss.hpp"
#include "quadland/perturb.hpp"

namespace quadland {

/// Hidden-layer weights of the quadratic-activation network, one unit per
/// row: k x d. The network output is f(x, W) = ||W x||^2 = x^T W^T W x.
using Weights = Eigen::MatrixXd;

/// The training objective
///   L(W) = (1/n) sum_i l(f(x_i, W), y_i) + (lambda/2) ||W||_F^2
///          + <C, W^T W>                       (perturbation term, optional)
struct Objective {
  Dataset data;
  LossKind loss = LossKind::kSquared;
  double lambda = 0.0;
  std::optional<PerturbationC> perturbation;

  Eigen::Index n() const { return data.n(); }
  Eigen::Index d() const { return data.d(); }

  /// Throws std::invalid_argument on lambda < 0, invalid dataset, or a
  /// perturbation whose dimension disagrees with d.
  void validate() const;

  /// Same objective with the perturbation dropped; used to evaluate the
  /// unperturbed value at a point found on the smoothed landscape.
  Objective without_perturbation() const;
};

/// f(x, W) = x^T W^T W x. Throws on dimension mismatch.
double forward(const Weights& w, const Eigen::VectorXd& x);

double objective_value(const Weights& w, const Objective& obj);

/// Gradient of the objective: W * shat_matrix(W, obj).
Weights gradient(const Weights& w, const Objective& obj);

/// Shat = (2/n) sum_i l'(yhat_i, y_i) x_i x_i^T + lambda I + 2C.
/// The gradient factors as W * Shat; Shat also doubles as the dual
/// certificate matrix for the convex reference problem.
Eigen::MatrixXd shat_matrix(const Weights& w, const Objective& obj);

/// Hessian of the objective as a linear operator on k x d matrices,
/// evaluated at a fixed W. Construction precomputes the per-sample
/// predictions and loss derivatives so repeated applications (Lanczos)
/// cost one pass over the data each.
class HessianOperator {
 public:
  HessianOperator(const Weights& w, const Objective& obj);

  /// H(U) = (1/n) sum_i [ l''_i (2 x_i^T W^T U x_i) 2 W x_i x_i^T
  ///                      + 2 l'_i U x_i x_i^T ] + lambda U + 2 U C
  Weights apply(const Weights& u) const;

  Eigen::Index rows() const { return w_.rows(); }
  Eigen::Index cols() const { return w_.cols(); }

 private:
  Weights w_;
  Eigen::MatrixXd inputs_;       // n x d
  Eigen::MatrixXd projections_;  // n x k, row i = (W x_i)^T
  Eigen::VectorXd d1_, d2_;      // per-sample loss derivatives
  Eigen::MatrixXd shat_;         // d x d
};

/// One-shot Hessian-vector product; equivalent to HessianOperator(w, obj).apply(u).
Weights hessian_vector_product(const Weights& w, const Objective& obj, const Weights& u);

}  // namespace quadland

#endif  // QUADLAND_MODEL_HPP_
