#include "quadland/convex_oracle.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace quadland {

namespace {

Eigen::MatrixXd project_psd(const Eigen::MatrixXd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(0.5 * (m + m.transpose()));
  Eigen::VectorXd clipped = eig.eigenvalues().cwiseMax(0.0);
  return eig.eigenvectors() * clipped.asDiagonal() * eig.eigenvectors().transpose();
}

struct MEval {
  double value;
  Eigen::MatrixXd grad;  // (1/n) sum l' x x^T + (lambda/2) I
};

MEval eval_m(const Eigen::MatrixXd& m, const Dataset& data, LossKind loss, double lambda) {
  const Eigen::Index n = data.n();
  // ytilde_i = x_i^T M x_i via rowwise quadratic form.
  const Eigen::MatrixXd xm = data.inputs * m;  // n x d
  Eigen::VectorXd ytilde = (xm.array() * data.inputs.array()).rowwise().sum();
  double value = 0.0;
  Eigen::VectorXd d1(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const LossEval le = loss_derivatives(loss, ytilde[i], data.labels[i]);
    value += le.value;
    d1[i] = le.d1;
  }
  MEval out;
  out.value = value / static_cast<double>(n) + 0.5 * lambda * m.trace();
  out.grad = data.inputs.transpose() * d1.asDiagonal() * data.inputs / static_cast<double>(n);
  out.grad.diagonal().array() += 0.5 * lambda;
  return out;
}

}  // namespace

double objective_in_M(const Eigen::MatrixXd& m, const Dataset& data, LossKind loss,
                      double lambda) {
  if (m.rows() != data.d() || m.cols() != data.d()) {
    throw std::invalid_argument("objective_in_M: M dimension does not match data");
  }
  return eval_m(m, data, loss, lambda).value;
}

double kkt_residual(const Eigen::MatrixXd& m, const Dataset& data, LossKind loss,
                    double lambda) {
  const MEval ev = eval_m(m, data, loss, lambda);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(ev.grad);
  const double dual_defect = std::max(0.0, -eig.eigenvalues().minCoeff());
  const double comp = std::abs((ev.grad.array() * m.array()).sum()) / (1.0 + m.norm());
  return dual_defect + comp;
}

ConvexSolution solve_convex(const Dataset& data, LossKind loss, double lambda,
                            double tol, int max_iters) {
  data.validate();
  if (lambda < 0.0) throw std::invalid_argument("solve_convex: lambda must be >= 0");
  if (!(tol > 0.0)) throw std::invalid_argument("solve_convex: tol must be > 0");

  const Eigen::Index d = data.d();
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(d, d);
  MEval ev = eval_m(m, data, loss, lambda);
  double step = 1.0;

  ConvexSolution best;
  best.M = m;
  best.value = ev.value;
  best.kkt_residual = std::numeric_limits<double>::infinity();

  for (int it = 0; it < max_iters; ++it) {
    // Fixed-point residual at unit step.
    const Eigen::MatrixXd unit_move = project_psd(m - ev.grad);
    const double fp_residual = (m - unit_move).norm();
    if (fp_residual <= tol) {
      const double kkt = kkt_residual(m, data, loss, lambda);
      if (kkt <= tol) {
        best.M = m;
        best.value = ev.value;
        best.kkt_residual = kkt;
        best.iterations = it;
        best.converged = true;
        return best;
      }
    }

    // Backtracking proximal step: accept when the quadratic upper model holds.
    step *= 2.0;
    bool accepted = false;
    while (step >= 1e-20) {
      const Eigen::MatrixXd trial = project_psd(m - step * ev.grad);
      const Eigen::MatrixXd diff = trial - m;
      const double diff_sq = diff.squaredNorm();
      const MEval trial_ev = eval_m(trial, data, loss, lambda);
      const double model = ev.value + (ev.grad.array() * diff.array()).sum() +
                           0.5 / step * diff_sq;
      if (trial_ev.value <= model + 1e-15 * std::abs(ev.value)) {
        m = trial;
        ev = trial_ev;
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) break;  // no progress at machine-level steps

    if (ev.value < best.value) {
      best.M = m;
      best.value = ev.value;
      best.iterations = it + 1;
    }
  }

  best.M = m;
  best.value = ev.value;
  best.kkt_residual = kkt_residual(m, data, loss, lambda);
  best.converged = false;
  return best;
}

}  // namespace quadland
