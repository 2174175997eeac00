#ifndef QUADLAND_CONVEX_ORACLE_HPP_
#define QUADLAND_CONVEX_ORACLE_HPP_

#include <Eigen/Dense>

#include "quadland/dataset.hpp"
#include "quadland/loss.hpp"

namespace quadland {

/// Global-optimum oracle for the convex reference problem over the PSD cone:
///   min_{M >= 0}  (1/n) sum_i l(x_i^T M x_i, y_i) + (lambda/2) trace(M).
/// Its optimal value equals the factored objective's global minimum when the
/// factor has enough rows, which is what makes it usable as ground truth.
struct ConvexSolution {
  Eigen::MatrixXd M;  // d x d PSD
  double value = 0.0;
  double kkt_residual = 0.0;
  int iterations = 0;
  bool converged = false;
};

/// Projected gradient with backtracking from M = 0; the PSD projection
/// clips negative eigenvalues. Converged means both the projected-gradient
/// fixed-point residual and the KKT residual are <= tol. On budget
/// exhaustion returns the best iterate flagged non-converged.
ConvexSolution solve_convex(const Dataset& data, LossKind loss, double lambda,
                            double tol = 1e-8, int max_iters = 100000);

/// Objective of the reference problem at symmetric M.
double objective_in_M(const Eigen::MatrixXd& m, const Dataset& data, LossKind loss,
                      double lambda);

/// KKT defect at PSD M: with G = (1/n) sum_i l'(ytilde_i) x_i x_i^T + (lambda/2) I,
/// returns max(0, -lambda_min(G)) + |<G, M>| / (1 + ||M||_F).
double kkt_residual(const Eigen::MatrixXd& m, const Dataset& data, LossKind loss,
                    double lambda);

}  // namespace quadland

#endif  // QUADLAND_CONVEX_ORACLE_HPP_
