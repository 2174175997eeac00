#ifndef QUADLAND_CERTIFIER_HPP_
#define QUADLAND_CERTIFIER_HPP_

#include <string>

#include "quadland/model.hpp"

namespace quadland {

struct MinEigResult {
  double eigenvalue = 0.0;
  Weights direction;  // unit Frobenius norm, <U, H(U)> ~= eigenvalue
  int iterations = 0;
  int restarts = 0;
};

/// Smallest eigenvalue of the objective Hessian as an operator on k x d
/// matrices, by Lanczos iteration on Hessian-vector products with full
/// reorthogonalization. Converges when the Ritz residual drops below
/// tol * (operator norm estimate). Restarts from a fresh random vector on
/// stagnation, up to 5 times, then throws std::runtime_error.
MinEigResult min_hessian_eig(const Weights& w, const Objective& obj, double tol = 1e-10);

struct RankResult {
  int rank = 0;
  double sigma_ratio = 0.0;  // sigma_k / sigma_1, 0 when sigma_1 = 0 or k > d
};

/// Numerical rank: number of singular values above rel_tol * sigma_1.
RankResult numerical_rank(const Weights& w, double rel_tol = 1e-8);

enum class Verdict { kCertifiedGlobal, kSecondOrderStationaryOnly, kNotStationary };

std::string to_string(Verdict v);

/// Optimality report at a candidate point. certified-global means the KKT
/// conditions of the convex reference problem hold at M = W^T W within eps:
/// Shat PSD up to -eps, ||W Shat||_F <= eps * (1 + ||W||_F), and a small
/// gradient; by the factored/convex equivalence this certifies global
/// optimality. With a perturbation present the certificate applies to the
/// perturbed objective.
struct Certificate {
  double grad_norm = 0.0;
  double min_hess_eig = 0.0;
  int numerical_rank_w = 0;
  double sigma_ratio = 0.0;
  double dual_min_eig = 0.0;      // lambda_min(Shat)
  double complementarity = 0.0;   // ||W Shat||_F
  Verdict verdict = Verdict::kNotStationary;
  double eps = 0.0;               // threshold the verdict was decided at
};

Certificate dual_certificate(const Weights& w, const Objective& obj, double eps = 1e-6);

}  // namespace quadland

#endif  // QUADLAND_CERTIFIER_HPP_
