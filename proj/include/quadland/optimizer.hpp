#ifndef QUADLAND_OPTIMIZER_HPP_
#define QUADLAND_OPTIMIZER_HPP_

#include <cstdint>
#include <optional>
#include <vector>

#include "quadland/model.hpp"

namespace quadland {

struct EscapeConfig {
  double radius = 1e-3;  // Frobenius radius of the escape perturbation
  int patience = 10;     // escape attempts before giving up
};

struct OptimConfig {
  /// Fixed step size; nullopt selects backtracking line search with shrink
  /// factor 0.5 and sufficient-decrease constant 1e-4.
  std::optional<double> fixed_step;
  int max_iters = 100000;
  /// Gradient stopping rule: ||grad||_F <= grad_tol * (1 + ||W||_F).
  double grad_tol = 1e-6;
  /// Curvature threshold for saddle escape: escape while
  /// lambda_min(Hessian) < -hess_tol.
  double hess_tol = 1e-6;
  std::optional<EscapeConfig> escape;
  double init_scale = 0.1;
  std::uint64_t seed = 0;
};

struct TrainResult {
  Weights final_weights;
  double final_value = 0.0;
  std::vector<double> value_history;      // objective after each iteration
  std::vector<double> grad_norm_history;  // gradient norm at each iterate
  int iterations = 0;
  bool converged = false;
  int escapes = 0;           // saddle perturbations applied (perturbed GD)
  double final_grad_norm = 0.0;
  double final_min_hess_eig = 0.0;  // only meaningful for perturbed GD
};

/// i.i.d. N(0, init_scale^2) entries, deterministic per seed.
Weights init_weights(int k, int d, double init_scale, std::uint64_t seed);

/// Gradient descent with weight decay folded into the objective. Stops when
/// the gradient rule is met or max_iters is reached. With backtracking the
/// objective is non-increasing across iterations; a fixed step that produces
/// a non-finite objective aborts with a diagnostic.
TrainResult run_gd(const Weights& w0, const Objective& obj, const OptimConfig& cfg);

/// Gradient descent that restarts from a random perturbation whenever it
/// reaches a small-gradient point with lambda_min(Hessian) < -hess_tol.
/// Converged means small gradient and no negative curvature detected;
/// requires cfg.escape.
TrainResult run_perturbed_gd(const Weights& w0, const Objective& obj, const OptimConfig& cfg);

}  // namespace quadland

#endif  // QUADLAND_OPTIMIZER_HPP_
