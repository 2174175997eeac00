#include "quadland/optimizer.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "quadland/certifier.hpp"
#include "quadland/rng.hpp"

namespace quadland {

namespace {

constexpr double kArmijo = 1e-4;
constexpr double kShrink = 0.5;
constexpr double kMinStep = 1e-20;

double try_value(const Weights& w, const Objective& obj) {
  try {
    return objective_value(w, obj);
  } catch (const std::runtime_error&) {
    return std::numeric_limits<double>::infinity();
  }
}

bool grad_small(double grad_norm, const Weights& w, const OptimConfig& cfg) {
  return grad_norm <= cfg.grad_tol * (1.0 + w.norm());
}

// Uniform draw from the Frobenius ball of the given radius.
Weights ball_perturbation(int k, int d, double radius, Rng& rng) {
  Weights g(k, d);
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < d; ++j) g(i, j) = rng.gaussian();
  }
  const double r = radius * std::pow(rng.uniform_pos(), 1.0 / (k * d));
  return (r / g.norm()) * g;
}

// Core descent loop. Runs until the gradient rule fires or the iteration
// budget is exhausted; the caller owns what happens at small-gradient points.
struct LoopState {
  Weights w;
  double value = 0.0;
  double grad_norm = 0.0;
  double step = 1.0;  // warm-started backtracking step
  bool stalled = false;
};

void descend(LoopState& st, const Objective& obj, const OptimConfig& cfg,
             int max_iters, TrainResult& result) {
  for (int it = 0; it < max_iters; ++it) {
    const Weights grad = gradient(st.w, obj);
    st.grad_norm = grad.norm();
    result.grad_norm_history.push_back(st.grad_norm);
    if (grad_small(st.grad_norm, st.w, cfg)) return;

    if (cfg.fixed_step) {
      st.w -= *cfg.fixed_step * grad;
      st.value = try_value(st.w, obj);
      if (!std::isfinite(st.value)) {
        throw std::runtime_error("run_gd: non-finite objective encountered; step size too large");
      }
    } else {
      const double gg = st.grad_norm * st.grad_norm;
      double step = std::min(st.step * 2.0, 1e10);
      bool accepted = false;
      while (step >= kMinStep) {
        const Weights trial = st.w - step * grad;
        const double trial_value = try_value(trial, obj);
        if (trial_value <= st.value - kArmijo * step * gg) {
          st.w = trial;
          st.value = trial_value;
          st.step = step;
          accepted = true;
          break;
        }
        step *= kShrink;
      }
      if (!accepted) {
        // No decrease at machine-level steps: numerically stationary.
        st.stalled = true;
        return;
      }
    }
    ++result.iterations;
    result.value_history.push_back(st.value);
  }
}

TrainResult finish(LoopState& st, TrainResult& result, bool converged) {
  result.final_weights = std::move(st.w);
  result.final_value = st.value;
  result.final_grad_norm = st.grad_norm;
  result.converged = converged;
  return std::move(result);
}

}  // namespace

Weights init_weights(int k, int d, double init_scale, std::uint64_t seed) {
  if (k < 1 || d < 1) throw std::invalid_argument("init_weights: k, d must be >= 1");
  Rng rng(seed);
  Weights w(k, d);
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < d; ++j) w(i, j) = init_scale * rng.gaussian();
  }
  return w;
}

TrainResult run_gd(const Weights& w0, const Objective& obj, const OptimConfig& cfg) {
  obj.validate();
  if (cfg.max_iters < 1) throw std::invalid_argument("run_gd: max_iters must be >= 1");
  if (!(cfg.grad_tol > 0.0)) throw std::invalid_argument("run_gd: grad_tol must be > 0");

  TrainResult result;
  LoopState st;
  st.w = w0;
  st.value = objective_value(st.w, obj);
  result.value_history.push_back(st.value);
  descend(st, obj, cfg, cfg.max_iters, result);
  return finish(st, result, grad_small(st.grad_norm, st.w, cfg));
}

TrainResult run_perturbed_gd(const Weights& w0, const Objective& obj, const OptimConfig& cfg) {
  if (!cfg.escape) {
    throw std::invalid_argument("run_perturbed_gd: cfg.escape must be set");
  }
  obj.validate();

  TrainResult result;
  LoopState st;
  st.w = w0;
  st.value = objective_value(st.w, obj);
  result.value_history.push_back(st.value);
  Rng rng(Rng::derive(cfg.seed, 0xE5CA9Eull));

  const int k = static_cast<int>(w0.rows());
  const int d = static_cast<int>(w0.cols());
  bool second_order = false;

  while (result.iterations < cfg.max_iters) {
    descend(st, obj, cfg, cfg.max_iters - result.iterations, result);

    const MinEigResult me = min_hessian_eig(st.w, obj);
    result.final_min_hess_eig = me.eigenvalue;
    if (me.eigenvalue >= -cfg.hess_tol) {
      second_order = grad_small(st.grad_norm, st.w, cfg) || st.stalled;
      break;
    }
    if (result.escapes >= cfg.escape->patience) break;

    st.w += ball_perturbation(k, d, cfg.escape->radius, rng);
    st.value = objective_value(st.w, obj);
    result.value_history.push_back(st.value);
    st.stalled = false;
    ++result.escapes;
  }
  return finish(st, result, second_order);
}

}  // namespace quadland
