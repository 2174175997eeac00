#ifndef QUADLAND_EXPERIMENTS_HPP_
#define QUADLAND_EXPERIMENTS_HPP_

#include <cstdint>
#include <optional>
#include <vector>

#include "quadland/certifier.hpp"
#include "quadland/convex_oracle.hpp"
#include "quadland/dataset.hpp"
#include "quadland/optimizer.hpp"

namespace quadland {

enum class InputDist { kGaussianStandard, kBoundedSphere };

/// Planted small network generating labels; rows bounded by row_norm_bound.
struct TeacherSpec {
  Eigen::MatrixXd weights;  // k0 x d
  double row_norm_bound = 1.0;
};

/// Random teacher with every row of norm exactly row_norm_bound.
TeacherSpec make_random_teacher(int k0, int d, double row_norm_bound, std::uint64_t seed);

struct DataSpec {
  int n = 0;
  int d = 0;
  InputDist dist = InputDist::kGaussianStandard;
  double sphere_radius_b = 1.0;  // bounded-sphere radius
  std::optional<TeacherSpec> teacher;
  double noise_std = 0.0;
  Task task = Task::kRegression;
  std::uint64_t seed = 0;
};

/// Synthetic dataset, deterministic per spec. Regression labels are
/// f(x, W*) + noise (zero without a teacher); classification labels are the
/// sign of the same quantity against its sample median, which balances the
/// classes.
Dataset gen_synthetic(const DataSpec& spec);

struct GapConfig {
  int k = 0;              // trained width
  double lambda = 0.0;
  LossKind loss = LossKind::kSquared;
  long test_n = 0;        // 0 means 10x the training size
  OptimConfig train;
};

struct GapSeedResult {
  std::uint64_t seed = 0;
  double train_loss = 0.0;  // unregularized fit loss
  double test_loss = 0.0;
  double m_frob = 0.0;      // ||W||_F of the learned weights
  bool failed = false;
};

struct GapReport {
  double train_loss = 0.0;  // seed averages over non-failed runs
  double test_loss = 0.0;
  double gap = 0.0;         // test_loss - train_loss
  double m_frob = 0.0;
  double bound_gaussian = 0.0;  // M^2 sqrt(d/n), reported with C = L = 1
  long n = 0;
  int d = 0;
  std::vector<GapSeedResult> per_seed;
  std::vector<std::uint64_t> seeds;
  std::vector<std::uint64_t> failed_seeds;
};

/// Trains on fresh data per seed, evaluates on an independent test draw from
/// the same spec, and averages. Diverged seeds are excluded and reported.
GapReport run_gap_experiment(const DataSpec& spec, const GapConfig& cfg,
                             const std::vector<std::uint64_t>& seeds);

struct LandscapeConfig {
  int d = 0;
  int k = 0;
  int n = 0;
  double lambda = 0.1;
  LossKind loss = LossKind::kSquared;
  std::optional<double> delta;  // smoothed branch when set
  int trials = 20;
  std::uint64_t seed = 0;
  OptimConfig train;
  double oracle_tol = 1e-8;
  int oracle_max_iters = 200000;
};

struct LandscapeTrial {
  std::uint64_t trial_seed = 0;
  bool train_converged = false;
  double final_grad_norm = 0.0;
  double final_w_norm = 0.0;
  double final_value = 0.0;        // objective the run optimized (perturbed if smoothed)
  double unperturbed_value = 0.0;  // L(W) with the perturbation dropped
  double oracle_value = 0.0;       // convex oracle on the unperturbed problem
  double oracle_trace = 0.0;       // trace(M*) = ||W*||_F^2
  double rel_gap = 0.0;            // (unperturbed - oracle) / max(|oracle|, eps)
  Verdict verdict = Verdict::kNotStationary;
  int rank = 0;
  double sigma_ratio = 0.0;
  double value_gap_bound = 0.0;    // delta * trace(M*), smoothed runs
  bool value_bound_holds = false;
};

struct LandscapeSummary {
  LandscapeConfig config;
  std::vector<LandscapeTrial> trials;
  double fraction_certified = 0.0;
  double fraction_value_bound = 0.0;
  double fraction_rank_deficient = 0.0;  // sigma_ratio <= 1e-4
  double max_rel_gap = 0.0;
};

/// Per trial: generate data, run (perturbed) gradient descent from random
/// init, certify, and compare against the convex oracle. The smoothed branch
/// requires k(k+1)/2 > n and k < d and additionally checks the
/// value-gap bound L(What) <= L_oracle + delta * trace(M*) + 1e-4.
LandscapeSummary run_landscape_suite(const LandscapeConfig& cfg);

}  // namespace quadland

#endif  // QUADLAND_EXPERIMENTS_HPP_
