#include "quadland/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "quadland/model.hpp"
#include "quadland/perturb.hpp"
#include "quadland/rng.hpp"
#include "quadland/util.hpp"

namespace quadland {

TeacherSpec make_random_teacher(int k0, int d, double row_norm_bound, std::uint64_t seed) {
  if (k0 < 1 || d < 1) throw std::invalid_argument("make_random_teacher: k0, d must be >= 1");
  if (!(row_norm_bound > 0.0)) {
    throw std::invalid_argument("make_random_teacher: row_norm_bound must be > 0");
  }
  Rng rng(seed);
  TeacherSpec teacher;
  teacher.row_norm_bound = row_norm_bound;
  teacher.weights.resize(k0, d);
  for (int i = 0; i < k0; ++i) {
    Eigen::VectorXd row(d);
    for (int j = 0; j < d; ++j) row[j] = rng.gaussian();
    teacher.weights.row(i) = row_norm_bound * row.normalized();
  }
  return teacher;
}

Dataset gen_synthetic(const DataSpec& spec) {
  if (spec.n < 1 || spec.d < 1) throw std::invalid_argument("gen_synthetic: need n, d >= 1");
  if (spec.noise_std < 0.0) throw std::invalid_argument("gen_synthetic: noise_std must be >= 0");
  if (spec.teacher) {
    if (spec.teacher->weights.cols() != spec.d) {
      throw std::invalid_argument("gen_synthetic: teacher has dimension " +
                                  std::to_string(spec.teacher->weights.cols()) +
                                  " but spec.d = " + std::to_string(spec.d));
    }
    for (Eigen::Index j = 0; j < spec.teacher->weights.rows(); ++j) {
      if (spec.teacher->weights.row(j).norm() > spec.teacher->row_norm_bound * (1.0 + 1e-12)) {
        throw std::invalid_argument("gen_synthetic: teacher row " + std::to_string(j) +
                                    " exceeds row norm bound");
      }
    }
  }

  Rng rng(spec.seed);
  Dataset data;
  data.task = spec.task;
  data.inputs.resize(spec.n, spec.d);
  for (int i = 0; i < spec.n; ++i) {
    Eigen::VectorXd x(spec.d);
    for (int j = 0; j < spec.d; ++j) x[j] = rng.gaussian();
    if (spec.dist == InputDist::kBoundedSphere) {
      x = spec.sphere_radius_b * x.normalized();
    }
    data.inputs.row(i) = x;
  }

  Eigen::VectorXd signal = Eigen::VectorXd::Zero(spec.n);
  if (spec.teacher) {
    signal = (data.inputs * spec.teacher->weights.transpose()).rowwise().squaredNorm();
  }
  if (spec.noise_std > 0.0) {
    for (int i = 0; i < spec.n; ++i) signal[i] += spec.noise_std * rng.gaussian();
  }

  if (spec.task == Task::kRegression) {
    data.labels = signal;
  } else {
    // Median threshold balances the classes; ties go to +1.
    Eigen::VectorXd sorted = signal;
    std::sort(sorted.data(), sorted.data() + sorted.size());
    const Eigen::Index mid = spec.n / 2;
    const double median = spec.n % 2 == 1
                              ? sorted[mid]
                              : 0.5 * (sorted[mid - 1] + sorted[mid]);
    data.labels.resize(spec.n);
    for (int i = 0; i < spec.n; ++i) {
      data.labels[i] = signal[i] >= median ? 1.0 : -1.0;
    }
  }
  data.validate();
  return data;
}

namespace {

double fit_loss(const Weights& w, const Dataset& data, LossKind loss) {
  Objective obj{data, loss, 0.0, std::nullopt};
  return objective_value(w, obj);
}

}  // namespace

GapReport run_gap_experiment(const DataSpec& spec, const GapConfig& cfg,
                             const std::vector<std::uint64_t>& seeds) {
  if (cfg.k < 1) throw std::invalid_argument("run_gap_experiment: k must be >= 1");
  if (seeds.empty()) throw std::invalid_argument("run_gap_experiment: need at least one seed");
  const long test_n = cfg.test_n > 0 ? cfg.test_n : 10L * spec.n;

  GapReport report;
  report.n = spec.n;
  report.d = spec.d;
  report.seeds = seeds;
  report.per_seed.resize(seeds.size());

  parallel_for(seeds.size(), [&](std::size_t t) {
    GapSeedResult& r = report.per_seed[t];
    r.seed = seeds[t];
    try {
      DataSpec train_spec = spec;
      train_spec.seed = Rng::derive(seeds[t], 1);
      DataSpec test_spec = spec;
      test_spec.n = static_cast<int>(test_n);
      test_spec.seed = Rng::derive(seeds[t], 2);

      const Dataset train_data = gen_synthetic(train_spec);
      const Dataset test_data = gen_synthetic(test_spec);

      const Weights w0 = init_weights(cfg.k, spec.d, cfg.train.init_scale,
                                      Rng::derive(seeds[t], 3));
      Objective obj{train_data, cfg.loss, cfg.lambda, std::nullopt};
      const TrainResult train = run_gd(w0, obj, cfg.train);
      if (!train.final_weights.allFinite()) throw std::runtime_error("non-finite weights");

      r.train_loss = fit_loss(train.final_weights, train_data, cfg.loss);
      r.test_loss = fit_loss(train.final_weights, test_data, cfg.loss);
      r.m_frob = train.final_weights.norm();
    } catch (const std::runtime_error&) {
      r.failed = true;
    }
  });

  long ok = 0;
  for (const GapSeedResult& r : report.per_seed) {
    if (r.failed) {
      report.failed_seeds.push_back(r.seed);
      continue;
    }
    ++ok;
    report.train_loss += r.train_loss;
    report.test_loss += r.test_loss;
    report.m_frob += r.m_frob;
  }
  if (ok == 0) throw std::runtime_error("run_gap_experiment: every seed failed");
  report.train_loss /= static_cast<double>(ok);
  report.test_loss /= static_cast<double>(ok);
  report.m_frob /= static_cast<double>(ok);
  report.gap = report.test_loss - report.train_loss;
  report.bound_gaussian = report.m_frob * report.m_frob *
                          std::sqrt(static_cast<double>(spec.d) / static_cast<double>(spec.n));
  return report;
}

LandscapeSummary run_landscape_suite(const LandscapeConfig& cfg) {
  if (cfg.d < 1 || cfg.k < 1 || cfg.n < 1 || cfg.trials < 1) {
    throw std::invalid_argument("run_landscape_suite: d, k, n, trials must be >= 1");
  }
  if (cfg.delta) {
    if (!(*cfg.delta > 0.0)) {
      throw std::invalid_argument("run_landscape_suite: delta must be > 0");
    }
    if (cfg.k * (cfg.k + 1) / 2 <= cfg.n || cfg.k >= cfg.d) {
      throw std::invalid_argument(
          "run_landscape_suite: smoothed branch requires k(k+1)/2 > n and k < d");
    }
  }

  LandscapeSummary summary;
  summary.config = cfg;
  summary.trials.resize(cfg.trials);

  parallel_for(static_cast<std::size_t>(cfg.trials), [&](std::size_t t) {
    LandscapeTrial& trial = summary.trials[t];
    trial.trial_seed = Rng::derive(cfg.seed, t);
    Rng rng(trial.trial_seed);

    // Arbitrary data: standard normal inputs, unstructured labels.
    Dataset data;
    data.task = cfg.loss == LossKind::kLogistic ? Task::kClassification : Task::kRegression;
    data.inputs.resize(cfg.n, cfg.d);
    data.labels.resize(cfg.n);
    for (int i = 0; i < cfg.n; ++i) {
      for (int j = 0; j < cfg.d; ++j) data.inputs(i, j) = rng.gaussian();
    }
    for (int i = 0; i < cfg.n; ++i) {
      data.labels[i] = data.task == Task::kClassification
                           ? (rng.uniform() < 0.5 ? -1.0 : 1.0)
                           : rng.gaussian();
    }

    Objective obj{data, cfg.loss, cfg.lambda, std::nullopt};
    if (cfg.delta) {
      obj.perturbation = sample_psd(cfg.d, *cfg.delta, Rng::derive(trial.trial_seed, 7));
    }

    const Weights w0 = init_weights(cfg.k, cfg.d, cfg.train.init_scale,
                                    Rng::derive(trial.trial_seed, 3));
    OptimConfig train_cfg = cfg.train;
    if (cfg.delta && !train_cfg.escape) train_cfg.escape = EscapeConfig{};
    const TrainResult result = cfg.delta ? run_perturbed_gd(w0, obj, train_cfg)
                                         : run_gd(w0, obj, train_cfg);
    trial.train_converged = result.converged;
    trial.final_grad_norm = result.final_grad_norm;
    trial.final_w_norm = result.final_weights.norm();
    trial.final_value = result.final_value;
    trial.unperturbed_value =
        objective_value(result.final_weights, obj.without_perturbation());

    const ConvexSolution oracle =
        solve_convex(data, cfg.loss, cfg.lambda, cfg.oracle_tol, cfg.oracle_max_iters);
    trial.oracle_value = oracle.value;
    trial.oracle_trace = oracle.M.trace();
    trial.rel_gap = (trial.unperturbed_value - oracle.value) /
                    std::max(std::abs(oracle.value), 1e-300);

    const Certificate cert = dual_certificate(result.final_weights, obj);
    trial.verdict = cert.verdict;
    trial.rank = cert.numerical_rank_w;
    trial.sigma_ratio = cert.sigma_ratio;

    if (cfg.delta) {
      trial.value_gap_bound = *cfg.delta * trial.oracle_trace;
      trial.value_bound_holds =
          trial.unperturbed_value <= trial.oracle_value + trial.value_gap_bound + 1e-4;
    } else {
      trial.value_bound_holds = trial.rel_gap <= 1e-4;
    }
  });

  for (const LandscapeTrial& trial : summary.trials) {
    if (trial.verdict == Verdict::kCertifiedGlobal) summary.fraction_certified += 1.0;
    if (trial.value_bound_holds) summary.fraction_value_bound += 1.0;
    if (trial.sigma_ratio <= 1e-4) summary.fraction_rank_deficient += 1.0;
    summary.max_rel_gap = std::max(summary.max_rel_gap, trial.rel_gap);
  }
  const double count = static_cast<double>(cfg.trials);
  summary.fraction_certified /= count;
  summary.fraction_value_bound /= count;
  summary.fraction_rank_deficient /= count;
  return summary;
}

}  // namespace quadland
