// Command-line front end: every capability is a subcommand with
// deterministic, machine-readable output. Exit codes: 0 success,
// 1 validation/config error, 2 numerical failure.

#include <CLI11.hpp>
#include <algorithm>
#include <iostream>
#include <string>
#include <vector>

#include "quadland/experiments.hpp"
#include "quadland/io.hpp"
#include "quadland/rng.hpp"

namespace {

using namespace quadland;

void emit_json(const nlohmann::ordered_json& j, const std::string& out) {
  const std::string text = j.dump(2) + "\n";
  if (out.empty()) {
    std::cout << text;
  } else {
    write_text_file(out, text);
  }
}

void emit_text(const std::string& text, const std::string& out) {
  if (out.empty()) {
    std::cout << text;
  } else {
    write_text_file(out, text);
  }
}

Task task_from_string(const std::string& name) {
  if (name == "regression") return Task::kRegression;
  if (name == "classification") return Task::kClassification;
  throw std::invalid_argument("unknown task: " + name);
}

// Dataset files carry no task column; infer classification from the loss.
Task task_for_loss(LossKind loss) {
  return loss == LossKind::kLogistic ? Task::kClassification : Task::kRegression;
}

struct GenArgs {
  int n = 100, d = 5;
  std::string dist = "gaussian";
  double b = 1.0;
  int teacher_k0 = 0;
  double teacher_row_norm = 1.0;
  double noise_std = 0.0;
  std::string task = "regression";
  std::uint64_t seed = 0;
  std::string out;
};

struct TrainArgs {
  std::string data;
  int k = 0;
  double lambda = 0.0;
  std::string loss = "squared";
  std::string algo = "gd";
  double delta = 0.0;
  std::uint64_t cseed = 0;
  bool cseed_given = false;
  double step = 0.0;
  int max_iters = 100000;
  double grad_tol = 1e-6;
  double hess_tol = 1e-6;
  double init_scale = 0.1;
  double escape_radius = 1e-3;
  int escape_patience = 10;
  std::uint64_t seed = 0;
  std::string out_weights, trace, out;
};

struct CertifyArgs {
  std::string data, weights;
  double lambda = 0.0;
  std::string loss = "squared";
  double delta = 0.0;
  std::uint64_t cseed = 0;
  double eps = 1e-6;
  std::string out;
};

struct OracleArgs {
  std::string data;
  double lambda = 0.0;
  std::string loss = "squared";
  double tol = 1e-8;
  int max_iters = 100000;
  std::string out;
};

struct RademacherArgs {
  std::string data;
  double m = 1.0;
  long mc_draws = 200;
  std::string mode = "auto";
  double cgauss = 1.0;
  std::uint64_t seed = 0;
  std::string format = "json";
  std::string out;
};

struct GengapArgs {
  int n = 100, d = 10, k = 8;
  int teacher_k0 = 2;
  double teacher_row_norm = 1.0;
  double noise_std = 0.1;
  std::string loss = "squared";
  double lambda = 0.01;
  long test_n = 0;
  int num_seeds = 10;
  std::uint64_t seed = 0;
  int max_iters = 20000;
  double grad_tol = 1e-5;
  double init_scale = 0.1;
  std::string out;
};

struct LandscapeArgs {
  int d = 5, k = 5, n = 30;
  double lambda = 0.1;
  std::string loss = "squared";
  double delta = 0.0;
  int trials = 20;
  std::uint64_t seed = 0;
  int max_iters = 200000;
  double grad_tol = 1e-8;
  double init_scale = 0.2;
  std::string out_json, out_csv;
};

int run_gen(const GenArgs& a) {
  if (!a.out.empty()) check_writable(a.out);
  DataSpec spec;
  spec.n = a.n;
  spec.d = a.d;
  if (a.dist == "gaussian") {
    spec.dist = InputDist::kGaussianStandard;
  } else if (a.dist == "sphere") {
    spec.dist = InputDist::kBoundedSphere;
    spec.sphere_radius_b = a.b;
  } else {
    throw std::invalid_argument("unknown distribution: " + a.dist);
  }
  if (a.teacher_k0 > 0) {
    spec.teacher = make_random_teacher(a.teacher_k0, a.d, a.teacher_row_norm,
                                       Rng::derive(a.seed, 0x7EAC));
  }
  spec.noise_std = a.noise_std;
  spec.task = task_from_string(a.task);
  spec.seed = a.seed;
  const Dataset data = gen_synthetic(spec);
  if (a.out.empty()) throw std::invalid_argument("gen: --out is required");
  write_dataset_csv(a.out, data);
  return 0;
}

int run_train(const TrainArgs& a) {
  if (!a.out_weights.empty()) check_writable(a.out_weights);
  if (!a.trace.empty()) check_writable(a.trace);
  if (!a.out.empty()) check_writable(a.out);
  if (a.k < 1) throw std::invalid_argument("train: --k must be >= 1");

  const LossKind loss = loss_from_string(a.loss);
  Objective obj;
  obj.data = read_dataset_csv(a.data, task_for_loss(loss));
  obj.loss = loss;
  obj.lambda = a.lambda;
  if (a.delta > 0.0) {
    const std::uint64_t cseed = a.cseed_given ? a.cseed : Rng::derive(a.seed, 0xC0);
    obj.perturbation = sample_psd(static_cast<int>(obj.data.d()), a.delta, cseed);
  }

  OptimConfig cfg;
  if (a.step > 0.0) cfg.fixed_step = a.step;
  cfg.max_iters = a.max_iters;
  cfg.grad_tol = a.grad_tol;
  cfg.hess_tol = a.hess_tol;
  cfg.init_scale = a.init_scale;
  cfg.seed = a.seed;

  const Weights w0 = init_weights(a.k, static_cast<int>(obj.data.d()), a.init_scale,
                                  Rng::derive(a.seed, 0x11117));
  TrainResult result;
  if (a.algo == "gd") {
    result = run_gd(w0, obj, cfg);
  } else if (a.algo == "pgd") {
    cfg.escape = EscapeConfig{a.escape_radius, a.escape_patience};
    result = run_perturbed_gd(w0, obj, cfg);
  } else {
    throw std::invalid_argument("unknown algo: " + a.algo);
  }

  if (!a.out_weights.empty()) write_weights_csv(a.out_weights, result.final_weights);
  if (!a.trace.empty()) write_trace_csv(a.trace, result);
  nlohmann::ordered_json j = to_json(result);
  if (obj.perturbation) j["perturbation"] = to_json(*obj.perturbation);
  emit_json(j, a.out);
  return 0;
}

int run_certify(const CertifyArgs& a) {
  if (!a.out.empty()) check_writable(a.out);
  const LossKind loss = loss_from_string(a.loss);
  Objective obj;
  obj.data = read_dataset_csv(a.data, task_for_loss(loss));
  obj.loss = loss;
  obj.lambda = a.lambda;
  if (a.delta > 0.0) {
    obj.perturbation = sample_psd(static_cast<int>(obj.data.d()), a.delta, a.cseed);
  }
  const Weights w = read_weights_csv(a.weights);
  const Certificate cert = dual_certificate(w, obj, a.eps);
  emit_json(to_json(cert), a.out);
  return 0;
}

int run_oracle(const OracleArgs& a) {
  if (!a.out.empty()) check_writable(a.out);
  const LossKind loss = loss_from_string(a.loss);
  const Dataset data = read_dataset_csv(a.data, task_for_loss(loss));
  const ConvexSolution sol = solve_convex(data, loss, a.lambda, a.tol, a.max_iters);
  emit_json(to_json(sol), a.out);
  return 0;
}

int run_rademacher(const RademacherArgs& a) {
  if (!a.out.empty()) check_writable(a.out);
  const Dataset data = read_dataset_csv(a.data);
  RcMode mode = RcMode::kAuto;
  if (a.mode == "mc") {
    mode = RcMode::kMonteCarlo;
  } else if (a.mode == "enum") {
    mode = RcMode::kEnumerate;
  } else if (a.mode != "auto") {
    throw std::invalid_argument("unknown rademacher mode: " + a.mode);
  }
  const RademacherReport report =
      full_report(data, a.m, a.mc_draws, a.seed, a.cgauss, mode);
  if (a.format == "json") {
    emit_json(to_json(report), a.out);
  } else if (a.format == "csv") {
    emit_text(rademacher_csv(report), a.out);
  } else {
    throw std::invalid_argument("unknown format: " + a.format);
  }
  return 0;
}

int run_gengap(const GengapArgs& a) {
  if (!a.out.empty()) check_writable(a.out);
  DataSpec spec;
  spec.n = a.n;
  spec.d = a.d;
  spec.noise_std = a.noise_std;
  spec.seed = a.seed;
  if (a.teacher_k0 > 0) {
    spec.teacher = make_random_teacher(a.teacher_k0, a.d, a.teacher_row_norm,
                                       Rng::derive(a.seed, 0x7EAC));
  }
  GapConfig cfg;
  cfg.k = a.k;
  cfg.lambda = a.lambda;
  cfg.loss = loss_from_string(a.loss);
  cfg.test_n = a.test_n;
  cfg.train.max_iters = a.max_iters;
  cfg.train.grad_tol = a.grad_tol;
  cfg.train.init_scale = a.init_scale;
  std::vector<std::uint64_t> seeds(static_cast<std::size_t>(a.num_seeds));
  for (int i = 0; i < a.num_seeds; ++i) seeds[i] = Rng::derive(a.seed, 0x9A9 + i);
  const GapReport report = run_gap_experiment(spec, cfg, seeds);
  emit_json(to_json(report), a.out);
  return 0;
}

int run_landscape(const LandscapeArgs& a) {
  if (!a.out_json.empty()) check_writable(a.out_json);
  if (!a.out_csv.empty()) check_writable(a.out_csv);
  LandscapeConfig cfg;
  cfg.d = a.d;
  cfg.k = a.k;
  cfg.n = a.n;
  cfg.lambda = a.lambda;
  cfg.loss = loss_from_string(a.loss);
  if (a.delta > 0.0) cfg.delta = a.delta;
  cfg.trials = a.trials;
  cfg.seed = a.seed;
  cfg.train.max_iters = a.max_iters;
  cfg.train.grad_tol = a.grad_tol;
  cfg.train.init_scale = a.init_scale;
  const LandscapeSummary summary = run_landscape_suite(cfg);
  emit_json(to_json(summary), a.out_json);
  if (!a.out_csv.empty()) write_landscape_csv(a.out_csv, summary);
  return 0;
}

// The config file is flat "key = value"; entries become --key=value tokens
// injected right after the subcommand so explicit flags (parsed last under
// TakeLast) override them. Unknown keys fail parsing with the key named.
std::vector<std::string> apply_config(const std::vector<std::string>& args) {
  std::string config_path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) config_path = args[i + 1];
    else if (args[i].rfind("--config=", 0) == 0) config_path = args[i].substr(9);
  }
  if (config_path.empty()) return args;

  std::size_t sub_pos = args.size();
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (!args[i].empty() && args[i][0] != '-') {
      sub_pos = i;
      break;
    }
  }
  if (sub_pos == args.size()) return args;  // no subcommand; let CLI11 complain

  std::vector<std::string> merged(args.begin(), args.begin() + sub_pos + 1);
  for (const auto& [key, value] : parse_config_file(config_path)) {
    merged.push_back("--" + key + "=" + value);
  }
  merged.insert(merged.end(), args.begin() + sub_pos + 1, args.end());
  return merged;
}

int dispatch(std::vector<std::string> args) {
  CLI::App app{"quadratic-activation network landscape and generalization lab"};
  app.require_subcommand(1);

  GenArgs gen;
  TrainArgs train;
  CertifyArgs certify;
  OracleArgs oracle;
  RademacherArgs rad;
  GengapArgs gengap;
  LandscapeArgs landscape;

  const auto add_common = [](CLI::App* sub) {
    sub->option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    sub->add_option("--config", "flat key = value config file (flags override)")
        ->expected(1);
  };

  CLI::App* g = app.add_subcommand("gen", "generate a synthetic dataset CSV");
  add_common(g);
  g->add_option("--n", gen.n);
  g->add_option("--d", gen.d);
  g->add_option("--dist", gen.dist)->check(CLI::IsMember({"gaussian", "sphere"}));
  g->add_option("--b", gen.b);
  g->add_option("--teacher-k0", gen.teacher_k0);
  g->add_option("--teacher-row-norm", gen.teacher_row_norm);
  g->add_option("--noise-std", gen.noise_std);
  g->add_option("--task", gen.task)->check(CLI::IsMember({"regression", "classification"}));
  g->add_option("--seed", gen.seed);
  g->add_option("--out", gen.out);

  CLI::App* t = app.add_subcommand("train", "run (perturbed) gradient descent");
  add_common(t);
  t->add_option("--data", train.data)->required();
  t->add_option("--k", train.k)->required();
  t->add_option("--lambda", train.lambda);
  t->add_option("--loss", train.loss)->check(CLI::IsMember({"squared", "logistic"}));
  t->add_option("--algo", train.algo)->check(CLI::IsMember({"gd", "pgd"}));
  t->add_option("--delta", train.delta);
  auto* cseed_opt = t->add_option("--cseed", train.cseed);
  t->add_option("--step", train.step);
  t->add_option("--max-iters", train.max_iters);
  t->add_option("--grad-tol", train.grad_tol);
  t->add_option("--hess-tol", train.hess_tol);
  t->add_option("--init-scale", train.init_scale);
  t->add_option("--escape-radius", train.escape_radius);
  t->add_option("--escape-patience", train.escape_patience);
  t->add_option("--seed", train.seed);
  t->add_option("--out-weights", train.out_weights);
  t->add_option("--trace", train.trace);
  t->add_option("--out", train.out);

  CLI::App* c = app.add_subcommand("certify", "optimality certificate for saved weights");
  add_common(c);
  c->add_option("--data", certify.data)->required();
  c->add_option("--weights", certify.weights)->required();
  c->add_option("--lambda", certify.lambda);
  c->add_option("--loss", certify.loss)->check(CLI::IsMember({"squared", "logistic"}));
  c->add_option("--delta", certify.delta);
  c->add_option("--cseed", certify.cseed);
  c->add_option("--eps", certify.eps);
  c->add_option("--out", certify.out);

  CLI::App* o = app.add_subcommand("oracle", "convex reference problem global optimum");
  add_common(o);
  o->add_option("--data", oracle.data)->required();
  o->add_option("--lambda", oracle.lambda);
  o->add_option("--loss", oracle.loss)->check(CLI::IsMember({"squared", "logistic"}));
  o->add_option("--tol", oracle.tol);
  o->add_option("--max-iters", oracle.max_iters);
  o->add_option("--out", oracle.out);

  CLI::App* r = app.add_subcommand("rademacher", "empirical Rademacher complexity report");
  add_common(r);
  r->add_option("--data", rad.data)->required();
  r->add_option("--m", rad.m);
  r->add_option("--mc-draws", rad.mc_draws);
  r->add_option("--mode", rad.mode)->check(CLI::IsMember({"auto", "mc", "enum"}));
  r->add_option("--cgauss", rad.cgauss);
  r->add_option("--seed", rad.seed);
  r->add_option("--format", rad.format)->check(CLI::IsMember({"json", "csv"}));
  r->add_option("--out", rad.out);

  CLI::App* gg = app.add_subcommand("gengap", "seed-averaged generalization gap experiment");
  add_common(gg);
  gg->add_option("--n", gengap.n);
  gg->add_option("--d", gengap.d);
  gg->add_option("--k", gengap.k);
  gg->add_option("--teacher-k0", gengap.teacher_k0);
  gg->add_option("--teacher-row-norm", gengap.teacher_row_norm);
  gg->add_option("--noise-std", gengap.noise_std);
  gg->add_option("--loss", gengap.loss)->check(CLI::IsMember({"squared", "logistic"}));
  gg->add_option("--lambda", gengap.lambda);
  gg->add_option("--test-n", gengap.test_n);
  gg->add_option("--seeds", gengap.num_seeds);
  gg->add_option("--seed", gengap.seed);
  gg->add_option("--max-iters", gengap.max_iters);
  gg->add_option("--grad-tol", gengap.grad_tol);
  gg->add_option("--init-scale", gengap.init_scale);
  gg->add_option("--out", gengap.out);

  CLI::App* l = app.add_subcommand("landscape", "landscape study with oracle comparison");
  add_common(l);
  l->add_option("--d", landscape.d);
  l->add_option("--k", landscape.k);
  l->add_option("--n", landscape.n);
  l->add_option("--lambda", landscape.lambda);
  l->add_option("--loss", landscape.loss)->check(CLI::IsMember({"squared", "logistic"}));
  l->add_option("--delta", landscape.delta);
  l->add_option("--trials", landscape.trials);
  l->add_option("--seed", landscape.seed);
  l->add_option("--max-iters", landscape.max_iters);
  l->add_option("--grad-tol", landscape.grad_tol);
  l->add_option("--init-scale", landscape.init_scale);
  l->add_option("--out-json", landscape.out_json);
  l->add_option("--out-csv", landscape.out_csv);

  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;  // help prints and succeeds; anything else is a usage error
  }
  train.cseed_given = cseed_opt->count() > 0;

  if (app.got_subcommand(g)) return run_gen(gen);
  if (app.got_subcommand(t)) return run_train(train);
  if (app.got_subcommand(c)) return run_certify(certify);
  if (app.got_subcommand(o)) return run_oracle(oracle);
  if (app.got_subcommand(r)) return run_rademacher(rad);
  if (app.got_subcommand(gg)) return run_gengap(gengap);
  return run_landscape(landscape);
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  try {
    return dispatch(apply_config(args));
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::runtime_error& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 2;
  }
}
