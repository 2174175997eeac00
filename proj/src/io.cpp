#include "quadland/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace quadland {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open for reading: " + path);
  return in;
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot open for writing: " + path);
  return out;
}

double parse_double(const std::string& token, const std::string& context) {
  try {
    std::size_t used = 0;
    const double v = std::stod(token, &used);
    if (used != token.size()) throw std::invalid_argument(token);
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument("malformed number '" + token + "' in " + context);
  }
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) fields.push_back(trim(field));
  return fields;
}

nlohmann::ordered_json matrix_json(const Eigen::MatrixXd& m) {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    nlohmann::ordered_json row = nlohmann::ordered_json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

void write_dataset_csv(const std::string& path, const Dataset& data) {
  std::ofstream out = open_output(path);
  for (Eigen::Index j = 0; j < data.d(); ++j) out << "x_" << j << ",";
  out << "y\n";
  for (Eigen::Index i = 0; i < data.n(); ++i) {
    for (Eigen::Index j = 0; j < data.d(); ++j) {
      out << format_double(data.inputs(i, j)) << ",";
    }
    out << format_double(data.labels[i]) << "\n";
  }
}

Dataset read_dataset_csv(const std::string& path, Task task) {
  std::ifstream in = open_input(path);
  std::string line;
  if (!std::getline(in, line)) throw std::invalid_argument("empty dataset file: " + path);
  const std::vector<std::string> header = split_csv(line);
  if (header.size() < 2 || header.back() != "y") {
    throw std::invalid_argument("dataset header must end in 'y': " + path);
  }
  const Eigen::Index d = static_cast<Eigen::Index>(header.size()) - 1;

  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    const std::vector<std::string> fields = split_csv(line);
    if (static_cast<Eigen::Index>(fields.size()) != d + 1) {
      throw std::invalid_argument("row " + std::to_string(rows.size() + 1) +
                                  " has wrong field count in " + path);
    }
    std::vector<double> row;
    row.reserve(fields.size());
    for (const std::string& f : fields) row.push_back(parse_double(f, path));
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw std::invalid_argument("dataset has no samples: " + path);

  Dataset data;
  data.task = task;
  data.inputs.resize(static_cast<Eigen::Index>(rows.size()), d);
  data.labels.resize(static_cast<Eigen::Index>(rows.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (Eigen::Index j = 0; j < d; ++j) data.inputs(static_cast<Eigen::Index>(i), j) = rows[i][j];
    data.labels[static_cast<Eigen::Index>(i)] = rows[i][d];
  }
  data.validate();
  return data;
}

void write_weights_csv(const std::string& path, const Weights& w) {
  std::ofstream out = open_output(path);
  out << "# k=" << w.rows() << " d=" << w.cols() << "\n";
  for (Eigen::Index i = 0; i < w.rows(); ++i) {
    for (Eigen::Index j = 0; j < w.cols(); ++j) {
      out << format_double(w(i, j)) << (j + 1 < w.cols() ? "," : "");
    }
    out << "\n";
  }
}

Weights read_weights_csv(const std::string& path) {
  std::ifstream in = open_input(path);
  std::string line;
  if (!std::getline(in, line)) throw std::invalid_argument("empty weights file: " + path);
  long k = 0, d = 0;
  if (std::sscanf(line.c_str(), "# k=%ld d=%ld", &k, &d) != 2 || k < 1 || d < 1) {
    throw std::invalid_argument("weights header must be '# k=K d=D': " + path);
  }
  Weights w(k, d);
  for (long i = 0; i < k; ++i) {
    if (!std::getline(in, line)) {
      throw std::invalid_argument("weights file ends early: " + path);
    }
    const std::vector<std::string> fields = split_csv(line);
    if (static_cast<long>(fields.size()) != d) {
      throw std::invalid_argument("weights row " + std::to_string(i) +
                                  " has wrong field count in " + path);
    }
    for (long j = 0; j < d; ++j) w(i, j) = parse_double(fields[j], path);
  }
  return w;
}

void write_trace_csv(const std::string& path, const TrainResult& result) {
  std::ofstream out = open_output(path);
  out << "iteration,value,grad_norm\n";
  const std::size_t rows =
      std::min(result.value_history.size(), result.grad_norm_history.size());
  for (std::size_t i = 0; i < rows; ++i) {
    out << i << "," << format_double(result.value_history[i]) << ","
        << format_double(result.grad_norm_history[i]) << "\n";
  }
}

nlohmann::ordered_json to_json(const PerturbationC& c) {
  return {{"d", c.dim()},
          {"delta", c.delta},
          {"seed", c.seed},
          {"frobenius_norm", c.matrix.norm()},
          {"matrix", matrix_json(c.matrix)}};
}

nlohmann::ordered_json to_json(const Certificate& cert) {
  return {{"grad_norm", cert.grad_norm},
          {"min_hess_eig", cert.min_hess_eig},
          {"numerical_rank_W", cert.numerical_rank_w},
          {"sigma_ratio", cert.sigma_ratio},
          {"dual_min_eig", cert.dual_min_eig},
          {"complementarity", cert.complementarity},
          {"verdict", to_string(cert.verdict)},
          {"eps", cert.eps}};
}

nlohmann::ordered_json to_json(const ConvexSolution& sol) {
  return {{"value", sol.value},
          {"kkt_residual", sol.kkt_residual},
          {"iterations", sol.iterations},
          {"converged", sol.converged},
          {"trace", sol.M.trace()},
          {"M", matrix_json(sol.M)}};
}

nlohmann::ordered_json to_json(const RademacherReport& report) {
  return {{"mc_estimate_specnorm", report.mc_estimate_specnorm},
          {"mc_estimate_lambdamax", report.mc_estimate_lambdamax},
          {"mc_std_error", report.mc_std_error},
          {"num_draws", report.num_draws},
          {"exact", report.exact},
          {"s_fourth_moment", report.s_fourth_moment},
          {"bound_bounded", report.bound_bounded},
          {"bound_fourth", report.bound_fourth},
          {"bound_gaussian_nolog", report.bound_gaussian_nolog},
          {"bound_gaussian_log", report.bound_gaussian_log},
          {"log_d_zero_warning", report.log_d_zero_warning},
          {"frob_budget_M", report.frob_budget_M},
          {"ball_radius_b", report.ball_radius_b}};
}

nlohmann::ordered_json to_json(const GapReport& report) {
  nlohmann::ordered_json per_seed = nlohmann::ordered_json::array();
  for (const GapSeedResult& r : report.per_seed) {
    per_seed.push_back({{"seed", r.seed},
                        {"train_loss", r.train_loss},
                        {"test_loss", r.test_loss},
                        {"m_frob", r.m_frob},
                        {"failed", r.failed}});
  }
  return {{"train_loss", report.train_loss},
          {"test_loss", report.test_loss},
          {"gap", report.gap},
          {"m_frob", report.m_frob},
          {"bound_gaussian", report.bound_gaussian},
          {"n", report.n},
          {"d", report.d},
          {"seeds", report.seeds},
          {"failed_seeds", report.failed_seeds},
          {"per_seed", std::move(per_seed)}};
}

nlohmann::ordered_json to_json(const LandscapeSummary& summary) {
  nlohmann::ordered_json trials = nlohmann::ordered_json::array();
  for (const LandscapeTrial& t : summary.trials) {
    trials.push_back({{"trial_seed", t.trial_seed},
                      {"train_converged", t.train_converged},
                      {"final_grad_norm", t.final_grad_norm},
                      {"final_w_norm", t.final_w_norm},
                      {"final_value", t.final_value},
                      {"unperturbed_value", t.unperturbed_value},
                      {"oracle_value", t.oracle_value},
                      {"oracle_trace", t.oracle_trace},
                      {"rel_gap", t.rel_gap},
                      {"verdict", to_string(t.verdict)},
                      {"rank", t.rank},
                      {"sigma_ratio", t.sigma_ratio},
                      {"value_gap_bound", t.value_gap_bound},
                      {"value_bound_holds", t.value_bound_holds}});
  }
  const LandscapeConfig& cfg = summary.config;
  return {{"d", cfg.d},
          {"k", cfg.k},
          {"n", cfg.n},
          {"lambda", cfg.lambda},
          {"loss", to_string(cfg.loss)},
          {"delta", cfg.delta ? nlohmann::ordered_json(*cfg.delta) : nlohmann::ordered_json()},
          {"trials", cfg.trials},
          {"seed", cfg.seed},
          {"fraction_certified", summary.fraction_certified},
          {"fraction_value_bound", summary.fraction_value_bound},
          {"fraction_rank_deficient", summary.fraction_rank_deficient},
          {"max_rel_gap", summary.max_rel_gap},
          {"trial_results", std::move(trials)}};
}

nlohmann::ordered_json to_json(const TrainResult& result) {
  return {{"final_value", result.final_value},
          {"final_grad_norm", result.final_grad_norm},
          {"iterations", result.iterations},
          {"converged", result.converged},
          {"escapes", result.escapes}};
}

std::string rademacher_csv(const RademacherReport& r) {
  std::ostringstream out;
  out << "mc_estimate_specnorm,mc_estimate_lambdamax,mc_std_error,num_draws,exact,"
         "s_fourth_moment,bound_bounded,bound_fourth,bound_gaussian_nolog,"
         "bound_gaussian_log,frob_budget_M,ball_radius_b\n";
  out << format_double(r.mc_estimate_specnorm) << "," << format_double(r.mc_estimate_lambdamax)
      << "," << format_double(r.mc_std_error) << "," << r.num_draws << ","
      << (r.exact ? 1 : 0) << "," << format_double(r.s_fourth_moment) << ","
      << format_double(r.bound_bounded) << "," << format_double(r.bound_fourth) << ","
      << format_double(r.bound_gaussian_nolog) << "," << format_double(r.bound_gaussian_log)
      << "," << format_double(r.frob_budget_M) << "," << format_double(r.ball_radius_b)
      << "\n";
  return out.str();
}

void write_landscape_csv(const std::string& path, const LandscapeSummary& summary) {
  std::ofstream out = open_output(path);
  out << "trial_seed,train_converged,final_grad_norm,final_w_norm,final_value,"
         "unperturbed_value,oracle_value,"
         "oracle_trace,rel_gap,verdict,rank,sigma_ratio,value_gap_bound,value_bound_holds\n";
  for (const LandscapeTrial& t : summary.trials) {
    out << t.trial_seed << "," << (t.train_converged ? 1 : 0) << ","
        << format_double(t.final_grad_norm) << "," << format_double(t.final_w_norm) << ","
        << format_double(t.final_value) << "," << format_double(t.unperturbed_value) << ","
        << format_double(t.oracle_value) << "," << format_double(t.oracle_trace) << ","
        << format_double(t.rel_gap) << "," << to_string(t.verdict) << "," << t.rank << ","
        << format_double(t.sigma_ratio) << "," << format_double(t.value_gap_bound) << ","
        << (t.value_bound_holds ? 1 : 0) << "\n";
  }
}

std::vector<std::pair<std::string, std::string>> parse_config_file(const std::string& path) {
  std::ifstream in = open_input(path);
  std::vector<std::pair<std::string, std::string>> entries;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    const std::string stripped = trim(line);
    if (stripped.empty()) continue;
    const auto eq = stripped.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument(path + ":" + std::to_string(lineno) +
                                  ": expected 'key = value'");
    }
    const std::string key = trim(stripped.substr(0, eq));
    const std::string value = trim(stripped.substr(eq + 1));
    if (key.empty() || value.empty()) {
      throw std::invalid_argument(path + ":" + std::to_string(lineno) +
                                  ": empty key or value");
    }
    entries.emplace_back(key, value);
  }
  return entries;
}

void check_writable(const std::string& path) {
  std::ofstream probe(path, std::ios::app);
  if (!probe) throw std::invalid_argument("output path is not writable: " + path);
}

void write_text_file(const std::string& path, const std::string& contents) {
  std::ofstream out = open_output(path);
  out << contents;
}

}  // namespace quadland
