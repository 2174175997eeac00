#ifndef QUADLAND_IO_HPP_
#define QUADLAND_IO_HPP_

#include <json.hpp>
#include <string>
#include <utility>
#include <vector>

#include "quadland/certifier.hpp"
#include "quadland/convex_oracle.hpp"
#include "quadland/dataset.hpp"
#include "quadland/experiments.hpp"
#include "quadland/optimizer.hpp"
#include "quadland/perturb.hpp"
#include "quadland/rademacher.hpp"

namespace quadland {

/// Shortest round-trip decimal form of x (never loses precision).
std::string format_double(double x);

/// Dataset CSV with header "x_0,...,x_{d-1},y".
void write_dataset_csv(const std::string& path, const Dataset& data);
Dataset read_dataset_csv(const std::string& path, Task task = Task::kRegression);

/// Dense weights CSV with a one-line header carrying k and d.
void write_weights_csv(const std::string& path, const Weights& w);
Weights read_weights_csv(const std::string& path);

/// Per-iteration trace: iteration,value,grad_norm.
void write_trace_csv(const std::string& path, const TrainResult& result);

nlohmann::ordered_json to_json(const PerturbationC& c);
nlohmann::ordered_json to_json(const Certificate& cert);
nlohmann::ordered_json to_json(const ConvexSolution& sol);
nlohmann::ordered_json to_json(const RademacherReport& report);
nlohmann::ordered_json to_json(const GapReport& report);
nlohmann::ordered_json to_json(const LandscapeSummary& summary);
nlohmann::ordered_json to_json(const TrainResult& result);

/// One CSV row (with header line) for a RademacherReport.
std::string rademacher_csv(const RademacherReport& report);

/// Landscape suite per-trial rows.
void write_landscape_csv(const std::string& path, const LandscapeSummary& summary);

/// Flat "key = value" config file; '#' starts a comment. Returns pairs in
/// file order. Throws std::invalid_argument on malformed lines.
std::vector<std::pair<std::string, std::string>> parse_config_file(const std::string& path);

/// Throws std::invalid_argument when path cannot be opened for writing.
void check_writable(const std::string& path);

void write_text_file(const std::string& path, const std::string& contents);

}  // namespace quadland

#endif  // QUADLAND_IO_HPP_
