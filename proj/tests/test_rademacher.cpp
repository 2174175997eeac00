#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "quadland/rademacher.hpp"

using namespace quadland;
namespace oracle = quadland::testoracle;

namespace {

Dataset basis_pair() {
  Dataset data;
  data.inputs = Eigen::MatrixXd::Identity(2, 2);
  data.labels = Eigen::VectorXd::Zero(2);
  return data;
}

Dataset gaussian_data(int n, int d, std::uint64_t seed) {
  Rng rng(seed);
  Dataset data;
  data.inputs.resize(n, d);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < d; ++j) data.inputs(i, j) = rng.gaussian();
  }
  data.labels = Eigen::VectorXd::Zero(n);
  return data;
}

}  // namespace

TEST_SUITE_BEGIN("rademacher");

TEST_CASE("single sample: spectral norm is constant across draws") {
  Dataset data;
  data.inputs.resize(1, 2);
  data.inputs << 1.0, 0.0;
  data.labels = Eigen::VectorXd::Zero(1);

  const RademacherReport r = empirical_rc(data, 1.0, 0, 0);
  CHECK(r.exact);
  CHECK(r.num_draws == 2);
  CHECK(r.mc_estimate_specnorm == doctest::Approx(1.0).epsilon(1e-15));
  // lambda_max of -x x^T in d = 2 is 0, so the unclamped form averages 0.5.
  CHECK(r.mc_estimate_lambdamax == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(r.mc_std_error == 0.0);
}

TEST_CASE("basis pair enumeration reproduces the exact expectations") {
  const RademacherReport r = empirical_rc(basis_pair(), 1.0, 0, 0);
  CHECK(r.exact);
  CHECK(r.num_draws == 4);
  CHECK(r.mc_estimate_specnorm == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(r.mc_estimate_lambdamax == doctest::Approx(0.25).epsilon(1e-15));
}

TEST_CASE("basis pair in Monte-Carlo mode: constant draws, zero variance") {
  const RademacherReport r =
      empirical_rc(basis_pair(), 1.0, 500, 11, RcMode::kMonteCarlo);
  CHECK_FALSE(r.exact);
  CHECK(r.num_draws == 500);
  CHECK(r.mc_estimate_specnorm == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(r.mc_std_error <= 1e-15);
}

TEST_CASE("doubling the Frobenius budget scales both estimates by four") {
  const Dataset data = gaussian_data(40, 5, 77);
  const RademacherReport a = empirical_rc(data, 1.0, 100, 3);
  const RademacherReport b = empirical_rc(data, 2.0, 100, 3);
  CHECK(b.mc_estimate_specnorm == doctest::Approx(4.0 * a.mc_estimate_specnorm).epsilon(1e-12));
  CHECK(b.mc_estimate_lambdamax ==
        doctest::Approx(4.0 * a.mc_estimate_lambdamax).epsilon(1e-12));
}

TEST_CASE("lambda_max form never exceeds the spectral-norm form") {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const Dataset data = gaussian_data(30 + 10 * static_cast<int>(seed), 4, seed + 50);
    const RademacherReport r = empirical_rc(data, 1.3, 150, seed);
    CHECK(r.mc_estimate_lambdamax <= r.mc_estimate_specnorm + 1e-15);
  }
}

TEST_CASE("identical seeds give identical Monte-Carlo reports") {
  const Dataset data = gaussian_data(50, 6, 4);
  const RademacherReport a = empirical_rc(data, 1.0, 128, 99, RcMode::kMonteCarlo);
  const RademacherReport b = empirical_rc(data, 1.0, 128, 99, RcMode::kMonteCarlo);
  CHECK(a.mc_estimate_specnorm == b.mc_estimate_specnorm);
  CHECK(a.mc_estimate_lambdamax == b.mc_estimate_lambdamax);
  CHECK(a.mc_std_error == b.mc_std_error);
}

TEST_CASE("fourth moment statistic on pinned instances") {
  CHECK(fourth_moment_s(basis_pair()) == doctest::Approx(1.0).epsilon(1e-15));

  Dataset single;
  single.inputs.resize(1, 2);
  single.inputs << 1.0, 1.0;
  single.labels = Eigen::VectorXd::Zero(1);
  CHECK(fourth_moment_s(single) == doctest::Approx(4.0).epsilon(1e-14));
}

TEST_CASE("fourth moment respects the bounded-ball cap n*b^4") {
  Rng rng(123);
  for (int rep = 0; rep < 10; ++rep) {
    const int n = 5 + static_cast<int>(rng.next_u64() % 40);
    const int d = 2 + static_cast<int>(rng.next_u64() % 6);
    const double b = 0.5 + rng.uniform();
    Dataset data;
    data.inputs.resize(n, d);
    for (int i = 0; i < n; ++i) {
      Eigen::VectorXd x(d);
      for (int j = 0; j < d; ++j) x[j] = rng.gaussian();
      data.inputs.row(i) = (b * rng.uniform()) * x.normalized();
    }
    data.labels = Eigen::VectorXd::Zero(n);
    CHECK(fourth_moment_s(data) <= n * std::pow(b, 4) + 1e-12);
  }
}

TEST_CASE("closed-form bounds on the pinned configuration") {
  const RcBounds bounds = closed_form_bounds(2, 100, 1.0, 1.0, 100.0);
  CHECK(bounds.bounded == doctest::Approx(std::sqrt(2.0 * std::log(2.0) / 100.0)).epsilon(1e-15));
  // s = n b^4 collapses the fourth-moment bound onto the bounded one.
  CHECK(bounds.fourth == doctest::Approx(bounds.bounded).epsilon(1e-14));

  const RcBounds quad = closed_form_bounds(2, 400, 1.0, 1.0, 400.0);
  CHECK(quad.bounded == doctest::Approx(0.5 * bounds.bounded).epsilon(1e-13));
  CHECK(quad.fourth == doctest::Approx(0.5 * bounds.fourth).epsilon(1e-13));
  CHECK(quad.gaussian_nolog ==
        doctest::Approx(0.5 * bounds.gaussian_nolog).epsilon(1e-13));
  CHECK(quad.gaussian_log == doctest::Approx(0.5 * bounds.gaussian_log).epsilon(1e-13));

  const RcBounds degenerate = closed_form_bounds(1, 50, 1.0, 1.0, 10.0);
  CHECK(degenerate.log_d_zero_warning);
  CHECK(degenerate.bounded == 0.0);
  CHECK(degenerate.fourth == 0.0);
  CHECK(degenerate.gaussian_nolog > 0.0);
}

TEST_CASE("estimates stay below the fourth-moment bound with slack") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const int n = 30 + 30 * static_cast<int>(seed);
    const int d = 3 + 3 * static_cast<int>(seed);
    const Dataset data = gaussian_data(n, d, seed + 800);
    const RademacherReport r = full_report(data, 1.0, 200, seed);
    CHECK(r.mc_estimate_specnorm <= r.bound_fourth + 3.0 * r.mc_std_error);
  }
}

TEST_CASE("argument validation") {
  const Dataset data = gaussian_data(5, 2, 1);
  CHECK_THROWS_AS(empirical_rc(data, 0.0, 10, 0), std::invalid_argument);
  CHECK_THROWS_AS(empirical_rc(data, 1.0, 0, 0, RcMode::kMonteCarlo),
                  std::invalid_argument);
  CHECK_THROWS_AS(closed_form_bounds(0, 10, 1.0, 1.0, 1.0), std::invalid_argument);
}

TEST_SUITE_END();
