#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <cmath>

#include "oracles.hpp"
#include "quadland/convex_oracle.hpp"
#include "quadland/model.hpp"

using namespace quadland;
namespace oracle = quadland::testoracle;

namespace {

Dataset scalar_data(double x, double y) {
  Dataset data;
  data.inputs = Eigen::MatrixXd::Constant(1, 1, x);
  data.labels = Eigen::VectorXd::Constant(1, y);
  return data;
}

}  // namespace

TEST_SUITE_BEGIN("convex_oracle");

TEST_CASE("interpolating scalar instance reaches zero loss") {
  const ConvexSolution sol = solve_convex(scalar_data(1.0, 1.0), LossKind::kSquared, 0.0);
  CHECK(sol.converged);
  CHECK(sol.M(0, 0) == doctest::Approx(1.0).epsilon(1e-7));
  CHECK(sol.value == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("regularized scalar instance matches the grid-search oracle") {
  const Dataset data = scalar_data(1.0, 1.0);
  const ConvexSolution sol = solve_convex(data, LossKind::kSquared, 1.0, 1e-10);
  REQUIRE(sol.converged);

  const auto objective = [&](double m) {
    return 0.5 * (m - 1.0) * (m - 1.0) + 0.5 * m;
  };
  const auto [grid_arg, grid_val] = oracle::grid_min(objective, 0.0, 2.0, 2000000);
  CHECK(std::abs(grid_arg - 0.5) <= 1e-5);
  CHECK(std::abs(grid_val - 0.375) <= 1e-9);
  CHECK(sol.M(0, 0) == doctest::Approx(0.5).epsilon(1e-6));
  CHECK(std::abs(sol.value - grid_val) <= 1e-6);
}

TEST_CASE("zero labels with positive decay collapse to the zero matrix") {
  Dataset data;
  data.inputs = oracle::random_weights(5, 3, 1.0, 42);
  data.labels = Eigen::VectorXd::Zero(5);
  const ConvexSolution sol = solve_convex(data, LossKind::kSquared, 0.3);
  CHECK(sol.converged);
  CHECK(sol.M.norm() <= 1e-9);
  CHECK(sol.value == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("objective_in_M agrees with the factored objective") {
  const Objective obj = oracle::random_instance(9, 4, LossKind::kSquared, 0.2, false, 11);
  const Weights w = oracle::random_weights(4, 4, 0.8, 12);
  const Eigen::MatrixXd m = w.transpose() * w;
  const double in_m = objective_in_M(m, obj.data, obj.loss, obj.lambda);
  const double in_w = objective_value(w, obj);
  CHECK(std::abs(in_m - in_w) <= 1e-12 * std::max(1.0, std::abs(in_w)));

  CHECK(objective_in_M(Eigen::MatrixXd::Zero(1, 1), scalar_data(1.0, 2.0),
                       LossKind::kSquared, 0.0) == doctest::Approx(2.0));
}

TEST_CASE("random PSD matrices factorize with matching values") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const int d = 3 + static_cast<int>(seed % 3);
    const Weights root = oracle::random_weights(d, d, 0.7, seed + 900);
    const Eigen::MatrixXd m = root.transpose() * root;

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(m);
    const Weights w = eig.eigenvalues().cwiseMax(0.0).cwiseSqrt().asDiagonal() *
                      eig.eigenvectors().transpose();

    const Objective obj = oracle::random_instance(8, d, LossKind::kLogistic, 0.1, false, seed);
    const double in_m = objective_in_M(m, obj.data, obj.loss, obj.lambda);
    const double in_w = objective_value(w, obj);
    CHECK(std::abs(in_m - in_w) <= 1e-9 * std::max(1.0, std::abs(in_w)));
  }
}

TEST_CASE("kkt_residual on pinned instances") {
  const Dataset data = scalar_data(1.0, 1.0);
  CHECK(kkt_residual(Eigen::MatrixXd::Constant(1, 1, 0.5), data, LossKind::kSquared, 1.0) <=
        1e-12);

  // M = 0 against a PSD gradient: boundary optimum, zero residual.
  const Dataset neg = scalar_data(1.0, -1.0);
  CHECK(kkt_residual(Eigen::MatrixXd::Zero(1, 1), neg, LossKind::kSquared, 0.1) <= 1e-15);

  // Non-optimal point: G = 0.5, <G, M> = 0.5, ||M||_F = 1 -> 0.25.
  CHECK(kkt_residual(Eigen::MatrixXd::Constant(1, 1, 1.0), data, LossKind::kSquared, 1.0) ==
        doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("solver output passes its own KKT check on random instances") {
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    const int d = 2 + static_cast<int>(seed % 4);
    const LossKind loss = seed % 2 == 0 ? LossKind::kSquared : LossKind::kLogistic;
    const Objective inst = oracle::random_instance(12, d, loss, 0.3, false, seed + 21);
    const ConvexSolution sol = solve_convex(inst.data, loss, 0.3, 1e-8);
    CHECK(sol.converged);
    CHECK(sol.kkt_residual <= 1e-8);
    CHECK(kkt_residual(sol.M, inst.data, loss, 0.3) <= 1e-8);

    // Oracle value lower-bounds every factorized objective with k >= d.
    Objective obj{inst.data, loss, 0.3, std::nullopt};
    for (std::uint64_t ws = 0; ws < 5; ++ws) {
      const Weights w = oracle::random_weights(d, d, 0.5 + 0.2 * ws, seed * 10 + ws);
      CHECK(objective_value(w, obj) >= sol.value - 1e-9);
    }
  }
}

TEST_CASE("iteration budget exhaustion is flagged") {
  const Objective inst = oracle::random_instance(10, 4, LossKind::kSquared, 0.2, false, 5);
  const ConvexSolution sol = solve_convex(inst.data, LossKind::kSquared, 0.2, 1e-12, 2);
  CHECK_FALSE(sol.converged);
}

TEST_CASE("argument validation") {
  CHECK_THROWS_AS(solve_convex(scalar_data(1.0, 1.0), LossKind::kSquared, -1.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(solve_convex(scalar_data(1.0, 1.0), LossKind::kSquared, 1.0, 0.0),
                  std::invalid_argument);
}

TEST_SUITE_END();
