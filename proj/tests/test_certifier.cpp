#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <cmath>

#include "oracles.hpp"
#include "quadland/certifier.hpp"
#include "quadland/convex_oracle.hpp"

using namespace quadland;
namespace oracle = quadland::testoracle;

TEST_SUITE_BEGIN("certifier");

TEST_CASE("min_hessian_eig on pinned instances") {
  const Objective scalar = oracle::scalar_instance();
  const MinEigResult saddle = min_hessian_eig(Weights::Zero(1, 1), scalar);
  CHECK(saddle.eigenvalue == doctest::Approx(-2.0).epsilon(1e-10));
  CHECK(std::abs(std::abs(saddle.direction(0, 0)) - 1.0) <= 1e-12);

  // Zero weights and labels leave only the regularizer's curvature.
  Dataset zeros;
  zeros.inputs = oracle::random_weights(4, 2, 1.0, 61);
  zeros.labels = Eigen::VectorXd::Zero(4);
  Objective reg{zeros, LossKind::kSquared, 0.7, std::nullopt};
  const MinEigResult identity_case = min_hessian_eig(Weights::Zero(2, 2), reg);
  CHECK(identity_case.eigenvalue == doctest::Approx(0.7).epsilon(1e-10));
}

TEST_CASE("min_hessian_eig agrees with the dense Hessian oracle") {
  const std::pair<int, int> shapes[] = {{2, 3}, {4, 4}, {8, 8}, {3, 7}, {1, 5}};
  int idx = 0;
  for (const auto& [k, d] : shapes) {
    const LossKind loss = idx % 2 == 0 ? LossKind::kSquared : LossKind::kLogistic;
    const Objective obj = oracle::random_instance(10, d, loss, 0.1, idx % 2 == 1, idx + 70);
    const Weights w = oracle::random_weights(k, d, 0.6, idx + 80);

    const Eigen::MatrixXd dense = oracle::dense_hessian(w, obj);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(dense);
    const double reference = eig.eigenvalues().minCoeff();
    const double opnorm = eig.eigenvalues().cwiseAbs().maxCoeff();

    const MinEigResult lanczos = min_hessian_eig(w, obj);
    CHECK(std::abs(lanczos.eigenvalue - reference) <= 1e-8 * std::max(1.0, opnorm));

    // The returned direction realizes its Ritz value.
    const HessianOperator hess(w, obj);
    const double quad =
        (lanczos.direction.array() * hess.apply(lanczos.direction).array()).sum();
    CHECK(quad == doctest::Approx(lanczos.eigenvalue).epsilon(1e-8));
    ++idx;
  }
}

TEST_CASE("numerical_rank on pinned and generic matrices") {
  Weights rank1(2, 2);
  rank1 << 1.0, 0.0, 0.0, 0.0;
  CHECK(numerical_rank(rank1).rank == 1);
  CHECK(numerical_rank(rank1).sigma_ratio == 0.0);

  CHECK(numerical_rank(Weights::Identity(2, 2)).rank == 2);
  CHECK(numerical_rank(Weights::Identity(2, 2)).sigma_ratio == 1.0);

  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const Weights w = oracle::random_weights(3, 10, 1.0, seed + 500);
    CHECK(numerical_rank(w).rank == 3);
  }

  // More rows than columns: sigma_k refers to the k-th singular value,
  // which does not exist, so the ratio is zero.
  const Weights tall = oracle::random_weights(10, 3, 1.0, 600);
  const RankResult tall_rank = numerical_rank(tall);
  CHECK(tall_rank.rank == 3);
  CHECK(tall_rank.sigma_ratio == 0.0);

  CHECK(numerical_rank(Weights::Zero(3, 3)).rank == 0);
}

TEST_CASE("dual certificate at the scalar interpolating minimum") {
  const Objective scalar = oracle::scalar_instance();
  const Certificate cert = dual_certificate(Weights::Constant(1, 1, 1.0), scalar);
  CHECK(cert.verdict == Verdict::kCertifiedGlobal);
  CHECK(cert.grad_norm <= 1e-12);
  CHECK(cert.dual_min_eig == doctest::Approx(0.0));
  CHECK(cert.complementarity <= 1e-12);
}

TEST_CASE("dual certificate rejects the scalar saddle") {
  const Objective scalar = oracle::scalar_instance();
  const Certificate cert = dual_certificate(Weights::Zero(1, 1), scalar);
  CHECK(cert.verdict == Verdict::kNotStationary);
  CHECK(cert.grad_norm <= 1e-15);
  CHECK(cert.dual_min_eig == doctest::Approx(-2.0).epsilon(1e-12));
  CHECK(cert.min_hess_eig == doctest::Approx(-2.0).epsilon(1e-9));
}

TEST_CASE("weights recovered from the convex oracle certify as global") {
  // Four directions spanning Sym(2) with labels that put the optimum in the
  // cone's interior.
  Dataset data;
  data.inputs.resize(4, 2);
  const double r = 1.0 / std::sqrt(2.0);
  data.inputs << 1.0, 0.0, 0.0, 1.0, r, r, r, -r;
  data.labels.resize(4);
  data.labels << 2.0, 2.0, 2.0, 2.0;

  const double lambda = 0.1;
  const ConvexSolution sol = solve_convex(data, LossKind::kSquared, lambda, 1e-12, 100000);
  REQUIRE(sol.converged);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(sol.M);
  REQUIRE(eig.eigenvalues().minCoeff() > 0.0);
  const Weights w = eig.eigenvalues().cwiseSqrt().asDiagonal() *
                    eig.eigenvectors().transpose();

  Objective obj{data, LossKind::kSquared, lambda, std::nullopt};
  const Certificate cert = dual_certificate(w, obj, 1e-6);
  CHECK(cert.verdict == Verdict::kCertifiedGlobal);

  // Consistency: a certified point matches the oracle value.
  const double value = objective_value(w, obj);
  CHECK(std::abs(value - sol.value) <= 1e-4 * std::abs(sol.value));
}

TEST_CASE("negative-curvature direction decreases the objective at saddles") {
  // Multi-dimensional strict saddle: W = 0 with strongly positive labels.
  Dataset data;
  data.inputs = oracle::random_weights(6, 3, 1.0, 700);
  data.labels = Eigen::VectorXd::Constant(6, 3.0);
  Objective obj{data, LossKind::kSquared, 0.05, std::nullopt};
  const Weights w0 = Weights::Zero(2, 3);

  CHECK(gradient(w0, obj).norm() <= 1e-15);
  const MinEigResult me = min_hessian_eig(w0, obj);
  REQUIRE(me.eigenvalue < -1e-6);

  const double base = objective_value(w0, obj);
  bool decreased = false;
  for (double t = 1.0; t >= 1e-6; t *= 0.5) {
    if (objective_value(w0 + t * me.direction, obj) < base) {
      decreased = true;
      break;
    }
  }
  CHECK(decreased);
}

TEST_SUITE_END();
