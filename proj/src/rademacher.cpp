#include "quadland/rademacher.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "quadland/rng.hpp"
#include "quadland/util.hpp"

namespace quadland {

namespace {

struct DrawStats {
  double specnorm = 0.0;
  double lambdamax = 0.0;
};

// ||A||_2 and lambda_max for A = sum_i sigma_i x_i x_i^T.
DrawStats sign_matrix_stats(const Dataset& data, const Eigen::VectorXd& signs) {
  const Eigen::MatrixXd a =
      data.inputs.transpose() * signs.asDiagonal() * data.inputs;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(a);
  DrawStats st;
  st.lambdamax = eig.eigenvalues().maxCoeff();
  st.specnorm = eig.eigenvalues().cwiseAbs().maxCoeff();
  return st;
}

}  // namespace

RademacherReport empirical_rc(const Dataset& data, double frob_budget_m,
                              long num_draws, std::uint64_t seed, RcMode mode) {
  data.validate();
  if (!(frob_budget_m > 0.0)) {
    throw std::invalid_argument("empirical_rc: Frobenius budget M must be > 0");
  }
  const Eigen::Index n = data.n();
  const bool enumerate =
      mode == RcMode::kEnumerate || (mode == RcMode::kAuto && n <= 12);
  if (!enumerate && num_draws < 1) {
    throw std::invalid_argument("empirical_rc: num_draws must be >= 1");
  }
  if (enumerate && n > 30) {
    throw std::invalid_argument("empirical_rc: enumeration infeasible for n > 30");
  }

  RademacherReport report;
  report.frob_budget_M = frob_budget_m;
  const double scale = frob_budget_m * frob_budget_m / static_cast<double>(n);

  std::vector<DrawStats> draws;
  if (enumerate) {
    const long total = 1L << n;
    draws.resize(total);
    parallel_for(static_cast<std::size_t>(total), [&](std::size_t bits) {
      Eigen::VectorXd signs(n);
      for (Eigen::Index i = 0; i < n; ++i) {
        signs[i] = (bits >> i) & 1 ? 1.0 : -1.0;
      }
      draws[bits] = sign_matrix_stats(data, signs);
    });
    report.num_draws = total;
    report.exact = true;
  } else {
    draws.resize(num_draws);
    parallel_for(static_cast<std::size_t>(num_draws), [&](std::size_t t) {
      Rng rng(Rng::derive(seed, t));
      Eigen::VectorXd signs(n);
      for (Eigen::Index i = 0; i < n; ++i) {
        signs[i] = rng.uniform() < 0.5 ? -1.0 : 1.0;
      }
      draws[t] = sign_matrix_stats(data, signs);
    });
    report.num_draws = num_draws;
  }

  KahanSum spec_sum, lmax_sum;
  for (const DrawStats& st : draws) {
    spec_sum.add(st.specnorm);
    lmax_sum.add(st.lambdamax);
  }
  const double count = static_cast<double>(draws.size());
  const double spec_mean = spec_sum.value() / count;
  report.mc_estimate_specnorm = scale * spec_mean;
  report.mc_estimate_lambdamax = scale * lmax_sum.value() / count;

  if (!report.exact && draws.size() >= 2) {
    KahanSum sq;
    for (const DrawStats& st : draws) {
      const double dev = st.specnorm - spec_mean;
      sq.add(dev * dev);
    }
    const double sample_var = sq.value() / (count - 1.0);
    report.mc_std_error = scale * std::sqrt(sample_var / count);
  }
  return report;
}

double fourth_moment_s(const Dataset& data) {
  data.validate();
  const Eigen::VectorXd row_sq = data.inputs.rowwise().squaredNorm();
  const Eigen::MatrixXd sum =
      data.inputs.transpose() * row_sq.asDiagonal() * data.inputs;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(sum);
  return eig.eigenvalues().cwiseAbs().maxCoeff();
}

RcBounds closed_form_bounds(int d, long n, double frob_budget_m, double ball_radius_b,
                            double s, double c_gauss) {
  if (d < 1 || n < 1) throw std::invalid_argument("closed_form_bounds: d, n must be >= 1");
  if (!(frob_budget_m > 0.0) || !(ball_radius_b > 0.0) || s < 0.0 || !(c_gauss > 0.0)) {
    throw std::invalid_argument("closed_form_bounds: arguments must be positive");
  }
  const double log_d = std::log(static_cast<double>(d));
  const double m2 = frob_budget_m * frob_budget_m;
  const double m4 = m2 * m2;
  const double b4 = std::pow(ball_radius_b, 4);
  const double nn = static_cast<double>(n);

  RcBounds out;
  out.log_d_zero_warning = d == 1;
  out.bounded = std::sqrt(2.0 * b4 * m4 * log_d / nn);
  out.fourth = std::sqrt(2.0 * m4 * s * log_d) / nn;
  out.gaussian_nolog = c_gauss * std::sqrt(m4 * static_cast<double>(d) / nn);
  out.gaussian_log = m2 * std::sqrt(2.0 * c_gauss * static_cast<double>(d) * log_d / nn);
  return out;
}

RademacherReport full_report(const Dataset& data, double frob_budget_m, long num_draws,
                             std::uint64_t seed, double c_gauss, RcMode mode) {
  RademacherReport report = empirical_rc(data, frob_budget_m, num_draws, seed, mode);
  report.s_fourth_moment = fourth_moment_s(data);
  report.ball_radius_b = std::sqrt(data.inputs.rowwise().squaredNorm().maxCoeff());
  const RcBounds bounds =
      closed_form_bounds(static_cast<int>(data.d()), data.n(), frob_budget_m,
                         report.ball_radius_b, report.s_fourth_moment, c_gauss);
  report.bound_bounded = bounds.bounded;
  report.bound_fourth = bounds.fourth;
  report.bound_gaussian_nolog = bounds.gaussian_nolog;
  report.bound_gaussian_log = bounds.gaussian_log;
  report.log_d_zero_warning = bounds.log_d_zero_warning;
  return report;
}

}  // namespace quadland
