#include "quadland/certifier.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "quadland/rng.hpp"

namespace quadland {

namespace {

Weights random_unit(int k, int d, std::uint64_t seed) {
  Rng rng(seed);
  Weights v(k, d);
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < d; ++j) v(i, j) = rng.gaussian();
  }
  return v / v.norm();
}

}  // namespace

MinEigResult min_hessian_eig(const Weights& w, const Objective& obj, double tol) {
  const HessianOperator hess(w, obj);
  const int k = static_cast<int>(w.rows());
  const int d = static_cast<int>(w.cols());
  const int dim = k * d;
  const int max_steps = std::min(dim, 400);
  const std::uint64_t base_seed =
      Rng::derive(0x51CE55ED5EEDull, static_cast<std::uint64_t>(dim));

  for (int attempt = 0; attempt < 5; ++attempt) {
    std::vector<Weights> basis;
    basis.push_back(random_unit(k, d, Rng::derive(base_seed, attempt)));
    std::vector<double> alphas, betas;

    for (int j = 0; j < max_steps; ++j) {
      Weights hv = hess.apply(basis[j]);
      const double alpha = (basis[j].array() * hv.array()).sum();
      alphas.push_back(alpha);
      hv -= alpha * basis[j];
      if (j > 0) hv -= betas[j - 1] * basis[j - 1];
      // Full reorthogonalization, two passes.
      for (int pass = 0; pass < 2; ++pass) {
        for (const Weights& v : basis) {
          hv -= (v.array() * hv.array()).sum() * v;
        }
      }
      const double beta = hv.norm();

      // Ritz values of the tridiagonal section.
      const Eigen::Index m = static_cast<Eigen::Index>(alphas.size());
      Eigen::VectorXd diag = Eigen::Map<const Eigen::VectorXd>(alphas.data(), m);
      Eigen::VectorXd sub(std::max<Eigen::Index>(m - 1, 0));
      for (Eigen::Index t = 0; t + 1 < m; ++t) sub[t] = betas[t];
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> tri;
      tri.computeFromTridiagonal(diag, sub);
      const Eigen::VectorXd& theta = tri.eigenvalues();
      const double scale = std::max(std::abs(theta[0]), std::abs(theta[m - 1]));
      const double residual = std::abs(beta * tri.eigenvectors()(m - 1, 0));

      if (residual <= tol * std::max(scale, 1e-300) || m == dim) {
        Weights u = Weights::Zero(k, d);
        for (Eigen::Index t = 0; t < m; ++t) u += tri.eigenvectors()(t, 0) * basis[t];
        u /= u.norm();
        MinEigResult out;
        out.eigenvalue = theta[0];
        out.direction = std::move(u);
        out.iterations = static_cast<int>(m);
        out.restarts = attempt;
        return out;
      }
      if (beta <= 1e-300) break;  // subspace exhausted without convergence
      betas.push_back(beta);
      basis.push_back(hv / beta);
    }
  }
  throw std::runtime_error("min_hessian_eig: Lanczos failed to converge after 5 restarts");
}

RankResult numerical_rank(const Weights& w, double rel_tol) {
  if (!(rel_tol > 0.0)) throw std::invalid_argument("numerical_rank: rel_tol must be > 0");
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(w);
  const Eigen::VectorXd& sv = svd.singularValues();
  RankResult out;
  const double sigma1 = sv.size() > 0 ? sv[0] : 0.0;
  if (sigma1 <= 0.0) return out;  // zero matrix: rank 0, ratio 0
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv[i] > rel_tol * sigma1) ++out.rank;
  }
  // sigma_k is zero whenever W has more rows than singular values.
  const double sigma_k = w.rows() <= sv.size() ? sv[sv.size() - 1] : 0.0;
  out.sigma_ratio = sigma_k / sigma1;
  return out;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::kCertifiedGlobal: return "certified-global";
    case Verdict::kSecondOrderStationaryOnly: return "second-order-stationary-only";
    default: return "not-stationary";
  }
}

Certificate dual_certificate(const Weights& w, const Objective& obj, double eps) {
  Certificate cert;
  cert.eps = eps;

  const Eigen::MatrixXd shat = shat_matrix(w, obj);
  const Eigen::MatrixXd grad = w * shat;
  cert.grad_norm = grad.norm();
  cert.complementarity = grad.norm();

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(shat);
  cert.dual_min_eig = eig.eigenvalues().minCoeff();

  const MinEigResult hess_min = min_hessian_eig(w, obj, std::min(eps, 1e-9));
  cert.min_hess_eig = hess_min.eigenvalue;

  const RankResult rank = numerical_rank(w);
  cert.numerical_rank_w = rank.rank;
  cert.sigma_ratio = rank.sigma_ratio;

  const double scaled = eps * (1.0 + w.norm());
  const bool grad_ok = cert.grad_norm <= scaled;
  const bool comp_ok = cert.complementarity <= scaled;
  const bool dual_ok = cert.dual_min_eig >= -eps;
  if (grad_ok && comp_ok && dual_ok) {
    cert.verdict = Verdict::kCertifiedGlobal;
  } else if (grad_ok && cert.min_hess_eig >= -eps) {
    cert.verdict = Verdict::kSecondOrderStationaryOnly;
  } else {
    cert.verdict = Verdict::kNotStationary;
  }
  return cert;
}

}  // namespace quadland
