#include "quadland/perturb.hpp"

#include <Eigen/Eigenvalues>
#include <stdexcept>

#include "quadland/rng.hpp"

namespace quadland {

PerturbationC sample_psd(int d, double delta, std::uint64_t seed) {
  if (d < 1) throw std::invalid_argument("sample_psd: d must be >= 1");
  if (!(delta > 0.0)) throw std::invalid_argument("sample_psd: delta must be > 0");

  Rng rng(seed);
  Eigen::MatrixXd a(d, d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) a(i, j) = rng.gaussian();
  }
  Eigen::MatrixXd wishart = a * a.transpose();
  // 0.5*(w + w^T) makes the stored matrix bitwise symmetric.
  wishart = 0.5 * (wishart + wishart.transpose()).eval();
  const double norm = wishart.norm();
  const double radius = delta * rng.uniform_pos();

  PerturbationC c;
  c.delta = delta;
  c.seed = seed;
  c.matrix = (radius / norm) * wishart;
  return c;
}

PerturbValidation validate(const PerturbationC& c) {
  PerturbValidation report;
  report.symmetry_defect = (c.matrix - c.matrix.transpose()).norm();
  report.frobenius_norm = c.matrix.norm();

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(c.matrix);
  report.min_eigenvalue = eig.eigenvalues().minCoeff();
  const double spectral_norm = eig.eigenvalues().cwiseAbs().maxCoeff();

  if (report.symmetry_defect != 0.0) {
    report.violation = "matrix is not exactly symmetric";
  } else if (report.frobenius_norm > c.delta) {
    report.violation = "Frobenius norm exceeds delta budget";
  } else if (report.min_eigenvalue < -1e-10 * spectral_norm) {
    report.violation = "negative eigenvalue beyond numerical PSD tolerance";
  }
  report.pass = report.violation.empty();
  return report;
}

}  // namespace quadland
