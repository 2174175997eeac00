#ifndef QUADLAND_PERTURB_HPP_
#define QUADLAND_PERTURB_HPP_

#include <Eigen/Dense>
#include <cstdint>
#include <string>

namespace quadland {

/// Random PSD perturbation matrix with Frobenius budget delta.
/// Construction (see sample_psd): C = r * A A^T / ||A A^T||_F with A a d x d
/// standard Gaussian matrix and r uniform on (0, delta]. The Wishart shape is
/// supported on the full PSD cone and the radial smearing keeps the law
/// absolutely continuous, so prescribed-rank configurations have probability
/// zero.
struct PerturbationC {
  Eigen::MatrixXd matrix;  // d x d, exactly symmetric
  double delta = 0.0;
  std::uint64_t seed = 0;

  Eigen::Index dim() const { return matrix.rows(); }
};

/// Draws C deterministically from (d, delta, seed). Throws on d < 1 or
/// delta <= 0.
PerturbationC sample_psd(int d, double delta, std::uint64_t seed);

struct PerturbValidation {
  double symmetry_defect = 0.0;  // ||C - C^T||_F
  double frobenius_norm = 0.0;
  double min_eigenvalue = 0.0;
  bool pass = false;
  std::string violation;  // empty when pass
};

/// Checks the PerturbationC invariants: exact symmetry, ||C||_F <= delta,
/// lambda_min >= -1e-10 * ||C||_2.
PerturbValidation validate(const PerturbationC& c);

}  // namespace quadland

#endif  // QUADLAND_PERTURB_HPP_
