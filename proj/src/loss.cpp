#include "quadland/loss.hpp"

#include <cmath>
#include <stdexcept>

namespace quadland {

std::string to_string(LossKind kind) {
  return kind == LossKind::kSquared ? "squared" : "logistic";
}

LossKind loss_from_string(const std::string& name) {
  if (name == "squared") return LossKind::kSquared;
  if (name == "logistic") return LossKind::kLogistic;
  throw std::invalid_argument("unknown loss kind: " + name);
}

LossEval loss_derivatives(LossKind kind, double yhat, double y) {
  if (!std::isfinite(yhat) || !std::isfinite(y)) {
    throw std::invalid_argument("loss_derivatives: non-finite argument");
  }
  if (kind == LossKind::kSquared) {
    const double r = yhat - y;
    return {0.5 * r * r, r, 1.0};
  }
  if (y != 1.0 && y != -1.0) {
    throw std::invalid_argument("logistic loss requires y in {-1, +1}");
  }
  // z = -y*yhat; l = log(1 + e^z), sigma = 1/(1 + e^-z) = l'( margin ) weight
  const double z = -y * yhat;
  const double value = z > 0.0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z));
  const double sigma = z > 0.0 ? 1.0 / (1.0 + std::exp(-z)) : std::exp(z) / (1.0 + std::exp(z));
  return {value, -y * sigma, sigma * (1.0 - sigma)};
}

}  // namespace quadland
