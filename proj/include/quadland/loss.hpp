#ifndef QUADLAND_LOSS_HPP_
#define QUADLAND_LOSS_HPP_

#include <string>

namespace quadland {

/// Convex C^2 losses in the prediction argument.
///   squared:  l(yhat, y) = (yhat - y)^2 / 2
///   logistic: l(yhat, y) = log(1 + exp(-y * yhat)),  y in {-1, +1}
enum class LossKind { kSquared, kLogistic };

std::string to_string(LossKind kind);
LossKind loss_from_string(const std::string& name);

struct LossEval {
  double value;  // l(yhat, y)
  double d1;     // dl/dyhat
  double d2;     // d2l/dyhat2, nonnegative by convexity
};

/// Value and first two derivatives with respect to the prediction.
/// The logistic branch is evaluated in a saturation-safe form.
LossEval loss_derivatives(LossKind kind, double yhat, double y);

}  // namespace quadland

#endif  // QUADLAND_LOSS_HPP_
