#include "quadland/model.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace quadland {

namespace {

void check_shapes(const Weights& w, const Objective& obj) {
  if (w.cols() != obj.data.d()) {
    throw std::invalid_argument(
        "weights have " + std::to_string(w.cols()) +
        " columns but inputs have dimension " + std::to_string(obj.data.d()));
  }
  if (w.rows() < 1) throw std::invalid_argument("weights need k >= 1 rows");
}

// Predictions yhat_i = ||W x_i||^2 and loss derivatives, shared by all
// evaluation paths. Non-finite intermediates name the offending sample.
struct Evaluated {
  Eigen::MatrixXd projections;  // n x k
  Eigen::VectorXd yhat, value, d1, d2;
};

Evaluated evaluate_samples(const Weights& w, const Objective& obj) {
  Evaluated ev;
  ev.projections = obj.data.inputs * w.transpose();
  const Eigen::Index n = obj.data.n();
  ev.yhat = ev.projections.rowwise().squaredNorm();
  ev.value.resize(n);
  ev.d1.resize(n);
  ev.d2.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (!std::isfinite(ev.yhat[i])) {
      throw std::runtime_error("non-finite prediction at sample " + std::to_string(i));
    }
    const LossEval le = loss_derivatives(obj.loss, ev.yhat[i], obj.data.labels[i]);
    if (!std::isfinite(le.value)) {
      throw std::runtime_error("non-finite loss at sample " + std::to_string(i));
    }
    ev.value[i] = le.value;
    ev.d1[i] = le.d1;
    ev.d2[i] = le.d2;
  }
  return ev;
}

}  // namespace

void Objective::validate() const {
  data.validate();
  if (lambda < 0.0) throw std::invalid_argument("objective: lambda must be >= 0");
  if (perturbation && perturbation->dim() != data.d()) {
    throw std::invalid_argument("objective: perturbation dimension " +
                                std::to_string(perturbation->dim()) +
                                " does not match input dimension " +
                                std::to_string(data.d()));
  }
}

Objective Objective::without_perturbation() const {
  Objective obj = *this;
  obj.perturbation.reset();
  return obj;
}

double forward(const Weights& w, const Eigen::VectorXd& x) {
  if (w.cols() != x.size()) {
    throw std::invalid_argument("forward: weights have " + std::to_string(w.cols()) +
                                " columns but input has dimension " +
                                std::to_string(x.size()));
  }
  return (w * x).squaredNorm();
}

double objective_value(const Weights& w, const Objective& obj) {
  check_shapes(w, obj);
  const Evaluated ev = evaluate_samples(w, obj);
  double value = ev.value.mean() + 0.5 * obj.lambda * w.squaredNorm();
  if (obj.perturbation) {
    value += (obj.perturbation->matrix * (w.transpose() * w)).trace();
  }
  return value;
}

Eigen::MatrixXd shat_matrix(const Weights& w, const Objective& obj) {
  check_shapes(w, obj);
  const Evaluated ev = evaluate_samples(w, obj);
  const double scale = 2.0 / static_cast<double>(obj.data.n());
  Eigen::MatrixXd shat =
      scale * obj.data.inputs.transpose() * ev.d1.asDiagonal() * obj.data.inputs;
  shat.diagonal().array() += obj.lambda;
  if (obj.perturbation) shat += 2.0 * obj.perturbation->matrix;
  return shat;
}

Weights gradient(const Weights& w, const Objective& obj) {
  return w * shat_matrix(w, obj);
}

HessianOperator::HessianOperator(const Weights& w, const Objective& obj)
    : w_(w), inputs_(obj.data.inputs) {
  check_shapes(w, obj);
  Evaluated ev = evaluate_samples(w, obj);
  projections_ = std::move(ev.projections);
  d1_ = std::move(ev.d1);
  d2_ = std::move(ev.d2);
  const double scale = 2.0 / static_cast<double>(obj.data.n());
  shat_ = scale * inputs_.transpose() * d1_.asDiagonal() * inputs_;
  shat_.diagonal().array() += obj.lambda;
  if (obj.perturbation) shat_ += 2.0 * obj.perturbation->matrix;
}

Weights HessianOperator::apply(const Weights& u) const {
  if (u.rows() != w_.rows() || u.cols() != w_.cols()) {
    throw std::invalid_argument("hessian_vector_product: direction shape mismatch");
  }
  // Curvature through the loss: weight each sample by l''_i * 2 x_i^T W^T U x_i.
  const Eigen::MatrixXd u_proj = inputs_ * u.transpose();  // n x k
  const Eigen::VectorXd gating =
      2.0 * d2_.cwiseProduct((projections_.array() * u_proj.array()).rowwise().sum().matrix());
  const double scale = 2.0 / static_cast<double>(inputs_.rows());
  return scale * w_ * (inputs_.transpose() * gating.asDiagonal() * inputs_) + u * shat_;
}

Weights hessian_vector_product(const Weights& w, const Objective& obj, const Weights& u) {
  return HessianOperator(w, obj).apply(u);
}

}  // namespace quadland
