#include "taiw/optimizer.hpp"

#include <cmath>
#include <stdexcept>

namespace taiw {

ParameterLayout::ParameterLayout(const TaiwModel& model) {
  const std::size_t kernel_size = model.kernels.raw_values().size();
  user_offset_ = kernel_size;
  if (model.base) {
    dim_ = model.base->dim();
    item_offset_ = user_offset_ + model.base->user_embeddings().size();
    bias_offset_ = item_offset_ + model.base->item_embeddings().size();
    num_bias_ = model.base->item_bias().size();
  } else {
    item_offset_ = user_offset_;
    bias_offset_ = user_offset_;
  }
}

double& ParameterLayout::at(TaiwModel& model, std::size_t index) const {
  if (index < user_offset_) return model.kernels.raw_values()[index];
  if (index < item_offset_) return model.base->user_embeddings()[index - user_offset_];
  if (index < bias_offset_) return model.base->item_embeddings()[index - item_offset_];
  if (index < size()) return model.base->item_bias()[index - bias_offset_];
  throw std::out_of_range("parameter index out of range");
}

double ParameterLayout::at(const TaiwModel& model, std::size_t index) const {
  return at(const_cast<TaiwModel&>(model), index);
}

void SparseGradient::clear() {
  for (std::size_t index : touched_) {
    values_[index] = 0.0;
    marked_[index] = 0;
  }
  touched_.clear();
}

Adam::Adam(std::size_t size, AdamOptions options) : options_(options), m_(size, 0.0), v_(size, 0.0) {}

void Adam::step(TaiwModel& model, const ParameterLayout& layout, const SparseGradient& grad) {
  ++steps_;
  const double b1 = options_.beta1;
  const double b2 = options_.beta2;
  const double correction1 = 1.0 - std::pow(b1, static_cast<double>(steps_));
  const double correction2 = 1.0 - std::pow(b2, static_cast<double>(steps_));
  for (std::size_t index : grad.touched()) {
    const double g = grad[index];
    m_[index] = b1 * m_[index] + (1.0 - b1) * g;
    v_[index] = b2 * v_[index] + (1.0 - b2) * g * g;
    const double m_hat = m_[index] / correction1;
    const double v_hat = v_[index] / correction2;
    layout.at(model, index) -= options_.learning_rate * m_hat / (std::sqrt(v_hat) + options_.epsilon);
  }
}

}  // namespace taiw
