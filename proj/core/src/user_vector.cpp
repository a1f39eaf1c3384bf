#include "taiw/user_vector.hpp"

#include <algorithm>
#include <stdexcept>

namespace taiw {

UserVector UserVector::dense(std::vector<double> values) {
  UserVector v;
  v.dim_ = values.size();
  v.dense_ = true;
  v.values_ = std::move(values);
  return v;
}

UserVector UserVector::sparse(std::size_t dim, std::vector<std::pair<ItemId, double>> entries) {
  std::sort(entries.begin(), entries.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  UserVector v;
  v.dim_ = dim;
  v.dense_ = false;
  for (const auto& [item, value] : entries) {
    if (item >= dim) {
      throw std::out_of_range("UserVector::sparse: item index exceeds dimension");
    }
    if (!v.items_.empty() && v.items_.back() == item) {
      v.values_.back() += value;
    } else {
      v.items_.push_back(item);
      v.values_.push_back(value);
    }
  }
  return v;
}

double UserVector::at(ItemId item) const {
  if (dense_) {
    return values_.at(item);
  }
  auto it = std::lower_bound(items_.begin(), items_.end(), item);
  if (it == items_.end() || *it != item) {
    return 0.0;
  }
  return values_[static_cast<std::size_t>(it - items_.begin())];
}

double UserVector::squared_norm() const {
  double s = 0.0;
  for (double v : values_) s += v * v;
  return s;
}

double UserVector::dot(const UserVector& other) const {
  if (dim_ != other.dim_) {
    throw std::invalid_argument("UserVector::dot: dimension mismatch");
  }
  double s = 0.0;
  if (dense_ && other.dense_) {
    for (std::size_t i = 0; i < values_.size(); ++i) s += values_[i] * other.values_[i];
  } else if (dense_) {
    for (std::size_t k = 0; k < other.items_.size(); ++k) s += values_[other.items_[k]] * other.values_[k];
  } else if (other.dense_) {
    for (std::size_t k = 0; k < items_.size(); ++k) s += other.values_[items_[k]] * values_[k];
  } else {
    std::size_t a = 0;
    std::size_t b = 0;
    while (a < items_.size() && b < other.items_.size()) {
      if (items_[a] < other.items_[b]) {
        ++a;
      } else if (other.items_[b] < items_[a]) {
        ++b;
      } else {
        s += values_[a++] * other.values_[b++];
      }
    }
  }
  return s;
}

void UserVector::add_scaled_to(std::span<double> out, double weight) const {
  if (out.size() != dim_) {
    throw std::invalid_argument("UserVector::add_scaled_to: dimension mismatch");
  }
  for_each([&](ItemId i, double v) { out[i] += weight * v; });
}

std::vector<double> UserVector::to_dense() const {
  if (dense_) {
    return values_;
  }
  std::vector<double> out(dim_, 0.0);
  for (std::size_t k = 0; k < items_.size(); ++k) out[items_[k]] = values_[k];
  return out;
}

double squared_distance(const UserVector& a, double a_norm2, const UserVector& b, double b_norm2) {
  return std::max(0.0, a_norm2 + b_norm2 - 2.0 * a.dot(b));
}

}  // namespace taiw
