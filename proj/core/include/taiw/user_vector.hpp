#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "taiw/data.hpp"

namespace taiw {

// Length-|V| score vector, stored either densely or as sorted (item, value) pairs.
class UserVector {
 public:
  UserVector() = default;

  static UserVector dense(std::vector<double> values);
  // `entries` need not be sorted; duplicate items are summed.
  static UserVector sparse(std::size_t dim, std::vector<std::pair<ItemId, double>> entries);

  std::size_t dim() const { return dim_; }
  bool is_dense() const { return dense_; }
  // Stored entries: every item when dense, the support when sparse.
  std::size_t stored() const { return values_.size(); }

  double at(ItemId item) const;
  double squared_norm() const;
  double dot(const UserVector& other) const;

  // out += weight * this
  void add_scaled_to(std::span<double> out, double weight) const;
  std::vector<double> to_dense() const;

  // Calls f(item, value) for every stored entry in ascending item order.
  template <typename F>
  void for_each(F&& f) const {
    if (dense_) {
      for (std::size_t i = 0; i < values_.size(); ++i) f(static_cast<ItemId>(i), values_[i]);
    } else {
      for (std::size_t k = 0; k < values_.size(); ++k) f(items_[k], values_[k]);
    }
  }

  friend bool operator==(const UserVector&, const UserVector&) = default;

 private:
  std::size_t dim_ = 0;
  bool dense_ = true;
  std::vector<ItemId> items_;
  std::vector<double> values_;
};

// max(0, |a|^2 + |b|^2 - 2 <a, b>)
double squared_distance(const UserVector& a, double a_norm2, const UserVector& b, double b_norm2);

}  // namespace taiw
