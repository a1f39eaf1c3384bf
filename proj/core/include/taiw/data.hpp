#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace taiw {

using UserId = std::uint32_t;
using ItemId = std::uint32_t;

// Fractional days since the dataset epoch.
using Timestamp = double;

// Raised for malformed input data (bad rows, broken invariants in loaded files).
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised for invalid or inconsistent configuration.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bidirectional mapping between raw string ids and contiguous indices 0..n-1.
class Vocabulary {
 public:
  // Returns the index of `raw`, assigning the next free index on first sight.
  std::uint32_t encode(std::string_view raw);
  std::optional<std::uint32_t> find(std::string_view raw) const;
  const std::string& decode(std::uint32_t index) const;

  std::size_t size() const { return raw_.size(); }
  std::span<const std::string> raw_ids() const { return raw_; }

 private:
  std::vector<std::string> raw_;
  std::unordered_map<std::string, std::uint32_t> index_;
};

// An unordered set of items bought together. Items are kept sorted and unique.
struct Basket {
  Timestamp time = 0.0;
  std::vector<ItemId> items;

  bool contains(ItemId item) const;

  friend bool operator==(const Basket&, const Basket&) = default;
};

// Sorts and de-duplicates `items`; throws DataError if empty or `time` is not finite.
Basket make_basket(Timestamp time, std::vector<ItemId> items);

struct UserHistory {
  UserId user = 0;
  std::vector<Basket> baskets;

  Timestamp last_time() const { return baskets.empty() ? 0.0 : baskets.back().time; }

  friend bool operator==(const UserHistory&, const UserHistory&) = default;
};

// Throws DataError unless baskets are non-empty, sorted, unique and strictly increasing in time.
void validate_history(const UserHistory& history);

// Union of all basket item sets, sorted.
std::vector<ItemId> history_items(const UserHistory& history);

// Timestamps of baskets containing `item` strictly earlier than `before`, ascending.
std::vector<Timestamp> purchases_of(const UserHistory& history, ItemId item, Timestamp before);

// Purchase times grouped by item for one user. Built once per history so kernel sums
// and their gradients only touch baskets that contain the item.
class PurchaseIndex {
 public:
  PurchaseIndex() = default;
  explicit PurchaseIndex(const UserHistory& history);

  // Purchase times of `item` strictly before `before`, ascending.
  std::span<const Timestamp> before(ItemId item, Timestamp before) const;
  // All purchase times of `item`.
  std::span<const Timestamp> all(ItemId item) const;

  // Distinct consumed items, sorted.
  std::span<const ItemId> items() const { return items_; }

 private:
  std::vector<ItemId> items_;
  std::vector<std::size_t> offsets_;
  std::vector<Timestamp> times_;
};

struct InteractionLog {
  Vocabulary users;
  Vocabulary items;
  // histories[u].user == u for every u.
  std::vector<UserHistory> histories;

  std::size_t num_users() const { return histories.size(); }
  std::size_t num_items() const { return items.size(); }
  std::size_t num_baskets() const;
};

// Leave-one-basket split. All three vectors are indexed by UserId.
struct DatasetSplit {
  std::size_t num_items = 0;
  std::vector<UserHistory> train;
  std::vector<Basket> validation;
  std::vector<Basket> test;

  std::size_t num_users() const { return train.size(); }

  // Training baskets followed by the validation basket: everything known when the
  // test basket is predicted.
  UserHistory history_before_test(UserId user) const;
};

// Returns a copy of `split` with every timestamp moved by `offset` days.
DatasetSplit shift_timestamps(const DatasetSplit& split, double offset);

}  // namespace taiw
