#include "taiw/data.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace taiw {

std::uint32_t Vocabulary::encode(std::string_view raw) {
  auto it = index_.find(std::string(raw));
  if (it != index_.end()) {
    return it->second;
  }
  const auto idx = static_cast<std::uint32_t>(raw_.size());
  raw_.emplace_back(raw);
  index_.emplace(raw_.back(), idx);
  return idx;
}

std::optional<std::uint32_t> Vocabulary::find(std::string_view raw) const {
  auto it = index_.find(std::string(raw));
  if (it == index_.end()) {
    return std::nullopt;
  }
  return it->second;
}

const std::string& Vocabulary::decode(std::uint32_t index) const {
  if (index >= raw_.size()) {
    throw std::out_of_range("vocabulary index " + std::to_string(index) + " out of range");
  }
  return raw_[index];
}

bool Basket::contains(ItemId item) const {
  return std::binary_search(items.begin(), items.end(), item);
}

Basket make_basket(Timestamp time, std::vector<ItemId> items) {
  if (!std::isfinite(time)) {
    throw DataError("basket timestamp is not finite");
  }
  if (items.empty()) {
    throw DataError("basket has no items");
  }
  std::sort(items.begin(), items.end());
  items.erase(std::unique(items.begin(), items.end()), items.end());
  return Basket{time, std::move(items)};
}

void validate_history(const UserHistory& history) {
  for (std::size_t j = 0; j < history.baskets.size(); ++j) {
    const Basket& b = history.baskets[j];
    if (b.items.empty()) {
      throw DataError("user " + std::to_string(history.user) + ": empty basket");
    }
    if (!std::is_sorted(b.items.begin(), b.items.end()) ||
        std::adjacent_find(b.items.begin(), b.items.end()) != b.items.end()) {
      throw DataError("user " + std::to_string(history.user) + ": basket items not sorted/unique");
    }
    if (!std::isfinite(b.time)) {
      throw DataError("user " + std::to_string(history.user) + ": non-finite timestamp");
    }
    if (j > 0 && !(history.baskets[j - 1].time < b.time)) {
      throw DataError("user " + std::to_string(history.user) +
                      ": basket timestamps not strictly increasing");
    }
  }
}

std::vector<ItemId> history_items(const UserHistory& history) {
  std::vector<ItemId> out;
  for (const Basket& b : history.baskets) {
    out.insert(out.end(), b.items.begin(), b.items.end());
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<Timestamp> purchases_of(const UserHistory& history, ItemId item, Timestamp before) {
  std::vector<Timestamp> out;
  for (const Basket& b : history.baskets) {
    if (b.time < before && b.contains(item)) {
      out.push_back(b.time);
    }
  }
  return out;
}

PurchaseIndex::PurchaseIndex(const UserHistory& history) {
  std::vector<std::pair<ItemId, Timestamp>> events;
  for (const Basket& b : history.baskets) {
    for (ItemId item : b.items) {
      events.emplace_back(item, b.time);
    }
  }
  std::sort(events.begin(), events.end());

  times_.reserve(events.size());
  for (std::size_t k = 0; k < events.size(); ++k) {
    if (k == 0 || events[k].first != events[k - 1].first) {
      items_.push_back(events[k].first);
      offsets_.push_back(k);
    }
    times_.push_back(events[k].second);
  }
  offsets_.push_back(events.size());
}

std::span<const Timestamp> PurchaseIndex::all(ItemId item) const {
  auto it = std::lower_bound(items_.begin(), items_.end(), item);
  if (it == items_.end() || *it != item) {
    return {};
  }
  const auto pos = static_cast<std::size_t>(it - items_.begin());
  return std::span<const Timestamp>(times_).subspan(offsets_[pos], offsets_[pos + 1] - offsets_[pos]);
}

std::span<const Timestamp> PurchaseIndex::before(ItemId item, Timestamp before) const {
  auto times = all(item);
  auto end = std::lower_bound(times.begin(), times.end(), before);
  return times.first(static_cast<std::size_t>(end - times.begin()));
}

std::size_t InteractionLog::num_baskets() const {
  std::size_t n = 0;
  for (const auto& h : histories) {
    n += h.baskets.size();
  }
  return n;
}

UserHistory DatasetSplit::history_before_test(UserId user) const {
  UserHistory h = train.at(user);
  h.baskets.push_back(validation.at(user));
  return h;
}

DatasetSplit shift_timestamps(const DatasetSplit& split, double offset) {
  DatasetSplit out = split;
  for (auto& h : out.train) {
    for (auto& b : h.baskets) {
      b.time += offset;
    }
  }
  for (auto& b : out.validation) {
    b.time += offset;
  }
  for (auto& b : out.test) {
    b.time += offset;
  }
  return out;
}

}  // namespace taiw
