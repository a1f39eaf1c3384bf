#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "taiw/config.hpp"
#include "taiw/data.hpp"

namespace taiw {

enum class TimeFormat {
  kEpochSeconds,
  kEpochDays,
  kPattern,  // strptime-style pattern, e.g. "%m/%d/%Y"
};

// Where the user/item/time/basket columns live in a transaction CSV.
struct SourceSchema {
  std::string user_col;
  std::string item_col;
  std::string time_col;
  std::optional<std::string> basket_col;
  TimeFormat time_format = TimeFormat::kEpochSeconds;
  std::string time_pattern;

  // Keys: user_col, item_col, time_col, basket_col (optional), time_format.
  // time_format is `epoch_seconds`, `epoch_days`, or a pattern containing '%'.
  static SourceSchema from_config(const KeyValueConfig& cfg);
};

struct FilterConfig {
  int min_user_baskets = 3;
  int min_item_users = 5;
  std::optional<int> max_user_baskets;
  bool drop_single_day_users = true;

  // Keys: min_user_baskets, min_item_users, max_user_baskets, drop_single_day_users.
  static FilterConfig from_config(const KeyValueConfig& cfg);
  void validate() const;
};

// Reads a header-led CSV. Rows of one user are grouped into baskets by the basket column when
// present, otherwise by UTC calendar day. Timestamps become fractional days since the earliest
// row in the file; a basket takes the time of its earliest row.
InteractionLog parse_transactions(const std::filesystem::path& path, const SourceSchema& schema);
InteractionLog parse_transactions(std::istream& in, const SourceSchema& schema);

// Alternates item and user passes until nothing changes, then re-indexes both vocabularies.
InteractionLog filter_dataset(const InteractionLog& log, const FilterConfig& cfg);

// Last basket to test, penultimate to validation, the rest to training.
DatasetSplit split_leave_one_basket(const InteractionLog& log);

// Users ordered by (test time - validation time, user id) and cut into `n_buckets`
// contiguous groups; the first `n % n_buckets` groups get one extra user.
// Returns the bucket index of every user.
std::vector<int> assign_gap_buckets(const DatasetSplit& split, int n_buckets);

// Canonical on-disk layout: baskets.tsv (`user<TAB>time<TAB>i,j,...`), users.tsv, items.tsv.
void write_canonical(const InteractionLog& log, const std::filesystem::path& dir);
InteractionLog read_canonical(const std::filesystem::path& dir);

// 64-bit FNV-1a over the three canonical files, as 16 hex digits.
std::string canonical_fingerprint(const std::filesystem::path& dir);

}  // namespace taiw
