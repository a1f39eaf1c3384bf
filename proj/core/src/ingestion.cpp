#include "taiw/ingestion.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <limits>
#include <map>
#include <numeric>
#include <sstream>

namespace taiw {
namespace {

constexpr double kSecondsPerDay = 86400.0;

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  bool quoted = false;
  for (std::size_t k = 0; k < line.size(); ++k) {
    const char c = line[k];
    if (quoted) {
      if (c == '"') {
        if (k + 1 < line.size() && line[k + 1] == '"') {
          field.push_back('"');
          ++k;
        } else {
          quoted = false;
        }
      } else {
        field.push_back(c);
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(field));
      field.clear();
    } else if (c != '\r') {
      field.push_back(c);
    }
  }
  fields.push_back(std::move(field));
  return fields;
}

std::size_t column_index(const std::vector<std::string>& header, const std::string& name) {
  auto it = std::find(header.begin(), header.end(), name);
  if (it == header.end()) {
    throw ConfigError("missing column '" + name + "' in CSV header");
  }
  return static_cast<std::size_t>(it - header.begin());
}

std::optional<double> parse_number(const std::string& s) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) {
    return std::nullopt;
  }
  return v;
}

// Absolute days since the Unix epoch.
std::optional<double> parse_time(const std::string& raw, const SourceSchema& schema) {
  switch (schema.time_format) {
    case TimeFormat::kEpochSeconds: {
      auto v = parse_number(raw);
      if (!v) return std::nullopt;
      return *v / kSecondsPerDay;
    }
    case TimeFormat::kEpochDays:
      return parse_number(raw);
    case TimeFormat::kPattern: {
      std::tm tm{};
      std::istringstream in(raw);
      in >> std::get_time(&tm, schema.time_pattern.c_str());
      if (in.fail()) return std::nullopt;
      const std::time_t secs = timegm(&tm);
      return static_cast<double>(secs) / kSecondsPerDay;
    }
  }
  return std::nullopt;
}

struct RawRow {
  std::uint32_t user;
  std::uint32_t item;
  double days;
  std::string basket_key;
};

}  // namespace

SourceSchema SourceSchema::from_config(const KeyValueConfig& cfg) {
  SourceSchema schema;
  auto require = [&](const char* key) {
    auto v = cfg.get(key);
    if (!v || v->empty()) {
      throw ConfigError(std::string("schema config is missing '") + key + "'");
    }
    return *v;
  };
  schema.user_col = require("user_col");
  schema.item_col = require("item_col");
  schema.time_col = require("time_col");
  if (auto b = cfg.get("basket_col"); b && !b->empty()) {
    schema.basket_col = *b;
  }
  const std::string fmt = cfg.get_string("time_format", "epoch_seconds");
  if (fmt == "epoch_seconds") {
    schema.time_format = TimeFormat::kEpochSeconds;
  } else if (fmt == "epoch_days") {
    schema.time_format = TimeFormat::kEpochDays;
  } else if (fmt.find('%') != std::string::npos) {
    schema.time_format = TimeFormat::kPattern;
    schema.time_pattern = fmt;
  } else {
    throw ConfigError("unknown time_format '" + fmt + "'");
  }
  return schema;
}

FilterConfig FilterConfig::from_config(const KeyValueConfig& cfg) {
  FilterConfig f;
  f.min_user_baskets = static_cast<int>(cfg.get_int("min_user_baskets", f.min_user_baskets));
  f.min_item_users = static_cast<int>(cfg.get_int("min_item_users", f.min_item_users));
  if (auto v = cfg.get("max_user_baskets"); v && *v != "unlimited" && !v->empty()) {
    f.max_user_baskets = static_cast<int>(cfg.get_int("max_user_baskets", 0));
  }
  f.drop_single_day_users = cfg.get_bool("drop_single_day_users", f.drop_single_day_users);
  f.validate();
  return f;
}

void FilterConfig::validate() const {
  if (min_user_baskets < 3) {
    throw ConfigError("min_user_baskets must be >= 3 (train/validation/test)");
  }
  if (min_item_users < 1) {
    throw ConfigError("min_item_users must be >= 1");
  }
  if (max_user_baskets && *max_user_baskets < min_user_baskets) {
    throw ConfigError("max_user_baskets must be >= min_user_baskets");
  }
}

InteractionLog parse_transactions(const std::filesystem::path& path, const SourceSchema& schema) {
  std::ifstream in(path);
  if (!in) {
    throw DataError("cannot open " + path.string());
  }
  return parse_transactions(in, schema);
}

InteractionLog parse_transactions(std::istream& in, const SourceSchema& schema) {
  std::string line;
  if (!std::getline(in, line)) {
    throw DataError("empty input: missing CSV header");
  }
  const auto header = split_csv_line(line);
  const std::size_t user_col = column_index(header, schema.user_col);
  const std::size_t item_col = column_index(header, schema.item_col);
  const std::size_t time_col = column_index(header, schema.time_col);
  std::optional<std::size_t> basket_col;
  if (schema.basket_col) {
    basket_col = column_index(header, *schema.basket_col);
  }

  InteractionLog log;
  std::vector<RawRow> rows;
  double epoch = std::numeric_limits<double>::infinity();
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") {
      continue;
    }
    const auto fields = split_csv_line(line);
    if (fields.size() != header.size()) {
      throw DataError("line " + std::to_string(line_no) + ": expected " +
                      std::to_string(header.size()) + " fields, got " +
                      std::to_string(fields.size()));
    }
    if (fields[user_col].empty()) {
      throw DataError("line " + std::to_string(line_no) + ": empty user id");
    }
    if (fields[item_col].empty()) {
      throw DataError("line " + std::to_string(line_no) + ": empty item id");
    }
    auto days = parse_time(fields[time_col], schema);
    if (!days) {
      throw DataError("line " + std::to_string(line_no) + ": cannot parse timestamp '" +
                      fields[time_col] + "'");
    }
    RawRow row;
    row.user = log.users.encode(fields[user_col]);
    row.item = log.items.encode(fields[item_col]);
    row.days = *days;
    if (basket_col) {
      if (fields[*basket_col].empty()) {
        throw DataError("line " + std::to_string(line_no) + ": empty basket id");
      }
      row.basket_key = fields[*basket_col];
    } else {
      row.basket_key = std::to_string(static_cast<long long>(std::floor(*days)));
    }
    epoch = std::min(epoch, *days);
    rows.push_back(std::move(row));
  }
  if (rows.empty()) {
    throw DataError("input has a header but no rows");
  }

  struct Group {
    double time = std::numeric_limits<double>::infinity();
    std::vector<ItemId> items;
  };
  std::vector<std::map<std::string, Group>> groups(log.users.size());
  for (const RawRow& r : rows) {
    Group& g = groups[r.user][r.basket_key];
    g.time = std::min(g.time, r.days - epoch);
    g.items.push_back(r.item);
  }

  log.histories.resize(log.users.size());
  for (UserId u = 0; u < log.histories.size(); ++u) {
    std::vector<Group> gs;
    for (auto& [key, g] : groups[u]) {
      gs.push_back(std::move(g));
    }
    std::stable_sort(gs.begin(), gs.end(), [](const Group& a, const Group& b) { return a.time < b.time; });
    UserHistory& h = log.histories[u];
    h.user = u;
    for (Group& g : gs) {
      // Baskets sharing a timestamp are merged to keep times strictly increasing.
      if (!h.baskets.empty() && h.baskets.back().time == g.time) {
        auto items = std::move(h.baskets.back().items);
        items.insert(items.end(), g.items.begin(), g.items.end());
        h.baskets.back() = make_basket(g.time, std::move(items));
      } else {
        h.baskets.push_back(make_basket(g.time, std::move(g.items)));
      }
    }
  }
  return log;
}

InteractionLog filter_dataset(const InteractionLog& log, const FilterConfig& cfg) {
  cfg.validate();
  std::vector<UserHistory> hist = log.histories;
  std::vector<bool> user_alive(hist.size(), true);
  std::vector<bool> item_alive(log.num_items(), true);

  bool changed = true;
  while (changed) {
    changed = false;

    std::vector<int> item_users(log.num_items(), 0);
    for (std::size_t u = 0; u < hist.size(); ++u) {
      if (!user_alive[u]) continue;
      for (ItemId i : history_items(hist[u])) {
        ++item_users[i];
      }
    }
    for (std::size_t i = 0; i < item_alive.size(); ++i) {
      if (item_alive[i] && item_users[i] < cfg.min_item_users) {
        item_alive[i] = false;
        changed = true;
      }
    }

    for (std::size_t u = 0; u < hist.size(); ++u) {
      if (!user_alive[u]) continue;
      auto& baskets = hist[u].baskets;
      for (auto& b : baskets) {
        std::erase_if(b.items, [&](ItemId i) { return !item_alive[i]; });
      }
      std::erase_if(baskets, [](const Basket& b) { return b.items.empty(); });

      const int n = static_cast<int>(baskets.size());
      bool drop = n < cfg.min_user_baskets;
      if (cfg.max_user_baskets && n > *cfg.max_user_baskets) drop = true;
      if (cfg.drop_single_day_users && !baskets.empty() &&
          baskets.back().time - baskets.front().time < 1.0) {
        drop = true;
      }
      if (drop) {
        user_alive[u] = false;
        changed = true;
      }
    }
  }

  InteractionLog out;
  std::vector<ItemId> item_map(log.num_items(), 0);
  for (ItemId i = 0; i < log.num_items(); ++i) {
    if (item_alive[i]) {
      item_map[i] = out.items.encode(log.items.decode(i));
    }
  }
  for (std::size_t u = 0; u < hist.size(); ++u) {
    if (!user_alive[u]) continue;
    UserHistory h;
    h.user = out.users.encode(log.users.decode(static_cast<std::uint32_t>(u)));
    for (const Basket& b : hist[u].baskets) {
      std::vector<ItemId> items;
      for (ItemId i : b.items) items.push_back(item_map[i]);
      h.baskets.push_back(make_basket(b.time, std::move(items)));
    }
    out.histories.push_back(std::move(h));
  }
  if (out.histories.empty() || out.items.size() == 0) {
    throw DataError("filtering removed every user or item");
  }
  return out;
}

DatasetSplit split_leave_one_basket(const InteractionLog& log) {
  DatasetSplit split;
  split.num_items = log.num_items();
  split.train.reserve(log.num_users());
  for (const UserHistory& h : log.histories) {
    if (h.baskets.size() < 3) {
      throw DataError("user " + std::to_string(h.user) + " has " +
                      std::to_string(h.baskets.size()) +
                      " baskets; leave-one-basket needs at least 3 (filter first)");
    }
    UserHistory train{h.user, {h.baskets.begin(), h.baskets.end() - 2}};
    split.train.push_back(std::move(train));
    split.validation.push_back(h.baskets[h.baskets.size() - 2]);
    split.test.push_back(h.baskets.back());
  }
  return split;
}

std::vector<int> assign_gap_buckets(const DatasetSplit& split, int n_buckets) {
  if (n_buckets < 1) {
    throw std::invalid_argument("n_buckets must be >= 1");
  }
  const std::size_t n = split.num_users();
  std::vector<UserId> order(n);
  std::iota(order.begin(), order.end(), 0);
  auto gap = [&](UserId u) { return split.test[u].time - split.validation[u].time; };
  std::stable_sort(order.begin(), order.end(), [&](UserId a, UserId b) { return gap(a) < gap(b); });

  std::vector<int> bucket(n, 0);
  const std::size_t buckets = static_cast<std::size_t>(n_buckets);
  const std::size_t base = n / buckets;
  const std::size_t extra = n % buckets;
  std::size_t pos = 0;
  for (std::size_t b = 0; b < buckets; ++b) {
    const std::size_t size = base + (b < extra ? 1 : 0);
    for (std::size_t k = 0; k < size; ++k) {
      bucket[order[pos++]] = static_cast<int>(b);
    }
  }
  return bucket;
}

}  // namespace taiw
