#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "taiw/config.hpp"
#include "taiw/ingestion.hpp"

namespace taiw {
namespace {

void write_vocabulary(const Vocabulary& vocab, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw DataError("cannot write " + path.string());
  }
  for (std::uint32_t k = 0; k < vocab.size(); ++k) {
    out << k << '\t' << vocab.decode(k) << '\n';
  }
}

Vocabulary read_vocabulary(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw DataError("cannot open " + path.string());
  }
  Vocabulary vocab;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos) {
      throw DataError(path.filename().string() + " line " + std::to_string(line_no) + ": missing tab");
    }
    const std::uint32_t idx = vocab.encode(line.substr(tab + 1));
    if (std::to_string(idx) != line.substr(0, tab)) {
      throw DataError(path.filename().string() + " line " + std::to_string(line_no) +
                      ": indices must be contiguous and unique");
    }
  }
  return vocab;
}

template <typename T>
T parse_field(std::string_view s, const std::string& what, std::size_t line_no) {
  T v{};
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw DataError("baskets.tsv line " + std::to_string(line_no) + ": bad " + what + " '" +
                    std::string(s) + "'");
  }
  return v;
}

}  // namespace

void write_canonical(const InteractionLog& log, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  std::ofstream out(dir / "baskets.tsv", std::ios::binary);
  if (!out) {
    throw DataError("cannot write " + (dir / "baskets.tsv").string());
  }
  for (const UserHistory& h : log.histories) {
    for (const Basket& b : h.baskets) {
      out << h.user << '\t' << format_double(b.time) << '\t';
      for (std::size_t k = 0; k < b.items.size(); ++k) {
        if (k) out << ',';
        out << b.items[k];
      }
      out << '\n';
    }
  }
  write_vocabulary(log.users, dir / "users.tsv");
  write_vocabulary(log.items, dir / "items.tsv");
}

InteractionLog read_canonical(const std::filesystem::path& dir) {
  InteractionLog log;
  log.users = read_vocabulary(dir / "users.tsv");
  log.items = read_vocabulary(dir / "items.tsv");
  log.histories.resize(log.users.size());
  for (UserId u = 0; u < log.histories.size(); ++u) {
    log.histories[u].user = u;
  }

  std::ifstream in(dir / "baskets.tsv");
  if (!in) {
    throw DataError("cannot open " + (dir / "baskets.tsv").string());
  }
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto t1 = line.find('\t');
    const auto t2 = t1 == std::string::npos ? t1 : line.find('\t', t1 + 1);
    if (t2 == std::string::npos) {
      throw DataError("baskets.tsv line " + std::to_string(line_no) + ": expected 3 fields");
    }
    const std::string_view view(line);
    const auto user = parse_field<UserId>(view.substr(0, t1), "user index", line_no);
    const auto time = parse_field<double>(view.substr(t1 + 1, t2 - t1 - 1), "timestamp", line_no);
    if (user >= log.histories.size()) {
      throw DataError("baskets.tsv line " + std::to_string(line_no) + ": unknown user index");
    }
    std::vector<ItemId> items;
    std::string_view rest = view.substr(t2 + 1);
    while (!rest.empty()) {
      const auto comma = rest.find(',');
      const auto item = parse_field<ItemId>(rest.substr(0, comma), "item index", line_no);
      if (item >= log.items.size()) {
        throw DataError("baskets.tsv line " + std::to_string(line_no) + ": unknown item index");
      }
      items.push_back(item);
      rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
    }
    log.histories[user].baskets.push_back(make_basket(time, std::move(items)));
  }
  for (const auto& h : log.histories) {
    validate_history(h);
  }
  return log;
}

std::string canonical_fingerprint(const std::filesystem::path& dir) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const char* name : {"baskets.tsv", "users.tsv", "items.tsv"}) {
    std::ifstream in(dir / name, std::ios::binary);
    if (!in) {
      throw DataError("cannot open " + (dir / name).string());
    }
    char buf[4096];
    while (in.read(buf, sizeof buf) || in.gcount() > 0) {
      for (std::streamsize k = 0; k < in.gcount(); ++k) {
        h ^= static_cast<unsigned char>(buf[k]);
        h *= 0x100000001b3ULL;
      }
    }
  }
  char hex[17];
  std::snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(h));
  return hex;
}

}  // namespace taiw
