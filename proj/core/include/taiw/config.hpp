#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>

namespace taiw {

// Flat `key = value` configuration. Lines starting with '#' are comments.
class KeyValueConfig {
 public:
  static KeyValueConfig parse(std::istream& in);
  static KeyValueConfig load(const std::filesystem::path& path);

  bool contains(const std::string& key) const { return entries_.count(key) != 0; }
  std::optional<std::string> get(const std::string& key) const;

  std::string get_string(const std::string& key, const std::string& fallback) const;
  double get_double(const std::string& key, double fallback) const;
  long get_int(const std::string& key, long fallback) const;
  bool get_bool(const std::string& key, bool fallback) const;

  void set(const std::string& key, std::string value) { entries_[key] = std::move(value); }
  // Later entries win.
  void merge(const KeyValueConfig& other);

  const std::map<std::string, std::string>& entries() const { return entries_; }

  void write(std::ostream& out) const;

 private:
  std::map<std::string, std::string> entries_;
};

// Shortest round-trip decimal representation.
std::string format_double(double value);

}  // namespace taiw
