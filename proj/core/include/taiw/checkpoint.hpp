#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "taiw/config.hpp"
#include "taiw/model.hpp"

namespace taiw {

// A trained scorer of any kind. TIFU-KNN is memory based, so only its configuration is stored;
// GP-Pop keeps the global counts it was fitted with.
struct Checkpoint {
  std::string kind;  // taiw, taiwi, gp-pop, tifu-knn
  std::uint64_t seed = 0;
  std::size_t num_users = 0;
  std::size_t num_items = 0;
  KeyValueConfig config;
  std::optional<TaiwModel> model;    // taiw and taiwi
  std::vector<double> global_counts; // gp-pop

  friend bool operator==(const Checkpoint& a, const Checkpoint& b);
};

// Plain text, every number in shortest round-trip form, so equal checkpoints are equal bytes.
void write_checkpoint(std::ostream& out, const Checkpoint& ckpt);
void save_checkpoint(const std::filesystem::path& path, const Checkpoint& ckpt);

// Throws DataError on a malformed or truncated file.
Checkpoint read_checkpoint(std::istream& in);
Checkpoint load_checkpoint(const std::filesystem::path& path);

}  // namespace taiw
