#include "taiw/checkpoint.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <system_error>

namespace taiw {
namespace {

constexpr const char* kMagic = "TAIW-CKPT-v1";

void write_row(std::ostream& out, std::span<const double> values) {
  for (std::size_t k = 0; k < values.size(); ++k) {
    if (k) out << ' ';
    out << format_double(values[k]);
  }
  out << '\n';
}

class Reader {
 public:
  explicit Reader(std::istream& in) : in_(in) {}

  std::string line() {
    std::string s;
    if (!std::getline(in_, s)) fail("unexpected end of file");
    ++line_no_;
    return s;
  }

  // "<key> <value>" line.
  std::string field(const std::string& key) {
    const std::string s = line();
    if (s.rfind(key + ' ', 0) != 0) fail("expected '" + key + "'");
    return s.substr(key.size() + 1);
  }

  std::size_t count(const std::string& key) { return static_cast<std::size_t>(to_u64(field(key))); }

  std::vector<double> row(std::size_t expected) {
    const std::string s = line();
    std::vector<double> out;
    out.reserve(expected);
    const char* p = s.data();
    const char* end = s.data() + s.size();
    while (p < end) {
      while (p < end && *p == ' ') ++p;
      if (p == end) break;
      double v = 0.0;
      auto [next, ec] = std::from_chars(p, end, v);
      if (ec != std::errc()) fail("bad number");
      out.push_back(v);
      p = next;
    }
    if (out.size() != expected) {
      fail("expected " + std::to_string(expected) + " values, found " + std::to_string(out.size()));
    }
    return out;
  }

  std::uint64_t to_u64(const std::string& s) {
    std::uint64_t v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size()) fail("bad integer '" + s + "'");
    return v;
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw DataError("checkpoint line " + std::to_string(line_no_) + ": " + what);
  }

 private:
  std::istream& in_;
  std::size_t line_no_ = 0;
};

}  // namespace

bool operator==(const Checkpoint& a, const Checkpoint& b) {
  return a.kind == b.kind && a.seed == b.seed && a.num_users == b.num_users && a.num_items == b.num_items &&
         a.config.entries() == b.config.entries() && a.model == b.model && a.global_counts == b.global_counts;
}

void write_checkpoint(std::ostream& out, const Checkpoint& ckpt) {
  out << kMagic << '\n';
  out << "kind " << ckpt.kind << '\n';
  out << "seed " << ckpt.seed << '\n';
  out << "num_users " << ckpt.num_users << '\n';
  out << "num_items " << ckpt.num_items << '\n';
  out << "config " << ckpt.config.entries().size() << '\n';
  for (const auto& [key, value] : ckpt.config.entries()) {
    out << key << " = " << value << '\n';
  }
  if (ckpt.model) {
    const KernelParams& kp = ckpt.model->kernels;
    out << "kernels " << kp.num_items() << '\n';
    const auto raw = kp.raw_values();
    for (std::size_t i = 0; i < kp.num_items(); ++i) {
      write_row(out, raw.subspan(i * kNumKernelParams, kNumKernelParams));
    }
    if (const auto& base = ckpt.model->base) {
      out << "base " << base->num_users() << ' ' << base->num_items() << ' ' << base->dim() << '\n';
      for (UserId u = 0; u < base->num_users(); ++u) write_row(out, base->user_row(u));
      for (ItemId i = 0; i < base->num_items(); ++i) write_row(out, base->item_row(i));
      write_row(out, base->item_bias());
    }
  }
  if (!ckpt.global_counts.empty()) {
    out << "counts " << ckpt.global_counts.size() << '\n';
    write_row(out, ckpt.global_counts);
  }
  out << "end\n";
}

void save_checkpoint(const std::filesystem::path& path, const Checkpoint& ckpt) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write checkpoint " + path.string());
  write_checkpoint(out, ckpt);
  if (!out) throw std::runtime_error("failed writing checkpoint " + path.string());
}

Checkpoint read_checkpoint(std::istream& in) {
  Reader r(in);
  if (r.line() != kMagic) r.fail("not a checkpoint file");
  Checkpoint c;
  c.kind = r.field("kind");
  c.seed = r.to_u64(r.field("seed"));
  c.num_users = r.count("num_users");
  c.num_items = r.count("num_items");
  const std::size_t n_cfg = r.count("config");
  std::ostringstream cfg_text;
  for (std::size_t k = 0; k < n_cfg; ++k) cfg_text << r.line() << '\n';
  std::istringstream cfg_in(cfg_text.str());
  c.config = KeyValueConfig::parse(cfg_in);

  for (std::string s = r.line(); s != "end"; s = r.line()) {
    std::istringstream head(s);
    std::string tag;
    head >> tag;
    if (tag == "kernels") {
      std::size_t n = 0;
      head >> n;
      if (!head || n != c.num_items) r.fail("kernel block size does not match num_items");
      TaiwModel m;
      m.config = ModelConfig::from_config(c.config);
      m.kernels = KernelParams(n);
      auto raw = m.kernels.raw_values();
      for (std::size_t i = 0; i < n; ++i) {
        const auto row = r.row(kNumKernelParams);
        std::copy(row.begin(), row.end(), raw.begin() + static_cast<std::ptrdiff_t>(i * kNumKernelParams));
      }
      c.model = std::move(m);
    } else if (tag == "base") {
      std::size_t users = 0, items = 0, dim = 0;
      head >> users >> items >> dim;
      if (!head || !c.model) r.fail("base block without kernels");
      BaseIntensityModel base(users, items, dim);
      for (UserId u = 0; u < users; ++u) {
        const auto row = r.row(dim);
        std::copy(row.begin(), row.end(), base.user_row(u).begin());
      }
      for (ItemId i = 0; i < items; ++i) {
        const auto row = r.row(dim);
        std::copy(row.begin(), row.end(), base.item_row(i).begin());
      }
      const auto bias = r.row(items);
      std::copy(bias.begin(), bias.end(), base.item_bias().begin());
      c.model->base = std::move(base);
    } else if (tag == "counts") {
      std::size_t n = 0;
      head >> n;
      if (!head) r.fail("bad counts header");
      c.global_counts = r.row(n);
    } else {
      r.fail("unknown block '" + tag + "'");
    }
  }
  if (c.model && (c.model->config.variant == Variant::kTransductive) != c.model->base.has_value()) {
    r.fail("base intensity block does not match the model variant");
  }
  return c;
}

Checkpoint load_checkpoint(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open checkpoint " + path.string());
  return read_checkpoint(in);
}

}  // namespace taiw
