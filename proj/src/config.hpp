#ifndef DESCQA_CONFIG_HPP
#define DESCQA_CONFIG_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>

namespace descqa {

// Flat dotted-key configuration: one `section.key = value` per line, `#`
// comments. CLI flags are applied on top via set(), so a flag always wins
// over the file.
class Config {
public:
  static Config load(const std::string& path);
  static Config from_text(const std::string& text, const std::string& origin);

  void set(const std::string& key, const std::string& value);
  bool has(const std::string& key) const;

  std::optional<std::string> get(const std::string& key) const;
  std::string get_or(const std::string& key, const std::string& fallback) const;
  std::string require(const std::string& key) const;  // usage error if absent

  int64_t get_int(const std::string& key, int64_t fallback) const;
  double get_double(const std::string& key, double fallback) const;
  bool get_bool(const std::string& key, bool fallback) const;
  uint64_t get_u64(const std::string& key, uint64_t fallback) const;

  const std::map<std::string, std::string>& entries() const { return entries_; }

  // Stable content hash over sorted entries, for provenance stamping.
  // Execution keys (shards, threads, output.dir) are excluded: outputs
  // must hash the same no matter how the run was parallelized.
  std::string hash() const;

private:
  std::map<std::string, std::string> entries_;
};

}  // namespace descqa

#endif
