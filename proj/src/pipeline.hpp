#ifndef DESCQA_PIPELINE_HPP
#define DESCQA_PIPELINE_HPP

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "config.hpp"
#include "diagnostics.hpp"

namespace descqa {

// Provenance record written beside every output file. The count identity
// total = original + sum(synthetic) holds for every command that emits
// triplets.
struct RunManifest {
  std::string command;
  std::string tool_version;
  uint64_t seed = 0;
  int shards = 1;
  std::string config_hash;
  size_t original_count = 0;
  // display label -> count, insertion-ordered for the report
  std::vector<std::pair<std::string, size_t>> synthetic_counts;
  size_t synthetic_total = 0;
  size_t total_count = 0;
  Diagnostics diagnostics;
  double wall_seconds = 0.0;
  std::vector<std::pair<std::string, std::string>> outputs;  // label -> path

  std::string to_json() const;
  std::string format() const;
  void write(const std::string& path) const;
};

// Shared run parameters drawn from config + CLI overrides.
struct RunOptions {
  uint64_t seed = 0;
  int shards = 1;
  int threads = 1;
  std::string out_dir;
};

RunOptions run_options(const Config& config);

RunManifest cmd_build(const Config& config);
RunManifest cmd_augment(const Config& config, const std::string& technique_name);
RunManifest cmd_truncate(const Config& config);

// Human-readable report (stdout); machine-readable JSON lands in out_dir.
std::string cmd_stats(const Config& config);
std::string cmd_eval(const Config& config);
std::string cmd_overlap(const Config& config);
std::string cmd_import_lexicon(const Config& config);

}  // namespace descqa

#endif
