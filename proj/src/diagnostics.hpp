#ifndef DESCQA_DIAGNOSTICS_HPP
#define DESCQA_DIAGNOSTICS_HPP

#include <cstddef>
#include <map>
#include <string>
#include <vector>

namespace descqa {

// Per-run tallies plus the first few concrete messages per category.
// Counts are exact; notes are capped so a corrupt corpus cannot balloon
// memory.
class Diagnostics {
public:
  void add(const std::string& category, const std::string& note = {}) {
    ++counts_[category];
    if (!note.empty() && notes_.size() < kMaxNotes) {
      notes_.push_back(category + ": " + note);
    }
  }

  size_t count(const std::string& category) const {
    auto it = counts_.find(category);
    return it == counts_.end() ? 0 : it->second;
  }

  size_t total() const {
    size_t n = 0;
    for (const auto& [_, c] : counts_) n += c;
    return n;
  }

  bool empty() const { return counts_.empty(); }
  const std::map<std::string, size_t>& counts() const { return counts_; }
  const std::vector<std::string>& notes() const { return notes_; }

  void merge(const Diagnostics& other) {
    for (const auto& [k, v] : other.counts_) counts_[k] += v;
    for (const auto& n : other.notes_) {
      if (notes_.size() >= kMaxNotes) break;
      notes_.push_back(n);
    }
  }

private:
  static constexpr size_t kMaxNotes = 50;
  std::map<std::string, size_t> counts_;
  std::vector<std::string> notes_;
};

}  // namespace descqa

#endif
