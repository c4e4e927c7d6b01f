#ifndef DESCQA_LEXICON_HPP
#define DESCQA_LEXICON_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "diagnostics.hpp"

namespace descqa {

struct RelationEntry {
  std::vector<std::string> synonyms;
  std::vector<std::string> hypernyms;
  std::vector<std::string> hyponyms;
};

// Synonym/hypernym/hyponym relations keyed by single lowercase tokens.
// Relation lists keep first-seen order; the first entry is the one used
// by the replacement rules.
class LexicalGraph {
public:
  // UTF-8 lines: word<TAB>relation<TAB>word, relation in
  // {synonym, hypernym, hyponym}.
  static LexicalGraph load(const std::string& path, Diagnostics* diag = nullptr);

  void add(std::string_view word, std::string_view relation,
           std::string_view target, Diagnostics* diag = nullptr);

  std::optional<std::string> hypernym_of(std::string_view word) const;
  std::optional<std::string> hyponym_of(std::string_view word) const;
  std::vector<std::string> synonyms_of(std::string_view word) const;
  const RelationEntry* find(std::string_view word) const;
  size_t size() const { return entries_.size(); }

private:
  std::unordered_map<std::string, RelationEntry> entries_;
};

// word -> dense vector, all vectors the same dimension.
class EmbeddingTable {
public:
  // Text format, one "word v1 ... vd" per line, no header. Dimension is
  // inferred from the first line; inconsistent lines are skipped with a
  // diagnostic. An empty table is a hard error.
  static EmbeddingTable load(const std::string& path, Diagnostics* diag = nullptr);

  void add(std::string_view word, const std::vector<float>& vec);

  size_t size() const { return vocab_.size(); }
  size_t dim() const { return dim_; }
  const std::vector<std::string>& vocabulary() const { return vocab_; }
  std::optional<size_t> index_of(std::string_view word) const;
  std::span<const float> vector_at(size_t index) const;

private:
  std::vector<std::string> vocab_;
  std::unordered_map<std::string, size_t> index_;
  std::vector<float> data_;  // row-major, size() * dim()
  size_t dim_ = 0;
};

// Nearest vocabulary entry to `word` by Euclidean distance, skipping the
// word itself and everything in `exclusions`. Ties break toward the
// earlier vocabulary entry. Absent word or no remaining candidate ->
// nullopt.
std::optional<std::string> nearest_adversarial(
    std::string_view word, const std::set<std::string>& exclusions,
    const EmbeddingTable& table);

struct ColorSet {
  std::vector<std::string> colors;  // ordered, distinct lowercase tokens

  bool contains(std::string_view word) const;
  static ColorSet default_set();
  static ColorSet load(const std::string& path);
};

struct QuestionTypeSet {
  std::set<std::string> types;

  bool contains(std::string_view question_type) const;
  static QuestionTypeSet default_color_types();
  static QuestionTypeSet load(const std::string& path);
};

struct ObjectClassSet {
  std::vector<std::string> classes;  // the 80 detection classes by default
  std::map<std::string, std::vector<std::string>> aliases;

  // Graph synonyms merged with the alias file entries, duplicates removed.
  std::vector<std::string> synonyms_for(std::string_view object_class,
                                        const LexicalGraph& graph) const;
  static ObjectClassSet default_set();
  static ObjectClassSet load(const std::string& path);
  void load_aliases(const std::string& path);  // class<TAB>alias lines
};

bool is_color_question(std::string_view question_type,
                       const QuestionTypeSet& types);

// The fixed function-word list used by the overlap scorer.
const std::vector<std::string>& default_stopwords();

// One lowercase word per line; blank lines and # comments skipped,
// duplicates dropped keeping first-seen order.
std::vector<std::string> load_word_list_file(const std::string& path);

}  // namespace descqa

#endif
