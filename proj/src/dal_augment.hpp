#ifndef DESCQA_DAL_AUGMENT_HPP
#define DESCQA_DAL_AUGMENT_HPP

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "augment.hpp"
#include "diagnostics.hpp"
#include "http_json.hpp"
#include "lexicon.hpp"
#include "rng.hpp"
#include "triplet_builder.hpp"

namespace descqa {

struct DalConfig {
  double eda_rate = 0.1;       // alpha: fraction of words touched by SR/RI/RS
  double eda_deletion_p = 0.1; // per-word deletion probability for RD
  int contextual_k = 0;        // words to change; 0 = max(1, round(alpha*len))

  void validate() const;  // usage error unless 0 < alpha <= 1 and 0 <= p <= 1
  size_t words_to_touch(size_t len) const;   // max(1, round(alpha*len))
  size_t contextual_words(size_t len) const; // contextual_k or the default
};

// Round-trips text through the pivot language and back.
class TranslationClient {
public:
  virtual ~TranslationClient() = default;
  virtual std::string round_trip(const std::string& text) = 0;
};

// Always returns its input; every output is discarded downstream.
class IdentityTranslationClient : public TranslationClient {
public:
  std::string round_trip(const std::string& text) override { return text; }
};

// Fixed lookup table; unknown text passes through unchanged (and is then
// discarded by the no-change rule). Network-free stand-in for tests.
class DictionaryTranslationClient : public TranslationClient {
public:
  explicit DictionaryTranslationClient(std::map<std::string, std::string> table)
      : table_(std::move(table)) {}
  static DictionaryTranslationClient from_tsv(const std::string& path);

  std::string round_trip(const std::string& text) override;

private:
  std::map<std::string, std::string> table_;
};

class ServiceTranslationClient : public TranslationClient {
public:
  ServiceTranslationClient(std::string endpoint, std::string source_lang,
                           std::string pivot_lang,
                           const ResponseCache* cache = nullptr);

  std::string round_trip(const std::string& text) override;

private:
  std::string endpoint_;
  std::string source_lang_;
  std::string pivot_lang_;
  const ResponseCache* cache_;
};

// Supplies one context-appropriate word for a position, either as a
// replacement for the word there or as an insertion after it.
class InfillClient {
public:
  virtual ~InfillClient() = default;
  virtual std::string infill(const std::vector<std::string>& tokens,
                             size_t position, bool insert_after) = 0;
};

// Keyed by the word at the position; unknown words map to themselves.
class DictionaryInfillClient : public InfillClient {
public:
  DictionaryInfillClient(std::map<std::string, std::string> replace_table,
                         std::map<std::string, std::string> insert_table)
      : replace_(std::move(replace_table)), insert_(std::move(insert_table)) {}
  static DictionaryInfillClient from_tsv(const std::string& path);

  std::string infill(const std::vector<std::string>& tokens, size_t position,
                     bool insert_after) override;

private:
  std::map<std::string, std::string> replace_;
  std::map<std::string, std::string> insert_;
};

class ServiceInfillClient : public InfillClient {
public:
  explicit ServiceInfillClient(std::string endpoint,
                               const ResponseCache* cache = nullptr);

  std::string infill(const std::vector<std::string>& tokens, size_t position,
                     bool insert_after) override;

private:
  std::string endpoint_;
  const ResponseCache* cache_;
};

// One EDA operation (synonym replacement, random insertion, random swap,
// random deletion) chosen uniformly, then applied with the config rates.
// SR and RI fall back to a swap when no sampled word has a synonym;
// deletion always leaves at least one word.
std::vector<std::string> eda(const std::vector<std::string>& sentence,
                             const DalConfig& config, Rng& rng,
                             const LexicalGraph& graph);

// Nothing when the round trip returns the input (whitespace-normalized
// comparison) or the client fails (failure also lands in diag).
std::optional<std::string> back_translate(const std::string& sentence,
                                          TranslationClient& client,
                                          Diagnostics* diag = nullptr);

std::optional<std::vector<std::string>> contextual_replace(
    const std::vector<std::string>& sentence, InfillClient& client, Rng& rng,
    size_t k, Diagnostics* diag = nullptr);
std::optional<std::vector<std::string>> contextual_insert(
    const std::vector<std::string>& sentence, InfillClient& client, Rng& rng,
    size_t k, Diagnostics* diag = nullptr);

struct DalClients {
  TranslationClient* translator = nullptr;
  InfillClient* infill = nullptr;
};

// Applies one DAL technique to one triplet. Only the targeted field
// changes; answers are always carried over verbatim. Nothing on skip
// (discarded round trip, client failure, empty target field).
std::optional<Triplet> apply_dal(const Triplet& s, Technique technique,
                                 const DalConfig& config,
                                 const DalClients& clients,
                                 const LexicalGraph& graph, uint64_t seed,
                                 Diagnostics* diag = nullptr);

}  // namespace descqa

#endif
