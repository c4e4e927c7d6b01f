#include "dal_augment.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>

#include <json.hpp>

#include "error.hpp"
#include "text.hpp"

using nlohmann::json;

namespace descqa {

void DalConfig::validate() const {
  if (!(eda_rate > 0.0 && eda_rate <= 1.0)) {
    usage_error("eda_rate must be in (0,1], got " + std::to_string(eda_rate));
  }
  if (!(eda_deletion_p >= 0.0 && eda_deletion_p <= 1.0)) {
    usage_error("eda_deletion_p must be in [0,1], got " +
                std::to_string(eda_deletion_p));
  }
  if (contextual_k < 0) {
    usage_error("contextual_k must be >= 0, got " + std::to_string(contextual_k));
  }
}

size_t DalConfig::words_to_touch(size_t len) const {
  auto n = static_cast<size_t>(
      std::lround(eda_rate * static_cast<double>(len)));
  return std::max<size_t>(1, n);
}

size_t DalConfig::contextual_words(size_t len) const {
  if (contextual_k > 0) return static_cast<size_t>(contextual_k);
  return words_to_touch(len);
}

DictionaryTranslationClient DictionaryTranslationClient::from_tsv(
    const std::string& path) {
  std::ifstream in(path);
  if (!in) data_error("cannot open translation table: " + path);
  std::map<std::string, std::string> table;
  std::string line;
  while (std::getline(in, line)) {
    size_t tab = line.find('\t');
    if (tab == std::string::npos) continue;
    table.emplace(line.substr(0, tab), line.substr(tab + 1));
  }
  return DictionaryTranslationClient(std::move(table));
}

std::string DictionaryTranslationClient::round_trip(const std::string& text) {
  auto it = table_.find(text);
  return it == table_.end() ? text : it->second;
}

ServiceTranslationClient::ServiceTranslationClient(std::string endpoint,
                                                   std::string source_lang,
                                                   std::string pivot_lang,
                                                   const ResponseCache* cache)
    : endpoint_(std::move(endpoint)),
      source_lang_(std::move(source_lang)),
      pivot_lang_(std::move(pivot_lang)),
      cache_(cache) {}

std::string ServiceTranslationClient::round_trip(const std::string& text) {
  json request;
  request["text"] = text;
  request["source_lang"] = source_lang_;
  request["pivot_lang"] = pivot_lang_;
  json response = post_json(endpoint_, "/v1/translate", request, cache_);
  if (!response.is_object() || !response.contains("text") ||
      !response["text"].is_string()) {
    backend_error("translation response from " + endpoint_ + " lacks text");
  }
  return response["text"].get<std::string>();
}

DictionaryInfillClient DictionaryInfillClient::from_tsv(const std::string& path) {
  std::ifstream in(path);
  if (!in) data_error("cannot open infill table: " + path);
  std::map<std::string, std::string> replace_table, insert_table;
  std::string line;
  // mode<TAB>word<TAB>infill with mode in {replace, insert}
  while (std::getline(in, line)) {
    size_t t1 = line.find('\t');
    if (t1 == std::string::npos) continue;
    size_t t2 = line.find('\t', t1 + 1);
    if (t2 == std::string::npos) continue;
    std::string mode = line.substr(0, t1);
    std::string word = line.substr(t1 + 1, t2 - t1 - 1);
    std::string value = line.substr(t2 + 1);
    if (mode == "replace") {
      replace_table.emplace(std::move(word), std::move(value));
    } else if (mode == "insert") {
      insert_table.emplace(std::move(word), std::move(value));
    }
  }
  return DictionaryInfillClient(std::move(replace_table), std::move(insert_table));
}

std::string DictionaryInfillClient::infill(const std::vector<std::string>& tokens,
                                           size_t position, bool insert_after) {
  const std::string& key = tokens[position];
  const auto& table = insert_after ? insert_ : replace_;
  auto it = table.find(key);
  if (it != table.end()) return it->second;
  std::string lowered = lower(key);
  it = table.find(lowered);
  return it == table.end() ? key : it->second;
}

ServiceInfillClient::ServiceInfillClient(std::string endpoint,
                                         const ResponseCache* cache)
    : endpoint_(std::move(endpoint)), cache_(cache) {}

std::string ServiceInfillClient::infill(const std::vector<std::string>& tokens,
                                        size_t position, bool insert_after) {
  json request;
  request["tokens"] = tokens;
  request["position"] = position;
  request["mode"] = insert_after ? "insert" : "replace";
  json response = post_json(endpoint_, "/v1/infill", request, cache_);
  if (!response.is_object() || !response.contains("word") ||
      !response["word"].is_string()) {
    backend_error("infill response from " + endpoint_ + " lacks word");
  }
  return response["word"].get<std::string>();
}

namespace {

// n distinct positions in draw order (partial Fisher-Yates).
std::vector<size_t> sample_positions(size_t len, size_t n, Rng& rng) {
  std::vector<size_t> order(len);
  std::iota(order.begin(), order.end(), size_t{0});
  n = std::min(n, len);
  for (size_t i = 0; i < n; ++i) {
    size_t j = i + static_cast<size_t>(rng.below(len - i));
    std::swap(order[i], order[j]);
  }
  order.resize(n);
  return order;
}

std::vector<std::string> random_swap(std::vector<std::string> words, size_t n,
                                     Rng& rng) {
  if (words.size() < 2) return words;
  for (size_t s = 0; s < n; ++s) {
    size_t i = rng.below(words.size());
    size_t j = rng.below(words.size() - 1);
    if (j >= i) ++j;
    std::swap(words[i], words[j]);
  }
  return words;
}

std::optional<std::string> pick_synonym(const std::string& word,
                                        const LexicalGraph& graph, Rng& rng) {
  std::vector<std::string> synonyms = graph.synonyms_of(lower(word));
  if (synonyms.empty()) return std::nullopt;
  return synonyms[rng.below(synonyms.size())];
}

}  // namespace

std::vector<std::string> eda(const std::vector<std::string>& sentence,
                             const DalConfig& config, Rng& rng,
                             const LexicalGraph& graph) {
  config.validate();
  size_t n = config.words_to_touch(sentence.size());
  switch (rng.below(4)) {
    case 0: {  // synonym replacement
      std::vector<std::string> out = sentence;
      bool changed = false;
      for (size_t pos : sample_positions(out.size(), n, rng)) {
        if (auto syn = pick_synonym(out[pos], graph, rng)) {
          out[pos] = *syn;
          changed = true;
        }
      }
      if (changed) return out;
      return random_swap(sentence, n, rng);
    }
    case 1: {  // random insertion of synonyms
      std::vector<size_t> sources;
      for (size_t i = 0; i < sentence.size(); ++i) {
        if (!graph.synonyms_of(lower(sentence[i])).empty()) sources.push_back(i);
      }
      if (sources.empty()) return random_swap(sentence, n, rng);
      std::vector<std::string> out = sentence;
      for (size_t s = 0; s < n; ++s) {
        size_t src = sources[rng.below(sources.size())];
        auto syn = pick_synonym(sentence[src], graph, rng);
        size_t slot = rng.below(out.size() + 1);
        out.insert(out.begin() + static_cast<ptrdiff_t>(slot), *syn);
      }
      return out;
    }
    case 2:  // random swap
      return random_swap(sentence, n, rng);
    default: {  // random deletion
      std::vector<std::string> out;
      for (const auto& w : sentence) {
        if (rng.next_double() >= config.eda_deletion_p) out.push_back(w);
      }
      if (out.empty() && !sentence.empty()) {
        out.push_back(sentence[rng.below(sentence.size())]);
      }
      return out;
    }
  }
}

std::optional<std::string> back_translate(const std::string& sentence,
                                          TranslationClient& client,
                                          Diagnostics* diag) {
  try {
    std::string result = client.round_trip(sentence);
    if (collapse_spaces(result) == collapse_spaces(sentence)) {
      return std::nullopt;  // unchanged round trips are discarded
    }
    return result;
  } catch (const Error& e) {
    if (diag) {
      diag->add(e.kind() == ErrorKind::Backend ? "client_error_backend"
                                               : "client_error_data",
                e.what());
    }
    return std::nullopt;
  }
}

std::optional<std::vector<std::string>> contextual_replace(
    const std::vector<std::string>& sentence, InfillClient& client, Rng& rng,
    size_t k, Diagnostics* diag) {
  try {
    std::vector<std::string> out = sentence;
    for (size_t pos : sample_positions(out.size(), k, rng)) {
      out[pos] = client.infill(out, pos, false);
    }
    return out;
  } catch (const Error& e) {
    if (diag) {
      diag->add(e.kind() == ErrorKind::Backend ? "client_error_backend"
                                               : "client_error_data",
                e.what());
    }
    return std::nullopt;
  }
}

std::optional<std::vector<std::string>> contextual_insert(
    const std::vector<std::string>& sentence, InfillClient& client, Rng& rng,
    size_t k, Diagnostics* diag) {
  try {
    std::vector<size_t> picked = sample_positions(sentence.size(), k, rng);
    std::sort(picked.rbegin(), picked.rend());
    std::vector<std::string> out = sentence;
    // Descending order keeps earlier indices valid across insertions.
    for (size_t pos : picked) {
      std::string word = client.infill(out, pos, true);
      out.insert(out.begin() + static_cast<ptrdiff_t>(pos) + 1, std::move(word));
    }
    return out;
  } catch (const Error& e) {
    if (diag) {
      diag->add(e.kind() == ErrorKind::Backend ? "client_error_backend"
                                               : "client_error_data",
                e.what());
    }
    return std::nullopt;
  }
}

std::optional<Triplet> apply_dal(const Triplet& s, Technique technique,
                                 const DalConfig& config,
                                 const DalClients& clients,
                                 const LexicalGraph& graph, uint64_t seed,
                                 Diagnostics* diag) {
  config.validate();
  bool question_side = technique == Technique::EdaQuestion ||
                       technique == Technique::CwrQuestion ||
                       technique == Technique::CwiQuestion ||
                       technique == Technique::BtQuestion;
  const std::vector<std::string>& target =
      question_side ? s.question : s.description;
  if (target.empty()) {
    if (diag) {
      diag->add("empty_target",
                "question " + std::to_string(s.question_id) + " has no " +
                    (question_side ? "question" : "description"));
    }
    return std::nullopt;
  }

  Rng rng(seed);
  std::optional<std::vector<std::string>> result;
  switch (technique) {
    case Technique::EdaQuestion:
    case Technique::EdaDescription:
      result = eda(target, config, rng, graph);
      break;
    case Technique::BtQuestion:
    case Technique::BtDescription: {
      if (!clients.translator) {
        usage_error(std::string(origin_name(technique)) +
                    " requires a translation client");
      }
      auto text = back_translate(join_tokens(target), *clients.translator, diag);
      if (text) result = tokenize(*text);
      break;
    }
    case Technique::CwrQuestion:
    case Technique::CwrDescription:
      if (!clients.infill) {
        usage_error(std::string(origin_name(technique)) +
                    " requires an infill client");
      }
      result = contextual_replace(target, *clients.infill, rng,
                                  config.contextual_words(target.size()), diag);
      break;
    case Technique::CwiQuestion:
    case Technique::CwiDescription:
      if (!clients.infill) {
        usage_error(std::string(origin_name(technique)) +
                    " requires an infill client");
      }
      result = contextual_insert(target, *clients.infill, rng,
                                 config.contextual_words(target.size()), diag);
      break;
    default:
      usage_error(std::string(origin_name(technique)) +
                  " is not an NLP augmentation technique");
  }
  if (!result) return std::nullopt;

  Triplet child = s;
  child.question_id = synthetic_question_id(technique, s.question_id);
  child.parent_question_id = s.question_id;
  child.origin = origin_name(technique);
  if (question_side) {
    child.question = std::move(*result);
  } else {
    child.description = std::move(*result);
  }
  return child;
}

}  // namespace descqa
