#include "dav_augment.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "error.hpp"
#include "rng.hpp"
#include "text.hpp"

namespace descqa {

void DavConfig::validate() const {
  if (top_d < 1) usage_error("top_d must be >= 1, got " + std::to_string(top_d));
  if (top_j < 0) usage_error("top_j must be >= 0, got " + std::to_string(top_j));
}

namespace {

Triplet child_of(const Triplet& s, Technique t, int ordinal = 0) {
  Triplet child = s;
  child.question_id = synthetic_question_id(t, s.question_id, ordinal);
  child.parent_question_id = s.question_id;
  child.origin = origin_name(t);
  return child;
}

// Distinct lowercased answers that appear as a description token, in
// answer order.
std::vector<std::string> answers_in_description(const Triplet& s) {
  std::set<std::string> d_tokens;
  for (const auto& t : s.description) d_tokens.insert(lower(t));
  std::vector<std::string> out;
  for (const auto& a : s.answers) {
    std::string key = lower(a);
    if (!d_tokens.count(key)) continue;
    if (std::find(out.begin(), out.end(), key) == out.end()) out.push_back(key);
  }
  return out;
}

std::optional<Triplet> related_replace(const Triplet& s, const LexicalGraph& graph,
                                       Technique technique) {
  std::vector<std::string> a_d = answers_in_description(s);
  if (a_d.empty()) return std::nullopt;

  // Replacements for the answers that have the relation; the others are
  // still removed from A below, per the answer-update rule.
  std::vector<std::pair<std::string, std::string>> replacements;
  for (const auto& a : a_d) {
    auto related = technique == Technique::Hypernym ? graph.hypernym_of(a)
                                                    : graph.hyponym_of(a);
    if (related) replacements.emplace_back(a, *related);
  }
  if (replacements.empty()) return std::nullopt;
  for (const auto& [_, h] : replacements) {
    for (const auto& a : s.answers) {
      if (lower(a) == h) return std::nullopt;  // duplicate avoidance
    }
  }

  Triplet child = child_of(s, technique);
  for (auto& token : child.description) {
    std::string key = lower(token);
    for (const auto& [a, h] : replacements) {
      if (key == a) {
        token = h;
        break;
      }
    }
  }

  std::set<std::string> removed(a_d.begin(), a_d.end());
  child.answers.clear();
  for (const auto& a : s.answers) {
    if (!removed.count(lower(a))) child.answers.push_back(a);
  }
  for (const auto& [_, h] : replacements) {
    if (std::find(child.answers.begin(), child.answers.end(), h) ==
        child.answers.end()) {
      child.answers.push_back(h);
    }
  }
  return child;
}

}  // namespace

std::optional<Triplet> hypernym_replace(const Triplet& s, const LexicalGraph& graph) {
  return related_replace(s, graph, Technique::Hypernym);
}

std::optional<Triplet> hyponym_replace(const Triplet& s, const LexicalGraph& graph) {
  return related_replace(s, graph, Technique::Hyponym);
}

std::optional<Triplet> color_invert(const Triplet& s, const DavConfig& config,
                                    uint64_t seed) {
  if (!config.color_types.contains(s.question_type)) return std::nullopt;

  std::set<std::string> d_tokens;
  for (const auto& t : s.description) d_tokens.insert(lower(t));

  // First answer (in answer order) that is a color and sits in d.
  size_t chosen = s.answers.size();
  std::string color;
  for (size_t i = 0; i < s.answers.size(); ++i) {
    std::string key = lower(s.answers[i]);
    if (config.colors.contains(key) && d_tokens.count(key)) {
      chosen = i;
      color = key;
      break;
    }
  }
  if (chosen == s.answers.size()) return std::nullopt;

  std::vector<std::string> candidates;
  for (const auto& c : config.colors.colors) {
    if (c != color) candidates.push_back(c);
  }
  if (candidates.empty()) return std::nullopt;
  Rng rng(seed);
  const std::string& replacement = candidates[rng.below(candidates.size())];

  Triplet child = child_of(s, Technique::ColorInversion);
  for (auto& token : child.description) {
    if (lower(token) == color) token = replacement;
  }
  child.answers[chosen] = replacement;  // exactly one multiset element moves
  return child;
}

std::vector<Triplet> adversarial_replace(const Triplet& s, const DavConfig& config,
                                         const EmbeddingTable& embeddings,
                                         const LexicalGraph& graph,
                                         Diagnostics* diag) {
  std::vector<Triplet> out;
  bool yes_no = false;
  for (const auto& a : s.answers) {
    std::string key = lower(a);
    if (key == "yes" || key == "no") {
      yes_no = true;
      break;
    }
  }
  if (!yes_no) return out;

  std::set<std::string> d_tokens;
  for (const auto& t : s.description) d_tokens.insert(lower(t));
  std::set<std::string> q_tokens;
  for (const auto& t : s.question) q_tokens.insert(lower(t));

  std::string majority;
  if (config.skip_already_no) {
    std::map<std::string, size_t> freq;
    size_t best = 0;
    for (const auto& a : s.answers) {
      size_t n = ++freq[lower(a)];
      if (n > best) {
        best = n;
        majority = lower(a);
      }
    }
  }

  int ordinal = 0;
  for (const auto& object : config.objects.classes) {
    if (object.find(' ') != std::string::npos) continue;  // never a single token
    if (!d_tokens.count(object)) continue;

    std::vector<std::string> synonyms = config.objects.synonyms_for(object, graph);
    bool in_question = q_tokens.count(object) > 0;
    for (const auto& syn : synonyms) {
      if (q_tokens.count(syn)) in_question = true;
    }
    if (config.skip_already_no && in_question && majority == "no") continue;

    std::set<std::string> exclusions(synonyms.begin(), synonyms.end());
    exclusions.insert(object);
    auto replacement = nearest_adversarial(object, exclusions, embeddings);
    if (!replacement) {
      if (diag) diag->add("embedding_missing", object);
      continue;
    }

    Triplet child = child_of(s, Technique::Adversarial, ordinal++);
    for (auto& token : child.description) {
      if (lower(token) == object) token = *replacement;
    }
    if (in_question) child.answers = {"no"};
    out.push_back(std::move(child));
  }
  return out;
}

std::vector<size_t> critical_positions(const std::vector<double>& scores,
                                       const std::vector<size_t>& eligible,
                                       size_t budget) {
  std::vector<size_t> order = eligible;
  std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    return scores[a] > scores[b];  // stable keeps earlier position on ties
  });
  if (order.size() > budget) order.resize(budget);
  std::sort(order.begin(), order.end());
  return order;
}

std::vector<std::string> mask_except(const std::vector<std::string>& tokens,
                                     const std::vector<size_t>& keep,
                                     const std::vector<size_t>& eligible) {
  std::set<size_t> kept(keep.begin(), keep.end());
  std::vector<std::string> out = tokens;
  for (size_t i : eligible) {
    if (!kept.count(i)) out[i] = kMaskToken;
  }
  return out;
}

std::vector<std::string> mask_only(const std::vector<std::string>& tokens,
                                   const std::vector<size_t>& masked) {
  std::vector<std::string> out = tokens;
  for (size_t i : masked) out[i] = kMaskToken;
  return out;
}

size_t question_type_prefix_length(const std::vector<std::string>& question,
                                   const std::string& question_type) {
  std::vector<std::string> prefix = tokenize(question_type);
  if (prefix.empty() || prefix.size() > question.size()) return 0;
  return starts_with_tokens(question, prefix) ? prefix.size() : 0;
}

namespace {

// Remove every copy of each named answer (case-insensitive). Nothing left
// means no counterfactual is produced.
std::vector<std::string> remove_answers(const std::vector<std::string>& answers,
                                        const std::vector<std::string>& removed) {
  std::set<std::string> gone;
  for (const auto& r : removed) gone.insert(lower(r));
  std::vector<std::string> out;
  for (const auto& a : answers) {
    if (!gone.count(lower(a))) out.push_back(a);
  }
  return out;
}

std::optional<Triplet> css_common(const Triplet& s, Scorer& scorer,
                                  const DavConfig& config, bool question_side,
                                  Diagnostics* diag) {
  config.validate();
  const std::vector<std::string>& target =
      question_side ? s.question : s.description;

  size_t prefix = question_side
                      ? question_type_prefix_length(s.question, s.question_type)
                      : 0;
  std::vector<size_t> eligible;
  for (size_t i = prefix; i < target.size(); ++i) eligible.push_back(i);
  if (eligible.empty()) return std::nullopt;  // nothing maskable

  const Technique technique =
      question_side ? Technique::CssQuestion : Technique::CssDescription;
  try {
    ImportanceScores base =
        scorer.score(s.question, s.description, s.answers, s.question_id);
    const std::vector<double>& scores =
        question_side ? base.question_scores : base.description_scores;

    std::vector<size_t> critical = critical_positions(
        scores, eligible, static_cast<size_t>(config.top_d));
    std::vector<std::string> plus = mask_except(target, critical, eligible);
    std::vector<std::string> minus = mask_only(target, critical);

    ImportanceScores masked_scores =
        question_side
            ? scorer.score(plus, s.description, s.answers, s.question_id)
            : scorer.score(s.question, plus, s.answers, s.question_id);
    std::vector<std::string> removed =
        top_answers(masked_scores.answer_scores, s.answers,
                    static_cast<size_t>(config.top_j));
    std::vector<std::string> answers = remove_answers(s.answers, removed);
    if (answers.empty()) return std::nullopt;

    Triplet child = child_of(s, technique);
    if (question_side) {
      child.question = std::move(minus);
    } else {
      child.description = std::move(minus);
    }
    child.answers = std::move(answers);
    return child;
  } catch (const Error& e) {
    if (diag) {
      diag->add(e.kind() == ErrorKind::Backend ? "scorer_error_backend"
                                               : "scorer_error_data",
                "question " + std::to_string(s.question_id) + ": " + e.what());
    }
    return std::nullopt;
  }
}

}  // namespace

std::optional<Triplet> css_question(const Triplet& s, Scorer& scorer,
                                    const DavConfig& config, Diagnostics* diag) {
  return css_common(s, scorer, config, true, diag);
}

std::optional<Triplet> css_description(const Triplet& s, Scorer& scorer,
                                       const DavConfig& config, Diagnostics* diag) {
  return css_common(s, scorer, config, false, diag);
}

}  // namespace descqa
