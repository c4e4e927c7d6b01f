#ifndef DESCQA_DAV_AUGMENT_HPP
#define DESCQA_DAV_AUGMENT_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "augment.hpp"
#include "diagnostics.hpp"
#include "importance.hpp"
#include "lexicon.hpp"
#include "triplet_builder.hpp"

namespace descqa {

struct DavConfig {
  int top_d = 10;  // critical-word budget for counterfactuals
  int top_j = 5;   // answers removed per counterfactual
  // Opt-in: skip adversarial object-in-question cases whose majority
  // answer is already "no".
  bool skip_already_no = false;
  ColorSet colors = ColorSet::default_set();
  QuestionTypeSet color_types = QuestionTypeSet::default_color_types();
  ObjectClassSet objects = ObjectClassSet::default_set();

  void validate() const;  // usage error on top_d < 1 or top_j < 0
};

// Replaces every description occurrence of answers that have the relation,
// swaps those answers for their related word. Nothing when no answer
// appears in the description, no appearing answer has the relation, or a
// replacement already sits in the answer set.
std::optional<Triplet> hypernym_replace(const Triplet& s, const LexicalGraph& graph);
std::optional<Triplet> hyponym_replace(const Triplet& s, const LexicalGraph& graph);

// Swaps a color answer that appears in the description for a different
// color drawn with the seed; only fires on color-type questions.
std::optional<Triplet> color_invert(const Triplet& s, const DavConfig& config,
                                    uint64_t seed);

// One sample per object class found in the description: the class word is
// replaced by its nearest non-synonym embedding neighbor; the answers
// flip to {"no"} when the class (or a synonym) is mentioned in the
// question. Only defined for samples whose answers contain yes or no.
std::vector<Triplet> adversarial_replace(const Triplet& s, const DavConfig& config,
                                         const EmbeddingTable& embeddings,
                                         const LexicalGraph& graph,
                                         Diagnostics* diag = nullptr);

// Counterfactuals: mask the complement of the top-D critical words to get
// the plus variant, the critical words themselves to get the minus
// variant, and drop the answers the plus variant still supports. The
// minus variant is emitted. Question-type prefix tokens are never masked
// on the question side.
std::optional<Triplet> css_question(const Triplet& s, Scorer& scorer,
                                    const DavConfig& config,
                                    Diagnostics* diag = nullptr);
std::optional<Triplet> css_description(const Triplet& s, Scorer& scorer,
                                       const DavConfig& config,
                                       Diagnostics* diag = nullptr);

// Masking internals, exposed for the counterfactual tests: positions of
// the top `budget` scores among `eligible` (ties to the earlier
// position), and the complementary masked variants.
std::vector<size_t> critical_positions(const std::vector<double>& scores,
                                       const std::vector<size_t>& eligible,
                                       size_t budget);
std::vector<std::string> mask_except(const std::vector<std::string>& tokens,
                                     const std::vector<size_t>& keep,
                                     const std::vector<size_t>& eligible);
std::vector<std::string> mask_only(const std::vector<std::string>& tokens,
                                   const std::vector<size_t>& masked);

// Leading-token count of the question-type prefix, 0 when the question
// does not start with it.
size_t question_type_prefix_length(const std::vector<std::string>& question,
                                   const std::string& question_type);

inline constexpr const char* kMaskToken = "<mask>";

}  // namespace descqa

#endif
