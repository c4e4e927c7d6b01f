#ifndef DESCQA_AUGMENT_HPP
#define DESCQA_AUGMENT_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace descqa {

// Every augmentation technique, either description-side (DAV) or
// NLP-side (DAL) applied to question or description. The numeric value is
// the technique code folded into synthetic question ids.
enum class Technique : int {
  Hyponym = 1,
  Hypernym = 2,
  ColorInversion = 3,
  Adversarial = 4,
  CssQuestion = 5,
  CssDescription = 6,
  EdaQuestion = 7,
  EdaDescription = 8,
  CwrQuestion = 9,
  CwrDescription = 10,
  CwiQuestion = 11,
  CwiDescription = 12,
  BtQuestion = 13,
  BtDescription = 14,
};

// The origin tag written into synthetic triplets; doubles as the CLI
// technique name.
const char* origin_name(Technique t);

// Human-readable report label, e.g. "Back Translation (Q)".
const char* display_label(Technique t);

std::optional<Technique> technique_from_name(const std::string& name);

const std::vector<Technique>& all_techniques();

bool is_dav(Technique t);

// Synthetic ids pack (technique, parent, ordinal) into disjoint ranges:
// code * 10^12 + parent * 100 + ordinal. Parents from the standard corpora
// stay far below 10^10, so ids never collide across techniques or parents.
int64_t synthetic_question_id(Technique t, int64_t parent_question_id,
                              int ordinal = 0);

}  // namespace descqa

#endif
