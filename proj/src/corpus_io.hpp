#ifndef DESCQA_CORPUS_IO_HPP
#define DESCQA_CORPUS_IO_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "diagnostics.hpp"

namespace descqa {

enum class AnswerType { YesNo, Number, Other };

const char* to_string(AnswerType t);
std::optional<AnswerType> answer_type_from_string(std::string_view s);

struct QuestionRecord {
  int64_t question_id = 0;
  int64_t image_id = 0;
  std::string text;

  bool operator==(const QuestionRecord&) const = default;
};

struct AnswerEntry {
  std::string answer;
  std::string confidence;

  bool operator==(const AnswerEntry&) const = default;
};

struct AnnotationRecord {
  int64_t question_id = 0;
  int64_t image_id = 0;
  std::string question_type;
  AnswerType answer_type = AnswerType::Other;
  std::string multiple_choice_answer;
  std::vector<AnswerEntry> answers;  // exactly 10, ordered by answer_id

  bool operator==(const AnnotationRecord&) const = default;
};

struct CaptionRecord {
  int64_t image_id = 0;
  int64_t caption_id = 0;
  std::string text;

  bool operator==(const CaptionRecord&) const = default;
};

// Join product: one question with everything needed to build its triplet.
struct RawSample {
  int64_t question_id = 0;
  int64_t image_id = 0;
  std::string question;
  std::string question_type;
  AnswerType answer_type = AnswerType::Other;
  std::vector<AnswerEntry> answers;
  std::vector<std::string> captions;  // caption_id ascending
  std::string narrative;
};

struct QuestionLoad {
  std::vector<QuestionRecord> records;
  Diagnostics diagnostics;
};

struct AnnotationLoad {
  std::vector<AnnotationRecord> records;
  Diagnostics diagnostics;
};

struct CaptionLoad {
  // image_id -> captions sorted by caption_id ascending
  std::map<int64_t, std::vector<CaptionRecord>> by_image;
  Diagnostics diagnostics;
};

struct NarrativeLoad {
  std::map<int64_t, std::string> by_image;
  Diagnostics diagnostics;
};

struct JoinResult {
  std::vector<RawSample> samples;  // question order preserved
  Diagnostics diagnostics;         // one entry per excluded question
};

// Top-level object with "questions": [{question_id, image_id, question}].
QuestionLoad load_questions(const std::string& path);

// "annotations": [{question_id, image_id, question_type, answer_type,
// multiple_choice_answer, answers: 10 x {answer, answer_confidence,
// answer_id}}]. Records without exactly 10 answers are rejected with a
// diagnostic; a missing field is a hard error naming it.
AnnotationLoad load_annotations(const std::string& path);

// COCO captions: "annotations": [{image_id, id, caption}].
CaptionLoad load_captions(const std::string& path);
void load_captions_into(const std::string& path, CaptionLoad& out);

// Localized-narrative records, one JSON object per line with at least
// {image_id, caption}. First record per image wins; malformed lines are
// skipped with a diagnostic.
NarrativeLoad load_narratives(const std::string& path);
void load_narratives_into(const std::string& path, NarrativeLoad& out);

// |samples| + |diagnostics| == |questions|; exclusions are categorized as
// missing_annotation / missing_captions / missing_narrative.
JoinResult join_corpora(const std::vector<QuestionRecord>& questions,
                        const std::vector<AnnotationRecord>& annotations,
                        const CaptionLoad& captions,
                        const NarrativeLoad& narratives);

// Serializers back to the input schemas (round-trip checks, fixtures).
nlohmann::json questions_to_json(const std::vector<QuestionRecord>& records);
nlohmann::json annotations_to_json(const std::vector<AnnotationRecord>& records);
nlohmann::json captions_to_json(const CaptionLoad& captions);
std::string narratives_to_jsonl(const NarrativeLoad& narratives);

}  // namespace descqa

#endif
