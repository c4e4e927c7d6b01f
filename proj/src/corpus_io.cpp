#include "corpus_io.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>
#include <unordered_map>

#include <json.hpp>

#include "error.hpp"
#include "text.hpp"

using nlohmann::json;

namespace descqa {

const char* to_string(AnswerType t) {
  switch (t) {
    case AnswerType::YesNo: return "yes/no";
    case AnswerType::Number: return "number";
    case AnswerType::Other: return "other";
  }
  return "other";
}

std::optional<AnswerType> answer_type_from_string(std::string_view s) {
  if (s == "yes/no") return AnswerType::YesNo;
  if (s == "number") return AnswerType::Number;
  if (s == "other") return AnswerType::Other;
  return std::nullopt;
}

static json parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) data_error("cannot open file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    data_error("invalid JSON in " + path + ": " + e.what());
  }
  return j;
}

static const json& require_field(const json& record, const char* field,
                                 const std::string& path, size_t index) {
  auto it = record.find(field);
  if (it == record.end()) {
    data_error("missing field '" + std::string(field) + "' in record " +
               std::to_string(index) + " of " + path);
  }
  return *it;
}

static int64_t require_int(const json& record, const char* field,
                           const std::string& path, size_t index) {
  const json& v = require_field(record, field, path, index);
  if (!v.is_number_integer() && !v.is_number_unsigned()) {
    data_error("field '" + std::string(field) + "' is not an integer in record " +
               std::to_string(index) + " of " + path);
  }
  return v.get<int64_t>();
}

static std::string require_string(const json& record, const char* field,
                                  const std::string& path, size_t index) {
  const json& v = require_field(record, field, path, index);
  if (!v.is_string()) {
    data_error("field '" + std::string(field) + "' is not a string in record " +
               std::to_string(index) + " of " + path);
  }
  return v.get<std::string>();
}

// The standard files wrap their records in a top-level object; the
// changing-priors re-splits ship the bare array. Both are accepted.
static const json& record_array(const json& j, const char* field,
                                const std::string& path) {
  if (j.is_array()) return j;
  if (j.is_object()) {
    auto it = j.find(field);
    if (it != j.end() && it->is_array()) return *it;
  }
  data_error("no top-level '" + std::string(field) + "' array in " + path);
}

QuestionLoad load_questions(const std::string& path) {
  json j = parse_file(path);
  const json& records = record_array(j, "questions", path);
  QuestionLoad out;
  out.records.reserve(records.size());
  size_t index = 0;
  for (const auto& rec : records) {
    QuestionRecord q;
    q.question_id = require_int(rec, "question_id", path, index);
    q.image_id = require_int(rec, "image_id", path, index);
    q.text = require_string(rec, "question", path, index);
    if (trim(q.text).empty()) {
      out.diagnostics.add("empty_question",
                          "question_id " + std::to_string(q.question_id));
    } else {
      out.records.push_back(std::move(q));
    }
    ++index;
  }
  return out;
}

AnnotationLoad load_annotations(const std::string& path) {
  json j = parse_file(path);
  const json& records = record_array(j, "annotations", path);
  AnnotationLoad out;
  out.records.reserve(records.size());
  size_t index = 0;
  for (const auto& rec : records) {
    AnnotationRecord a;
    a.question_id = require_int(rec, "question_id", path, index);
    a.image_id = require_int(rec, "image_id", path, index);
    a.question_type = require_string(rec, "question_type", path, index);
    std::string type_str = require_string(rec, "answer_type", path, index);
    auto type = answer_type_from_string(type_str);
    if (!type) {
      out.diagnostics.add("unknown_answer_type",
                          "'" + type_str + "' at question_id " +
                              std::to_string(a.question_id));
      ++index;
      continue;
    }
    a.answer_type = *type;
    if (auto mca = rec.find("multiple_choice_answer");
        mca != rec.end() && mca->is_string()) {
      a.multiple_choice_answer = mca->get<std::string>();
    }
    const json& answers = require_field(rec, "answers", path, index);
    if (!answers.is_array() || answers.size() != 10) {
      out.diagnostics.add(
          "answer_count",
          "question_id " + std::to_string(a.question_id) + " has " +
              std::to_string(answers.is_array() ? answers.size() : 0) +
              " answers, expected 10");
      ++index;
      continue;
    }
    // Keep answer_id order regardless of file order.
    std::vector<std::pair<int64_t, AnswerEntry>> entries;
    entries.reserve(10);
    size_t answer_index = 0;
    for (const auto& ans : answers) {
      AnswerEntry e;
      e.answer = require_string(ans, "answer", path, index);
      if (auto c = ans.find("answer_confidence"); c != ans.end() && c->is_string()) {
        e.confidence = c->get<std::string>();
      }
      int64_t answer_id = static_cast<int64_t>(answer_index);
      if (auto idf = ans.find("answer_id");
          idf != ans.end() && idf->is_number_integer()) {
        answer_id = idf->get<int64_t>();
      }
      entries.emplace_back(answer_id, std::move(e));
      ++answer_index;
    }
    std::stable_sort(entries.begin(), entries.end(),
                     [](const auto& x, const auto& y) { return x.first < y.first; });
    a.answers.reserve(10);
    for (auto& [_, e] : entries) a.answers.push_back(std::move(e));
    out.records.push_back(std::move(a));
    ++index;
  }
  return out;
}

void load_captions_into(const std::string& path, CaptionLoad& out) {
  json j = parse_file(path);
  auto it = j.find("annotations");
  if (it == j.end() || !it->is_array()) {
    data_error("no top-level 'annotations' array in " + path);
  }
  size_t index = 0;
  for (const auto& rec : *it) {
    CaptionRecord c;
    c.image_id = require_int(rec, "image_id", path, index);
    c.caption_id = require_int(rec, "id", path, index);
    c.text = require_string(rec, "caption", path, index);
    if (trim(c.text).empty()) {
      out.diagnostics.add("empty_caption",
                          "caption id " + std::to_string(c.caption_id));
    } else {
      out.by_image[c.image_id].push_back(std::move(c));
    }
    ++index;
  }
  for (auto& [_, captions] : out.by_image) {
    std::stable_sort(
        captions.begin(), captions.end(),
        [](const CaptionRecord& a, const CaptionRecord& b) {
          return a.caption_id < b.caption_id;
        });
  }
}

CaptionLoad load_captions(const std::string& path) {
  CaptionLoad out;
  load_captions_into(path, out);
  return out;
}

void load_narratives_into(const std::string& path, NarrativeLoad& out) {
  std::ifstream in(path);
  if (!in) data_error("cannot open file: " + path);
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    json rec = json::parse(line, nullptr, false);
    if (rec.is_discarded() || !rec.is_object() || !rec.contains("image_id") ||
        !rec.contains("caption") || !rec["caption"].is_string()) {
      out.diagnostics.add("malformed_narrative",
                          path + ":" + std::to_string(line_no));
      continue;
    }
    int64_t image_id = 0;
    const json& id = rec["image_id"];
    if (id.is_number_integer() || id.is_number_unsigned()) {
      image_id = id.get<int64_t>();
    } else if (id.is_string()) {
      // Localized-narrative files carry image ids as strings.
      const std::string s = id.get<std::string>();
      char* end = nullptr;
      image_id = std::strtoll(s.c_str(), &end, 10);
      if (end == s.c_str() || *end != '\0') {
        out.diagnostics.add("malformed_narrative",
                            path + ":" + std::to_string(line_no) +
                                " non-numeric image_id '" + s + "'");
        continue;
      }
    } else {
      out.diagnostics.add("malformed_narrative",
                          path + ":" + std::to_string(line_no));
      continue;
    }
    // First record per image in file order wins.
    out.by_image.emplace(image_id, rec["caption"].get<std::string>());
  }
}

NarrativeLoad load_narratives(const std::string& path) {
  NarrativeLoad out;
  load_narratives_into(path, out);
  return out;
}

JoinResult join_corpora(const std::vector<QuestionRecord>& questions,
                        const std::vector<AnnotationRecord>& annotations,
                        const CaptionLoad& captions,
                        const NarrativeLoad& narratives) {
  std::unordered_map<int64_t, const AnnotationRecord*> by_qid;
  by_qid.reserve(annotations.size());
  for (const auto& a : annotations) by_qid.emplace(a.question_id, &a);

  JoinResult out;
  out.samples.reserve(questions.size());
  for (const auto& q : questions) {
    auto ann = by_qid.find(q.question_id);
    if (ann == by_qid.end()) {
      out.diagnostics.add("missing_annotation",
                          "question_id " + std::to_string(q.question_id));
      continue;
    }
    auto caps = captions.by_image.find(q.image_id);
    if (caps == captions.by_image.end() || caps->second.empty()) {
      out.diagnostics.add("missing_captions",
                          "image_id " + std::to_string(q.image_id));
      continue;
    }
    auto nar = narratives.by_image.find(q.image_id);
    if (nar == narratives.by_image.end()) {
      out.diagnostics.add("missing_narrative",
                          "image_id " + std::to_string(q.image_id));
      continue;
    }
    RawSample s;
    s.question_id = q.question_id;
    s.image_id = q.image_id;
    s.question = q.text;
    s.question_type = ann->second->question_type;
    s.answer_type = ann->second->answer_type;
    s.answers = ann->second->answers;
    s.captions.reserve(caps->second.size());
    for (const auto& c : caps->second) s.captions.push_back(c.text);
    s.narrative = nar->second;
    out.samples.push_back(std::move(s));
  }
  return out;
}

json questions_to_json(const std::vector<QuestionRecord>& records) {
  json arr = json::array();
  for (const auto& q : records) {
    arr.push_back({{"question_id", q.question_id},
                   {"image_id", q.image_id},
                   {"question", q.text}});
  }
  return json{{"questions", std::move(arr)}};
}

json annotations_to_json(const std::vector<AnnotationRecord>& records) {
  json arr = json::array();
  for (const auto& a : records) {
    json answers = json::array();
    for (size_t i = 0; i < a.answers.size(); ++i) {
      answers.push_back({{"answer", a.answers[i].answer},
                         {"answer_confidence", a.answers[i].confidence},
                         {"answer_id", static_cast<int64_t>(i + 1)}});
    }
    arr.push_back({{"question_id", a.question_id},
                   {"image_id", a.image_id},
                   {"question_type", a.question_type},
                   {"answer_type", to_string(a.answer_type)},
                   {"multiple_choice_answer", a.multiple_choice_answer},
                   {"answers", std::move(answers)}});
  }
  return json{{"annotations", std::move(arr)}};
}

json captions_to_json(const CaptionLoad& captions) {
  json arr = json::array();
  for (const auto& [_, records] : captions.by_image) {
    for (const auto& c : records) {
      arr.push_back({{"image_id", c.image_id},
                     {"id", c.caption_id},
                     {"caption", c.text}});
    }
  }
  return json{{"annotations", std::move(arr)}};
}

std::string narratives_to_jsonl(const NarrativeLoad& narratives) {
  std::ostringstream out;
  for (const auto& [image_id, caption] : narratives.by_image) {
    out << json{{"image_id", image_id}, {"caption", caption}}.dump() << "\n";
  }
  return out.str();
}

}  // namespace descqa
