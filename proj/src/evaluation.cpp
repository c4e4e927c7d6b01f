#include "evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "error.hpp"
#include "text.hpp"

using nlohmann::json;

namespace descqa {

PredictionLoad load_predictions(const std::string& path) {
  std::ifstream in(path);
  if (!in) data_error("cannot open prediction file: " + path);
  PredictionLoad load;
  std::set<int64_t> seen;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    json j = json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object()) {
      data_error("malformed prediction at " + path + ":" + std::to_string(line_no));
    }
    PredictionRecord rec;
    try {
      rec.question_id = j.at("question_id").get<int64_t>();
      rec.answer = j.at("answer").get<std::string>();
    } catch (const json::exception& e) {
      data_error("bad prediction at " + path + ":" + std::to_string(line_no) +
                 ": " + e.what());
    }
    if (!seen.insert(rec.question_id).second) {
      data_error("duplicate prediction for question id " +
                 std::to_string(rec.question_id) + " at " + path + ":" +
                 std::to_string(line_no));
    }
    load.records.push_back(std::move(rec));
  }
  return load;
}

namespace {

const std::map<std::string, std::string>& contraction_map() {
  static const std::map<std::string, std::string> m = {
      {"aint", "ain't"},       {"arent", "aren't"},   {"cant", "can't"},
      {"couldnt", "couldn't"}, {"didnt", "didn't"},   {"doesnt", "doesn't"},
      {"dont", "don't"},       {"hasnt", "hasn't"},   {"havent", "haven't"},
      {"isnt", "isn't"},       {"shouldnt", "shouldn't"}, {"thats", "that's"},
      {"theres", "there's"},   {"wasnt", "wasn't"},   {"werent", "weren't"},
      {"whats", "what's"},     {"wheres", "where's"}, {"wont", "won't"},
      {"wouldnt", "wouldn't"}, {"youre", "you're"},   {"youve", "you've"},
  };
  return m;
}

const std::map<std::string, std::string>& number_word_map() {
  static const std::map<std::string, std::string> m = {
      {"none", "0"}, {"zero", "0"}, {"one", "1"},   {"two", "2"},
      {"three", "3"}, {"four", "4"}, {"five", "5"},  {"six", "6"},
      {"seven", "7"}, {"eight", "8"}, {"nine", "9"}, {"ten", "10"},
  };
  return m;
}

bool is_digit(char c) { return c >= '0' && c <= '9'; }

// Commas between digits vanish (1,000 -> 1000), periods vanish unless
// between digits (keeping 3.5), remaining punctuation becomes a space.
std::string strip_punctuation(const std::string& s) {
  static const std::string punct = ";/[]\"{}()=+\\_-><@`,?!";
  std::string out;
  out.reserve(s.size());
  for (size_t i = 0; i < s.size(); ++i) {
    char c = s[i];
    bool between_digits =
        i > 0 && i + 1 < s.size() && is_digit(s[i - 1]) && is_digit(s[i + 1]);
    if (c == ',') {
      if (!between_digits) out.push_back(' ');
    } else if (c == '.') {
      if (between_digits) out.push_back(c);
    } else if (punct.find(c) != std::string::npos) {
      out.push_back(' ');
    } else {
      out.push_back(c);
    }
  }
  return out;
}

}  // namespace

std::string normalize_answer(std::string_view answer, bool official) {
  std::string s = collapse_spaces(lower(answer));
  if (!official) return s;
  s = strip_punctuation(s);
  std::vector<std::string> out;
  for (const auto& token : tokenize(s)) {
    if (token == "a" || token == "an" || token == "the") continue;
    auto num = number_word_map().find(token);
    if (num != number_word_map().end()) {
      out.push_back(num->second);
      continue;
    }
    auto con = contraction_map().find(token);
    out.push_back(con == contraction_map().end() ? token : con->second);
  }
  return join_tokens(out);
}

double vqa_accuracy_closed_form(int k) {
  double kk = k;
  double hit = std::min((kk - 1.0) / 3.0, 1.0);
  if (k == 0) hit = 0.0;
  double rest = std::min(kk / 3.0, 1.0);
  return (kk * hit + (10.0 - kk) * rest) / 10.0;
}

double vqa_accuracy(const std::string& prediction,
                    const std::vector<std::string>& answers,
                    bool official_normalization) {
  if (answers.size() != 10) {
    data_error("accuracy needs exactly 10 answers, got " +
               std::to_string(answers.size()));
  }
  std::string p = normalize_answer(prediction, official_normalization);
  int k = 0;
  for (const auto& a : answers) {
    if (normalize_answer(a, official_normalization) == p) ++k;
  }
  return vqa_accuracy_closed_form(k);
}

double round_percent(double value) {
  return std::round(value * 100.0) / 100.0;
}

AccuracyReport evaluate(const std::vector<PredictionRecord>& predictions,
                        const std::vector<AnnotationRecord>& annotations,
                        std::optional<double> baseline_overall,
                        bool official_normalization, Diagnostics* diag) {
  std::map<int64_t, const AnnotationRecord*> by_id;
  for (const auto& a : annotations) by_id.emplace(a.question_id, &a);

  std::vector<int64_t> unknown;
  std::map<int64_t, const PredictionRecord*> predicted;
  for (const auto& p : predictions) {
    if (!by_id.count(p.question_id)) {
      unknown.push_back(p.question_id);
    } else {
      predicted.emplace(p.question_id, &p);
    }
  }
  if (!unknown.empty()) {
    std::ostringstream msg;
    msg << unknown.size() << " predictions without annotations (ids";
    for (size_t i = 0; i < unknown.size() && i < 10; ++i) msg << ' ' << unknown[i];
    if (unknown.size() > 10) msg << " ...";
    msg << ')';
    data_error(msg.str());
  }

  AccuracyReport report;
  double sum = 0, sum_yes_no = 0, sum_number = 0, sum_other = 0;
  for (const auto& a : annotations) {
    double acc = 0.0;
    auto it = predicted.find(a.question_id);
    if (it == predicted.end()) {
      ++report.missing_predictions;
      if (diag) diag->add("missing_prediction", std::to_string(a.question_id));
    } else {
      std::vector<std::string> answer_strings;
      answer_strings.reserve(a.answers.size());
      for (const auto& e : a.answers) answer_strings.push_back(e.answer);
      acc = vqa_accuracy(it->second->answer, answer_strings,
                         official_normalization);
    }
    report.per_question[a.question_id] = acc;
    sum += acc;
    ++report.question_count;
    switch (a.answer_type) {
      case AnswerType::YesNo:
        sum_yes_no += acc;
        ++report.yes_no_count;
        break;
      case AnswerType::Number:
        sum_number += acc;
        ++report.number_count;
        break;
      case AnswerType::Other:
        sum_other += acc;
        ++report.other_count;
        break;
    }
  }

  auto pct = [](double s, size_t n) { return n ? 100.0 * s / n : 0.0; };
  report.overall = pct(sum, report.question_count);
  report.yes_no = pct(sum_yes_no, report.yes_no_count);
  report.number = pct(sum_number, report.number_count);
  report.other = pct(sum_other, report.other_count);
  if (baseline_overall) {
    // Hundredths arithmetic so the printed Gap always equals the printed
    // overall difference.
    double delta = std::round(report.overall * 100.0) -
                   std::round(*baseline_overall * 100.0);
    report.gap = delta / 100.0;
  }
  return report;
}

double OverlapReport::ratio_both_correct() const {
  return shared_questions ? static_cast<double>(both_correct) / shared_questions : 0.0;
}
double OverlapReport::ratio_only_a() const {
  return shared_questions ? static_cast<double>(only_a_correct) / shared_questions : 0.0;
}
double OverlapReport::ratio_only_b() const {
  return shared_questions ? static_cast<double>(only_b_correct) / shared_questions : 0.0;
}
double OverlapReport::ratio_both_wrong() const {
  return shared_questions ? static_cast<double>(both_wrong) / shared_questions : 0.0;
}

OverlapReport overlap(const std::vector<PredictionRecord>& predictions_a,
                      const std::vector<PredictionRecord>& predictions_b,
                      const std::vector<AnnotationRecord>& annotations,
                      bool official_normalization) {
  std::map<int64_t, const AnnotationRecord*> by_id;
  for (const auto& a : annotations) by_id.emplace(a.question_id, &a);
  std::map<int64_t, const PredictionRecord*> b_by_id;
  for (const auto& p : predictions_b) b_by_id.emplace(p.question_id, &p);

  auto correct = [&](const std::string& answer, const AnnotationRecord& ann) {
    std::string p = normalize_answer(answer, official_normalization);
    for (const auto& e : ann.answers) {
      if (normalize_answer(e.answer, official_normalization) == p) return true;
    }
    return false;
  };

  OverlapReport report;
  std::vector<int64_t> unknown;
  for (const auto& pa : predictions_a) {
    auto pb = b_by_id.find(pa.question_id);
    if (pb == b_by_id.end()) continue;
    auto ann = by_id.find(pa.question_id);
    if (ann == by_id.end()) {
      unknown.push_back(pa.question_id);
      continue;
    }
    bool ca = correct(pa.answer, *ann->second);
    bool cb = correct(pb->second->answer, *ann->second);
    ++report.shared_questions;
    if (ca && cb) ++report.both_correct;
    else if (ca) ++report.only_a_correct;
    else if (cb) ++report.only_b_correct;
    else ++report.both_wrong;
  }
  if (!unknown.empty()) {
    std::ostringstream msg;
    msg << unknown.size() << " shared questions without annotations (ids";
    for (size_t i = 0; i < unknown.size() && i < 10; ++i) msg << ' ' << unknown[i];
    if (unknown.size() > 10) msg << " ...";
    msg << ')';
    data_error(msg.str());
  }
  if (report.shared_questions == 0) {
    data_error("prediction files share no question ids");
  }
  return report;
}

namespace {

std::string fixed2(double v) {
  char buf[32];
  snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

std::string signed2(double v) {
  char buf[32];
  snprintf(buf, sizeof(buf), "%+.2f", v);
  return buf;
}

}  // namespace

std::string format_accuracy_report(const AccuracyReport& report) {
  std::ostringstream out;
  out << "Yes/No  Number  Other  Overall";
  if (report.gap) out << "  Gap";
  out << '\n';
  out << fixed2(round_percent(report.yes_no)) << "   "
      << fixed2(round_percent(report.number)) << "   "
      << fixed2(round_percent(report.other)) << "  "
      << fixed2(round_percent(report.overall));
  if (report.gap) out << "    " << signed2(*report.gap);
  out << '\n';
  out << "questions: " << report.question_count
      << " (yes/no " << report.yes_no_count
      << ", number " << report.number_count
      << ", other " << report.other_count << ")";
  if (report.missing_predictions) {
    out << ", unanswered: " << report.missing_predictions;
  }
  out << '\n';
  return out.str();
}

std::string accuracy_report_json(const AccuracyReport& report) {
  json j;
  j["yes_no"] = round_percent(report.yes_no);
  j["number"] = round_percent(report.number);
  j["other"] = round_percent(report.other);
  j["overall"] = round_percent(report.overall);
  if (report.gap) j["gap"] = *report.gap;
  j["question_count"] = report.question_count;
  j["yes_no_count"] = report.yes_no_count;
  j["number_count"] = report.number_count;
  j["other_count"] = report.other_count;
  j["missing_predictions"] = report.missing_predictions;
  return j.dump();
}

std::string format_overlap_report(const OverlapReport& report) {
  std::ostringstream out;
  auto row = [&](const char* label, size_t count, double ratio) {
    out << label << "  " << count << "  " << fixed2(100.0 * ratio) << "%\n";
  };
  out << "bucket  count  ratio\n";
  row("both correct ", report.both_correct, report.ratio_both_correct());
  row("only A correct", report.only_a_correct, report.ratio_only_a());
  row("only B correct", report.only_b_correct, report.ratio_only_b());
  row("both wrong   ", report.both_wrong, report.ratio_both_wrong());
  out << "shared questions: " << report.shared_questions << '\n';
  return out.str();
}

std::string overlap_report_json(const OverlapReport& report) {
  json j;
  j["both_correct"] = report.both_correct;
  j["only_a_correct"] = report.only_a_correct;
  j["only_b_correct"] = report.only_b_correct;
  j["both_wrong"] = report.both_wrong;
  j["shared_questions"] = report.shared_questions;
  j["ratio_both_correct"] = report.ratio_both_correct();
  j["ratio_only_a"] = report.ratio_only_a();
  j["ratio_only_b"] = report.ratio_only_b();
  j["ratio_both_wrong"] = report.ratio_both_wrong();
  return j.dump();
}

}  // namespace descqa
