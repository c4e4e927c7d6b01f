#ifndef DESCQA_EVALUATION_HPP
#define DESCQA_EVALUATION_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "corpus_io.hpp"
#include "diagnostics.hpp"

namespace descqa {

struct PredictionRecord {
  int64_t question_id = 0;
  std::string answer;

  bool operator==(const PredictionRecord&) const = default;
};

struct PredictionLoad {
  std::vector<PredictionRecord> records;
  Diagnostics diagnostics;
};

// Line-delimited {"question_id", "answer"}; a duplicate question_id or a
// malformed line is an error.
PredictionLoad load_predictions(const std::string& path);

// Always: lowercase, trim, collapse space runs. With official extras:
// punctuation stripping (digit-aware for , and .), contraction repair,
// number words mapped to digits, articles dropped.
std::string normalize_answer(std::string_view answer, bool official = true);

// Closed form of the 10-subset protocol for k matching answers.
double vqa_accuracy_closed_form(int k);

// Official subset-averaged accuracy of one prediction against the 10
// human answers; error unless exactly 10 are supplied.
double vqa_accuracy(const std::string& prediction,
                    const std::vector<std::string>& answers,
                    bool official_normalization = true);

struct AccuracyReport {
  double overall = 0.0;  // percentages over all questions
  double yes_no = 0.0;
  double number = 0.0;
  double other = 0.0;
  size_t question_count = 0;
  size_t yes_no_count = 0;
  size_t number_count = 0;
  size_t other_count = 0;
  size_t missing_predictions = 0;
  std::optional<double> gap;  // overall minus baseline overall, when given
  std::map<int64_t, double> per_question;
};

// Scores every annotated question; an unpredicted question scores 0 and
// is tallied, a prediction without an annotation is an error listing the
// ids. Categories follow the annotation answer_type.
AccuracyReport evaluate(const std::vector<PredictionRecord>& predictions,
                        const std::vector<AnnotationRecord>& annotations,
                        std::optional<double> baseline_overall = std::nullopt,
                        bool official_normalization = true,
                        Diagnostics* diag = nullptr);

struct OverlapReport {
  size_t both_correct = 0;
  size_t only_a_correct = 0;
  size_t only_b_correct = 0;
  size_t both_wrong = 0;
  size_t shared_questions = 0;

  double ratio_both_correct() const;
  double ratio_only_a() const;
  double ratio_only_b() const;
  double ratio_both_wrong() const;
};

// Binary agreement over the shared question ids: a prediction is correct
// iff it appears among the 10 answers. Empty intersection is an error.
OverlapReport overlap(const std::vector<PredictionRecord>& predictions_a,
                      const std::vector<PredictionRecord>& predictions_b,
                      const std::vector<AnnotationRecord>& annotations,
                      bool official_normalization = false);

// Percentage rounded to hundredths; gap arithmetic runs on these rounded
// values so printed columns always reconcile.
double round_percent(double value);

std::string format_accuracy_report(const AccuracyReport& report);
std::string accuracy_report_json(const AccuracyReport& report);
std::string format_overlap_report(const OverlapReport& report);
std::string overlap_report_json(const OverlapReport& report);

}  // namespace descqa

#endif
