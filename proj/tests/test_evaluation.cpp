#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>

#include <json.hpp>

#include "error.hpp"
#include "evaluation.hpp"
#include "fixtures.hpp"

using namespace descqa;
using nlohmann::json;

namespace {

// The metric protocol spelled out: average over the ten leave-one-out
// annotator subsets of min(1, matches/3). The closed form must agree
// with this enumeration exactly.
double subset_oracle(int k) {
  std::vector<int> match(10, 0);
  for (int i = 0; i < k; ++i) match[i] = 1;
  double total = 0.0;
  for (int leave = 0; leave < 10; ++leave) {
    int m = 0;
    for (int i = 0; i < 10; ++i) {
      if (i != leave) m += match[i];
    }
    total += std::min(1.0, m / 3.0);
  }
  return total / 10.0;
}

// k matching answers, the rest distinct fillers.
std::vector<std::string> answers_with_matches(int k, const std::string& hit) {
  std::vector<std::string> answers;
  for (int i = 0; i < 10; ++i) {
    answers.push_back(i < k ? hit : "filler" + std::to_string(i));
  }
  return answers;
}

AnnotationRecord annotation(int64_t qid, AnswerType type, int k,
                            const std::string& hit = "yes") {
  AnnotationRecord ann;
  ann.question_id = qid;
  ann.image_id = qid * 10;
  ann.question_type = "is the";
  ann.answer_type = type;
  ann.multiple_choice_answer = hit;
  for (const auto& a : answers_with_matches(k, hit)) {
    ann.answers.push_back({a, "yes"});
  }
  return ann;
}

}  // namespace

TEST_CASE("closed form equals the ten-subset enumeration for every k") {
  for (int k = 0; k <= 10; ++k) {
    CHECK(vqa_accuracy_closed_form(k) ==
          doctest::Approx(subset_oracle(k)).epsilon(1e-9));
  }
  CHECK(vqa_accuracy_closed_form(0) == 0.0);
  CHECK(vqa_accuracy_closed_form(1) == doctest::Approx(0.3).epsilon(1e-9));
  CHECK(vqa_accuracy_closed_form(2) == doctest::Approx(0.6).epsilon(1e-9));
  CHECK(vqa_accuracy_closed_form(3) == doctest::Approx(0.9).epsilon(1e-9));
  for (int k = 4; k <= 10; ++k) {
    CHECK(vqa_accuracy_closed_form(k) == 1.0);
  }
  for (int k = 1; k <= 10; ++k) {
    CHECK(vqa_accuracy_closed_form(k) >= vqa_accuracy_closed_form(k - 1));
  }
  // k=0 must not produce a negative zero via (0-1)/3.
  CHECK(!std::signbit(vqa_accuracy_closed_form(0)));
}

TEST_CASE("string accuracy counts matches and demands ten answers") {
  for (int k = 0; k <= 10; ++k) {
    CHECK(vqa_accuracy("blue", answers_with_matches(k, "blue")) ==
          vqa_accuracy_closed_form(k));
  }
  // Normalization decides what counts as a match.
  auto answers = answers_with_matches(4, "2");
  CHECK(vqa_accuracy("two", answers, true) == 1.0);
  CHECK(vqa_accuracy("two", answers, false) == 0.0);

  CHECK_THROWS_AS(vqa_accuracy("x", {"a", "b"}), Error);
  try {
    vqa_accuracy("x", std::vector<std::string>(9, "a"));
    FAIL("nine answers must be rejected");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Data);
  }
}

TEST_CASE("answer normalization") {
  CHECK(normalize_answer("  The   Dog ", false) == "the dog");
  CHECK(normalize_answer("  The   Dog ", true) == "dog");
  CHECK(normalize_answer("1,000", true) == "1000");
  CHECK(normalize_answer("1, 2", true) == "1 2");
  CHECK(normalize_answer("3.5", true) == "3.5");
  CHECK(normalize_answer("no.", true) == "no");
  CHECK(normalize_answer("two", true) == "2");
  CHECK(normalize_answer("ten", true) == "10");
  CHECK(normalize_answer("none", true) == "0");
  CHECK(normalize_answer("dont", true) == "don't");
  CHECK(normalize_answer("an apple a day", true) == "apple day");
  CHECK(normalize_answer("what?!", true) == "what");
  CHECK(normalize_answer("left-hand side", true) == "left hand side");
  // Unofficial mode keeps punctuation, articles and number words.
  CHECK(normalize_answer("a 1,000", false) == "a 1,000");
}

TEST_CASE("evaluate averages per category and overall") {
  std::vector<AnnotationRecord> anns = {
      annotation(1, AnswerType::YesNo, 10),
      annotation(2, AnswerType::Number, 2, "3"),
      annotation(3, AnswerType::Other, 3, "fence"),
      annotation(4, AnswerType::Other, 0, "fence"),
  };
  std::vector<PredictionRecord> preds = {
      {1, "yes"}, {2, "3"}, {3, "fence"}, {4, "fence"}};

  Diagnostics diag;
  auto report = evaluate(preds, anns, std::nullopt, true, &diag);
  CHECK(report.question_count == 4);
  CHECK(report.yes_no_count == 1);
  CHECK(report.number_count == 1);
  CHECK(report.other_count == 2);
  CHECK(report.overall == doctest::Approx(62.5));
  CHECK(report.yes_no == doctest::Approx(100.0));
  CHECK(report.number == doctest::Approx(60.0));
  CHECK(report.other == doctest::Approx(45.0));
  CHECK(!report.gap.has_value());
  CHECK(report.missing_predictions == 0);
  CHECK(report.per_question.at(2) == doctest::Approx(0.6));
  CHECK(report.per_question.at(4) == 0.0);

  // Prediction order never matters.
  std::vector<PredictionRecord> shuffled = {preds[2], preds[0], preds[3], preds[1]};
  auto report2 = evaluate(shuffled, anns);
  CHECK(report2.overall == report.overall);
  CHECK(report2.per_question == report.per_question);
}

TEST_CASE("unanswered questions score zero, unknown ids are an error") {
  std::vector<AnnotationRecord> anns = {
      annotation(1, AnswerType::YesNo, 10),
      annotation(2, AnswerType::YesNo, 10),
  };
  std::vector<PredictionRecord> preds = {{1, "yes"}};

  Diagnostics diag;
  auto report = evaluate(preds, anns, std::nullopt, true, &diag);
  CHECK(report.missing_predictions == 1);
  CHECK(report.overall == doctest::Approx(50.0));
  CHECK(diag.count("missing_prediction") == 1);

  std::vector<PredictionRecord> stray = {{1, "yes"}, {999, "yes"}};
  try {
    evaluate(stray, anns);
    FAIL("prediction without an annotation must be an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Data);
    CHECK(std::string(e.what()).find("999") != std::string::npos);
  }
}

TEST_CASE("gap arithmetic reconciles printed columns") {
  // 250 questions summing to accuracy 127.9 give an overall of exactly
  // 51.16; against a 43.64 baseline the printed gap must be +7.52.
  std::vector<AnnotationRecord> anns;
  std::vector<PredictionRecord> preds;
  int64_t qid = 0;
  auto add = [&](int count, int k) {
    for (int i = 0; i < count; ++i) {
      ++qid;
      anns.push_back(annotation(qid, AnswerType::Other, k, "hit"));
      preds.push_back({qid, "hit"});
    }
  };
  add(127, 10);  // 127 x 1.0
  add(3, 1);     // 3 x 0.3
  add(120, 0);   // 120 x 0.0

  auto report = evaluate(preds, anns, 43.64);
  CHECK(round_percent(report.overall) == doctest::Approx(51.16).epsilon(1e-12));
  REQUIRE(report.gap.has_value());
  CHECK(*report.gap == doctest::Approx(7.52).epsilon(1e-12));

  auto text = format_accuracy_report(report);
  CHECK(text.find("51.16") != std::string::npos);
  CHECK(text.find("+7.52") != std::string::npos);
  CHECK(text.find("Gap") != std::string::npos);

  json j = json::parse(accuracy_report_json(report));
  CHECK(j.at("overall").get<double>() == doctest::Approx(51.16).epsilon(1e-12));
  CHECK(j.at("gap").get<double>() == doctest::Approx(7.52).epsilon(1e-12));
  CHECK(j.at("question_count").get<size_t>() == 250);

  // The gap runs on rounded hundredths, so it reconciles even when the
  // raw difference would not.
  auto tight = evaluate(preds, anns, 51.164);
  CHECK(*tight.gap == 0.0);
}

TEST_CASE("round_percent") {
  CHECK(round_percent(51.156) == doctest::Approx(51.16).epsilon(1e-12));
  CHECK(round_percent(51.154) == doctest::Approx(51.15).epsilon(1e-12));
  CHECK(round_percent(43.636) == doctest::Approx(43.64).epsilon(1e-12));
  CHECK(round_percent(0.0) == 0.0);
  CHECK(round_percent(100.0) == 100.0);
}

TEST_CASE("overlap buckets every shared question exactly once") {
  std::vector<AnnotationRecord> anns;
  for (int64_t q = 1; q <= 8; ++q) {
    anns.push_back(annotation(q, AnswerType::YesNo, 5));  // "yes" is in the set
  }
  auto pred = [](int64_t q, bool right) {
    return PredictionRecord{q, right ? "yes" : "wrong"};
  };
  std::vector<PredictionRecord> a = {pred(1, true),  pred(2, true),
                                     pred(3, true),  pred(4, true),
                                     pred(5, true),  pred(6, true),
                                     pred(7, false), pred(8, false),
                                     {100, "yes"}};  // only in a: ignored
  std::vector<PredictionRecord> b = {pred(1, true),  pred(2, true),
                                     pred(3, true),  pred(4, true),
                                     pred(5, false), pred(6, false),
                                     pred(7, true),  pred(8, false),
                                     {200, "yes"}};  // only in b: ignored

  auto report = overlap(a, b, anns);
  CHECK(report.shared_questions == 8);
  CHECK(report.both_correct == 4);
  CHECK(report.only_a_correct == 2);
  CHECK(report.only_b_correct == 1);
  CHECK(report.both_wrong == 1);
  CHECK(report.ratio_both_correct() + report.ratio_only_a() +
            report.ratio_only_b() + report.ratio_both_wrong() ==
        1.0);
  CHECK(report.ratio_both_correct() == 0.5);
  CHECK(report.ratio_only_a() == 0.25);

  // Swapping the inputs transposes the asymmetric buckets.
  auto swapped = overlap(b, a, anns);
  CHECK(swapped.only_a_correct == report.only_b_correct);
  CHECK(swapped.only_b_correct == report.only_a_correct);
  CHECK(swapped.both_correct == report.both_correct);
  CHECK(swapped.both_wrong == report.both_wrong);

  json j = json::parse(overlap_report_json(report));
  CHECK(j.at("shared_questions").get<size_t>() == 8);
  CHECK(j.at("both_correct").get<size_t>() == 4);
}

TEST_CASE("overlap normalization flag changes what counts as correct") {
  std::vector<AnnotationRecord> anns = {annotation(1, AnswerType::YesNo, 5)};
  std::vector<PredictionRecord> a = {{1, "Yes!"}};
  std::vector<PredictionRecord> b = {{1, "yes"}};

  auto strict = overlap(a, b, anns, false);
  CHECK(strict.only_b_correct == 1);
  auto official = overlap(a, b, anns, true);
  CHECK(official.both_correct == 1);
}

TEST_CASE("overlap error paths") {
  std::vector<AnnotationRecord> anns = {annotation(1, AnswerType::YesNo, 5)};
  std::vector<PredictionRecord> a = {{1, "yes"}, {777, "yes"}};
  std::vector<PredictionRecord> b = {{1, "yes"}, {777, "yes"}};
  try {
    overlap(a, b, anns);
    FAIL("shared question without annotation must be an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Data);
    CHECK(std::string(e.what()).find("777") != std::string::npos);
  }

  std::vector<PredictionRecord> disjoint_a = {{1, "yes"}};
  std::vector<PredictionRecord> disjoint_b = {{2, "yes"}};
  CHECK_THROWS_AS(overlap(disjoint_a, disjoint_b, anns), Error);
}

TEST_CASE("prediction files load and reject duplicates") {
  auto dir = testfix::temp_dir("eval_predictions");
  auto path = (dir / "preds.jsonl").string();
  {
    std::ofstream out(path);
    out << R"({"question_id": 1, "answer": "yes"})" << "\n";
    out << "\n";  // blank lines are fine
    out << R"({"question_id": 2, "answer": "3"})" << "\n";
  }
  auto load = load_predictions(path);
  REQUIRE(load.records.size() == 2);
  CHECK(load.records[0] == PredictionRecord{1, "yes"});
  CHECK(load.records[1] == PredictionRecord{2, "3"});

  {
    std::ofstream out(path);
    out << R"({"question_id": 1, "answer": "yes"})" << "\n";
    out << R"({"question_id": 1, "answer": "no"})" << "\n";
  }
  CHECK_THROWS_AS(load_predictions(path), Error);

  {
    std::ofstream out(path);
    out << "not json\n";
  }
  CHECK_THROWS_AS(load_predictions(path), Error);

  {
    std::ofstream out(path);
    out << R"({"question_id": 1, "answer": 3})" << "\n";
  }
  CHECK_THROWS_AS(load_predictions(path), Error);

  CHECK_THROWS_AS(load_predictions((dir / "missing.jsonl").string()), Error);
}
