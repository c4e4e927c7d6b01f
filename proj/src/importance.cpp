#include "importance.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include <json.hpp>

#include "error.hpp"
#include "text.hpp"

using nlohmann::json;

namespace descqa {

LexicalOverlapScorer::LexicalOverlapScorer(std::vector<std::string> stopwords) {
  for (auto& w : stopwords) stopwords_.insert(lower(w));
}

ImportanceScores LexicalOverlapScorer::score(
    const std::vector<std::string>& question,
    const std::vector<std::string>& description,
    const std::vector<std::string>& answers, int64_t /*question_id*/) {
  std::map<std::string, size_t> counts;
  auto count_all = [&](const std::vector<std::string>& tokens) {
    for (const auto& t : tokens) ++counts[lower(t)];
  };
  count_all(question);
  count_all(description);

  std::set<std::string> answer_tokens;
  for (const auto& a : answers) {
    for (const auto& t : tokenize(lower(a))) answer_tokens.insert(t);
  }

  auto token_score = [&](const std::string& token) -> double {
    std::string t = lower(token);
    if (stopwords_.count(t)) return 0.0;
    double s = answer_tokens.count(t) ? 1.0 : 0.0;
    return s + 1.0 / (1.0 + static_cast<double>(counts[t]));
  };

  ImportanceScores out;
  out.question_scores.reserve(question.size());
  for (const auto& t : question) out.question_scores.push_back(token_score(t));
  out.description_scores.reserve(description.size());
  for (const auto& t : description) out.description_scores.push_back(token_score(t));

  for (const auto& a : answers) {
    if (out.answer_scores.count(a)) continue;
    auto toks = tokenize(lower(a));
    if (toks.empty()) {
      out.answer_scores[a] = 0.0;
      continue;
    }
    size_t present = 0;
    for (const auto& t : toks) {
      if (counts.count(t)) ++present;
    }
    out.answer_scores[a] =
        static_cast<double>(present) / static_cast<double>(toks.size());
  }
  return out;
}

static ImportanceScores scores_from_json(const json& j, const std::string& where) {
  ImportanceScores s;
  try {
    s.question_scores = j.at("question_scores").get<std::vector<double>>();
    s.description_scores = j.at("description_scores").get<std::vector<double>>();
    for (const auto& [k, v] : j.at("answer_scores").items()) {
      s.answer_scores[k] = v.get<double>();
    }
  } catch (const json::exception& e) {
    data_error("bad score record " + where + ": " + e.what());
  }
  for (double v : s.question_scores) {
    if (!std::isfinite(v)) data_error("non-finite question score " + where);
  }
  for (double v : s.description_scores) {
    if (!std::isfinite(v)) data_error("non-finite description score " + where);
  }
  for (const auto& [_, v] : s.answer_scores) {
    if (!std::isfinite(v)) data_error("non-finite answer score " + where);
  }
  return s;
}

FileScorer::FileScorer(const std::string& path) {
  std::ifstream in(path);
  if (!in) data_error("cannot open score file: " + path);
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    std::string where = path + ":" + std::to_string(line_no);
    json j = json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object()) {
      data_error("malformed score record at " + where);
    }
    int64_t qid = 0;
    try {
      qid = j.at("question_id").get<int64_t>();
    } catch (const json::exception&) {
      data_error("score record missing question_id at " + where);
    }
    records_[qid] = scores_from_json(j, "at " + where);
  }
}

ImportanceScores FileScorer::score(const std::vector<std::string>& question,
                                   const std::vector<std::string>& description,
                                   const std::vector<std::string>& /*answers*/,
                                   int64_t question_id) {
  auto it = records_.find(question_id);
  if (it == records_.end()) {
    data_error("no score record for question id " + std::to_string(question_id));
  }
  const ImportanceScores& s = it->second;
  if (s.question_scores.size() != question.size() ||
      s.description_scores.size() != description.size()) {
    data_error("score lengths for question id " + std::to_string(question_id) +
               " do not match token counts (" +
               std::to_string(s.question_scores.size()) + "/" +
               std::to_string(question.size()) + " question, " +
               std::to_string(s.description_scores.size()) + "/" +
               std::to_string(description.size()) + " description)");
  }
  return s;
}

ServiceScorer::ServiceScorer(std::string endpoint, const ResponseCache* cache)
    : endpoint_(std::move(endpoint)), cache_(cache) {}

ImportanceScores ServiceScorer::score(const std::vector<std::string>& question,
                                      const std::vector<std::string>& description,
                                      const std::vector<std::string>& answers,
                                      int64_t question_id) {
  json request;
  request["question"] = join_tokens(question);
  request["description"] = join_tokens(description);
  request["answers"] = answers;
  request["question_id"] = question_id;
  json response = post_json(endpoint_, "/v1/importance", request, cache_);
  ImportanceScores s =
      scores_from_json(response, "from " + endpoint_ + "/v1/importance");
  if (s.question_scores.size() != question.size() ||
      s.description_scores.size() != description.size()) {
    backend_error("score lengths from " + endpoint_ +
                  " do not match token counts for question id " +
                  std::to_string(question_id));
  }
  return s;
}

std::unique_ptr<Scorer> make_scorer(const std::string& spec,
                                    const std::vector<std::string>& stopwords,
                                    const ResponseCache* cache) {
  std::string s = trim(spec);
  if (s == "lexical_overlap" || s.empty()) {
    return std::make_unique<LexicalOverlapScorer>(stopwords);
  }
  if (s.rfind("file:", 0) == 0) {
    return std::make_unique<FileScorer>(s.substr(5));
  }
  if (s.rfind("service:", 0) == 0) {
    return std::make_unique<ServiceScorer>(s.substr(8), cache);
  }
  usage_error("unknown scorer backend: " + spec +
              " (expected lexical_overlap, file:<path> or service:<endpoint>)");
}

std::vector<std::string> top_answers(
    const std::map<std::string, double>& answer_scores,
    const std::vector<std::string>& candidates, size_t j) {
  std::map<std::string, double> by_lower;
  for (const auto& [k, v] : answer_scores) {
    by_lower.emplace(lower(k), v);  // first key wins on case collisions
  }
  std::vector<std::pair<std::string, double>> scored;
  std::set<std::string> seen;
  for (const auto& c : candidates) {
    std::string key = lower(c);
    if (!seen.insert(key).second) continue;
    auto it = by_lower.find(key);
    if (it != by_lower.end()) scored.emplace_back(key, it->second);
  }
  std::sort(scored.begin(), scored.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  if (scored.size() > j) scored.resize(j);
  std::vector<std::string> out;
  out.reserve(scored.size());
  for (auto& [k, _] : scored) out.push_back(std::move(k));
  return out;
}

}  // namespace descqa
