#ifndef DESCQA_IMPORTANCE_HPP
#define DESCQA_IMPORTANCE_HPP

#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "http_json.hpp"

namespace descqa {

struct ImportanceScores {
  std::vector<double> question_scores;     // one per question token
  std::vector<double> description_scores;  // one per description token
  std::map<std::string, double> answer_scores;

  bool operator==(const ImportanceScores&) const = default;
};

// Per-word contribution source for counterfactual generation. All
// implementations must return arrays whose lengths equal the incoming
// token counts, with finite non-negative values.
class Scorer {
public:
  virtual ~Scorer() = default;
  virtual ImportanceScores score(const std::vector<std::string>& question,
                                 const std::vector<std::string>& description,
                                 const std::vector<std::string>& answers,
                                 int64_t question_id) = 0;
  virtual std::string backend_name() const = 0;
};

// Dependency-free deterministic backend. Token score:
//   0 for stop-listed tokens, else
//   (1 if the token equals any answer token) + 1 / (1 + n)
// where n is the token's occurrence count across question + description
// (all comparisons lowercase). Answer score: fraction of the answer's
// tokens present among the input tokens.
class LexicalOverlapScorer : public Scorer {
public:
  explicit LexicalOverlapScorer(std::vector<std::string> stopwords);

  ImportanceScores score(const std::vector<std::string>& question,
                         const std::vector<std::string>& description,
                         const std::vector<std::string>& answers,
                         int64_t question_id) override;
  std::string backend_name() const override { return "lexical_overlap"; }

private:
  std::set<std::string> stopwords_;
};

// Precomputed scores, line-delimited records keyed by question_id:
// {"question_id", "question_scores", "description_scores", "answer_scores"}.
// A question id with no record is an error, as is a length mismatch
// against the incoming token lists.
class FileScorer : public Scorer {
public:
  explicit FileScorer(const std::string& path);

  ImportanceScores score(const std::vector<std::string>& question,
                         const std::vector<std::string>& description,
                         const std::vector<std::string>& answers,
                         int64_t question_id) override;
  std::string backend_name() const override { return "file"; }
  size_t size() const { return records_.size(); }

private:
  std::map<int64_t, ImportanceScores> records_;
};

// Remote model behind POST /v1/importance. One retry on failure, then a
// backend error; responses are validated against the token counts.
class ServiceScorer : public Scorer {
public:
  explicit ServiceScorer(std::string endpoint, const ResponseCache* cache = nullptr);

  ImportanceScores score(const std::vector<std::string>& question,
                         const std::vector<std::string>& description,
                         const std::vector<std::string>& answers,
                         int64_t question_id) override;
  std::string backend_name() const override { return "service"; }

private:
  std::string endpoint_;
  const ResponseCache* cache_;
};

// Factory from a backend spec: "lexical_overlap", "file:<path>" or
// "service:<endpoint>".
std::unique_ptr<Scorer> make_scorer(const std::string& spec,
                                    const std::vector<std::string>& stopwords,
                                    const ResponseCache* cache = nullptr);

// The <= J highest-scoring candidates, ordered by descending score with
// lexicographic ties. Candidates without a score entry are not eligible;
// matching is case-insensitive on the answer string.
std::vector<std::string> top_answers(
    const std::map<std::string, double>& answer_scores,
    const std::vector<std::string>& candidates, size_t j);

}  // namespace descqa

#endif
