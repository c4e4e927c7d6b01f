#ifndef DESCQA_TRIPLET_BUILDER_HPP
#define DESCQA_TRIPLET_BUILDER_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "corpus_io.hpp"
#include "diagnostics.hpp"

namespace descqa {

// One training sample s = (q, d, A). Originals carry the full 10-answer
// multiset; synthetic samples may carry fewer (down to a single answer).
struct Triplet {
  int64_t question_id = 0;
  int64_t parent_question_id = 0;
  std::vector<std::string> question;     // q_1 .. q_Q
  std::vector<std::string> description;  // d_1 .. d_D
  std::vector<std::string> answers;      // multiset A
  std::string question_type;
  AnswerType answer_type = AnswerType::Other;
  std::string origin;  // "original" or the technique name

  bool operator==(const Triplet&) const = default;
};

struct DescriptionMode {
  enum Kind { Captions, Narrative, Whole, None } kind = Whole;
  int caption_count = 5;  // only for Captions, 1..5

  static DescriptionMode whole() { return {Whole, 5}; }
  static DescriptionMode narrative() { return {Narrative, 5}; }
  static DescriptionMode none() { return {None, 5}; }
  static DescriptionMode captions(int k);  // usage error outside 1..5

  // "whole" | "narrative" | "none" | "captions:k" | "captions" (k=5).
  static DescriptionMode parse(const std::string& text);
  std::string name() const;
};

// Description token list for one sample. Whole = narrative then all
// captions in caption_id order; captions(k) = k captions drawn without
// replacement using the seed (all of them, with a diagnostic, when fewer
// exist).
std::vector<std::string> build_description(const RawSample& sample,
                                           const DescriptionMode& mode,
                                           uint64_t seed,
                                           Diagnostics* diag = nullptr);

// "<s> q </s> </s> d </s>" with single spaces; token count Q + D + 4.
std::string assemble_sequence(const std::vector<std::string>& question,
                              const std::vector<std::string>& description);

// Shuffles sentences with the seed, drops floor(rate * D) words from the
// end of the shuffled sequence, then restores original sentence order.
// Survivors are prefixes of their sentences.
std::vector<std::string> truncate_description(
    const std::vector<std::string>& description, double rate, uint64_t seed);

struct TripletBatch {
  std::vector<Triplet> triplets;
  Diagnostics diagnostics;
};

// Element-wise build; per-sample seed derived from (seed, question_id), so
// the result is independent of input partitioning.
TripletBatch make_triplets(const std::vector<RawSample>& samples,
                           const DescriptionMode& mode, uint64_t seed);

// Line-delimited triplet file. First line is a header record carrying tool
// version and seed; each following line is one triplet.
struct TripletFileHeader {
  std::string tool_version;
  uint64_t seed = 0;
  std::string mode;         // description mode name, empty when n/a
  std::string config_hash;  // hex, empty when n/a

  bool operator==(const TripletFileHeader&) const = default;
};

std::string header_to_line(const TripletFileHeader& header);
std::string triplet_to_line(const Triplet& t);
Triplet triplet_from_line(const std::string& line, size_t line_no = 0);

struct TripletFile {
  TripletFileHeader header;
  std::vector<Triplet> triplets;
};

void write_triplet_file(const std::string& path, const TripletFileHeader& header,
                        const std::vector<Triplet>& triplets);
void write_triplet_file(std::ostream& out, const TripletFileHeader& header,
                        const std::vector<Triplet>& triplets);
TripletFile read_triplet_file(const std::string& path);

}  // namespace descqa

#endif
