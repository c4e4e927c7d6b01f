#include "triplet_builder.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include <json.hpp>

#include "error.hpp"
#include "rng.hpp"
#include "text.hpp"

using nlohmann::json;

namespace descqa {

DescriptionMode DescriptionMode::captions(int k) {
  if (k < 1 || k > 5) {
    usage_error("caption count must be in 1..5, got " + std::to_string(k));
  }
  return {Captions, k};
}

DescriptionMode DescriptionMode::parse(const std::string& text) {
  std::string t = lower(trim(text));
  if (t == "whole") return whole();
  if (t == "narrative") return narrative();
  if (t == "none") return none();
  if (t == "captions") return captions(5);
  if (t.rfind("captions:", 0) == 0) {
    int k = 0;
    try {
      k = std::stoi(t.substr(9));
    } catch (const std::exception&) {
      usage_error("bad description mode: " + text);
    }
    return captions(k);
  }
  usage_error("bad description mode: " + text);
}

std::string DescriptionMode::name() const {
  switch (kind) {
    case Whole: return "whole";
    case Narrative: return "narrative";
    case None: return "none";
    case Captions: return "captions:" + std::to_string(caption_count);
  }
  return "whole";
}

std::vector<std::string> build_description(const RawSample& sample,
                                           const DescriptionMode& mode,
                                           uint64_t seed, Diagnostics* diag) {
  std::vector<std::string> out;
  switch (mode.kind) {
    case DescriptionMode::None:
      return out;
    case DescriptionMode::Narrative:
      return tokenize(sample.narrative);
    case DescriptionMode::Whole: {
      out = tokenize(sample.narrative);
      for (const auto& caption : sample.captions) {
        auto toks = tokenize(caption);
        out.insert(out.end(), toks.begin(), toks.end());
      }
      return out;
    }
    case DescriptionMode::Captions: {
      size_t want = static_cast<size_t>(mode.caption_count);
      size_t have = sample.captions.size();
      if (have < want) {
        if (diag) {
          diag->add("caption_shortfall",
                    "question " + std::to_string(sample.question_id) + " has " +
                        std::to_string(have) + " captions, wanted " +
                        std::to_string(want));
        }
        want = have;
      }
      std::vector<size_t> order(have);
      std::iota(order.begin(), order.end(), size_t{0});
      Rng rng(seed);
      // Partial Fisher-Yates: the first `want` slots are a uniform draw
      // without replacement, in draw order.
      for (size_t i = 0; i < want; ++i) {
        size_t j = i + static_cast<size_t>(rng.below(have - i));
        std::swap(order[i], order[j]);
      }
      for (size_t i = 0; i < want; ++i) {
        auto toks = tokenize(sample.captions[order[i]]);
        out.insert(out.end(), toks.begin(), toks.end());
      }
      return out;
    }
  }
  return out;
}

std::string assemble_sequence(const std::vector<std::string>& question,
                              const std::vector<std::string>& description) {
  std::vector<std::string> tokens;
  tokens.reserve(question.size() + description.size() + 4);
  tokens.push_back("<s>");
  tokens.insert(tokens.end(), question.begin(), question.end());
  tokens.push_back("</s>");
  tokens.push_back("</s>");
  tokens.insert(tokens.end(), description.begin(), description.end());
  tokens.push_back("</s>");
  return join_tokens(tokens);
}

std::vector<std::string> truncate_description(
    const std::vector<std::string>& description, double rate, uint64_t seed) {
  if (rate < 0.0 || rate > 1.0) {
    usage_error("truncation rate must be in [0,1], got " + std::to_string(rate));
  }
  size_t total = description.size();
  // The epsilon keeps grid rates like 0.3 * 10 from flooring to 2.
  auto drop = static_cast<size_t>(std::floor(rate * static_cast<double>(total) + 1e-9));
  if (drop == 0) return description;
  if (drop >= total) return {};

  auto sentences = split_sentences(description);
  std::vector<size_t> order(sentences.size());
  std::iota(order.begin(), order.end(), size_t{0});
  Rng rng(seed);
  rng.shuffle(order);

  // Words are removed from the end of the shuffled sequence, so each
  // sentence keeps a prefix: full for early shuffle positions, partial for
  // the one straddling the cut, empty past it.
  size_t keep_total = total - drop;
  std::vector<size_t> keep(sentences.size(), 0);
  size_t used = 0;
  for (size_t idx : order) {
    size_t len = sentences[idx].size();
    size_t take = std::min(len, keep_total - used);
    keep[idx] = take;
    used += take;
    if (used == keep_total) break;
  }

  std::vector<std::string> out;
  out.reserve(keep_total);
  for (size_t i = 0; i < sentences.size(); ++i) {
    out.insert(out.end(), sentences[i].begin(),
               sentences[i].begin() + static_cast<ptrdiff_t>(keep[i]));
  }
  return out;
}

TripletBatch make_triplets(const std::vector<RawSample>& samples,
                           const DescriptionMode& mode, uint64_t seed) {
  TripletBatch batch;
  batch.triplets.reserve(samples.size());
  for (const auto& sample : samples) {
    Triplet t;
    t.question_id = sample.question_id;
    t.parent_question_id = sample.question_id;
    t.question = tokenize(sample.question);
    t.description = build_description(
        sample, mode, sample_seed(seed, sample.question_id, "build"),
        &batch.diagnostics);
    t.answers.reserve(sample.answers.size());
    for (const auto& a : sample.answers) t.answers.push_back(a.answer);
    t.question_type = sample.question_type;
    t.answer_type = sample.answer_type;
    t.origin = "original";
    batch.triplets.push_back(std::move(t));
  }
  return batch;
}

std::string header_to_line(const TripletFileHeader& header) {
  json j;
  j["record"] = "header";
  j["tool_version"] = header.tool_version;
  j["seed"] = header.seed;
  if (!header.mode.empty()) j["mode"] = header.mode;
  if (!header.config_hash.empty()) j["config_hash"] = header.config_hash;
  return j.dump();
}

std::string triplet_to_line(const Triplet& t) {
  json j;
  j["question_id"] = t.question_id;
  j["parent_question_id"] = t.parent_question_id;
  j["question"] = join_tokens(t.question);
  j["description"] = join_tokens(t.description);
  j["answers"] = t.answers;
  j["question_type"] = t.question_type;
  j["answer_type"] = to_string(t.answer_type);
  j["origin"] = t.origin;
  j["sequence"] = assemble_sequence(t.question, t.description);
  return j.dump();
}

static std::string line_label(size_t line_no) {
  return line_no ? " at line " + std::to_string(line_no) : "";
}

Triplet triplet_from_line(const std::string& line, size_t line_no) {
  json j = json::parse(line, nullptr, false);
  if (j.is_discarded() || !j.is_object()) {
    data_error("malformed triplet record" + line_label(line_no));
  }
  Triplet t;
  try {
    t.question_id = j.at("question_id").get<int64_t>();
    t.parent_question_id = j.at("parent_question_id").get<int64_t>();
    t.question = tokenize(j.at("question").get<std::string>());
    t.description = tokenize(j.at("description").get<std::string>());
    t.answers = j.at("answers").get<std::vector<std::string>>();
    t.question_type = j.at("question_type").get<std::string>();
    auto at = answer_type_from_string(j.at("answer_type").get<std::string>());
    if (!at) data_error("unknown answer_type" + line_label(line_no));
    t.answer_type = *at;
    t.origin = j.at("origin").get<std::string>();
  } catch (const json::exception& e) {
    data_error("bad triplet record" + line_label(line_no) + ": " + e.what());
  }
  return t;
}

void write_triplet_file(std::ostream& out, const TripletFileHeader& header,
                        const std::vector<Triplet>& triplets) {
  out << header_to_line(header) << '\n';
  for (const auto& t : triplets) out << triplet_to_line(t) << '\n';
}

void write_triplet_file(const std::string& path, const TripletFileHeader& header,
                        const std::vector<Triplet>& triplets) {
  std::ofstream out(path, std::ios::binary);
  if (!out) data_error("cannot write triplet file: " + path);
  write_triplet_file(out, header, triplets);
  if (!out) data_error("write failed: " + path);
}

TripletFile read_triplet_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) data_error("cannot open triplet file: " + path);
  TripletFile file;
  std::string line;
  size_t line_no = 0;
  bool saw_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    if (!saw_header) {
      json j = json::parse(line, nullptr, false);
      if (j.is_discarded() || !j.is_object() ||
          j.value("record", "") != "header") {
        data_error("triplet file missing header record: " + path);
      }
      file.header.tool_version = j.value("tool_version", "");
      file.header.seed = j.value("seed", uint64_t{0});
      file.header.mode = j.value("mode", "");
      file.header.config_hash = j.value("config_hash", "");
      saw_header = true;
      continue;
    }
    file.triplets.push_back(triplet_from_line(line, line_no));
  }
  if (!saw_header) data_error("triplet file missing header record: " + path);
  return file;
}

}  // namespace descqa
