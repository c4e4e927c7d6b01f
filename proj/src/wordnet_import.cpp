#include "wordnet_import.hpp"

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <unordered_map>
#include <vector>

#include "error.hpp"
#include "text.hpp"

namespace descqa {

namespace {

struct Synset {
  std::vector<std::string> words;     // data-file order, underscores kept
  std::vector<int64_t> hypernyms;     // pointer order, @ and @i
  std::vector<int64_t> hyponyms;      // pointer order, ~ and ~i
};

bool is_single_token(const std::string& w) {
  return w.find('_') == std::string::npos && !w.empty();
}

// A lemma may carry a syntactic marker suffix like "(a)"; strip it.
std::string strip_marker(std::string w) {
  size_t paren = w.find('(');
  if (paren != std::string::npos) w.erase(paren);
  return w;
}

// data.pos line:
//   offset lex_filenum ss_type w_cnt word lex_id [word lex_id]...
//   p_cnt [symbol offset pos source/target]... | gloss
bool parse_data_line(const std::string& line, int64_t* offset, Synset* out) {
  std::istringstream in(line);
  std::string lex_filenum, ss_type, w_cnt_hex;
  if (!(in >> *offset >> lex_filenum >> ss_type >> w_cnt_hex)) return false;
  long w_cnt = strtol(w_cnt_hex.c_str(), nullptr, 16);
  if (w_cnt <= 0) return false;
  for (long i = 0; i < w_cnt; ++i) {
    std::string word, lex_id;
    if (!(in >> word >> lex_id)) return false;
    out->words.push_back(strip_marker(std::move(word)));
  }
  long p_cnt = 0;
  if (!(in >> p_cnt)) return true;  // no pointer section
  for (long i = 0; i < p_cnt; ++i) {
    std::string symbol, pos, source_target;
    int64_t target = 0;
    if (!(in >> symbol >> target >> pos >> source_target)) return false;
    if (symbol == "@" || symbol == "@i") {
      out->hypernyms.push_back(target);
    } else if (symbol == "~" || symbol == "~i") {
      out->hyponyms.push_back(target);
    }
  }
  return true;
}

// index.pos line:
//   lemma pos synset_cnt p_cnt [symbol]... sense_cnt tagsense_cnt offset...
bool parse_index_line(const std::string& line, std::string* lemma,
                      std::vector<int64_t>* offsets) {
  std::istringstream in(line);
  std::string pos;
  long synset_cnt = 0, p_cnt = 0;
  if (!(in >> *lemma >> pos >> synset_cnt >> p_cnt)) return false;
  for (long i = 0; i < p_cnt; ++i) {
    std::string symbol;
    if (!(in >> symbol)) return false;
  }
  long sense_cnt = 0, tagsense_cnt = 0;
  if (!(in >> sense_cnt >> tagsense_cnt)) return false;
  int64_t offset = 0;
  while (in >> offset) offsets->push_back(offset);
  return !offsets->empty();
}

struct PosFiles {
  const char* suffix;
  bool has_taxonomy;  // only noun and verb data carry @ / ~ pointers
};

constexpr PosFiles kPosFiles[] = {
    {"noun", true}, {"verb", true}, {"adj", false}, {"adv", false}};

}  // namespace

size_t import_wordnet(const std::string& wordnet_dir,
                      const std::string& out_path, Diagnostics* diag) {
  namespace fs = std::filesystem;
  std::ofstream out(out_path);
  if (!out) data_error("cannot write relation file: " + out_path);

  size_t lines_written = 0;
  size_t files_seen = 0;
  for (const auto& pos : kPosFiles) {
    fs::path data_path = fs::path(wordnet_dir) / (std::string("data.") + pos.suffix);
    fs::path index_path = fs::path(wordnet_dir) / (std::string("index.") + pos.suffix);
    std::ifstream data_in(data_path);
    std::ifstream index_in(index_path);
    if (!data_in || !index_in) continue;
    ++files_seen;

    std::unordered_map<int64_t, Synset> synsets;
    std::string line;
    size_t line_no = 0;
    while (std::getline(data_in, line)) {
      ++line_no;
      if (line.empty() || line[0] == ' ') continue;  // license header
      int64_t offset = 0;
      Synset synset;
      if (!parse_data_line(line, &offset, &synset)) {
        if (diag) {
          diag->add("malformed_synset",
                    data_path.string() + ":" + std::to_string(line_no));
        }
        continue;
      }
      synsets.emplace(offset, std::move(synset));
    }

    auto first_word_of = [&](int64_t offset) -> std::string {
      auto it = synsets.find(offset);
      if (it == synsets.end()) return {};
      for (const auto& w : it->second.words) {
        if (is_single_token(w)) return lower(w);
      }
      return {};
    };

    line_no = 0;
    while (std::getline(index_in, line)) {
      ++line_no;
      if (line.empty() || line[0] == ' ') continue;
      std::string lemma;
      std::vector<int64_t> offsets;
      if (!parse_index_line(line, &lemma, &offsets)) {
        if (diag) {
          diag->add("malformed_index_entry",
                    index_path.string() + ":" + std::to_string(line_no));
        }
        continue;
      }
      if (!is_single_token(lemma)) continue;
      auto it = synsets.find(offsets.front());
      if (it == synsets.end()) {
        if (diag) diag->add("dangling_sense", lemma);
        continue;
      }
      const Synset& first_sense = it->second;
      std::string key = lower(lemma);

      std::set<std::string> emitted;
      for (const auto& w : first_sense.words) {
        if (!is_single_token(w)) continue;
        std::string syn = lower(w);
        if (syn == key || !emitted.insert(syn).second) continue;
        out << key << '\t' << "synonym" << '\t' << syn << '\n';
        ++lines_written;
      }
      if (pos.has_taxonomy) {
        emitted.clear();
        for (int64_t target : first_sense.hypernyms) {
          std::string w = first_word_of(target);
          if (w.empty() || w == key || !emitted.insert(w).second) continue;
          out << key << '\t' << "hypernym" << '\t' << w << '\n';
          ++lines_written;
        }
        emitted.clear();
        for (int64_t target : first_sense.hyponyms) {
          std::string w = first_word_of(target);
          if (w.empty() || w == key || !emitted.insert(w).second) continue;
          out << key << '\t' << "hyponym" << '\t' << w << '\n';
          ++lines_written;
        }
      }
    }
  }
  if (files_seen == 0) {
    data_error("no index/data file pairs under: " + wordnet_dir);
  }
  return lines_written;
}

}  // namespace descqa
