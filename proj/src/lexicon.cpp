#include "lexicon.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>

#include "error.hpp"
#include "text.hpp"

namespace descqa {

static std::vector<std::string> split_tabs(const std::string& line) {
  std::vector<std::string> fields;
  size_t start = 0;
  while (true) {
    size_t tab = line.find('\t', start);
    if (tab == std::string::npos) {
      fields.push_back(line.substr(start));
      break;
    }
    fields.push_back(line.substr(start, tab - start));
    start = tab + 1;
  }
  return fields;
}

LexicalGraph LexicalGraph::load(const std::string& path, Diagnostics* diag) {
  std::ifstream in(path);
  if (!in) data_error("cannot open lexical relation file: " + path);
  LexicalGraph graph;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    auto fields = split_tabs(line);
    if (fields.size() != 3) {
      if (diag) diag->add("malformed_relation", path + ":" + std::to_string(line_no));
      continue;
    }
    graph.add(fields[0], fields[1], fields[2], diag);
  }
  return graph;
}

void LexicalGraph::add(std::string_view word, std::string_view relation,
                       std::string_view target, Diagnostics* diag) {
  std::string w = lower(trim(word));
  std::string t = lower(trim(target));
  if (w.empty() || t.empty()) {
    if (diag) diag->add("malformed_relation", "empty word or target");
    return;
  }
  if (relation != "synonym" && w == t) {
    // A word may not be its own hypernym or hyponym.
    if (diag) diag->add("self_relation", w);
    return;
  }
  auto& entry = entries_[w];
  std::vector<std::string>* list = nullptr;
  if (relation == "synonym") {
    if (w == t) return;  // harmless, just drop
    list = &entry.synonyms;
  } else if (relation == "hypernym") {
    list = &entry.hypernyms;
  } else if (relation == "hyponym") {
    list = &entry.hyponyms;
  } else {
    if (diag) diag->add("unknown_relation", std::string(relation));
    return;
  }
  if (std::find(list->begin(), list->end(), t) == list->end()) {
    list->push_back(std::move(t));
  }
}

const RelationEntry* LexicalGraph::find(std::string_view word) const {
  auto it = entries_.find(lower(trim(word)));
  return it == entries_.end() ? nullptr : &it->second;
}

std::optional<std::string> LexicalGraph::hypernym_of(std::string_view word) const {
  const RelationEntry* e = find(word);
  if (!e || e->hypernyms.empty()) return std::nullopt;
  return e->hypernyms.front();
}

std::optional<std::string> LexicalGraph::hyponym_of(std::string_view word) const {
  const RelationEntry* e = find(word);
  if (!e || e->hyponyms.empty()) return std::nullopt;
  return e->hyponyms.front();
}

std::vector<std::string> LexicalGraph::synonyms_of(std::string_view word) const {
  const RelationEntry* e = find(word);
  return e ? e->synonyms : std::vector<std::string>{};
}

EmbeddingTable EmbeddingTable::load(const std::string& path, Diagnostics* diag) {
  std::ifstream in(path);
  if (!in) data_error("cannot open embedding file: " + path);
  EmbeddingTable table;
  std::string line;
  size_t line_no = 0;
  std::vector<float> vec;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    size_t space = line.find(' ');
    if (space == std::string::npos || space == 0) {
      if (diag) diag->add("malformed_embedding", path + ":" + std::to_string(line_no));
      continue;
    }
    std::string word = line.substr(0, space);
    vec.clear();
    const char* p = line.data() + space + 1;
    const char* end = line.data() + line.size();
    bool bad = false;
    while (p < end) {
      while (p < end && *p == ' ') ++p;
      if (p >= end) break;
      float v = 0.0f;
      auto res = std::from_chars(p, end, v);
      if (res.ec != std::errc()) {
        bad = true;
        break;
      }
      vec.push_back(v);
      p = res.ptr;
    }
    if (bad || vec.empty()) {
      if (diag) diag->add("malformed_embedding", path + ":" + std::to_string(line_no));
      continue;
    }
    if (table.dim_ == 0) table.dim_ = vec.size();
    if (vec.size() != table.dim_) {
      if (diag) {
        diag->add("dimension_mismatch",
                  path + ":" + std::to_string(line_no) + " has " +
                      std::to_string(vec.size()) + " values, expected " +
                      std::to_string(table.dim_));
      }
      continue;
    }
    table.add(word, vec);
  }
  if (table.size() == 0) data_error("empty embedding table: " + path);
  return table;
}

void EmbeddingTable::add(std::string_view word, const std::vector<float>& vec) {
  if (dim_ == 0) dim_ = vec.size();
  if (vec.size() != dim_) data_error("embedding dimension mismatch for '" +
                                     std::string(word) + "'");
  std::string w(word);
  if (index_.count(w)) return;  // vocabulary has no duplicates; first wins
  index_.emplace(w, vocab_.size());
  vocab_.push_back(std::move(w));
  data_.insert(data_.end(), vec.begin(), vec.end());
}

std::optional<size_t> EmbeddingTable::index_of(std::string_view word) const {
  auto it = index_.find(std::string(word));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::span<const float> EmbeddingTable::vector_at(size_t index) const {
  return {data_.data() + index * dim_, dim_};
}

std::optional<std::string> nearest_adversarial(
    std::string_view word, const std::set<std::string>& exclusions,
    const EmbeddingTable& table) {
  auto query_index = table.index_of(word);
  if (!query_index) return std::nullopt;
  std::span<const float> query = table.vector_at(*query_index);

  double best = std::numeric_limits<double>::infinity();
  size_t best_index = table.size();
  for (size_t i = 0; i < table.size(); ++i) {
    const std::string& candidate = table.vocabulary()[i];
    if (i == *query_index || candidate == word || exclusions.count(candidate)) {
      continue;
    }
    std::span<const float> v = table.vector_at(i);
    // Squared distance with early abort once the running sum passes the
    // best seen; strict < keeps the earliest vocabulary entry on ties.
    double sum = 0.0;
    bool pruned = false;
    for (size_t k = 0; k < v.size(); ++k) {
      double d = static_cast<double>(query[k]) - static_cast<double>(v[k]);
      sum += d * d;
      if (sum >= best) {
        pruned = true;
        break;
      }
    }
    if (!pruned && sum < best) {
      best = sum;
      best_index = i;
    }
  }
  if (best_index == table.size()) return std::nullopt;
  return table.vocabulary()[best_index];
}

bool ColorSet::contains(std::string_view word) const {
  std::string w = lower(trim(word));
  return std::find(colors.begin(), colors.end(), w) != colors.end();
}

ColorSet ColorSet::default_set() {
  return ColorSet{{"black", "white", "red", "green", "blue", "yellow", "orange",
                   "purple", "pink", "brown", "gray", "gold", "silver", "beige",
                   "tan"}};
}

std::vector<std::string> load_word_list_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) data_error("cannot open word list: " + path);
  std::vector<std::string> words;
  std::string line;
  while (std::getline(in, line)) {
    std::string w = lower(trim(line));
    if (w.empty() || w[0] == '#') continue;
    if (std::find(words.begin(), words.end(), w) == words.end()) {
      words.push_back(std::move(w));
    }
  }
  return words;
}

ColorSet ColorSet::load(const std::string& path) {
  ColorSet set{load_word_list_file(path)};
  if (set.colors.size() < 2) {
    data_error("color set needs at least 2 entries: " + path);
  }
  return set;
}

bool QuestionTypeSet::contains(std::string_view question_type) const {
  return types.count(lower(trim(question_type))) > 0;
}

QuestionTypeSet QuestionTypeSet::default_color_types() {
  return QuestionTypeSet{{"what color", "what color are the", "what color is",
                          "what color is the"}};
}

QuestionTypeSet QuestionTypeSet::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) data_error("cannot open question-type list: " + path);
  QuestionTypeSet set;
  std::string line;
  while (std::getline(in, line)) {
    std::string t = lower(trim(line));
    if (!t.empty() && t[0] != '#') set.types.insert(std::move(t));
  }
  return set;
}

std::vector<std::string> ObjectClassSet::synonyms_for(
    std::string_view object_class, const LexicalGraph& graph) const {
  std::string key = lower(trim(object_class));
  std::vector<std::string> out = graph.synonyms_of(key);
  auto it = aliases.find(key);
  if (it != aliases.end()) {
    for (const auto& alias : it->second) {
      if (std::find(out.begin(), out.end(), alias) == out.end()) {
        out.push_back(alias);
      }
    }
  }
  return out;
}

ObjectClassSet ObjectClassSet::default_set() {
  ObjectClassSet set;
  set.classes = {
      "person",        "bicycle",      "car",           "motorcycle",
      "airplane",      "bus",          "train",         "truck",
      "boat",          "traffic light", "fire hydrant",  "stop sign",
      "parking meter", "bench",        "bird",          "cat",
      "dog",           "horse",        "sheep",         "cow",
      "elephant",      "bear",         "zebra",         "giraffe",
      "backpack",      "umbrella",     "handbag",       "tie",
      "suitcase",      "frisbee",      "skis",          "snowboard",
      "sports ball",   "kite",         "baseball bat",  "baseball glove",
      "skateboard",    "surfboard",    "tennis racket", "bottle",
      "wine glass",    "cup",          "fork",          "knife",
      "spoon",         "bowl",         "banana",        "apple",
      "sandwich",      "orange",       "broccoli",      "carrot",
      "hot dog",       "pizza",        "donut",         "cake",
      "chair",         "couch",        "potted plant",  "bed",
      "dining table",  "toilet",       "tv",            "laptop",
      "mouse",         "remote",       "keyboard",      "cell phone",
      "microwave",     "oven",         "toaster",       "sink",
      "refrigerator",  "book",         "clock",         "vase",
      "scissors",      "teddy bear",   "hair drier",    "toothbrush"};
  set.aliases = {
      {"airplane", {"plane", "aeroplane", "jet"}},
      {"bicycle", {"bike"}},
      {"car", {"automobile"}},
      {"cell phone", {"cellphone", "mobile", "phone"}},
      {"couch", {"sofa"}},
      {"motorcycle", {"motorbike"}},
      {"refrigerator", {"fridge"}},
      {"remote", {"remote control", "controller"}},
      {"tv", {"television", "telly"}},
  };
  return set;
}

ObjectClassSet ObjectClassSet::load(const std::string& path) {
  ObjectClassSet set;
  set.classes = load_word_list_file(path);
  if (set.classes.empty()) data_error("empty object class list: " + path);
  return set;
}

void ObjectClassSet::load_aliases(const std::string& path) {
  std::ifstream in(path);
  if (!in) data_error("cannot open alias file: " + path);
  std::string line;
  while (std::getline(in, line)) {
    if (trim(line).empty() || trim(line)[0] == '#') continue;
    auto fields = split_tabs(line);
    if (fields.size() != 2) continue;
    std::string cls = lower(trim(fields[0]));
    std::string alias = lower(trim(fields[1]));
    if (cls.empty() || alias.empty() || cls == alias) continue;
    auto& list = aliases[cls];
    if (std::find(list.begin(), list.end(), alias) == list.end()) {
      list.push_back(std::move(alias));
    }
  }
}

bool is_color_question(std::string_view question_type,
                       const QuestionTypeSet& types) {
  return types.contains(question_type);
}

const std::vector<std::string>& default_stopwords() {
  // 50 function words; data/stopwords.txt mirrors this list.
  static const std::vector<std::string> words = {
      "a",     "an",    "the",   "is",    "are",   "was",   "were",  "be",
      "been",  "being", "am",    "do",    "does",  "did",   "to",    "of",
      "in",    "on",    "at",    "by",    "for",   "with",  "about", "from",
      "up",    "down",  "out",   "off",   "over",  "under", "again", "there",
      "here",  "what",  "which", "who",   "whom",  "this",  "that",  "these",
      "those", "it",    "its",   "and",   "or",    "but",   "if",    "then",
      "so",    "not"};
  return words;
}

}  // namespace descqa
