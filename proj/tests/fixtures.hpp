#ifndef DESCQA_TESTS_FIXTURES_HPP
#define DESCQA_TESTS_FIXTURES_HPP

// Deterministic synthetic corpus in the standard input schemas. The
// question mix cycles yes/no, number, color and open questions so every
// augmentation technique has material to fire on.

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "corpus_io.hpp"
#include "rng.hpp"
#include "text.hpp"
#include "triplet_builder.hpp"

namespace descqa::testfix {

struct CorpusFiles {
  std::string questions;
  std::string annotations;
  std::string captions;
  std::string narratives;
};

inline const std::vector<std::string>& objects() {
  static const std::vector<std::string> v = {"dog",   "cat",  "giraffe",
                                             "car",   "bench", "umbrella",
                                             "pizza", "truck"};
  return v;
}

inline const std::vector<std::string>& palette() {
  static const std::vector<std::string> v = {"red",  "blue",  "green",
                                             "white", "black", "yellow"};
  return v;
}

struct SampleSpec {
  QuestionRecord question;
  AnnotationRecord annotation;
};

inline std::vector<AnswerEntry> ten_answers(const std::string& majority,
                                            const std::string& minority) {
  std::vector<AnswerEntry> answers;
  for (int i = 0; i < 7; ++i) answers.push_back({majority, "yes"});
  for (int i = 0; i < 3; ++i) answers.push_back({minority, "maybe"});
  return answers;
}

inline SampleSpec make_sample(int index, uint64_t seed) {
  Rng rng(sample_seed(seed, 1000 + index, "fixture"));
  const auto& obj = objects()[rng.below(objects().size())];
  const auto& other_obj = objects()[rng.below(objects().size())];
  const auto& color = palette()[rng.below(palette().size())];

  SampleSpec s;
  s.question.question_id = 1000 + index;
  s.question.image_id = 500 + index / 2;
  s.annotation.question_id = s.question.question_id;
  s.annotation.image_id = s.question.image_id;

  switch (index % 4) {
    case 0:
      s.question.text = "Is there a " + obj + " in the picture?";
      s.annotation.question_type = "is there a";
      s.annotation.answer_type = AnswerType::YesNo;
      s.annotation.multiple_choice_answer = "yes";
      s.annotation.answers = ten_answers("yes", "no");
      break;
    case 1:
      s.question.text = "How many " + obj + "s are there?";
      s.annotation.question_type = "how many";
      s.annotation.answer_type = AnswerType::Number;
      s.annotation.multiple_choice_answer = "2";
      s.annotation.answers = ten_answers("2", "3");
      break;
    case 2:
      s.question.text = "What color is the " + obj + "?";
      s.annotation.question_type = "what color is the";
      s.annotation.answer_type = AnswerType::Other;
      s.annotation.multiple_choice_answer = color;
      s.annotation.answers = ten_answers(color, "gray");
      break;
    default:
      s.question.text = "What is the " + obj + " standing behind?";
      s.annotation.question_type = "what is the";
      s.annotation.answer_type = AnswerType::Other;
      s.annotation.multiple_choice_answer = other_obj;
      s.annotation.answers = ten_answers(other_obj, "fence");
      break;
  }
  return s;
}

// n questions over ceil(n/2) images, 5 captions and one narrative per
// image, written in the standard schemas.
inline CorpusFiles write_corpus(const std::filesystem::path& dir, int n,
                                uint64_t seed = 7) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  nlohmann::json questions = nlohmann::json::array();
  nlohmann::json annotations = nlohmann::json::array();
  nlohmann::json captions = nlohmann::json::array();
  std::string narratives;

  std::vector<int64_t> images;
  for (int i = 0; i < n; ++i) {
    SampleSpec s = make_sample(i, seed);
    questions.push_back({{"question_id", s.question.question_id},
                         {"image_id", s.question.image_id},
                         {"question", s.question.text}});
    nlohmann::json answers = nlohmann::json::array();
    for (size_t a = 0; a < s.annotation.answers.size(); ++a) {
      answers.push_back({{"answer", s.annotation.answers[a].answer},
                         {"answer_confidence", s.annotation.answers[a].confidence},
                         {"answer_id", a + 1}});
    }
    annotations.push_back(
        {{"question_id", s.annotation.question_id},
         {"image_id", s.annotation.image_id},
         {"question_type", s.annotation.question_type},
         {"answer_type", to_string(s.annotation.answer_type)},
         {"multiple_choice_answer", s.annotation.multiple_choice_answer},
         {"answers", answers}});
    if (images.empty() || images.back() != s.question.image_id) {
      images.push_back(s.question.image_id);
    }
  }

  int64_t caption_id = 1;
  for (int64_t image : images) {
    Rng rng(sample_seed(seed, image, "image"));
    for (int c = 0; c < 5; ++c) {
      const auto& obj = objects()[rng.below(objects().size())];
      const auto& color = palette()[rng.below(palette().size())];
      std::string text = "A " + color + " " + obj + " is standing near a " +
                         objects()[rng.below(objects().size())] + ".";
      captions.push_back(
          {{"image_id", image}, {"id", caption_id++}, {"caption", text}});
    }
    const auto& obj = objects()[rng.below(objects().size())];
    const auto& color = palette()[rng.below(palette().size())];
    std::string narr = "In this image there is a " + color + " " + obj +
                       " in the middle. Behind it there is a fence. "
                       "The sky looks " +
                       palette()[rng.below(palette().size())] + ".";
    narratives += nlohmann::json{{"image_id", image}, {"caption", narr}}.dump();
    narratives += "\n";
  }

  CorpusFiles files;
  files.questions = (dir / "questions.json").string();
  files.annotations = (dir / "annotations.json").string();
  files.captions = (dir / "captions.json").string();
  files.narratives = (dir / "narratives.jsonl").string();
  std::ofstream(files.questions) << nlohmann::json{{"questions", questions}};
  std::ofstream(files.annotations)
      << nlohmann::json{{"annotations", annotations}};
  std::ofstream(files.captions) << nlohmann::json{{"annotations", captions}};
  std::ofstream(files.narratives) << narratives;
  return files;
}

// Small relation graph covering the fixture vocabulary.
inline std::string write_relations(const std::filesystem::path& dir) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  std::string path = (dir / "relations.tsv").string();
  std::ofstream out(path);
  out << "dog\thypernym\tanimal\n"
      << "cat\thypernym\tanimal\n"
      << "giraffe\thypernym\tanimal\n"
      << "dog\thyponym\tpuppy\n"
      << "cat\thyponym\tkitten\n"
      << "car\thypernym\tvehicle\n"
      << "truck\thypernym\tvehicle\n"
      << "giraffe\tsynonym\tcamelopard\n"
      << "car\tsynonym\tautomobile\n"
      << "standing\tsynonym\tupright\n"
      << "fence\tsynonym\tbarrier\n"
      << "2\tsynonym\ttwo\n";
  return path;
}

// Embedding table over the fixture vocabulary, spread out so nearest
// neighbors are unambiguous.
inline std::string write_embeddings(const std::filesystem::path& dir) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  std::string path = (dir / "embeddings.txt").string();
  std::ofstream out(path);
  int i = 0;
  auto emit = [&](const std::string& word) {
    out << word << " " << i << " " << i * 2 << " 1\n";
    ++i;
  };
  for (const auto& w : objects()) emit(w);
  emit("camelopard");
  emit("automobile");
  emit("fence");
  emit("tree");
  return path;
}

inline Triplet make_triplet(int64_t qid, const std::string& question,
                            const std::string& description,
                            std::vector<std::string> answers,
                            const std::string& question_type = "what is the",
                            AnswerType answer_type = AnswerType::Other) {
  Triplet t;
  t.question_id = qid;
  t.parent_question_id = qid;
  t.question = tokenize(question);
  t.description = tokenize(description);
  t.answers = std::move(answers);
  t.question_type = question_type;
  t.answer_type = answer_type;
  t.origin = "original";
  return t;
}

inline std::filesystem::path temp_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / "descqa_tests" / name;
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace descqa::testfix

#endif
