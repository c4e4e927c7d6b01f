#ifndef DESCQA_TESTS_DAV_FIXTURE_HPP
#define DESCQA_TESTS_DAV_FIXTURE_HPP

// Hand-built corpus for the replacement-rule suites. Shared between the
// unit tests and the acceptance gate so both replay the same branches.

#include <string>
#include <utility>
#include <vector>

#include "dav_augment.hpp"
#include "fixtures.hpp"
#include "lexicon.hpp"

namespace descqa::davfix {

struct Resources {
  LexicalGraph graph;
  EmbeddingTable embeddings;
  DavConfig config;
  LexicalOverlapScorer scorer{default_stopwords()};

  Resources() {
    graph.add("dog", "hypernym", "animal");
    graph.add("dog", "hyponym", "puppy");
    graph.add("cat", "hypernym", "animal");
    graph.add("car", "hypernym", "vehicle");
    graph.add("car", "synonym", "automobile");
    graph.add("giraffe", "synonym", "camelopard");
    graph.add("fence", "synonym", "barrier");

    embeddings.add("dog", {0, 0});
    embeddings.add("cat", {1, 0});
    embeddings.add("giraffe", {10, 0});
    embeddings.add("camelopard", {10, 1});
    embeddings.add("car", {20, 0});
    embeddings.add("automobile", {20, 1});
    embeddings.add("truck", {21, 0});
    embeddings.add("umbrella", {30, 0});
    embeddings.add("pizza", {40, 0});
    embeddings.add("fence", {50, 0});
    // no entry for "bench": exercises the missing-embedding path

    config.top_d = 3;
    config.top_j = 2;
  }
};

inline std::vector<std::string> answers_mix(
    const std::vector<std::pair<std::string, int>>& spec) {
  std::vector<std::string> out;
  for (const auto& [answer, count] : spec) {
    for (int i = 0; i < count; ++i) out.push_back(answer);
  }
  return out;
}

// 16 handcrafted situations cycled to 50 samples; together they cover
// every rule branch: answers absent from d, relation present/absent,
// duplicate avoidance, color question-type gate, color absent from d,
// object in question directly and via synonym, missing embedding,
// multiple objects, counterfactual prefix kept/zero/total, answer-set
// emptied, empty description.
inline Triplet fixture_sample(int i) {
  int64_t qid = 2000 + i;
  switch (i % 16) {
    case 0:  // tokens are whitespace-delimited, so the "?" is spaced to
             // make "dog" a question token
      return testfix::make_triplet(qid, "Is there a dog ?",
                                   "A dog runs. A cat sits.",
                                   answers_mix({{"yes", 7}, {"no", 3}}),
                                   "is there a", AnswerType::YesNo);
    case 1:
      return testfix::make_triplet(qid, "What animal is shown?",
                                   "A dog near a fence.",
                                   answers_mix({{"dog", 7}, {"cat", 3}}),
                                   "what animal");
    case 2:  // h(dog) = animal already answered: duplicate avoidance
      return testfix::make_triplet(
          qid, "What animal is shown?", "A dog near a fence.",
          answers_mix({{"dog", 6}, {"animal", 2}, {"cat", 2}}), "what animal");
    case 3:  // fence appears in d but has no taxonomy relation
      return testfix::make_triplet(qid, "What is that?", "A fence only.",
                                   answers_mix({{"fence", 10}}), "what is");
    case 4:
      return testfix::make_triplet(qid, "What color is the car?",
                                   "A red car parked.",
                                   answers_mix({{"red", 7}, {"blue", 3}}),
                                   "what color is the");
    case 5:  // color answer in d, but the question type is not a color type
      return testfix::make_triplet(qid, "What color of car?",
                                   "A red car parked.",
                                   answers_mix({{"red", 7}, {"blue", 3}}),
                                   "what color of");
    case 6:  // color type, but the answered color never appears in d
      return testfix::make_triplet(qid, "What color is the car?",
                                   "A shiny car parked.",
                                   answers_mix({{"red", 7}, {"blue", 3}}),
                                   "what color is the");
    case 7:  // three distinct answers: counterfactual keeps at least one
      return testfix::make_triplet(
          qid, "What is the dog behind?", "A dog behind a fence near a cat.",
          answers_mix({{"dog", 4}, {"cat", 3}, {"fence", 3}}), "what is the");
    case 8:  // two distinct answers, both removed: counterfactual skips
      return testfix::make_triplet(qid, "Is the dog asleep?", "A dog sleeps.",
                                   answers_mix({{"yes", 7}, {"no", 3}}),
                                   "is the", AnswerType::YesNo);
    case 9:  // bench has no embedding entry
      return testfix::make_triplet(qid, "Is there a bench?", "A bench stands.",
                                   answers_mix({{"yes", 8}, {"no", 2}}),
                                   "is there a", AnswerType::YesNo);
    case 10:  // object synonym (automobile) in the question
      return testfix::make_triplet(qid, "Is the automobile red?",
                                   "A car parked outside.",
                                   answers_mix({{"no", 6}, {"yes", 4}}),
                                   "is the", AnswerType::YesNo);
    case 11:  // three classes in d: ordinals stay dense in class order
      return testfix::make_triplet(
          qid, "Is there food?", "A pizza near a truck and an umbrella .",
          answers_mix({{"yes", 9}, {"no", 1}}), "is there", AnswerType::YesNo);
    case 12:  // question is exactly its type: nothing maskable
      return testfix::make_triplet(qid, "What color", "A plain wall.",
                                   answers_mix({{"white", 5}, {"beige", 5}}),
                                   "what color");
    case 13:  // type does not prefix the question: no protected tokens
      return testfix::make_triplet(qid, "Are there two dogs here?",
                                   "Two dogs play.",
                                   answers_mix({{"yes", 6}, {"no", 4}}),
                                   "is the", AnswerType::YesNo);
    case 14:  // hyponym(dog) = puppy is answered: only hypernym fires
      return testfix::make_triplet(
          qid, "What animal is shown?", "A dog in grass.",
          answers_mix({{"dog", 6}, {"puppy", 4}}), "what animal");
    default:  // empty description
      return testfix::make_triplet(qid, "What is this?", "",
                                   answers_mix({{"mystery", 10}}), "what is");
  }
}

}  // namespace descqa::davfix

#endif
