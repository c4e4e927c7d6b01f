#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <atomic>
#include <fstream>
#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "error.hpp"
#include "fixtures.hpp"
#include "importance.hpp"
#include "lexicon.hpp"
#include "text.hpp"

using namespace descqa;
using nlohmann::json;

TEST_CASE("lexical overlap scores match the closed formula") {
  LexicalOverlapScorer scorer(default_stopwords());
  auto q = tokenize("What color is the car");
  auto d = tokenize("the red car . the car");
  std::vector<std::string> answers = {"red", "blue car"};
  auto s = scorer.score(q, d, answers, 1);

  REQUIRE(s.question_scores.size() == q.size());
  REQUIRE(s.description_scores.size() == d.size());
  // Occurrences across q + d (lowercase): the=3, car=3, red=1, color=1.
  CHECK(s.question_scores[0] == 0.0);                       // what: stopword
  CHECK(s.question_scores[1] == doctest::Approx(0.5));      // color: 1/(1+1)
  CHECK(s.question_scores[2] == 0.0);                       // is: stopword
  CHECK(s.question_scores[3] == 0.0);                       // the: stopword
  CHECK(s.question_scores[4] == doctest::Approx(1.25));     // car: 1 + 1/4
  CHECK(s.description_scores[1] == doctest::Approx(1.5));   // red: 1 + 1/2
  CHECK(s.description_scores[2] == doctest::Approx(1.25));  // car
  CHECK(s.answer_scores.at("red") == doctest::Approx(1.0));
  CHECK(s.answer_scores.at("blue car") == doctest::Approx(0.5));  // blue absent
}

TEST_CASE("lexical overlap is case-insensitive and deterministic") {
  LexicalOverlapScorer scorer(default_stopwords());
  auto a = scorer.score(tokenize("Red CAR"), tokenize("red car"), {"RED"}, 1);
  auto b = scorer.score(tokenize("Red CAR"), tokenize("red car"), {"RED"}, 2);
  CHECK(a.question_scores == b.question_scores);
  CHECK(a.question_scores[0] == a.description_scores[0]);
}

TEST_CASE("file scorer serves records and validates lengths") {
  auto dir = testfix::temp_dir("importance_file");
  auto path = (dir / "scores.jsonl").string();
  {
    std::ofstream out(path);
    out << json{{"question_id", 5},
                {"question_scores", {0.1, 0.9}},
                {"description_scores", {0.2, 0.3, 0.4}},
                {"answer_scores", {{"yes", 0.8}}}}
        << "\n";
  }
  FileScorer scorer(path);
  CHECK(scorer.size() == 1);
  auto s = scorer.score({"a", "b"}, {"c", "d", "e"}, {"yes"}, 5);
  CHECK(s.question_scores == std::vector<double>{0.1, 0.9});
  CHECK(s.answer_scores.at("yes") == 0.8);

  CHECK_THROWS_AS(scorer.score({"a", "b"}, {"c"}, {"yes"}, 5), Error);  // length
  CHECK_THROWS_AS(scorer.score({"a", "b"}, {"c", "d", "e"}, {"yes"}, 6),
                  Error);  // unknown id
  try {
    scorer.score({"a"}, {"c", "d", "e"}, {"yes"}, 5);
    FAIL("expected error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Data);
  }

  auto bad = (dir / "bad.jsonl").string();
  std::ofstream(bad) << "{\"question_scores\": []}\n";
  CHECK_THROWS_AS(FileScorer{bad}, Error);
  auto nonfinite = (dir / "inf.jsonl").string();
  std::ofstream(nonfinite)
      << "{\"question_id\": 1, \"question_scores\": [1e999], "
         "\"description_scores\": [], \"answer_scores\": {}}\n";
  CHECK_THROWS_AS(FileScorer{nonfinite}, Error);
}

namespace {

struct TestServer {
  httplib::Server server;
  std::thread thread;
  int port = 0;

  explicit TestServer() {
    port = server.bind_to_any_port("127.0.0.1");
    thread = std::thread([this] { server.listen_after_bind(); });
    server.wait_until_ready();
  }
  ~TestServer() {
    server.stop();
    thread.join();
  }
  std::string endpoint() const {
    return "http://127.0.0.1:" + std::to_string(port);
  }
};

}  // namespace

TEST_CASE("service scorer: request shape, one retry, cache") {
  TestServer ts;
  std::atomic<int> calls{0};
  ts.server.Post("/v1/importance", [&](const httplib::Request& req,
                                       httplib::Response& res) {
    int n = ++calls;
    auto body = json::parse(req.body);
    CHECK(body.at("question").get<std::string>() == "is it red?");
    CHECK(body.at("question_id").get<int64_t>() == 3);
    if (n == 1) {  // first attempt fails, the retry succeeds
      res.status = 500;
      return;
    }
    json reply = {{"question_scores", {0.5, 0.5, 0.5}},
                  {"description_scores", {1.0}},
                  {"answer_scores", {{"yes", 0.9}}}};
    res.set_content(reply.dump(), "application/json");
  });

  auto cache_dir = testfix::temp_dir("importance_cache");
  ResponseCache cache(cache_dir.string());
  ServiceScorer scorer(ts.endpoint(), &cache);
  auto q = tokenize("is it red?");
  auto s = scorer.score(q, {"red."}, {"yes"}, 3);
  CHECK(calls.load() == 2);  // failed once, retried
  CHECK(s.question_scores.size() == 3);
  CHECK(s.answer_scores.at("yes") == 0.9);

  // Second identical call is served from the cache.
  auto s2 = scorer.score(q, {"red."}, {"yes"}, 3);
  CHECK(calls.load() == 2);
  CHECK(s2 == s);

  // A fresh scorer against the same cache directory also skips the wire.
  ServiceScorer scorer2(ts.endpoint(), &cache);
  CHECK(scorer2.score(q, {"red."}, {"yes"}, 3) == s);
  CHECK(calls.load() == 2);
}

TEST_CASE("service scorer: persistent failure is a backend error") {
  TestServer ts;
  std::atomic<int> calls{0};
  ts.server.Post("/v1/importance",
                 [&](const httplib::Request&, httplib::Response& res) {
                   ++calls;
                   res.status = 503;
                 });
  ServiceScorer scorer(ts.endpoint());
  try {
    scorer.score({"a"}, {"b"}, {"c"}, 1);
    FAIL("expected backend error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Backend);
  }
  CHECK(calls.load() == 2);

  // Response with wrong lengths is also a backend error.
  TestServer ts2;
  ts2.server.Post("/v1/importance",
                  [&](const httplib::Request&, httplib::Response& res) {
                    json reply = {{"question_scores", {0.5}},
                                  {"description_scores", json::array()},
                                  {"answer_scores", json::object()}};
                    res.set_content(reply.dump(), "application/json");
                  });
  ServiceScorer scorer2(ts2.endpoint());
  try {
    scorer2.score({"a", "b"}, {}, {}, 1);
    FAIL("expected backend error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Backend);
  }
}

TEST_CASE("make_scorer parses backend specs") {
  CHECK(make_scorer("lexical_overlap", default_stopwords())->backend_name() ==
        "lexical_overlap");
  CHECK(make_scorer("", default_stopwords())->backend_name() ==
        "lexical_overlap");
  auto dir = testfix::temp_dir("importance_spec");
  auto path = (dir / "s.jsonl").string();
  std::ofstream(path) << "";
  CHECK(make_scorer("file:" + path, {})->backend_name() == "file");
  CHECK(make_scorer("service:http://127.0.0.1:1", {})->backend_name() ==
        "service");
  CHECK_THROWS_AS(make_scorer("bogus", {}), Error);
}

TEST_CASE("top_answers: ordering, dedup, eligibility") {
  std::map<std::string, double> scores = {
      {"red", 0.9}, {"blue", 0.9}, {"green", 0.5}, {"white", 0.1}};
  std::vector<std::string> candidates = {"Red",   "blue", "RED", "green",
                                         "white", "violet"};  // violet unscored

  auto top2 = top_answers(scores, candidates, 2);
  // Equal scores fall back to lexicographic order.
  CHECK(top2 == std::vector<std::string>{"blue", "red"});

  auto top10 = top_answers(scores, candidates, 10);
  CHECK(top10 == std::vector<std::string>{"blue", "red", "green", "white"});

  CHECK(top_answers(scores, candidates, 0).empty());
  CHECK(top_answers({}, candidates, 3).empty());
}
