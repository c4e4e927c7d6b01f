#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <set>
#include <sstream>

#include "error.hpp"
#include "fixtures.hpp"
#include "lexicon.hpp"
#include "wordnet_import.hpp"

using namespace descqa;

namespace {

std::set<std::string> read_lines(const std::string& path) {
  std::ifstream in(path);
  std::set<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty()) lines.insert(line);
  }
  return lines;
}

void write_mini_wordnet(const std::filesystem::path& dir) {
  // Three noun synsets: dog < animal, dog > puppy; animal has a co-word.
  std::ofstream(dir / "data.noun")
      << "  1 license header line\n"
      << "00001740 05 n 01 dog 0 002 @ 00001850 n 0000 ~ 00001950 n 0000 | "
         "a domesticated canine\n"
      << "00001850 05 n 03 animal 0 creature 0 living_thing 0 001 ~ 00001740 "
         "n 0000 | a living organism\n"
      << "00001950 05 n 01 puppy 0 001 @ 00001740 n 0000 | a young dog\n"
      << "garbage line that does not parse\n";
  std::ofstream(dir / "index.noun")
      << "  1 license header line\n"
      << "dog n 2 2 @ ~ 2 1 00001740 00001850\n"  // first sense wins
      << "animal n 1 1 ~ 1 1 00001850\n"
      << "puppy n 1 1 @ 1 1 00001950\n"
      << "hot_dog n 1 1 @ 1 1 00001740\n"   // multi-word lemma skipped
      << "ghost n 1 1 @ 1 1 00009999\n"     // offset with no synset
      << "broken index line\n";
  // Verb pair exercised for taxonomy too.
  std::ofstream(dir / "data.verb")
      << "00002000 29 v 02 run 0 sprint(a) 0 001 ~ 00002100 v 0000 | move fast\n"
      << "00002100 29 v 01 jog 0 000 | run slowly\n";
  std::ofstream(dir / "index.verb") << "run v 1 1 ~ 1 1 00002000\n";
  // Adjectives contribute only synonyms.
  std::ofstream(dir / "data.adj")
      << "00003000 00 a 02 red 0 reddish 0 000 | of the color\n";
  std::ofstream(dir / "index.adj") << "red a 1 0 1 1 00003000\n";
}

}  // namespace

TEST_CASE("imports first-sense relations from database files") {
  auto dir = testfix::temp_dir("wordnet_import");
  write_mini_wordnet(dir);
  auto out_path = (dir / "relations.tsv").string();

  Diagnostics diag;
  size_t written = import_wordnet(dir.string(), out_path, &diag);
  auto lines = read_lines(out_path);
  CHECK(written == lines.size());

  CHECK(lines.count("dog\thypernym\tanimal"));
  CHECK(lines.count("dog\thyponym\tpuppy"));
  CHECK(lines.count("animal\tsynonym\tcreature"));  // co-word, single-token only
  CHECK(lines.count("animal\thyponym\tdog"));
  CHECK(lines.count("puppy\thypernym\tdog"));
  CHECK(lines.count("run\tsynonym\tsprint"));  // marker "(a)" stripped
  CHECK(lines.count("run\thyponym\tjog"));
  CHECK(lines.count("red\tsynonym\treddish"));

  // No relation for the second sense, multi-word lemmas or co-words.
  for (const auto& line : lines) {
    CHECK(line.find("hot_dog") == std::string::npos);
    CHECK(line.find("living_thing") == std::string::npos);
    CHECK(line.find("creature\t") != 0);  // co-words don't get their own entry
  }
  CHECK(!lines.count("dog\tsynonym\tanimal"));

  CHECK(diag.count("malformed_synset") == 1);
  CHECK(diag.count("malformed_index_entry") == 1);
  CHECK(diag.count("dangling_sense") == 1);

  // The output feeds straight into the relation graph.
  auto graph = LexicalGraph::load(out_path);
  CHECK(graph.hypernym_of("dog") == "animal");
  CHECK(graph.hyponym_of("animal") == "dog");
  CHECK(graph.synonyms_of("red") == std::vector<std::string>{"reddish"});
}

TEST_CASE("a directory without any database pair is a data error") {
  auto dir = testfix::temp_dir("wordnet_empty");
  try {
    import_wordnet(dir.string(), (dir / "out.tsv").string());
    FAIL("expected data error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Data);
  }
}

TEST_CASE("import is deterministic") {
  auto dir = testfix::temp_dir("wordnet_det");
  write_mini_wordnet(dir);
  auto out1 = (dir / "r1.tsv").string();
  auto out2 = (dir / "r2.tsv").string();
  import_wordnet(dir.string(), out1);
  import_wordnet(dir.string(), out2);
  std::ifstream a(out1), b(out2);
  std::stringstream sa, sb;
  sa << a.rdbuf();
  sb << b.rdbuf();
  CHECK(sa.str() == sb.str());
  CHECK(!sa.str().empty());
}
