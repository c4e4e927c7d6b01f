// Command-line front end. Talks to the pipeline exclusively through the
// C API in descqa.h; exit code equals the descqa_status of the failing
// call (0 success, 1 usage, 2 data, 3 backend).

#include <cstdio>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <descqa.h>

namespace {

// Flags forwarded into the configuration only when the user passed them,
// so config-file values survive unless explicitly overridden.
struct Forwarded {
  CLI::Option* option = nullptr;
  std::string key;
  std::string* value = nullptr;
};

int fail(descqa_session* session, descqa_status rc) {
  std::fprintf(stderr, "error: %s\n", descqa_last_error(session));
  descqa_session_free(session);
  return static_cast<int>(rc);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Build, augment, truncate and score description-based QA data"};
  app.require_subcommand(1);
  app.set_version_flag("--version", descqa_version());

  std::vector<std::string> config_files;
  app.add_option("--config", config_files,
                 "configuration file with `key = value` lines (repeatable)");
  std::vector<std::string> sets;
  app.add_option("--set", sets,
                 "override one configuration key, as KEY=VALUE (repeatable)");

  std::vector<Forwarded> forwarded;
  std::vector<std::unique_ptr<std::string>> storage;
  auto forward = [&](CLI::App* cmd, const std::string& flag,
                     const std::string& key, const std::string& help) {
    storage.push_back(std::make_unique<std::string>());
    Forwarded f;
    f.value = storage.back().get();
    f.key = key;
    f.option = cmd->add_option(flag, *f.value, help);
    forwarded.push_back(f);
  };

  forward(&app, "--seed", "seed", "global random seed");
  forward(&app, "--shards", "shards", "number of deterministic shards");
  forward(&app, "--threads", "threads", "worker threads (default: shards)");
  forward(&app, "--out", "output.dir", "output directory");

  CLI::App* build = app.add_subcommand(
      "build", "join the corpora and write the triplet file");
  forward(build, "--mode", "build.mode",
          "description mode: whole | narrative | none | captions:<k>");
  forward(build, "--questions", "corpus.questions", "questions JSON file");
  forward(build, "--annotations", "corpus.annotations", "annotations JSON file");
  forward(build, "--captions", "corpus.captions",
          "caption JSON file(s), comma-separated");
  forward(build, "--narratives", "corpus.narratives",
          "narrative JSONL file(s), comma-separated");

  CLI::App* augment = app.add_subcommand(
      "augment", "write one synthetic triplet file for a technique");
  std::string technique;
  augment->add_option("technique", technique,
                      "hyponym | hypernym | color_inversion | adversarial | "
                      "css_question | css_description | eda_q | eda_d | "
                      "cwr_q | cwr_d | cwi_q | cwi_d | bt_q | bt_d")
      ->required();
  forward(augment, "--input", "augment.input", "triplet file to augment");

  CLI::App* trunc = app.add_subcommand(
      "truncate", "write truncated copies of a triplet file, one per rate");
  forward(trunc, "--input", "truncate.input", "triplet file to truncate");
  forward(trunc, "--rates", "truncate.rates",
          "comma-separated rates in [0,1] (default 0,0.1,...,1.0)");

  CLI::App* stats = app.add_subcommand(
      "stats", "report mean description lengths per mode");
  forward(stats, "--questions", "corpus.questions", "questions JSON file");
  forward(stats, "--annotations", "corpus.annotations", "annotations JSON file");
  forward(stats, "--captions", "corpus.captions",
          "caption JSON file(s), comma-separated");
  forward(stats, "--narratives", "corpus.narratives",
          "narrative JSONL file(s), comma-separated");

  CLI::App* eval = app.add_subcommand(
      "eval", "score a prediction file against annotations");
  forward(eval, "--predictions", "eval.predictions", "prediction JSONL file");
  forward(eval, "--annotations", "eval.annotations", "annotations JSON file");
  forward(eval, "--baseline", "eval.baseline_overall",
          "baseline overall accuracy, enables the Gap column");
  forward(eval, "--baseline-report", "eval.baseline_report",
          "earlier eval report JSON to take the baseline from");
  forward(eval, "--official-normalization", "eval.official_normalization",
          "true|false: apply the full answer normalizer (default true)");

  CLI::App* overlap = app.add_subcommand(
      "overlap", "compare two prediction files question by question");
  forward(overlap, "--a", "overlap.a", "first prediction JSONL file");
  forward(overlap, "--b", "overlap.b", "second prediction JSONL file");
  forward(overlap, "--annotations", "overlap.annotations",
          "annotations JSON file");
  forward(overlap, "--official-normalization",
          "overlap.official_normalization",
          "true|false: apply the full answer normalizer (default false)");

  CLI::App* import = app.add_subcommand(
      "import-lexicon", "convert a WordNet database directory to relation TSV");
  forward(import, "--wordnet-dir", "import.wordnet_dir",
          "directory holding index.* and data.* files");
  forward(import, "--out-file", "import.out", "TSV path to write");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return static_cast<int>(DESCQA_USAGE_ERROR);
  }

  descqa_session* session = descqa_session_new();
  if (!session) {
    std::fprintf(stderr, "error: out of memory\n");
    return static_cast<int>(DESCQA_DATA_ERROR);
  }

  for (const auto& path : config_files) {
    if (auto rc = descqa_load_config(session, path.c_str()); rc != DESCQA_OK) {
      return fail(session, rc);
    }
  }
  for (const auto& kv : sets) {
    auto eq = kv.find('=');
    if (eq == std::string::npos || eq == 0) {
      std::fprintf(stderr, "error: --set wants KEY=VALUE, got \"%s\"\n",
                   kv.c_str());
      descqa_session_free(session);
      return static_cast<int>(DESCQA_USAGE_ERROR);
    }
    if (auto rc = descqa_set_option(session, kv.substr(0, eq).c_str(),
                                    kv.substr(eq + 1).c_str());
        rc != DESCQA_OK) {
      return fail(session, rc);
    }
  }
  for (const auto& f : forwarded) {
    if (f.option->count() == 0) continue;
    if (auto rc =
            descqa_set_option(session, f.key.c_str(), f.value->c_str());
        rc != DESCQA_OK) {
      return fail(session, rc);
    }
  }

  descqa_status rc = DESCQA_OK;
  if (build->parsed()) {
    rc = descqa_build(session);
  } else if (augment->parsed()) {
    rc = descqa_augment(session, technique.c_str());
  } else if (trunc->parsed()) {
    rc = descqa_truncate(session);
  } else if (stats->parsed()) {
    rc = descqa_stats(session);
  } else if (eval->parsed()) {
    rc = descqa_eval(session);
  } else if (overlap->parsed()) {
    rc = descqa_overlap(session);
  } else if (import->parsed()) {
    rc = descqa_import_lexicon(session);
  }

  if (rc != DESCQA_OK) return fail(session, rc);
  std::fputs(descqa_last_report(session), stdout);
  descqa_session_free(session);
  return 0;
}
