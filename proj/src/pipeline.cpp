#include "pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <memory>
#include <mutex>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "augment.hpp"
#include "corpus_io.hpp"
#include "dal_augment.hpp"
#include "dav_augment.hpp"
#include "error.hpp"
#include "evaluation.hpp"
#include "http_json.hpp"
#include "importance.hpp"
#include "lexicon.hpp"
#include "rng.hpp"
#include "text.hpp"
#include "triplet_builder.hpp"
#include "version.hpp"
#include "wordnet_import.hpp"

using nlohmann::json;
namespace fs = std::filesystem;

namespace descqa {

namespace {

std::string with_commas(size_t n) {
  std::string digits = std::to_string(n);
  std::string out;
  size_t count = 0;
  for (auto it = digits.rbegin(); it != digits.rend(); ++it) {
    if (count && count % 3 == 0) out.push_back(',');
    out.push_back(*it);
    ++count;
  }
  std::reverse(out.begin(), out.end());
  return out;
}

std::vector<std::string> split_paths(const std::string& value) {
  std::vector<std::string> out;
  std::istringstream in(value);
  std::string part;
  while (std::getline(in, part, ',')) {
    std::string p = trim(part);
    if (!p.empty()) out.push_back(std::move(p));
  }
  return out;
}

size_t shard_of(int64_t question_id, int shards) {
  return static_cast<size_t>(mix64(static_cast<uint64_t>(question_id)) %
                             static_cast<uint64_t>(shards));
}

// Worker pool over shard indices; the first exception wins and is
// rethrown after all workers stop.
template <typename Task>
void run_sharded(int shards, int threads, Task&& task) {
  int workers = std::min(threads, shards);
  if (workers <= 1) {
    for (int i = 0; i < shards; ++i) task(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(static_cast<size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      while (true) {
        int i = next.fetch_add(1);
        if (i >= shards) return;
        try {
          task(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!first_error) first_error = std::current_exception();
          return;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

struct LoadedCorpus {
  std::vector<RawSample> samples;
  Diagnostics diagnostics;
};

LoadedCorpus load_joined_corpus(const Config& config) {
  QuestionLoad questions = load_questions(config.require("corpus.questions"));
  AnnotationLoad annotations =
      load_annotations(config.require("corpus.annotations"));
  CaptionLoad captions;
  for (const auto& path : split_paths(config.require("corpus.captions"))) {
    load_captions_into(path, captions);
  }
  NarrativeLoad narratives;
  for (const auto& path : split_paths(config.require("corpus.narratives"))) {
    load_narratives_into(path, narratives);
  }
  JoinResult joined = join_corpora(questions.records, annotations.records,
                                   captions, narratives);
  LoadedCorpus out;
  out.samples = std::move(joined.samples);
  out.diagnostics.merge(questions.diagnostics);
  out.diagnostics.merge(annotations.diagnostics);
  out.diagnostics.merge(captions.diagnostics);
  out.diagnostics.merge(narratives.diagnostics);
  out.diagnostics.merge(joined.diagnostics);
  return out;
}

std::vector<std::string> stopword_list(const Config& config) {
  auto path = config.get("backend.stopwords");
  if (!path || path->empty()) return default_stopwords();
  return load_word_list_file(*path);
}

double elapsed_seconds(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
      .count();
}

}  // namespace

std::string RunManifest::to_json() const {
  json j;
  j["command"] = command;
  j["tool_version"] = tool_version;
  j["seed"] = seed;
  j["shards"] = shards;
  j["config_hash"] = config_hash;
  j["original_count"] = original_count;
  json synth = json::array();
  for (const auto& [label, count] : synthetic_counts) {
    synth.push_back({{"technique", label}, {"synthetic", count}});
  }
  j["synthetic"] = std::move(synth);
  j["synthetic_total"] = synthetic_total;
  j["total_count"] = total_count;
  j["diagnostics"] = {{"counts", diagnostics.counts()},
                      {"notes", diagnostics.notes()}};
  j["wall_seconds"] = std::round(wall_seconds * 1000.0) / 1000.0;
  json outs = json::object();
  for (const auto& [label, path] : outputs) outs[label] = path;
  j["outputs"] = std::move(outs);
  return j.dump(2);
}

std::string RunManifest::format() const {
  std::ostringstream out;
  out << command << " (seed " << seed << ", shards " << shards << ", config "
      << config_hash << ")\n";
  out << "originals: " << with_commas(original_count) << "\n";
  if (!synthetic_counts.empty()) {
    out << "Technique                          Num. Synthetic  Num. Total\n";
    for (const auto& [label, count] : synthetic_counts) {
      char line[128];
      snprintf(line, sizeof(line), "%-34s %14s  %10s", label.c_str(),
               with_commas(count).c_str(),
               with_commas(original_count + count).c_str());
      out << line << "\n";
    }
  }
  out << "total: " << with_commas(total_count) << "\n";
  if (!diagnostics.empty()) {
    out << "diagnostics:\n";
    for (const auto& [category, count] : diagnostics.counts()) {
      out << "  " << category << ": " << with_commas(count) << "\n";
    }
  }
  char wall[64];
  snprintf(wall, sizeof(wall), "wall clock: %.3f s", wall_seconds);
  out << wall << "\n";
  for (const auto& [label, path] : outputs) {
    out << label << ": " << path << "\n";
  }
  return out.str();
}

void RunManifest::write(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) data_error("cannot write manifest: " + path);
  out << to_json() << '\n';
}

RunOptions run_options(const Config& config) {
  RunOptions opts;
  opts.seed = config.get_u64("seed", 0);
  opts.shards = static_cast<int>(config.get_int("shards", 1));
  if (opts.shards < 1) usage_error("shards must be >= 1");
  opts.threads = static_cast<int>(config.get_int("threads", opts.shards));
  if (opts.threads < 1) usage_error("threads must be >= 1");
  opts.out_dir = config.get_or("output.dir", ".");
  fs::create_directories(opts.out_dir);
  return opts;
}

RunManifest cmd_build(const Config& config) {
  auto start = std::chrono::steady_clock::now();
  RunOptions opts = run_options(config);
  DescriptionMode mode =
      DescriptionMode::parse(config.get_or("build.mode", "whole"));

  LoadedCorpus corpus = load_joined_corpus(config);

  std::vector<std::vector<RawSample>> per_shard(
      static_cast<size_t>(opts.shards));
  for (auto& sample : corpus.samples) {
    per_shard[shard_of(sample.question_id, opts.shards)].push_back(
        std::move(sample));
  }
  std::vector<TripletBatch> batches(static_cast<size_t>(opts.shards));
  run_sharded(opts.shards, opts.threads, [&](int shard) {
    batches[static_cast<size_t>(shard)] =
        make_triplets(per_shard[static_cast<size_t>(shard)], mode, opts.seed);
  });

  std::vector<Triplet> triplets;
  RunManifest manifest;
  manifest.diagnostics.merge(corpus.diagnostics);
  for (auto& batch : batches) {
    triplets.insert(triplets.end(),
                    std::make_move_iterator(batch.triplets.begin()),
                    std::make_move_iterator(batch.triplets.end()));
    manifest.diagnostics.merge(batch.diagnostics);
  }
  std::sort(triplets.begin(), triplets.end(),
            [](const Triplet& a, const Triplet& b) {
              return a.question_id < b.question_id;
            });

  TripletFileHeader header;
  header.tool_version = kToolVersion;
  header.seed = opts.seed;
  header.mode = mode.name();
  header.config_hash = config.hash();
  std::string out_path = (fs::path(opts.out_dir) / "triplets.jsonl").string();
  write_triplet_file(out_path, header, triplets);

  manifest.command = "build";
  manifest.tool_version = kToolVersion;
  manifest.seed = opts.seed;
  manifest.shards = opts.shards;
  manifest.config_hash = config.hash();
  manifest.original_count = triplets.size();
  manifest.total_count = triplets.size();
  manifest.outputs.emplace_back("triplets", out_path);
  manifest.wall_seconds = elapsed_seconds(start);
  manifest.write((fs::path(opts.out_dir) / "build_manifest.json").string());
  return manifest;
}

namespace {

// Everything an augmentation worker needs, built once and shared
// immutably across shards.
struct AugmentResources {
  LexicalGraph graph;
  DavConfig dav;
  DalConfig dal;
  std::unique_ptr<EmbeddingTable> embeddings;
  std::unique_ptr<Scorer> scorer;
  std::unique_ptr<TranslationClient> translator;
  std::unique_ptr<InfillClient> infill;
  std::unique_ptr<ResponseCache> cache;
  DalClients clients;
};

std::unique_ptr<TranslationClient> make_translator(const Config& config,
                                                   const ResponseCache* cache) {
  std::string spec = config.get_or("backend.translate", "identity");
  if (spec == "identity") return std::make_unique<IdentityTranslationClient>();
  if (spec.rfind("dictionary:", 0) == 0) {
    return std::make_unique<DictionaryTranslationClient>(
        DictionaryTranslationClient::from_tsv(spec.substr(11)));
  }
  if (spec.rfind("service:", 0) == 0) {
    return std::make_unique<ServiceTranslationClient>(
        spec.substr(8), config.get_or("backend.source_lang", "en"),
        config.get_or("backend.pivot_lang", "de"), cache);
  }
  usage_error("unknown translation backend: " + spec);
}

std::unique_ptr<InfillClient> make_infill(const Config& config,
                                          const ResponseCache* cache) {
  std::string spec = config.get_or("backend.infill", "identity");
  if (spec == "identity") {
    return std::make_unique<DictionaryInfillClient>(
        std::map<std::string, std::string>{}, std::map<std::string, std::string>{});
  }
  if (spec.rfind("dictionary:", 0) == 0) {
    return std::make_unique<DictionaryInfillClient>(
        DictionaryInfillClient::from_tsv(spec.substr(11)));
  }
  if (spec.rfind("service:", 0) == 0) {
    return std::make_unique<ServiceInfillClient>(spec.substr(8), cache);
  }
  usage_error("unknown infill backend: " + spec);
}

AugmentResources build_resources(const Config& config, Technique technique) {
  AugmentResources res;
  if (auto dir = config.get("backend.cache_dir"); dir && !dir->empty()) {
    res.cache = std::make_unique<ResponseCache>(*dir);
  }

  if (auto path = config.get("lexicon.relations"); path && !path->empty()) {
    res.graph = LexicalGraph::load(*path);
  } else if (technique == Technique::Hyponym ||
             technique == Technique::Hypernym) {
    usage_error(std::string(origin_name(technique)) +
                " needs lexicon.relations");
  }

  res.dav.top_d = static_cast<int>(config.get_int("dav.top_d", 10));
  res.dav.top_j = static_cast<int>(config.get_int("dav.top_j", 5));
  res.dav.skip_already_no = config.get_bool("dav.skip_already_no", false);
  res.dav.validate();
  if (auto path = config.get("dav.colors"); path && !path->empty()) {
    res.dav.colors = ColorSet::load(*path);
  }
  if (auto path = config.get("dav.color_types"); path && !path->empty()) {
    res.dav.color_types = QuestionTypeSet::load(*path);
  }
  if (auto path = config.get("dav.objects"); path && !path->empty()) {
    res.dav.objects = ObjectClassSet::load(*path);
  }
  if (auto path = config.get("dav.object_aliases"); path && !path->empty()) {
    res.dav.objects.load_aliases(*path);
  }

  res.dal.eda_rate = config.get_double("dal.eda_rate", 0.1);
  res.dal.eda_deletion_p = config.get_double("dal.eda_deletion_p", 0.1);
  res.dal.contextual_k = static_cast<int>(config.get_int("dal.contextual_k", 0));
  res.dal.validate();

  switch (technique) {
    case Technique::Adversarial:
      res.embeddings = std::make_unique<EmbeddingTable>(
          EmbeddingTable::load(config.require("lexicon.embeddings")));
      break;
    case Technique::CssQuestion:
    case Technique::CssDescription:
      res.scorer = make_scorer(config.get_or("backend.scorer", "lexical_overlap"),
                               stopword_list(config), res.cache.get());
      break;
    case Technique::BtQuestion:
    case Technique::BtDescription:
      res.translator = make_translator(config, res.cache.get());
      res.clients.translator = res.translator.get();
      break;
    case Technique::CwrQuestion:
    case Technique::CwrDescription:
    case Technique::CwiQuestion:
    case Technique::CwiDescription:
      res.infill = make_infill(config, res.cache.get());
      res.clients.infill = res.infill.get();
      break;
    default:
      break;
  }
  return res;
}

void apply_technique(const Triplet& parent, Technique technique,
                     AugmentResources& res, uint64_t seed,
                     std::vector<Triplet>& out, Diagnostics& diag) {
  uint64_t per_sample =
      sample_seed(seed, parent.question_id, origin_name(technique));
  switch (technique) {
    case Technique::Hyponym:
      if (auto child = hyponym_replace(parent, res.graph)) {
        out.push_back(std::move(*child));
      }
      break;
    case Technique::Hypernym:
      if (auto child = hypernym_replace(parent, res.graph)) {
        out.push_back(std::move(*child));
      }
      break;
    case Technique::ColorInversion:
      if (auto child = color_invert(parent, res.dav, per_sample)) {
        out.push_back(std::move(*child));
      }
      break;
    case Technique::Adversarial: {
      auto children = adversarial_replace(parent, res.dav, *res.embeddings,
                                          res.graph, &diag);
      for (auto& c : children) out.push_back(std::move(c));
      break;
    }
    case Technique::CssQuestion:
      if (auto child = css_question(parent, *res.scorer, res.dav, &diag)) {
        out.push_back(std::move(*child));
      }
      break;
    case Technique::CssDescription:
      if (auto child = css_description(parent, *res.scorer, res.dav, &diag)) {
        out.push_back(std::move(*child));
      }
      break;
    default:
      if (auto child = apply_dal(parent, technique, res.dal, res.clients,
                                 res.graph, per_sample, &diag)) {
        out.push_back(std::move(*child));
      }
      break;
  }
}

}  // namespace

RunManifest cmd_augment(const Config& config, const std::string& technique_name) {
  auto start = std::chrono::steady_clock::now();
  RunOptions opts = run_options(config);
  auto technique = technique_from_name(technique_name);
  if (!technique) usage_error("unknown technique: " + technique_name);

  std::string input = config.get_or(
      "augment.input", (fs::path(opts.out_dir) / "triplets.jsonl").string());
  TripletFile parents = read_triplet_file(input);

  AugmentResources res = build_resources(config, *technique);

  std::vector<std::vector<const Triplet*>> per_shard(
      static_cast<size_t>(opts.shards));
  for (const auto& t : parents.triplets) {
    per_shard[shard_of(t.question_id, opts.shards)].push_back(&t);
  }
  std::vector<std::vector<Triplet>> children(static_cast<size_t>(opts.shards));
  std::vector<Diagnostics> diags(static_cast<size_t>(opts.shards));
  run_sharded(opts.shards, opts.threads, [&](int shard) {
    auto s = static_cast<size_t>(shard);
    for (const Triplet* parent : per_shard[s]) {
      apply_technique(*parent, *technique, res, opts.seed, children[s],
                      diags[s]);
    }
  });

  std::vector<Triplet> synthetic;
  RunManifest manifest;
  for (size_t s = 0; s < children.size(); ++s) {
    synthetic.insert(synthetic.end(),
                     std::make_move_iterator(children[s].begin()),
                     std::make_move_iterator(children[s].end()));
    manifest.diagnostics.merge(diags[s]);
  }
  std::sort(synthetic.begin(), synthetic.end(),
            [](const Triplet& a, const Triplet& b) {
              return a.question_id < b.question_id;
            });

  // A run where every sample failed against the backend is a run failure,
  // not an empty result.
  size_t backend_failures =
      manifest.diagnostics.count("scorer_error_backend") +
      manifest.diagnostics.count("client_error_backend");
  size_t data_failures = manifest.diagnostics.count("scorer_error_data") +
                         manifest.diagnostics.count("client_error_data");
  if (!parents.triplets.empty() && synthetic.empty() &&
      backend_failures + data_failures >= parents.triplets.size()) {
    std::string note = manifest.diagnostics.notes().empty()
                           ? std::string("no details")
                           : manifest.diagnostics.notes().front();
    if (backend_failures > 0) {
      backend_error("all " + std::to_string(parents.triplets.size()) +
                    " samples failed against the backend (" + note + ")");
    }
    data_error("all " + std::to_string(parents.triplets.size()) +
               " samples failed (" + note + ")");
  }

  TripletFileHeader header;
  header.tool_version = kToolVersion;
  header.seed = opts.seed;
  header.mode = parents.header.mode;
  header.config_hash = config.hash();
  std::string out_path =
      (fs::path(opts.out_dir) /
       ("synthetic_" + std::string(origin_name(*technique)) + ".jsonl"))
          .string();
  write_triplet_file(out_path, header, synthetic);

  manifest.command = "augment";
  manifest.tool_version = kToolVersion;
  manifest.seed = opts.seed;
  manifest.shards = opts.shards;
  manifest.config_hash = config.hash();
  manifest.original_count = parents.triplets.size();
  manifest.synthetic_counts.emplace_back(display_label(*technique),
                                         synthetic.size());
  manifest.synthetic_total = synthetic.size();
  manifest.total_count = parents.triplets.size() + synthetic.size();
  manifest.outputs.emplace_back(origin_name(*technique), out_path);
  manifest.wall_seconds = elapsed_seconds(start);
  manifest.write(
      (fs::path(opts.out_dir) /
       ("augment_" + std::string(origin_name(*technique)) + "_manifest.json"))
          .string());
  return manifest;
}

RunManifest cmd_truncate(const Config& config) {
  auto start = std::chrono::steady_clock::now();
  RunOptions opts = run_options(config);

  std::vector<double> rates;
  for (const auto& part :
       split_paths(config.get_or("truncate.rates",
                                 "0,0.1,0.2,0.3,0.4,0.5,0.6,0.7,0.8,0.9,1.0"))) {
    char* end = nullptr;
    double rate = strtod(part.c_str(), &end);
    if (end == part.c_str() || *end != '\0') {
      usage_error("bad truncation rate: " + part);
    }
    if (rate < 0.0 || rate > 1.0) {
      usage_error("truncation rate outside [0,1]: " + part);
    }
    rates.push_back(rate);
  }
  if (rates.empty()) usage_error("no truncation rates given");

  std::string input = config.get_or(
      "truncate.input", (fs::path(opts.out_dir) / "triplets.jsonl").string());
  TripletFile file = read_triplet_file(input);

  RunManifest manifest;
  manifest.command = "truncate";
  manifest.tool_version = kToolVersion;
  manifest.seed = opts.seed;
  manifest.shards = opts.shards;
  manifest.config_hash = config.hash();
  manifest.original_count = file.triplets.size();
  manifest.total_count = file.triplets.size();

  std::vector<std::vector<const Triplet*>> per_shard(
      static_cast<size_t>(opts.shards));
  for (const auto& t : file.triplets) {
    per_shard[shard_of(t.question_id, opts.shards)].push_back(&t);
  }

  for (double rate : rates) {
    std::vector<std::vector<Triplet>> results(static_cast<size_t>(opts.shards));
    run_sharded(opts.shards, opts.threads, [&](int shard) {
      auto s = static_cast<size_t>(shard);
      for (const Triplet* parent : per_shard[s]) {
        Triplet out = *parent;
        out.description = truncate_description(
            parent->description, rate,
            sample_seed(opts.seed, parent->question_id, "truncate"));
        results[s].push_back(std::move(out));
      }
    });
    std::vector<Triplet> merged;
    for (auto& r : results) {
      merged.insert(merged.end(), std::make_move_iterator(r.begin()),
                    std::make_move_iterator(r.end()));
    }
    std::sort(merged.begin(), merged.end(),
              [](const Triplet& a, const Triplet& b) {
                return a.question_id < b.question_id;
              });

    TripletFileHeader header;
    header.tool_version = kToolVersion;
    header.seed = opts.seed;
    header.mode = file.header.mode;
    header.config_hash = config.hash();
    char suffix[16];
    snprintf(suffix, sizeof(suffix), "%03d",
             static_cast<int>(std::lround(rate * 100.0)));
    std::string out_path =
        (fs::path(opts.out_dir) / ("truncated_rate_" + std::string(suffix) +
                                   ".jsonl"))
            .string();
    write_triplet_file(out_path, header, merged);
    manifest.outputs.emplace_back("rate " + std::string(suffix), out_path);
  }
  manifest.wall_seconds = elapsed_seconds(start);
  manifest.write(
      (fs::path(opts.out_dir) / "truncate_manifest.json").string());
  return manifest;
}

std::string cmd_stats(const Config& config) {
  RunOptions opts = run_options(config);
  LoadedCorpus corpus = load_joined_corpus(config);

  size_t caption_count = 0;
  size_t caption_words = 0;
  size_t narrative_words = 0;
  size_t whole_words = 0;
  size_t question_words = 0;
  for (const auto& s : corpus.samples) {
    size_t sample_caption_words = 0;
    for (const auto& c : s.captions) sample_caption_words += count_words(c);
    caption_count += s.captions.size();
    caption_words += sample_caption_words;
    size_t narr = count_words(s.narrative);
    narrative_words += narr;
    whole_words += narr + sample_caption_words;
    question_words += count_words(s.question);
  }
  size_t n = corpus.samples.size();
  double mean_caption =
      caption_count ? static_cast<double>(caption_words) / caption_count : 0.0;
  double mean_narrative =
      n ? static_cast<double>(narrative_words) / n : 0.0;
  double mean_whole = n ? static_cast<double>(whole_words) / n : 0.0;
  double mean_question = n ? static_cast<double>(question_words) / n : 0.0;

  json j;
  j["sample_count"] = n;
  j["caption_count"] = caption_count;
  j["mean_question_words"] = mean_question;
  j["mean_caption_words"] = mean_caption;
  j["mean_narrative_words"] = mean_narrative;
  j["mean_whole_words"] = mean_whole;
  json rows = json::array();
  auto add_row = [&](const std::string& label, double length) {
    rows.push_back({{"description", label}, {"length", length}});
  };
  add_row("None (Question-Only)", 0.0);
  for (int k = 1; k <= 5; ++k) {
    add_row(std::to_string(k) + (k == 1 ? " Caption" : " Captions"),
            k * mean_caption);
  }
  add_row("Narrative", mean_narrative);
  add_row("Whole (Narrative + 5 Captions)", mean_whole);
  j["rows"] = rows;
  {
    std::ofstream out(fs::path(opts.out_dir) / "stats.json");
    if (!out) data_error("cannot write stats report");
    out << j.dump(2) << '\n';
  }

  std::ostringstream out;
  out << "Image Description                 Length\n";
  for (const auto& row : rows) {
    char line[96];
    snprintf(line, sizeof(line), "%-32s %6.1f",
             row["description"].get<std::string>().c_str(),
             row["length"].get<double>());
    out << line << "\n";
  }
  out << "samples: " << with_commas(n)
      << ", captions: " << with_commas(caption_count)
      << ", mean question length: ";
  char q[16];
  snprintf(q, sizeof(q), "%.1f", mean_question);
  out << q << "\n";
  if (!corpus.diagnostics.empty()) {
    out << "diagnostics:\n";
    for (const auto& [category, count] : corpus.diagnostics.counts()) {
      out << "  " << category << ": " << with_commas(count) << "\n";
    }
  }
  return out.str();
}

std::string cmd_eval(const Config& config) {
  RunOptions opts = run_options(config);
  PredictionLoad predictions =
      load_predictions(config.require("eval.predictions"));
  AnnotationLoad annotations =
      load_annotations(config.require("eval.annotations"));

  std::optional<double> baseline;
  if (auto v = config.get("eval.baseline_overall"); v && !v->empty()) {
    char* end = nullptr;
    double b = strtod(v->c_str(), &end);
    if (end == v->c_str() || *end != '\0') {
      usage_error("eval.baseline_overall is not a number: " + *v);
    }
    baseline = b;
  } else if (auto path = config.get("eval.baseline_report");
             path && !path->empty()) {
    std::ifstream in(*path);
    if (!in) data_error("cannot open baseline report: " + *path);
    json report = json::parse(in, nullptr, false);
    if (report.is_discarded() || !report.contains("overall")) {
      data_error("baseline report lacks an overall value: " + *path);
    }
    baseline = report["overall"].get<double>();
  }

  bool official = config.get_bool("eval.official_normalization", true);
  Diagnostics diag;
  AccuracyReport report = evaluate(predictions.records, annotations.records,
                                   baseline, official, &diag);
  {
    std::ofstream out(fs::path(opts.out_dir) / "eval_report.json");
    if (!out) data_error("cannot write eval report");
    out << accuracy_report_json(report) << '\n';
  }
  return format_accuracy_report(report);
}

std::string cmd_overlap(const Config& config) {
  RunOptions opts = run_options(config);
  PredictionLoad a = load_predictions(config.require("overlap.a"));
  PredictionLoad b = load_predictions(config.require("overlap.b"));
  std::string ann_path = config.get_or("overlap.annotations",
                                       config.get_or("eval.annotations", ""));
  if (ann_path.empty()) {
    usage_error("missing required config key: overlap.annotations");
  }
  AnnotationLoad annotations = load_annotations(ann_path);
  bool official = config.get_bool("overlap.official_normalization", false);
  OverlapReport report =
      overlap(a.records, b.records, annotations.records, official);
  {
    std::ofstream out(fs::path(opts.out_dir) / "overlap_report.json");
    if (!out) data_error("cannot write overlap report");
    out << overlap_report_json(report) << '\n';
  }
  return format_overlap_report(report);
}

std::string cmd_import_lexicon(const Config& config) {
  RunOptions opts = run_options(config);
  std::string dir = config.require("import.wordnet_dir");
  std::string out_path = config.get_or(
      "import.out", (fs::path(opts.out_dir) / "relations.tsv").string());
  Diagnostics diag;
  size_t lines = import_wordnet(dir, out_path, &diag);
  std::ostringstream out;
  out << "wrote " << with_commas(lines) << " relation lines to " << out_path
      << "\n";
  if (!diag.empty()) {
    out << "diagnostics:\n";
    for (const auto& [category, count] : diag.counts()) {
      out << "  " << category << ": " << with_commas(count) << "\n";
    }
  }
  return out.str();
}

}  // namespace descqa
