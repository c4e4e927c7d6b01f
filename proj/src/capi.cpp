#include "descqa.h"

#include <cstdlib>
#include <cstring>
#include <exception>
#include <functional>
#include <new>
#include <string>
#include <vector>

#include "config.hpp"
#include "error.hpp"
#include "evaluation.hpp"
#include "pipeline.hpp"
#include "text.hpp"
#include "triplet_builder.hpp"
#include "version.hpp"

struct descqa_session {
  descqa::Config config;
  std::string last_error;
  std::string last_report;
};

namespace {

descqa_status status_of(descqa::ErrorKind kind) {
  switch (kind) {
    case descqa::ErrorKind::Usage:
      return DESCQA_USAGE_ERROR;
    case descqa::ErrorKind::Data:
      return DESCQA_DATA_ERROR;
    case descqa::ErrorKind::Backend:
      return DESCQA_BACKEND_ERROR;
  }
  return DESCQA_USAGE_ERROR;
}

// Runs fn, routing its report into the session and any thrown error into
// the session's last_error, mapped onto the status enum.
descqa_status run_command(descqa_session* session,
                          const std::function<std::string()>& fn) {
  if (!session) return DESCQA_USAGE_ERROR;
  session->last_error.clear();
  try {
    session->last_report = fn();
    return DESCQA_OK;
  } catch (const descqa::Error& e) {
    session->last_error = e.what();
    return status_of(e.kind());
  } catch (const std::exception& e) {
    session->last_error = e.what();
    return DESCQA_DATA_ERROR;
  }
}

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(malloc(s.size() + 1));
  if (!out) return nullptr;
  memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

}  // namespace

extern "C" {

descqa_session* descqa_session_new(void) {
  return new (std::nothrow) descqa_session();
}

void descqa_session_free(descqa_session* session) { delete session; }

descqa_status descqa_load_config(descqa_session* session, const char* path) {
  if (!session || !path) return DESCQA_USAGE_ERROR;
  return run_command(session, [&]() -> std::string {
    descqa::Config loaded = descqa::Config::load(path);
    for (const auto& [key, value] : loaded.entries()) {
      session->config.set(key, value);
    }
    return session->last_report;  // loading produces no report
  });
}

descqa_status descqa_set_option(descqa_session* session, const char* key,
                                const char* value) {
  if (!session || !key || !value) return DESCQA_USAGE_ERROR;
  session->last_error.clear();
  if (descqa::trim(key).empty()) {
    session->last_error = "empty configuration key";
    return DESCQA_USAGE_ERROR;
  }
  session->config.set(key, value);
  return DESCQA_OK;
}

const char* descqa_last_error(const descqa_session* session) {
  return session ? session->last_error.c_str() : "null session";
}

const char* descqa_last_report(const descqa_session* session) {
  return session ? session->last_report.c_str() : "";
}

descqa_status descqa_build(descqa_session* session) {
  return run_command(session,
                     [&] { return descqa::cmd_build(session->config).format(); });
}

descqa_status descqa_augment(descqa_session* session, const char* technique) {
  if (!session || !technique) return DESCQA_USAGE_ERROR;
  std::string name = technique;
  return run_command(session, [&] {
    return descqa::cmd_augment(session->config, name).format();
  });
}

descqa_status descqa_truncate(descqa_session* session) {
  return run_command(
      session, [&] { return descqa::cmd_truncate(session->config).format(); });
}

descqa_status descqa_stats(descqa_session* session) {
  return run_command(session, [&] { return descqa::cmd_stats(session->config); });
}

descqa_status descqa_eval(descqa_session* session) {
  return run_command(session, [&] { return descqa::cmd_eval(session->config); });
}

descqa_status descqa_overlap(descqa_session* session) {
  return run_command(session,
                     [&] { return descqa::cmd_overlap(session->config); });
}

descqa_status descqa_import_lexicon(descqa_session* session) {
  return run_command(
      session, [&] { return descqa::cmd_import_lexicon(session->config); });
}

descqa_status descqa_vqa_accuracy(const char* prediction,
                                  const char* const* answers,
                                  size_t answer_count,
                                  int official_normalization,
                                  double* accuracy) {
  if (!prediction || !answers || !accuracy) return DESCQA_USAGE_ERROR;
  try {
    std::vector<std::string> list;
    list.reserve(answer_count);
    for (size_t i = 0; i < answer_count; ++i) {
      if (!answers[i]) return DESCQA_USAGE_ERROR;
      list.emplace_back(answers[i]);
    }
    *accuracy = descqa::vqa_accuracy(prediction, list,
                                     official_normalization != 0);
    return DESCQA_OK;
  } catch (const descqa::Error& e) {
    return status_of(e.kind());
  } catch (const std::exception&) {
    return DESCQA_DATA_ERROR;
  }
}

descqa_status descqa_assemble_sequence(const char* question,
                                       const char* description,
                                       char** sequence) {
  if (!question || !description || !sequence) return DESCQA_USAGE_ERROR;
  try {
    std::string out = descqa::assemble_sequence(
        descqa::tokenize(question), descqa::tokenize(description));
    *sequence = copy_string(out);
    return *sequence ? DESCQA_OK : DESCQA_DATA_ERROR;
  } catch (const descqa::Error& e) {
    return status_of(e.kind());
  } catch (const std::exception&) {
    return DESCQA_DATA_ERROR;
  }
}

descqa_status descqa_truncate_description(const char* description, double rate,
                                          uint64_t seed, char** truncated) {
  if (!description || !truncated) return DESCQA_USAGE_ERROR;
  try {
    std::vector<std::string> kept = descqa::truncate_description(
        descqa::tokenize(description), rate, seed);
    *truncated = copy_string(descqa::join_tokens(kept));
    return *truncated ? DESCQA_OK : DESCQA_DATA_ERROR;
  } catch (const descqa::Error& e) {
    return status_of(e.kind());
  } catch (const std::exception&) {
    return DESCQA_DATA_ERROR;
  }
}

void descqa_string_free(char* s) { free(s); }

const char* descqa_version(void) { return descqa::kToolVersion; }

}  // extern "C"
