#include "config.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "error.hpp"
#include "rng.hpp"
#include "text.hpp"

namespace descqa {

Config Config::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) usage_error("cannot open config file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return from_text(buf.str(), path);
}

Config Config::from_text(const std::string& text, const std::string& origin) {
  Config config;
  std::istringstream in(text);
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string stripped = trim(line);
    if (stripped.empty() || stripped[0] == '#') continue;
    size_t eq = stripped.find('=');
    if (eq == std::string::npos) {
      usage_error("config line without '=' at " + origin + ":" +
                  std::to_string(line_no));
    }
    std::string key = trim(stripped.substr(0, eq));
    std::string value = trim(stripped.substr(eq + 1));
    if (key.empty()) {
      usage_error("config line with empty key at " + origin + ":" +
                  std::to_string(line_no));
    }
    config.entries_[key] = value;
  }
  return config;
}

void Config::set(const std::string& key, const std::string& value) {
  entries_[key] = value;
}

bool Config::has(const std::string& key) const { return entries_.count(key) > 0; }

std::optional<std::string> Config::get(const std::string& key) const {
  auto it = entries_.find(key);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

std::string Config::get_or(const std::string& key,
                           const std::string& fallback) const {
  auto v = get(key);
  return v ? *v : fallback;
}

std::string Config::require(const std::string& key) const {
  auto v = get(key);
  if (!v || v->empty()) usage_error("missing required config key: " + key);
  return *v;
}

int64_t Config::get_int(const std::string& key, int64_t fallback) const {
  auto v = get(key);
  if (!v) return fallback;
  int64_t out = 0;
  auto res = std::from_chars(v->data(), v->data() + v->size(), out);
  if (res.ec != std::errc() || res.ptr != v->data() + v->size()) {
    usage_error("config key " + key + " is not an integer: " + *v);
  }
  return out;
}

uint64_t Config::get_u64(const std::string& key, uint64_t fallback) const {
  auto v = get(key);
  if (!v) return fallback;
  uint64_t out = 0;
  auto res = std::from_chars(v->data(), v->data() + v->size(), out);
  if (res.ec != std::errc() || res.ptr != v->data() + v->size()) {
    usage_error("config key " + key + " is not an unsigned integer: " + *v);
  }
  return out;
}

double Config::get_double(const std::string& key, double fallback) const {
  auto v = get(key);
  if (!v) return fallback;
  double out = 0;
  auto res = std::from_chars(v->data(), v->data() + v->size(), out);
  if (res.ec != std::errc() || res.ptr != v->data() + v->size()) {
    usage_error("config key " + key + " is not a number: " + *v);
  }
  return out;
}

bool Config::get_bool(const std::string& key, bool fallback) const {
  auto v = get(key);
  if (!v) return fallback;
  std::string s = lower(*v);
  if (s == "true" || s == "1" || s == "yes" || s == "on") return true;
  if (s == "false" || s == "0" || s == "no" || s == "off") return false;
  usage_error("config key " + key + " is not a boolean: " + *v);
}

std::string Config::hash() const {
  std::string material;
  for (const auto& [k, v] : entries_) {
    // Execution topology changes where work runs, never what comes out,
    // so it stays out of the provenance stamp.
    if (k == "shards" || k == "threads" || k == "output.dir") continue;
    material += k;
    material += '=';
    material += v;
    material += '\n';
  }
  char buf[17];
  snprintf(buf, sizeof(buf), "%016llx",
           static_cast<unsigned long long>(fnv1a64(material)));
  return buf;
}

}  // namespace descqa
