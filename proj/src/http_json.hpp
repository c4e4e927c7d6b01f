#ifndef DESCQA_HTTP_JSON_HPP
#define DESCQA_HTTP_JSON_HPP

#include <optional>
#include <string>

#include <json.hpp>

namespace descqa {

// Content-addressed request/response store. Each entry is one JSON file
// {"request": ..., "response": ...} named by a 128-bit hash of the key
// material; writes go through a temp file plus atomic rename so concurrent
// workers can share the directory. An empty directory path disables the
// cache.
class ResponseCache {
public:
  ResponseCache() = default;
  explicit ResponseCache(std::string dir);

  bool enabled() const { return !dir_.empty(); }

  // Hit only when the stored request matches byte-for-byte; a colliding
  // entry is treated as a miss.
  std::optional<nlohmann::json> lookup(const std::string& key_material,
                                       const nlohmann::json& request) const;
  void store(const std::string& key_material, const nlohmann::json& request,
             const nlohmann::json& response) const;

private:
  std::string entry_path(const std::string& key_material) const;
  std::string dir_;
};

// POST with a JSON body, one retry on any failure (connection, non-200,
// unparseable body), then a backend error naming the endpoint. `endpoint`
// is scheme://host:port; `path` the absolute request path. When a cache is
// given, hits skip the network entirely and misses are stored.
nlohmann::json post_json(const std::string& endpoint, const std::string& path,
                         const nlohmann::json& request,
                         const ResponseCache* cache = nullptr);

}  // namespace descqa

#endif
