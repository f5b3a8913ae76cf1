#pragma once

#include <filesystem>
#include <functional>
#include <optional>
#include <string>

#include "formclass/report.hpp"

namespace formclass {

/// Lowercase hex SHA-256 of the bytes.
std::string sha256_hex(const std::string& data);

/// Write-once JSON store keyed by SHA-256 of (operation, parameters, version).
class ResultCache {
 public:
  /// FORMCLASS_CACHE_DIR if set, else `.formclass-cache/`.
  static std::filesystem::path default_dir();

  explicit ResultCache(std::filesystem::path dir, std::string version = kToolVersion);

  std::string key(const std::string& op, const Json& params) const;
  std::filesystem::path path_for(const std::string& key) const;

  /// The stored result, or nothing when absent. A file that fails to parse or
  /// carries the wrong schema, version or key is reported through `warn` and
  /// treated as absent.
  std::optional<Json> load(const std::string& key, const std::function<void(const std::string&)>& warn) const;
  /// Writes through a temporary file and rename.
  void store(const std::string& key, const std::string& op, const Json& result) const;

 private:
  std::filesystem::path dir_;
  std::string version_;
};

}  // namespace formclass
