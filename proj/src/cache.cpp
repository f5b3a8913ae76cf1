#include "formclass/cache.hpp"

#include <openssl/evp.h>

#include <atomic>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <thread>

namespace formclass {

std::string sha256_hex(const std::string& data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("SHA-256 digest failed");
  }
  static constexpr char hex[] = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[digest[i] >> 4];
    out += hex[digest[i] & 15];
  }
  return out;
}

std::filesystem::path ResultCache::default_dir() {
  if (const char* env = std::getenv("FORMCLASS_CACHE_DIR"); env && *env) return env;
  return ".formclass-cache";
}

ResultCache::ResultCache(std::filesystem::path dir, std::string version)
    : dir_(std::move(dir)), version_(std::move(version)) {}

std::string ResultCache::key(const std::string& op, const Json& params) const {
  return sha256_hex(op + '\n' + params.dump() + '\n' + version_ + '\n' + std::to_string(kSchemaVersion));
}

std::filesystem::path ResultCache::path_for(const std::string& key) const { return dir_ / (key + ".json"); }

std::optional<Json> ResultCache::load(const std::string& key,
                                      const std::function<void(const std::string&)>& warn) const {
  const auto path = path_for(key);
  std::ifstream in(path);
  if (!in) return std::nullopt;
  std::stringstream buffer;
  buffer << in.rdbuf();
  Json entry = Json::parse(buffer.str(), nullptr, false);
  if (entry.is_discarded() || !entry.is_object() || entry.value("schema_version", -1) != kSchemaVersion ||
      entry.value("version", "") != version_ || entry.value("key", "") != key || !entry.contains("result")) {
    warn("cache entry " + path.string() + " is corrupt; recomputing");
    return std::nullopt;
  }
  return entry["result"];
}

void ResultCache::store(const std::string& key, const std::string& op, const Json& result) const {
  std::filesystem::create_directories(dir_);
  const Json entry = {{"schema_version", kSchemaVersion}, {"version", version_}, {"key", key}, {"op", op}, {"result", result}};
  static std::atomic<unsigned> counter{0};
  std::ostringstream suffix;
  suffix << ".tmp." << std::this_thread::get_id() << '.' << counter++;
  const auto final_path = path_for(key);
  const auto tmp = std::filesystem::path(final_path.string() + suffix.str());
  {
    std::ofstream out(tmp);
    out << entry.dump() << '\n';
    if (!out) throw std::runtime_error("cannot write cache entry " + tmp.string());
  }
  std::filesystem::rename(tmp, final_path);
}

}  // namespace formclass
