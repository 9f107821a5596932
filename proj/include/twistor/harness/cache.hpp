#pragma once

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <system_error>

#include <unistd.h>

#include "twistor/harness/config.hpp"

namespace twistor::harness {

/// Content-addressed report store.  An entry is "<hash of body>\n<body>";
/// entries whose hash does not match are deleted on read.
class ReportCache {
 public:
  explicit ReportCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

  /// --cache if given, else $TWISTOR_CACHE, else no cache.
  static std::optional<ReportCache> from_option(const std::string& flag) {
    if (!flag.empty()) return ReportCache(flag);
    if (const char* env = std::getenv("TWISTOR_CACHE"); env && *env) return ReportCache(env);
    return std::nullopt;
  }

  const std::filesystem::path& dir() const noexcept { return dir_; }
  std::filesystem::path entry_path(const std::string& key) const { return dir_ / (key + ".report"); }

  void put(const std::string& key, const std::string& body) const {
    std::filesystem::create_directories(dir_);
    const auto final_path = entry_path(key);
    auto tmp = final_path;
    tmp += ".tmp." + std::to_string(::getpid());
    {
      std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
      if (!out) throw std::runtime_error("cannot write cache entry " + tmp.string());
      out << hex64(fnv1a64(body)) << '\n' << body;
      if (!out.flush()) throw std::runtime_error("cannot write cache entry " + tmp.string());
    }
    std::filesystem::rename(tmp, final_path);
  }

  /// Stored body, or nullopt on a miss.  `evicted` is set when a corrupt entry was removed.
  std::optional<std::string> get(const std::string& key, bool* evicted = nullptr) const {
    if (evicted) *evicted = false;
    const auto path = entry_path(key);
    std::ifstream in(path, std::ios::binary);
    if (!in) return std::nullopt;
    std::string header;
    std::getline(in, header);
    std::ostringstream rest;
    rest << in.rdbuf();
    std::string body = rest.str();
    if (header != hex64(fnv1a64(body))) {
      in.close();
      std::error_code ec;
      std::filesystem::remove(path, ec);
      if (evicted) *evicted = true;
      return std::nullopt;
    }
    return body;
  }

 private:
  std::filesystem::path dir_;
};

}  // namespace twistor::harness
