#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace cdft::cli {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Grammar, one entry per line:
//   key = value        keys are [A-Za-z0-9_.]+, values run to end of line
//   # comment          blank lines and comments are ignored
// Lists are comma separated. Booleans are true/false.
class Config {
 public:
  static Config parse(std::string_view text);
  static Config load(const std::filesystem::path& path);

  bool has(const std::string& key) const { return entries_.count(key) != 0; }
  const std::map<std::string, std::string>& entries() const { return entries_; }

  std::string text(const std::string& key) const;
  std::string text(const std::string& key, const std::string& fallback) const;
  double number(const std::string& key) const;
  double number(const std::string& key, double fallback) const;
  long long integer(const std::string& key) const;
  long long integer(const std::string& key, long long fallback) const;
  bool boolean(const std::string& key, bool fallback) const;
  std::vector<double> list(const std::string& key) const;

  void require(const std::vector<std::string>& keys) const;

  // FNV-1a over the canonical "key=value\n" listing.
  std::uint64_t hash() const;

 private:
  std::map<std::string, std::string> entries_;
};

std::string hex64(std::uint64_t v);

}  // namespace cdft::cli
