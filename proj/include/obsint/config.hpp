#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace obsint {

// Flat "key = value" configuration with dotted keys. Lines starting with
// '#' are comments; lists are comma separated. A Config is created with a
// full set of defaults and only those keys may be overridden.
class Config {
 public:
  Config() = default;
  explicit Config(std::map<std::string, std::string> defaults) : values_(std::move(defaults)) {}

  // Throws on unknown keys or malformed lines.
  void merge_text(const std::string& text, const std::string& origin = "<text>");
  void merge_file(const std::filesystem::path& path);
  void set(const std::string& key, const std::string& value);

  bool has(const std::string& key) const { return values_.count(key) != 0; }
  const std::string& str(const std::string& key) const;
  double num(const std::string& key) const;
  long long integer(const std::string& key) const;
  std::vector<double> list(const std::string& key) const;

  // Sorted "key = value" lines; the hash is FNV-1a over this text.
  std::string dump() const;
  std::uint64_t hash() const;

  const std::map<std::string, std::string>& values() const { return values_; }

 private:
  std::map<std::string, std::string> values_;
};

std::uint64_t fnv1a(const std::string& text);

}  // namespace obsint
