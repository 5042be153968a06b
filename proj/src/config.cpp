#include "obsint/config.hpp"

#include <fmt/format.h>

#include <charconv>
#include <fstream>
#include <sstream>

#include "obsint/error.hpp"

namespace obsint {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& s) {
  const std::string v = trim(s);
  double out = 0.0;
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size() || v.empty()) {
    throw Error("config key '" + key + "': expected a number, got '" + s + "'");
  }
  return out;
}

}  // namespace

void Config::set(const std::string& key, const std::string& value) {
  if (!has(key)) throw Error("unknown config key '" + key + "'");
  values_[key] = value;
}

void Config::merge_text(const std::string& text, const std::string& origin) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) {
      throw Error(fmt::format("{}:{}: expected 'key = value'", origin, lineno));
    }
    const std::string key = trim(t.substr(0, eq));
    if (!has(key)) throw Error(fmt::format("{}:{}: unknown config key '{}'", origin, lineno, key));
    values_[key] = trim(t.substr(eq + 1));
  }
}

void Config::merge_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open config file " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  merge_text(ss.str(), path.string());
}

const std::string& Config::str(const std::string& key) const {
  auto it = values_.find(key);
  if (it == values_.end()) throw Error("missing config key '" + key + "'");
  return it->second;
}

double Config::num(const std::string& key) const { return to_double(key, str(key)); }

long long Config::integer(const std::string& key) const {
  const double v = num(key);
  if (v != static_cast<double>(static_cast<long long>(v))) {
    throw Error("config key '" + key + "': expected an integer");
  }
  return static_cast<long long>(v);
}

std::vector<double> Config::list(const std::string& key) const {
  std::vector<double> out;
  const std::string& s = str(key);
  if (trim(s).empty()) return out;
  std::size_t start = 0;
  while (true) {
    const auto comma = s.find(',', start);
    out.push_back(to_double(key, s.substr(start, comma - start)));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

std::string Config::dump() const {
  std::string out;
  for (const auto& [k, v] : values_) out += k + " = " + v + "\n";
  return out;
}

std::uint64_t fnv1a(const std::string& text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::uint64_t Config::hash() const { return fnv1a(dump()); }

}  // namespace obsint
