#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>

namespace crossim {

/// Flat "section.key = value" configuration files. '#' starts a comment,
/// blank lines are ignored, keys may not repeat. Typed accessors record
/// which keys were read so a campaign loader can reject leftovers instead
/// of silently ignoring typos.
class KeyValueConfig {
public:
  static KeyValueConfig parse_file(const std::string& path);
  static KeyValueConfig parse_string(const std::string& text, const std::string& origin = "<config>");

  bool has(const std::string& key) const;

  std::string get_string(const std::string& key) const;
  std::string get_string(const std::string& key, const std::string& fallback) const;
  double get_double(const std::string& key) const;
  double get_double(const std::string& key, double fallback) const;
  std::int64_t get_int(const std::string& key) const;
  std::int64_t get_int(const std::string& key, std::int64_t fallback) const;
  std::uint64_t get_uint(const std::string& key) const;
  std::uint64_t get_uint(const std::string& key, std::uint64_t fallback) const;
  bool get_bool(const std::string& key) const;
  bool get_bool(const std::string& key, bool fallback) const;

  /// Throws ConfigError naming the first key that was never read.
  void reject_unknown_keys() const;

  /// Programmatic override, same as if the key had been in the file.
  void set(const std::string& key, const std::string& value);

  bool empty() const { return values_.empty(); }

private:
  std::string describe(const std::string& key) const;  // "key 'x' (origin:line)"

  struct Entry {
    std::string value;
    int line = 0;
  };
  std::string origin_ = "<config>";
  std::map<std::string, Entry> values_;
  mutable std::set<std::string> consumed_;
};

}  // namespace crossim
