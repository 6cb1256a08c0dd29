#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace pagraph {

// Plain key-value config file: one `key = value` per line, full-line '#'
// comments, blank lines ignored, later assignments override earlier ones.
// Keys are dotted paths (dataset.source, model.epochs, ...). Reads are
// tracked so callers can reject manifests with unrecognized keys.
class KvConfig {
 public:
  static KvConfig parse_file(const std::string& path);   // ParseError on IO/format
  static KvConfig parse_string(const std::string& text);

  bool has(const std::string& key) const;

  std::string get(const std::string& key, const std::string& fallback) const;
  std::string get_required(const std::string& key) const;  // ConfigError if absent

  // Typed reads; ConfigError on malformed values.
  std::int64_t get_int(const std::string& key, std::int64_t fallback) const;
  std::uint64_t get_uint(const std::string& key, std::uint64_t fallback) const;
  double get_double(const std::string& key, double fallback) const;
  bool get_bool(const std::string& key, bool fallback) const;

  void set(const std::string& key, const std::string& value);

  // Keys in first-assignment order.
  std::vector<std::string> keys() const { return order_; }

  // Keys never read through any getter; used to reject typo'd manifests.
  std::vector<std::string> untouched_keys() const;

  // Deterministic "key = value" dump in first-assignment order.
  std::string dump() const;

 private:
  std::map<std::string, std::string> values_;
  std::vector<std::string> order_;
  mutable std::set<std::string> touched_;
};

}  // namespace pagraph
