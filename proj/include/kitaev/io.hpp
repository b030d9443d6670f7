#pragma once

#include <map>
#include <optional>
#include <string>

namespace kitaev::io {

/// Flat "key = value" text; '#' starts a comment. Later keys override
/// earlier ones.
class KeyValueConfig {
 public:
  static KeyValueConfig parse(const std::string& text);
  static KeyValueConfig load(const std::string& path);

  bool has(const std::string& key) const { return values_.count(key) != 0; }
  std::optional<std::string> get(const std::string& key) const;
  std::optional<double> get_double(const std::string& key) const;
  std::optional<int> get_int(const std::string& key) const;
  void set(const std::string& key, std::string value) {
    values_[key] = std::move(value);
  }
  const std::map<std::string, std::string>& values() const { return values_; }

 private:
  std::map<std::string, std::string> values_;
};

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& contents);

/// Shortest round-trip text for a double.
std::string format_double(double x);

}  // namespace kitaev::io
