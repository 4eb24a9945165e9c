#pragma once

#include <map>
#include <string>
#include <vector>

namespace benchcli {

/// Flat key=value configuration: values come from an optional config file,
/// then command-line overrides.  Every value actually consulted (including
/// defaults) is recorded so the resolved configuration can be written next to
/// the outputs.
class KvConfig {
 public:
  void load_file(const std::string& path);          // '#' comments, key = value
  void set(const std::string& key, const std::string& value);
  void apply_override(const std::string& key_equals_value);

  bool has(const std::string& key) const;
  std::string get_string(const std::string& key, const std::string& def) const;
  double get_double(const std::string& key, double def) const;
  long long get_int(const std::string& key, long long def) const;
  bool get_bool(const std::string& key, bool def) const;
  std::vector<double> get_double_list(const std::string& key,
                                      const std::vector<double>& def) const;
  std::vector<long long> get_int_list(const std::string& key,
                                      const std::vector<long long>& def) const;

  /// Keys present in the input but never consulted; reported as config errors
  /// so typos do not silently fall back to defaults.
  std::vector<std::string> unused_keys() const;

  /// Writes the resolved configuration (sorted key=value lines) plus any
  /// extra lines.
  void write_resolved(const std::string& path, const std::vector<std::string>& extra) const;

 private:
  std::map<std::string, std::string> values_;
  mutable std::map<std::string, std::string> resolved_;
  mutable std::map<std::string, bool> consulted_;
};

}  // namespace benchcli
