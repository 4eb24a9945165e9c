#include "kv_config.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace benchcli {

namespace {

std::string trim(const std::string& s) {
  size_t b = 0;
  size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

void KvConfig::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file: " + path);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const size_t eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument(path + ":" + std::to_string(lineno) +
                                  ": expected 'key = value'");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) {
      throw std::invalid_argument(path + ":" + std::to_string(lineno) + ": empty key");
    }
    set(key, value);
  }
}

void KvConfig::set(const std::string& key, const std::string& value) {
  values_[key] = value;
  consulted_[key] = false;
}

void KvConfig::apply_override(const std::string& kv) {
  const size_t eq = kv.find('=');
  if (eq == std::string::npos || eq == 0) {
    throw std::invalid_argument("override must look like key=value: " + kv);
  }
  set(trim(kv.substr(0, eq)), trim(kv.substr(eq + 1)));
}

bool KvConfig::has(const std::string& key) const { return values_.count(key) > 0; }

std::string KvConfig::get_string(const std::string& key, const std::string& def) const {
  std::string out = def;
  const auto it = values_.find(key);
  if (it != values_.end()) {
    out = it->second;
    consulted_[key] = true;
  }
  resolved_[key] = out;
  return out;
}

double KvConfig::get_double(const std::string& key, double def) const {
  const std::string raw = get_string(key, format_double(def));
  try {
    size_t pos = 0;
    const double v = std::stod(raw, &pos);
    if (pos != raw.size()) throw std::invalid_argument(raw);
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument("config key '" + key + "' is not a number: " + raw);
  }
}

long long KvConfig::get_int(const std::string& key, long long def) const {
  const std::string raw = get_string(key, std::to_string(def));
  try {
    size_t pos = 0;
    const long long v = std::stoll(raw, &pos);
    if (pos != raw.size()) throw std::invalid_argument(raw);
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument("config key '" + key + "' is not an integer: " + raw);
  }
}

bool KvConfig::get_bool(const std::string& key, bool def) const {
  const std::string raw = get_string(key, def ? "true" : "false");
  if (raw == "true" || raw == "1" || raw == "yes") return true;
  if (raw == "false" || raw == "0" || raw == "no") return false;
  throw std::invalid_argument("config key '" + key + "' is not a boolean: " + raw);
}

std::vector<double> KvConfig::get_double_list(const std::string& key,
                                              const std::vector<double>& def) const {
  std::string joined;
  for (size_t i = 0; i < def.size(); ++i) {
    if (i) joined += ",";
    joined += format_double(def[i]);
  }
  const std::string raw = get_string(key, joined);
  std::vector<double> out;
  std::stringstream ss(raw);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    try {
      size_t pos = 0;
      out.push_back(std::stod(item, &pos));
      if (pos != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw std::invalid_argument("config key '" + key + "' has a non-numeric entry: " + item);
    }
  }
  return out;
}

std::vector<long long> KvConfig::get_int_list(const std::string& key,
                                              const std::vector<long long>& def) const {
  std::vector<double> dd(def.begin(), def.end());
  const std::vector<double> vals = get_double_list(key, dd);
  std::vector<long long> out;
  for (double v : vals) {
    const long long i = static_cast<long long>(v);
    if (static_cast<double>(i) != v) {
      throw std::invalid_argument("config key '" + key + "' expects integers");
    }
    out.push_back(i);
  }
  return out;
}

std::vector<std::string> KvConfig::unused_keys() const {
  std::vector<std::string> out;
  for (const auto& [key, used] : consulted_) {
    if (!used) out.push_back(key);
  }
  std::sort(out.begin(), out.end());
  return out;
}

void KvConfig::write_resolved(const std::string& path,
                              const std::vector<std::string>& extra) const {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write metadata file: " + path);
  for (const auto& [key, value] : resolved_) out << key << " = " << value << "\n";
  for (const auto& line : extra) out << line << "\n";
}

}  // namespace benchcli
