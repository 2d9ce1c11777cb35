#ifndef VROPT_INI_HPP
#define VROPT_INI_HPP

#include <algorithm>
#include <cctype>
#include <istream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "vropt/errors.hpp"

namespace vropt {

/// Flat key/value configuration, keys spelled "section.key". Values stay
/// strings until a typed getter pulls them out.
using config_map = std::map<std::string, std::string>;

namespace detail {

inline std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

}  // namespace detail

/// INI-style sections with `key = value` lines; `;` and `#` start comments.
inline config_map parse_ini(std::istream& in) {
  config_map out;
  std::string line, section;
  long line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto c = line.find_first_of(";#"); c != std::string::npos)
      line = line.substr(0, c);
    line = detail::trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw parse_error("unterminated section header", line_no);
      section = detail::trim(line.substr(1, line.size() - 2));
      if (section.empty()) throw parse_error("empty section name", line_no);
      continue;
    }
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw parse_error("expected key = value", line_no);
    std::string key = detail::trim(line.substr(0, eq));
    std::string val = detail::trim(line.substr(eq + 1));
    if (key.empty()) throw parse_error("empty key", line_no);
    out[section.empty() ? key : section + "." + key] = val;
  }
  return out;
}

struct config_view {
  const config_map& map;

  std::string get(const std::string& key, const std::string& dflt) const {
    auto it = map.find(key);
    return it == map.end() ? dflt : it->second;
  }

  double get_double(const std::string& key, double dflt) const {
    auto it = map.find(key);
    if (it == map.end() || it->second.empty()) return dflt;
    try {
      std::size_t used = 0;
      double v = std::stod(it->second, &used);
      if (used != it->second.size()) throw std::invalid_argument(key);
      return v;
    } catch (const std::exception&) {
      throw config_error("config key '" + key + "': expected number, got '" +
                         it->second + "'");
    }
  }

  long long get_int(const std::string& key, long long dflt) const {
    auto it = map.find(key);
    if (it == map.end() || it->second.empty()) return dflt;
    try {
      std::size_t used = 0;
      long long v = std::stoll(it->second, &used);
      if (used != it->second.size()) throw std::invalid_argument(key);
      return v;
    } catch (const std::exception&) {
      throw config_error("config key '" + key + "': expected integer, got '" +
                         it->second + "'");
    }
  }

  bool get_bool(const std::string& key, bool dflt) const {
    auto it = map.find(key);
    if (it == map.end() || it->second.empty()) return dflt;
    std::string v = it->second;
    std::transform(v.begin(), v.end(), v.begin(), ::tolower);
    if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
    if (v == "false" || v == "0" || v == "no" || v == "off") return false;
    throw config_error("config key '" + key + "': expected boolean, got '" +
                       it->second + "'");
  }

  std::vector<std::string> get_list(const std::string& key,
                                    const std::string& dflt) const {
    std::string raw = get(key, dflt);
    std::vector<std::string> out;
    std::stringstream ss(raw);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      tok = detail::trim(tok);
      if (!tok.empty()) out.push_back(tok);
    }
    return out;
  }
};

}  // namespace vropt

#endif
