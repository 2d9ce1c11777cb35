#ifndef VROPT_TRACE_IO_HPP
#define VROPT_TRACE_IO_HPP

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "vropt/errors.hpp"
#include "vropt/ini.hpp"
#include "vropt/trace.hpp"
#include "vropt/version.hpp"

namespace vropt {

inline const char* kTraceCsvHeader =
    "algo,stage,outer,ifo,eta,mu,rho,grad_f_sq,grad_surr_sq,seed";

/// 17 significant digits: the shortest fixed choice that round-trips any
/// double exactly. NaN serializes as the empty field.
inline std::string format_trace_float(double v) {
  if (std::isnan(v)) return "";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

struct seeded_trace {
  std::uint64_t seed = 0;
  trace tr;
};

/// One CSV per experiment; rows are (seed, record) sorted by (seed, ifo),
/// which is the order runs produce them in.
inline std::string traces_to_csv(const std::string& algo,
                                 const std::vector<seeded_trace>& runs) {
  std::string out{kTraceCsvHeader};
  out += '\n';
  for (const seeded_trace& st : runs) {
    for (const trace_record& rec : st.tr.records) {
      out += algo;
      out += ',' + std::to_string(rec.stage);
      out += ',' + std::to_string(rec.outer);
      out += ',' + std::to_string(rec.ifo);
      out += ',' + format_trace_float(rec.eta);
      out += ',' + format_trace_float(rec.mu);
      out += ',' + format_trace_float(rec.rho);
      out += ',' + format_trace_float(rec.grad_f_sq);
      out += ',' + format_trace_float(rec.grad_surr_sq);
      out += ',' + std::to_string(st.seed);
      out += '\n';
    }
  }
  return out;
}

/// Writes through a temp file in the same directory plus rename, so an
/// interrupted run never leaves a partial file at the final path.
inline void write_file_atomic(const std::filesystem::path& path,
                              const std::string& content) {
  namespace fs = std::filesystem;
  std::error_code ec;
  if (path.has_parent_path()) fs::create_directories(path.parent_path(), ec);
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw io_error("cannot open " + tmp.string() + " for writing");
    f.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!f) throw io_error("short write to " + tmp.string());
  }
  fs::rename(tmp, path, ec);
  if (ec)
    throw io_error("rename " + tmp.string() + " -> " + path.string() + ": " +
                   ec.message());
}

/// Sidecar with the fully resolved configuration; feeding it back through
/// `run` reproduces the CSV byte for byte on the same platform.
inline std::string config_to_sidecar_json(const config_map& resolved) {
  nlohmann::json j;
  j["library"] = "vropt";
  j["version"] = version_string();
  nlohmann::json cfg = nlohmann::json::object();
  for (const auto& [k, v] : resolved) cfg[k] = v;
  j["config"] = cfg;
  return j.dump(2) + "\n";
}

inline config_map sidecar_json_to_config(std::istream& in) {
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw parse_error(std::string("sidecar JSON: ") + e.what());
  }
  if (!j.contains("config") || !j["config"].is_object())
    throw parse_error("sidecar JSON: missing 'config' object");
  config_map out;
  for (const auto& [k, v] : j["config"].items()) {
    if (!v.is_string())
      throw parse_error("sidecar JSON: config values must be strings");
    out[k] = v.get<std::string>();
  }
  return out;
}

}  // namespace vropt

#endif
