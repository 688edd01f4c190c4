#include "polylim/io_util.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "polylim/errors.hpp"

namespace polylim {

uint64_t fnv1a64(const void* data, size_t len, uint64_t seed) {
  const auto* p = static_cast<const unsigned char*>(data);
  uint64_t h = seed;
  for (size_t i = 0; i < len; ++i) {
    h ^= p[i];
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hex64(uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

void atomic_write_file(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw GuardError("cannot open for writing: " + tmp);
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw GuardError("short write: " + tmp);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw GuardError("cannot rename into place: " + path);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw GuardError("cannot read: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_manifest(const RunManifest& m, const std::string& path) {
  nlohmann::ordered_json j;
  j["command"] = m.command;
  j["params"] = m.params;
  j["seed"] = m.seed;
  j["version"] = kPolylimVersion;
  j["wall_seconds"] = m.wall_seconds;
  auto& outs = j["outputs"] = nlohmann::ordered_json::array();
  for (const auto& [p, digest] : m.outputs) outs.push_back({{"path", p}, {"digest", digest}});
  atomic_write_file(path, j.dump(2) + "\n");
}

std::string csv_row(const std::vector<std::string>& fields) {
  std::string row;
  for (size_t i = 0; i < fields.size(); ++i) {
    if (i) row += ",";
    const std::string& f = fields[i];
    if (f.find_first_of(",\"\n") != std::string::npos) {
      row += '"';
      for (char c : f) {
        if (c == '"') row += '"';
        row += c;
      }
      row += '"';
    } else {
      row += f;
    }
  }
  row += "\n";
  return row;
}

}  // namespace polylim
