#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace polylim {

inline constexpr const char* kPolylimVersion = "0.1.0";

uint64_t fnv1a64(const void* data, size_t len, uint64_t seed = 0xcbf29ce484222325ULL);
std::string hex64(uint64_t v);

// Writes via a temporary file in the same directory, then renames.
void atomic_write_file(const std::string& path, const std::string& content);

std::string read_file(const std::string& path);

// Run manifest emitted next to every output file: enough to re-run the
// command bit-identically (exact paths) or statistically (MC paths).
struct RunManifest {
  std::string command;
  std::map<std::string, std::string> params;
  uint64_t seed = 0;
  double wall_seconds = 0;
  std::vector<std::pair<std::string, std::string>> outputs;  // (path, digest)
};

// Serializes the manifest as JSON and writes it to <path>.
void write_manifest(const RunManifest& m, const std::string& path);

// CSV helper: joins and quotes fields containing separators.
std::string csv_row(const std::vector<std::string>& fields);

}  // namespace polylim
