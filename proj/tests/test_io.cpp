#include <doctest.h>

#include <cstdio>
#include <filesystem>

#include "polylim/io_util.hpp"

using namespace polylim;

TEST_CASE("csv rows quote separators and quotes") {
  CHECK(csv_row({"a", "b", "c"}) == "a,b,c\n");
  CHECK(csv_row({"a,b", "c"}) == "\"a,b\",c\n");
  CHECK(csv_row({"say \"hi\""}) == "\"say \"\"hi\"\"\"\n");
}

TEST_CASE("fnv digest is stable") {
  const char data[] = "polylim";
  CHECK(hex64(fnv1a64(data, 7)) == hex64(fnv1a64(data, 7)));
  CHECK(hex64(fnv1a64(data, 7)) != hex64(fnv1a64(data, 6)));
  CHECK(hex64(fnv1a64("", 0)) == "cbf29ce484222325");
}

TEST_CASE("atomic write then read round-trips") {
  const std::string path = std::filesystem::temp_directory_path() / "polylim_io_test.txt";
  atomic_write_file(path, "line1\nline2\n");
  CHECK(read_file(path) == "line1\nline2\n");
  atomic_write_file(path, "other");
  CHECK(read_file(path) == "other");
  std::remove(path.c_str());
}

TEST_CASE("manifest JSON is written next to the output") {
  const std::string path = std::filesystem::temp_directory_path() / "polylim_manifest_test.json";
  RunManifest m;
  m.command = "series";
  m.params = {{"M", "1"}, {"N", "12"}};
  m.seed = 7;
  m.outputs = {{"out.csv", "abcd"}};
  write_manifest(m, path);
  const std::string text = read_file(path);
  CHECK(text.find("\"command\": \"series\"") != std::string::npos);
  CHECK(text.find("\"digest\": \"abcd\"") != std::string::npos);
  std::remove(path.c_str());
}
