// Replays tests/golden/*.args through the CLI and compares stdout, stderr and
// the exit code byte for byte. Set DLAP_UPDATE_GOLDEN=1 to rewrite the
// expectations from the current build.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"

namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void dump(const fs::path& p, const std::string& text) {
  std::ofstream(p, std::ios::binary) << text;
}

std::vector<std::string> read_args(const fs::path& p) {
  std::vector<std::string> args{"dlap"};
  std::ifstream in(p);
  for (std::string line; std::getline(in, line);) args.push_back(line);
  return args;
}

}  // namespace

TEST_CASE("golden CLI transcripts") {
  const fs::path dir = DLAP_GOLDEN_DIR;
  std::vector<fs::path> cases;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.path().extension() == ".args") cases.push_back(entry.path());
  }
  std::sort(cases.begin(), cases.end());
  REQUIRE(cases.size() >= 20);
  const bool update = std::getenv("DLAP_UPDATE_GOLDEN") != nullptr;

  for (const auto& args_path : cases) {
    const std::string name = args_path.stem().string();
    CAPTURE(name);
    const std::vector<std::string> args = read_args(args_path);
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());

    std::ostringstream out;
    std::ostringstream err;
    const int code = dlap::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);

    const fs::path stem = dir / name;
    if (update) {
      dump(fs::path(stem).concat(".out"), out.str());
      dump(fs::path(stem).concat(".err"), err.str());
      dump(fs::path(stem).concat(".code"), std::to_string(code) + "\n");
      continue;
    }
    CHECK(out.str() == slurp(fs::path(stem).concat(".out")));
    CHECK(err.str() == slurp(fs::path(stem).concat(".err")));
    CHECK(std::to_string(code) + "\n" == slurp(fs::path(stem).concat(".code")));
  }
}
