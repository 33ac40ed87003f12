#pragma once

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#ifndef CTLGAMES_CORPUS_DIR
#define CTLGAMES_CORPUS_DIR "corpus"
#endif

struct TestProgram {
  std::string name;
  std::string source;
  bool expect_converge;
};

// The shipped corpus, read once, sorted by file name.
inline const std::vector<TestProgram>& test_programs(const std::string& subdir = "") {
  static std::map<std::string, std::vector<TestProgram>> cache;
  if (auto it = cache.find(subdir); it != cache.end()) return it->second;
  std::vector<TestProgram> out;
  std::filesystem::path dir = std::filesystem::path(CTLGAMES_CORPUS_DIR) / subdir;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.path().extension() != ".ctl") continue;
    std::ifstream in(entry.path());
    std::stringstream ss;
    ss << in.rdbuf();
    std::string src = ss.str();
    out.push_back({entry.path().stem().string(), src, src.find("-- expect: converge") != std::string::npos});
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.name < b.name; });
  return cache[subdir] = std::move(out);
}
