#pragma once

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "metab/group.hpp"

namespace testutil {

inline nlohmann::json read_json(const std::string& path) {
  std::ifstream in(path);
  return nlohmann::json::parse(in);
}

inline metab::Instance load_instance(const std::string& name) {
  return metab::instance_from_json(read_json("examples_corpus/" + name + ".json"));
}

// Sorted names (without extension) of corpus files starting with `prefix`.
inline std::vector<std::string> corpus_names(const std::string& prefix) {
  std::vector<std::string> out;
  for (const auto& entry : std::filesystem::directory_iterator("examples_corpus")) {
    std::string stem = entry.path().stem().string();
    if (stem.rfind(prefix, 0) == 0 && entry.path().extension() == ".json") out.push_back(stem);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace testutil
