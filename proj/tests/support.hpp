#pragma once

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "lamg/gradual.hpp"

namespace lamg::test {

inline std::filesystem::path corpus_dir() { return LAMG_CORPUS_DIR; }

inline std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

// Every gradual type of depth at most `depth`, shallowest first.
inline std::vector<gradual::Type> all_types(std::size_t depth) {
  using gradual::Type;
  std::vector<Type> out = {Type::dyn(), Type::unit()};
  for (std::size_t d = 0; d < depth; ++d) {
    std::vector<Type> next = {Type::dyn(), Type::unit()};
    for (auto kind : {gradual::TypeKind::Prod, gradual::TypeKind::Sum, gradual::TypeKind::Fun}) {
      for (const auto& l : out) {
        for (const auto& r : out) next.push_back(Type::binary(kind, l, r));
      }
    }
    out = std::move(next);
  }
  return out;
}

inline gradual::Term G(std::string_view text) { return gradual::parse_term(text); }
inline gradual::Type GT(std::string_view text) { return gradual::parse_type(text); }

}  // namespace lamg::test
