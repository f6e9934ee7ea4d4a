#include "lexer.hpp"

#include <array>
#include <cctype>

namespace lamg::syntax {

namespace {

constexpr std::array<std::string_view, 13> kKeywords = {"fun",  "match", "with", "case", "of",     "inl", "inr",
                                                        "err",  "let",   "in",   "roll", "unroll", "mu"};

constexpr std::array<std::string_view, 2> kTwoCharSymbols = {"->", "=>"};

bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

}  // namespace

std::vector<Token> tokenize(std::string_view source) {
  std::vector<Token> out;
  std::size_t line = 1;
  std::size_t column = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
      if (source[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
      ++i;
    }
  };

  while (i < source.size()) {
    char c = source[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '#') {
      while (i < source.size() && source[i] != '\n') advance(1);
      continue;
    }
    std::size_t start_line = line;
    std::size_t start_column = column;
    if (is_ident_start(c)) {
      std::size_t j = i;
      while (j < source.size() && is_ident_char(source[j])) ++j;
      std::string word(source.substr(i, j - i));
      bool keyword = false;
      for (auto k : kKeywords) keyword = keyword || k == word;
      out.push_back({keyword ? Tok::Keyword : Tok::Ident, std::move(word), start_line, start_column});
      advance(j - i);
      continue;
    }
    bool matched = false;
    for (auto sym : kTwoCharSymbols) {
      if (source.substr(i, 2) == sym) {
        out.push_back({Tok::Symbol, std::string(sym), start_line, start_column});
        advance(2);
        matched = true;
        break;
      }
    }
    if (matched) continue;
    static constexpr std::string_view kSingles = "()[],:<>?*+|.=1";
    if (kSingles.find(c) != std::string_view::npos) {
      out.push_back({Tok::Symbol, std::string(1, c), start_line, start_column});
      advance(1);
      continue;
    }
    // U+2192 (→) and U+21D2 (⇒) are accepted as arrows.
    if (source.substr(i, 3) == "→" || source.substr(i, 3) == "⇒") {
      out.push_back({Tok::Symbol, source.substr(i, 3) == "→" ? "->" : "=>", start_line, start_column});
      i += 3;
      column += 1;
      continue;
    }
    throw ParseError(std::string("unexpected character `") + c + "`", line, column);
  }
  out.push_back({Tok::End, "", line, column});
  return out;
}

}  // namespace lamg::syntax
