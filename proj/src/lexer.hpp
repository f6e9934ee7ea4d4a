#pragma once

// Tokenizer and parser scaffolding shared by the two surface syntaxes.

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "lamg/outcome.hpp"

namespace lamg::syntax {

enum class Tok {
  Ident,
  Keyword,
  Symbol,
  End,
};

struct Token {
  Tok kind;
  std::string text;
  std::size_t line;
  std::size_t column;
};

std::vector<Token> tokenize(std::string_view source);

class TokenStream {
 public:
  explicit TokenStream(std::string_view source) : tokens_(tokenize(source)) {}

  const Token& peek(std::size_t ahead = 0) const {
    std::size_t i = pos_ + ahead;
    return i < tokens_.size() ? tokens_[i] : tokens_.back();
  }
  bool at(std::string_view text) const {
    const auto& t = peek();
    return t.kind != Tok::Ident && t.kind != Tok::End && t.text == text;
  }
  bool at_end() const { return peek().kind == Tok::End; }
  bool accept(std::string_view text) {
    if (!at(text)) return false;
    ++pos_;
    return true;
  }
  const Token& next() {
    const Token& t = peek();
    if (t.kind != Tok::End) ++pos_;
    return t;
  }
  void expect(std::string_view text) {
    if (!accept(text)) fail("expected `" + std::string(text) + "`");
  }
  std::string expect_ident() {
    if (peek().kind != Tok::Ident) fail("expected an identifier");
    return next().text;
  }
  void expect_end() {
    if (!at_end()) fail("unexpected trailing input");
  }
  [[noreturn]] void fail(const std::string& message) const {
    const auto& t = peek();
    std::string found = t.kind == Tok::End ? "end of input" : "`" + t.text + "`";
    throw ParseError(message + ", found " + found, t.line, t.column);
  }

 private:
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

// Scope of named binders, innermost last.
class Scope {
 public:
  void push(std::string name) { names_.push_back(std::move(name)); }
  void pop(std::size_t count = 1) { names_.resize(names_.size() - count); }
  // De Bruijn index of `name`, or npos.
  std::size_t index_of(std::string_view name) const {
    for (std::size_t i = names_.size(); i-- > 0;) {
      if (names_[i] == name) return names_.size() - 1 - i;
    }
    return npos;
  }
  std::size_t depth() const { return names_.size(); }
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

 private:
  std::vector<std::string> names_;
};

}  // namespace lamg::syntax
