#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace lamg {

// How a fuel-bounded evaluation ended. Divergence is never reported as an
// error: running out of fuel is its own outcome.
enum class OutcomeKind { Value, TypeError, FuelExhausted };

constexpr std::string_view to_string(OutcomeKind kind) {
  switch (kind) {
    case OutcomeKind::Value: return "value";
    case OutcomeKind::TypeError: return "error";
    case OutcomeKind::FuelExhausted: return "fuel-exhausted";
  }
  return "?";
}

// Raised by parsers; carries a 1-based source position.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, std::size_t line, std::size_t column)
      : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
        line_(line),
        column_(column) {}
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

// Raised by the type checkers. `rule` names the typing rule that failed and
// `subterm` is the printed offending term.
class TypeCheckError : public std::runtime_error {
 public:
  TypeCheckError(std::string rule, std::string subterm, const std::string& message)
      : std::runtime_error(rule + ": " + message + (subterm.empty() ? "" : " in `" + subterm + "`")),
        rule_(std::move(rule)),
        subterm_(std::move(subterm)) {}
  const std::string& rule() const { return rule_; }
  const std::string& subterm() const { return subterm_; }

 private:
  std::string rule_;
  std::string subterm_;
};

// A closed well-typed term that is neither a value nor an error failed to
// step. Progress rules this out; seeing one means an interpreter bug.
class StuckError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace lamg
