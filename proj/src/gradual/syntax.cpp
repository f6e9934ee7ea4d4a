#include <ostream>
#include <sstream>

#include "lamg/gradual.hpp"
#include "../lexer.hpp"

namespace lamg::gradual {

using syntax::Scope;
using syntax::TokenStream;

// ----------------------------------------------------------------- printing

namespace {

// Type precedence: 0 arrow, 1 sum, 2 product, 3 atom. All binary type
// operators associate to the right.
void print_type(std::ostream& out, const Type& type, int level) {
  switch (type.kind()) {
    case TypeKind::Dyn: out << '?'; return;
    case TypeKind::Unit: out << '1'; return;
    default: break;
  }
  int own = type.kind() == TypeKind::Fun ? 0 : type.kind() == TypeKind::Sum ? 1 : 2;
  const char* op = type.kind() == TypeKind::Fun ? " -> " : type.kind() == TypeKind::Sum ? " + " : " * ";
  bool parens = level > own;
  if (parens) out << '(';
  print_type(out, type.left(), own + 1);
  out << op;
  print_type(out, type.right(), own);
  if (parens) out << ')';
}

std::string binder(std::size_t level) { return "x" + std::to_string(level); }

// Term precedence: 0 binder forms, 1 application, 2 prefix forms, 3 atoms.
class Printer {
 public:
  explicit Printer(std::ostream& out) : out_(out) {}

  void print(const Term& term, int level) {
    switch (term.kind()) {
      case TermKind::Err: {
        const auto& e = term.get<node::Err>();
        if (!e.type) {
          out_ << "err";
          return;
        }
        open(level > 0);
        out_ << "err : ";
        print_type(out_, *e.type, 0);
        close(level > 0);
        return;
      }
      case TermKind::Var: {
        auto index = term.get<node::Var>().index;
        if (index < depth_) {
          out_ << binder(depth_ - 1 - index);
        } else {
          out_ << "free" << (index - depth_);
        }
        return;
      }
      case TermKind::UnitVal: out_ << "()"; return;
      case TermKind::Pair: {
        const auto& p = term.get<node::Pair>();
        out_ << '(';
        print(p.first, 0);
        out_ << ", ";
        print(p.second, 0);
        out_ << ')';
        return;
      }
      case TermKind::Cast: {
        const auto& c = term.get<node::Cast>();
        open(level > 2);
        out_ << '<';
        print_type(out_, c.from, 0);
        out_ << " => ";
        print_type(out_, c.to, 0);
        out_ << "> ";
        print(c.body, 2);
        close(level > 2);
        return;
      }
      case TermKind::Inl:
      case TermKind::Inr: {
        bool left = term.kind() == TermKind::Inl;
        const auto& sum = left ? term.get<node::Inl>().sum : term.get<node::Inr>().sum;
        const auto& body = left ? term.get<node::Inl>().body : term.get<node::Inr>().body;
        open(level > 2);
        out_ << (left ? "inl [" : "inr [");
        print_type(out_, sum, 0);
        out_ << "] ";
        print(body, 2);
        close(level > 2);
        return;
      }
      case TermKind::App: {
        const auto& a = term.get<node::App>();
        open(level > 1);
        print(a.function, 1);
        out_ << ' ';
        print(a.argument, 2);
        close(level > 1);
        return;
      }
      case TermKind::Lam: {
        const auto& l = term.get<node::Lam>();
        open(level > 0);
        out_ << "fun (" << binder(depth_) << " : ";
        print_type(out_, l.domain, 0);
        out_ << ") -> ";
        under(1, [&] { print(l.body, 0); });
        close(level > 0);
        return;
      }
      case TermKind::MatchPair: {
        const auto& m = term.get<node::MatchPair>();
        open(level > 0);
        out_ << "match ";
        print(m.scrutinee, 0);
        out_ << " with (" << binder(depth_) << " : ";
        print_type(out_, m.first_type, 0);
        out_ << ", " << binder(depth_ + 1) << " : ";
        print_type(out_, m.second_type, 0);
        out_ << ") -> ";
        under(2, [&] { print(m.body, 0); });
        close(level > 0);
        return;
      }
      case TermKind::Case: {
        const auto& c = term.get<node::Case>();
        open(level > 0);
        out_ << "case ";
        print(c.scrutinee, 0);
        out_ << " of inl (" << binder(depth_) << " : ";
        print_type(out_, c.left_type, 0);
        out_ << ") -> ";
        // A binder form in the left branch would swallow the `|`.
        under(1, [&] { print(c.left, 1); });
        out_ << " | inr (" << binder(depth_) << " : ";
        print_type(out_, c.right_type, 0);
        out_ << ") -> ";
        under(1, [&] { print(c.right, 0); });
        close(level > 0);
        return;
      }
    }
  }

 private:
  void open(bool parens) {
    if (parens) out_ << '(';
  }
  void close(bool parens) {
    if (parens) out_ << ')';
  }
  template <class F>
  void under(std::size_t count, F body) {
    depth_ += count;
    body();
    depth_ -= count;
  }

  std::ostream& out_;
  std::size_t depth_ = 0;
};

}  // namespace

std::string to_string(const Type& type) {
  std::ostringstream out;
  print_type(out, type, 0);
  return out.str();
}

std::ostream& operator<<(std::ostream& out, const Type& type) {
  print_type(out, type, 0);
  return out;
}

std::string print(const Term& term) {
  std::ostringstream out;
  Printer(out).print(term, 0);
  return out.str();
}

std::ostream& operator<<(std::ostream& out, const Term& term) {
  Printer(out).print(term, 0);
  return out;
}

// ------------------------------------------------------------------ parsing

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : in_(text) {}

  Type type() {
    Type left = sum_type();
    if (in_.accept("->")) return Type::fun(left, type());
    return left;
  }

  Term expr() {
    if (in_.accept("fun")) {
      in_.expect("(");
      auto name = in_.expect_ident();
      in_.expect(":");
      Type domain = type();
      in_.expect(")");
      in_.expect("->");
      return Term::lam(domain, bound({name}, [&] { return expr(); }));
    }
    if (in_.accept("match")) {
      Term scrutinee = expr();
      in_.expect("with");
      in_.expect("(");
      auto first = in_.expect_ident();
      in_.expect(":");
      Type first_type = type();
      in_.expect(",");
      auto second = in_.expect_ident();
      in_.expect(":");
      Type second_type = type();
      in_.expect(")");
      in_.expect("->");
      return Term::match_pair(scrutinee, first_type, second_type, bound({first, second}, [&] { return expr(); }));
    }
    if (in_.accept("case")) {
      Term scrutinee = expr();
      in_.expect("of");
      in_.expect("inl");
      auto [left_name, left_type] = annotated_binder();
      in_.expect("->");
      Term left = bound({left_name}, [&] { return expr(); });
      in_.expect("|");
      in_.expect("inr");
      auto [right_name, right_type] = annotated_binder();
      in_.expect("->");
      Term right = bound({right_name}, [&] { return expr(); });
      return Term::case_of(scrutinee, left_type, left, right_type, right);
    }
    Term head = prefix();
    while (starts_prefix()) head = Term::app(head, prefix());
    return head;
  }

  TokenStream& tokens() { return in_; }

 private:
  Type sum_type() {
    Type left = prod_type();
    if (in_.accept("+")) return Type::sum(left, sum_type());
    return left;
  }
  Type prod_type() {
    Type left = atom_type();
    if (in_.accept("*")) return Type::prod(left, prod_type());
    return left;
  }
  Type atom_type() {
    if (in_.accept("?")) return Type::dyn();
    if (in_.accept("1")) return Type::unit();
    if (in_.accept("(")) {
      Type inner = type();
      in_.expect(")");
      return inner;
    }
    in_.fail("expected a type");
  }

  std::pair<std::string, Type> annotated_binder() {
    in_.expect("(");
    auto name = in_.expect_ident();
    in_.expect(":");
    Type t = type();
    in_.expect(")");
    return {name, t};
  }

  template <class F>
  Term bound(std::initializer_list<std::string> names, F body) {
    for (const auto& n : names) scope_.push(n);
    Term result = body();
    scope_.pop(names.size());
    return result;
  }

  bool starts_prefix() const {
    const auto& t = in_.peek();
    if (t.kind == syntax::Tok::Ident) return true;
    return in_.at("(") || in_.at("<") || in_.at("inl") || in_.at("inr") || in_.at("err");
  }

  // The operand of a prefix form; a trailing binder form needs no parentheses.
  Term operand() {
    for (auto keyword : {"fun", "match", "case"}) {
      if (in_.at(keyword)) return expr();
    }
    return prefix();
  }

  Term prefix() {
    if (in_.accept("<")) {
      Type from = type();
      in_.expect("=>");
      Type to = type();
      in_.expect(">");
      return Term::cast(from, to, operand());
    }
    if (in_.at("inl") || in_.at("inr")) {
      bool left = in_.next().text == "inl";
      in_.expect("[");
      Type sum = type();
      in_.expect("]");
      Term body = operand();
      return left ? Term::inl(sum, body) : Term::inr(sum, body);
    }
    return atom();
  }

  Term atom() {
    if (in_.peek().kind == syntax::Tok::Ident) {
      auto token = in_.next();
      const auto& name = token.text;
      auto index = scope_.index_of(name);
      if (index == Scope::npos) {
        throw ParseError("unbound variable `" + name + "`", token.line, token.column);
      }
      return Term::var(index);
    }
    if (in_.accept("err")) {
      if (in_.accept(":")) return Term::err(type());
      return Term::err();
    }
    if (in_.accept("(")) {
      if (in_.accept(")")) return Term::unit();
      Term first = expr();
      if (in_.accept(",")) {
        Term second = expr();
        in_.expect(")");
        return Term::pair(first, second);
      }
      in_.expect(")");
      return first;
    }
    in_.fail("expected a term");
  }

  TokenStream in_;
  Scope scope_;
};

}  // namespace

Type parse_type(std::string_view text) {
  Parser p(text);
  Type t = p.type();
  p.tokens().expect_end();
  return t;
}

Term parse_term(std::string_view text) {
  Parser p(text);
  Term t = p.expr();
  p.tokens().expect_end();
  return t;
}

}  // namespace lamg::gradual
