#include "lamg/approx.hpp"

#include <stdexcept>

#include "lamg/elaborate.hpp"

namespace lamg::approx {

using typed::Term;
using typed::TermKind;
using typed::TypeKind;
namespace node = typed::node;

std::string_view to_string(VerdictKind kind) {
  switch (kind) {
    case VerdictKind::Holds: return "holds";
    case VerdictKind::Fails: return "fails";
    case VerdictKind::Inconclusive: return "inconclusive";
  }
  return "?";
}

std::string_view to_string(Cause cause) { return cause == Cause::Fuel ? "fuel" : "sampling"; }

// ------------------------------------------------------------------ sampling

namespace {

// Nested μ unfoldings tried before a type is declared uninhabited.
constexpr std::size_t kUnfoldLimit = 16;

std::optional<Term> minimal_value(const typed::Type& type, std::size_t unfolds) {
  switch (type.kind()) {
    case TypeKind::Unit: return Term::unit();
    case TypeKind::Var: return std::nullopt;
    case TypeKind::Prod: {
      auto left = minimal_value(type.left(), unfolds);
      if (!left) return std::nullopt;
      auto right = minimal_value(type.right(), unfolds);
      if (!right) return std::nullopt;
      return Term::pair(*left, *right);
    }
    case TypeKind::Sum: {
      if (auto left = minimal_value(type.left(), unfolds)) return Term::inl(type, *left);
      if (auto right = minimal_value(type.right(), unfolds)) return Term::inr(type, *right);
      return std::nullopt;
    }
    case TypeKind::Mu: {
      if (unfolds == kUnfoldLimit) return std::nullopt;
      auto body = minimal_value(typed::unfold(type), unfolds + 1);
      if (!body) return std::nullopt;
      return Term::roll(type, *body);
    }
    case TypeKind::Fun: return Term::lam(type.left(), Term::err(type.right()));
  }
  return std::nullopt;
}

}  // namespace

Term sample_value(const typed::Type& type, Rng& rng, std::size_t budget) {
  if (!typed::is_closed(type)) throw std::invalid_argument("cannot sample an open type " + to_string(type));
  if (budget == 0) {
    auto value = minimal_value(type, 0);
    if (!value) throw std::invalid_argument("no value of type " + to_string(type));
    return *value;
  }
  switch (type.kind()) {
    case TypeKind::Unit: return Term::unit();
    case TypeKind::Var: break;
    case TypeKind::Prod: {
      Term left = sample_value(type.left(), rng, budget - 1);
      return Term::pair(left, sample_value(type.right(), rng, budget - 1));
    }
    case TypeKind::Sum: {
      bool left = rng.chance(0.5);
      try {
        if (left) return Term::inl(type, sample_value(type.left(), rng, budget - 1));
        return Term::inr(type, sample_value(type.right(), rng, budget - 1));
      } catch (const std::invalid_argument&) {
        if (left) return Term::inr(type, sample_value(type.right(), rng, budget - 1));
        return Term::inl(type, sample_value(type.left(), rng, budget - 1));
      }
    }
    case TypeKind::Mu: return Term::roll(type, sample_value(typed::unfold(type), rng, budget - 1));
    case TypeKind::Fun: {
      const auto& domain = type.left();
      const auto& codomain = type.right();
      switch (rng.below(4)) {
        case 0:
          if (domain == codomain) return Term::lam(domain, Term::var(0));
          [[fallthrough]];
        case 1:
        case 2: return Term::lam(domain, sample_value(codomain, rng, budget - 1));
        default: return Term::lam(domain, Term::err(codomain));
      }
    }
  }
  throw std::invalid_argument("cannot sample type " + to_string(type));
}

// ---------------------------------------------------------------- comparing

namespace {

struct Partial {
  VerdictKind kind = VerdictKind::Holds;
  std::optional<Cause> cause;
};

class Comparator {
 public:
  explicit Comparator(const CompareConfig& config) : config_(config), rng_(config.seed) {}

  Partial outcomes(const typed::Outcome& o1, const typed::Outcome& o2, const typed::Type& type,
                   std::size_t depth) {
    note_fuel(o1);
    note_fuel(o2);
    using K = OutcomeKind;
    if (o1.kind == K::TypeError) return {};
    if (o1.kind == K::FuelExhausted && o2.kind == K::FuelExhausted) return {};
    if (o1.kind == K::FuelExhausted || o2.kind == K::FuelExhausted) {
      return {VerdictKind::Inconclusive, Cause::Fuel};
    }
    if (o2.kind == K::TypeError) return fail("left produced " + typed::print(o1.term) + ", right errored");
    return values(o1.term, o2.term, type, depth);
  }

  Partial values(const Term& v1, const Term& v2, const typed::Type& type, std::size_t depth) {
    switch (type.kind()) {
      case TypeKind::Unit: return {};
      case TypeKind::Var: break;
      case TypeKind::Mu: {
        const auto* r1 = v1.as<node::Roll>();
        const auto* r2 = v2.as<node::Roll>();
        if (r1 == nullptr || r2 == nullptr) break;
        return values(r1->body, r2->body, typed::unfold(type), depth);
      }
      case TypeKind::Prod: {
        const auto* p1 = v1.as<node::Pair>();
        const auto* p2 = v2.as<node::Pair>();
        if (p1 == nullptr || p2 == nullptr) break;
        Partial first = values(p1->first, p2->first, type.left(), depth);
        if (first.kind == VerdictKind::Fails) return first;
        return join(first, values(p1->second, p2->second, type.right(), depth));
      }
      case TypeKind::Sum: {
        bool left1 = v1.kind() == TermKind::Inl;
        bool left2 = v2.kind() == TermKind::Inl;
        if (left1 != left2) {
          return fail("different injections: " + typed::print(v1) + " vs " + typed::print(v2));
        }
        const Term& b1 = left1 ? v1.get<node::Inl>().body : v1.get<node::Inr>().body;
        const Term& b2 = left2 ? v2.get<node::Inl>().body : v2.get<node::Inr>().body;
        return values(b1, b2, left1 ? type.left() : type.right(), depth);
      }
      case TypeKind::Fun: return functions(v1, v2, type, depth);
    }
    throw std::logic_error("values do not match type " + to_string(type) + ": " + typed::print(v1) + " vs " +
                           typed::print(v2));
  }

  Verdict finish(const Partial& p, const Term& t1, const Term& t2) const {
    Verdict v;
    v.kind = p.kind;
    v.cause = p.cause;
    v.fuel_used = fuel_used_;
    v.samples = samples_;
    if (p.kind == VerdictKind::Fails) {
      v.witness = Witness{typed::print(t1), typed::print(t2), failure_path_, config_.seed, failure_detail_};
    }
    return v;
  }

  const CompareConfig& config() const { return config_; }

 private:
  Partial functions(const Term& f1, const Term& f2, const typed::Type& type, std::size_t depth) {
    if (depth >= config_.max_depth) return {VerdictKind::Inconclusive, Cause::Sampling};
    Partial result;
    for (std::size_t i = 0; i < config_.samples; ++i) {
      Term argument = sample_value(type.left(), rng_);
      ++samples_;
      path_.push_back(typed::print(argument));
      auto o1 = typed::eval(Term::app(f1, argument), config_.fuel);
      auto o2 = typed::eval(Term::app(f2, argument), config_.fuel);
      result = join(result, outcomes(o1, o2, type.right(), depth + 1));
      path_.pop_back();
      if (result.kind == VerdictKind::Fails) return result;
    }
    return result;
  }

  static Partial join(const Partial& a, const Partial& b) {
    if (a.kind == VerdictKind::Fails) return a;
    if (b.kind == VerdictKind::Fails) return b;
    if (a.kind == VerdictKind::Inconclusive) return a;
    return b;
  }

  Partial fail(std::string detail) {
    if (failure_detail_.empty()) {
      failure_detail_ = std::move(detail);
      failure_path_ = path_;
    }
    return {VerdictKind::Fails, std::nullopt};
  }

  void note_fuel(const typed::Outcome& o) { fuel_used_ = std::max(fuel_used_, o.steps); }

  CompareConfig config_;
  Rng rng_;
  std::vector<std::string> path_;
  std::vector<std::string> failure_path_;
  std::string failure_detail_;
  std::size_t fuel_used_ = 0;
  std::size_t samples_ = 0;
};

Verdict both_ways(const Verdict& forward, const Verdict& backward) {
  Verdict out = forward.kind == VerdictKind::Fails ? forward : backward;
  if (forward.kind != VerdictKind::Fails && backward.kind != VerdictKind::Fails) {
    out = forward.kind == VerdictKind::Inconclusive ? forward : backward;
  }
  out.fuel_used = std::max(forward.fuel_used, backward.fuel_used);
  out.samples = forward.samples + backward.samples;
  return out;
}

CompareConfig scaled(CompareConfig config) {
  config.fuel *= kTypedFuelFactor;
  return config;
}

typed::Type common_type(const gradual::Term& t1, const gradual::Term& t2) {
  auto a = gradual::typecheck({}, t1);
  auto b = gradual::typecheck({}, t2);
  if (!(a == b)) {
    throw TypeCheckError("Compare", "",
                         "programs have different types: " + to_string(a) + " and " + to_string(b));
  }
  return elaborate::translate_type(a);
}

}  // namespace

Verdict compare_outcomes(const typed::Outcome& o1, const typed::Outcome& o2, const typed::Type& type,
                         const CompareConfig& config) {
  Comparator c(config);
  return c.finish(c.outcomes(o1, o2, type, 0), o1.term, o2.term);
}

Verdict compare_error_approx(const Term& t1, const Term& t2, const typed::Type& type, const CompareConfig& config) {
  Comparator c(config);
  auto o1 = typed::eval(t1, config.fuel);
  auto o2 = typed::eval(t2, config.fuel);
  return c.finish(c.outcomes(o1, o2, type, 0), t1, t2);
}

Verdict compare_equiv(const Term& t1, const Term& t2, const typed::Type& type, const CompareConfig& config) {
  return both_ways(compare_error_approx(t1, t2, type, config), compare_error_approx(t2, t1, type, config));
}

Verdict compare_error_approx(const gradual::Term& t1, const gradual::Term& t2, const CompareConfig& config) {
  auto type = common_type(t1, t2);
  return compare_error_approx(elaborate::translate_term(t1), elaborate::translate_term(t2), type, scaled(config));
}

Verdict compare_equiv(const gradual::Term& t1, const gradual::Term& t2, const CompareConfig& config) {
  auto type = common_type(t1, t2);
  return compare_equiv(elaborate::translate_term(t1), elaborate::translate_term(t2), type, scaled(config));
}

GradualityPair build_graduality_pair(const gradual::Term& t1, const gradual::Term& t2,
                                     const dynamism::DynDeriv& c) {
  if (!gradual::is_closed(t1) || !gradual::is_closed(t2)) {
    throw std::invalid_argument("graduality pairs are built for closed terms only");
  }
  auto b1 = gradual::typecheck({}, t1);
  auto b2 = gradual::typecheck({}, t2);
  if (!(c.lower() == b1) || !(c.upper() == b2)) {
    throw std::invalid_argument("derivation " + dynamism::to_string(c) + " does not relate " + to_string(b1) +
                                " and " + to_string(b2));
  }
  return {elaborate::translate_term(gradual::Term::cast(b1, b2, t1)), elaborate::translate_term(t2),
          elaborate::translate_type(b2)};
}

}  // namespace lamg::approx
