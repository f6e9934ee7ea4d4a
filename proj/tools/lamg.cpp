#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "lamg/approx.hpp"
#include "lamg/dynamism.hpp"
#include "lamg/elaborate.hpp"
#include "lamg/gradual.hpp"
#include "lamg/propgen.hpp"
#include "lamg/suites.hpp"
#include "lamg/typed.hpp"
#include "report.hpp"

namespace fs = std::filesystem;
using namespace lamg;
using cli::json;

namespace {

enum Exit : int { kOk = 0, kFails = 1, kUsage = 2, kInconclusive = 3 };

// A diagnostic that ends the command with exit code 2.
struct UserError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

bool color_enabled() {
  const char* value = std::getenv("LAMG_COLOR");
  if (value == nullptr) return false;
  std::string_view v(value);
  return !(v.empty() || v == "0" || v == "never" || v == "off");
}

std::string paint(std::string_view label, const char* code) {
  static const bool on = color_enabled();
  if (!on) return std::string(label);
  return std::string("\x1b[") + code + "m" + std::string(label) + "\x1b[0m";
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UserError(path + ": cannot open file");
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

void write_file(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) throw UserError(path.string() + ": cannot write file");
}

bool is_typed_file(const std::string& path) { return fs::path(path).extension() == ".lamt"; }

// Parse and type errors are rethrown with the file name in front.
template <class F>
auto with_source(const std::string& path, F body) {
  try {
    return body(read_file(path));
  } catch (const ParseError& e) {
    throw UserError(path + ":" + e.what());
  } catch (const TypeCheckError& e) {
    throw UserError(path + ": type error: " + e.what());
  }
}

struct GradualProgram {
  gradual::Term term;
  gradual::Type type;
};

GradualProgram load_gradual(const std::string& path) {
  return with_source(path, [](const std::string& text) {
    auto term = gradual::parse_term(text);
    auto type = gradual::typecheck({}, term);
    return GradualProgram{term, type};
  });
}

struct TypedProgram {
  typed::Term term;
  typed::Type type;
};

TypedProgram load_typed(const std::string& path) {
  return with_source(path, [](const std::string& text) {
    auto term = typed::parse_term(text);
    auto type = typed::typecheck({}, term);
    return TypedProgram{term, type};
  });
}

gradual::Type parse_gradual_type(const std::string& text) {
  try {
    return gradual::parse_type(text);
  } catch (const ParseError& e) {
    throw UserError("type `" + text + "`:" + e.what());
  }
}

void emit(const json& j) { std::cout << j.dump(2) << '\n'; }

int exit_for(approx::VerdictKind kind) {
  switch (kind) {
    case approx::VerdictKind::Holds: return kOk;
    case approx::VerdictKind::Fails: return kFails;
    case approx::VerdictKind::Inconclusive: return kInconclusive;
  }
  return kOk;
}

// ------------------------------------------------------------------ running

template <class Outcome, class Print>
int report_outcome(const Outcome& outcome, bool as_json, Print print, json extra) {
  if (as_json) {
    json j = {{"outcome", std::string(to_string(outcome.kind))}, {"steps", outcome.steps}};
    if (outcome.kind == OutcomeKind::Value) j["value"] = print(outcome.term);
    if (outcome.kind == OutcomeKind::FuelExhausted) j["term"] = print(outcome.term);
    j.update(extra);
    emit(j);
    return kOk;
  }
  switch (outcome.kind) {
    case OutcomeKind::Value: std::cout << paint("value:", "32") << ' ' << print(outcome.term) << '\n'; break;
    case OutcomeKind::TypeError: std::cout << paint("error:", "31") << " ℧\n"; break;
    case OutcomeKind::FuelExhausted:
      std::cout << paint("fuel-exhausted", "33") << " after " << outcome.steps << " steps\n";
      break;
  }
  for (const auto& [key, value] : extra.items()) std::cout << key << ": " << value.dump() << '\n';
  return kOk;
}

int cmd_check(const std::string& file, bool as_json) {
  if (is_typed_file(file)) {
    auto p = load_typed(file);
    if (as_json) {
      emit({{"type", typed::to_string(p.type)}});
    } else {
      std::cout << paint("type:", "36") << ' ' << p.type << '\n';
    }
    return kOk;
  }
  auto p = load_gradual(file);
  if (as_json) {
    emit({{"type", gradual::to_string(p.type)}});
  } else {
    std::cout << paint("type:", "36") << ' ' << p.type << '\n';
  }
  return kOk;
}

int cmd_run(const std::string& file, std::size_t fuel, bool trace, bool as_json) {
  auto p = load_gradual(file);
  json steps = json::array();
  if (trace) {
    gradual::Term current = p.term;
    for (std::size_t i = 0; i < fuel; ++i) {
      auto next = gradual::step(current);
      if (!next) break;
      current = next->next;
      if (as_json) {
        steps.push_back({{"rule", std::string(to_string(next->rule))}, {"term", gradual::print(current)}});
      } else {
        std::cout << "  " << paint(to_string(next->rule), "35") << "  " << current << '\n';
      }
    }
  }
  auto outcome = gradual::eval(p.term, fuel);
  json extra = json::object();
  if (as_json) {
    extra["type"] = gradual::to_string(p.type);
    if (trace) extra["trace"] = steps;
  }
  return report_outcome(outcome, as_json, [](const gradual::Term& t) { return gradual::print(t); }, extra);
}

int cmd_run_typed(const std::string& file, std::size_t fuel, bool trace, bool as_json) {
  TypedProgram p = is_typed_file(file) ? load_typed(file) : [&] {
    auto g = load_gradual(file);
    return TypedProgram{elaborate::translate_term(g.term), elaborate::translate_type(g.type)};
  }();
  json steps = json::array();
  if (trace) {
    typed::Term current = p.term;
    for (std::size_t i = 0; i < fuel; ++i) {
      auto next = typed::step(current);
      if (!next) break;
      current = next->next;
      if (as_json) {
        steps.push_back({{"rule", std::string(to_string(next->rule))}, {"term", typed::print(current)}});
      } else {
        std::cout << "  " << paint(to_string(next->rule), "35") << "  " << current << '\n';
      }
    }
  }
  auto outcome = typed::eval(p.term, fuel);
  json extra = {{"unrolls", outcome.unrolls}};
  if (as_json && trace) extra["trace"] = steps;
  return report_outcome(outcome, as_json, [](const typed::Term& t) { return typed::print(t); }, extra);
}

int cmd_compile(const std::string& file, const std::string& out, bool as_json) {
  auto p = load_gradual(file);
  auto term = elaborate::translate_term(p.term);
  auto type = elaborate::translate_type(p.type);
  std::string text = typed::print(term);
  if (!out.empty()) write_file(out, text + "\n");
  if (as_json) {
    json j = {{"type", typed::to_string(type)}, {"term", text}};
    if (!out.empty()) j["output"] = out;
    emit(j);
  } else if (out.empty()) {
    std::cout << text << '\n';
  }
  return kOk;
}

// ---------------------------------------------------------------- dynamism

int cmd_dynamism(const std::string& lower_text, const std::string& upper_text, bool as_json) {
  auto lower = parse_gradual_type(lower_text);
  auto upper = parse_gradual_type(upper_text);
  auto c = dynamism::check_dynamism(lower, upper);
  if (!c) {
    if (as_json) {
      emit({{"related", false}});
    } else {
      std::cout << paint("unrelated", "31") << '\n';
    }
    return kFails;
  }
  auto embed = typed::print(dynamism::ep_cast(dynamism::Mode::Embed, *c));
  auto project = typed::print(dynamism::ep_cast(dynamism::Mode::Project, *c));
  if (as_json) {
    emit({{"related", true}, {"derivation", dynamism::to_string(*c)}, {"embed", embed}, {"project", project}});
  } else {
    std::cout << paint("derivation:", "36") << ' ' << dynamism::to_string(*c) << '\n'
              << paint("embed:", "36") << ' ' << embed << '\n'
              << paint("project:", "36") << ' ' << project << '\n';
  }
  return kOk;
}

int cmd_precision(const std::string& lower_file, const std::string& upper_file, bool as_json) {
  auto lower = load_gradual(lower_file);
  auto upper = load_gradual(upper_file);
  auto result = dynamism::check_term_dynamism({}, {}, lower.term, upper.term);
  if (as_json) {
    json j = {{"related", static_cast<bool>(result)}};
    if (result) {
      j["lower_type"] = gradual::to_string(result.types->first);
      j["upper_type"] = gradual::to_string(result.types->second);
    } else {
      j["reason"] = result.reason;
    }
    emit(j);
  } else if (result) {
    std::cout << paint("related:", "32") << ' ' << result.types->first << " <= " << result.types->second << '\n';
  } else {
    std::cout << paint("unrelated:", "31") << ' ' << result.reason << '\n';
  }
  return result ? kOk : kFails;
}

// ------------------------------------------------------------------ approx

approx::Verdict compare_files(const std::string& left, const std::string& right, bool equiv,
                              const approx::CompareConfig& config) {
  if (is_typed_file(left) != is_typed_file(right)) {
    throw UserError("cannot compare a gradual program with a typed one");
  }
  if (is_typed_file(left)) {
    auto l = load_typed(left);
    auto r = load_typed(right);
    if (!(l.type == r.type)) {
      throw UserError("programs have different types " + typed::to_string(l.type) + " and " +
                      typed::to_string(r.type));
    }
    return equiv ? approx::compare_equiv(l.term, r.term, l.type, config)
                 : approx::compare_error_approx(l.term, r.term, l.type, config);
  }
  auto l = load_gradual(left);
  auto r = load_gradual(right);
  if (!(l.type == r.type)) {
    throw UserError("programs have different types " + gradual::to_string(l.type) + " and " +
                    gradual::to_string(r.type));
  }
  return equiv ? approx::compare_equiv(l.term, r.term, config) : approx::compare_error_approx(l.term, r.term, config);
}

void print_verdict(const approx::Verdict& v) {
  const char* code = v.holds() ? "32" : v.fails() ? "31" : "33";
  std::cout << paint(to_string(v.kind), code);
  if (v.cause) std::cout << " (" << to_string(*v.cause) << ')';
  std::cout << "\nfuel_used: " << v.fuel_used << "\nsamples: " << v.samples << '\n';
  if (v.witness) {
    const auto& w = *v.witness;
    std::cout << paint("witness:", "36") << ' ' << w.detail << "\n  left:  " << w.left << "\n  right: " << w.right
              << '\n';
    for (const auto& a : w.arguments) std::cout << "  arg:   " << a << '\n';
    std::cout << "  seed:  " << w.seed << '\n';
  }
}

int cmd_approx(const std::string& left, const std::string& right, bool equiv, const approx::CompareConfig& config,
               const std::string& witness_out, bool as_json) {
  auto verdict = compare_files(left, right, equiv, config);
  if (!witness_out.empty() && verdict.fails()) {
    auto language = is_typed_file(left) ? "typed" : "gradual";
    auto w = cli::approx_witness(language, read_file(left), read_file(right), equiv, config, verdict);
    write_file(witness_out, w.dump(2) + "\n");
  }
  if (as_json) {
    emit(cli::to_json(verdict));
  } else {
    print_verdict(verdict);
  }
  return exit_for(verdict.kind);
}

// ------------------------------------------------------------------- props

int cmd_props(const std::string& suite, const suites::SuiteConfig& config, const std::string& witness_dir,
              bool as_json) {
  if (!suites::known_suite(suite)) throw UserError("unknown suite `" + suite + "`");
  auto report = suites::run_suite(suite, config);
  std::vector<std::string> written;
  for (const auto& f : report.failures) {
    fs::path path = fs::path(witness_dir) / (suite + "-" + std::to_string(config.gen.seed) + "-" +
                                             std::to_string(f.index) + ".json");
    try {
      write_file(path, cli::case_witness(config, suite, f).dump(2) + "\n");
    } catch (const fs::filesystem_error& e) {
      throw UserError(std::string("witness write failed: ") + e.what());
    }
    written.push_back(path.string());
  }
  if (as_json) {
    json j = cli::to_json(report);
    j["witness_files"] = written;
    emit(j);
  } else {
    std::cout << paint("suite:", "36") << ' ' << report.suite << "\ncases: " << report.cases
              << "\nholds: " << report.holds << '\n'
              << paint("fails:", report.fails == 0 ? "32" : "31") << ' ' << report.fails
              << "\ninconclusive: " << report.inconclusive << "\nwall_seconds: " << report.wall_seconds
              << "\nconfig: " << cli::to_json(config.gen).dump() << '\n';
    for (const auto& [key, value] : report.stats) std::cout << "stat " << key << ": " << value << '\n';
    for (std::size_t i = 0; i < report.failures.size(); ++i) {
      std::cout << paint("failure", "31") << " #" << report.failures[i].index << ": " << report.failures[i].detail
                << "\n  replay: " << written[i] << '\n';
    }
  }
  return report.fails == 0 ? kOk : kFails;
}

int cmd_gen(const propgen::GenConfig& config, std::size_t count, const std::string& out, bool as_json) {
  Rng root(config.seed);
  json programs = json::array();
  for (std::size_t i = 0; i < count; ++i) {
    Rng rng = root.split(i);
    auto [term, type] = propgen::gen_program(config, rng);
    std::string text = gradual::print(term);
    if (!out.empty()) {
      std::ostringstream name;
      name << "gen-" << config.seed << '-' << i << ".lamg";
      write_file(fs::path(out) / name.str(), text + "\n");
    }
    if (as_json) {
      programs.push_back({{"index", i}, {"type", gradual::to_string(type)}, {"term", text}});
    } else if (out.empty()) {
      std::cout << "-- " << i << " : " << type << '\n' << text << '\n';
    }
  }
  if (as_json) emit({{"seed", config.seed}, {"programs", programs}});
  return kOk;
}

// ------------------------------------------------------------------ replay

int replay_props(const json& w, bool as_json) {
  suites::SuiteConfig config;
  config.gen = cli::gen_config_from_json(w.at("config"));
  auto suite = w.at("suite").get<std::string>();
  auto index = w.at("index").get<std::size_t>();
  auto result = suites::run_case(suite, config, index);
  auto expected = w.at("verdict").get<std::string>();
  bool same = expected == to_string(result.kind) && w.at("detail").get<std::string>() == result.detail;
  if (as_json) {
    emit({{"suite", suite},
          {"index", index},
          {"verdict", std::string(to_string(result.kind))},
          {"detail", result.detail},
          {"reproduced", same}});
  } else {
    std::cout << paint(to_string(result.kind), result.kind == approx::VerdictKind::Fails ? "31" : "32") << ' '
              << suite << " #" << index << ": " << result.detail << '\n'
              << (same ? "reproduced" : "not reproduced") << '\n';
  }
  return exit_for(result.kind);
}

int replay_approx(const json& w, bool as_json) {
  approx::CompareConfig config;
  config.fuel = w.at("fuel").get<std::size_t>();
  config.samples = w.at("samples").get<std::size_t>();
  config.seed = w.at("seed").get<std::uint64_t>();
  bool equiv = w.at("equiv").get<bool>();
  auto left = w.at("left").get<std::string>();
  auto right = w.at("right").get<std::string>();
  approx::Verdict verdict;
  try {
    if (w.at("language").get<std::string>() == "typed") {
      auto l = typed::parse_term(left);
      auto r = typed::parse_term(right);
      auto type = typed::typecheck({}, l);
      verdict = equiv ? approx::compare_equiv(l, r, type, config) : approx::compare_error_approx(l, r, type, config);
    } else {
      auto l = gradual::parse_term(left);
      auto r = gradual::parse_term(right);
      verdict = equiv ? approx::compare_equiv(l, r, config) : approx::compare_error_approx(l, r, config);
    }
  } catch (const ParseError& e) {
    throw UserError(std::string("witness program: ") + e.what());
  } catch (const TypeCheckError& e) {
    throw UserError(std::string("witness program: type error: ") + e.what());
  }
  bool same = w.at("result") == cli::to_json(verdict);
  if (as_json) {
    json j = cli::to_json(verdict);
    j["reproduced"] = same;
    emit(j);
  } else {
    print_verdict(verdict);
    std::cout << (same ? "reproduced" : "not reproduced") << '\n';
  }
  return exit_for(verdict.kind);
}

int cmd_replay(const std::string& file, bool as_json) {
  json w;
  try {
    w = json::parse(read_file(file));
    auto kind = w.at("kind").get<std::string>();
    if (kind == "props") return replay_props(w, as_json);
    if (kind == "approx") return replay_approx(w, as_json);
    throw UserError(file + ": unknown witness kind `" + kind + "`");
  } catch (const json::exception& e) {
    throw UserError(file + ": malformed witness: " + e.what());
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gradual cast calculus: interpreter, translation to a typed target, and property checks", "lamg"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "lamg 0.1.0");

  bool as_json = false;
  std::size_t fuel = 2000;
  bool trace = false;
  std::string file, file2, out;

  auto add_json = [&](CLI::App* cmd) { cmd->add_flag("--json", as_json, "Machine-readable output"); };

  auto* check = app.add_subcommand("check", "Type check a .lamg or .lamt program");
  check->add_option("FILE", file)->required();
  add_json(check);

  auto* run = app.add_subcommand("run", "Evaluate a gradual program");
  run->add_option("FILE", file)->required();
  run->add_option("--fuel", fuel, "Maximum number of steps")->capture_default_str();
  run->add_flag("--trace", trace, "Print every step with its rule");
  add_json(run);

  auto* compile = app.add_subcommand("compile", "Translate a gradual program to the typed target");
  compile->add_option("FILE", file)->required();
  compile->add_option("-o,--output", out, "Write the .lamt program here");
  add_json(compile);

  auto* run_typed = app.add_subcommand("run-typed", "Evaluate a .lamt program, or the translation of a .lamg one");
  run_typed->add_option("FILE", file)->required();
  run_typed->add_option("--fuel", fuel, "Maximum number of steps")->capture_default_str();
  run_typed->add_flag("--trace", trace, "Print every step with its rule");
  add_json(run_typed);

  auto* dyn = app.add_subcommand("dynamism", "Decide TYPE1 <= TYPE2 and print the canonical derivation");
  dyn->add_option("TYPE1", file)->required();
  dyn->add_option("TYPE2", file2)->required();
  add_json(dyn);

  auto* precision = app.add_subcommand("precision", "Decide syntactic term dynamism between two programs");
  precision->add_option("FILE1", file)->required()->check(CLI::ExistingFile);
  precision->add_option("FILE2", file2)->required()->check(CLI::ExistingFile);
  add_json(precision);

  approx::CompareConfig compare;
  bool equiv = false;
  std::string witness_out;
  auto* approx_cmd = app.add_subcommand("approx", "Check that FILE1 error-approximates FILE2");
  approx_cmd->add_option("FILE1", file)->required()->check(CLI::ExistingFile);
  approx_cmd->add_option("FILE2", file2)->required()->check(CLI::ExistingFile);
  approx_cmd->add_option("--fuel", compare.fuel, "Fuel per evaluation")->capture_default_str();
  approx_cmd->add_option("--samples", compare.samples, "Arguments per function comparison")->capture_default_str();
  approx_cmd->add_option("--seed", compare.seed, "Seed for sampled arguments")->capture_default_str();
  approx_cmd->add_flag("--equiv", equiv, "Check approximation in both directions");
  approx_cmd->add_option("--witness-out", witness_out, "Write a replayable witness on Fails");
  add_json(approx_cmd);

  suites::SuiteConfig suite_config;
  std::string suite, witness_dir = "witnesses";
  auto* props = app.add_subcommand("props", "Run a property suite over generated programs");
  props->add_option("SUITE", suite, "One of the suite names")->required();
  props->add_option("--seed", suite_config.gen.seed)->capture_default_str();
  props->add_option("--count", suite_config.count)->capture_default_str();
  props->add_option("--fuel", suite_config.gen.fuel)->capture_default_str();
  props->add_option("--samples", suite_config.gen.samples)->capture_default_str();
  props->add_option("--max-type-depth", suite_config.gen.max_type_depth)->capture_default_str();
  props->add_option("--max-term-size", suite_config.gen.max_term_size)->capture_default_str();
  props->add_option("--cast-probability", suite_config.gen.cast_probability)
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  props->add_option("--threads", suite_config.threads)->check(CLI::PositiveNumber)->capture_default_str();
  props->add_option("--witness-dir", witness_dir, "Where replay files for failing cases go")->capture_default_str();
  add_json(props);

  propgen::GenConfig gen_config;
  std::size_t gen_count = 10;
  auto* gen = app.add_subcommand("gen", "Print or write generated programs");
  gen->add_option("--seed", gen_config.seed)->capture_default_str();
  gen->add_option("--count", gen_count)->capture_default_str();
  gen->add_option("--max-type-depth", gen_config.max_type_depth)->capture_default_str();
  gen->add_option("--max-term-size", gen_config.max_term_size)->capture_default_str();
  gen->add_option("--cast-probability", gen_config.cast_probability)
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  gen->add_option("--out", out, "Directory for the .lamg files");
  add_json(gen);

  auto* replay = app.add_subcommand("replay", "Re-run a witness file written by props or approx");
  replay->add_option("WITNESS", file)->required()->check(CLI::ExistingFile);
  add_json(replay);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kUsage;
  }

  try {
    if (*check) return cmd_check(file, as_json);
    if (*run) return cmd_run(file, fuel, trace, as_json);
    if (*compile) return cmd_compile(file, out, as_json);
    if (*run_typed) return cmd_run_typed(file, fuel, trace, as_json);
    if (*dyn) return cmd_dynamism(file, file2, as_json);
    if (*precision) return cmd_precision(file, file2, as_json);
    if (*approx_cmd) return cmd_approx(file, file2, equiv, compare, witness_out, as_json);
    if (*props) return cmd_props(suite, suite_config, witness_dir, as_json);
    if (*gen) return cmd_gen(gen_config, gen_count, out, as_json);
    if (*replay) return cmd_replay(file, as_json);
  } catch (const UserError& e) {
    std::cerr << paint("lamg:", "31") << ' ' << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << paint("lamg: internal error:", "31") << ' ' << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
