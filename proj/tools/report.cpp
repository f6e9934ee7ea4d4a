#include "report.hpp"

namespace lamg::cli {

json to_json(const approx::Verdict& verdict) {
  json j;
  j["verdict"] = std::string(approx::to_string(verdict.kind));
  if (verdict.cause) j["cause"] = std::string(approx::to_string(*verdict.cause));
  if (verdict.witness) {
    const auto& w = *verdict.witness;
    j["witness"] = {{"left", w.left}, {"right", w.right}, {"arguments", w.arguments}, {"seed", w.seed},
                    {"detail", w.detail}};
  }
  j["fuel_used"] = verdict.fuel_used;
  j["samples"] = verdict.samples;
  return j;
}

json to_json(const propgen::GenConfig& config) {
  return {{"seed", config.seed},
          {"max_type_depth", config.max_type_depth},
          {"max_term_size", config.max_term_size},
          {"cast_probability", config.cast_probability},
          {"error_probability", config.error_probability},
          {"fuel", config.fuel},
          {"samples", config.samples}};
}

propgen::GenConfig gen_config_from_json(const json& j) {
  propgen::GenConfig c;
  c.seed = j.at("seed").get<std::uint64_t>();
  c.max_type_depth = j.at("max_type_depth").get<std::size_t>();
  c.max_term_size = j.at("max_term_size").get<std::size_t>();
  c.cast_probability = j.at("cast_probability").get<double>();
  c.error_probability = j.at("error_probability").get<double>();
  c.fuel = j.at("fuel").get<std::size_t>();
  c.samples = j.at("samples").get<std::size_t>();
  return c;
}

json to_json(const suites::SuiteReport& report) {
  json failures = json::array();
  for (const auto& f : report.failures) failures.push_back({{"index", f.index}, {"detail", f.detail}});
  json stats = json::object();
  for (const auto& [key, value] : report.stats) stats[key] = value;
  return {{"suite", report.suite},
          {"cases", report.cases},
          {"holds", report.holds},
          {"fails", report.fails},
          {"inconclusive", report.inconclusive},
          {"wall_seconds", report.wall_seconds},
          {"config", to_json(report.config.gen)},
          {"stats", stats},
          {"failures", failures}};
}

json case_witness(const suites::SuiteConfig& config, std::string_view suite, const suites::CaseResult& result) {
  json j = {{"kind", "props"},
            {"suite", std::string(suite)},
            {"index", result.index},
            {"config", to_json(config.gen)},
            {"verdict", std::string(approx::to_string(result.kind))},
            {"detail", result.detail}};
  if (result.witness) {
    j["arguments"] = result.witness->arguments;
    j["left"] = result.witness->left;
    j["right"] = result.witness->right;
  }
  return j;
}

json approx_witness(std::string_view language, std::string_view left, std::string_view right, bool equiv,
                    const approx::CompareConfig& config, const approx::Verdict& verdict) {
  return {{"kind", "approx"},
          {"language", std::string(language)},
          {"left", std::string(left)},
          {"right", std::string(right)},
          {"equiv", equiv},
          {"fuel", config.fuel},
          {"samples", config.samples},
          {"seed", config.seed},
          {"verdict", std::string(approx::to_string(verdict.kind))},
          {"result", to_json(verdict)}};
}

}  // namespace lamg::cli
