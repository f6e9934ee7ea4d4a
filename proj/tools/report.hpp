#pragma once

// JSON forms of verdicts, suite reports and replayable witnesses.

#include <json.hpp>

#include "lamg/approx.hpp"
#include "lamg/suites.hpp"

namespace lamg::cli {

using json = nlohmann::ordered_json;

json to_json(const approx::Verdict& verdict);
json to_json(const propgen::GenConfig& config);
propgen::GenConfig gen_config_from_json(const json& j);
json to_json(const suites::SuiteReport& report);

// A witness that `lamg replay` re-runs: one suite case, identified by the
// suite, its configuration and the case index.
json case_witness(const suites::SuiteConfig& config, std::string_view suite, const suites::CaseResult& result);

// A witness for one `lamg approx` comparison.
json approx_witness(std::string_view language, std::string_view left, std::string_view right, bool equiv,
                    const approx::CompareConfig& config, const approx::Verdict& verdict);

}  // namespace lamg::cli
