// Acceptance run: one PASS or FAIL line per criterion, exit status 0 only
// when every criterion passes.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <sstream>
#include <string>

#include "lamg/suites.hpp"
#include "support.hpp"
#include "trace_format.hpp"

using namespace lamg;

namespace {

constexpr std::uint64_t kSeed = 7;
constexpr std::size_t kFuel = 2000;

constexpr double kCorpusSeconds = 1;
constexpr std::size_t kCorpusPrograms = 25;
constexpr std::size_t kMetaCases = 1000;
constexpr double kMetaSeconds = 30;
constexpr std::size_t kAdequacyCases = 300;
constexpr double kAdequacyInconclusive = 0.05;
constexpr double kAdequacySeconds = 60;
constexpr std::size_t kEpCases = 500;
constexpr double kEpSeconds = 60;
constexpr std::size_t kDecompositionCases = 300;
constexpr std::size_t kFactorizationCases = 300;
constexpr std::size_t kGradualityCases = 200;
constexpr std::size_t kGradualityPairs = 200;
constexpr double kGradualityInconclusive = 0.10;
constexpr double kGradualitySeconds = 120;
constexpr std::size_t kReflexivityCases = 200;

int failures = 0;

void report(int criterion, bool pass, const std::string& text) {
  std::printf("criterion %d %s: %s\n", criterion, pass ? "PASS" : "FAIL", text.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

suites::SuiteReport run(std::string_view suite, std::size_t count) {
  suites::SuiteConfig config;
  config.gen.seed = kSeed;
  config.gen.fuel = kFuel;
  config.gen.samples = 8;
  config.count = count;
  return suites::run_suite(suite, config);
}

std::string summary(const suites::SuiteReport& r) {
  std::ostringstream out;
  out << r.suite << " " << r.cases << " cases, " << r.fails << " fails, " << r.inconclusive << " inconclusive, "
      << r.wall_seconds << " s";
  for (const auto& f : r.failures) {
    out << "\n    #" << f.index << ": " << f.detail;
    break;
  }
  return out.str();
}

double stat(const suites::SuiteReport& r, const std::string& key) {
  auto it = r.stats.find(key);
  return it == r.stats.end() ? 0.0 : it->second;
}

void golden_corpus() {
  auto start = std::chrono::steady_clock::now();
  std::size_t programs = 0;
  std::size_t mismatches = 0;
  std::size_t rules_seen = 0;
  std::vector<bool> seen(gradual::kRuleCount, false);
  for (const auto& entry : std::filesystem::directory_iterator(test::corpus_dir())) {
    if (entry.path().extension() != ".lamg") continue;
    auto golden = entry.path();
    golden.replace_extension(".trace");
    auto program = gradual::parse_term(test::slurp(entry.path()));
    if (test::render_trace(program, test::kCorpusFuel) != test::slurp(golden)) ++mismatches;
    gradual::Term current = program;
    for (std::size_t i = 0; i < test::kCorpusFuel; ++i) {
      auto s = gradual::step(current);
      if (!s) break;
      seen[static_cast<std::size_t>(s->rule)] = true;
      current = s->next;
    }
    ++programs;
  }
  for (bool b : seen) rules_seen += b ? 1 : 0;
  double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::ostringstream text;
  text << "golden reductions: " << programs << " programs, " << mismatches << " mismatches, " << rules_seen << "/"
       << gradual::kRuleCount << " rules, " << seconds << " s";
  report(1,
         programs >= kCorpusPrograms && mismatches == 0 && rules_seen == gradual::kRuleCount &&
             seconds < kCorpusSeconds,
         text.str());
}

}  // namespace

int main() {
  golden_corpus();

  auto meta = run("meta", kMetaCases);
  report(2, meta.fails == 0 && meta.wall_seconds < kMetaSeconds,
         "subject reduction, progress, determinism in both languages: " + summary(meta));

  auto adequacy = run("adequacy", kAdequacyCases);
  double adequacy_inconclusive = static_cast<double>(adequacy.inconclusive) / adequacy.cases;
  report(3,
         adequacy.fails == 0 && adequacy_inconclusive <= kAdequacyInconclusive &&
             adequacy.wall_seconds < kAdequacySeconds,
         "adequacy at fuel 2000 / 16x2000: " + summary(adequacy));

  auto retraction = run("retraction", kEpCases);
  auto projection = run("projection", kEpCases);
  report(4,
         retraction.fails == 0 && projection.fails == 0 && retraction.wall_seconds < kEpSeconds &&
             projection.wall_seconds < kEpSeconds,
         "ep pairs with K = 8, depth 3: " + summary(retraction) + "; " + summary(projection));

  double purity = stat(retraction, "purity_violations") + stat(projection, "purity_violations");
  double termination = stat(retraction, "termination_violations") + stat(projection, "termination_violations");
  double embeddings = stat(retraction, "embeddings_run");
  double projections = stat(projection, "projections_run");
  std::ostringstream ep;
  ep << "embedding purity violations " << purity << " over " << embeddings
     << " embeddings, projection termination violations " << termination << " over " << projections << " projections";
  report(5, purity == 0 && termination == 0 && embeddings == kEpCases && projections == kEpCases, ep.str());

  auto decomposition = run("decomposition", kDecompositionCases);
  auto ud = run("ud_are_casts", kDecompositionCases);
  report(6, decomposition.fails == 0 && ud.fails == 0,
         "decomposition and upcasts/downcasts are casts: " + summary(decomposition) + "; " + summary(ud));

  auto factorization = run("factorization", kFactorizationCases);
  double incompatible = stat(factorization, "incompatible");
  double both_error = stat(factorization, "incompatible_both_error");
  std::ostringstream fac;
  fac << "factorization through ?: " << summary(factorization) << ", incompatible-tag cases " << incompatible
      << " (both sides error in " << both_error << ")";
  report(7, factorization.fails == 0 && incompatible > 0 && both_error == incompatible, fac.str());

  auto graduality = run("graduality", kGradualityCases);
  double pairs = stat(graduality, "pairs");
  double graduality_inconclusive = static_cast<double>(graduality.inconclusive) / graduality.cases;
  std::ostringstream grad;
  grad << "graduality over " << pairs << " accepted mutation pairs (acceptance rate "
       << stat(graduality, "mutation_acceptance_rate") << "): " << summary(graduality);
  report(8,
         graduality.fails == 0 && pairs >= kGradualityPairs && graduality_inconclusive <= kGradualityInconclusive &&
             graduality.wall_seconds < kGradualitySeconds,
         grad.str());

  auto reflexivity = run("reflexivity", kReflexivityCases);
  report(9, reflexivity.fails == 0, "reflexivity denotes identity: " + summary(reflexivity));

  std::printf("%d of 9 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
