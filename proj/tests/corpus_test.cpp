#include <doctest.h>

#include <set>

#include "support.hpp"
#include "trace_format.hpp"

using namespace lamg;

TEST_SUITE("corpus") {

TEST_CASE("every corpus program matches its recorded trace") {
  std::set<std::string> rules;
  std::size_t programs = 0;
  for (const auto& entry : std::filesystem::directory_iterator(test::corpus_dir())) {
    if (entry.path().extension() != ".lamg") continue;
    auto golden = entry.path();
    golden.replace_extension(".trace");
    CAPTURE(entry.path().filename().string());
    REQUIRE(std::filesystem::exists(golden));
    auto program = gradual::parse_term(test::slurp(entry.path()));
    gradual::typecheck({}, program);
    CHECK(test::render_trace(program, test::kCorpusFuel) == test::slurp(golden));
    gradual::Term current = program;
    for (std::size_t i = 0; i < test::kCorpusFuel; ++i) {
      auto s = gradual::step(current);
      if (!s) break;
      rules.insert(std::string(gradual::to_string(s->rule)));
      current = s->next;
    }
    ++programs;
  }
  CHECK(programs >= 25);
  for (std::size_t r = 0; r < gradual::kRuleCount; ++r) {
    auto name = std::string(gradual::to_string(static_cast<gradual::Rule>(r)));
    CAPTURE(name);
    CHECK(rules.count(name) == 1);
  }
}

}  // TEST_SUITE
