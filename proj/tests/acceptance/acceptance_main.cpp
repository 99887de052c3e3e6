// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure.  Randomized criteria run under the fixed seed 42.

#include <cstdio>
#include <vector>

#include "pet/verify.hpp"

int main() {
  using pet::verify::Check;
  constexpr std::uint64_t kSeed = 42;

  struct Criterion {
    const char* label;
    Check (*run)();
  };

  const std::vector<Criterion> criteria = {
      {"1 exact algebra", [] { return pet::verify::exact_algebra(); }},
      {"2 quadratic cross-validation",
       [] { return pet::verify::quadratic_cross_validation(kSeed); }},
      {"3 degree certification", [] { return pet::verify::degree_certification(); }},
      {"4 descent inequality", [] { return pet::verify::descent_inequality(kSeed); }},
      {"5 MET baseline", [] { return pet::verify::met_baseline(); }},
      {"6 quadratic decay", [] { return pet::verify::quadratic_decay(); }},
      {"7 structured decomposition", [] { return pet::verify::decomposition_check(kSeed); }},
      {"8 DCT finite check", [] { return pet::verify::dct_finite_check(kSeed); }},
      {"9 Folner defects", [] { return pet::verify::folner_defects(); }},
      {"10 metastability experiment",
       [] { return pet::verify::metastability_criterion(kSeed); }},
  };

  int failures = 0;
  for (const Criterion& criterion : criteria) {
    Check check;
    try {
      check = criterion.run();
    } catch (const std::exception& e) {
      check.pass = false;
      check.detail = std::string("exception: ") + e.what();
    }
    std::printf("[%s] criterion %s — %s\n", check.pass ? "PASS" : "FAIL", criterion.label,
                check.detail.c_str());
    std::fflush(stdout);
    if (!check.pass) ++failures;
  }

  if (failures == 0) {
    std::printf("acceptance: all %zu criteria passed\n", criteria.size());
  } else {
    std::printf("acceptance: %d of %zu criteria FAILED\n", failures, criteria.size());
  }
  return failures == 0 ? 0 : 1;
}
