#ifndef PET_VERIFY_HPP
#define PET_VERIFY_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "pet/serialize.hpp"

namespace pet::verify {

struct Check {
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

struct SuiteResult {
  std::string suite;
  std::vector<Check> checks;

  bool pass() const {
    for (const Check& c : checks)
      if (!c.pass) return false;
    return true;
  }
  Json to_json() const;
};

// One function per acceptance criterion; the CLI suites aggregate them.
Check exact_algebra();                                  // 1
Check quadratic_cross_validation(std::uint64_t seed);   // 2
Check degree_certification();                           // 3
Check descent_inequality(std::uint64_t seed);           // 4
Check met_baseline();                                   // 5
Check quadratic_decay();                                // 6
Check decomposition_check(std::uint64_t seed);          // 7
Check dct_finite_check(std::uint64_t seed);             // 8
Check folner_defects();                                 // 9
Check metastability_criterion(std::uint64_t seed);      // 10

// Additional suite members.
Check representation_homomorphisms(std::uint64_t seed);
Check difference_calculus_identities(std::uint64_t seed);
Check measure_properties(std::uint64_t seed);

struct MetastableExperiment {
  double eps = 0.2;
  std::string sampling = "{i,2i}";
  int instances = 50;
  std::int64_t bound = 100'000;
  std::int64_t start = 1;  // i = 0 samples the singleton {0}; see README
  std::uint64_t seed = 42;
  int dim_min = 2;
  int dim_max = 6;
};

/// Runs the random degree-2 metastability experiment and returns the full
/// JSON report (per-instance certificates plus the aggregate witness E).
/// Instance parameters are drawn sequentially from the seed; the scans may
/// run on `threads` workers, with results merged by instance index, so the
/// report does not depend on the schedule.
Json run_metastable_experiment(const MetastableExperiment& cfg, int threads = 1);

std::vector<std::string> suite_names();  // group-laws, leibman, measures, descent, dct, all

/// Runs one named suite; unknown names are format errors.
SuiteResult run_suite(const std::string& name, std::uint64_t seed = 42);

}  // namespace pet::verify

#endif  // PET_VERIFY_HPP
