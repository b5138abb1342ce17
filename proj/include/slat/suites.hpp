#ifndef SLAT_SUITES_HPP
#define SLAT_SUITES_HPP

// Property suites over the whole library. Each suite produces line-oriented,
// deterministic output ("<suite>.<key> <value>") and a pass flag; timing is
// left to the caller so that output stays byte-identical across runs.

#include <cstdint>
#include <string>
#include <vector>

namespace slat {

  struct SuiteConfig {
    std::uint64_t seed       = 1;
    int           cases      = 0;  // 0: the suite's own default
    int           max_rank   = 2;
    int           omega_size = 4;
    std::string   data_dir;  // empty: the bundled data directory
  };

  struct SuiteResult {
    std::string              name;
    bool                     pass = true;
    std::vector<std::string> lines;
  };

  // Suite names in their canonical run order.
  std::vector<std::string> suite_names();
  bool                     is_suite(std::string const& name);

  // Throws std::invalid_argument for an unknown name.
  SuiteResult run_suite(std::string const& name, SuiteConfig const& cfg);

  std::string default_data_dir();

}  // namespace slat

#endif  // SLAT_SUITES_HPP
