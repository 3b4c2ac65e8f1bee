#pragma once

#include "arbor/dynamics.hpp"

#include <json.hpp>

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace arbor {

inline constexpr const char* kVersion = "0.1.0";

/// Exit codes of run().
inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitInconclusive = 2;

struct RunConfig {
  std::string subcommand;
  std::string c;              // "c1; c2; ..." in canonical rendering
  std::string set;            // "f1; f2; ..." maps in x over Z, empty when c is used
  std::string coding = "|1";  // prefix|cycle, 1-based
  Ring ring = Ring::Rationals;
  std::uint64_t seed = 1;
  std::uint64_t factor_budget = 2'000'000;  // Pollard-Brent steps
  std::uint64_t orbit_cap = 100'000;        // points per orbit search
  std::uint64_t zero_cap = 64;              // exact zero detection depth
  std::string format = "json";
  std::string output;                       // empty for stdout
  unsigned threads = 0;

  std::size_t depth = 6;
  std::string point = "0";
  unsigned d = 2, s = 2;
  std::string bounds = "1,2,4,8,16";
  std::string variant = "even";
  std::uint64_t trials = 100'000;
  std::string model = "double";
  std::string mask;  // 1/0 per level, empty for all maximal
  unsigned window = 3;
  std::string weights;  // empty for uniform
  std::uint64_t samples = 10'000;
  std::size_t length = 64;
  bool certify = false;
  std::string a0 = "0";
  std::string cutoffs = "1000,10000,100000,1000000";
  unsigned fpp_depth = 0;

  GeneratorSet generator_set() const;
  MapSet map_set() const;
  SequenceCoding sequence_coding() const;
};

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised by parse_run_config for -h/--help; what() is the usage text.
class HelpRequested : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Arguments without the program name. Defaults for the three budgets come
/// from ARBOR_FACTOR_BUDGET, ARBOR_ORBIT_CAP and ARBOR_ZERO_CAP when set.
RunConfig parse_run_config(const std::vector<std::string>& args);
/// Canonical command line: only the options the subcommand reads, normalized.
std::string render(const RunConfig& cfg);
std::vector<std::string> render_args(const RunConfig& cfg);

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cli_main(int argc, char** argv);

}  // namespace arbor
