#pragma once

#include "arbor/algebra.hpp"
#include "arbor/certify.hpp"
#include "arbor/dynamics.hpp"

#include <json.hpp>

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

namespace arbor {

/// Largest n for which fpp_full_binary is returned exactly (the denominator
/// of f_n has 2^n - 1 bits).
inline constexpr unsigned kExactFppLevels = 24;

/// Fixed-point proportion of Aut of the binary tree of depth n.
Rational fpp_full_binary(unsigned n);
std::vector<Rational> fpp_table(unsigned n);

/// Dyadic interval containing f_n; lo == hi while n <= kExactFppLevels.
struct FppEnclosure {
  Rational lo, hi;
};
std::vector<FppEnclosure> fpp_enclosures(unsigned n, unsigned precision_bits = 256);

/// f_n < f_{n-1} for 2 <= n <= N and f_N < bound, proved from the enclosures.
struct FppDecreaseProof {
  bool strictly_decreasing = false;
  bool below_bound = false;
  unsigned failed_level = 0;  // first n where the enclosures overlap, 0 if none
};
FppDecreaseProof prove_fpp_decrease(unsigned N, const Rational& bound);

/// Distribution of the next fixed-point count: 2k with probability C(u,k)/2^u.
std::map<unsigned long, Rational> coin_transition(unsigned long u);
Rational transition_expectation(unsigned long u);
/// Expectation equals u for every even u in [lo, hi].
bool martingale_check(unsigned long lo, unsigned long hi);
/// C(u, u/2)/2^u; throws std::logic_error if it exceeds 1/2.
Rational stay_probability_bound(unsigned long u);

enum class NonMaximalModel { Double, Hold };
const char* nonmaximal_model_name(NonMaximalModel m);
NonMaximalModel parse_nonmaximal_model(const std::string& s);

/// P(X_n > 0) for the model with X_0 = 1 (exact for n <= kExactFppLevels).
/// Levels past the end of the mask count as maximal.
std::optional<Rational> model_survival(const std::vector<bool>& maximal_mask, NonMaximalModel model, unsigned n);

struct ProcessOptions {
  std::uint64_t seed = 1;
  unsigned depth = 12;
  std::uint64_t trials = 100000;
  std::vector<bool> maximal_mask;  // levels past its end are maximal
  NonMaximalModel model = NonMaximalModel::Double;
  unsigned window = 3;
  unsigned threads = 0;
};

struct ProcessLevel {
  unsigned n = 0;
  std::uint64_t survivors = 0;
  Rational p_hat;
  double stderr_hat = 0;             // sqrt(p_hat (1 - p_hat) / trials)
  std::optional<Rational> exact;     // model_survival when available
  double stderr_exact = 0;           // sqrt(p (1 - p) / trials) with the exact p
  std::optional<bool> within_3se;
};

struct ProcessReport {
  ProcessOptions options;
  std::vector<ProcessLevel> levels;
  std::uint64_t constant_window = 0;  // paths with X constant over the last `window` levels
  Rational constant_fraction;
  std::uint64_t monotone_violations = 0;  // paths revived after reaching 0 (must be 0)
  bool all_within_3se() const;
};

ProcessReport simulate_process(const ProcessOptions& opt);
nlohmann::json to_json(const ProcessReport& r);

struct SampleOptions {
  std::vector<Rational> weights;
  std::uint64_t seed = 1;
  std::size_t length = 64;
  std::uint64_t samples = 10000;
  bool certify = false;
  std::size_t certify_depth = 8;
  std::size_t keep = 0;  // number of sampled codings retained in the report
};

/// One coding of the given length drawn with independent weighted positions.
std::vector<std::size_t> sample_coding(const std::vector<Rational>& weights, std::uint64_t seed, std::size_t length);

struct SampleReport {
  SampleOptions options;
  std::vector<std::uint64_t> theta1_counts;     // per generator
  std::vector<std::uint64_t> position_counts;   // per generator over all positions
  std::vector<bool> theta1_within_3se;
  std::vector<std::vector<std::size_t>> kept;
  // certification over the sampled prefixes
  std::uint64_t certified = 0, stable = 0, tool_guaranteed = 0, tool_maximal_ok = 0, inconclusive = 0;
};

SampleReport sample_codings(const GeneratorSet* set, const SampleOptions& opt);
nlohmann::json to_json(const SampleReport& r);

/// SplitMix64 finalizer used to derive independent stream seeds.
std::uint64_t splitmix64(std::uint64_t x);

}  // namespace arbor
