#pragma once

#include "arbor/algebra.hpp"
#include "arbor/dynamics.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <ostream>
#include <vector>

namespace arbor {

/// Primes in [2, n] by a segmented sieve of Eratosthenes.
std::vector<std::uint32_t> primes_up_to(std::uint32_t n);

enum class ZeroStatus {
  Certified,    // every residue class escapes or leaves the integers within the cap
  Periodic,     // some residue class is an exactly periodic bounded orbit
  CapExhausted  // undecided beyond the cap; later terms are treated as nonzero
};
const char* zero_status_name(ZeroStatus z);

/// Exact bookkeeping of the indices n with gamma_n(a0) = 0, shared by every
/// prime of a scan.
class OrbitScanner {
 public:
  OrbitScanner(const GeneratorSet& s, const SequenceCoding& coding, const Rational& a0, std::size_t zero_cap = 64,
               std::uint64_t visit_cap = 4'000'000);

  enum class Status { Yes, No, Excluded, Capped };
  struct Result {
    Status status = Status::No;
    std::size_t n = 0;  // first n with p | gamma_n(a0) != 0 when Yes
  };
  Result test(std::uint64_t p) const;

  /// Primes dividing a denominator of a0 or some c_i.
  bool excluded(std::uint64_t p) const;
  const std::vector<Integer>& bad_primes() const { return bad_primes_; }
  ZeroStatus zero_status() const { return zero_status_; }
  /// Indices n <= zero cap with gamma_n(a0) = 0 (a periodic class lists its
  /// zeros up to the cap).
  std::vector<std::size_t> zero_indices() const;

 private:
  struct Residue {
    std::vector<Rational> exact;  // delta_{r,k} for k < exact.size()
    std::vector<bool> zero;       // Pref(delta_{r,k}) == 0
    std::size_t safe_from = 0;    // no exact zeros for k >= safe_from
    std::optional<std::size_t> period_start, period;
  };
  bool exact_zero(std::size_t r, std::size_t k) const;
  std::size_t index(std::size_t r, std::size_t k) const { return a_ + k * L_ + r; }

  GeneratorSet set_;
  SequenceCoding coding_;
  Rational a0_;
  std::size_t a_ = 0, L_ = 0, zero_cap_;
  std::uint64_t visit_cap_;
  std::vector<Rational> head_;        // gamma_n(a0) for n = 0..a
  std::vector<Residue> residues_;
  std::vector<Integer> bad_primes_;
  ZeroStatus zero_status_ = ZeroStatus::Certified;
};

/// p | gamma_n(a0) for some n >= 0 with gamma_n(a0) != 0.
OrbitScanner::Result prime_divides_orbit(std::uint64_t p, const GeneratorSet& s, const SequenceCoding& coding,
                                         const Rational& a0, std::size_t zero_cap = 64);

struct DensityRow {
  std::uint64_t x = 0;
  std::uint64_t in_p = 0;
  std::uint64_t pi_x = 0;
  Rational ratio;
};

struct PrimeScanReport {
  std::string set, coding, a0;
  std::vector<DensityRow> rows;
  std::vector<std::uint64_t> excluded;   // scanned primes dividing a denominator
  std::vector<std::uint64_t> capped;     // primes whose state walk exceeded the visit cap
  ZeroStatus zero_status = ZeroStatus::Certified;
  std::vector<std::size_t> zero_indices;
  bool strictly_decreasing() const;
};

struct ScanOptions {
  std::size_t zero_cap = 64;
  std::uint64_t visit_cap = 4'000'000;
  std::uint64_t max_cutoff = 10'000'000;
  unsigned threads = 0;
};

PrimeScanReport density_profile(const GeneratorSet& s, const SequenceCoding& coding, const Rational& a0,
                                const std::vector<std::uint64_t>& cutoffs, const ScanOptions& opt = {});

void write_csv(std::ostream& os, const PrimeScanReport& r);
nlohmann::json to_json(const PrimeScanReport& r);

struct FppComparison {
  std::uint64_t cutoff = 0;
  Rational ratio;
  std::vector<Rational> fpp_lo, fpp_hi;  // enclosures of f_1..f_depth (equal while exact)
};

FppComparison fpp_comparison(const GeneratorSet& s, const SequenceCoding& coding, const Rational& a0, unsigned depth,
                             std::uint64_t cutoff, const ScanOptions& opt = {});
nlohmann::json to_json(const FppComparison& c);

}  // namespace arbor
