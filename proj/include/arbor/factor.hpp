#pragma once

#include "arbor/algebra.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace arbor {

struct FactorBudget {
  unsigned long trial_bound = 1000000;
  std::uint64_t rho_iterations = 2000000;  // total Pollard-Brent steps across all splits
  unsigned long max_bits = 4096;           // inputs larger than this are not attempted beyond trial division
};

/// |n| = prod prime^exponent * cofactor. A cofactor of 1 means the
/// factorization is complete; otherwise it is a composite that was not split
/// within the budget.
struct Factorization {
  int sign = 1;
  std::vector<std::pair<Integer, unsigned>> primes;  // sorted by prime
  Integer cofactor = 1;

  bool complete() const { return cofactor == 1; }
};

bool is_probable_prime(const Integer& n);

/// Throws std::invalid_argument on n = 0.
Factorization factor_integer(const Integer& n, const FactorBudget& budget = {});

}  // namespace arbor
