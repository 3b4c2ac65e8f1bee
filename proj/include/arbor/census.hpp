#pragma once

#include "arbor/algebra.hpp"

#include <cstdint>
#include <optional>
#include <ostream>
#include <vector>

namespace arbor {

/// P_d(B) (all a_0..a_d in [-B, B]) or, when monic, M_d(B) (a_d = 1 and
/// a_0..a_{d-1} in [-B, B]).
struct CoefficientBox {
  unsigned d = 1;
  unsigned long B = 1;
  bool monic = false;
  Integer cardinality() const;
  void validate() const;
};

enum class ParityProperty { StarEven, OddDerivative, OddLeading, MonicDerivative };
const char* parity_property_name(ParityProperty p);

enum class BoundVariant { Even, Odd, Monic };
const char* bound_variant_name(BoundVariant v);
BoundVariant parse_bound_variant(const std::string& s);

/// Number of odd, resp. even, integers in [-B, B].
Integer odd_in_range(unsigned long B);
Integer even_in_range(unsigned long B);

Rational r_d(unsigned d);

/// Coefficient tuple a_0..a_d (monic boxes included, a_d = 1).
bool satisfies(ParityProperty p, const std::vector<long>& a);

/// Throws std::invalid_argument when p does not fit the box.
void check_property(const CoefficientBox& box, ParityProperty p);

/// Number of coefficients carrying a parity stipulation.
unsigned constrained_coefficients(unsigned d, ParityProperty p);
/// Density of p as B grows.
Rational limiting_fraction(unsigned d, ParityProperty p);

Integer count_closed_form(const CoefficientBox& box, ParityProperty p);
/// Exhaustive count; nullopt when the box has more than `limit` tuples.
std::optional<Integer> count_enumerated(const CoefficientBox& box, ParityProperty p,
                                        std::uint64_t limit = 10'000'000, unsigned threads = 0);

struct PropertyCount {
  Integer closed_form;
  std::optional<Integer> enumerated;
  bool agree() const { return !enumerated || *enumerated == closed_form; }
};
PropertyCount count_property(const CoefficientBox& box, ParityProperty p, std::uint64_t limit = 10'000'000);

Rational bound_formula(unsigned d, unsigned s, BoundVariant v);

/// 1 - C(T - k, s) / C(T, s): fraction of s-subsets with an element having p.
Rational presence_fraction(const CoefficientBox& box, ParityProperty p, unsigned s);

/// Fraction of s-element subsets of the box counted by the variant:
/// Even/Monic some element with (*) resp. the monic derivative condition,
/// Odd some element with (I) and some element with (II).
Rational exact_set_fraction(unsigned d, unsigned s, unsigned long B, BoundVariant v);

struct CensusRow {
  unsigned long B = 0;
  Rational fraction;
  Rational deviation;  // fraction - bound
};

struct CensusReport {
  unsigned d = 0, s = 0;
  BoundVariant variant = BoundVariant::Even;
  Rational bound;
  std::vector<CensusRow> rows;
};

CensusReport convergence_experiment(unsigned d, unsigned s, const std::vector<unsigned long>& Bs, BoundVariant v);
void write_csv(std::ostream& os, const CensusReport& r);

}  // namespace arbor
