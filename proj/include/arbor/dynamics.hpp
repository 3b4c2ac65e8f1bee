#pragma once

#include "arbor/algebra.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace arbor {

/// Base ring of a critical set: Q (integers included) or Q(t) with the
/// constants living in Z[t].
enum class Ring { Rationals, Polynomials };

const char* ring_name(Ring r);

/// S = {x^2 + c_1, ..., x^2 + c_s}. Constants are polynomials in t; over
/// Ring::Rationals every c_i must be constant.
struct GeneratorSet {
  Ring ring = Ring::Rationals;
  std::vector<RatPolynomial> c;

  static GeneratorSet integers(const std::vector<long>& cs);
  static GeneratorSet polynomials(const std::vector<IntPolynomial>& cs);

  std::size_t size() const { return c.size(); }
  /// Every c_i has integer coefficients.
  bool integral() const;
  /// Throws std::invalid_argument on repeated maps, an empty set, or a
  /// nonconstant c_i over Ring::Rationals.
  void validate() const;
  /// c_i as integers; throws unless Ring::Rationals and integral.
  std::vector<Integer> integer_constants() const;
  std::vector<IntPolynomial> polynomial_constants() const;
  /// "x^2-2; x^2-6"
  std::string to_string() const;
};

/// General polynomial maps with integer coefficients, used by orbit searches.
struct MapSet {
  std::vector<IntPolynomial> maps;
  static MapSet from(const GeneratorSet& s);
  std::string to_string() const;
};

/// Eventually periodic sequence of generator indices. Indices are 0-based in
/// memory and 1-based in text ("1,2|2"). Position n >= 1 selects theta_n,
/// the n-th map counted from the outside of gamma_n = theta_1 o ... o theta_n.
struct SequenceCoding {
  std::vector<std::size_t> prefix;
  std::vector<std::size_t> cycle;

  static SequenceCoding constant(std::size_t i) { return {{}, {i}}; }
  /// Throws ParseError on malformed text.
  static SequenceCoding parse(std::string_view text);
  std::string to_string() const;
  /// Index of theta_n, n >= 1.
  std::size_t at(std::size_t n) const;
  void validate(std::size_t set_size) const;
};

/// gamma_1(0), ..., gamma_n(0). With max_bits > 0 the list stops before
/// the first value whose largest coefficient exceeds max_bits bits.
std::vector<RatPolynomial> critical_orbit(const GeneratorSet& s, const SequenceCoding& coding, std::size_t n,
                                          std::size_t max_bits = 0);

/// gamma_n(0) by direct right-to-left evaluation; quadratic in n.
RatPolynomial critical_value_direct(const GeneratorSet& s, const SequenceCoding& coding, std::size_t n);

/// gamma_n as a polynomial in x. Requires Ring::Rationals.
RatPolynomial composition(const GeneratorSet& s, const SequenceCoding& coding, std::size_t n);

/// |c_i^2 + c_j| > max_k |c_k| for every ordered pair.
bool escape_criterion(const std::vector<Integer>& c);

/// An R such that every |x| > R satisfies |f(x)| > |x|; empty for
/// maps of degree below 2.
std::optional<Integer> escape_radius(const IntPolynomial& f);

enum class OrbitKind { Closed, Escaping, Unknown };
const char* orbit_kind_name(OrbitKind k);

template <class T>
struct OrbitStatus {
  OrbitKind kind = OrbitKind::Unknown;
  std::vector<T> points;  // the closed orbit, or everything visited (sorted)
  std::size_t level = 0;  // breadth-first depth reached
};

struct OrbitCaps {
  std::size_t size_cap = 100000;
  Integer height_cap = 0;        // 0 selects the escape radius (degree bound over Z[t])
  std::size_t max_bits = 65536;  // larger values end the search as Unknown
};

OrbitStatus<Integer> semigroup_orbit(const MapSet& s, const Integer& p, const OrbitCaps& caps = {});
/// Critical set over Z[t]; height is (degree, max norm).
OrbitStatus<IntPolynomial> semigroup_orbit(const GeneratorSet& s, const IntPolynomial& p, const OrbitCaps& caps = {});

enum class Answer { Yes, No, Unknown };
const char* answer_name(Answer a);

struct FiniteOrbitSearch {
  Answer answer = Answer::Unknown;
  std::optional<Integer> witness;
  std::size_t explored = 0;
};

FiniteOrbitSearch orbit_contains_finite_orbit_point(const MapSet& s, const Integer& p, const OrbitCaps& caps = {});

enum class PairFamily { A, B };

struct PairMembership {
  PairFamily family;
  Integer y;
  bool swapped;  // the match uses the order (c2, c1)
};

/// Throws std::invalid_argument when c1 == c2.
std::optional<PairMembership> pair_family_membership(const Rational& c1, const Rational& c2);

struct Classification {
  bool exceptional = false;
  std::string name;  // canonical "{x^2-2, x^2-6}" when exceptional
  std::optional<Integer> witness;
  std::string reason;
};

/// Requires Ring::Rationals.
Classification classify_finite_orbit_obstruction(const GeneratorSet& s);

/// Throws std::invalid_argument when v_p(c) >= 0, alpha = 0, or alpha is not
/// seen to be preperiodic for x^d + c within `cap` iterations.
bool valuation_lemma_check(const Rational& c, const Rational& alpha, const Integer& p, unsigned d,
                           std::size_t cap = 64);

enum class EisensteinCase { Direct, Shifted, Failed };
const char* eisenstein_case_name(EisensteinCase c);

struct EisensteinResult {
  EisensteinCase kind = EisensteinCase::Failed;
  IntPolynomial tested;  // f or f(x+1)
  Integer constant_mod4;
};

bool is_eisenstein_at_2(const IntPolynomial& f);
EisensteinResult eisenstein_stability(const IntPolynomial& f);
EisensteinResult eisenstein_stability(const GeneratorSet& s, const SequenceCoding& coding, std::size_t n);

}  // namespace arbor
