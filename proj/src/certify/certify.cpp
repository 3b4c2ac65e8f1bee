#include "arbor/certify.hpp"

#include <algorithm>
#include <stdexcept>

namespace arbor {

const char* stability_kind_name(StabilityKind k) {
  switch (k) {
    case StabilityKind::NonSquareWitness: return "NonSquareWitness";
    case StabilityKind::EisensteinWitness: return "EisensteinWitness";
    case StabilityKind::DerivativeTrick: return "DerivativeTrick";
    case StabilityKind::Failed: return "Failed";
    default: return "Inconclusive";
  }
}

const char* maximality_kind_name(MaximalityKind k) {
  switch (k) {
    case MaximalityKind::BaseQuadratic: return "BaseQuadratic";
    case MaximalityKind::PrimitiveOddPrime: return "PrimitiveOddPrime";
    case MaximalityKind::Level2Oracle: return "Level2Oracle";
    case MaximalityKind::NoWitness: return "NoWitness";
    case MaximalityKind::NotAttempted: return "NotAttempted";
    default: return "Inconclusive";
  }
}

bool CertificateChain::inconclusive() const {
  return std::any_of(levels.begin(), levels.end(), [](const LevelCertificate& l) {
    return l.stability == StabilityKind::Inconclusive || l.maximality.kind == MaximalityKind::Inconclusive;
  });
}

namespace {

bool derivative_is_one(const IntPolynomial& c) { return derivative(reduce_mod2(c)).is_one(); }

bool derivative_trick(const GeneratorSet& s, const SequenceCoding& coding) {
  if (s.ring != Ring::Polynomials || !s.integral()) return false;
  return derivative_is_one(s.c[coding.at(1)].numerator());
}

std::vector<Integer> to_integers(const std::vector<RatPolynomial>& orbit) {
  std::vector<Integer> out;
  out.reserve(orbit.size());
  for (const auto& v : orbit) out.push_back(v.to_integer().coeff(0));
  return out;
}

// Fills stability for levels 1..depth; values beyond the computed orbit are
// Inconclusive.
void fill_stability(CertificateChain& ch, const std::vector<RatPolynomial>& orbit, const CertifyOptions& opt) {
  const GeneratorSet& s = ch.set;
  const bool trick = derivative_trick(s, ch.coding);
  const bool eisenstein_ok = s.ring == Ring::Rationals && s.integral();
  bool chain_ok = true;
  for (std::size_t n = 1; n <= ch.depth; ++n) {
    LevelCertificate& L = ch.levels[n - 1];
    if (trick) {
      L.stability = StabilityKind::DerivativeTrick;
      L.stability_detail = "d/dt of theta_1(0) mod 2 is 1; +-gamma_n(0) is never a square";
      continue;
    }
    if (n > orbit.size()) {
      L.stability = StabilityKind::Inconclusive;
      L.stability_detail = "orbit value exceeds the bit cap";
      chain_ok = false;
      continue;
    }
    const RatPolynomial& v = orbit[n - 1];
    const bool nonsquare = n == 1 ? !is_square(-v) : !is_square(v);
    if (nonsquare && chain_ok) {
      L.stability = StabilityKind::NonSquareWitness;
      L.stability_detail = n == 1 ? "-gamma_1(0) is not a square" : "gamma_n(0) is not a square";
    } else if (eisenstein_ok && static_cast<int>(n) <= opt.eisenstein_max_level &&
               eisenstein_stability(s, ch.coding, n).kind != EisensteinCase::Failed) {
      auto e = eisenstein_stability(s, ch.coding, n);
      L.stability = StabilityKind::EisensteinWitness;
      L.stability_detail = std::string(eisenstein_case_name(e.kind)) + " Eisenstein at 2";
    } else if (!nonsquare) {
      L.stability = StabilityKind::Failed;
      L.stability_detail = n == 1 ? "-gamma_1(0) is a square; gamma_1 is reducible" : "gamma_n(0) is a square";
    } else {
      L.stability = StabilityKind::Inconclusive;
      L.stability_detail = "an earlier level is not certified";
    }
    chain_ok = certifies_stability(L.stability);
  }
}

}  // namespace

std::optional<ToolIndices> tool_conditions(const GeneratorSet& s) {
  const auto cs = s.polynomial_constants();
  int D = 0;
  for (const auto& c : cs) D = std::max(D, c.degree());
  if (D <= 0) return std::nullopt;
  ToolIndices t;
  for (std::size_t i = 0; i < cs.size(); ++i) {
    if (derivative_is_one(cs[i])) t.J.push_back(i);
    if (cs[i].degree() == D && mpz_odd_p(cs[i].leading().get_mpz_t())) t.K.push_back(i);
  }
  if (t.J.empty() || t.K.empty()) return std::nullopt;
  t.j = t.J.front();
  auto other = std::find_if(t.K.begin(), t.K.end(), [&](std::size_t i) { return i != t.j; });
  t.k = other != t.K.end() ? *other : t.j;
  return t;
}

CertificateChain stability_certificate(const GeneratorSet& s, const SequenceCoding& coding, std::size_t depth,
                                       const CertifyOptions& opt) {
  if (depth == 0) throw std::invalid_argument("certificate depth must be at least 1");
  s.validate();
  coding.validate(s.size());
  CertificateChain ch;
  ch.set = s;
  ch.coding = coding;
  ch.depth = depth;
  ch.levels.resize(depth);
  const auto orbit = critical_orbit(s, coding, depth, opt.max_value_bits);
  for (std::size_t n = 1; n <= depth; ++n) {
    ch.levels[n - 1].level = n;
    ch.levels[n - 1].map_index = coding.at(n);
    if (opt.include_values && n <= orbit.size()) ch.levels[n - 1].value = orbit[n - 1].to_string();
  }
  fill_stability(ch, orbit, opt);
  ch.stable_through_depth = std::all_of(ch.levels.begin(), ch.levels.end(),
                                        [](const LevelCertificate& l) { return certifies_stability(l.stability); });
  return ch;
}

MaximalityVerdict maximality_by_primitive_odd_prime(const std::vector<Integer>& orbit, std::size_t n,
                                                    const FactorBudget& budget) {
  if (n < 2 || orbit.size() < n) throw std::invalid_argument("maximality_by_primitive_odd_prime: need n >= 2");
  const Integer& v = orbit[n - 1];
  if (v == 0) throw std::invalid_argument("gamma_n(0) = 0");
  MaximalityVerdict out;
  Integer r = abs(v);
  for (std::size_t m = 1; m < n && r != 1; ++m) {
    const Integer& w = orbit[m - 1];
    if (w == 0) {
      r = 1;  // every prime divides an earlier value
      break;
    }
    Integer g;
    mpz_gcd(g.get_mpz_t(), r.get_mpz_t(), w.get_mpz_t());
    while (g != 1) {
      mpz_divexact(r.get_mpz_t(), r.get_mpz_t(), g.get_mpz_t());
      mpz_gcd(g.get_mpz_t(), r.get_mpz_t(), g.get_mpz_t());
    }
  }
  if (r != 0) {
    mp_bitcnt_t twos = mpz_scan1(r.get_mpz_t(), 0);
    mpz_fdiv_q_2exp(r.get_mpz_t(), r.get_mpz_t(), twos);
  }
  // r carries each primitive odd prime to its full valuation in gamma_n(0)
  if (mpz_perfect_square_p(r.get_mpz_t())) {
    out.kind = MaximalityKind::NoWitness;
    out.detail = "every primitive odd prime appears to even valuation";
    return out;
  }
  out.kind = MaximalityKind::PrimitiveOddPrime;
  out.maximal = true;
  Factorization f = factor_integer(r, budget);
  for (const auto& [p, e] : f.primes) {
    if (e & 1) {
      out.witness = p.get_str();
      out.witness_is_prime = true;
      out.detail = "v_p(gamma_n(0)) = " + std::to_string(e);
      return out;
    }
  }
  out.witness = f.cofactor.get_str();
  out.witness_is_prime = false;
  out.detail = "non-square cofactor of primitive odd primes, not split within the factoring budget";
  return out;
}

MaximalityVerdict maximality_by_primitive_odd_prime(const GeneratorSet& s, const SequenceCoding& coding,
                                                    std::size_t n, const FactorBudget& budget) {
  if (s.ring != Ring::Rationals || !s.integral()) throw std::invalid_argument("integer set required");
  return maximality_by_primitive_odd_prime(to_integers(critical_orbit(s, coding, n)), n, budget);
}

MaximalityVerdict maximality_qt(const std::vector<RatPolynomial>& orbit, std::size_t n) {
  if (n < 2 || orbit.size() < n) throw std::invalid_argument("maximality_qt: need n >= 2");
  const RatPolynomial& v = orbit[n - 1];
  if (v.is_zero()) throw std::invalid_argument("gamma_n(0) = 0");
  MaximalityVerdict out;
  out.kind = MaximalityKind::NoWitness;
  if (v.is_constant()) {
    out.detail = "gamma_n(0) is constant";
    return out;
  }
  IntPolynomial odd = IntPolynomial::constant(1);
  for (const auto& f : squarefree_decomposition(v).factors)
    if (f.multiplicity & 1) odd = odd * f.factor.numerator();
  for (std::size_t m = 1; m < n && odd.degree() > 0; ++m) {
    const IntPolynomial& w = orbit[m - 1].numerator();
    if (w.is_zero()) {
      odd = IntPolynomial::constant(1);
      break;
    }
    if (w.degree() <= 0) continue;
    IntPolynomial g = primitive_part(gcd(odd, w));
    while (g.degree() > 0) {
      IntPolynomial q;
      if (!divides(g, odd, &q)) throw std::logic_error("maximality_qt: gcd does not divide");
      odd = q;
      g = primitive_part(gcd(odd, g));
    }
  }
  if (odd.degree() > 0) {
    out.kind = MaximalityKind::PrimitiveOddPrime;
    out.maximal = true;
    out.witness = primitive_part(odd).to_string();
    out.detail = "every irreducible factor of the witness divides gamma_n(0) to odd order and no earlier value";
  } else {
    out.detail = "no odd-multiplicity factor is primitive";
  }
  return out;
}

MaximalityVerdict maximality_qt(const GeneratorSet& s, const SequenceCoding& coding, std::size_t n) {
  return maximality_qt(critical_orbit(s, coding, n), n);
}

bool level2_oracle(const GeneratorSet& s, const SequenceCoding& coding) {
  const auto orbit = critical_orbit(s, coding, 2);
  const RatPolynomial m = -orbit[0];
  if (is_square(m)) throw std::invalid_argument("level2_oracle: -gamma_1(0) is a square");
  if (m.is_constant() && orbit[1].is_constant())
    return !square_in_quadratic_extension(orbit[1].leading(), m.leading());
  return !square_in_quadratic_extension(orbit[1], m);
}

CertificateChain certify_chain(const GeneratorSet& s, const SequenceCoding& coding, std::size_t depth,
                               const CertifyOptions& opt) {
  CertificateChain ch = stability_certificate(s, coding, depth, opt);
  const auto orbit = critical_orbit(s, coding, depth, opt.max_value_bits);
  const bool over_z = s.ring == Ring::Rationals && s.integral();
  std::vector<Integer> zorbit;
  if (over_z) zorbit = to_integers(orbit);

  if (s.ring == Ring::Polynomials && s.integral()) {
    ch.tool = tool_conditions(s);
    if (ch.tool) {
      const auto& J = ch.tool->J;
      ch.tool_guarantee = std::find(J.begin(), J.end(), coding.at(1)) != J.end();
    }
  }

  for (std::size_t n = 1; n <= depth; ++n) {
    LevelCertificate& L = ch.levels[n - 1];
    MaximalityVerdict& M = L.maximality;
    if (n > orbit.size()) {
      M.kind = MaximalityKind::Inconclusive;
      M.detail = "orbit value exceeds the bit cap";
      continue;
    }
    if (n == 1) {
      M.kind = MaximalityKind::BaseQuadratic;
      M.maximal = !is_square(-orbit[0]);
      M.witness = (-orbit[0]).to_string();
      M.detail = M.maximal ? "-gamma_1(0) is not a square" : "-gamma_1(0) is a square";
    } else if (!certifies_stability(ch.levels[n - 2].stability)) {
      M.kind = MaximalityKind::NotAttempted;
      M.detail = "gamma_{n-1} is not certified irreducible";
    } else {
      if (orbit[n - 1].is_zero()) {
        M.kind = MaximalityKind::NoWitness;
        M.detail = "gamma_n(0) = 0";
      } else if (over_z)
        M = maximality_by_primitive_odd_prime(zorbit, n, opt.budget);
      else if (s.ring == Ring::Polynomials && s.integral())
        M = maximality_qt(orbit, n);
      else
        M.detail = "no valuation criterion for non-integral coefficients";
      if (n == 2 && !M.maximal) {
        const bool m = level2_oracle(s, coding);
        M.kind = MaximalityKind::Level2Oracle;
        M.maximal = m;
        M.witness.clear();
        M.witness_is_prime = false;
        M.detail = m ? "gamma_2(0) is not a square in K_1" : "gamma_2(0) is a square in K_1";
      }
    }
    if (ch.tool_guarantee) {
      const auto& K = ch.tool->K;
      if (std::find(K.begin(), K.end(), L.map_index) != K.end()) {
        L.tool_guaranteed = true;
        if (!certifies_stability(L.stability) || !M.maximal)
          throw std::logic_error("tool guarantee contradicted at level " + std::to_string(n));
      }
    }
  }
  for (const auto& L : ch.levels)
    if (L.maximality.maximal) ch.maximal_levels.push_back(L.level);
  return ch;
}

bool discriminant_identity_check(const GeneratorSet& s, const SequenceCoding& coding, std::size_t n) {
  if (n < 2 || n > 5) throw std::invalid_argument("discriminant_identity_check: 2 <= n <= 5");
  s.validate();
  coding.validate(s.size());
  const RatPolynomial gn = composition(s, coding, n);
  const RatPolynomial gp = composition(s, coding, n - 1);
  const Rational lhs = discriminant(gn);
  Rational res = resultant(gp, derivative(gp));
  Integer two_pow;
  mpz_ui_pow_ui(two_pow.get_mpz_t(), 2, 1UL << n);
  Rational rhs = res * res * Rational(two_pow) * gn.coeff(0);
  rhs.canonicalize();
  return lhs == rhs;
}

DegreeLawResult degree_law_check(const GeneratorSet& s, const SequenceCoding& coding, std::size_t n) {
  const auto cs = s.polynomial_constants();
  int d = 0;
  for (const auto& c : cs) d = std::max(d, c.degree());
  if (d <= 0) throw std::invalid_argument("degree_law_check: needs a nonconstant c");
  DegreeLawResult r;
  const IntPolynomial v = critical_orbit(s, coding, n).back().to_integer();
  const IntPolynomial& inner = cs[coding.at(n)];
  r.degree = v.degree();
  r.bound = d << (n - 1);
  r.inequality_holds = r.degree <= r.bound;
  r.equality_case = inner.degree() == d;
  if (r.equality_case) {
    r.equality_holds = r.degree == r.bound;
    Integer p;
    mpz_pow_ui(p.get_mpz_t(), inner.leading().get_mpz_t(), 1UL << (n - 1));
    r.leading_power_holds = v.leading() == p;
  }
  return r;
}

bool squarefree_trick_check(const IntPolynomial& z, const IntPolynomial& c) {
  if (!derivative_is_one(c)) throw std::invalid_argument("squarefree_trick_check: d/dt(c mod 2) != 1");
  const IntPolynomial f = z * z + c;
  if (f.is_zero() || mpz_even_p(f.leading().get_mpz_t()))
    throw std::invalid_argument("squarefree_trick_check: leading coefficient of z^2 + c is even");
  return is_squarefree(f);
}

}  // namespace arbor
