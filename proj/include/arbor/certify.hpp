#pragma once

#include "arbor/algebra.hpp"
#include "arbor/dynamics.hpp"
#include "arbor/factor.hpp"

#include <json.hpp>

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace arbor {

enum class StabilityKind { NonSquareWitness, EisensteinWitness, DerivativeTrick, Failed, Inconclusive };
enum class MaximalityKind { BaseQuadratic, PrimitiveOddPrime, Level2Oracle, NoWitness, NotAttempted, Inconclusive };

const char* stability_kind_name(StabilityKind k);
const char* maximality_kind_name(MaximalityKind k);

inline bool certifies_stability(StabilityKind k) {
  return k == StabilityKind::NonSquareWitness || k == StabilityKind::EisensteinWitness ||
         k == StabilityKind::DerivativeTrick;
}

struct MaximalityVerdict {
  MaximalityKind kind = MaximalityKind::NotAttempted;
  bool maximal = false;
  /// Decimal prime, a non-square cofactor (witness_is_prime false) or the
  /// polynomial part of gamma_n(0) left after stripping earlier values.
  std::string witness;
  bool witness_is_prime = false;
  std::string detail;
};

struct LevelCertificate {
  std::size_t level = 0;
  std::size_t map_index = 0;  // 0-based index of theta_n
  StabilityKind stability = StabilityKind::Inconclusive;
  std::string stability_detail;
  MaximalityVerdict maximality;
  bool tool_guaranteed = false;
  std::string value;  // gamma_n(0), empty when not computed
};

struct ToolIndices {
  std::size_t j = 0, k = 0;           // 0-based, smallest-index tie-break
  std::vector<std::size_t> J, K;      // every index meeting condition (1), resp. (2)
};

/// Conditions (1) d/dt(c_j mod 2) = 1 and (2) deg c_k = max degree > 0 with
/// odd leading coefficient. k is the smallest qualifying index other than j,
/// or j itself when no other index qualifies.
std::optional<ToolIndices> tool_conditions(const GeneratorSet& s);

struct CertifyOptions {
  FactorBudget budget;
  std::size_t max_value_bits = std::size_t(1) << 24;  // integer orbit values past this are not examined
  int eisenstein_max_level = 12;                       // degree 2^n compositions
  bool include_values = true;
};

struct CertificateChain {
  GeneratorSet set;
  SequenceCoding coding;
  std::size_t depth = 0;
  std::vector<LevelCertificate> levels;
  bool stable_through_depth = false;
  std::vector<std::size_t> maximal_levels;
  bool tool_guarantee = false;
  std::optional<ToolIndices> tool;
  bool inconclusive() const;
};

/// Stability side only; maximality fields are left NotAttempted.
CertificateChain stability_certificate(const GeneratorSet& s, const SequenceCoding& coding, std::size_t depth,
                                       const CertifyOptions& opt = {});

/// Primitive odd prime of odd valuation in gamma_n(0) over Z, n >= 2.
MaximalityVerdict maximality_by_primitive_odd_prime(const std::vector<Integer>& orbit, std::size_t n,
                                                    const FactorBudget& budget = {});
MaximalityVerdict maximality_by_primitive_odd_prime(const GeneratorSet& s, const SequenceCoding& coding,
                                                    std::size_t n, const FactorBudget& budget = {});

/// Odd-multiplicity part of gamma_n(0) in Q[t] with every factor shared with
/// an earlier gamma_m(0) removed, n >= 2.
MaximalityVerdict maximality_qt(const std::vector<RatPolynomial>& orbit, std::size_t n);
MaximalityVerdict maximality_qt(const GeneratorSet& s, const SequenceCoding& coding, std::size_t n);

CertificateChain certify_chain(const GeneratorSet& s, const SequenceCoding& coding, std::size_t depth,
                               const CertifyOptions& opt = {});

/// [K_2 : K_1] = 4. Throws std::invalid_argument when -gamma_1(0) is a square.
bool level2_oracle(const GeneratorSet& s, const SequenceCoding& coding);

/// disc(gamma_n) == Res(gamma_{n-1}, gamma_{n-1}')^2 * 2^(2^n) * gamma_n(0)
/// for 2 <= n <= 5 over the rationals.
bool discriminant_identity_check(const GeneratorSet& s, const SequenceCoding& coding, std::size_t n);

struct DegreeLawResult {
  int degree = 0;
  int bound = 0;
  bool equality_case = false;  // deg theta_n(0) = d
  bool inequality_holds = false;
  bool equality_holds = false;
  bool leading_power_holds = false;
  bool ok() const { return inequality_holds && (!equality_case || (equality_holds && leading_power_holds)); }
};

DegreeLawResult degree_law_check(const GeneratorSet& s, const SequenceCoding& coding, std::size_t n);

/// z^2 + c square-free when d/dt(c mod 2) = 1 and the leading coefficient
/// of z^2 + c is odd. Throws std::invalid_argument if the hypotheses fail.
bool squarefree_trick_check(const IntPolynomial& z, const IntPolynomial& c);

inline constexpr int kCertificateFormatVersion = 1;
nlohmann::json to_json(const CertificateChain& chain, bool include_values = true);

}  // namespace arbor
