#pragma once

// Independent reference computations used only by the tests.

#include "arbor/algebra.hpp"
#include "arbor/dynamics.hpp"

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

namespace oracle {

using arbor::Integer;
using arbor::IntPolynomial;
using arbor::Rational;

inline IntPolynomial random_poly(std::mt19937_64& rng, int max_deg, long bound, bool nonzero = true) {
  std::uniform_int_distribution<int> deg(0, max_deg);
  std::uniform_int_distribution<long> coef(-bound, bound);
  for (;;) {
    std::vector<Integer> c(static_cast<std::size_t>(deg(rng)) + 1);
    for (auto& v : c) v = coef(rng);
    IntPolynomial f(c);
    if (!nonzero || !f.is_zero()) return f;
  }
}

/// Determinant of the Sylvester matrix by Gaussian elimination over Q.
inline Rational sylvester_resultant(const IntPolynomial& f, const IntPolynomial& g) {
  const int m = f.degree(), n = g.degree();
  const int N = m + n;
  if (N == 0) return 1;
  std::vector<std::vector<Rational>> a(N, std::vector<Rational>(N, 0));
  for (int r = 0; r < n; ++r)
    for (int i = 0; i <= m; ++i) a[r][r + i] = f.coeff(static_cast<std::size_t>(m - i));
  for (int r = 0; r < m; ++r)
    for (int i = 0; i <= n; ++i) a[n + r][r + i] = g.coeff(static_cast<std::size_t>(n - i));
  Rational det = 1;
  for (int c = 0; c < N; ++c) {
    int p = c;
    while (p < N && a[p][c] == 0) ++p;
    if (p == N) return 0;
    if (p != c) {
      std::swap(a[p], a[c]);
      det = -det;
    }
    det *= a[c][c];
    for (int r = c + 1; r < N; ++r) {
      if (a[r][c] == 0) continue;
      Rational k = a[r][c] / a[c][c];
      for (int j = c; j < N; ++j) a[r][j] -= k * a[c][j];
    }
  }
  det.canonicalize();
  return det;
}

/// Element of Aut(T_n) as an array of swap bits, one per internal vertex in
/// heap order (root = 1, children 2v and 2v+1).
inline std::size_t apply_automorphism(std::uint64_t bits, unsigned n, std::size_t leaf) {
  std::size_t v = 1, image = 0;
  for (unsigned level = 0; level < n; ++level) {
    const std::size_t bit = (leaf >> (n - 1 - level)) & 1;
    const bool swap = (bits >> (v - 1)) & 1;
    image = 2 * image + (bit ^ swap);
    v = 2 * v + bit;
  }
  return image;
}

/// Fixed-point proportion of Aut(T_n) by enumerating all 2^(2^n - 1) elements.
inline Rational brute_force_fpp(unsigned n) {
  const unsigned internal = (1u << n) - 1;
  const std::uint64_t order = std::uint64_t(1) << internal;
  std::uint64_t fixing = 0;
  for (std::uint64_t g = 0; g < order; ++g) {
    for (std::size_t leaf = 0; leaf < (std::size_t(1) << n); ++leaf) {
      if (apply_automorphism(g, n, leaf) == leaf) {
        ++fixing;
        break;
      }
    }
  }
  Rational q(Integer(std::to_string(fixing)), Integer(std::to_string(order)));
  q.canonicalize();
  return q;
}

/// gamma_n(0) for an integer critical set by plain right-to-left evaluation.
inline std::vector<Integer> integer_orbit(const std::vector<long>& c, const arbor::SequenceCoding& coding,
                                          std::size_t n, long a0 = 0) {
  std::vector<Integer> out;
  for (std::size_t m = 0; m <= n; ++m) {
    Integer z = a0;
    for (std::size_t i = m; i >= 1; --i) z = z * z + c[coding.at(i)];
    out.push_back(z);
  }
  return out;  // out[m] = gamma_m(a0), out[0] = a0
}

}  // namespace oracle
