#include "arbor/prime_density.hpp"

#include <algorithm>
#include <cmath>

namespace arbor {

std::vector<std::uint32_t> primes_up_to(std::uint32_t n) {
  std::vector<std::uint32_t> out;
  if (n < 2) return out;
  const std::uint32_t root = static_cast<std::uint32_t>(std::sqrt(static_cast<double>(n))) + 1;
  std::vector<char> small(root + 1, 1);
  std::vector<std::uint32_t> base;
  for (std::uint32_t i = 2; i <= root; ++i) {
    if (!small[i]) continue;
    base.push_back(i);
    for (std::uint64_t j = std::uint64_t(i) * i; j <= root; j += i) small[j] = 0;
  }
  constexpr std::uint32_t kSegment = 1u << 18;
  std::vector<char> seg(kSegment);
  for (std::uint64_t lo = 2; lo <= n; lo += kSegment) {
    const std::uint64_t hi = std::min<std::uint64_t>(lo + kSegment - 1, n);
    std::fill(seg.begin(), seg.end(), 1);
    for (std::uint32_t p : base) {
      std::uint64_t start = std::max<std::uint64_t>(std::uint64_t(p) * p, (lo + p - 1) / p * p);
      for (std::uint64_t j = start; j <= hi; j += p) seg[j - lo] = 0;
    }
    for (std::uint64_t i = lo; i <= hi; ++i)
      if (seg[i - lo]) out.push_back(static_cast<std::uint32_t>(i));
  }
  return out;
}

}  // namespace arbor
