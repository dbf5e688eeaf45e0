#pragma once

#include <array>
#include <optional>
#include <vector>

#include "sp4/poly.hpp"

namespace sp4 {

/// Every n with Euler phi(n) <= 4, ascending.
inline constexpr std::array<int, 9> kSmallCyclotomicIndices{1, 2, 3, 4, 5, 6, 8, 10, 12};

inline int euler_phi(int n) {
  int result = n;
  for (int p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    while (n % p == 0) n /= p;
    result -= result / p;
  }
  if (n > 1) result -= result / n;
  return result;
}

/// The n-th cyclotomic polynomial, built as (x^n - 1) divided by Phi_d for every
/// proper divisor d of n.
inline IntPoly cyclotomic(int n) {
  if (n <= 0) throw domain_error("cyclotomic index must be positive, got " + std::to_string(n));
  IntPoly p = IntPoly::monomial(static_cast<std::size_t>(n)) - IntPoly{1};
  for (int d = 1; d < n; ++d) {
    if (n % d) continue;
    auto [q, r] = p.divmod_monic(cyclotomic(d));
    p = q;
  }
  return p;
}

/// Multiset {n_i} with p = prod Phi_{n_i}, searching n in kSmallCyclotomicIndices;
/// nullopt when p is not such a product. Indices come back ascending.
inline std::optional<std::vector<int>> cyclotomic_factorization(const IntPoly& p) {
  if (!p.monic()) throw domain_error("cyclotomic factorization needs a monic polynomial, got " + p.str());
  IntPoly rest = p;
  std::vector<int> indices;
  for (int n : kSmallCyclotomicIndices) {
    IntPoly phi = cyclotomic(n);
    while (rest.degree() >= phi.degree()) {
      auto [q, r] = rest.divmod_monic(phi);
      if (!r.is_zero()) break;
      indices.push_back(n);
      rest = q;
    }
  }
  if (rest.degree() != 0) return std::nullopt;
  return indices;
}

}  // namespace sp4
