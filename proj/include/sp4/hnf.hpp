#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "sp4/matrix.hpp"

namespace sp4 {

namespace detail {

inline void column_combine(IntMatrix& a, std::size_t j, std::size_t k, const Int& x, const Int& y,
                           const Int& u, const Int& v) {
  // (col_j, col_k) <- (x col_j + y col_k, u col_j + v col_k); requires xv - yu = +-1.
  for (std::size_t i = 0; i < a.rows(); ++i) {
    Int cj = a(i, j), ck = a(i, k);
    a(i, j) = x * cj + y * ck;
    a(i, k) = u * cj + v * ck;
  }
}

inline Int floor_div(const Int& a, const Int& b) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

/// Column echelon form in place: lower triangular staircase, one pivot per row at
/// most, pivots positive and entries left of a pivot reduced into [0, pivot).
/// Returns the pivot (row, column) pairs.
inline std::vector<std::pair<std::size_t, std::size_t>> column_echelon(IntMatrix& a) {
  std::vector<std::pair<std::size_t, std::size_t>> pivots;
  std::size_t pc = 0;
  for (std::size_t i = 0; i < a.rows() && pc < a.cols(); ++i) {
    for (std::size_t k = pc + 1; k < a.cols(); ++k) {
      if (a(i, k) == 0) continue;
      Int g, s, t;
      mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a(i, pc).get_mpz_t(), a(i, k).get_mpz_t());
      Int u = -a(i, k) / g, v = a(i, pc) / g;
      // [s t; u v] has determinant (s a_pc + t a_k)/g = 1.
      column_combine(a, pc, k, s, t, u, v);
    }
    if (a(i, pc) == 0) continue;
    if (a(i, pc) < 0)
      for (std::size_t r = 0; r < a.rows(); ++r) a(r, pc) = -a(r, pc);
    pivots.emplace_back(i, pc);
    ++pc;
  }
  for (auto [i, c] : pivots) {
    for (std::size_t j = 0; j < c; ++j) {
      Int q = floor_div(a(i, j), a(i, c));
      if (q == 0) continue;
      for (std::size_t r = 0; r < a.rows(); ++r) a(r, j) -= q * a(r, c);
    }
  }
  return pivots;
}

}  // namespace detail

/// Column Hermite normal form of a nonsingular integer matrix: the unique lower
/// triangular H = M U (U unimodular) with positive diagonal and 0 <= H(i,j) < H(i,i)
/// for j < i.
inline IntMatrix column_hnf(const IntMatrix& m) {
  if (!m.square()) throw dimension_error("column_hnf needs a square matrix");
  IntMatrix h = m;
  auto pivots = detail::column_echelon(h);
  if (pivots.size() != m.rows()) throw rank_error("column_hnf of a singular matrix");
  return h;
}

/// Rational version: clear the common denominator, take the integer HNF, rescale.
/// Equal outputs iff the column spans are the same Z-lattice.
inline RatMatrix column_hnf(const RatMatrix& m) {
  if (!m.square()) throw dimension_error("column_hnf needs a square matrix");
  Int den = 1;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) den = lcm(den, Int(m(i, j).get_den()));
  IntMatrix scaled = m.map([&](const Rat& x) { return to_int(x * Rat(den)); });
  IntMatrix h = column_hnf(scaled);
  return h.map([&](const Int& x) { return make_rat(x, den); });
}

/// Index of the sublattice spanned by `vectors` inside Z^n; nullopt when the span
/// has rank below n.
inline std::optional<Int> span_index(const std::vector<std::vector<Int>>& vectors, std::size_t n) {
  if (n == 0) return Int(1);
  if (vectors.empty()) return std::nullopt;
  IntMatrix a(n, vectors.size());
  for (std::size_t j = 0; j < vectors.size(); ++j) {
    if (vectors[j].size() != n) throw dimension_error("span_index: vector of wrong length");
    for (std::size_t i = 0; i < n; ++i) a(i, j) = vectors[j][i];
  }
  auto pivots = detail::column_echelon(a);
  if (pivots.size() != n) return std::nullopt;
  Int index = 1;
  for (auto [i, c] : pivots) index *= a(i, c);
  return index;
}

}  // namespace sp4
