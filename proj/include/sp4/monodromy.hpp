#pragma once

#include <algorithm>
#include <numeric>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "sp4/cyclotomic.hpp"
#include "sp4/matrix.hpp"
#include "sp4/poly.hpp"

namespace sp4 {

struct reducible_error : domain_error {
  using domain_error::domain_error;
};
struct no_symplectic_form_error : domain_error {
  using domain_error::domain_error;
};

struct RepInvariants {
  Int m;
  Int a;
  Rat b{1};

  friend bool operator==(const RepInvariants&, const RepInvariants&) = default;
};

struct MonodromyPair {
  RatMatrix T0;
  RatMatrix T1;
  std::optional<RatMatrix> gram;
};

/// T0, T1 in the basis e1..e4 and, for b = 1, the invariant form (sign "+").
inline MonodromyPair build_pair(const RepInvariants& inv, bool want_gram = true) {
  if (inv.m == 0) throw reducible_error("m = 0 gives a reducible representation");
  if (want_gram && inv.b != 1)
    throw no_symplectic_form_error("no invariant symplectic form unless b = 1 (b = " + inv.b.get_str() + ")");
  const Rat m(inv.m), a(inv.a);
  MonodromyPair p;
  p.T0 = RatMatrix{{1, 0, 0, 0}, {1, 1, 0, 0}, {0, m, 1, 0}, {0, 0, 1, 1}};
  p.T1 = RatMatrix{{1, -a, -inv.b, -1}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}};
  if (want_gram) p.gram = RatMatrix{{0, -a, -1, -1}, {a, 0, 1, 0}, {1, -1, 0, 0}, {1, 0, 0, 0}};
  return p;
}

inline IntPoly char_poly_T_inf(const RepInvariants& inv) {
  // Integral only when b m is; palindromic only for b = 1.
  Rat bm = inv.b * Rat(inv.m);
  Rat c2 = Rat(6 - 2 * inv.a) + bm;
  Rat c1 = Rat(inv.a - 4 + inv.m) - bm;
  return IntPoly{1, to_int(c1), to_int(c2), inv.a - 4, 1};
}

/// rank(T - I) if T is unipotent, nullopt otherwise.
inline std::optional<std::size_t> unipotent_rank(const RatMatrix& T) {
  if (!T.square()) throw dimension_error("unipotent_rank needs a square matrix");
  RatMatrix N = T - RatMatrix::identity(T.rows());
  if (!N.pow(static_cast<unsigned>(T.rows())).is_zero()) return std::nullopt;
  return N.rank();
}

inline RepInvariants recover_invariants(const RatMatrix& T0, const RatMatrix& T1) {
  if (T0.rows() != 4 || !T0.square() || T1.rows() != 4 || !T1.square())
    throw dimension_error("recover_invariants needs 4x4 matrices");
  if (unipotent_rank(T0) != std::optional<std::size_t>(3))
    throw precondition_error("T0 is not maximal unipotent");
  if (unipotent_rank(T1) != std::optional<std::size_t>(1))
    throw precondition_error("T1 is not unipotent of rank one");
  RatMatrix id = RatMatrix::identity(4);
  RatMatrix N0 = T0 - id, N1 = T1 - id;
  auto kernel = N0.nullspace();
  const auto& v = kernel.front();
  auto w = N0.pow(3) * (N1 * v);
  Rat m;
  for (std::size_t i = 0; i < 4; ++i)
    if (v[i] != 0) {
      m = -w[i] / v[i];
      break;
    }
  if (m == 0) throw reducible_error("N0^3 N1 vanishes on Ker N0: reducible representation");
  RatPoly cp = char_poly(T0 * T1);
  Rat a = cp.coeff(3) + 4;
  Rat b = (cp.coeff(2) - 6 + 2 * a) / m;
  return {to_int(m), to_int(a), b};
}

/// The four exponents k/n (k coprime to n) read off a cyclotomic decomposition,
/// eigenvalue 1 reported as 1; ascending.
inline std::vector<Rat> exponents_of(const std::vector<int>& indices) {
  std::vector<Rat> out;
  for (int n : indices)
    for (int k = 1; k <= n; ++k)
      if (std::gcd(k, n) == 1) out.push_back(make_rat(k, n));
  std::sort(out.begin(), out.end());
  return out;
}

struct MonodromyClass {
  RepInvariants invariants;
  RatMatrix T0, T1, Tinf_inverse, gram;
  IntPoly char_poly_Tinf_inv;
  std::optional<std::vector<int>> cyclotomic_indices;
  std::optional<std::vector<Rat>> exponents;

  const Int& m() const { return invariants.m; }
  const Int& a() const { return invariants.a; }
};

inline MonodromyClass make_class(const RepInvariants& inv) {
  auto p = build_pair(inv);
  MonodromyClass c;
  c.invariants = inv;
  c.T0 = p.T0;
  c.T1 = p.T1;
  c.Tinf_inverse = p.T0 * p.T1;
  c.gram = *p.gram;
  c.char_poly_Tinf_inv = char_poly_T_inf(inv);
  c.cyclotomic_indices = cyclotomic_factorization(c.char_poly_Tinf_inv);
  if (c.cyclotomic_indices) c.exponents = exponents_of(*c.cyclotomic_indices);
  return c;
}

inline std::vector<Rat> exponents(const MonodromyClass& cls) {
  if (!cls.exponents)
    throw domain_error("class (m,a) = (" + cls.m().get_str() + "," + cls.a().get_str() + ") is not quasi-unipotent");
  return *cls.exponents;
}

/// All quasi-unipotent classes with b = 1: palindromic products of cyclotomic
/// polynomials of total degree 4 with nonzero m. Sorted by (exponents, m, a).
inline std::vector<MonodromyClass> enumerate_real_classes() {
  std::vector<int> idx(kSmallCyclotomicIndices.begin(), kSmallCyclotomicIndices.end());
  std::vector<std::vector<int>> multisets;
  std::vector<int> cur;
  auto rec = [&](auto&& self, std::size_t from, int degree) -> void {
    if (degree == 4) {
      multisets.push_back(cur);
      return;
    }
    for (std::size_t i = from; i < idx.size(); ++i) {
      int d = euler_phi(idx[i]);
      if (degree + d > 4) continue;
      cur.push_back(idx[i]);
      self(self, i, degree + d);
      cur.pop_back();
    }
  };
  rec(rec, 0, 0);

  std::vector<MonodromyClass> out;
  for (const auto& ms : multisets) {
    IntPoly p{1};
    for (int n : ms) p = p * cyclotomic(n);
    if (p.coeff(0) != 1 || p.coeff(1) != p.coeff(3)) continue;
    Int a = p.coeff(3) + 4;
    Int m = p.coeff(2) - 6 + 2 * a;
    if (m == 0) continue;
    out.push_back(make_class({m, a, 1}));
  }
  std::sort(out.begin(), out.end(), [](const MonodromyClass& x, const MonodromyClass& y) {
    return std::tie(*x.exponents, x.invariants.m, x.invariants.a) <
           std::tie(*y.exponents, y.invariants.m, y.invariants.a);
  });
  return out;
}

inline std::optional<MonodromyClass> find_real_class(const Int& m, const Int& a) {
  for (auto& c : enumerate_real_classes())
    if (c.m() == m && c.a() == a) return c;
  return std::nullopt;
}

}  // namespace sp4
