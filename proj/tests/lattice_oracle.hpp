#pragma once

// Independent enumeration of invariant lattices for the lattice tests. Starting
// from Z^4 it walks down through invariant sublattices M' with pM < M' < M for
// primes p | m, up to homothety, then keeps the classes containing a lattice on
// which the form is unimodular after rescaling. Shares no code with the sweep.

#include <gmpxx.h>

#include <algorithm>
#include <array>
#include <deque>
#include <set>
#include <vector>

namespace oracle {

using Z = mpz_class;
using Q = mpq_class;
using Vec = std::array<Z, 4>;
using Basis = std::array<Vec, 4>;  // rows, upper triangular HNF
using Mat = std::array<std::array<Z, 4>, 4>;

struct Setup {
  Mat T0, T1, G;
};

inline Setup setup(long m, long a) {
  Setup s;
  s.T0 = {{{1, 0, 0, 0}, {1, 1, 0, 0}, {0, m, 1, 0}, {0, 0, 1, 1}}};
  s.T1 = {{{1, -a, -1, -1}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}}};
  s.G = {{{0, -a, -1, -1}, {a, 0, 1, 0}, {1, -1, 0, 0}, {1, 0, 0, 0}}};
  return s;
}

inline Vec apply(const Mat& M, const Vec& v) {
  Vec w;
  for (int i = 0; i < 4; ++i) {
    w[i] = 0;
    for (int j = 0; j < 4; ++j) w[i] += M[i][j] * v[j];
  }
  return w;
}

inline Z fdiv(const Z& a, const Z& b) {
  Z q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

// Row Hermite form of a full-rank generating set, divided by its content.
inline Basis primitive_hnf(std::vector<Vec> rows) {
  Basis out;
  for (int c = 0; c < 4; ++c) {
    while (true) {
      auto nz = std::partition(rows.begin(), rows.end(), [&](const Vec& v) { return v[c] != 0; });
      std::size_t n = static_cast<std::size_t>(nz - rows.begin());
      if (n <= 1) break;
      auto piv = std::min_element(rows.begin(), nz, [&](const Vec& x, const Vec& y) { return abs(x[c]) < abs(y[c]); });
      std::iter_swap(rows.begin(), piv);
      for (std::size_t k = 1; k < n; ++k) {
        Z q = fdiv(rows[k][c], rows[0][c]);
        for (int j = 0; j < 4; ++j) rows[k][j] -= q * rows[0][j];
      }
    }
    if (rows.empty() || rows[0][c] == 0) throw std::runtime_error("rank-deficient generating set");
    if (rows[0][c] < 0)
      for (auto& x : rows[0]) x = -x;
    out[c] = rows[0];
    rows.erase(rows.begin());
  }
  // Left to right, so later reductions leave earlier columns alone.
  for (int i = 1; i < 4; ++i)
    for (int k = 0; k < i; ++k) {
      Z q = fdiv(out[k][i], out[i][i]);
      for (int j = 0; j < 4; ++j) out[k][j] -= q * out[i][j];
    }
  Z g = 0;
  for (const auto& r : out)
    for (const auto& x : r) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
  for (auto& r : out)
    for (auto& x : r) x /= g;
  return out;
}

// Coordinates of v in the triangular basis b; nullopt-like flag if not integral.
inline bool coords(const Basis& b, Vec v, std::array<Q, 4>& c) {
  std::array<Q, 4> w;
  for (int j = 0; j < 4; ++j) w[j] = v[j];
  for (int i = 0; i < 4; ++i) {
    c[i] = w[i] / Q(b[i][i]);
    for (int j = 0; j < 4; ++j) w[j] -= c[i] * Q(b[i][j]);
  }
  for (const auto& x : c)
    if (x.get_den() != 1) return false;
  return true;
}

inline bool invariant(const Setup& s, const Basis& b) {
  std::array<Q, 4> c;
  for (const auto& v : b)
    if (!coords(b, oracle::apply(s.T0, v), c) || !coords(b, oracle::apply(s.T1, v), c)) return false;
  return true;
}

inline std::vector<long> prime_factors(long m) {
  std::vector<long> ps;
  for (long p = 2; p * p <= m; ++p)
    if (m % p == 0) {
      ps.push_back(p);
      while (m % p == 0) m /= p;
    }
  if (m > 1) ps.push_back(m);
  return ps;
}

// Reduced echelon generators of every subspace of F_p^4 of dimension 1..3.
inline std::vector<std::vector<std::array<long, 4>>> subspaces(long p) {
  std::vector<std::vector<std::array<long, 4>>> out;
  for (int mask = 1; mask < 15; ++mask) {
    std::vector<int> piv;
    for (int c = 0; c < 4; ++c)
      if (mask & (1 << c)) piv.push_back(c);
    std::vector<std::pair<int, int>> free;
    for (std::size_t i = 0; i < piv.size(); ++i)
      for (int c = piv[i] + 1; c < 4; ++c)
        if (!(mask & (1 << c))) free.emplace_back(static_cast<int>(i), c);
    long total = 1;
    for (std::size_t k = 0; k < free.size(); ++k) total *= p;
    for (long code = 0; code < total; ++code) {
      std::vector<std::array<long, 4>> rows(piv.size(), {0, 0, 0, 0});
      for (std::size_t i = 0; i < piv.size(); ++i) rows[i][piv[i]] = 1;
      long x = code;
      for (auto [i, c] : free) {
        rows[i][c] = x % p;
        x /= p;
      }
      out.push_back(rows);
    }
  }
  return out;
}

/// Homothety classes of T0,T1-invariant lattices, as primitive row HNFs.
inline std::set<Basis> invariant_lattices(long m, long a) {
  Setup s = setup(m, a);
  Basis L0{{{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}}};
  std::set<Basis> seen{L0};
  std::deque<Basis> queue{L0};
  auto ps = prime_factors(m);
  std::vector<std::vector<std::vector<std::array<long, 4>>>> subs;
  for (long p : ps) subs.push_back(subspaces(p));
  while (!queue.empty()) {
    Basis M = queue.front();
    queue.pop_front();
    for (std::size_t pi = 0; pi < ps.size(); ++pi) {
      long p = ps[pi];
      for (const auto& S : subs[pi]) {
        std::vector<Vec> gens;
        for (const auto& v : M) {
          Vec w;
          for (int j = 0; j < 4; ++j) w[j] = p * v[j];
          gens.push_back(w);
        }
        for (const auto& coeffs : S) {
          Vec w{0, 0, 0, 0};
          for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) w[j] += coeffs[i] * M[i][j];
          gens.push_back(w);
        }
        Basis N = primitive_hnf(gens);
        if (seen.count(N) || !invariant(s, N)) continue;
        seen.insert(N);
        queue.push_back(N);
      }
    }
  }
  return seen;
}

inline Q gram_entry(const Setup& s, const Vec& x, const Vec& y) {
  Z acc = 0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) acc += x[i] * s.G[i][j] * y[j];
  return Q(acc);
}

// Rational q > 0 with q^4 det = 1 and q * Gram integral, if any.
inline bool unimodular_rescaling(const Setup& s, const Basis& b) {
  std::array<std::array<Q, 4>, 4> g;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) g[i][j] = gram_entry(s, b[i], b[j]);
  // Pfaffian of an antisymmetric 4x4 matrix: det = pf^2, so q^2 |pf| = 1.
  Q pf = g[0][1] * g[2][3] - g[0][2] * g[1][3] + g[0][3] * g[1][2];
  Z num = abs(pf.get_num()), den = pf.get_den();
  if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t())) return false;
  Z rn, rd;
  mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
  Q q(rd, rn);
  q.canonicalize();
  for (const auto& row : g)
    for (const auto& x : row)
      if (Q(q * x).get_den() != 1) return false;
  return true;
}

struct OracleLattice {
  Basis basis;
  long r, s, t;
  long n1_content;
};

/// Divisibilities read off the triangular basis: row i lies in span(e_i..e_4).
inline OracleLattice describe(const Setup& s, const Basis& b) {
  Mat N0 = s.T0, N1 = s.T1;
  for (int i = 0; i < 4; ++i) {
    N0[i][i] -= 1;
    N1[i][i] -= 1;
  }
  std::array<Q, 4> c;
  OracleLattice o{b, 0, 0, 0, 0};
  coords(b, oracle::apply(N0, b[0]), c);
  o.r = Z(abs(c[1].get_num())).get_si();
  coords(b, oracle::apply(N0, b[1]), c);
  o.s = Z(abs(c[2].get_num())).get_si();
  coords(b, oracle::apply(N1, b[3]), c);
  o.t = Z(abs(c[0].get_num())).get_si();
  Z g = 0;
  for (const auto& v : b) {
    coords(b, oracle::apply(N1, v), c);
    for (const auto& x : c) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_num_mpz_t());
  }
  o.n1_content = g.get_si();
  return o;
}

inline std::vector<OracleLattice> unimodular_lattices(long m, long a) {
  Setup s = setup(m, a);
  std::vector<OracleLattice> out;
  for (const auto& b : invariant_lattices(m, a))
    if (unimodular_rescaling(s, b)) out.push_back(describe(s, b));
  return out;
}

/// Primitive row HNF of the lattice spanned by rational columns, for comparing
/// with library canonical forms.
inline Basis from_rational_columns(const std::vector<std::array<Q, 4>>& cols) {
  Z den = 1;
  for (const auto& c : cols)
    for (const auto& x : c) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), x.get_den_mpz_t());
  std::vector<Vec> rows;
  for (const auto& c : cols) {
    Vec v;
    for (int j = 0; j < 4; ++j) {
      Q y = c[j] * Q(den);
      v[j] = y.get_num();
    }
    rows.push_back(v);
  }
  return primitive_hnf(rows);
}

}  // namespace oracle
