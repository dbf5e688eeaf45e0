#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "sp4/hnf.hpp"
#include "sp4/lattices.hpp"
#include "sp4/monodromy.hpp"
#include "sp4/poly.hpp"

namespace sp4::props {

using Rng = std::mt19937_64;

inline long uniform(Rng& rng, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

inline IntMatrix random_matrix(Rng& rng, std::size_t rows, std::size_t cols, long bound) {
  IntMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = uniform(rng, -bound, bound);
  return m;
}

/// Product of random elementary column operations and sign flips.
inline IntMatrix random_unimodular(Rng& rng, std::size_t n, int steps = 12) {
  IntMatrix u = IntMatrix::identity(n);
  if (n < 2) {
    if (n == 1 && uniform(rng, 0, 1)) u(0, 0) = -1;
    return u;
  }
  for (int k = 0; k < steps; ++k) {
    auto i = static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(n) - 1));
    auto j = static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(n) - 2));
    if (j >= i) ++j;
    Int c = uniform(rng, -3, 3);
    for (std::size_t r = 0; r < n; ++r) u(r, i) += c * u(r, j);
    if (uniform(rng, 0, 5) == 0)
      for (std::size_t r = 0; r < n; ++r) u(r, i) = -u(r, i);
  }
  return u;
}

inline IntMatrix random_nonsingular(Rng& rng, std::size_t n, long bound) {
  while (true) {
    IntMatrix m = random_matrix(rng, n, n, bound);
    if (m.determinant() != 0) return m;
  }
}

/// Integer matrix preserving the form G: a product of transvections x -> x + k <v,x> v.
inline RatMatrix random_symplectic(Rng& rng, const RatMatrix& G, int steps = 6) {
  const std::size_t n = G.rows();
  RatMatrix s = RatMatrix::identity(n);
  for (int k = 0; k < steps; ++k) {
    RatMatrix v(n, 1);
    for (std::size_t i = 0; i < n; ++i) v(i, 0) = uniform(rng, -2, 2);
    Rat c = uniform(rng, -2, 2);
    RatMatrix t = RatMatrix::identity(n) + c * (v * (v.transpose() * G));
    s = s * t;
  }
  return s;
}

inline RepInvariants random_invariants(Rng& rng, long bound = 20) {
  long m = 0;
  while (m == 0) m = uniform(rng, -bound, bound);
  return {m, uniform(rng, -bound, bound), 1};
}

struct PropertyResult {
  std::string name;
  std::size_t cases = 0;
  std::size_t failures = 0;
  std::string first_failure;
  double seconds = 0;
  bool ok() const { return failures == 0 && cases > 0; }
};

inline PropertyResult run_property(const std::string& name, std::size_t cases, std::uint64_t seed,
                                   const std::function<std::string(Rng&)>& body) {
  PropertyResult res{name, cases, 0, {}, 0};
  Rng rng(seed);
  auto t0 = std::chrono::steady_clock::now();
  for (std::size_t i = 0; i < cases; ++i) {
    std::string err;
    try {
      err = body(rng);
    } catch (const std::exception& e) {
      err = std::string("exception: ") + e.what();
    }
    if (!err.empty()) {
      if (res.failures == 0) res.first_failure = "case " + std::to_string(i) + ": " + err;
      ++res.failures;
    }
  }
  res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return res;
}

inline std::string cayley_hamilton_case(Rng& rng) {
  auto n = static_cast<std::size_t>(uniform(rng, 1, 5));
  RatMatrix m = to_rat(random_matrix(rng, n, n, 9));
  RatPoly p = char_poly(m);
  if (p.degree() != static_cast<long>(n) || !p.monic()) return "char_poly not monic of degree n";
  if (!p(m).is_zero()) return "p(M) != 0";
  return {};
}

inline std::string hnf_invariance_case(Rng& rng) {
  auto n = static_cast<std::size_t>(uniform(rng, 1, 5));
  IntMatrix m = random_nonsingular(rng, n, 6);
  IntMatrix h = column_hnf(m);
  if (column_hnf(m * random_unimodular(rng, n)) != h) return "HNF changed under unimodular action";
  if (column_hnf(h) != h) return "HNF not idempotent";
  for (std::size_t i = 0; i < n; ++i) {
    if (h(i, i) <= 0) return "non-positive pivot";
    for (std::size_t j = 0; j < n; ++j) {
      if (j > i && h(i, j) != 0) return "not lower triangular";
      if (j < i && (h(i, j) < 0 || h(i, j) >= h(i, i))) return "entry not reduced";
    }
  }
  if (abs(m.determinant()) != h.determinant()) return "determinant mismatch";
  return {};
}

inline std::string round_trip_case(Rng& rng) {
  RepInvariants inv = random_invariants(rng);
  auto p = build_pair(inv);
  if (recover_invariants(p.T0, p.T1) != inv) return "round trip failed";
  // Invariance under conjugation by an integral symplectic matrix.
  RatMatrix s = random_symplectic(rng, *p.gram);
  RatMatrix si = s.inverse();
  if (recover_invariants(si * p.T0 * s, si * p.T1 * s) != inv) return "conjugated round trip failed";
  return {};
}

inline std::string symplectic_case(Rng& rng) {
  RepInvariants inv = random_invariants(rng);
  auto p = build_pair(inv);
  const RatMatrix& G = *p.gram;
  for (const RatMatrix* T : {&p.T0, &p.T1}) {
    if (T->transpose() * G * *T != G) return "T^t G T != G";
    if (T->determinant() != 1) return "det T != 1";
  }
  RatMatrix s = random_symplectic(rng, G);
  if (s.transpose() * G * s != G) return "transvection product not symplectic";
  RatMatrix si = s.inverse();
  RatMatrix G2 = s.transpose() * G * s;
  for (const RatMatrix* T : {&p.T0, &p.T1}) {
    RatMatrix c = si * *T * s;
    if (c.transpose() * G2 * c != G2) return "conjugate does not preserve transformed form";
  }
  return {};
}

inline std::string filtration_case(Rng& rng) {
  RepInvariants inv = random_invariants(rng);
  RatMatrix n0 = build_pair(inv, false).T0 - RatMatrix::identity(4);
  RatMatrix u = to_rat(random_unimodular(rng, 4));
  n0 = u.inverse() * n0 * u;
  auto f = weight_filtration(n0);
  for (std::size_t i = 0; i < 4; ++i) {
    if (f.W[i].size() != i + 1) return "dim W_" + std::to_string(2 * i) + " != " + std::to_string(i + 1);
    if (i > 0 && !in_span(f.W[i - 1], f.W[i])) return "filtration not nested";
    std::vector<std::vector<Rat>> image;
    for (const auto& v : f.W[i]) image.push_back(n0 * v);
    if (i == 0) {
      if (!in_span(image, {})) return "N0 W0 != 0";
    } else if (!in_span(image, f.W[i - 1])) {
      return "N0 W_2i not inside W_2i-2";
    }
  }
  return {};
}

inline std::vector<PropertyResult> run_all(std::size_t cases = 200, std::uint64_t seed = 20240611) {
  return {
      run_property("cayley-hamilton", cases, seed + 1, cayley_hamilton_case),
      run_property("hnf-unimodular-invariance", cases, seed + 2, hnf_invariance_case),
      run_property("round-trip", cases, seed + 3, round_trip_case),
      run_property("symplectic-invariance", cases, seed + 4, symplectic_case),
      run_property("weight-filtration-nesting", cases, seed + 5, filtration_case),
  };
}

}  // namespace sp4::props
