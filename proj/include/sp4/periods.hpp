#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <utility>
#include <vector>

#include "sp4/numeric.hpp"

namespace sp4 {

/// Truncated series sum_{n<=N} c_n z^n.
class RationalSeries {
 public:
  RationalSeries() : c_(1, Rat(0)) {}
  explicit RationalSeries(std::vector<Rat> coeffs) : c_(std::move(coeffs)) {
    if (c_.empty()) throw dimension_error("series needs at least the constant coefficient");
  }

  std::size_t order() const { return c_.size() - 1; }
  const std::vector<Rat>& coeffs() const { return c_; }
  const Rat& operator[](std::size_t n) const { return c_.at(n); }

  bool is_zero() const {
    for (const auto& x : c_)
      if (x != 0) return false;
    return true;
  }

  friend bool operator==(const RationalSeries&, const RationalSeries&) = default;

 private:
  std::vector<Rat> c_;
};

/// Two-variable series truncated at total degree N, keyed by (k, m).
struct BiSeries {
  std::size_t order = 0;
  std::map<std::pair<std::size_t, std::size_t>, Rat> coeffs;
};

using Exponents = std::array<Rat, 4>;

/// Solution with c_0 = 1 of n^4 c_n = prod_j (n - 1 + a_j) c_{n-1}.
inline RationalSeries hypergeom_series(const Exponents& a, std::size_t N) {
  std::vector<Rat> c(N + 1);
  c[0] = 1;
  for (std::size_t n = 1; n <= N; ++n) {
    Rat num = 1;
    for (const auto& aj : a) num *= Rat(static_cast<unsigned long>(n - 1)) + aj;
    Rat n4 = pow(Rat(static_cast<unsigned long>(n)), 4);
    c[n] = c[n - 1] * num / n4;
  }
  return RationalSeries(std::move(c));
}

/// (5n)!/(n!)^5 * 5^{-5n}.
inline RationalSeries quintic_series(std::size_t N) {
  std::vector<Rat> c(N + 1);
  for (std::size_t n = 0; n <= N; ++n) {
    Int num = factorial(5 * n);
    Int den = pow(factorial(n), 5) * pow(Int(5), 5 * n);
    c[n] = make_rat(num, den);
  }
  return RationalSeries(std::move(c));
}

/// [Theta^4 - z prod (Theta + a_j)] applied to s, through z^{N-1}.
inline RationalSeries pf_residual(const Exponents& a, const RationalSeries& s) {
  if (s.order() < 1) throw precondition_error("pf_residual needs a series of order at least 1");
  std::vector<Rat> r(s.order());
  for (std::size_t n = 0; n < r.size(); ++n) {
    Rat theta4 = pow(Rat(static_cast<unsigned long>(n)), 4) * s[n];
    Rat shifted = 0;
    if (n > 0) {
      shifted = s[n - 1];
      for (const auto& aj : a) shifted *= Rat(static_cast<unsigned long>(n - 1)) + aj;
    }
    r[n] = theta4 - shifted;
  }
  return RationalSeries(std::move(r));
}

/// (2m)! (6k+12m)! / ((3k+6m)! (m!)^4 k! (2k+4m)!).
inline Rat two_param_coeff(std::size_t k, std::size_t m) {
  Int num = factorial(2 * m) * factorial(6 * k + 12 * m);
  Int den = factorial(3 * k + 6 * m) * pow(factorial(m), 4) * factorial(k) * factorial(2 * k + 4 * m);
  return make_rat(num, den);
}

inline BiSeries two_param_series(std::size_t N) {
  BiSeries s;
  s.order = N;
  for (std::size_t k = 0; k <= N; ++k)
    for (std::size_t m = 0; k + m <= N; ++m) s.coeffs[{k, m}] = two_param_coeff(k, m);
  return s;
}

inline const Exponents& restriction_exponents() {
  static const Exponents e{make_rat(1, 12), make_rat(5, 12), make_rat(7, 12), make_rat(11, 12)};
  return e;
}

struct RestrictionResult {
  bool match = false;
  Rat kappa;
};

/// Compares a one-variable slice c_0..c_N with h_m kappa^m, where h is the
/// (1/12,5/12,7/12,11/12) hypergeometric series and kappa = c_1 / h_1.
inline RestrictionResult restriction_matches(const std::vector<Rat>& slice) {
  if (slice.size() < 2) throw precondition_error("restriction check needs order at least 1");
  const std::size_t N = slice.size() - 1;
  RationalSeries h = hypergeom_series(restriction_exponents(), N);
  if (slice[1] == 0 || h[1] == 0) throw domain_error("degenerate first-order coefficient");
  RestrictionResult res;
  res.kappa = slice[1] / h[1];
  res.match = true;
  Rat kpow = 1;
  for (std::size_t m = 0; m <= N; ++m, kpow *= res.kappa)
    if (slice[m] != h[m] * kpow) res.match = false;
  return res;
}

/// The z1 = 0 slice of the two-parameter series against the hypergeometric one.
inline RestrictionResult restriction_matches(std::size_t N) {
  std::vector<Rat> slice;
  for (std::size_t m = 0; m <= N; ++m) slice.push_back(two_param_coeff(0, m));
  return restriction_matches(slice);
}

}  // namespace sp4
