#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "sp4/matrix.hpp"
#include "sp4/numeric.hpp"

namespace sp4 {

/// Univariate polynomial, coefficients stored constant term first. Trailing zeros
/// are stripped so the leading coefficient is nonzero unless the polynomial is 0.
template <class T>
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<T> coeffs) : c_(std::move(coeffs)) { trim(); }
  Poly(std::initializer_list<T> coeffs) : c_(coeffs) { trim(); }

  static Poly monomial(std::size_t degree, const T& coeff = T(1)) {
    std::vector<T> c(degree + 1, T(0));
    c[degree] = coeff;
    return Poly(std::move(c));
  }

  bool is_zero() const { return c_.empty(); }
  /// -1 for the zero polynomial.
  long degree() const { return static_cast<long>(c_.size()) - 1; }
  const std::vector<T>& coeffs() const { return c_; }
  T coeff(std::size_t k) const { return k < c_.size() ? c_[k] : T(0); }
  T leading() const { return c_.empty() ? T(0) : c_.back(); }
  bool monic() const { return !c_.empty() && c_.back() == 1; }

  friend Poly operator+(const Poly& a, const Poly& b) {
    std::vector<T> c(std::max(a.c_.size(), b.c_.size()), T(0));
    for (std::size_t k = 0; k < c.size(); ++k) c[k] = a.coeff(k) + b.coeff(k);
    return Poly(std::move(c));
  }
  friend Poly operator-(const Poly& a, const Poly& b) {
    std::vector<T> c(std::max(a.c_.size(), b.c_.size()), T(0));
    for (std::size_t k = 0; k < c.size(); ++k) c[k] = a.coeff(k) - b.coeff(k);
    return Poly(std::move(c));
  }
  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<T> c(a.c_.size() + b.c_.size() - 1, T(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    return Poly(std::move(c));
  }
  friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }

  /// Division by a monic divisor: returns (quotient, remainder).
  std::pair<Poly, Poly> divmod_monic(const Poly& d) const {
    if (!d.monic()) throw domain_error("divisor must be monic");
    std::vector<T> r = c_;
    if (r.size() < d.c_.size()) return {Poly(), *this};
    std::vector<T> q(r.size() - d.c_.size() + 1, T(0));
    for (std::size_t k = q.size(); k-- > 0;) {
      T lead = r[k + d.c_.size() - 1];
      q[k] = lead;
      if (lead == 0) continue;
      for (std::size_t j = 0; j < d.c_.size(); ++j) r[k + j] -= lead * d.c_[j];
    }
    return {Poly(std::move(q)), Poly(std::move(r))};
  }

  T operator()(const T& x) const {
    T acc(0);
    for (std::size_t k = c_.size(); k-- > 0;) acc = acc * x + c_[k];
    return acc;
  }

  /// Horner evaluation at a square matrix.
  Matrix<T> operator()(const Matrix<T>& m) const {
    auto id = Matrix<T>::identity(m.rows());
    Matrix<T> acc(m.rows(), m.cols());
    for (std::size_t k = c_.size(); k-- > 0;) acc = acc * m + c_[k] * id;
    return acc;
  }

  std::string str() const {
    if (c_.empty()) return "0";
    std::string s;
    for (std::size_t k = c_.size(); k-- > 0;) {
      const T& a = c_[k];
      if (a == 0) continue;
      std::string mag = T(abs(a)).get_str();
      bool neg = a < 0;
      if (s.empty())
        s += neg ? "-" : "";
      else
        s += neg ? "-" : "+";
      if (k == 0 || mag != "1") s += mag;
      if (k >= 1) s += "x";
      if (k >= 2) s += "^" + std::to_string(k);
    }
    return s;
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
  std::vector<T> c_;
};

template <class T>
std::ostream& operator<<(std::ostream& os, const Poly<T>& p) {
  return os << p.str();
}

using IntPoly = Poly<Int>;
using RatPoly = Poly<Rat>;

inline RatPoly to_rat(const IntPoly& p) {
  std::vector<Rat> c;
  for (const auto& x : p.coeffs()) c.emplace_back(x);
  return RatPoly(std::move(c));
}

/// Rejects polynomials with non-integer coefficients.
inline IntPoly to_int(const RatPoly& p) {
  std::vector<Int> c;
  for (const auto& x : p.coeffs()) c.push_back(to_int(x));
  return IntPoly(std::move(c));
}

/// det(xI - M) by Faddeev-LeVerrier; monic of degree n.
inline RatPoly char_poly(const RatMatrix& m) {
  if (!m.square()) throw dimension_error("characteristic polynomial needs a square matrix");
  const std::size_t n = m.rows();
  std::vector<Rat> c(n + 1, Rat(0));
  c[n] = 1;
  RatMatrix id = RatMatrix::identity(n);
  RatMatrix mk(n, n);
  for (std::size_t k = 1; k <= n; ++k) {
    mk = m * mk + c[n - k + 1] * id;
    RatMatrix amk = m * mk;
    Rat tr = 0;
    for (std::size_t i = 0; i < n; ++i) tr += amk(i, i);
    c[n - k] = -tr / Rat(static_cast<long>(k));
  }
  return RatPoly(std::move(c));
}

inline RatPoly char_poly(const ExactMatrix& m) { return char_poly(to_rat(m)); }

}  // namespace sp4
