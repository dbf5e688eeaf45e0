#pragma once

#include <ostream>
#include <string>
#include <utility>

#include "sp4/numeric.hpp"

namespace sp4 {

namespace detail {

// Splits n = k^2 * core with core squarefree.
inline std::pair<Int, Int> square_split(const Int& n) {
  Int core = n, k = 1;
  for (Int p = 2; p * p <= core; ++p) {
    Int pp = p * p;
    while (core % pp == 0) {
      core /= pp;
      k *= p;
    }
  }
  return {k, core};
}

}  // namespace detail

/// An element rational + radical * sqrt(radicand) of Q(sqrt t).
///
/// The radicand is kept squarefree; a square radicand collapses into the rational
/// part with radicand 1. Values whose radical part is zero are treated as plain
/// rationals and combine with any radicand. Mixing two different nontrivial
/// radicands throws domain_error.
class QuadElem {
 public:
  QuadElem() = default;
  QuadElem(long v) : rational_(v) {}  // NOLINT(google-explicit-constructor)
  QuadElem(const Int& v) : rational_(v) {}  // NOLINT
  QuadElem(const Rat& v) : rational_(v) {}  // NOLINT

  QuadElem(const Rat& rational, const Rat& radical, const Int& radicand)
      : rational_(rational), radical_(radical), radicand_(radicand) {
    if (radicand_ <= 0) throw domain_error("radicand must be positive, got " + radicand_.get_str());
    normalize();
  }

  /// sqrt(t) itself.
  static QuadElem sqrt_of(const Int& t) { return QuadElem(Rat(0), Rat(1), t); }

  const Rat& rational_part() const { return rational_; }
  const Rat& radical_part() const { return radical_; }
  const Int& radicand() const { return radicand_; }

  bool is_rational() const { return radical_ == 0; }
  bool is_zero() const { return rational_ == 0 && radical_ == 0; }

  Rat to_rational() const {
    if (!is_rational()) throw domain_error("irrational value " + str() + " used as rational");
    return rational_;
  }

  QuadElem conjugate() const { return QuadElem(rational_, -radical_, radicand_); }

  /// Field norm rational^2 - radical^2 * radicand.
  Rat norm() const { return rational_ * rational_ - radical_ * radical_ * Rat(radicand_); }

  QuadElem& operator+=(const QuadElem& o) {
    radicand_ = common_radicand(*this, o);
    rational_ += o.rational_;
    radical_ += o.radical_;
    return *this;
  }
  QuadElem& operator-=(const QuadElem& o) {
    radicand_ = common_radicand(*this, o);
    rational_ -= o.rational_;
    radical_ -= o.radical_;
    return *this;
  }
  QuadElem& operator*=(const QuadElem& o) {
    Int t = common_radicand(*this, o);
    Rat p = rational_ * o.rational_ + radical_ * o.radical_ * Rat(t);
    Rat q = rational_ * o.radical_ + radical_ * o.rational_;
    rational_ = p;
    radical_ = q;
    radicand_ = t;
    return *this;
  }
  QuadElem& operator/=(const QuadElem& o) {
    if (o.is_zero()) throw domain_error("division by zero in Q(sqrt t)");
    if (o.is_rational()) {
      rational_ /= o.rational_;
      radical_ /= o.rational_;
      return *this;
    }
    Rat n = o.norm();
    *this *= o.conjugate();
    rational_ /= n;
    radical_ /= n;
    return *this;
  }

  friend QuadElem operator+(QuadElem a, const QuadElem& b) { return a += b; }
  friend QuadElem operator-(QuadElem a, const QuadElem& b) { return a -= b; }
  friend QuadElem operator*(QuadElem a, const QuadElem& b) { return a *= b; }
  friend QuadElem operator/(QuadElem a, const QuadElem& b) { return a /= b; }
  friend QuadElem operator-(QuadElem a) {
    a.rational_ = -a.rational_;
    a.radical_ = -a.radical_;
    return a;
  }

  friend bool operator==(const QuadElem& a, const QuadElem& b) {
    if (a.is_rational() && b.is_rational()) return a.rational_ == b.rational_;
    common_radicand(a, b);
    return a.rational_ == b.rational_ && a.radical_ == b.radical_;
  }

  std::string str() const {
    if (is_rational()) return rational_.get_str();
    std::string s;
    if (rational_ != 0) s = rational_.get_str() + (radical_ > 0 ? "+" : "");
    return s + radical_.get_str() + "*sqrt(" + radicand_.get_str() + ")";
  }

  friend std::ostream& operator<<(std::ostream& os, const QuadElem& q) { return os << q.str(); }

 private:
  static Int common_radicand(const QuadElem& a, const QuadElem& b) {
    if (a.radicand_ == b.radicand_) return a.radicand_;
    if (a.radicand_ == 1 || a.is_rational()) return b.radicand_;
    if (b.radicand_ == 1 || b.is_rational()) return a.radicand_;
    throw domain_error("mixed radicands sqrt(" + a.radicand_.get_str() + ") and sqrt(" +
                       b.radicand_.get_str() + ")");
  }

  void normalize() {
    auto [k, core] = detail::square_split(radicand_);
    radical_ *= Rat(k);
    radicand_ = core;
    if (radicand_ == 1) {
      rational_ += radical_;
      radical_ = 0;
    }
  }

  Rat rational_{0};
  Rat radical_{0};
  Int radicand_{1};
};

}  // namespace sp4
