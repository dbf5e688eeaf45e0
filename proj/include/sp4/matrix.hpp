#pragma once

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "sp4/numeric.hpp"
#include "sp4/quad.hpp"

namespace sp4 {

namespace detail {
inline bool is_zero(const Int& x) { return x == 0; }
inline bool is_zero(const Rat& x) { return x == 0; }
inline bool is_zero(const QuadElem& x) { return x.is_zero(); }
inline std::string str(const Int& x) { return x.get_str(); }
inline std::string str(const Rat& x) { return x.get_str(); }
inline std::string str(const QuadElem& x) { return x.str(); }

// gmpxx expression templates collapse to their value type.
template <class U>
struct value_type_of {
  using type = U;
};
template <class T, class U>
struct value_type_of<__gmp_expr<T, U>> {
  using type = __gmp_expr<T, T>;
};
template <class U>
using value_type_of_t = typename value_type_of<std::decay_t<U>>::type;
}  // namespace detail

/// Small dense row-major matrix over an exact scalar type (Int, Rat or QuadElem).
/// Dimensions are fixed at construction.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}

  Matrix(std::initializer_list<std::initializer_list<T>> init) {
    rows_ = init.size();
    cols_ = rows_ ? init.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& row : init) {
      if (row.size() != cols_) throw dimension_error("ragged matrix initializer");
      data_.insert(data_.end(), row.begin(), row.end());
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  static Matrix from_columns(const std::vector<std::vector<T>>& columns) {
    if (columns.empty()) return {};
    Matrix m(columns.front().size(), columns.size());
    for (std::size_t j = 0; j < columns.size(); ++j) {
      if (columns[j].size() != m.rows_) throw dimension_error("ragged column list");
      for (std::size_t i = 0; i < m.rows_; ++i) m(i, j) = columns[j][i];
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::vector<T> column(std::size_t j) const {
    std::vector<T> c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
  }

  template <class F>
  auto map(F&& f) const -> Matrix<detail::value_type_of_t<decltype(f(std::declval<const T&>()))>> {
    Matrix<detail::value_type_of_t<decltype(f(std::declval<const T&>()))>> out(rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) out(i, j) = f((*this)(i, j));
    return out;
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  bool is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const T& x) { return detail::is_zero(x); });
  }

  friend Matrix operator+(const Matrix& a, const Matrix& b) {
    a.require_same_shape(b);
    Matrix c = a;
    for (std::size_t k = 0; k < c.data_.size(); ++k) c.data_[k] += b.data_[k];
    return c;
  }
  friend Matrix operator-(const Matrix& a, const Matrix& b) {
    a.require_same_shape(b);
    Matrix c = a;
    for (std::size_t k = 0; k < c.data_.size(); ++k) c.data_[k] -= b.data_[k];
    return c;
  }
  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw dimension_error("matrix product shape mismatch");
    Matrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        if (detail::is_zero(a(i, k))) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += a(i, k) * b(k, j);
      }
    return c;
  }
  friend Matrix operator*(const T& s, Matrix m) {
    for (auto& x : m.data_) x = s * x;
    return m;
  }
  friend std::vector<T> operator*(const Matrix& a, const std::vector<T>& v) {
    if (a.cols_ != v.size()) throw dimension_error("matrix-vector shape mismatch");
    std::vector<T> out(a.rows_, T(0));
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t j = 0; j < a.cols_; ++j) out[i] += a(i, j) * v[j];
    return out;
  }
  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  Matrix pow(unsigned k) const {
    require_square("pow");
    Matrix r = identity(rows_), base = *this;
    while (k) {
      if (k & 1U) r = r * base;
      base = base * base;
      k >>= 1U;
    }
    return r;
  }

  /// Fraction-free (Bareiss) elimination; exact for Int as well as for fields.
  T determinant() const {
    require_square("determinant");
    const std::size_t n = rows_;
    if (n == 0) return T(1);
    Matrix a = *this;
    T prev(1);
    bool negate = false;
    for (std::size_t k = 0; k + 1 < n; ++k) {
      if (detail::is_zero(a(k, k))) {
        std::size_t p = k + 1;
        while (p < n && detail::is_zero(a(p, k))) ++p;
        if (p == n) return T(0);
        a.swap_rows(k, p);
        negate = !negate;
      }
      for (std::size_t i = k + 1; i < n; ++i)
        for (std::size_t j = k + 1; j < n; ++j) {
          T v = a(i, j) * a(k, k) - a(i, k) * a(k, j);
          a(i, j) = exact_div(v, prev);
        }
      prev = a(k, k);
    }
    T d = a(n - 1, n - 1);
    return negate ? T(0) - d : d;
  }

  /// Row-echelon rank over the fraction field.
  std::size_t rank() const {
    Matrix a = *this;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols_ && r < rows_; ++c) {
      std::size_t p = r;
      while (p < rows_ && detail::is_zero(a(p, c))) ++p;
      if (p == rows_) continue;
      a.swap_rows(r, p);
      for (std::size_t i = r + 1; i < rows_; ++i) {
        if (detail::is_zero(a(i, c))) continue;
        T f = a(i, c);
        T piv = a(r, c);
        for (std::size_t j = c; j < cols_; ++j) a(i, j) = a(i, j) * piv - a(r, j) * f;
      }
      ++r;
    }
    return r;
  }

  /// Gauss-Jordan inverse; T must be a field.
  Matrix inverse() const {
    require_square("inverse");
    const std::size_t n = rows_;
    Matrix a = *this, inv = identity(n);
    for (std::size_t c = 0; c < n; ++c) {
      std::size_t p = c;
      while (p < n && detail::is_zero(a(p, c))) ++p;
      if (p == n) throw rank_error("matrix is singular");
      a.swap_rows(c, p);
      inv.swap_rows(c, p);
      T piv = a(c, c);
      for (std::size_t j = 0; j < n; ++j) {
        a(c, j) /= piv;
        inv(c, j) /= piv;
      }
      for (std::size_t i = 0; i < n; ++i) {
        if (i == c || detail::is_zero(a(i, c))) continue;
        T f = a(i, c);
        for (std::size_t j = 0; j < n; ++j) {
          a(i, j) -= f * a(c, j);
          inv(i, j) -= f * inv(c, j);
        }
      }
    }
    return inv;
  }

  /// Basis of the right kernel {x : M x = 0}; T must be a field.
  std::vector<std::vector<T>> nullspace() const {
    Matrix a = *this;
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols_ && r < rows_; ++c) {
      std::size_t p = r;
      while (p < rows_ && detail::is_zero(a(p, c))) ++p;
      if (p == rows_) continue;
      a.swap_rows(r, p);
      T piv = a(r, c);
      for (std::size_t j = 0; j < cols_; ++j) a(r, j) /= piv;
      for (std::size_t i = 0; i < rows_; ++i) {
        if (i == r || detail::is_zero(a(i, c))) continue;
        T f = a(i, c);
        for (std::size_t j = 0; j < cols_; ++j) a(i, j) -= f * a(r, j);
      }
      pivots.push_back(c);
      ++r;
    }
    std::vector<std::vector<T>> basis;
    for (std::size_t free = 0; free < cols_; ++free) {
      if (std::find(pivots.begin(), pivots.end(), free) != pivots.end()) continue;
      std::vector<T> x(cols_, T(0));
      x[free] = T(1);
      for (std::size_t k = 0; k < pivots.size(); ++k) x[pivots[k]] = T(0) - a(k, free);
      basis.push_back(std::move(x));
    }
    return basis;
  }

  friend std::ostream& operator<<(std::ostream& os, const Matrix& m) {
    os << '[';
    for (std::size_t i = 0; i < m.rows_; ++i) {
      os << (i ? "; " : "");
      for (std::size_t j = 0; j < m.cols_; ++j) os << (j ? " " : "") << detail::str(m(i, j));
    }
    return os << ']';
  }

 private:
  static T exact_div(const T& a, const T& b) {
    if constexpr (std::is_same_v<T, Int>) {
      Int q;
      mpz_divexact(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
      return q;
    } else {
      return a / b;
    }
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }
  void require_square(const char* what) const {
    if (!square()) throw dimension_error(std::string(what) + " needs a square matrix");
  }
  void require_same_shape(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw dimension_error("matrix shape mismatch");
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using IntMatrix = Matrix<Int>;
using RatMatrix = Matrix<Rat>;
using ExactMatrix = Matrix<QuadElem>;

inline RatMatrix to_rat(const IntMatrix& m) {
  return m.map([](const Int& x) { return Rat(x); });
}

inline ExactMatrix to_exact(const RatMatrix& m) {
  return m.map([](const Rat& x) { return QuadElem(x); });
}

/// Rational view of an ExactMatrix whose radical parts all vanish.
inline RatMatrix to_rat(const ExactMatrix& m) {
  return m.map([](const QuadElem& x) { return x.to_rational(); });
}

inline bool is_integral(const RatMatrix& m) {
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (!is_integer(m(i, j))) return false;
  return true;
}

inline IntMatrix to_int(const RatMatrix& m) {
  return m.map([](const Rat& x) { return to_int(x); });
}

/// gcd of all entries (0 for the zero matrix).
inline Int content(const IntMatrix& m) {
  Int g = 0;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) g = gcd(g, m(i, j));
  return g;
}

}  // namespace sp4
