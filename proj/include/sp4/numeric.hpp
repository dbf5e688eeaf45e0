#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace sp4 {

using Int = mpz_class;
using Rat = mpq_class;

// Error taxonomy shared by every module. The CLI maps these onto exit codes.
struct dimension_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct domain_error : std::domain_error {
  using std::domain_error::domain_error;
};
struct rank_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct precondition_error : std::logic_error {
  using std::logic_error::logic_error;
};

inline Rat make_rat(const Int& num, const Int& den) {
  if (den == 0) throw domain_error("zero denominator");
  Rat q(num, den);
  q.canonicalize();
  return q;
}

inline Rat make_rat(long num, long den = 1) { return make_rat(Int(num), Int(den)); }

inline bool is_integer(const Rat& q) { return q.get_den() == 1; }

inline Int to_int(const Rat& q) {
  if (!is_integer(q)) throw domain_error("rational " + q.get_str() + " is not an integer");
  return q.get_num();
}

inline std::int64_t to_i64(const Int& z) {
  if (!z.fits_slong_p()) throw domain_error("integer " + z.get_str() + " out of 64-bit range");
  return z.get_si();
}

// "p/q" or "p"; whitespace is not accepted.
inline Rat parse_rat(std::string_view text) {
  auto parse_int = [&](std::string_view s) {
    if (s.empty()) throw domain_error("empty integer in '" + std::string(text) + "'");
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) throw domain_error("malformed integer in '" + std::string(text) + "'");
    for (std::size_t k = i; k < s.size(); ++k)
      if (s[k] < '0' || s[k] > '9')
        throw domain_error("malformed integer in '" + std::string(text) + "'");
    return Int(std::string(s[0] == '+' ? s.substr(1) : s));
  };
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rat(parse_int(text));
  return make_rat(parse_int(text.substr(0, slash)), parse_int(text.substr(slash + 1)));
}

inline std::string to_string(const Rat& q) { return q.get_str(); }
inline std::string to_string(const Int& z) { return z.get_str(); }

inline Int gcd(const Int& a, const Int& b) {
  Int g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

inline Int lcm(const Int& a, const Int& b) {
  Int l;
  mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return l;
}

inline Int factorial(unsigned long n) {
  Int f;
  mpz_fac_ui(f.get_mpz_t(), n);
  return f;
}

inline Int pow(const Int& base, unsigned long e) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

inline Rat pow(const Rat& base, unsigned long e) {
  return Rat(pow(Int(base.get_num()), e), pow(Int(base.get_den()), e));
}

inline bool is_perfect_square(const Int& n) {
  return n >= 0 && mpz_perfect_square_p(n.get_mpz_t()) != 0;
}

inline Int isqrt(const Int& n) {
  Int r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

}  // namespace sp4
