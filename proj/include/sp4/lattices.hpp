#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

#include "sp4/hnf.hpp"
#include "sp4/monodromy.hpp"

namespace sp4 {

/// W0 < W2 < W4 < W6 as rational bases, W_{2i} = Ker N0^{i+1}.
struct WeightFiltration {
  std::array<std::vector<std::vector<Rat>>, 4> W;
};

inline WeightFiltration weight_filtration(const RatMatrix& N0) {
  if (N0.rows() != 4 || !N0.square()) throw dimension_error("weight filtration needs a 4x4 N0");
  if (!N0.pow(4).is_zero()) throw precondition_error("N0 is not nilpotent");
  if (N0.pow(3).is_zero()) throw precondition_error("N0 is not maximal: N0^3 = 0");
  WeightFiltration f;
  for (unsigned i = 0; i < 4; ++i) f.W[i] = N0.pow(i + 1).nullspace();
  return f;
}

/// True iff every vector lies in the rational span of `space`.
inline bool in_span(const std::vector<std::vector<Rat>>& vectors, const std::vector<std::vector<Rat>>& space) {
  if (space.empty()) {
    for (const auto& v : vectors)
      for (const auto& x : v)
        if (x != 0) return false;
    return true;
  }
  auto base = RatMatrix::from_columns(space);
  auto both = space;
  both.insert(both.end(), vectors.begin(), vectors.end());
  return RatMatrix::from_columns(both).rank() == base.rank();
}

struct LatticeParams {
  Int alpha, beta, gamma, delta, mu;
  friend bool operator==(const LatticeParams&, const LatticeParams&) = default;
};

struct LatticeClass {
  RepInvariants real_class;
  Int r, s, t;
  LatticeParams params;
  ExactMatrix basis;       // columns l1..l4 in e-coordinates
  RatMatrix scaled_basis;  // sqrt(t) * basis, rational
  RatMatrix canonical;     // column HNF of scaled_basis
  IntMatrix gram_adapted;
  IntMatrix T0_adapted, T1_adapted;
};

namespace detail {

// Columns sqrt(t) l1 .. sqrt(t) l4 in e-coordinates.
inline RatMatrix scaled_adapted_basis(const Int& r, const Int& t, const LatticeParams& p) {
  const Int rt = r * t;
  RatMatrix c(4, 4);
  c(0, 0) = 1;
  c(1, 0) = make_rat(p.alpha, rt);
  c(2, 0) = p.beta;
  c(3, 0) = make_rat(p.gamma, rt);
  c(1, 1) = make_rat(Int(1), r);
  c(2, 1) = p.delta;
  c(3, 1) = make_rat(p.mu, r);
  c(2, 2) = rt;
  c(3, 2) = p.alpha;
  c(3, 3) = t;
  return c;
}

inline std::optional<IntMatrix> integral(const RatMatrix& m) {
  if (!is_integral(m)) return std::nullopt;
  return to_int(m);
}

inline bool adapted_shape(const IntMatrix& g) {
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j)
      if (i + j > 3 && g(i, j) != 0) return false;
  return g(0, 3) == -1 && g(1, 2) == 1 && g(3, 0) == 1 && g(2, 1) == -1;
}

inline bool rat_less(const RatMatrix& x, const RatMatrix& y) {
  for (std::size_t i = 0; i < x.rows(); ++i)
    for (std::size_t j = 0; j < x.cols(); ++j)
      if (x(i, j) != y(i, j)) return x(i, j) < y(i, j);
  return false;
}

}  // namespace detail

/// The lattice spanned by the basis matrix columns with its adapted data; nullopt
/// when T0, T1 or the form fail to be integral/unimodular in that basis.
inline std::optional<LatticeClass> build_candidate(const MonodromyClass& cls, const Int& r, const Int& s,
                                                   const Int& t, const LatticeParams& p,
                                                   bool require_t_divides_a = false) {
  if (r <= 0 || s <= 0 || t <= 0) throw precondition_error("r, s, t must be positive");
  if (cls.m() != r * r * s * t)
    throw precondition_error("m = " + cls.m().get_str() + " is not r^2 s t");
  if (require_t_divides_a && cls.a() % t != 0)
    throw precondition_error("t = " + t.get_str() + " does not divide a = " + cls.a().get_str());

  RatMatrix c = detail::scaled_adapted_basis(r, t, p);
  RatMatrix cinv = c.inverse();
  auto t0 = detail::integral(cinv * cls.T0 * c);
  if (!t0) return std::nullopt;
  auto t1 = detail::integral(cinv * cls.T1 * c);
  if (!t1) return std::nullopt;
  auto g = detail::integral((c.transpose() * cls.gram * c).map([&](const Rat& x) -> Rat { return x / Rat(t); }));
  if (!g || g->determinant() != 1 || !detail::adapted_shape(*g)) return std::nullopt;

  LatticeClass L;
  L.real_class = cls.invariants;
  L.r = r;
  L.s = s;
  L.t = t;
  L.params = p;
  QuadElem inv_sqrt_t = QuadElem(Rat(1)) / QuadElem::sqrt_of(t);
  L.basis = c.map([&](const Rat& x) { return QuadElem(x) * inv_sqrt_t; });
  L.scaled_basis = c;
  L.canonical = column_hnf(c);
  L.gram_adapted = *g;
  L.T0_adapted = *t0;
  L.T1_adapted = *t1;
  return L;
}

/// L0 = Z e1 + ... + Z e4.
inline LatticeClass standard_lattice(const MonodromyClass& cls) {
  if (cls.invariants.b != 1) throw no_symplectic_form_error("no lattice without a symplectic form (b != 1)");
  auto L = build_candidate(cls, 1, cls.m(), 1, {0, 0, 0, 0, 0});
  if (!L) throw std::logic_error("standard lattice rejected");
  return *L;
}

struct RstInvariants {
  Int r, s, t;
  friend bool operator==(const RstInvariants&, const RstInvariants&) = default;
};

/// Divisibilities of N0: W6/W4 -> W4/W2, N0: W4/W2 -> W2/W0 and N1: W0 -> W6/W4 on
/// the lattice, read from its canonical basis (whose columns are adapted to the
/// filtration because the HNF is lower triangular).
inline RstInvariants invariants_rst(const LatticeClass& L, const MonodromyClass& cls) {
  const RatMatrix& b = L.canonical;
  RatMatrix binv = b.inverse();
  RatMatrix id = RatMatrix::identity(4);
  RatMatrix n0 = binv * (cls.T0 - id) * b;
  RatMatrix n1 = binv * (cls.T1 - id) * b;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = i + 1; j < 4; ++j)
      if (b(i, j) != 0) throw std::logic_error("canonical basis not adapted to the weight filtration");
  RstInvariants out{to_int(abs(n0(1, 0))), to_int(abs(n0(2, 1))), to_int(abs(n1(0, 3)))};
  if (out.r == 0 || out.s == 0 || out.t == 0) throw std::logic_error("degenerate weight filtration on lattice");
  return out;
}

/// Largest k with N1(L) in kL.
inline Int n1_content(const LatticeClass& L) {
  IntMatrix n1 = L.T1_adapted - IntMatrix::identity(4);
  return content(n1);
}

inline bool mirror_consistent(const LatticeClass& L) { return L.r == 1 && n1_content(L) == L.t; }

inline std::string canonical_string(const LatticeClass& L) {
  std::ostringstream os;
  os << L.canonical;
  return os.str();
}

/// 64-bit FNV-1a of the canonical form, hex.
inline std::string canonical_hash(const LatticeClass& L) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char ch : canonical_string(L)) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  static const char* digits = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i, h >>= 4) out[static_cast<std::size_t>(i)] = digits[h & 15U];
  return out;
}

struct EnumerationOptions {
  // Residue box side = multiplier times the exact period of each parameter.
  unsigned box_multiplier = 1;
  bool require_t_divides_a = false;
  // Necessary congruences on the parameters; disabling them only costs time.
  bool prefilters = true;
  // 0: SP4_THREADS or hardware concurrency.
  unsigned threads = 0;
};

inline unsigned thread_count(unsigned requested) {
  if (requested) return requested;
  if (const char* env = std::getenv("SP4_THREADS")) {
    long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<unsigned>(v);
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw ? hw : 1;
}

/// (r, s, t) with m = r^2 s t, all positive.
inline std::vector<std::array<Int, 3>> rst_factorizations(const Int& m, const Int& a, bool require_t_divides_a) {
  std::vector<std::array<Int, 3>> out;
  for (Int r = 1; r * r <= m; ++r) {
    if (m % (r * r) != 0) continue;
    Int rest = m / (r * r);
    for (Int s = 1; s <= rest; ++s) {
      if (rest % s != 0) continue;
      Int t = rest / s;
      if (require_t_divides_a && a % t != 0) continue;
      out.push_back({r, s, t});
    }
  }
  return out;
}

inline bool divides(const Int& d, const Int& x) {
  Int rem;
  mpz_fdiv_r(rem.get_mpz_t(), x.get_mpz_t(), d.get_mpz_t());
  return rem == 0;
}

/// Every invariant unimodular lattice of the class, one per distinct lattice,
/// sorted by (t, r, s, canonical). Parameters range over alpha in [0,t),
/// delta, mu, beta in [0,rt) and gamma in [0,rt^2) (times box_multiplier); each
/// lattice has exactly one representative in the unscaled box.
inline std::vector<LatticeClass> enumerate_lattices(const MonodromyClass& cls, const EnumerationOptions& opt = {}) {
  const Int& m = cls.m();
  const Int& a = cls.a();
  const Int k = opt.box_multiplier ? opt.box_multiplier : 1;
  auto facts = rst_factorizations(m, a, opt.require_t_divides_a);

  struct Job {
    Int r, s, t, alpha;
  };
  std::vector<Job> jobs;
  for (const auto& [r, s, t] : facts)
    for (Int al = 0; al < k * t; ++al) {
      if (opt.prefilters && !divides(t, al * (al + r * t))) continue;
      jobs.push_back({r, s, t, al});
    }

  std::map<std::pair<Int, std::string>, LatticeClass> found;
  std::mutex mu_found;
  auto run = [&](const Job& j) {
    const Int rt = j.r * j.t;
    std::vector<LatticeClass> local;
    for (Int de = 0; de < k * rt; ++de) {
      if (opt.prefilters && !divides(j.t, j.alpha * j.s - de)) continue;
      for (Int mu = 0; mu < k * rt; ++mu) {
        if (opt.prefilters && !divides(j.r, a + de * j.r + mu)) continue;
        for (Int be = 0; be < k * rt; ++be) {
          if (opt.prefilters &&
              !divides(j.t * j.t, -j.alpha * j.alpha * j.s + j.alpha * de + be * j.t - mu * j.t))
            continue;
          for (Int ga = 0; ga < k * rt * j.t; ++ga) {
            if (opt.prefilters && !divides(rt, ga + a * j.alpha)) continue;
            auto L = build_candidate(cls, j.r, j.s, j.t, {j.alpha, be, ga, de, mu});
            if (L) local.push_back(std::move(*L));
          }
        }
      }
    }
    std::lock_guard<std::mutex> lock(mu_found);
    for (auto& L : local) {
      auto key = std::make_pair(L.t, canonical_string(L));
      found.emplace(std::move(key), std::move(L));
    }
  };

  unsigned nthreads = std::min<std::size_t>(thread_count(opt.threads), std::max<std::size_t>(jobs.size(), 1));
  if (nthreads <= 1) {
    for (const auto& j : jobs) run(j);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < nthreads; ++w)
      pool.emplace_back([&, w] {
        for (std::size_t i = w; i < jobs.size(); i += nthreads) run(jobs[i]);
      });
    for (auto& th : pool) th.join();
  }

  std::vector<LatticeClass> out;
  for (auto& [key, L] : found) out.push_back(std::move(L));
  std::sort(out.begin(), out.end(), [](const LatticeClass& x, const LatticeClass& y) {
    if (x.t != y.t) return x.t < y.t;
    if (x.r != y.r) return x.r < y.r;
    if (x.s != y.s) return x.s < y.s;
    return detail::rat_less(x.canonical, y.canonical);
  });
  return out;
}

struct Table1Row {
  Int m, a;
  std::vector<Rat> exponents;
  std::size_t lattice_count = 0;
  std::size_t mirror_count = 0;
  std::vector<Int> mirror_t;  // ascending
};

inline Table1Row table1_row(const MonodromyClass& cls, const std::vector<LatticeClass>& lattices) {
  Table1Row row{cls.m(), cls.a(), exponents(cls), lattices.size(), 0, {}};
  for (const auto& L : lattices)
    if (mirror_consistent(L)) {
      ++row.mirror_count;
      row.mirror_t.push_back(L.t);
    }
  std::sort(row.mirror_t.begin(), row.mirror_t.end());
  return row;
}

inline std::vector<Table1Row> table1(const std::vector<MonodromyClass>& classes, const EnumerationOptions& opt = {}) {
  std::vector<Table1Row> rows;
  for (const auto& c : classes) rows.push_back(table1_row(c, enumerate_lattices(c, opt)));
  return rows;
}

}  // namespace sp4
