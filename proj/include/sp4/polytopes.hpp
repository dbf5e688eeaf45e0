#pragma once

#include <algorithm>
#include <cstddef>
#include <istream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "sp4/hnf.hpp"
#include "sp4/matrix.hpp"

namespace sp4 {

struct polarity_error : domain_error {
  using domain_error::domain_error;
};

struct parse_error : std::runtime_error {
  parse_error(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line(line) {}
  std::size_t line;
};

template <class T>
struct PolytopeT {
  std::size_t dim = 0;
  std::vector<std::vector<T>> vertices;
  // Optional bracket metadata: part name -> 1-based vertex indices.
  std::map<std::string, std::vector<std::size_t>> parts;
};

using LatticePolytope = PolytopeT<Int>;
using RationalPolytope = PolytopeT<Rat>;

/// {x : <normal, x> >= -offset}, normal primitive.
struct Facet {
  std::vector<Int> normal;
  Rat offset;
  friend bool operator==(const Facet&, const Facet&) = default;
};

namespace detail {

inline std::vector<Rat> to_rat_vector(const std::vector<Int>& v) { return {v.begin(), v.end()}; }
inline std::vector<Rat> to_rat_vector(const std::vector<Rat>& v) { return v; }

inline Rat dot(const std::vector<Int>& u, const std::vector<Rat>& x) {
  Rat s = 0;
  for (std::size_t i = 0; i < u.size(); ++i) s += Rat(u[i]) * x[i];
  return s;
}

// Clear denominators and divide by the content.
inline std::vector<Int> primitive(const std::vector<Rat>& v) {
  Int den = 1;
  for (const auto& x : v) den = lcm(den, Int(x.get_den()));
  std::vector<Int> out;
  Int g = 0;
  for (const auto& x : v) {
    out.push_back(to_int(x * Rat(den)));
    g = gcd(g, out.back());
  }
  if (g != 0)
    for (auto& x : out) x /= g;
  return out;
}

template <class F>
void for_each_subset(std::size_t n, std::size_t k, F&& f) {
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  if (k > n) return;
  while (true) {
    f(idx);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace detail

template <class T>
std::size_t affine_rank(const PolytopeT<T>& P) {
  if (P.vertices.empty()) return 0;
  std::vector<std::vector<Rat>> diffs;
  auto v0 = detail::to_rat_vector(P.vertices[0]);
  for (std::size_t i = 1; i < P.vertices.size(); ++i) {
    auto v = detail::to_rat_vector(P.vertices[i]);
    for (std::size_t j = 0; j < P.dim; ++j) v[j] -= v0[j];
    diffs.push_back(v);
  }
  if (diffs.empty()) return 0;
  return RatMatrix::from_columns(diffs).rank();
}

/// Facets by exhaustive search over dim-subsets of vertices; sorted by normal.
template <class T>
std::vector<Facet> facets(const PolytopeT<T>& P) {
  const std::size_t n = P.dim;
  if (n == 0 || affine_rank(P) < n) throw dimension_error("polytope is not full-dimensional");
  std::vector<std::vector<Rat>> verts;
  for (const auto& v : P.vertices) verts.push_back(detail::to_rat_vector(v));
  std::set<std::vector<Int>> seen;
  std::vector<Facet> out;
  detail::for_each_subset(verts.size(), n, [&](const std::vector<std::size_t>& idx) {
    RatMatrix rows(n - 1, n);
    for (std::size_t i = 1; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) rows(i - 1, j) = verts[idx[i]][j] - verts[idx[0]][j];
    auto kernel = rows.nullspace();
    if (kernel.size() != 1) return;
    auto u = detail::primitive(kernel.front());
    Rat h = detail::dot(u, verts[idx[0]]);
    bool above = true, below = true;
    for (const auto& v : verts) {
      Rat x = detail::dot(u, v);
      if (x < h) above = false;
      if (x > h) below = false;
    }
    if (!above && !below) return;
    if (!above) {
      for (auto& x : u) x = -x;
      h = -h;
    }
    if (!seen.insert(u).second) return;
    out.push_back({u, -h});
  });
  std::sort(out.begin(), out.end(), [](const Facet& a, const Facet& b) { return a.normal < b.normal; });
  return out;
}

template <class T>
RationalPolytope polar_dual(const PolytopeT<T>& P) {
  RationalPolytope Q;
  Q.dim = P.dim;
  for (const auto& f : facets(P)) {
    if (f.offset <= 0) throw polarity_error("origin is not an interior point");
    std::vector<Rat> v;
    for (const auto& x : f.normal) v.push_back(Rat(x) / f.offset);
    Q.vertices.push_back(std::move(v));
  }
  std::sort(Q.vertices.begin(), Q.vertices.end());
  return Q;
}

inline bool is_integral(const std::vector<Rat>& v) {
  return std::all_of(v.begin(), v.end(), [](const Rat& x) { return is_integer(x); });
}

template <class T>
bool is_reflexive(const PolytopeT<T>& P) {
  for (const auto& v : P.vertices)
    if (!is_integral(detail::to_rat_vector(v))) return false;
  for (const auto& v : polar_dual(P).vertices)
    if (!is_integral(v)) return false;
  return true;
}

/// Rational polytope with integral vertices as a lattice polytope.
inline LatticePolytope to_lattice(const RationalPolytope& P) {
  LatticePolytope Q;
  Q.dim = P.dim;
  for (const auto& v : P.vertices) {
    std::vector<Int> w;
    for (const auto& x : v) w.push_back(to_int(x));
    Q.vertices.push_back(std::move(w));
  }
  return Q;
}

/// All integer points of P, lexicographic.
inline std::vector<std::vector<Int>> lattice_points(const LatticePolytope& P) {
  auto fs = facets(P);
  std::vector<Int> lo(P.dim), hi(P.dim);
  for (std::size_t j = 0; j < P.dim; ++j) {
    lo[j] = hi[j] = P.vertices[0][j];
    for (const auto& v : P.vertices) {
      lo[j] = std::min(lo[j], v[j]);
      hi[j] = std::max(hi[j], v[j]);
    }
  }
  std::vector<std::vector<Int>> out;
  std::vector<Int> x = lo;
  while (true) {
    bool inside = true;
    for (const auto& f : fs) {
      Int s = 0;
      for (std::size_t j = 0; j < P.dim; ++j) s += f.normal[j] * x[j];
      if (Rat(s) < -f.offset) {
        inside = false;
        break;
      }
    }
    if (inside) out.push_back(x);
    std::size_t j = P.dim;
    while (j > 0) {
      --j;
      if (x[j] < hi[j]) {
        ++x[j];
        break;
      }
      x[j] = lo[j];
      if (j == 0) return out;
    }
    if (P.dim == 0) return out;
  }
}

inline Int points_span_index(const LatticePolytope& P) {
  auto idx = span_index(lattice_points(P), P.dim);
  if (!idx) throw rank_error("lattice points span a sublattice of infinite index");
  return *idx;
}

/// "dim n", then one vertex per line, optional "part NAME: i,j,..." lines
/// (1-based vertex indices). Blank lines and '#' comments are skipped.
inline LatticePolytope parse_polytope(std::istream& in) {
  LatticePolytope P;
  bool have_dim = false;
  std::string line;
  std::size_t lineno = 0;
  std::vector<std::pair<std::size_t, std::string>> part_lines;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first)) continue;
    if (!have_dim) {
      long n = 0;
      std::string extra;
      if (first != "dim" || !(ls >> n) || n <= 0 || (ls >> extra)) throw parse_error(lineno, "expected 'dim n'");
      P.dim = static_cast<std::size_t>(n);
      have_dim = true;
      continue;
    }
    if (first == "part") {
      part_lines.emplace_back(lineno, line);
      continue;
    }
    std::istringstream vs(line);
    std::vector<Int> v;
    std::string tok;
    while (vs >> tok) {
      try {
        Rat q = parse_rat(tok);
        if (!is_integer(q) || tok.find('/') != std::string::npos) throw domain_error("");
        v.push_back(q.get_num());
      } catch (const domain_error&) {
        throw parse_error(lineno, "bad integer '" + tok + "'");
      }
    }
    if (v.size() != P.dim)
      throw parse_error(lineno, "expected " + std::to_string(P.dim) + " coordinates, got " + std::to_string(v.size()));
    if (std::find(P.vertices.begin(), P.vertices.end(), v) != P.vertices.end())
      throw parse_error(lineno, "duplicate vertex");
    P.vertices.push_back(std::move(v));
  }
  if (!have_dim) throw parse_error(lineno, "missing 'dim n' header");
  for (const auto& [ln, text] : part_lines) {
    auto colon = text.find(':');
    std::istringstream head(text.substr(0, colon));
    std::string kw, name, extra;
    head >> kw >> name;
    if (colon == std::string::npos || name.empty() || (head >> extra)) throw parse_error(ln, "expected 'part NAME: i,j,...'");
    std::vector<std::size_t> idx;
    std::string rest = text.substr(colon + 1);
    std::replace(rest.begin(), rest.end(), ',', ' ');
    std::istringstream is(rest);
    std::string tok;
    while (is >> tok) {
      std::size_t pos = 0;
      unsigned long k = 0;
      try {
        k = std::stoul(tok, &pos);
      } catch (const std::exception&) {
        pos = 0;
      }
      if (pos != tok.size() || k == 0 || k > P.vertices.size())
        throw parse_error(ln, "bad vertex index '" + tok + "'");
      idx.push_back(k);
    }
    if (idx.empty()) throw parse_error(ln, "empty part");
    P.parts[name] = idx;
  }
  return P;
}

inline LatticePolytope parse_polytope(const std::string& text) {
  std::istringstream in(text);
  return parse_polytope(in);
}

}  // namespace sp4
