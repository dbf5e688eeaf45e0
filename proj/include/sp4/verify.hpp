#pragma once

#include <chrono>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "sp4/lattices.hpp"
#include "sp4/periods.hpp"
#include "sp4/polytopes.hpp"
#include "sp4/properties.hpp"

namespace sp4 {

struct ExpectedRow {
  Int m, a;
  std::vector<Rat> exponents;
  std::size_t lattice_count = 0;
  std::size_t mirror_count = 0;
  std::vector<Int> mirror_t;
};

namespace detail {

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) out.push_back(cur);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

inline std::size_t parse_count(const std::string& s, std::size_t line) {
  Rat q;
  try {
    q = parse_rat(s);
  } catch (const domain_error&) {
    throw parse_error(line, "bad count '" + s + "'");
  }
  if (!is_integer(q) || q < 0) throw parse_error(line, "bad count '" + s + "'");
  return q.get_num().get_ui();
}

}  // namespace detail

/// Tab-separated expected values; '#' lines and the header row are skipped.
inline std::vector<ExpectedRow> parse_expected_table(std::istream& in) {
  std::vector<ExpectedRow> rows;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#' || line.rfind("m\t", 0) == 0) continue;
    auto f = detail::split(line, '\t');
    if (f.size() != 6) throw parse_error(lineno, "expected 6 tab-separated fields");
    ExpectedRow r;
    try {
      r.m = to_int(parse_rat(f[0]));
      r.a = to_int(parse_rat(f[1]));
      for (const auto& e : detail::split(f[2], ',')) r.exponents.push_back(parse_rat(e));
      for (const auto& t : detail::split(f[5], ','))
        if (!t.empty()) r.mirror_t.push_back(to_int(parse_rat(t)));
    } catch (const domain_error& e) {
      throw parse_error(lineno, e.what());
    }
    r.lattice_count = detail::parse_count(f[3], lineno);
    r.mirror_count = detail::parse_count(f[4], lineno);
    rows.push_back(std::move(r));
  }
  return rows;
}

inline std::vector<ExpectedRow> load_expected_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return parse_expected_table(in);
}

struct RowComparison {
  Table1Row computed;
  std::optional<ExpectedRow> expected;
  bool exponents_match = false;
  bool count_match = false;
  bool mirror_match = false;
  bool match() const { return expected && exponents_match && count_match && mirror_match; }
};

inline std::vector<RowComparison> compare_table1(const std::vector<Table1Row>& computed,
                                                 const std::vector<ExpectedRow>& expected) {
  std::vector<RowComparison> out;
  for (const auto& row : computed) {
    RowComparison c{row, std::nullopt};
    for (const auto& e : expected)
      if (e.m == row.m && e.a == row.a) c.expected = e;
    if (c.expected) {
      c.exponents_match = c.expected->exponents == row.exponents;
      c.count_match = c.expected->lattice_count == row.lattice_count;
      c.mirror_match = c.expected->mirror_count == row.mirror_count && c.expected->mirror_t == row.mirror_t;
    }
    out.push_back(std::move(c));
  }
  return out;
}

struct CheckResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0;
};

struct VerifyConfig {
  std::string table_path;
  std::string fixtures_dir;
  std::size_t property_cases = 200;
};

namespace detail {

inline std::string pair_str(const Int& m, const Int& a) { return "(" + m.get_str() + "," + a.get_str() + ")"; }

inline std::string join_ints(const std::vector<Int>& v) {
  std::string s;
  for (const auto& x : v) s += (s.empty() ? "" : ",") + x.get_str();
  return "{" + s + "}";
}

template <class T>
std::set<std::vector<Rat>> vertex_set(const PolytopeT<T>& P) {
  std::set<std::vector<Rat>> s;
  for (const auto& v : P.vertices) s.insert(to_rat_vector(v));
  return s;
}

}  // namespace detail

/// Runs acceptance criteria 1-8; `on_result` sees each check as it finishes.
inline std::vector<CheckResult> run_acceptance(const VerifyConfig& cfg,
                                               const std::function<void(const CheckResult&)>& on_result = {}) {
  std::vector<CheckResult> results;
  auto timed = [&](int id, const std::string& name, const std::function<void(CheckResult&)>& body) {
    CheckResult r{id, name, false, {}, 0};
    auto t0 = std::chrono::steady_clock::now();
    try {
      body(r);
    } catch (const std::exception& e) {
      r.pass = false;
      r.detail = std::string("exception: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (on_result) on_result(r);
    results.push_back(r);
  };

  std::vector<ExpectedRow> expected;
  std::string table_error;
  try {
    expected = load_expected_table(cfg.table_path);
  } catch (const std::exception& e) {
    table_error = e.what();
  }
  std::vector<MonodromyClass> classes;
  std::vector<std::vector<LatticeClass>> lattices;
  std::vector<RowComparison> cmp;

  timed(1, "real-class enumeration", [&](CheckResult& r) {
    if (!table_error.empty()) throw std::runtime_error(table_error);
    classes = enumerate_real_classes();
    std::vector<std::string> bad;
    if (classes.size() != expected.size())
      bad.push_back(std::to_string(classes.size()) + " classes, expected " + std::to_string(expected.size()));
    for (const auto& e : expected) {
      bool found = false;
      for (const auto& c : classes)
        if (c.m() == e.m && c.a() == e.a) {
          found = true;
          if (exponents(c) != e.exponents) bad.push_back("exponents of " + detail::pair_str(e.m, e.a));
        }
      if (!found) bad.push_back("missing " + detail::pair_str(e.m, e.a));
    }
    r.pass = bad.empty();
    r.detail = std::to_string(classes.size()) + " classes";
    for (const auto& b : bad) r.detail += "; " + b;
  });

  auto ensure_lattices = [&] {
    if (classes.empty()) classes = enumerate_real_classes();
    if (lattices.empty()) {
      std::vector<Table1Row> rows;
      for (const auto& c : classes) {
        lattices.push_back(enumerate_lattices(c));
        rows.push_back(table1_row(c, lattices.back()));
      }
      cmp = compare_table1(rows, expected);
    }
  };

  timed(2, "lattice counts", [&](CheckResult& r) {
    if (!table_error.empty()) throw std::runtime_error(table_error);
    ensure_lattices();
    std::size_t total = 0, expected_total = 0;
    std::string mism;
    for (const auto& c : cmp) {
      total += c.computed.lattice_count;
      if (c.expected) expected_total += c.expected->lattice_count;
      if (!c.count_match)
        mism += " " + detail::pair_str(c.computed.m, c.computed.a) + ":" + std::to_string(c.computed.lattice_count) +
                "/" + (c.expected ? std::to_string(c.expected->lattice_count) : "?");
    }
    r.pass = mism.empty() && total == expected_total;
    r.detail = "total " + std::to_string(total) + " (expected " + std::to_string(expected_total) + ")";
    if (!mism.empty()) r.detail += "; computed/expected mismatches:" + mism;
  });

  timed(3, "mirror-consistent counts and t-values", [&](CheckResult& r) {
    if (!table_error.empty()) throw std::runtime_error(table_error);
    ensure_lattices();
    std::size_t total = 0, expected_total = 0;
    std::string mism;
    for (const auto& c : cmp) {
      total += c.computed.mirror_count;
      if (c.expected) expected_total += c.expected->mirror_count;
      if (!c.mirror_match)
        mism += " " + detail::pair_str(c.computed.m, c.computed.a) + ":" + detail::join_ints(c.computed.mirror_t) +
                "/" + (c.expected ? detail::join_ints(c.expected->mirror_t) : "?");
    }
    r.pass = mism.empty() && total == expected_total;
    r.detail = "total " + std::to_string(total) + " (expected " + std::to_string(expected_total) + ")";
    if (!mism.empty()) r.detail += "; computed/expected mismatches:" + mism;
  });

  timed(4, "invariant relation m = r^2 s t, t | a", [&](CheckResult& r) {
    ensure_lattices();
    std::size_t n = 0, rel_fail = 0, div_fail = 0, rst_fail = 0;
    std::string div_rows;
    for (std::size_t i = 0; i < classes.size(); ++i) {
      std::size_t row_div = 0;
      for (const auto& L : lattices[i]) {
        ++n;
        if (classes[i].m() != L.r * L.r * L.s * L.t) ++rel_fail;
        if (classes[i].a() % L.t != 0) ++row_div;
        auto rst = invariants_rst(L, classes[i]);
        if (!(rst == RstInvariants{L.r, L.s, L.t})) ++rst_fail;
      }
      if (row_div) div_rows += " " + detail::pair_str(classes[i].m(), classes[i].a()) + "x" + std::to_string(row_div);
      div_fail += row_div;
    }
    r.pass = rel_fail == 0 && div_fail == 0 && rst_fail == 0;
    r.detail = std::to_string(n) + " lattices; m != r^2st: " + std::to_string(rel_fail) +
               "; t does not divide a: " + std::to_string(div_fail) + "; recomputed (r,s,t) disagree: " +
               std::to_string(rst_fail);
    if (div_fail) r.detail += "; t-divisibility failures by class:" + div_rows;
  });

  timed(5, "Picard-Fuchs annihilation", [&](CheckResult& r) {
    if (classes.empty()) classes = enumerate_real_classes();
    std::size_t nonzero = 0;
    for (const auto& c : classes) {
      auto e = exponents(c);
      Exponents ex{e[0], e[1], e[2], e[3]};
      auto res = pf_residual(ex, hypergeom_series(ex, 26));
      if (res.order() != 25 || !res.is_zero()) ++nonzero;
    }
    Exponents q{make_rat(1, 5), make_rat(2, 5), make_rat(3, 5), make_rat(4, 5)};
    bool quintic = quintic_series(50) == hypergeom_series(q, 50);
    bool quintic_pf = pf_residual(q, quintic_series(26)).is_zero();
    r.pass = nonzero == 0 && quintic && quintic_pf && classes.size() == 14;
    r.detail = std::to_string(classes.size() - nonzero) + "/" + std::to_string(classes.size()) +
               " residuals zero to order 25; quintic series " + (quintic ? "equals" : "differs from") +
               " hypergeometric series to order 50";
  });

  timed(6, "two-parameter restriction", [&](CheckResult& r) {
    auto res = restriction_matches(8);
    r.pass = res.match && res.kappa == Rat(2985984);
    r.detail = std::string("match=") + (res.match ? "true" : "false") + " kappa=" + res.kappa.get_str();
  });

  timed(7, "polytope claims", [&](CheckResult& r) {
    auto load = [&](const std::string& name) {
      std::ifstream in(cfg.fixtures_dir + "/" + name);
      if (!in) throw std::runtime_error("cannot open fixture " + name);
      return parse_polytope(in);
    };
    auto quintic = load("quintic.poly"), quintic_polar = load("quintic-polar.poly");
    auto twin = load("quintic-twin.poly"), twin_polar = load("quintic-twin-polar.poly");
    auto ks = load("kreuzer-scheidegger-212.poly");
    std::vector<std::string> bad;
    if (detail::vertex_set(polar_dual(quintic)) != detail::vertex_set(quintic_polar)) bad.push_back("quintic polar");
    if (detail::vertex_set(polar_dual(quintic_polar)) != detail::vertex_set(quintic)) bad.push_back("quintic bidual");
    if (detail::vertex_set(polar_dual(twin)) != detail::vertex_set(twin_polar)) bad.push_back("twin polar");
    if (!is_reflexive(quintic)) bad.push_back("quintic not reflexive");
    if (!is_reflexive(twin)) bad.push_back("twin not reflexive");
    Int idx = points_span_index(twin);
    if (idx != 5) bad.push_back("twin index " + idx.get_str());
    if (!is_reflexive(ks)) bad.push_back("[2,12] polytope not reflexive");
    r.pass = bad.empty();
    r.detail = "twin span index " + idx.get_str();
    for (const auto& b : bad) r.detail += "; " + b;
  });

  timed(8, "property suites", [&](CheckResult& r) {
    auto props = props::run_all(cfg.property_cases);
    r.pass = true;
    for (const auto& p : props) {
      r.pass = r.pass && p.ok();
      r.detail += (r.detail.empty() ? "" : "; ") + p.name + " " + std::to_string(p.cases - p.failures) + "/" +
                  std::to_string(p.cases);
      if (!p.ok()) r.detail += " [" + p.first_failure + "]";
    }
  });

  return results;
}

inline std::string format_check(const CheckResult& r) {
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(3);
  os << (r.pass ? "PASS" : "FAIL") << " [" << r.id << "] " << r.name << " (" << r.seconds << " s): " << r.detail;
  return os.str();
}

}  // namespace sp4
