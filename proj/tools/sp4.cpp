// sp4: classification of integral symplectic monodromy, period series and
// polytope checks from the command line.

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "sp4/lattices.hpp"
#include "sp4/periods.hpp"
#include "sp4/polytopes.hpp"
#include "sp4/verify.hpp"

#ifndef SP4_DATA_DIR
#define SP4_DATA_DIR "data"
#endif
#ifndef SP4_FIXTURES_DIR
#define SP4_FIXTURES_DIR "fixtures"
#endif

namespace {

using json = nlohmann::json;
using namespace sp4;

enum Exit { kOk = 0, kFail = 1, kUsage = 2, kDomain = 3 };

struct usage_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

json rat_json(const Rat& q) { return json{{"num", q.get_num().get_str()}, {"den", q.get_den().get_str()}}; }

json rats_json(const std::vector<Rat>& v) {
  json a = json::array();
  for (const auto& q : v) a.push_back(rat_json(q));
  return a;
}

json ints_json(const std::vector<Int>& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(x.get_str());
  return a;
}

std::string join(const std::vector<std::string>& v, const char* sep = ",") {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? sep : "") + v[i];
  return s;
}

template <class T>
std::string join_str(const std::vector<T>& v) {
  std::vector<std::string> s;
  for (const auto& x : v) s.push_back(x.get_str());
  return join(s);
}

/// Rows of named string fields, printed as TSV or as a JSON document.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  void print_tsv(std::ostream& os) const {
    os << join(columns, "\t") << '\n';
    for (const auto& r : rows) os << join(r, "\t") << '\n';
  }
};

void emit_json(std::ostream& os, const std::string& command, json payload) {
  payload["command"] = command;
  os << payload.dump(2) << '\n';
}

struct Options {
  std::string format = "tsv";
  bool json() const { return format == "json"; }
};

// classify

int cmd_classify(const Options& o) {
  auto classes = enumerate_real_classes();
  if (o.json()) {
    json rows = json::array();
    for (const auto& c : classes)
      rows.push_back({{"m", c.m().get_str()},
                      {"a", c.a().get_str()},
                      {"exponents", rats_json(exponents(c))},
                      {"cyclotomic", *c.cyclotomic_indices},
                      {"char_poly", c.char_poly_Tinf_inv.str()}});
    emit_json(std::cout, "classify", {{"rows", rows}});
    return kOk;
  }
  Table t{{"m", "a", "exponents", "cyclotomic", "char_poly"}, {}};
  for (const auto& c : classes) {
    std::vector<std::string> cyc;
    for (int n : *c.cyclotomic_indices) cyc.push_back(std::to_string(n));
    t.rows.push_back({c.m().get_str(), c.a().get_str(), join_str(exponents(c)), join(cyc), c.char_poly_Tinf_inv.str()});
  }
  t.print_tsv(std::cout);
  return kOk;
}

// lattices

MonodromyClass require_class(long m, long a) {
  auto classes = enumerate_real_classes();
  for (const auto& c : classes)
    if (c.m() == m && c.a() == a) return c;
  std::vector<std::string> valid;
  for (const auto& c : classes) valid.push_back("(" + c.m().get_str() + "," + c.a().get_str() + ")");
  throw usage_error("(m,a) = (" + std::to_string(m) + "," + std::to_string(a) +
                    ") is not a real class; valid pairs: " + join(valid, " "));
}

int cmd_lattices(const Options& o, long m, long a, bool mirror_only, const EnumerationOptions& eo) {
  auto cls = require_class(m, a);
  auto lattices = enumerate_lattices(cls, eo);
  json rows = json::array();
  Table t{{"t", "r", "s", "alpha", "beta", "gamma", "delta", "mu", "n1_content", "mirror_consistent", "hash"}, {}};
  for (const auto& L : lattices) {
    bool mc = mirror_consistent(L);
    if (mirror_only && !mc) continue;
    const auto& p = L.params;
    std::vector<std::string> row{L.t.get_str(),     L.r.get_str(),     L.s.get_str(),     p.alpha.get_str(),
                                 p.beta.get_str(),  p.gamma.get_str(), p.delta.get_str(), p.mu.get_str(),
                                 n1_content(L).get_str(), mc ? "true" : "false", canonical_hash(L)};
    t.rows.push_back(row);
    json j;
    for (std::size_t i = 0; i < t.columns.size(); ++i) j[t.columns[i]] = row[i];
    j["mirror_consistent"] = mc;
    j["canonical"] = canonical_string(L);
    rows.push_back(j);
  }
  if (o.json())
    emit_json(std::cout, "lattices", {{"m", cls.m().get_str()}, {"a", cls.a().get_str()}, {"rows", rows}});
  else
    t.print_tsv(std::cout);
  return kOk;
}

// table1

int cmd_table1(const Options& o, const std::string& expect_path, const EnumerationOptions& eo) {
  std::vector<ExpectedRow> expected;
  try {
    expected = load_expected_table(expect_path);
  } catch (const parse_error& e) {
    throw usage_error(expect_path + ": " + e.what());
  } catch (const std::runtime_error& e) {
    throw usage_error(e.what());
  }
  auto cmp = compare_table1(table1(enumerate_real_classes(), eo), expected);
  bool all = cmp.size() == expected.size();
  std::size_t tot = 0, tot_mc = 0, etot = 0, etot_mc = 0;
  json rows = json::array();
  Table t{{"m", "a", "exponents", "lattices", "expected_lattices", "mirror_consistent", "expected_mirror_consistent",
           "t_values", "expected_t_values", "status"},
          {}};
  for (const auto& c : cmp) {
    const auto& r = c.computed;
    tot += r.lattice_count;
    tot_mc += r.mirror_count;
    if (c.expected) {
      etot += c.expected->lattice_count;
      etot_mc += c.expected->mirror_count;
    }
    all = all && c.match();
    std::string status = c.match() ? "match" : "MISMATCH";
    t.rows.push_back({r.m.get_str(), r.a.get_str(), join_str(r.exponents), std::to_string(r.lattice_count),
                      c.expected ? std::to_string(c.expected->lattice_count) : "?", std::to_string(r.mirror_count),
                      c.expected ? std::to_string(c.expected->mirror_count) : "?", join_str(r.mirror_t),
                      c.expected ? join_str(c.expected->mirror_t) : "?", status});
    json j{{"m", r.m.get_str()},
           {"a", r.a.get_str()},
           {"exponents", rats_json(r.exponents)},
           {"lattices", r.lattice_count},
           {"mirror_consistent", r.mirror_count},
           {"t_values", ints_json(r.mirror_t)},
           {"status", status}};
    if (c.expected)
      j["expected"] = {{"exponents", rats_json(c.expected->exponents)},
                       {"lattices", c.expected->lattice_count},
                       {"mirror_consistent", c.expected->mirror_count},
                       {"t_values", ints_json(c.expected->mirror_t)}};
    rows.push_back(j);
  }
  all = all && tot == etot && tot_mc == etot_mc;
  if (o.json()) {
    emit_json(std::cout, "table1",
              {{"rows", rows},
               {"totals", {{"lattices", tot}, {"mirror_consistent", tot_mc}}},
               {"expected_totals", {{"lattices", etot}, {"mirror_consistent", etot_mc}}},
               {"match", all}});
  } else {
    t.rows.push_back({"total", "", "", std::to_string(tot), std::to_string(etot), std::to_string(tot_mc),
                      std::to_string(etot_mc), "", "", tot == etot && tot_mc == etot_mc ? "match" : "MISMATCH"});
    t.print_tsv(std::cout);
  }
  return all ? kOk : kFail;
}

// series

Exponents parse_exponents(const std::string& text) {
  auto parts = detail::split(text, ',');
  if (parts.size() != 4) throw usage_error("--exponents needs four comma-separated rationals");
  Exponents e;
  for (std::size_t i = 0; i < 4; ++i) {
    try {
      e[i] = parse_rat(parts[i]);
    } catch (const domain_error&) {
      throw usage_error("bad exponent '" + parts[i] + "'");
    }
    if (e[i] <= 0 || e[i] > 1) throw usage_error("exponent " + e[i].get_str() + " outside (0,1]");
  }
  return e;
}

int print_series(const Options& o, const std::string& kind, const RationalSeries& s) {
  if (o.json()) {
    emit_json(std::cout, "series", {{"kind", kind}, {"order", s.order()}, {"coefficients", rats_json(s.coeffs())}});
    return kOk;
  }
  Table t{{"n", "coefficient"}, {}};
  for (std::size_t n = 0; n <= s.order(); ++n) t.rows.push_back({std::to_string(n), s[n].get_str()});
  t.print_tsv(std::cout);
  return kOk;
}

int cmd_series(const Options& o, const std::string& kind, long order, const std::string& exps) {
  if (order < 0) throw usage_error("--order must be nonnegative");
  auto N = static_cast<std::size_t>(order);
  if (kind == "quintic") return print_series(o, kind, quintic_series(N));
  if (kind == "hypergeom") {
    if (exps.empty()) throw usage_error("series hypergeom needs --exponents");
    return print_series(o, kind, hypergeom_series(parse_exponents(exps), N));
  }
  // restrict-212
  auto res = restriction_matches(N);
  if (o.json()) {
    emit_json(std::cout, "series",
              {{"kind", kind}, {"order", N}, {"match", res.match}, {"kappa", rat_json(res.kappa)}});
  } else {
    Table t{{"order", "match", "kappa"}, {{std::to_string(N), res.match ? "true" : "false", res.kappa.get_str()}}};
    t.print_tsv(std::cout);
  }
  return kOk;
}

// polytope

int cmd_polytope(const Options& o, const std::string& sub, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw usage_error("cannot open " + path);
  LatticePolytope P;
  try {
    P = parse_polytope(in);
  } catch (const parse_error& e) {
    throw usage_error(path + ": " + e.what());
  }
  auto vec_strings = [](const auto& v) {
    std::vector<std::string> s;
    for (const auto& x : v) s.push_back(x.get_str());
    return s;
  };
  if (sub == "polar") {
    auto Q = polar_dual(P);
    if (o.json()) {
      json vs = json::array();
      for (const auto& v : Q.vertices) vs.push_back(rats_json(v));
      emit_json(std::cout, "polytope", {{"sub", sub}, {"dim", Q.dim}, {"vertices", vs}});
    } else {
      Table t{{"vertex"}, {}};
      for (const auto& v : Q.vertices) t.rows.push_back({join(vec_strings(v), " ")});
      t.print_tsv(std::cout);
    }
  } else if (sub == "reflexive") {
    bool r = is_reflexive(P);
    if (o.json())
      emit_json(std::cout, "polytope", {{"sub", sub}, {"reflexive", r}});
    else
      Table{{"reflexive"}, {{r ? "true" : "false"}}}.print_tsv(std::cout);
  } else if (sub == "points") {
    auto pts = lattice_points(P);
    if (o.json()) {
      json ps = json::array();
      for (const auto& v : pts) ps.push_back(ints_json(v));
      emit_json(std::cout, "polytope", {{"sub", sub}, {"count", pts.size()}, {"points", ps}});
    } else {
      Table t{{"point"}, {}};
      for (const auto& v : pts) t.rows.push_back({join(vec_strings(v), " ")});
      t.rows.push_back({"count " + std::to_string(pts.size())});
      t.print_tsv(std::cout);
    }
  } else {
    Int idx = points_span_index(P);
    if (o.json())
      emit_json(std::cout, "polytope", {{"sub", sub}, {"index", idx.get_str()}});
    else
      Table{{"index"}, {{idx.get_str()}}}.print_tsv(std::cout);
  }
  return kOk;
}

// verify

int cmd_verify(const Options& o, const VerifyConfig& cfg) {
  auto results = run_acceptance(cfg, [&](const CheckResult& r) {
    if (!o.json()) std::cout << format_check(r) << std::endl;
  });
  bool all = true;
  for (const auto& r : results) all = all && r.pass;
  if (o.json()) {
    json checks = json::array();
    for (const auto& r : results)
      checks.push_back({{"id", r.id}, {"name", r.name}, {"pass", r.pass}, {"detail", r.detail}, {"seconds", r.seconds}});
    emit_json(std::cout, "verify", {{"checks", checks}, {"pass", all}});
  } else {
    std::cout << (all ? "all checks passed" : "verification FAILED") << std::endl;
  }
  return all ? kOk : kFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Integral symplectic monodromy classification, period series and reflexive polytopes"};
  app.require_subcommand(1);
  Options opt;
  app.add_option("--format", opt.format, "Output format")
      ->check(CLI::IsMember({"tsv", "json"}))
      ->capture_default_str();

  EnumerationOptions eo;
  auto add_enum_opts = [&](CLI::App* sub) {
    sub->add_option("--box-multiplier", eo.box_multiplier, "Residue box side as a multiple of the exact period")
        ->check(CLI::PositiveNumber);
    sub->add_flag("--require-t-divides-a", eo.require_t_divides_a, "Only enumerate factorizations with t | a");
    sub->add_option("--threads", eo.threads, "Worker threads (default: SP4_THREADS or all cores)");
  };

  auto* classify = app.add_subcommand("classify", "List the real conjugacy classes");

  long m = 0, a = 0;
  bool mirror_only = false;
  auto* lattices = app.add_subcommand("lattices", "Invariant unimodular lattices of one real class");
  lattices->add_option("--m", m, "m")->required();
  lattices->add_option("--a", a, "a")->required();
  lattices->add_flag("--mirror-consistent", mirror_only, "Only mirror-consistent lattices");
  add_enum_opts(lattices);

  std::string expect = std::string(SP4_DATA_DIR) + "/table1.tsv";
  auto* table = app.add_subcommand("table1", "Lattice counts for every class against the expected table");
  table->add_option("--expect", expect, "Expected values (TSV)")->capture_default_str();
  add_enum_opts(table);

  std::string kind, exps;
  long order = 10;
  auto* series = app.add_subcommand("series", "Exact period series");
  series->add_option("kind", kind, "quintic | hypergeom | restrict-212")
      ->required()
      ->check(CLI::IsMember({"quintic", "hypergeom", "restrict-212"}));
  series->add_option("--order", order, "Truncation order")->capture_default_str();
  series->add_option("--exponents", exps, "a1,a2,a3,a4 for hypergeom");

  std::string sub, path;
  auto* polytope = app.add_subcommand("polytope", "Polytope operations on a .poly file");
  polytope->add_option("operation", sub, "polar | reflexive | points | span-index")
      ->required()
      ->check(CLI::IsMember({"polar", "reflexive", "points", "span-index"}));
  polytope->add_option("file", path, "Polytope file")->required();

  VerifyConfig vc{std::string(SP4_DATA_DIR) + "/table1.tsv", SP4_FIXTURES_DIR, 200};
  auto* verify = app.add_subcommand("verify", "Run every acceptance check");
  verify->add_option("--expect", vc.table_path, "Expected values (TSV)")->capture_default_str();
  verify->add_option("--fixtures", vc.fixtures_dir, "Fixture directory")->capture_default_str();
  verify->add_option("--cases", vc.property_cases, "Randomized cases per property")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*classify) return cmd_classify(opt);
    if (*lattices) return cmd_lattices(opt, m, a, mirror_only, eo);
    if (*table) return cmd_table1(opt, expect, eo);
    if (*series) return cmd_series(opt, kind, order, exps);
    if (*polytope) return cmd_polytope(opt, sub, path);
    if (*verify) return cmd_verify(opt, vc);
  } catch (const usage_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const polarity_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kDomain;
  } catch (const domain_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kDomain;
  } catch (const dimension_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kDomain;
  } catch (const precondition_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kDomain;
  } catch (const rank_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kDomain;
  }
  return kUsage;
}
