// rsm: command-line tables for the spectral second-moment library.
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "rsm/eisenstein.hpp"
#include "rsm/kernels.hpp"
#include "rsm/moments.hpp"
#include "rsm/shifted.hpp"
#include "verify.hpp"

namespace {

using rsm::cplx;
using rsm::i64;
using json = nlohmann::ordered_json;

// ---- output ----

using Cell = std::variant<i64, double, cplx, std::string>;

struct Table {
  std::vector<std::string> cols;  // complex columns expand to name_re, name_im
  std::vector<std::vector<Cell>> rows;
  json extra = json::object();    // JSON only
};

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string o = "\"";
  for (char c : s) o += c == '"' ? std::string("\"\"") : std::string(1, c);
  return o + "\"";
}

bool is_complex_col(const Table& t, std::size_t j) {
  return !t.rows.empty() && std::holds_alternative<cplx>(t.rows.front()[j]);
}

void write_csv(const Table& t, std::ostream& os) {
  for (std::size_t j = 0; j < t.cols.size(); ++j) {
    if (j) os << ',';
    os << (is_complex_col(t, j) ? t.cols[j] + "_re," + t.cols[j] + "_im" : t.cols[j]);
  }
  os << '\n';
  for (const auto& r : t.rows) {
    for (std::size_t j = 0; j < r.size(); ++j) {
      if (j) os << ',';
      std::visit(
          [&](const auto& v) {
            using V = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<V, i64>) os << v;
            else if constexpr (std::is_same_v<V, double>) os << num(v);
            else if constexpr (std::is_same_v<V, cplx>) os << num(v.real()) << ',' << num(v.imag());
            else os << csv_escape(v);
          },
          r[j]);
    }
    os << '\n';
  }
}

json cell_json(const Cell& c) {
  return std::visit(
      [](const auto& v) -> json {
        using V = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<V, cplx>) return json{{"re", v.real()}, {"im", v.imag()}};
        else return json(v);
      },
      c);
}

void write_json(const Table& t, std::ostream& os) {
  json rows = json::array();
  for (const auto& r : t.rows) {
    json o = json::object();
    for (std::size_t j = 0; j < r.size(); ++j) o[t.cols[j]] = cell_json(r[j]);
    rows.push_back(o);
  }
  json doc = t.extra;
  doc["rows"] = rows;
  os << doc.dump(2) << '\n';
}

struct Output {
  std::string format = "csv";
  std::string path;

  void add(CLI::App* app) {
    app->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    app->add_option("-o,--output", path, "output file (default stdout)");
  }
  void emit(const Table& t) const {
    std::ofstream file;
    std::ostream* os = &std::cout;
    if (!path.empty()) {
      file.open(path);
      if (!file) throw rsm::Error(rsm::ErrorKind::parse, "cannot open output file '" + path + "'");
      os = &file;
    }
    if (format == "json") write_json(t, *os);
    else write_csv(t, *os);
  }
};

// ---- inputs ----

std::string resolve(const std::string& path) {
  namespace fs = std::filesystem;
  if (path.empty() || fs::path(path).is_absolute() || fs::exists(path)) return path;
  if (const char* dir = std::getenv("RSM_DATA_DIR")) {
    fs::path p = fs::path(dir) / path;
    if (fs::exists(p)) return p.string();
  }
  return path;
}

struct Forms {
  std::string f_path, g_path;
  rsm::NewformData f_own, g_own;
  const rsm::NewformData* f = nullptr;
  const rsm::NewformData* g = nullptr;

  void add(CLI::App* app) {
    app->add_option("--newform", f_path, "coefficient file of f (default Delta); relative paths also searched in $RSM_DATA_DIR");
    app->add_option("--newform-g", g_path, "coefficient file of g (default f)");
  }
  void load() {
    if (f_path.empty()) {
      f = &rsm::delta_form();
    } else {
      f_own = rsm::load_newform(resolve(f_path));
      f = &f_own;
    }
    if (g_path.empty()) {
      g = f;
    } else {
      g_own = rsm::load_newform(resolve(g_path));
      g = &g_own;
    }
  }
};

struct Kernel {
  double T = 100.0, alpha = 0.5, R = 1.0;
  void add(CLI::App* app) {
    app->add_option("--T", T, "centre of the spectral window");
    app->add_option("--alpha", alpha, "window exponent, width T^alpha");
    app->add_option("--R", R, "rational factor parameter");
  }
  rsm::TestFunctionParams params() const {
    rsm::TestFunctionParams p{T, alpha, R};
    p.validate();
    return p;
  }
};

struct Moment {
  Kernel kernel;
  Forms forms;
  i64 N = 1;
  double s_re = 0.5, s_im = 0.0, t = 0.0;
  int tprime_sign = 1;

  void add(CLI::App* app) {
    kernel.add(app);
    forms.add(app);
    app->add_option("--N", N, "level (moment commands need supplied cusp L-values when N > 1)");
    app->add_option("--s-re", s_re, "Re s");
    app->add_option("--s-im", s_im, "Im s");
    app->add_option("--t", t, "twist t");
    app->add_option("--tprime-sign", tprime_sign, "sign of t' = +-t")->check(CLI::IsMember({-1, 1}));
  }
  rsm::MomentContext context() {
    forms.load();
    rsm::MomentContext c;
    c.s = cplx(s_re, s_im);
    c.t = t;
    c.tprime_sign = tprime_sign;
    c.f = forms.f;
    c.g = forms.g;
    c.N = N;
    c.kernel.params = kernel.params();
    c.kernel.k = forms.f->k;
    c.validate();
    if (N == 1) c.rs = rsm::rs_level1(*c.f, *c.g);
    return c;
  }
};

// ---- commands ----

Table cmd_cusps(i64 N) {
  Table t;
  t.cols = {"N", "a", "c", "width"};
  for (const auto& cu : rsm::enumerate_cusps(N)) t.rows.push_back({cu.N, cu.a, cu.c, rsm::cusp_width(cu)});
  t.extra["count"] = rsm::cusp_count(N);
  return t;
}

Table cmd_tau(i64 N, cplx s, const std::vector<i64>& ns, i64 only_a) {
  Table t;
  t.cols = {"N", "a", "c", "s", "n", "tau"};
  for (const auto& cu : rsm::enumerate_cusps(N)) {
    if (only_a && cu.a != only_a) continue;
    rsm::TauCuspEvaluator ev(cu, s);
    for (i64 n : ns) {
      if (n == 0) throw rsm::Error(rsm::ErrorKind::domain, "tau: n must be nonzero");
      t.rows.push_back({cu.N, cu.a, cu.c, s, n, ev(n)});
    }
  }
  if (t.rows.empty()) throw rsm::Error(rsm::ErrorKind::domain, "tau: no cusp with a = " + std::to_string(only_a));
  return t;
}

Table cmd_h0(const Kernel& kn, int k, const std::vector<double>& xs, double tw) {
  rsm::KernelContext c;
  c.params = kn.params();
  c.k = k;
  c.t = tw;
  const double scale = 2.0 * std::pow(rsm::pi, -1.5) * std::pow(kn.T, 1.0 + kn.alpha);
  Table t;
  t.cols = {"T", "alpha", "R", "k", "t", "x", "H0", "ratio"};
  for (double x : xs) {
    cplx v = rsm::H0(rsm::I * x, c);
    t.rows.push_back({kn.T, kn.alpha, kn.R, i64(k), tw, x, v, v.real() / scale});
  }
  t.extra["ratio"] = "Re H0(ix) / (2 pi^{-3/2} T^{1+alpha})";
  return t;
}

Table cmd_main_term(Moment& m) {
  auto c = m.context();
  Table t;
  t.cols = {"N", "T", "alpha", "s", "t", "main_term"};
  t.rows.push_back({m.N, m.kernel.T, m.kernel.alpha, c.s, m.t, rsm::evaluate_main_term(c)});
  return t;
}

Table cmd_breakdown(Moment& m, const std::string& conv) {
  auto c = m.context();
  auto b = rsm::main_term_breakdown(c, conv == "full" ? rsm::DenominatorConvention::full : rsm::DenominatorConvention::depleted);
  cplx mt = rsm::main_term(c);
  Table t;
  t.cols = {"N", "s", "t", "M1", "M_Omega_plus", "M_Omega_minus", "assembled", "main_term", "rel_diff"};
  t.rows.push_back({m.N, c.s, m.t, b.M1, b.M_Omega_plus, b.M_Omega_minus, b.assembled, mt, rsm::rel_diff(mt, b.assembled)});
  t.extra["convention"] = conv;
  return t;
}

Table cmd_continuous(Moment& m) {
  auto c = m.context();
  Table t;
  t.cols = {"T", "alpha", "s", "t", "continuous"};
  t.rows.push_back({m.kernel.T, m.kernel.alpha, c.s, m.t, rsm::continuous_part(c)});
  return t;
}

struct ZArgs {
  Forms forms;
  std::string kind = "z", path = "rearranged", reduction = "sequential";
  double s_re = 8.3, s_im = 0.5, v_re = 7.1, v_im = 0.0, t = 0.7;
  i64 N = 1, outer = 2000, inner = 2000;
};

Table cmd_z_series(ZArgs& a) {
  a.forms.load();
  rsm::ShiftedSeriesRequest r;
  r.s = cplx(a.s_re, a.s_im);
  r.v = cplx(a.v_re, a.v_im);
  r.t = a.t;
  r.f = a.forms.f;
  r.g = a.forms.g;
  r.N = a.N;
  r.trunc = {a.outer, a.inner};
  r.reduction = a.reduction == "pairwise" ? rsm::Reduction::pairwise : rsm::Reduction::sequential;
  rsm::ShiftedValue v;
  if (a.kind == "z") v = a.path == "double" ? rsm::Z_series_double(r) : rsm::Z_series_rearranged(r);
  else v = a.path == "double" ? rsm::M3_series(r) : rsm::M3_series_rearranged(r);
  Table t;
  t.cols = {"kind", "path", "N", "s", a.kind == "z" ? "v" : "w", "t", "outer", "inner", "value", "outer_tail", "inner_tail"};
  t.rows.push_back({a.kind, a.path, a.N, r.s, r.v, a.t, a.outer, a.inner, v.value, v.outer_tail, v.inner_tail});
  return t;
}

Table cmd_moment_table(Moment& m, double T_min, double T_max, int points) {
  if (points < 1 || T_min <= 0.0 || T_max < T_min)
    throw rsm::Error(rsm::ErrorKind::domain, "moment-table: need 0 < T-min <= T-max and points >= 1");
  auto base = m.context();
  const double lc = rsm::leading_coeff(*base.rs, m.N);
  std::vector<double> Ts;
  for (int j = 0; j < points; ++j)
    Ts.push_back(points == 1 ? T_min : T_min * std::pow(T_max / T_min, double(j) / (points - 1)));
  // one task per grid point, collected in input order
  std::vector<std::future<cplx>> jobs;
  for (double T : Ts)
    jobs.push_back(std::async(std::launch::async, [base, T]() mutable {
      base.kernel.params.T = T;
      base.kernel.params.validate();
      return rsm::evaluate_main_term(base);
    }));
  Table t;
  t.cols = {"T", "main_term", "normalized_ratio"};
  for (std::size_t j = 0; j < Ts.size(); ++j) {
    cplx v = jobs[j].get();
    double L = std::log(Ts[j]);
    t.rows.push_back({Ts[j], v, v.real() / (std::pow(Ts[j], 1.0 + m.kernel.alpha) * L * L * L * lc)});
  }
  t.extra["c_fg"] = lc;
  t.extra["normalized_ratio"] = "Re M / (T^{1+alpha} (log T)^3 c_fg)";
  return t;
}

int cmd_verify(const std::string& suite, const std::vector<int>& only, const std::vector<std::string>& tols,
               const std::string& format, const Output& out) {
  std::map<int, double> overrides;
  for (const auto& s : tols) {
    auto eq = s.find('=');
    if (eq == std::string::npos) throw rsm::Error(rsm::ErrorKind::parse, "--tolerance expects ID=VALUE, got '" + s + "'");
    overrides[std::stoi(s.substr(0, eq))] = std::stod(s.substr(eq + 1));
  }
  auto ids = only.empty() ? rsm::verify::suite_ids(suite) : only;
  const bool text = format == "text";
  auto res = rsm::verify::run(ids, overrides, [&](const rsm::verify::Outcome& o) {
    if (text) std::cout << rsm::verify::format_line(o) << std::endl;
  });
  bool ok = true;
  for (const auto& o : res) ok = ok && o.pass;
  if (!text) {
    Table t;
    t.cols = {"criterion", "name", "status", "measured", "tolerance", "detail"};
    for (const auto& o : res)
      t.rows.push_back({i64(o.id), o.name, std::string(o.pass ? "PASS" : "FAIL"), o.measured, o.tol, o.detail});
    t.extra["suite"] = suite;
    Output o2 = out;
    o2.format = format;
    o2.emit(t);
  }
  return ok ? 0 : 1;
}

void print_error(const std::string& kind, const std::string& msg) {
  json e = {{"error", {{"kind", kind}, {"message", msg}}}};
  std::cerr << e.dump() << std::endl;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral second moments of Rankin-Selberg L-functions: tables and checks"};
  app.require_subcommand(1);

  i64 cN = 1;
  Output cusps_out;
  auto* cusps = app.add_subcommand("cusps", "cusps 1/(ca) of Gamma_0(N)");
  cusps->add_option("--N", cN, "level")->required();
  cusps_out.add(cusps);

  i64 tN = 1, ta = 0;
  double ts_re = 1.5, ts_im = 0.0;
  std::vector<i64> tn{1};
  Output tau_out;
  auto* tau = app.add_subcommand("tau", "Fourier coefficients of the Eisenstein series at each cusp");
  tau->add_option("--N", tN, "level")->required();
  tau->add_option("--s-re", ts_re, "Re s");
  tau->add_option("--s-im", ts_im, "Im s");
  tau->add_option("--n", tn, "indices (nonzero)");
  tau->add_option("--cusp-a", ta, "restrict to cusps with this a");
  tau_out.add(tau);

  Kernel hk;
  int hkw = 12;
  double ht = 0.0;
  std::vector<double> hx{0.0};
  Output h0_out;
  auto* h0 = app.add_subcommand("h0", "H0(ix) for the test function h_{T,alpha}");
  hk.add(h0);
  h0->add_option("--k", hkw, "weight");
  h0->add_option("--x", hx, "real x values");
  h0->add_option("--t", ht, "twist t");
  h0_out.add(h0);

  Moment mm, bm, cm, tm;
  Output mm_out, bm_out, cm_out, tm_out;
  auto* main_term = app.add_subcommand("main-term", "the four-term main term (specialized displays near s = 1/2 -+ it)");
  mm.add(main_term);
  mm_out.add(main_term);

  std::string conv = "depleted";
  auto* breakdown = app.add_subcommand("breakdown", "M1, M_Omega^+ and M_Omega^- from their own displays");
  bm.add(breakdown);
  breakdown->add_option("--convention", conv, "denominators: depleted or full zeta")->check(CLI::IsMember({"depleted", "full"}));
  bm_out.add(breakdown);

  auto* continuous = app.add_subcommand("continuous", "continuous-spectrum integral (level 1)");
  cm.add(continuous);
  cm_out.add(continuous);

  ZArgs za;
  Output z_out;
  auto* zs = app.add_subcommand("z-series", "truncated Z(s, v; it) or M^(3)(s, w; it) with tail bounds");
  za.forms.add(zs);
  zs->add_option("--kind", za.kind, "z or m3")->check(CLI::IsMember({"z", "m3"}));
  zs->add_option("--path", za.path, "rearranged or double")->check(CLI::IsMember({"rearranged", "double"}));
  zs->add_option("--reduction", za.reduction, "sequential or pairwise")->check(CLI::IsMember({"sequential", "pairwise"}));
  zs->add_option("--s-re", za.s_re, "Re s");
  zs->add_option("--s-im", za.s_im, "Im s");
  zs->add_option("--v-re", za.v_re, "Re v (Re w for m3)");
  zs->add_option("--v-im", za.v_im, "Im v (Im w for m3)");
  zs->add_option("--t", za.t, "twist t");
  zs->add_option("--N", za.N, "level");
  zs->add_option("--outer", za.outer, "outer truncation (m)");
  zs->add_option("--inner", za.inner, "inner truncation (n)");
  z_out.add(zs);

  std::string suite = "identities", vformat = "text";
  std::vector<int> only;
  std::vector<std::string> tols;
  Output v_out;
  auto* verify = app.add_subcommand("verify", "run the identity or acceptance checks");
  verify->add_option("--suite", suite, "identities or acceptance")->check(CLI::IsMember({"identities", "acceptance"}));
  verify->add_option("--only", only, "criterion ids");
  verify->add_option("--tolerance", tols, "override a pinned tolerance, ID=VALUE");
  verify->add_option("--format", vformat, "text, csv or json")->check(CLI::IsMember({"text", "csv", "json"}));
  verify->add_option("-o,--output", v_out.path, "output file for csv/json");

  double T_min = 100.0, T_max = 800.0;
  int points = 4;
  auto* table = app.add_subcommand("moment-table", "main term over a geometric grid of T");
  tm.add(table);
  table->add_option("--T-min", T_min, "smallest T");
  table->add_option("--T-max", T_max, "largest T");
  table->add_option("--points", points, "grid points");
  tm_out.add(table);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    print_error("parse", e.what());
    return 2;
  }

  try {
    if (*cusps) cusps_out.emit(cmd_cusps(cN));
    else if (*tau) tau_out.emit(cmd_tau(tN, cplx(ts_re, ts_im), tn, ta));
    else if (*h0) h0_out.emit(cmd_h0(hk, hkw, hx, ht));
    else if (*main_term) mm_out.emit(cmd_main_term(mm));
    else if (*breakdown) bm_out.emit(cmd_breakdown(bm, conv));
    else if (*continuous) cm_out.emit(cmd_continuous(cm));
    else if (*zs) z_out.emit(cmd_z_series(za));
    else if (*verify) return cmd_verify(suite, only, tols, vformat, v_out);
    else if (*table) tm_out.emit(cmd_moment_table(tm, T_min, T_max, points));
  } catch (const rsm::Error& e) {
    print_error(rsm::kind_name(e.kind()), e.what());
    return 1;
  } catch (const std::exception& e) {
    print_error("internal", e.what());
    return 1;
  }
  return 0;
}
