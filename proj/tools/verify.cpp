#include "verify.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <future>
#include <memory>
#include <utility>

#include "rsm/eisenstein.hpp"
#include "rsm/kernels.hpp"
#include "rsm/moments.hpp"
#include "rsm/shifted.hpp"

namespace rsm::verify {

namespace {

using clock_type = std::chrono::steady_clock;

std::string fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

Outcome make(double measured, double tol, bool pass, std::string detail) {
  Outcome o;
  o.measured = measured;
  o.tol = tol;
  o.pass = pass;
  o.detail = std::move(detail);
  return o;
}

double seconds_since(clock_type::time_point t0) {
  return std::chrono::duration<double>(clock_type::now() - t0).count();
}

// ---- 1, 2: H0 ----

Outcome h0_asymptotic(double tol) {
  auto t0 = clock_type::now();
  KernelContext c;
  c.params = {300.0, 0.5, 1.0};
  c.k = 12;
  double ratio = H0(0.0, c).real() / (2.0 * std::pow(pi, -1.5) * std::pow(300.0, 1.5));
  double secs = seconds_since(t0);
  double dev = std::abs(ratio - 1.0);
  return make(dev, tol, dev <= tol && secs < 30.0, "ratio " + fmt("%.6f", ratio) + ", " + fmt("%.2f s (limit 30)", secs));
}

Outcome h0_decay(double tol) {
  KernelContext c;
  c.params = {300.0, 0.4, 1.0};
  double x = std::pow(300.0, 0.75);
  double v = std::abs(H0(I * x, c)) / std::pow(300.0, 1.4);
  return make(v, tol, v < tol, "|H0(ix)|/T^1.4 at x = T^0.75");
}

// ---- 3: Eisenstein coefficients against the coset-sum oracle ----

Outcome eisenstein_oracle_check(double tol) {
  auto t0 = clock_type::now();
  double worst = 0.0, zeros = 0.0;
  int count = 0, nzero = 0;
  for (i64 N : {1, 2, 3, 4, 6, 9})
    for (double s : {1.2, 1.5}) {
      std::vector<std::pair<cplx, cplx>> vals;
      double scale = 0.0;
      for (const auto& cu : enumerate_cusps(N))
        for (i64 n : {1, 2, 3}) {
          vals.emplace_back(tau_cusp({cu, s, n}), tau_oracle(cu, s, n, 3000).value);
          scale = std::max(scale, std::abs(vals.back().first));
        }
      // coefficients that vanish by the divisibility condition are scored against the level's scale
      for (auto [f, o] : vals) {
        if (f == 0.0) {
          zeros = std::max(zeros, std::abs(o) / scale);
          ++nzero;
        } else {
          worst = std::max(worst, std::abs(f - o) / std::abs(f));
        }
        ++count;
      }
    }
  double closed = 0.0;
  for (double s : {1.2, 1.3, 1.5, 2.5})
    for (i64 n = 1; n <= 12; ++n) {
      double ref = 2.0 * std::pow(pi, s) * std::pow(double(n), s - 0.5) * sigma_complex(n, 1.0 - 2.0 * s).real() /
                   (std::tgamma(s) * riemann_zeta(2.0 * s).real());
      closed = std::max(closed, rel_diff(tau_cusp({CuspLabel{1, 1, 1}, s, n}), ref));
    }
  double secs = seconds_since(t0);
  bool pass = worst < tol && zeros < tol && closed < 1e-12 && secs < 300.0;
  return make(std::max(worst, zeros), tol, pass,
              std::to_string(count) + " coefficients (" + std::to_string(nzero) + " exact zeros, oracle/scale " +
                  fmt("%.1e)", zeros) + "; level-1 closed form " + fmt("%.2e (tol 1e-12)", closed) + ", " +
                  fmt("%.1f s (limit 300)", secs));
}

// ---- 4, 5: Euler polynomial of the Eisenstein Dirichlet series ----

Outcome factorization(double tol) {
  double worst = 0.0;
  for (i64 N : {1, 2, 3, 4})
    for (const auto& cu : enumerate_cusps(N)) {
      auto d = curly_L_eisenstein_direct(2.5, 0.7, I * 0.3, cu, 100000);
      worst = std::max(worst, rel_diff(d.value, curly_L_eisenstein(2.5, 0.7, I * 0.3, cu)));
    }
  return make(worst, tol, worst < tol, "direct m <= 1e5 vs factored, N <= 4, all cusps");
}

Outcome corollary_zeros(double tol) {
  double worst = 0.0;
  int count = 0;
  for (i64 N = 1; N <= 30; ++N)
    for (const auto& cu : enumerate_cusps(N)) {
      if (cu.a == N) continue;
      for (double t : {0.3, 1.7})
        for (double y : {-2.0, 0.0, 0.5, 3.0}) {
          cplx s(0.8, y);
          worst = std::max(worst, std::abs(scrP_eisenstein(s, t, 1.0 - s + I * t, cu)));
          ++count;
        }
    }
  return make(worst, tol, worst < tol, std::to_string(count) + " points");
}

// ---- 6: Euler-product identity ----

Outcome euler_identity(double tol) {
  double worst = 0.0;
  for (i64 N = 1; N <= 60; ++N)
    for (double t : {0.3, 1.7}) worst = std::max(worst, rel_diff(euler_identity_sum(N, t), euler_identity_product(N, t)));
  return make(worst, tol, worst < tol, "N <= 60");
}

// ---- 7, 8, 9: main term ----

std::shared_ptr<const RSProvider> delta_provider() {
  static auto rs = rs_level1(delta_form(), delta_form());
  return rs;
}

// L-values with the pole structure of f = g, different at each cusp
std::shared_ptr<const RSProvider> synthetic_provider() {
  auto rs = std::make_shared<RSProvider>();
  const double R = 0.7;
  const cplx C0(0.4, 0.0);
  auto poly = [](int seed, cplx s) {
    cplx a = 0.0;
    for (int n = 1; n <= 12; ++n) a += std::sin(1.7 * n + seed) * rpow(n, -s);
    return a;
  };
  rs->L = [=](cplx s) { return R / (s - 1.0) + C0 + (s - 1.0) * poly(0, s); };
  rs->L_cusp = [=](const CuspLabel& c, cplx s) { return R / (s - 1.0) + C0 + (s - 1.0) * poly(int(c.a * 7 + c.c), s); };
  rs->same_form = true;
  rs->residue = R;
  rs->laurent_c0 = C0;
  return rs;
}

MomentContext delta_context(double T) {
  MomentContext c;
  c.f = &delta_form();
  c.g = c.f;
  c.rs = delta_provider();
  c.kernel.params = {T, 0.5, 1.0};
  return c;
}

Outcome assembly(double tol) {
  double depleted = 0.0, full = 0.0;
  int count = 0;
  for (i64 N : {1, 2}) {
    MomentContext c = N == 1 ? delta_context(100.0) : MomentContext{};
    if (N == 2) {
      c.N = 2;
      c.rs = synthetic_provider();
      c.kernel.params = {100.0, 0.5, 1.0};
    }
    std::vector<std::future<std::pair<double, double>>> jobs;
    for (double t : {0.3, 0.7, 1.7})
      for (int j = 0; j < 20; ++j) {
        c.t = t;
        c.s = cplx(0.5, -2.85 + 0.3 * j);
        jobs.push_back(std::async(std::launch::async, [c] {
          cplx m = main_term(c);
          return std::pair{rel_diff(m, main_term_breakdown(c).assembled),
                           rel_diff(m, main_term_breakdown(c, DenominatorConvention::full).assembled)};
        }));
      }
    for (auto& j : jobs) {
      auto [d, f] = j.get();
      depleted = std::max(depleted, d);
      full = std::max(full, f);
      ++count;
    }
  }
  return make(depleted, tol, depleted < tol,
              std::to_string(count) + " points; reconciling convention: depleted zeta^(N) (full zeta gives " +
                  fmt("%.2e)", full));
}

Outcome n1_reduction(double tol) {
  MomentContext c = delta_context(100.0);
  double worst = 0.0;
  for (double y : {-2.1, -0.9, 0.37, 1.3, 2.6})
    for (double t : {0.3, 0.7, 1.1, 1.7}) {
      c.s = cplx(0.5, y);
      c.t = t;
      worst = std::max(worst, rel_diff(main_term(c), main_term_N1(c)));
    }
  return make(worst, tol, worst < tol, "20 points, f = g = Delta (identical Euler factors give bit equality)");
}

Outcome pole_cancellation(double tol) {
  MomentContext c = delta_context(100.0);
  c.t = 0.0;
  cplx special = main_term_specialized(c, Specialization::feq_minus);
  // generic path along s = 1/2 + (1 - i) t, extrapolated to t = 0
  cplx g[2];
  const double ts[2] = {1e-2, 1e-3};
  for (int j = 0; j < 2; ++j) {
    c.t = ts[j];
    c.s = 0.5 + cplx(1.0, -1.0) * ts[j];
    g[j] = main_term(c);
  }
  cplx limit = (10.0 * g[1] - g[0]) / 9.0;
  double r = rel_diff(limit, special);
  return make(r, tol, r < tol, "specialized " + fmt("%.8e", special.real()) + ", Richardson " + fmt("%.8e", limit.real()));
}

// ---- 10: trend of the normalized moment ----

Outcome leading_trend(double tol) {
  auto t0 = clock_type::now();
  MomentContext c = delta_context(100.0);
  double lc = leading_coeff(*c.rs, 1);
  std::vector<double> q;
  std::string detail = "ratio/c_fg:";
  for (double T : {100.0, 200.0, 400.0, 800.0}) {
    c.kernel.params = {T, 0.5, 1.0};
    c.t = 0.0;
    double L = std::log(T);
    double m = main_term_specialized(c, Specialization::feq_minus).real();
    q.push_back(m / (std::pow(T, 1.5) * L * L * L) / lc);
    detail += fmt(" %.4f", q.back());
  }
  double secs = seconds_since(t0);
  bool monotone = std::is_sorted(q.begin(), q.end()) || std::is_sorted(q.rbegin(), q.rend());
  // trending toward 1: each step closes the gap
  for (std::size_t j = 1; j < q.size(); ++j) monotone = monotone && std::abs(q[j] - 1.0) <= std::abs(q[j - 1] - 1.0);
  double dev = std::abs(q.back() - 1.0);
  detail += monotone ? ", monotone" : ", not monotone";
  detail += fmt(", %.1f s (limit 600)", secs);
  return make(dev, tol, dev <= tol && monotone && secs < 600.0, detail);
}

// ---- 11: shifted series ----

Outcome rearrangement(double tol) {
  const NewformData& D = delta_form();
  ShiftedSeriesRequest z;
  z.s = cplx(8.3, 0.5);
  z.v = 7.1;
  z.t = 0.7;
  z.f = z.g = &D;
  cplx zd = Z_series_double(z).value;
  cplx zr = Z_series_rearranged(z).value;
  double worst = rel_diff(zd, zr);
  std::string detail = "Z " + fmt("%.2e", worst);
  z.reduction = Reduction::pairwise;
  double order = rel_diff(zr, Z_series_rearranged(z).value);
  for (i64 N : {1, 2}) {
    ShiftedSeriesRequest m;
    m.s = cplx(2.5, 0.3);
    m.v = cplx(2.2, -0.4);
    m.t = 0.7;
    m.f = m.g = &D;
    m.N = N;
    double r = rel_diff(M3_series(m).value, M3_series_rearranged(m).value);
    worst = std::max(worst, r);
    detail += ", M3 N=" + std::to_string(N) + fmt(" %.2e", r);
  }
  detail += ", pairwise vs sequential " + fmt("%.2e (tol 1e-12)", order);
  return make(worst, tol, worst < tol && order < 1e-12, detail);
}

// ---- 12: first-moment partial sum ----

Outcome partial_sum(double tol) {
  MomentContext c = delta_context(100.0);
  c.s = cplx(2.5, 0.4);
  c.t = 0.7;
  double r = rel_diff(first_moment_partial_sum(c, 10000), main_term_M1(c));
  return make(r, tol, r < tol, "n <= 1e4 at s = 2.5 + 0.4i, t = 0.7");
}

// ---- 13: property suites ----

struct Suite {
  double worst = 0.0;  // max of err / tol over every check
  std::vector<std::string> failed;

  void check(const std::string& name, double err, double tol) {
    worst = std::max(worst, err / tol);
    if (!(err < tol)) failed.push_back(name + fmt(" %.2e", err));
  }
};

void special_functions(Suite& s) {
  double rec = 0.0, refl = 0.0;
  for (cplx z : {cplx(0.3, 0.2), cplx(2.7, -1.4), cplx(-1.6, 0.9), cplx(5.1, 7.3), cplx(0.05, -3.0)}) {
    rec = std::max(rec, rel_diff(complex_gamma(z + 1.0), z * complex_gamma(z)));
    refl = std::max(refl, rel_diff(complex_gamma(z) * complex_gamma(1.0 - z), pi / std::sin(pi * z)));
  }
  s.check("gamma recursion", rec, 1e-12);
  s.check("gamma reflection", refl, 1e-12);
  double fe = 0.0;
  for (cplx z : {cplx(0.3, 2.0), cplx(-1.2, 0.5), cplx(0.5, 14.0), cplx(2.5, -7.0)}) {
    cplx rhs = rpow(2.0, z) * rpow(pi, z - 1.0) * std::sin(pi * z / 2.0) * complex_gamma(1.0 - z) * riemann_zeta(1.0 - z);
    fe = std::max(fe, rel_diff(riemann_zeta(z), rhs));
  }
  s.check("zeta functional equation", fe, 1e-10);
  double gs = 0.0;
  for (i64 q = 3; q <= 30; ++q)
    for (const auto& chi : primitive_characters_mod(q)) gs = std::max(gs, std::abs(std::abs(gauss_sum(chi)) - std::sqrt(double(q))));
  s.check("Gauss sum modulus", gs, 1e-11);
}

void h_conditions(Suite& s) {
  TestFunctionParams p{100.0, 0.5, 1.0};
  double even = 0.0;
  for (double x : {0.0, 3.7, 55.0, 99.5, 104.0, 180.0})
    for (double y : {0.0, 0.3, -0.45}) even = std::max(even, rel_diff(h_eval(cplx(x, y), p), h_eval(cplx(-x, -y), p)));
  s.check("h even", even, 1e-15);
  double finite_strip = 0.0;
  for (double x = -300.0; x <= 300.0; x += 7.3)
    for (double y : {-0.55, 0.0, 0.55})
      if (!finite(h_eval(cplx(x, y), p))) finite_strip = 1.0;
  s.check("h holomorphic on the strip", finite_strip, 0.5);
  // |h| (|r| + 1)^2 stays below C = 1 past 2T on Im r = 0.4
  double dec = 0.0;
  for (double x = 2.0 * p.T + 1.0; x < 4000.0; x *= 1.3)
    for (double sg : {1.0, -1.0}) dec = std::max(dec, std::abs(h_eval(cplx(sg * x, 0.4), p)) * std::pow(x + 1.0, 2.0));
  s.check("h polynomial decay", dec, 1.0);
  double zero = std::max(std::abs(h_eval(0.5 * I, p)), std::abs(h_eval(-0.5 * I, p)));
  s.check("h(+-i/2) = 0", zero, 1e-300);
}

void tau_conjugation(Suite& s) {
  double worst = 0.0;
  for (i64 N : {1, 2, 3, 4, 6})
    for (const auto& cu : enumerate_cusps(N))
      for (double r : {0.3, 1.1})
        for (i64 n : {1, -1, 2, -2})
          worst = std::max(worst, rel_diff(std::conj(tau_cusp({cu, cplx(0.5, r), n})), tau_cusp({cu, cplx(0.5, -r), -n})));
  s.check("tau conjugation", worst, 1e-10);
}

void arithmetic(Suite& s) {
  double mult = 0.0;
  for (i64 m = 1; m <= 60; ++m)
    for (i64 n = 1; n <= 60; ++n) {
      if (gcd(m, n) != 1) continue;
      for (cplx z : {cplx(0.0, -1.4), cplx(-1.3, 0.2)})
        mult = std::max(mult, rel_diff(sigma_complex(m * n, z), sigma_complex(m, z) * sigma_complex(n, z)));
      // the twisted sum carries the constant sigma(1; N)
      mult = std::max(mult, rel_diff(sigma_twisted_N(m * n, 6, 0.7) * sigma_twisted_N(1, 6, 0.7),
                                     sigma_twisted_N(m, 6, 0.7) * sigma_twisted_N(n, 6, 0.7)));
    }
  s.check("sigma multiplicative", mult, 1e-12);
  double cnt = 0.0;
  for (i64 N = 1; N <= 200; ++N) {
    i64 f = 0;
    for (i64 a : divisors(N)) f += euler_phi(gcd(a, N / a));
    if (f != cusp_count(N) || i64(enumerate_cusps(N).size()) != f) cnt += 1.0;
  }
  s.check("cusp counts", cnt, 0.5);
}

void cusp_sum_fe(Suite& s) {
  double worst = 0.0;
  for (i64 N : {1, 2, 3})
    for (i64 n : {1, 2})
      for (double r : {0.3, 1.1}) {
        cplx a = 0.0, b = 0.0;
        cplx ir = I * r;
        for (const auto& cu : enumerate_cusps(N)) {
          a += curly_L_eisenstein(2.5, 0.7, ir, cu) * tau_cusp({cu, 0.5 + ir, n});
          b += curly_L_eisenstein(2.5, 0.7, -ir, cu) * tau_cusp({cu, 0.5 - ir, n});
        }
        worst = std::max(worst, rel_diff(a, b));
      }
  s.check("cusp-sum functional equation", worst, 1e-6);
}

Outcome properties(double tol) {
  Suite s;
  special_functions(s);
  h_conditions(s);
  tau_conjugation(s);
  arithmetic(s);
  cusp_sum_fe(s);
  std::string detail = "max err/tol over all checks";
  for (const auto& f : s.failed) detail += "; failed: " + f;
  return make(s.worst, tol, s.worst < tol && s.failed.empty(), detail);
}

}  // namespace

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> all = {
      {1, "H0 asymptotic at T = 300", 0.1, false, h0_asymptotic},
      {2, "H0 exponential decay", 1e-8, false, h0_decay},
      {3, "Eisenstein coefficient oracle", 1e-4, false, eisenstein_oracle_check},
      {4, "Eisenstein factorization", 1e-6, true, factorization},
      {5, "Euler polynomial zeros", 1e-12, true, corollary_zeros},
      {6, "Euler-product identity over a | N", 1e-12, true, euler_identity},
      {7, "main-term assembly", 1e-9, true, assembly},
      {8, "N = 1 reduction", 1e-12, true, n1_reduction},
      {9, "pole cancellation at t = 0", 1e-3, false, pole_cancellation},
      {10, "leading-coefficient trend", 0.2, false, leading_trend},
      {11, "Z and M3 rearrangement", 1e-9, true, rearrangement},
      {12, "first-moment partial sum", 1e-4, true, partial_sum},
      {13, "property suites", 1.0, true, properties},
  };
  return all;
}

std::vector<int> suite_ids(const std::string& suite) {
  std::vector<int> ids;
  if (suite != "identities" && suite != "acceptance")
    throw Error(ErrorKind::parse, "unknown suite '" + suite + "' (identities, acceptance)");
  for (const auto& c : criteria())
    if (suite == "acceptance" || c.identity) ids.push_back(c.id);
  return ids;
}

std::vector<Outcome> run(const std::vector<int>& ids, const std::map<int, double>& overrides,
                         const std::function<void(const Outcome&)>& on_done) {
  std::vector<Outcome> out;
  for (const auto& c : criteria()) {
    if (!ids.empty() && std::find(ids.begin(), ids.end(), c.id) == ids.end()) continue;
    double tol = c.tol;
    if (auto it = overrides.find(c.id); it != overrides.end()) tol = it->second;
    auto t0 = clock_type::now();
    Outcome o;
    try {
      o = c.run(tol);
    } catch (const std::exception& e) {
      o = make(std::nan(""), tol, false, std::string("error: ") + e.what());
    }
    o.id = c.id;
    o.name = c.name;
    o.seconds = seconds_since(t0);
    if (on_done) on_done(o);
    out.push_back(std::move(o));
  }
  return out;
}

std::string format_line(const Outcome& o) {
  char buf[160];
  std::snprintf(buf, sizeof buf, "criterion %2d %s  %-34s measured %.3e  tol %.1e  (%.1f s)", o.id, o.pass ? "PASS" : "FAIL",
                o.name.c_str(), o.measured, o.tol, o.seconds);
  return std::string(buf) + "  " + o.detail;
}

}  // namespace rsm::verify
