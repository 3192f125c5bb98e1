#include <cmath>
#include <numeric>

#include "rsm/eisenstein.hpp"
#include "rsm/lseries.hpp"

namespace rsm {

namespace {

double coefficient_tail(double sigma, i64 M, double growth) {
  // terms bounded by d(m)^3 m^{growth - sigma}; crude explicit bound with eps = 0.25
  const double eps = 0.25;
  double ex = sigma - growth - 1.0 - 3.0 * eps;
  if (ex <= 0) return INFINITY;
  return std::pow(divisor_bound_constant(eps), 3) * std::pow(static_cast<double>(M), -ex) / ex;
}

cplx local_factor_raw(cplx s, cplx t, cplx ir, i64 p, i64 N, i64 a) {
  const double pd = static_cast<double>(p);
  auto P = [&](cplx x) { return rpow(pd, x); };
  const cplx it = I * t;
  const int e = ord_p(N / a, p);
  const bool in_a = a % p == 0;
  const bool in_Na = e > 0;
  cplx sig = 0.0;
  for (int j = 0; j <= e; ++j) sig += P(2.0 * ir * static_cast<double>(j));
  const cplx d2 = 1.0 - P(-2.0 * it);
  if (in_a && in_Na) {
    cplx zp = (1.0 - P(-s - it - ir)) * (1.0 - P(-s + it - ir)) * (1.0 - P(-s - it + ir)) * (1.0 - P(-s + it + ir));
    cplx inner = 1.0 - P(-1.0 + 2.0 * ir) +
                 (P(-2.0 * it) * (1.0 - P(1.0 + 2.0 * it)) * (1.0 - P(-s - it + ir)) +
                  (pd - 1.0) * (1.0 - P(-s + it + ir))) / d2;
    cplx first = zp * P(-(e - 1.0) * (s - it + ir)) * (-1.0 + inner * P(-2.0 * ir) * (sig - 1.0));
    cplx br = P(-4.0 * it) * (1.0 - P(1.0 + 2.0 * it)) * (1.0 - P(-1.0 + s + it + ir)) * (1.0 - P(-s + it - ir)) *
                  (sig * (1.0 - P(-s - it - ir)) + P(-s - it - ir)) +
              (pd - 1.0) * (1.0 - P(-1.0 + s - it + ir)) * (1.0 - P(-s - it - ir)) *
                  (sig * (1.0 - P(-s + it - ir)) + P(-s + it - ir));
    cplx second = P(-static_cast<double>(e) * (s - it + ir)) * (1.0 - P(-s - it + ir)) * (1.0 - P(-s + it + ir)) / d2 * br;
    return first + second;
  }
  if (in_a) {
    return (P(-4.0 * it) * (1.0 - P(1.0 + 2.0 * it)) * (1.0 - P(-1.0 + s + it + ir)) * (1.0 - P(-s + it - ir)) *
                (1.0 - P(-s + it + ir)) +
            (pd - 1.0) * (1.0 - P(-1.0 + s - it + ir)) * (1.0 - P(-s - it - ir)) * (1.0 - P(-s - it + ir))) /
           d2;
  }
  // p | N/a, p does not divide a
  cplx br = -(1.0 - P(-s + it - ir)) * (1.0 - P(-s - it - ir)) +
            (P(-2.0 * it) * (1.0 - P(1.0 + 2.0 * it)) * (1.0 - P(-s + it - ir)) * P(-s - it - ir) +
             (pd - 1.0) * (1.0 - P(-s - it - ir)) * P(-s + it - ir)) / d2;
  return P(-(e - 1.0) * (s - it + ir)) * (1.0 - P(-s - it + ir)) * (1.0 - P(-s + it + ir)) * br;
}

}  // namespace

cplx scrP_local(cplx s, cplx t, cplx ir, i64 p, i64 N, i64 a) {
  if (N % p != 0) throw Error(ErrorKind::domain, "scrP_local: p must divide N");
  // 1 - p^{-2it} vanishes at t = 0; the factor is regular there, take a circle mean in t
  if (std::abs(t) < 1e-3) {
    const int K = 16;
    const double rho = 1e-2;
    cplx acc = 0.0;
    for (int j = 0; j < K; ++j) acc += local_factor_raw(s, t + std::polar(rho, 2.0 * pi * (j + 0.5) / K), ir, p, N, a);
    return acc / static_cast<double>(K);
  }
  return local_factor_raw(s, t, ir, p, N, a);
}

cplx scrP_eisenstein(cplx s, cplx t, cplx ir, const CuspLabel& cu) {
  const i64 N = cu.N, a = cu.a;
  const i64 g = std::gcd(a, N / a);
  const cplx it = I * t;
  cplx pre = 2.0 * rpow(static_cast<double>(N), -2.0 * it) / static_cast<double>(radical(N)) *
             rpow(static_cast<double>(N / g), -0.5 + ir) * rpow(static_cast<double>(a), -s + 0.5 + it) /
             static_cast<double>(euler_phi(g));
  for (i64 p : prime_divisors(N)) pre *= scrP_local(s, t, ir, p, N, a);
  return pre;
}

cplx curly_L_eisenstein(cplx s, cplx t, cplx ir, const CuspLabel& cu) {
  const cplx it = I * t;
  cplx num = riemann_zeta(s + it + ir) * riemann_zeta(s - it + ir) * riemann_zeta(s + it - ir) *
             riemann_zeta(s - it - ir);
  cplx den = rpow(pi, -0.5 + ir) * complex_gamma(0.5 - ir) * zeta_depleted(1.0 - 2.0 * ir, cu.N);
  return scrP_eisenstein(s, t, ir, cu) * num / den;
}

SeriesValue curly_L_eisenstein_direct(cplx s, cplx t, cplx ir, const CuspLabel& cu, i64 M) {
  if (s.real() <= 1.5 + std::abs(ir.real()) + std::abs(t.imag()))
    throw Error(ErrorKind::region, "curly_L_eisenstein_direct: needs Re s > 3/2");
  // conj(tau(1/2 + ir; m)) continued analytically as tau(1/2 - ir; -m)
  TauCuspEvaluator tau(cu, 0.5 - ir);
  const cplx it = I * t;
  cplx acc = 0.0;
  for (i64 m = M; m >= 1; --m) {
    cplx sg = sigma_twisted_N(m, cu.N, t);
    if (sg == 0.0) continue;
    acc += sg * tau(-m) * rpow(static_cast<double>(m), it - s);
  }
  cplx z = zeta_depleted(2.0 * s, cu.N);
  double growth = std::abs(t.imag()) + std::abs(ir.real()) + 0.0;
  return {z * acc, std::abs(z) * 2.0 * coefficient_tail(s.real(), M, growth)};
}

SeriesValue curly_L_maass_direct(cplx s, cplx t, const MaassFormData& u, i64 M) {
  if (s.real() <= 1.5) throw Error(ErrorKind::region, "curly_L_maass_direct: needs Re s > 3/2");
  const cplx it = I * t;
  cplx acc = 0.0;
  for (i64 m = M; m >= 1; --m) {
    cplx sg = sigma_twisted_N(m, u.N, t);
    if (sg == 0.0) continue;
    acc += sg * u.rho(m) * rpow(static_cast<double>(m), it - s);
  }
  cplx z = zeta_depleted(2.0 * s, u.N);
  return {z * acc, std::abs(z) * std::abs(u.rho1) * coefficient_tail(s.real(), M, std::abs(t.imag()))};
}

cplx maass_L(cplx s, const MaassFormData& u) {
  if (s.real() <= 1.0) throw Error(ErrorKind::region, "maass_L: Euler product needs Re s > 1");
  cplx acc = 1.0;
  const i64 M = u.M();
  std::vector<bool> comp(static_cast<std::size_t>(M + 1), false);
  for (i64 p = 2; p <= M; ++p) {
    if (comp[static_cast<std::size_t>(p)]) continue;
    for (i64 q = p * p; q <= M; q += p) comp[static_cast<std::size_t>(q)] = true;
    cplx x = rpow(static_cast<double>(p), -s);
    double chi0 = u.L % p == 0 ? 0.0 : 1.0;
    acc /= 1.0 - u.lam(p) * x + chi0 * x * x;
  }
  return acc;
}

cplx curly_L_maass_lemma(cplx s, cplx t, const MaassFormData& u) {
  const i64 N = u.N, L = u.L;
  const cplx it = I * t;
  cplx sum = 0.0;
  for (const auto& [d, cd] : u.c) {
    cplx P = 1.0;
    for (i64 p : prime_divisors(N)) {
      const double pd = static_cast<double>(p);
      const int e = ord_p(N / d, p);
      auto lp = [&](int j) -> double {
        if (j < 0) return 0.0;
        i64 q = 1;
        for (int i = 0; i < j; ++i) q *= p;
        return u.lam(q);
      };
      if (L % p == 0) {
        P *= lp(e - 1) * (-rpow(pd, -1.0 + s - it) + lp(1));
      } else if (e > 0) {
        cplx br = pd - lp(1) * rpow(pd, -s - it) -
                  ((pd - 1.0) * (1.0 + rpow(pd, -2.0 * it)) - rpow(pd, -4.0 * it)) + rpow(pd, 1.0 - 2.0 * s);
        P *= br / pd * lp(e - 2) + lp(e);
      } else {
        P *= (lp(1) * rpow(pd, -s - it) - (1.0 + rpow(pd, -2.0 * it)) * rpow(pd, -2.0 * s)) / pd;
      }
    }
    sum += cd * u.rho1 * rpow(static_cast<double>(d), 0.5 - it) * P;
  }
  return maass_L(s + it, u) * maass_L(s - it, u) * rpow(static_cast<double>(N), -s - it) * sum;
}

cplx curly_L_maass(cplx s, cplx t, const MaassFormData& u) {
  const i64 N = u.N, L = u.L;
  const cplx it = I * t;
  if (s.real() <= 0.5) throw Error(ErrorKind::region, "curly_L_maass: local sums need Re s > 1/2");
  cplx outer = rpow(static_cast<double>(N), -2.0 * it) / static_cast<double>(radical(N));
  for (i64 p : prime_divisors(N)) {
    const double pd = static_cast<double>(p);
    double chi0 = L % p == 0 ? 0.0 : 1.0;
    for (cplx w : {s + it, s - it}) outer *= 1.0 - u.lam(p) * rpow(pd, -w) + chi0 * rpow(pd, -2.0 * w);
  }
  cplx sum = 0.0;
  for (const auto& [d, cd] : u.c) {
    cplx prod = 1.0;
    for (i64 p : prime_divisors(N)) {
      const double pd = static_cast<double>(p);
      const int nu = ord_p(N, p), delta = ord_p(d, p);
      const double chi0 = L % p == 0 ? 0.0 : 1.0;
      const cplx step = rpow(pd, it - s);
      // sum over e >= 0 of P_p(1/2+it; p^{e+delta}) p^{(e+delta)(it-s)} lambda(p^e), with the support condition
      double lprev = 0.0, lcur = 1.0;
      cplx local = 0.0, pw = rpow(pd, static_cast<double>(delta) * (it - s));
      for (int e = 0; e < 400; ++e) {
        if (e + delta >= nu - 1) {
          cplx term = P_local(0.5 + it, e + delta, p, nu) * pw * lcur;
          local += term;
          if (e > 4 && std::abs(term) < 1e-18 * std::abs(local)) break;
        }
        double lnext = u.lam(p) * lcur - chi0 * lprev;
        lprev = lcur;
        lcur = lnext;
        pw *= step;
      }
      prod *= local;
    }
    sum += cd * std::sqrt(static_cast<double>(d)) * u.rho1 * prod;
  }
  return maass_L(s + it, u) * maass_L(s - it, u) * outer * sum;
}

}  // namespace rsm
