#include "rsm/moments.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <numeric>
#include <tuple>

#include "rsm/eisenstein.hpp"

namespace rsm {

cplx RSProvider::at_cusp(const CuspLabel& cusp, cplx s) const {
  if (cusp.a == cusp.N) return L(s);
  if (!L_cusp) throw Error(ErrorKind::missing_data, "no L-values for cusp 1/(" + std::to_string(cusp.c) + "*" +
                                                        std::to_string(cusp.a) + ") at level " + std::to_string(cusp.N));
  return L_cusp(cusp, s);
}

std::shared_ptr<const RSProvider> rs_level1(const NewformData& f, const NewformData& g) {
  const bool same = (&f == &g) || (f.k == g.k && f.a == g.a);
  auto L = std::make_shared<SelfDualL>(rankin_selberg_level1(f, g, same));
  auto out = std::make_shared<RSProvider>();
  out->L = [L](cplx s) { return (*L)(s); };
  out->same_form = same;
  if (same) {
    out->residue = L->residue();
    out->laurent_c0 = laurent_constant_at_1(*L);
  }
  return out;
}

std::shared_ptr<const RSProvider> MomentContext::provider() const {
  if (rs) return rs;
  if (N != 1) throw Error(ErrorKind::missing_data, "main term at level N > 1 needs supplied L-values (no cusp data)");
  if (!f || !g) throw Error(ErrorKind::missing_data, "main term: newforms not supplied");
  return rs_level1(*f, *g);
}

KernelContext MomentContext::kernel_at_t() const {
  KernelContext k = kernel;
  k.t = t;
  if (f) k.k = f->k;
  return k;
}

void MomentContext::validate() const {
  if (N < 1) throw Error(ErrorKind::domain, "moment context: N must be positive");
  if (tprime_sign != 1 && tprime_sign != -1) throw Error(ErrorKind::domain, "moment context: t' sign must be +1 or -1");
  if (f && g && (f->k != g->k)) throw Error(ErrorKind::invariant, "moment context: weights of f and g differ");
  if (f && f->N != N) throw Error(ErrorKind::invariant, "moment context: level of f differs from N");
  if (g && g->N != N) throw Error(ErrorKind::invariant, "moment context: level of g differs from N");
  kernel.params.validate();
}

namespace {

constexpr double kPoleGap = 1e-4;

cplx zeta(cplx s) { return riemann_zeta(s); }
cplx pw(double p, cplx z) { return rpow(p, z); }
double two_pi() { return 2.0 * pi; }

void near_pole(cplx z, cplx at, const std::string& what) {
  if (std::abs(z - at) < kPoleGap) throw Error(ErrorKind::pole, "main term: pole of " + what);
}

// (a/g)^{-s+3/2-it} prod_{p|N/a} (1-p^{1-2s})(1-p^{-2it}) prod_{p|a, p not| N/a} (1-p^{-1})^2, over
// prod_{p|N}(1-p^{-3+2s+2it}); half the closed form of the Euler polynomial quotient times N^{1/2+s+it}
cplx cusp_weight(const CuspLabel& cu, cplx s, cplx it) {
  const i64 N = cu.N, a = cu.a, b = N / a;
  const double g = static_cast<double>(std::gcd(a, b));
  cplx w = pw(static_cast<double>(a) / g, -s + 1.5 - it);
  for (i64 pi_ : prime_divisors(N)) {
    const double p = static_cast<double>(pi_);
    if (b % pi_ == 0)
      w *= (1.0 - pw(p, 1.0 - 2.0 * s)) * (1.0 - pw(p, -2.0 * it));
    else
      w *= (1.0 - 1.0 / p) * (1.0 - 1.0 / p);
    w /= 1.0 - pw(p, -3.0 + 2.0 * s + 2.0 * it);
  }
  return w;
}


}  // namespace

cplx main_term(const MomentContext& ctx) {
  ctx.validate();
  const cplx s = ctx.s, t = ctx.t, it = I * t;
  near_pole(s, 0.5, "zeta(2s) and zeta(2-2s) at s = 1/2");
  near_pole(t, 0.0, "zeta(1+-2it) at t = 0");
  auto rs = ctx.provider();
  if (rs->same_form) {
    near_pole(s + 0.5 + it, 1.0, "L(s+1/2+it) at s = 1/2-it");
    near_pole(s + 0.5 - it, 1.0, "L(s+1/2-it) at s = 1/2+it");
  }
  const KernelContext kc = ctx.kernel_at_t();
  const i64 N = ctx.N;
  const double Nd = static_cast<double>(N);
  const double tp = two_pi();

  cplx e1 = euler_product(N, [&](double p) {
    return (1.0 - pw(p, -2.0 * s)) * (1.0 - pw(p, -1.0 - 2.0 * it)) / (1.0 - pw(p, -2.0 * s - 1.0 - 2.0 * it));
  });
  cplx T1 = zeta(2.0 * s) * zeta(1.0 + 2.0 * it) * H0(0.0, kc) * e1 * rs->L(s + 0.5 + it) / zeta(2.0 * s + 1.0 + 2.0 * it);

  cplx e2 = euler_product(N, [&](double p) {
    return (1.0 - 1.0 / p) * (1.0 - pw(p, -2.0 * s)) / (1.0 - pw(p, -2.0 * s - 1.0 + 2.0 * it));
  });
  cplx T2 = rpow(tp, 4.0 * it) * zeta(2.0 * s) * zeta(1.0 - 2.0 * it) * H0(-2.0 * it, kc) * rpow(Nd, -2.0 * it) * e2 *
            rs->L(s + 0.5 - it) / zeta(2.0 * s + 1.0 - 2.0 * it);

  cplx csum = 0.0;
  for (const auto& cu : enumerate_cusps(N)) csum += cusp_weight(cu, s, it) * rs->at_cusp(cu, 1.5 - s - it);
  cplx T3 = rpow(tp, 4.0 * s - 2.0 + 4.0 * it) * zeta(2.0 - 2.0 * s) * zeta(1.0 - 2.0 * it) *
            H0(-2.0 * s + 1.0 - 2.0 * it, kc) * rpow(Nd, -0.5 - s - it) * csum / zeta(3.0 - 2.0 * s - 2.0 * it);

  cplx e4 = euler_product(N, [&](double p) {
    return (1.0 - pw(p, -1.0 - 2.0 * it)) * (1.0 - 1.0 / p) / (1.0 - pw(p, -3.0 + 2.0 * s - 2.0 * it));
  });
  cplx T4 = rpow(tp, 4.0 * s - 2.0) * zeta(2.0 - 2.0 * s) * zeta(1.0 + 2.0 * it) * H0(-2.0 * s + 1.0, kc) *
            rpow(Nd, 1.0 - 2.0 * s) * e4 * rs->L(1.5 - s + it) / zeta(3.0 - 2.0 * s + 2.0 * it);
  return T1 + T2 + T3 + T4;
}

cplx main_term_N1(const MomentContext& ctx) {
  if (ctx.N != 1) throw Error(ErrorKind::domain, "main_term_N1: level must be 1");
  ctx.validate();
  const cplx s = ctx.s, it = I * ctx.t;
  near_pole(s, 0.5, "zeta(2s) and zeta(2-2s) at s = 1/2");
  near_pole(ctx.t, 0.0, "zeta(1+-2it) at t = 0");
  auto rs = ctx.provider();
  const KernelContext kc = ctx.kernel_at_t();
  const double tp = two_pi();
  cplx a = zeta(2.0 * s) * zeta(1.0 + 2.0 * it) * H0(0.0, kc) * rs->L(s + 0.5 + it) / zeta(2.0 * s + 1.0 + 2.0 * it);
  cplx b = rpow(tp, 4.0 * it) * zeta(2.0 * s) * zeta(1.0 - 2.0 * it) * H0(-2.0 * it, kc) * rs->L(s + 0.5 - it) /
           zeta(2.0 * s + 1.0 - 2.0 * it);
  cplx c = rpow(tp, 4.0 * s - 2.0 + 4.0 * it) * zeta(2.0 - 2.0 * s) * zeta(1.0 - 2.0 * it) *
           H0(-2.0 * s + 1.0 - 2.0 * it, kc) * rs->L(1.5 - s - it) / zeta(3.0 - 2.0 * s - 2.0 * it);
  cplx d = rpow(tp, 4.0 * s - 2.0) * zeta(2.0 - 2.0 * s) * zeta(1.0 + 2.0 * it) * H0(-2.0 * s + 1.0, kc) *
           rs->L(1.5 - s + it) / zeta(3.0 - 2.0 * s + 2.0 * it);
  return a + b + c + d;
}

const char* specialization_name(Specialization w) {
  switch (w) {
    case Specialization::fneq_minus: return "fneq_minus";
    case Specialization::fneq_plus: return "fneq_plus";
    case Specialization::feq_minus: return "feq_minus";
    case Specialization::feq_plus: return "feq_plus";
  }
  return "?";
}

namespace {

cplx log_deriv_zeta(cplx s) { return riemann_zeta_deriv(s) / riemann_zeta(s); }

// the cusp sum of the fourth display at s = 1/2 + it
cplx plus_cusp_sum(const RSProvider& rs, i64 N, cplx it) {
  cplx acc = 0.0;
  for (const auto& cu : enumerate_cusps(N)) {
    const i64 a = cu.a, b = N / a;
    const double g = static_cast<double>(std::gcd(a, b));
    cplx w = pw(static_cast<double>(a) / g, 1.0 - 2.0 * it);
    for (i64 q : prime_divisors(N)) {
      const double p = static_cast<double>(q);
      cplx num = b % q == 0 ? (1.0 - pw(p, -2.0 * it)) * (1.0 - pw(p, -2.0 * it)) : cplx((1.0 - 1.0 / p) * (1.0 - 1.0 / p));
      w *= num / (1.0 - pw(p, -2.0 + 4.0 * it));
    }
    acc += w * rs.at_cusp(cu, 1.0 - 2.0 * it);
  }
  return acc;
}

cplx specialized_fneq_minus(const MomentContext& ctx, const RSProvider& rs, const KernelContext& kc) {
  const cplx it = I * ctx.t;
  const i64 N = ctx.N;
  const double Nd = static_cast<double>(N), tp = two_pi();
  const cplx zz = zeta(1.0 - 2.0 * it) * zeta(1.0 + 2.0 * it);
  const cplx h00 = H0(0.0, kc);
  cplx a = zz * h00 *
           euler_product(N, [&](double p) { return (1.0 - pw(p, -1.0 + 2.0 * it)) * (1.0 - pw(p, -1.0 - 2.0 * it)) / (1.0 - 1.0 / (p * p)); }) *
           rs.L(1.0) / zeta(2.0);
  cplx csum = 0.0;
  for (const auto& cu : enumerate_cusps(N)) {
    const i64 ca = cu.a, b = N / ca;
    cplx w = static_cast<double>(ca) / static_cast<double>(std::gcd(ca, b));
    for (i64 q : prime_divisors(N)) {
      const double p = static_cast<double>(q);
      if (b % q == 0)
        w *= (1.0 - pw(p, 2.0 * it)) * (1.0 - pw(p, -2.0 * it)) / (1.0 - 1.0 / (p * p));
      else
        w *= (1.0 - 1.0 / p) / (1.0 + 1.0 / p);
    }
    csum += w * rs.at_cusp(cu, 1.0) / zeta(2.0);
  }
  cplx b = zz * h00 / Nd * csum;
  cplx c = rpow(tp, 4.0 * it) * zeta(1.0 - 2.0 * it) * zeta(1.0 - 2.0 * it) * H0(-2.0 * it, kc) * rpow(Nd, -2.0 * it) *
           euler_product(N, [&](double p) { return (1.0 - 1.0 / p) * (1.0 - pw(p, -1.0 + 2.0 * it)) / (1.0 - pw(p, -2.0 + 4.0 * it)); }) *
           rs.L(1.0 - 2.0 * it) / zeta(2.0 - 4.0 * it);
  cplx d = rpow(tp, -4.0 * it) * zeta(1.0 + 2.0 * it) * zeta(1.0 + 2.0 * it) * H0(2.0 * it, kc) * rpow(Nd, 2.0 * it) *
           euler_product(N, [&](double p) { return (1.0 - pw(p, -1.0 - 2.0 * it)) * (1.0 - 1.0 / p) / (1.0 - pw(p, -2.0 - 4.0 * it)); }) *
           rs.L(1.0 + 2.0 * it) / zeta(2.0 + 4.0 * it);
  return a + b + c + d;
}

cplx specialized_fneq_plus(const MomentContext& ctx, const RSProvider& rs, const KernelContext& kc) {
  const cplx it = I * ctx.t;
  const i64 N = ctx.N;
  const double Nd = static_cast<double>(N), tp = two_pi();
  cplx a = 2.0 * rpow(tp, 4.0 * it) * zeta(1.0 + 2.0 * it) * zeta(1.0 - 2.0 * it) * H0(-2.0 * it, kc) * rpow(Nd, -2.0 * it) *
           euler_product(N, [&](double p) { return (1.0 - 1.0 / p) * (1.0 - pw(p, -1.0 - 2.0 * it)) / (1.0 - 1.0 / (p * p)); }) *
           rs.L(1.0) / zeta(2.0);
  cplx b = zeta(1.0 + 2.0 * it) * zeta(1.0 + 2.0 * it) * H0(0.0, kc) *
           euler_product(N, [&](double p) { cplx x = 1.0 - pw(p, -1.0 - 2.0 * it); return x * x / (1.0 - pw(p, -2.0 - 4.0 * it)); }) *
           rs.L(1.0 + 2.0 * it) / zeta(2.0 + 4.0 * it);
  cplx c = rpow(tp, 8.0 * it) * zeta(1.0 - 2.0 * it) * zeta(1.0 - 2.0 * it) * H0(-4.0 * it, kc) * rpow(Nd, -1.0 - 2.0 * it) *
           plus_cusp_sum(rs, N, it) / zeta(2.0 - 4.0 * it);
  return a + b + c;
}

cplx specialized_feq_minus(const MomentContext& ctx, const RSProvider& rs, const KernelContext& kc, bool printed) {
  const cplx it = I * ctx.t;
  const i64 N = ctx.N;
  const double Nd = static_cast<double>(N), tp = two_pi();
  const double R = rs.residue;
  const cplx Z = zeta(1.0 - 2.0 * it) * zeta(1.0 + 2.0 * it) / zeta(2.0);
  const cplx E = euler_product(N, [&](double p) { return (1.0 - pw(p, -1.0 + 2.0 * it)) * (1.0 - pw(p, -1.0 - 2.0 * it)) / (1.0 - 1.0 / (p * p)); });
  const cplx h00 = H0(0.0, kc);

  cplx a = -Z * H0_derivative(H0Variant::minus, 1, kc) * E * R;

  cplx lsum = 0.0;
  for (i64 ca : divisors(N)) {
    const i64 b = N / ca, g = std::gcd(ca, b);
    cplx w = static_cast<double>(ca);
    cplx lg = -std::log(static_cast<double>(ca) / static_cast<double>(g));
    for (i64 q : prime_divisors(N)) {
      const double p = static_cast<double>(q);
      if (b % q == 0) {
        w *= (1.0 - pw(p, 2.0 * it)) * (1.0 - pw(p, -2.0 * it));
        if (printed) {
          lg += 2.0 * std::log(p);
        } else {
          cplx x = pw(p, 2.0 * it);
          lg += 2.0 * std::log(p) * x / (1.0 - x);
        }
      } else {
        w *= (1.0 - 1.0 / p) * (1.0 - 1.0 / p);
      }
      if (g % q == 0) w *= 1.0 - 1.0 / p;
    }
    lsum += w * lg;
  }
  cplx b = -Z * h00 / Nd * euler_product(N, [](double p) { return cplx(1.0 / (1.0 - 1.0 / (p * p))); }) * lsum * R;

  cplx brace = 2.0 * log_deriv_zeta(1.0 - 2.0 * it) + 2.0 * log_deriv_zeta(1.0 + 2.0 * it) - 4.0 * log_deriv_zeta(2.0) -
               4.0 * std::log(tp) + std::log(Nd);
  for (i64 q : prime_divisors(N)) {
    const double p = static_cast<double>(q);
    if (printed) {
      brace += 2.0 * std::log(p) / (1.0 - pw(p, -1.0 + 2.0 * it));
    } else {
      cplx x = pw(p, -1.0 + 2.0 * it);
      brace += 2.0 * std::log(p) * x / (1.0 - x) - 4.0 * std::log(p) / (p * p - 1.0);
    }
  }
  cplx c = Z * h00 * E * brace * R;
  cplx d = 2.0 * Z * h00 * E * rs.laurent_c0;
  cplx e = rpow(tp, 4.0 * it) * zeta(1.0 - 2.0 * it) * zeta(1.0 - 2.0 * it) * H0(-2.0 * it, kc) * rpow(Nd, -2.0 * it) *
           euler_product(N, [&](double p) { return (1.0 - 1.0 / p) * (1.0 - pw(p, -1.0 + 2.0 * it)) / (1.0 - pw(p, -2.0 + 4.0 * it)); }) *
           rs.L(1.0 - 2.0 * it) / zeta(2.0 - 4.0 * it);
  cplx f = rpow(tp, -4.0 * it) * zeta(1.0 + 2.0 * it) * zeta(1.0 + 2.0 * it) * H0(2.0 * it, kc) * rpow(Nd, 2.0 * it) *
           euler_product(N, [&](double p) { return (1.0 - pw(p, -1.0 - 2.0 * it)) * (1.0 - 1.0 / p) / (1.0 - pw(p, -2.0 - 4.0 * it)); }) *
           rs.L(1.0 + 2.0 * it) / zeta(2.0 + 4.0 * it);
  return a + b + c + d + e + f;
}

cplx specialized_feq_plus(const MomentContext& ctx, const RSProvider& rs, const KernelContext& kc, bool printed) {
  const cplx it = I * ctx.t;
  const i64 N = ctx.N;
  const double Nd = static_cast<double>(N), tp = two_pi();
  const double R = rs.residue;
  const cplx X0 = rpow(tp, 4.0 * it) * zeta(1.0 + 2.0 * it) * zeta(1.0 - 2.0 * it) / zeta(2.0) * rpow(Nd, -2.0 * it) *
                  euler_product(N, [&](double p) { return (1.0 - pw(p, -1.0 - 2.0 * it)) / (1.0 + 1.0 / p); });
  const cplx hm = H0(-2.0 * it, kc);
  cplx a = -X0 * H0_derivative(H0Variant::plus, 1, kc) * R;
  cplx brace = 2.0 * log_deriv_zeta(1.0 + 2.0 * it) + 2.0 * log_deriv_zeta(1.0 - 2.0 * it) - 4.0 * log_deriv_zeta(2.0) -
               4.0 * std::log(tp) + 2.0 * std::log(Nd);
  for (i64 q : prime_divisors(N)) {
    const double p = static_cast<double>(q);
    cplx x = pw(p, -1.0 - 2.0 * it);
    brace += 2.0 * std::log(p) * x / (1.0 - x);
    // d/ds of log zeta^(N) at 2 carries the local terms too
    if (!printed) brace -= 4.0 * std::log(p) / (p * p - 1.0);
  }
  cplx b = X0 * hm * brace * R;
  cplx c = 2.0 * X0 * hm * rs.laurent_c0;
  cplx d = zeta(1.0 + 2.0 * it) * zeta(1.0 + 2.0 * it) * H0(0.0, kc) *
           euler_product(N, [&](double p) { cplx x = pw(p, -1.0 - 2.0 * it); return (1.0 - x) / (1.0 + x); }) *
           rs.L(1.0 + 2.0 * it) / zeta(2.0 + 4.0 * it);
  cplx e = rpow(tp, 8.0 * it) * zeta(1.0 - 2.0 * it) * zeta(1.0 - 2.0 * it) * H0(-4.0 * it, kc) * rpow(Nd, -1.0 - 2.0 * it) *
           plus_cusp_sum(rs, N, it) / zeta(2.0 - 4.0 * it);
  return a + b + c + d + e;
}

}  // namespace

namespace {

cplx specialized_dispatch(const MomentContext& ctx, Specialization which, bool printed) {
  ctx.validate();
  auto rs = ctx.provider();
  const bool feq = which == Specialization::feq_minus || which == Specialization::feq_plus;
  if (feq != rs->same_form)
    throw Error(ErrorKind::domain, std::string("main_term_specialized: ") + specialization_name(which) +
                                       (feq ? " needs f = g" : " needs f != g"));
  const KernelContext kc = ctx.kernel_at_t();
  switch (which) {
    case Specialization::fneq_minus: return specialized_fneq_minus(ctx, *rs, kc);
    case Specialization::fneq_plus: return specialized_fneq_plus(ctx, *rs, kc);
    case Specialization::feq_minus: return specialized_feq_minus(ctx, *rs, kc, printed);
    case Specialization::feq_plus: return specialized_feq_plus(ctx, *rs, kc, printed);
  }
  return 0.0;
}

}  // namespace

cplx main_term_specialized_raw(const MomentContext& ctx, Specialization which) {
  return specialized_dispatch(ctx, which, false);
}

cplx main_term_specialized_printed(const MomentContext& ctx, Specialization which) {
  return specialized_dispatch(ctx, which, true);
}

cplx main_term_specialized(const MomentContext& ctx, Specialization which) {
  if (std::abs(ctx.t) >= 1e-3) return main_term_specialized_raw(ctx, which);
  // the displays have cancelling poles at t = 0; take the constant term on a circle
  MomentContext c = ctx;
  if (!c.rs) c.rs = ctx.provider();
  const int n = 64;
  const double rad = 0.05;
  cplx acc = 0.0;
  for (int j = 0; j < n; ++j) {
    c.t = ctx.t + rad * std::exp(I * (2.0 * pi * (j + 0.5) / n));
    acc += main_term_specialized_raw(c, which);
  }
  return acc / static_cast<double>(n);
}

cplx evaluate_main_term(const MomentContext& ctx) {
  auto rs = ctx.provider();
  MomentContext c = ctx;
  c.rs = rs;
  const cplx it = I * ctx.t;
  if (std::abs(ctx.s - (0.5 - it)) < kPoleGap)
    return main_term_specialized(c, rs->same_form ? Specialization::feq_minus : Specialization::fneq_minus);
  if (std::abs(ctx.s - (0.5 + it)) < kPoleGap)
    return main_term_specialized(c, rs->same_form ? Specialization::feq_plus : Specialization::fneq_plus);
  return main_term(c);
}

cplx main_term_circle_limit(const MomentContext& ctx, double radius, int points) {
  MomentContext c = ctx;
  c.rs = ctx.provider();
  cplx acc = 0.0;
  for (int j = 0; j < points; ++j) {
    c.s = ctx.s + radius * std::exp(I * (2.0 * pi * (j + 0.5) / points));
    acc += main_term(c);
  }
  return acc / static_cast<double>(points);
}

cplx main_term_M1(const MomentContext& ctx) {
  ctx.validate();
  const cplx s = ctx.s, it = I * ctx.t;
  auto rs = ctx.provider();
  const KernelContext kc = ctx.kernel_at_t();
  const i64 N = ctx.N;
  cplx a = zeta(2.0 * s) * zeta(1.0 + 2.0 * it) / zeta(2.0 * s + 1.0 + 2.0 * it) *
           euler_product(N, [&](double p) {
             return (1.0 - pw(p, -2.0 * s)) * (1.0 - pw(p, -1.0 - 2.0 * it)) / (1.0 - pw(p, -2.0 * s - 1.0 - 2.0 * it));
           }) *
           rs->L(s + 0.5 + it) * H0(0.0, kc);
  cplx b = rpow(two_pi(), 4.0 * it) * zeta(2.0 * s) * zeta(1.0 - 2.0 * it) / zeta(2.0 * s + 1.0 - 2.0 * it) *
           rpow(static_cast<double>(N), -2.0 * it) *
           euler_product(N, [&](double p) {
             return (1.0 - 1.0 / p) * (1.0 - pw(p, -2.0 * s)) / (1.0 - pw(p, -2.0 * s - 1.0 + 2.0 * it));
           }) *
           rs->L(s + 0.5 - it) * H0(-2.0 * it, kc);
  return a + b;
}

MainTermBreakdown main_term_breakdown(const MomentContext& ctx, DenominatorConvention conv) {
  ctx.validate();
  const cplx s = ctx.s, t = ctx.t, it = I * t;
  near_pole(s, 0.5, "zeta(2s) and zeta(2-2s) at s = 1/2");
  near_pole(t, 0.0, "zeta(1+-2it) at t = 0");
  auto rs = ctx.provider();
  MomentContext c = ctx;
  c.rs = rs;
  const KernelContext kc = ctx.kernel_at_t();
  const i64 N = ctx.N;
  const double tp = two_pi();

  auto zden = [&](cplx x) { return conv == DenominatorConvention::depleted ? zeta_depleted(x, N) : zeta(x); };
  // sum over cusps of P_a(s, it; 1-s+sg*it)/prod(1-p^{1-2s+2 sg it}) L_a(3/2-s+sg*it)/zeta(3-2s+2 sg it)
  auto omega_sum = [&](double sg) {
    const cplx ir = 1.0 - s + sg * it;
    const cplx den = euler_product(N, [&](double p) { return 1.0 - pw(p, 1.0 - 2.0 * s + 2.0 * sg * it); });
    cplx acc = 0.0;
    for (const auto& cu : enumerate_cusps(N)) {
      cplx P = scrP_eisenstein(s, t, ir, cu);
      if (P == 0.0) continue;
      acc += P / den * rs->at_cusp(cu, 1.5 - s + sg * it);
    }
    return acc / zden(3.0 - 2.0 * s + 2.0 * sg * it);
  };
  const cplx SA = omega_sum(1.0), SB = omega_sum(-1.0);
  const cplx HA = H0(-2.0 * s + 1.0, kc), HB = H0(-2.0 * s + 1.0 - 2.0 * it, kc);
  const cplx z22 = zeta(2.0 - 2.0 * s);

  MainTermBreakdown out;
  out.M1 = main_term_M1(c);
  out.M_Omega_plus = 0.25 * z22 * rpow(tp, 2.0 * s - 1.0 + 2.0 * it) / std::cos(pi * (s + 0.5)) *
                     (rpow(tp, 2.0 * s - 1.0 - 2.0 * it) * zeta(1.0 + 2.0 * it) * std::cos(pi * (2.0 * s - it)) /
                          std::sin(pi * (s - it)) * SA * HA +
                      rpow(tp, 2.0 * s - 1.0 + 2.0 * it) * zeta(1.0 - 2.0 * it) * std::cos(pi * (2.0 * s + it)) /
                          std::sin(pi * (s + it)) * SB * HB);
  out.M_Omega_minus = 0.5 * z22 * rpow(tp, 4.0 * s - 2.0 + 2.0 * it) * std::cos(pi * it) / std::sin(pi * s) *
                      (rpow(tp, -2.0 * it) / std::sin(pi * (s - it)) * zeta(1.0 + 2.0 * it) * 0.5 * SA * HA +
                       rpow(tp, 2.0 * it) / std::sin(pi * (s + it)) * zeta(1.0 - 2.0 * it) * 0.5 * SB * HB);
  out.assembled = out.M1 + out.M_Omega_plus + out.M_Omega_minus;
  return out;
}

cplx euler_identity_sum(i64 N, cplx t) {
  const cplx it = I * t;
  cplx acc = 0.0;
  for (i64 a : divisors(N)) {
    const i64 b = N / a, g = std::gcd(a, b);
    cplx w = static_cast<double>(a);
    for (i64 q : prime_divisors(N)) {
      const double p = static_cast<double>(q);
      if (g % q == 0) w *= 1.0 - 1.0 / p;
      if (b % q == 0)
        w *= (1.0 - pw(p, 2.0 * it)) * (1.0 - pw(p, -2.0 * it));
      else
        w *= (1.0 - 1.0 / p) * (1.0 - 1.0 / p);
    }
    acc += w;
  }
  return acc;
}

cplx euler_identity_product(i64 N, cplx t) {
  const cplx it = I * t;
  return static_cast<double>(N) *
         euler_product(N, [&](double p) { return (1.0 - pw(p, -1.0 + 2.0 * it)) * (1.0 - pw(p, -1.0 - 2.0 * it)); });
}

double leading_coeff(double value, i64 N, int d) {
  if (d != 2 && d != 3) throw Error(ErrorKind::domain, "leading_coeff: degree must be 2 (f != g) or 3 (f = g)");
  double c = std::pow(2.0, d) * std::pow(pi, -1.5) * 2.0 / (pi * pi / 6.0) * value;
  for (i64 q : prime_divisors(N)) {
    const double p = static_cast<double>(q);
    c *= (1.0 - 1.0 / p) / (1.0 + 1.0 / p);
  }
  return c;
}

double leading_coeff(const RSProvider& rs, i64 N) {
  if (rs.same_form) return leading_coeff(rs.residue, N, 3);
  return leading_coeff(rs.L(1.0).real(), N, 2);
}

double spectral_weight(double r, const TestFunctionParams& p) {
  const double h = h_eval(r, p).real();
  const double x = pi * std::abs(r);
  // log cosh x = x + log1p(e^{-2x}) - log 2
  return h * std::exp(-(x + std::log1p(std::exp(-2.0 * x)) - std::log(2.0)));
}

cplx continuous_part(const MomentContext& ctx, bool symmetric) {
  if (ctx.N != 1) throw Error(ErrorKind::domain, "continuous_part: only level 1 is implemented");
  if (!ctx.f || !ctx.g) throw Error(ErrorKind::missing_data, "continuous_part: newforms not supplied");
  ctx.validate();
  const SelfDualL Lf = holomorphic_level1(*ctx.f), Lg = holomorphic_level1(*ctx.g);
  const cplx s = ctx.s, it = I * ctx.t;
  const auto& p = ctx.kernel.params;
  // real coefficients: L(conj z) = conj L(z); the four arguments repeat a lot (r -> -r, f = g, t = 0)
  std::map<std::tuple<const SelfDualL*, double, double>, cplx> memo;
  const bool same = ctx.f == ctx.g || (ctx.f->k == ctx.g->k && ctx.f->a == ctx.g->a);
  auto cached = [&](const SelfDualL& L, cplx z) {
    const SelfDualL* key_L = same ? &Lf : &L;
    const bool flip = z.imag() < 0;
    const cplx zc = flip ? std::conj(z) : z;
    auto key = std::make_tuple(key_L, zc.real(), zc.imag());
    auto found = memo.find(key);
    cplx v = found != memo.end() ? found->second : memo.emplace(key, L(zc)).first->second;
    return flip ? std::conj(v) : v;
  };
  // 1/zeta(1 +- 2ir) has poles a distance 1/4 off the axis, so the quadrature panels are short;
  // the L-values are entire in r and get interpolated from Chebyshev samples on longer blocks
  constexpr double block = 4.0, panel = 0.5;
  constexpr int cheb = 41;
  auto weight = [&](double r) {
    const cplx ir = I * r;
    cplx lw = std::log(h_eval(r, p)) - (pi * std::abs(r) + std::log1p(std::exp(-2.0 * pi * std::abs(r))) - std::log(2.0)) -
              log_gamma(0.5 + ir) - log_gamma(0.5 - ir);
    return std::exp(lw) / (zeta(1.0 + 2.0 * ir) * zeta(1.0 - 2.0 * ir));
  };
  const std::array<std::pair<const SelfDualL*, cplx>, 4> factors{
      {{&Lf, 0.5 + it}, {&Lf, 0.5 + it}, {&Lg, s}, {&Lg, s}}};
  const std::array<double, 4> sign{1.0, -1.0, 1.0, -1.0};
  using GL = boost::math::quadrature::gauss<double, 20>;
  auto block_sum = [&](double lo, double hi) {
    const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
    std::array<double, cheb> xk;
    std::array<std::array<cplx, cheb>, 4> fk;
    for (int k = 0; k < cheb; ++k) {
      xk[k] = std::cos(pi * k / (cheb - 1));
      const double r = mid + half * xk[k];
      for (int q = 0; q < 4; ++q) fk[q][k] = cached(*factors[q].first, factors[q].second + sign[q] * I * r);
    }
    auto interp = [&](int q, double r) {
      const double x = (r - mid) / half;
      cplx num = 0.0;
      double den = 0.0;
      for (int k = 0; k < cheb; ++k) {
        const double d = x - xk[k];
        if (d == 0.0) return fk[q][k];
        double wk = (k % 2 ? -1.0 : 1.0) * ((k == 0 || k == cheb - 1) ? 0.5 : 1.0) / d;
        num += wk * fk[q][k];
        den += wk;
      }
      return num / den;
    };
    auto integrand = [&](double r) {
      return weight(r) * interp(0, r) * interp(1, r) * interp(2, r) * interp(3, r);
    };
    const int n = std::max(1, static_cast<int>(std::ceil((hi - lo) / panel)));
    const double len = (hi - lo) / n;
    cplx acc = 0.0;
    for (int j = 0; j < n; ++j) {
      const double c = lo + (j + 0.5) * len;
      cplx part = 0.0;
      for (std::size_t i = 0; i < GL::abscissa().size(); ++i) {
        const double x = GL::abscissa()[i];
        part += GL::weights()[i] * integrand(c + 0.5 * len * x);
        if (x != 0.0) part += GL::weights()[i] * integrand(c - 0.5 * len * x);
      }
      acc += part * (0.5 * len);
    }
    return acc;
  };
  auto range_sum = [&](double lo, double hi) {
    const int n = std::max(1, static_cast<int>(std::ceil((hi - lo) / block)));
    const double len = (hi - lo) / n;
    cplx acc = 0.0;
    for (int j = 0; j < n; ++j) acc += block_sum(lo + j * len, lo + (j + 1) * len);
    return acc;
  };
  const double w = std::pow(p.T, p.alpha);
  const double W = std::min(ctx.kernel.window, 7.0) * w;
  const double lo = std::max(0.0, p.T - W), hi = p.T + W;
  if (symmetric) return 2.0 * range_sum(lo, hi);
  if (lo == 0.0) return range_sum(-hi, hi);
  return range_sum(-hi, -lo) + range_sum(lo, hi);
}

SeriesValue curly_L_newform_maass_direct(cplx s, const NewformData& f, const MaassFormData& u, i64 M) {
  if (s.real() <= 1.0) throw Error(ErrorKind::region, "curly L(f x u): direct series needs Re s > 1");
  if (M > f.M() || M > u.M()) throw Error(ErrorKind::missing_data, "curly L(f x u): truncation beyond stored coefficients");
  cplx acc = 0.0;
  for (i64 m = M; m >= 1; --m) acc += f.A(m) * u.rho(m) * rpow(static_cast<double>(m), -s);
  const cplx z = zeta_depleted(2.0 * s, f.N);
  const double C = divisor_bound_constant(0.1);
  const double ex = s.real() - 1.0 - 0.2;
  double tail = ex > 0 ? std::abs(z) * C * C * std::abs(u.rho1) * std::pow(static_cast<double>(M), -ex) / ex : INFINITY;
  return {z * acc, tail};
}

cplx discrete_moment_truncated(const MomentContext& ctx, const std::vector<MaassFormData>& forms,
                               const SpectralLValue& value) {
  if (forms.empty()) return 0.0;
  if (!ctx.f || !ctx.g) throw Error(ErrorKind::missing_data, "discrete moment: newforms not supplied");
  const cplx it = I * ctx.t;
  cplx acc = 0.0;
  for (const auto& u : forms) {
    const double w = spectral_weight(u.r, ctx.kernel.params);
    acc += w * value(0.5 + it, *ctx.f, u) * std::conj(value(std::conj(ctx.s), *ctx.g, u));
  }
  return acc;
}

cplx first_moment_M(i64 n, const MomentContext& ctx) {
  if (!ctx.f) throw Error(ErrorKind::missing_data, "first moment: f not supplied");
  if (n < 1 || n > ctx.f->M()) throw Error(ErrorKind::missing_data, "first moment: n outside stored coefficients");
  const KernelContext kc = ctx.kernel_at_t();
  const cplx it = I * ctx.t;
  const i64 N = ctx.N;
  const double nd = static_cast<double>(n), A = ctx.f->A(n);
  return zeta_depleted(1.0 + 2.0 * it, N) * A * rpow(nd, -0.5 - it) * H0(0.0, kc) +
         rpow(two_pi(), 4.0 * it) * zeta(1.0 - 2.0 * it) * rpow(static_cast<double>(N), -2.0 * it) *
             (static_cast<double>(euler_phi(N)) / static_cast<double>(N)) * A * rpow(nd, -0.5 + it) * H0(-2.0 * it, kc);
}

cplx first_moment_partial_sum(const MomentContext& ctx, i64 N0) {
  if (!ctx.f || !ctx.g) throw Error(ErrorKind::missing_data, "first moment: newforms not supplied");
  if (N0 > ctx.f->M() || N0 > ctx.g->M()) throw Error(ErrorKind::missing_data, "first moment: N0 beyond stored coefficients");
  const KernelContext kc = ctx.kernel_at_t();
  const cplx s = ctx.s, it = I * ctx.t;
  const i64 N = ctx.N;
  // M(1/2+it, f; n) = A(n) (c1 n^{-1/2-it} + c2 n^{-1/2+it})
  const cplx c1 = zeta_depleted(1.0 + 2.0 * it, N) * H0(0.0, kc);
  const cplx c2 = rpow(two_pi(), 4.0 * it) * zeta(1.0 - 2.0 * it) * rpow(static_cast<double>(N), -2.0 * it) *
                  (static_cast<double>(euler_phi(N)) / static_cast<double>(N)) * H0(-2.0 * it, kc);
  cplx acc = 0.0;
  for (i64 n = N0; n >= 1; --n) {
    const double nd = static_cast<double>(n);
    // conj(b(n)) n^{-s-(k-1)/2} = B(n) n^{-s} for real coefficients
    acc += ctx.g->A(n) * ctx.f->A(n) * (c1 * rpow(nd, -s - 0.5 - it) + c2 * rpow(nd, -s - 0.5 + it));
  }
  return zeta_depleted(2.0 * s, N) * acc;
}

namespace {

// log cos z without overflow
cplx log_cos(cplx z) {
  if (z.imag() > 0) return -I * z + std::log(1.0 + std::exp(2.0 * I * z)) - std::log(2.0);
  return I * z + std::log(1.0 + std::exp(-2.0 * I * z)) - std::log(2.0);
}

// composite Gauss-Legendre nodes on the h-window for gamma = Im u, both signs
}  // namespace

FirstMomentPieces first_moment_pieces(i64 n, const MomentContext& ctx, const FirstMomentOptions& opt) {
  if (!ctx.f) throw Error(ErrorKind::missing_data, "first moment: f not supplied");
  if (n < 1 || n > 50) throw Error(ErrorKind::domain, "first moment: n must lie in [1, 50] for the double quadrature");
  const auto& f = *ctx.f;
  const auto& p = ctx.kernel.params;
  const int k = f.k;
  const double hk = 0.5 * k;
  const double su = opt.sigma_u;
  const double s0 = std::isnan(opt.sigma_0) ? 0.5 * (-hk - su) : opt.sigma_0;
  const double sv = std::isnan(opt.sigma_v) ? 0.5 * (1.0 + su) + hk : opt.sigma_v;
  if (!(su > 1.0 && su < 1.5))
    throw Error(ErrorKind::region, "first moment: sigma_u must lie in (1, 3/2)");
  if (!(su < std::sqrt(p.R)))
    throw Error(ErrorKind::region, "first moment: the u-line crosses the pole of h at u = sqrt(R); take R > sigma_u^2");
  if (!(s0 > -hk && s0 < -su))
    throw Error(ErrorKind::region, "first moment: sigma_0 must lie in (-k/2, -sigma_u)");
  if (!(sv > 1.0 + hk && sv < su + hk))
    throw Error(ErrorKind::region, "first moment: the L^+ v-line must lie in (1 + k/2, sigma_u + k/2)");
  const double dpole = std::min({1.5 - su, su + hk - sv, su - (sv - hk)});
  const double h = std::isnan(opt.step) ? std::min(0.025, dpole / 6.0) : opt.step;
  if (!(h > 0.0 && opt.v_half_width > 0.0))
    throw Error(ErrorKind::domain, "first moment: quadrature steps must be positive");
  const cplx t = ctx.t, it = I * t;
  const double nd = static_cast<double>(n);
  const i64 N = ctx.N;

  FirstMomentPieces out;
  out.M = first_moment_M(n, ctx);

  // u = sigma_u + i h j and v = sigma + i h l share one grid, so the Gamma factors coupling u and v depend on
  // j - l or j + l only and come from tables; trapezoid rule in both variables
  const double W = std::min(ctx.kernel.window, 7.0) * std::pow(p.T, p.alpha);
  const double glo = std::max(0.0, p.T - W), ghi = p.T + W;
  const long G = static_cast<long>(std::ceil(ghi / h));
  std::vector<long> ju;
  for (long j = -G; j <= G; ++j) {
    const double g = std::abs(static_cast<double>(j) * h);
    if (g >= glo && g <= ghi) ju.push_back(j);
  }
  // the u-side weight h(u/i) u / (Gamma(u+it+k/2) Gamma(-u+it+k/2)) in log form, without tan or 1/cos
  std::vector<cplx> hu(ju.size()), lu(ju.size());
  for (std::size_t q = 0; q < ju.size(); ++q) {
    const cplx u(su, static_cast<double>(ju[q]) * h);
    hu[q] = h_continued(-I * u, p) * u;
    lu[q] = -log_gamma(u + it + hk) - log_gamma(-u + it + hk);
  }
  auto table = [&](cplx base, long K) {
    std::vector<cplx> out(static_cast<std::size_t>(2 * K + 1));
    for (long d = -K; d <= K; ++d) out[static_cast<std::size_t>(d + K)] = log_gamma(base + I * (static_cast<double>(d) * h));
    return out;
  };
  // dv = i dy and du = i dgamma against the two 1/(2 pi i)
  const double dd = (h / (2.0 * pi)) * (h / (2.0 * pi));

  // L^-: finite inner sum, v on Re v = sigma_0, |Im v| <= v_half_width
  {
    cplx acc = 0.0;
    if (n > 1) {
      const long J = static_cast<long>(std::ceil(opt.v_half_width / h));
      std::vector<cplx> Sv(static_cast<std::size_t>(2 * J + 1));
      for (long l = -J; l <= J; ++l) {
        const cplx v(s0, static_cast<double>(l) * h);
        cplx S = 0.0;
        for (i64 m = 1; m < n; ++m)
          S += f.a[static_cast<std::size_t>(m)] * sigma_twisted_N(n - m, N, t) * rpow(static_cast<double>(n - m), -v + it - hk);
        Sv[static_cast<std::size_t>(l + J)] = S * rpow(nd, v) * std::exp(log_gamma(hk - it + v) + log_gamma(hk + it + v));
      }
      // Gamma(u - v) at index j - l, Gamma(-u - v) at index -(j + l)
      const long K = G + J;
      const auto A = table(su - s0, K), B = table(-su - s0, K);
      for (std::size_t q = 0; q < ju.size(); ++q) {
        const long j = ju[q];
        const cplx u(su, static_cast<double>(j) * h);
        cplx inner = 0.0;
        for (long l = -J; l <= J; ++l)
          inner += Sv[static_cast<std::size_t>(l + J)] *
                   std::exp(lu[q] + A[static_cast<std::size_t>(j - l + K)] + B[static_cast<std::size_t>(-(j + l) + K)]);
        acc += hu[q] * std::tan(pi * u) * inner;
      }
      acc *= dd;
    }
    out.Lminus = -rpow(two_pi(), 2.0 * it) * std::cos(pi * it) / pi * 4.0 * acc;
  }

  // L^+: v on Re v = sigma_v, |Im v| up to the u-window plus the Gamma decay range
  {
    const i64 avail = f.M() - n;
    const i64 Mi = opt.inner_terms > 0 ? std::min(opt.inner_terms, avail) : avail;
    if (Mi < 100) throw Error(ErrorKind::missing_data, "first moment: too few coefficients for the L^+ inner sum");
    const long J = G + static_cast<long>(std::ceil(opt.v_half_width / h));
    const std::size_t nv = static_cast<std::size_t>(2 * J + 1);
    // S(y) = sum_m wm m^{-iy} on the grid, by a phase recurrence in l per m
    std::vector<double> Sr(nv, 0.0), Si(nv, 0.0);
    for (i64 m = Mi; m >= 1; --m) {
      const double lm = std::log(static_cast<double>(m));
      const cplx wm = sigma_twisted_N(m, N, t) * f.a[static_cast<std::size_t>(n + m)] * rpow(static_cast<double>(m), it - sv);
      const double wr = wm.real(), wi = wm.imag();
      const double cs = std::cos(h * lm), sn = -std::sin(h * lm);
      double er = 0.0, ei = 0.0;
      for (std::size_t l = 0; l < nv; ++l) {
        if ((l & 127) == 0) {
          const double ph = -static_cast<double>(static_cast<long>(l) - J) * h * lm;
          er = std::cos(ph);
          ei = std::sin(ph);
        }
        Sr[l] += wr * er - wi * ei;
        Si[l] += wr * ei + wi * er;
        const double tr = er * cs - ei * sn;
        ei = er * sn + ei * cs;
        er = tr;
      }
    }
    std::vector<cplx> Sv(nv);
    for (std::size_t l = 0; l < nv; ++l) {
      const cplx v(sv, static_cast<double>(static_cast<long>(l) - J) * h);
      Sv[l] = cplx(Sr[l], Si[l]) * rpow(nd, v - hk) * std::exp(log_gamma(v - it) + log_gamma(v + it));
    }
    // |a(n+m)| <= d(n+m) (n+m)^{(k-1)/2}, |sigma| <= d(m) up to the N-factor, d(x) <= C x^{eps}
    double tail = INFINITY;
    for (double eps : {0.15, 0.2, 0.25, 0.3}) {
      const double ex = sv - 0.5 * (k - 1) - 1.0 - 2.0 * eps;
      if (ex <= 0) continue;
      const double C = divisor_bound_constant(eps);
      tail = std::min(tail, C * C * std::pow(2.0, 0.5 * (k - 1) + eps) * std::pow(static_cast<double>(Mi), -ex) / ex);
    }
    out.Lplus_tail = tail;
    // Gamma(-v + u + k/2) at index j - l, Gamma(v + u + 1 - k/2) at index j + l
    const long K = G + J;
    const auto A = table(su - sv + hk, K), B = table(su + sv + 1.0 - hk, K);
    cplx acc = 0.0;
    for (std::size_t q = 0; q < ju.size(); ++q) {
      const long j = ju[q];
      const double g = static_cast<double>(j) * h;
      const cplx u(su, g);
      const cplx lo = lu[q] - log_cos(pi * u);
      // the Gamma quotient decays like exp(-pi dist(Im v, [0, Im u])) off that interval
      const long llo = std::max(-J, static_cast<long>(std::floor((std::min(0.0, g) - opt.v_half_width) / h)));
      const long lhi = std::min(J, static_cast<long>(std::ceil((std::max(0.0, g) + opt.v_half_width) / h)));
      cplx inner = 0.0;
      for (long l = llo; l <= lhi; ++l)
        inner += Sv[static_cast<std::size_t>(l + J)] *
                 std::exp(lo + A[static_cast<std::size_t>(j - l + K)] - B[static_cast<std::size_t>(j + l + K)]);
      acc += hu[q] * inner;
    }
    out.Lplus = std::pow(I, k) * rpow(two_pi(), 2.0 * it) * 4.0 * acc * dd;
  }
  return out;
}

std::optional<double> error_exponent(double alpha, double beta, int tprime_sign, int k, std::optional<double> delta) {
  if (!(alpha > 1.0 / 3.0 && alpha < 2.0 / 3.0)) throw Error(ErrorKind::domain, "error_exponent: alpha must lie in (1/3, 2/3)");
  if (!(beta >= 0.0 && beta < 1.0)) throw Error(ErrorKind::domain, "error_exponent: beta must lie in [0, 1)");
  const double eps = 1e-12;
  if (beta < std::min(2.0 * alpha, 1.0 - alpha) || std::abs(beta - (1.0 - alpha)) < eps) return (3.0 * alpha - 1.0) / 2.0;
  if (beta > 1.0 - alpha && beta < 2.0 * alpha && tprime_sign == 1) return (2.0 * alpha - beta) * (k + 1) / 2.0;
  if (tprime_sign == -1 && beta > 1.0 - alpha && beta < (alpha + 1.0) / 2.0) {
    const double d = delta.value_or(alpha - 2.0 * beta + 1.0);
    if (d > 0.0 && std::abs(2.0 * beta - 1.0 + d - alpha) < 1e-9) return 1.0 - 1.5 * beta + d * k / 2.0;
  }
  return std::nullopt;
}

}  // namespace rsm
