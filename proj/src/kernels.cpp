#include "rsm/kernels.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <cmath>

namespace rsm {

void TestFunctionParams::validate() const {
  if (!(T >= 10.0)) throw Error(ErrorKind::domain, "test function: T must be >= 10");
  if (!(alpha > 1.0 / 3.0 && alpha < 2.0 / 3.0)) throw Error(ErrorKind::domain, "test function: alpha must lie in (1/3, 2/3)");
  if (!(R >= 1.0 && R < T * T)) throw Error(ErrorKind::domain, "test function: R must lie in [1, T^2)");
}

cplx h_eval(cplx r, const TestFunctionParams& p) {
  if (std::abs(r.imag()) > 0.6) throw Error(ErrorKind::domain, "h_eval: |Im r| exceeds the holomorphy strip 1/2 + 0.1");
  return h_continued(r, p);
}

cplx h_continued(cplx r, const TestFunctionParams& p) {
  if (std::abs(r * r + p.R) < 1e-12) throw Error(ErrorKind::pole, "h: pole at r^2 = -R");
  const double w = std::pow(p.T, p.alpha);
  cplx u = (r - p.T) / w, v = (r + p.T) / w;
  return (std::exp(-u * u) + std::exp(-v * v)) * (r * r + 0.25) / (r * r + p.R);
}

namespace {

double tanh_pi(double r) {
  // 1 - tanh = 2/(e^{2 pi r} + 1)
  double e = std::exp(-2.0 * pi * std::abs(r));
  double v = (1.0 - e) / (1.0 + e);
  return r < 0 ? -v : v;
}

}  // namespace

cplx kernel_integral(const std::function<cplx(double)>& g, const KernelContext& ctx, double extra_oscillation) {
  const auto& p = ctx.params;
  const double w = std::pow(p.T, p.alpha);
  const double lo = std::max(0.0, p.T - ctx.window * w), hi = p.T + ctx.window * w;
  int panels = static_cast<int>(std::ceil((hi - lo) / w * ctx.panels_per_width * (1.0 + extra_oscillation)));
  panels = std::max(panels, 8);
  using GL = boost::math::quadrature::gauss<double, 20>;
  const auto& x = GL::abscissa();
  const auto& wt = GL::weights();
  const double len = (hi - lo) / panels;
  cplx acc = 0.0;
  for (int j = 0; j < panels; ++j) {
    const double mid = lo + (j + 0.5) * len;
    cplx part = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      for (int sg : {-1, 1}) {
        if (x[i] == 0.0 && sg == 1) continue;
        double r = mid + sg * 0.5 * len * x[i];
        part += wt[i] * h_eval(r, p).real() * r * tanh_pi(r) * g(r);
      }
    }
    acc += part * (0.5 * len);
  }
  // the integrand is even in r
  return 2.0 * acc / (pi * pi);
}

Estimate kernel_integral_adaptive(const std::function<cplx(double)>& g, const KernelContext& ctx) {
  const auto& p = ctx.params;
  const double w = std::pow(p.T, p.alpha);
  QuadratureSpec spec = ctx.quad;
  spec.cutoff_radius = ctx.window * w;
  // absolute floor relative to the size of H0(0), so tiny values do not exhaust the budget
  spec.abs_tol = std::max(spec.abs_tol, 1e-12 * p.T * w);
  auto f = [&](double r) { return h_eval(r, p).real() * r * tanh_pi(r) * g(r); };
  // the two bumps at +-T, each integrated over its own window
  Estimate right = integrate_line(f, spec, p.T);
  Estimate left = integrate_line(f, spec, -p.T);
  if (p.T - spec.cutoff_radius < 0.0) {
    // windows overlap, integrate once on the union
    Estimate all = integrate_interval(f, -p.T - spec.cutoff_radius, p.T + spec.cutoff_radius, spec);
    return {all.value / (pi * pi), all.error / (pi * pi)};
  }
  return {(right.value + left.value) / (pi * pi), (right.error + left.error) / (pi * pi)};
}

cplx H0_gamma_ratio(double r, cplx ix, cplx t, int k) {
  const cplx it = I * t;
  const cplx a = I * r + it + 0.5 * k, b = -I * r + it + 0.5 * k;
  return std::exp(log_gamma(a + ix) + log_gamma(b + ix) - log_gamma(a) - log_gamma(b));
}

namespace {

double oscillation(cplx ix, const KernelContext& ctx) {
  const double w = std::pow(ctx.params.T, ctx.params.alpha);
  return std::abs(ix) * w / std::max(1.0, ctx.params.T - ctx.window * w);
}

}  // namespace

cplx H0(cplx ix, const KernelContext& ctx) {
  if (ix == 0.0) return kernel_integral([](double) { return cplx(1.0); }, ctx);
  return kernel_integral([&](double r) { return H0_gamma_ratio(r, ix, ctx.t, ctx.k); }, ctx, oscillation(ix, ctx));
}

Estimate H0_adaptive(cplx ix, const KernelContext& ctx) {
  return kernel_integral_adaptive([&](double r) { return H0_gamma_ratio(std::abs(r), ix, ctx.t, ctx.k); }, ctx);
}

cplx H0_derivative(H0Variant variant, int m, const KernelContext& ctx) {
  const double hk = 0.5 * ctx.k;
  const cplx it = I * ctx.t;
  if (m == 1) {
    if (variant == H0Variant::minus)
      return -2.0 * kernel_integral([&](double r) { return digamma(I * r + it + hk) + digamma(-I * r + it + hk); }, ctx);
    return -2.0 * kernel_integral(
                      [&](double r) {
                        return (digamma(I * r - it + hk) + digamma(-I * r - it + hk)) *
                               H0_gamma_ratio(r, -2.0 * it, ctx.t, ctx.k);
                      },
                      ctx, oscillation(2.0 * it, ctx));
  }
  auto S = [&](double r, int order) { return digamma_family(I * r + hk, order) + digamma_family(-I * r + hk, order); };
  if (m == 2) {
    if (variant == H0Variant::minus)
      return -4.0 * kernel_integral([&](double r) { cplx a = S(r, 0); return a * a; }, ctx);
    return kernel_integral([&](double r) { cplx a = S(r, 0); return -4.0 * a * a - 8.0 * S(r, 1); }, ctx);
  }
  if (m == 3) {
    if (variant == H0Variant::minus)
      return kernel_integral([&](double r) { cplx a = S(r, 0); return 8.0 * I * a * a * a + 2.0 * I * S(r, 2); }, ctx);
    return kernel_integral(
        [&](double r) {
          cplx a = S(r, 0);
          return -8.0 * I * a * a * a - 48.0 * I * a * S(r, 1) - 26.0 * I * S(r, 2);
        },
        ctx);
  }
  throw Error(ErrorKind::domain, "H0_derivative: order must be 1, 2 or 3");
}

namespace {

void gamma_pole_check(cplx z, const char* name) {
  double n = std::round(z.real());
  if (n <= 0.0 && std::abs(z - n) < 1e-12)
    throw Error(ErrorKind::pole, std::string("M_kernel: pole of ") + name);
}

}  // namespace

cplx M_kernel(cplx s, cplx z) {
  gamma_pole_check(s - 0.5 - z, "Gamma(s-1/2-z)");
  gamma_pole_check(s - 0.5 + z, "Gamma(s-1/2+z)");
  gamma_pole_check(1.0 - s, "Gamma(1-s)");
  // 1/Gamma(1/2 -+ z) vanishes at its poles
  for (cplx d : {0.5 - z, 0.5 + z}) {
    double n = std::round(d.real());
    if (n <= 0.0 && std::abs(d - n) < 1e-12) return 0.0;
  }
  return std::sqrt(pi) * rpow(2.0, 0.5 - s) * complex_gamma(s - 0.5 - z) * complex_gamma(s - 0.5 + z) *
         complex_gamma(1.0 - s) / (complex_gamma(0.5 - z) * complex_gamma(0.5 + z));
}

}  // namespace rsm
