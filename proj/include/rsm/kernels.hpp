#pragma once

#include <functional>

#include "rsm/specfun.hpp"

namespace rsm {

struct TestFunctionParams {
  double T = 100.0;
  double alpha = 0.5;
  double R = 1.0;

  void validate() const;
};

struct KernelContext {
  TestFunctionParams params;
  cplx t = 0.0;
  int k = 12;
  QuadratureSpec quad;
  double window = 12.0;  // integrate over |r - T| <= window * T^alpha
  int panels_per_width = 3;  // Gauss-Legendre panels per T^alpha
};

// (e^{-((r-T)/T^a)^2} + e^{-((r+T)/T^a)^2}) (r^2 + 1/4)/(r^2 + R)
cplx h_eval(cplx r, const TestFunctionParams& p);
// same formula without the strip check; poles at r = +-i sqrt(R)
cplx h_continued(cplx r, const TestFunctionParams& p);

// (1/pi^2) int h(r) r tanh(pi r) g(r) dr for a weight g even in r, fixed composite Gauss-Legendre
// rule on the window; the rule depends only on (T, alpha, window, panels), so the result is a
// smooth function of any parameter inside g
cplx kernel_integral(const std::function<cplx(double)>& g, const KernelContext& ctx, double extra_oscillation = 0.0);
// same integral, adaptive on the full line with tail cutoff
Estimate kernel_integral_adaptive(const std::function<cplx(double)>& g, const KernelContext& ctx);

// Gamma(ir+ix+it+k/2) Gamma(-ir+ix+it+k/2) / (Gamma(ir+it+k/2) Gamma(-ir+it+k/2))
cplx H0_gamma_ratio(double r, cplx ix, cplx t, int k);

cplx H0(cplx ix, const KernelContext& ctx);
Estimate H0_adaptive(cplx ix, const KernelContext& ctx);

enum class H0Variant { minus, plus };

// m = 1: d/ds H0(-2s+1-2it)|_{s=1/2-it} (minus) and d/ds H0(-2s+1)|_{s=1/2+it} (plus);
// m = 2, 3: d^m/dt^m H0(-2it) (minus) and H0(2it) (plus) at t = 0
cplx H0_derivative(H0Variant variant, int m, const KernelContext& ctx);

// sqrt(pi) 2^{1/2-s} Gamma(s-1/2-z) Gamma(s-1/2+z) Gamma(1-s) / (Gamma(1/2-z) Gamma(1/2+z))
cplx M_kernel(cplx s, cplx z);

}  // namespace rsm
