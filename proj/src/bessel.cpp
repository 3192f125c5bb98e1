#include <cmath>

#include "rsm/specfun.hpp"

namespace rsm {

namespace {

// e^{-y cosh u} cosh(nu u), evaluated in log form
cplx k_integrand(cplx nu, double y, double u) {
  double base = -y * std::cosh(u);
  return 0.5 * (std::exp(base + nu * u) + std::exp(base - nu * u));
}

}  // namespace

cplx bessel_K_mesh(cplx nu, double y, double h) {
  if (!(y > 0.0)) throw Error(ErrorKind::domain, "bessel_K: y must be positive");
  if (!(h > 0.0)) throw Error(ErrorKind::domain, "bessel_K_mesh: step must be positive");
  double a = std::abs(nu.real());
  // integrand peaks near sinh(u) = a/y; sum until well past it and tiny
  double upeak = std::asinh(a / y);
  cplx sum = 0.5 * k_integrand(nu, y, 0.0);
  double scale = std::abs(sum);
  for (int j = 1;; ++j) {
    double u = j * h;
    cplx v = k_integrand(nu, y, u);
    sum += v;
    scale = std::max(scale, std::abs(v));
    if (u > upeak && (std::abs(v) <= 1e-18 * scale || -y * std::cosh(u) + a * u < -745.0)) break;
    if (j > 10000000) throw Error(ErrorKind::convergence, "bessel_K: too many nodes");
  }
  return h * sum;
}

cplx bessel_K(cplx nu, double y) {
  if (!(y > 0.0)) throw Error(ErrorKind::domain, "bessel_K: y must be positive");
  if (std::abs(nu.real()) > 50.0) throw Error(ErrorKind::domain, "bessel_K: |Re nu| > 50");
  // oscillation in cosh(i r u) needs a mesh finer than 1/|Im nu|
  double h = std::min(0.5, 1.0 / (1.0 + std::abs(nu.imag())));
  cplx prev = bessel_K_mesh(nu, y, h);
  for (int it = 0; it < 12; ++it) {
    h *= 0.5;
    cplx cur = bessel_K_mesh(nu, y, h);
    if (std::abs(cur - prev) <= 1e-14 * std::abs(cur) + 1e-300) return cur;
    prev = cur;
  }
  return prev;
}

}  // namespace rsm
