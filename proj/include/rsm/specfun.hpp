#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "rsm/common.hpp"

namespace rsm {

// ---- gamma family ----

cplx log_gamma(cplx z);
cplx complex_gamma(cplx z);
// psi^{(m)}(z) for m = 0..3
cplx digamma_family(cplx z, int m);
inline cplx digamma(cplx z) { return digamma_family(z, 0); }

// ---- zeta ----

cplx riemann_zeta(cplx s);
// derivative through a Cauchy integral around s
cplx riemann_zeta_deriv(cplx s);

// Derivative of an analytic f at z0 from the mean over a circle of radius r.
cplx cauchy_derivative(const std::function<cplx(cplx)>& f, cplx z0, double r,
                       int order = 1, int points = 32);
// Laurent coefficient c_j of f around z0 (j may be negative).
cplx laurent_coefficient(const std::function<cplx(cplx)>& f, cplx z0, double r,
                         int j, int points = 32);

// ---- Dirichlet characters ----

struct DirichletCharacter {
  std::int64_t modulus = 1;
  std::vector<cplx> values;  // values[n mod q]
  bool is_primitive = true;
  bool is_trivial = true;

  cplx operator()(std::int64_t n) const {
    std::int64_t r = n % modulus;
    if (r < 0) r += modulus;
    return values[static_cast<std::size_t>(r)];
  }
  DirichletCharacter squared() const;
  DirichletCharacter conj() const;
};

DirichletCharacter trivial_character(std::int64_t q = 1);

cplx gauss_sum(const DirichletCharacter& chi);
cplx hurwitz_zeta(cplx s, double a);
cplx dirichlet_L(cplx s, const DirichletCharacter& chi);
// L(s, chi) with the Euler factors at p | N removed
cplx dirichlet_L_N(cplx s, const DirichletCharacter& chi, std::int64_t N);

// ---- K-Bessel ----

// K_nu(y) = int_0^inf e^{-y cosh u} cosh(nu u) du, trapezoid on a halving mesh
cplx bessel_K(cplx nu, double y);
// same integral with a fixed step, for mesh-refinement checks
cplx bessel_K_mesh(cplx nu, double y, double h);

// ---- quadrature ----

struct QuadratureSpec {
  double rel_tol = 1e-12;
  double abs_tol = 0.0;
  int max_subdivisions = 4000;
  double cutoff_radius = 50.0;
};

using Integrand = std::function<cplx(double)>;
// bound on |int| over |x - center| > cutoff_radius
using TailBound = std::function<double(double cutoff)>;

// adaptive Gauss-Kronrod (7,15) on [a, b]
Estimate integrate_interval(const Integrand& f, double a, double b,
                            const QuadratureSpec& spec);
// integral over the real line, truncated to center +- cutoff_radius
Estimate integrate_line(const Integrand& f, const QuadratureSpec& spec,
                        double center = 0.0, const TailBound& tail = nullptr);

}  // namespace rsm
