#include <algorithm>

#include "check.hpp"
#include "rsm/moments.hpp"

using namespace rsm;

namespace {

MomentContext delta_ctx(double T) {
  static auto rs = rs_level1(delta_form(), delta_form());
  MomentContext c;
  c.f = c.g = &delta_form();
  c.rs = rs;
  c.kernel.params = {T, 0.5, 1};
  return c;
}

MomentContext w24_ctx(double T) {
  static auto rs = rs_level1(weight24_pair().first, weight24_pair().second);
  MomentContext c;
  c.f = &weight24_pair().first;
  c.g = &weight24_pair().second;
  c.rs = rs;
  c.kernel.params = {T, 0.5, 1};
  return c;
}

}  // namespace

TEST_CASE("N = 1 consistency and assembly") {
  auto c = delta_ctx(100);
  for (double y : {-1.1, 0.37, 2.2})
    for (double t : {0.3, 1.7}) {
      c.s = cplx(0.5, y);
      c.t = t;
      cplx m = main_term(c);
      CHECK_REL(m, main_term_N1(c), 1e-12);
      auto b = main_term_breakdown(c);
      CHECK_REL(m, b.assembled, 1e-9);
      CHECK_REL(b.assembled, b.M1 + b.M_Omega_plus + b.M_Omega_minus, 1e-15);
    }
}

TEST_CASE("trig identity") {
  for (cplx s : {cplx(0.5, 1.3), cplx(0.2, -0.7)})
    for (double t : {0.3, 1.7}) {
      cplx it = I * t;
      cplx d = std::cos(pi * it) - std::cos(pi * (2.0 * s + it)) - 2.0 * std::sin(pi * (s + it)) * std::sin(pi * s);
      double scale = std::max({1.0, std::abs(std::cos(pi * it)), std::abs(std::cos(pi * (2.0 * s + it)))});
      CHECK(std::abs(d) < 1e-14 * scale);
    }
}

TEST_CASE("pole errors and specialized displays") {
  auto c = delta_ctx(100);
  c.t = 0.0;
  c.s = 0.5;
  CHECK_THROWS_AS(main_term(c), Error);
  cplx v = main_term_specialized(c, Specialization::feq_minus);
  CHECK(finite(v));
  CHECK(v.real() > 0);
  // f != g against the generic formula
  auto d = w24_ctx(100);
  d.t = 0.7;
  d.s = cplx(0.5, -0.7);
  CHECK_REL(main_term(d), main_term_specialized(d, Specialization::fneq_minus), 1e-9);
  d.s = cplx(0.5, 0.7);
  CHECK_REL(main_term(d), main_term_specialized(d, Specialization::fneq_plus), 1e-9);
  // f = g against the constant term on a circle
  c.t = 0.7;
  c.s = cplx(0.5, -0.7);
  CHECK_REL(main_term_circle_limit(c), main_term_specialized(c, Specialization::feq_minus), 1e-10);
}

TEST_CASE("f != g simplification at s = 1/2 - it") {
  // the first term alone: 2 H0(0) |zeta(1 - 2it)|^2 L(1, f x g-bar) / zeta(2)
  // T = 60, t = 10 = T^0.56: the twisted terms are below e^{-6}
  const auto& W = weight24_pair(12000);
  MomentContext d;
  d.f = &W.first;
  d.g = &W.second;
  d.rs = rs_level1(W.first, W.second);
  d.kernel.params = {60, 0.5, 1};
  d.t = 10.0;
  d.s = cplx(0.5, -10.0);
  cplx z = riemann_zeta(cplx(1.0, -20.0));
  cplx approx = 2.0 * H0(0.0, d.kernel_at_t()) * std::norm(z) * d.rs->L(1.0) / riemann_zeta(2.0);
  CHECK_REL(main_term_specialized(d, Specialization::fneq_minus), approx, 2e-2);
}

TEST_CASE("Euler identity") {
  for (i64 N = 1; N <= 60; ++N)
    for (double t : {0.3, 1.7}) CHECK_REL(euler_identity_sum(N, t), euler_identity_product(N, t), 1e-12);
}

TEST_CASE("leading coefficient") {
  auto d = w24_ctx(100);
  double L1 = d.rs->L(1.0).real();
  CHECK_REL(leading_coeff(*d.rs, 1), 4 * 2 * std::pow(pi, -1.5) * L1 / (pi * pi / 6), 1e-12);
  auto c = delta_ctx(100);
  CHECK_REL(leading_coeff(*c.rs, 1), 8 * 2 * std::pow(pi, -1.5) * c.rs->residue / (pi * pi / 6), 1e-12);
  for (i64 N : {1, 2, 6, 30}) CHECK(leading_coeff(0.3, N, 3) > 0);
}

TEST_CASE("continuous part") {
  auto c = delta_ctx(20);
  c.t = 0.0;
  c.s = 0.5;
  cplx a = continuous_part(c, true);
  CHECK_REL(a, continuous_part(c, false), 1e-10);
  CHECK(std::abs(a.imag()) < 1e-8 * std::abs(a));
  double L = std::log(20.0);
  CHECK(std::abs(a) <= 20.0 * L * L * L * L);
}

TEST_CASE("discrete moment") {
  auto c = delta_ctx(100);
  c.s = cplx(0.5, 0.3);
  c.t = 0.7;
  auto value = [](cplx, const NewformData&, const MaassFormData&) { return cplx(2.0, 1.0); };
  CHECK(discrete_moment_truncated(c, {}, value) == 0.0);
  auto far = synthetic_maass(1, 1, 100 + 13 * 10.0, 100);
  auto near = synthetic_maass(1, 1, 100.0, 100);
  cplx vfar = discrete_moment_truncated(c, {far}, value), vnear = discrete_moment_truncated(c, {near}, value);
  CHECK(std::abs(vfar) < 1e-10 * std::abs(vnear));
  CHECK(spectral_weight(100.0, c.kernel.params) > 0);
}

TEST_CASE("first moment") {
  auto c = delta_ctx(10);
  c.kernel.params.R = 4;
  c.t = 0.3;
  auto P = first_moment_pieces(1, c);
  CHECK(P.Lminus == 0.0);
  // contour independence of both line integrals
  auto A = first_moment_pieces(5, c);
  FirstMomentOptions o;
  o.sigma_u = 1.2;
  auto B = first_moment_pieces(5, c, o);
  CHECK_REL(A.Lminus, B.Lminus, 1e-9);
  CHECK_REL(A.Lplus, B.Lplus, 1e-8);
  // real coefficients: t -> -t conjugates M
  cplx m = first_moment_M(3, c);
  c.t = -0.3;
  CHECK_REL(std::conj(m), first_moment_M(3, c), 1e-12);
}

TEST_CASE("first-moment partial sum") {
  auto c = delta_ctx(100);
  c.s = cplx(2.5, 0.4);
  c.t = 0.7;
  CHECK_REL(first_moment_partial_sum(c, 10000), main_term_M1(c), 1e-4);
}

TEST_CASE("error exponent") {
  for (int sg : {1, -1}) CHECK(error_exponent(0.5, 0.2, sg, 12).value() == doctest::Approx(0.25));
  CHECK(error_exponent(0.6, 0.7, 1, 12).value() == doctest::Approx(3.25));
  CHECK_FALSE(error_exponent(0.5, 0.9, -1, 12).has_value());
}
