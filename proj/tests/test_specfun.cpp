#include "check.hpp"
#include "rsm/arith.hpp"

using namespace rsm;

// reference values below were computed with mpmath at 30 digits

TEST_CASE("gamma values") {
  CHECK_REL(complex_gamma(1.0), 1.0, 1e-15);
  CHECK_REL(complex_gamma(0.5), std::sqrt(pi), 1e-14);
  CHECK_REL(complex_gamma(5.0), 24.0, 1e-14);
  CHECK_REL(complex_gamma(cplx(2.7, -1.4)), cplx(0.37267705375220028, -0.95039763298203543), 1e-13);
}

TEST_CASE("gamma recursion and reflection") {
  for (cplx z : {cplx(0.31, 0.2), cplx(3.7, -4.1), cplx(-2.6, 0.8), cplx(7.5, 12.0), cplx(0.02, -0.5)}) {
    CHECK_REL(complex_gamma(z + 1.0), z * complex_gamma(z), 1e-12);
    CHECK_REL(complex_gamma(z) * complex_gamma(1.0 - z), pi / std::sin(pi * z), 1e-12);
  }
}

TEST_CASE("log gamma") {
  CHECK(std::abs(log_gamma(2.0)) < 1e-15);
  CHECK(std::abs(log_gamma(1.0)) < 1e-15);
  cplx ref(-112.39736554967238, 374.9894229622295);
  cplx v = log_gamma(cplx(10, 100));
  CHECK(std::abs(v.real() - ref.real()) < 1e-11);
  // the imaginary part is fixed up to 2 pi
  double k = std::round((v.imag() - ref.imag()) / (2 * pi));
  CHECK(std::abs(v.imag() - ref.imag() - 2 * pi * k) < 1e-10);
  // recursion from a base point
  cplx z0(10, 100);
  CHECK(std::abs(std::exp(log_gamma(z0 + 1.0) - log_gamma(z0) - std::log(z0)) - 1.0) < 1e-12);
  CHECK(std::abs(std::exp(log_gamma(cplx(-3.3, 0.2)) - cplx(-1.0805559442999586, -11.914238004764485)) - 1.0) < 1e-12);
}

TEST_CASE("digamma family") {
  CHECK_REL(digamma(1.0), -euler_gamma, 1e-14);
  CHECK_REL(digamma_family(1.0, 1), pi * pi / 6, 1e-13);
  CHECK_REL(digamma(cplx(50, 30)), cplx(4.0584008796987858, 0.54485289067538238), 1e-13);
  CHECK_REL(digamma_family(cplx(0.7, 2), 2), cplx(0.25890594504367138, 0.057127030875233303), 1e-11);
  CHECK_REL(digamma_family(cplx(3, -1), 3), cplx(0.044325551046504022, 0.086886578661960658), 1e-11);
  // finite difference of log gamma
  cplx z(50, 30);
  double h = 1e-4;
  cplx fd = (log_gamma(z + h) - log_gamma(z - h)) / (2 * h);
  CHECK(std::abs(fd - digamma(z)) < 1e-8);
}

TEST_CASE("riemann zeta") {
  CHECK_REL(riemann_zeta(2.0), pi * pi / 6, 1e-14);
  CHECK_REL(riemann_zeta(0.0), -0.5, 1e-14);
  CHECK_REL(riemann_zeta(-1.0), -1.0 / 12, 1e-13);
  CHECK(std::abs(riemann_zeta(cplx(0.5, 14.134725))) < 1e-4);
  CHECK_REL(riemann_zeta(cplx(0.3, 2)), cplx(0.3853103509076439, -0.28252821168648399), 1e-12);
  CHECK_REL(riemann_zeta(cplx(-2.5, 30)), cplx(-104.12779822104208, 16.692591553446933), 1e-11);
  CHECK_REL(riemann_zeta(cplx(0.5, 100)), cplx(2.6926198856813241, -0.020386029602598162), 1e-11);
  CHECK_REL(riemann_zeta_deriv(2.0), -0.93754825431584375, 1e-10);
  CHECK_THROWS_AS(riemann_zeta(1.0), Error);
}

TEST_CASE("zeta functional equation") {
  for (cplx s : {cplx(0.3, 2.0), cplx(-1.2, 0.5), cplx(0.5, 14.0), cplx(2.5, -7.0)}) {
    cplx rhs = rpow(2.0, s) * rpow(pi, s - 1.0) * std::sin(pi * s / 2.0) * complex_gamma(1.0 - s) * riemann_zeta(1.0 - s);
    CHECK_REL(riemann_zeta(s), rhs, 1e-10);
  }
}

TEST_CASE("dirichlet L and gauss sums") {
  cplx s(0.7, -0.4);
  CHECK_REL(dirichlet_L(s, trivial_character()), riemann_zeta(s), 1e-13);
  DirichletCharacter c3;
  c3.modulus = 3;
  c3.values = {0, 1, -1};
  c3.is_trivial = false;
  CHECK_REL(dirichlet_L(1.0, c3), pi / (3 * std::sqrt(3.0)), 1e-12);
  DirichletCharacter c4;
  c4.modulus = 4;
  c4.values = {0, 1, 0, -1};
  c4.is_trivial = false;
  CHECK_REL(dirichlet_L(2.0, c4), 0.915965594177219015, 1e-13);
  CHECK_REL(gauss_sum(c4), cplx(0, 2), 1e-14);
  CHECK_REL(gauss_sum(trivial_character()), 1.0, 1e-15);
  for (std::int64_t q = 3; q <= 40; ++q)
    for (const auto& chi : characters_mod(q))
      if (chi.is_primitive) CHECK(std::abs(std::abs(gauss_sum(chi)) - std::sqrt(double(q))) < 1e-11);
  // chi mod 5 with chi(2) = i
  DirichletCharacter c5;
  c5.modulus = 5;
  c5.values = {0, 1, I, -I, -1};
  c5.is_trivial = false;
  CHECK_REL(dirichlet_L(cplx(0.7, 3), c5), cplx(1.8044557961113769, 0.078410237064201983), 1e-11);
  CHECK_REL(hurwitz_zeta(cplx(2.5, 1), 0.3), cplx(7.8528807052013212, 18.593143534318559), 1e-12);
}

TEST_CASE("bessel K") {
  for (double y : {0.3, 1.3, 7.0})
    CHECK_REL(bessel_K(0.5, y), std::sqrt(pi / (2 * y)) * std::exp(-y), 1e-13);
  CHECK_REL(bessel_K(0.0, 1.0), 0.42102443824070833, 1e-13);
  CHECK(std::abs(bessel_K_mesh(0.0, 1.0, 0.05) - bessel_K_mesh(0.0, 1.0, 0.025)) < 1e-10);
  CHECK_REL(bessel_K(3.7, 0.05), 1764799.5290052663, 1e-11);
  CHECK_REL(bessel_K(3.7, 0.05), bessel_K(-3.7, 0.05), 1e-15);
  CHECK_REL(bessel_K(cplx(0, 2), 1.3), 0.07685203650277105, 1e-11);
  CHECK_REL(bessel_K(cplx(0.3, 5), 2.0), cplx(-0.00040461412835155898, -5.8393482199614353e-5), 1e-9);
}

TEST_CASE("quadrature") {
  QuadratureSpec q;
  q.cutoff_radius = 10;
  CHECK_REL(integrate_line([](double r) { return cplx(std::exp(-r * r)); }, q).value, std::sqrt(pi), 1e-13);
  auto e = integrate_interval([](double x) { return cplx(std::cos(x), std::sin(3 * x)); }, 0.0, 2.0, q);
  CHECK_REL(e.value, cplx(std::sin(2.0), (1 - std::cos(6.0)) / 3), 1e-13);
  // pole inside the region
  q.max_subdivisions = 200;
  CHECK_THROWS_AS(integrate_interval([](double x) { return cplx(1.0 / (x - 0.5)); }, 0.0, 1.0, q), Error);
}

TEST_CASE("cauchy derivative and laurent coefficient") {
  auto f = [](cplx z) { return std::exp(2.0 * z); };
  CHECK_REL(cauchy_derivative(f, 0.3, 0.5, 2), 4.0 * std::exp(0.6), 1e-12);
  auto g = [](cplx z) { return 3.0 / (z - 1.0) + 0.25 + z; };
  CHECK_REL(laurent_coefficient(g, 1.0, 0.3, -1), 3.0, 1e-12);
  CHECK_REL(laurent_coefficient(g, 1.0, 0.3, 0), 1.25, 1e-12);
}
