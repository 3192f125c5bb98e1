#include "check.hpp"
#include "rsm/kernels.hpp"

using namespace rsm;

TEST_CASE("test function h") {
  TestFunctionParams p{100, 0.5, 1};
  CHECK(h_eval(0.5 * I, p) == 0.0);
  CHECK(h_eval(-0.5 * I, p) == 0.0);
  for (double x : {0.0, 2.5, 80.0, 100.0, 140.0})
    for (double y : {0.0, 0.4}) CHECK_REL(h_eval(cplx(x, y), p), h_eval(cplx(-x, -y), p), 1e-15);
  double T = 100;
  CHECK_REL(h_eval(T, p), (1 + std::exp(-4 * T)) * (T * T + 0.25) / (T * T + 1), 1e-15);
  // |h(r)| (|r| + 1)^2 <= 1 past 2T on Im r = 0.4
  for (double x = 2 * T + 1; x < 5000; x *= 1.2) CHECK(std::abs(h_eval(cplx(x, 0.4), p)) * (x + 1) * (x + 1) <= 1.0);
  CHECK_THROWS_AS(h_eval(cplx(0, 0.7), p), Error);
  CHECK_THROWS_AS((TestFunctionParams{5, 0.5, 1}.validate()), Error);
}

TEST_CASE("integral of h") {
  // two Gaussians times a rational factor within 1e-4 of 1 on the window
  TestFunctionParams p{100, 0.5, 1};
  QuadratureSpec q;
  q.cutoff_radius = 150;
  auto v = integrate_line([&](double r) { return h_eval(r, p); }, q);
  double gauss = 2 * std::sqrt(pi) * std::pow(100.0, 0.5);
  CHECK(std::abs(v.value.real() - gauss) / gauss < 1e-6 + 1e-4);
}

TEST_CASE("H0") {
  KernelContext c;
  c.params = {300, 0.5, 1};
  c.k = 12;
  cplx h = H0(0.0, c);
  double ratio = h.real() / (2 * std::pow(pi, -1.5) * std::pow(300.0, 1.5));
  CHECK(ratio > 0.9);
  CHECK(ratio < 1.1);
  CHECK(std::abs(h.imag()) < 1e-12 * std::abs(h));
  CHECK_REL(h, kernel_integral([](double) { return cplx(1.0); }, c), 1e-14);
  CHECK_REL(h, H0_adaptive(0.0, c).value, 1e-9);
  CHECK_REL(H0(2.0 * I, c), H0_adaptive(2.0 * I, c).value, 1e-9);
  // window independence
  KernelContext w = c;
  w.window = 16;
  CHECK_REL(H0(1.5 * I, c), H0(1.5 * I, w), 1e-9);
  CHECK(H0_gamma_ratio(40.0, 0.0, 0.0, 12) == 1.0);
}

TEST_CASE("H0 derivatives") {
  KernelContext c;
  c.params = {200, 0.5, 1};
  c.t = 0.3;
  const double e = 1e-3;
  auto rich = [&](auto F, cplx s0) {
    cplx a = (F(s0 + e) - F(s0 - e)) / (2 * e), b = (F(s0 + e / 2) - F(s0 - e / 2)) / e;
    return (4.0 * b - a) / 3.0;
  };
  auto Fm = [&](cplx s) { return H0(-2.0 * s + 1.0 - 2.0 * I * c.t, c); };
  CHECK_REL(H0_derivative(H0Variant::minus, 1, c), rich(Fm, 0.5 - I * c.t), 1e-5);
  auto Fp = [&](cplx s) { return H0(-2.0 * s + 1.0, c); };
  CHECK_REL(H0_derivative(H0Variant::plus, 1, c), rich(Fp, 0.5 + I * c.t), 1e-5);
  // m = 2, 3 against Cauchy-circle derivatives in t (the twist moves with t)
  c.t = 0.0;
  for (auto v : {H0Variant::minus, H0Variant::plus}) {
    double sg = v == H0Variant::plus ? 2.0 : -2.0;
    auto G = [&](cplx t) {
      KernelContext cc = c;
      cc.t = t;
      return H0(sg * I * t, cc);
    };
    CHECK_REL(H0_derivative(v, 2, c), cauchy_derivative(G, 0.0, 0.05, 2, 64), 1e-10);
    CHECK_REL(H0_derivative(v, 3, c), cauchy_derivative(G, 0.0, 0.05, 3, 64), 1e-10);
  }
  // the integral (1/pi^2) int h r tanh (psi + psi)^2 is -m2/4
  double r = (-0.25 * H0_derivative(H0Variant::minus, 2, c) / (4.0 * H0(0.0, c) * std::pow(std::log(200.0), 2))).real();
  CHECK(r > 0.5);
  CHECK(r < 2.0);
}

TEST_CASE("M kernel") {
  for (cplx s : {cplx(0.3, 1.1), cplx(2.2, -0.4)}) CHECK_REL(M_kernel(s, cplx(0.2, 3)), M_kernel(s, cplx(-0.2, -3)), 1e-14);
  // residue at s = 1/2 + z of Gamma(s - 1/2 - z)
  cplx z(0.1, 2.0);
  double d = 1e-7;
  cplx res = std::sqrt(pi) * rpow(2.0, -z) * complex_gamma(2.0 * z) * complex_gamma(0.5 - z) /
             (complex_gamma(0.5 - z) * complex_gamma(0.5 + z));
  CHECK_REL(d * M_kernel(0.5 + z + d, z), res, 1e-6);
  // s = 3/2, z = 0: sqrt(pi) / 2 * Gamma(1)^2 Gamma(-1/2) / Gamma(1/2)^2 = -1
  CHECK_REL(M_kernel(1.5, 0.0), -1.0, 1e-14);
}
