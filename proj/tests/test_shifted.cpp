#include "check.hpp"
#include "rsm/shifted.hpp"

using namespace rsm;

// partial sums below computed in Python from the eta-product coefficients of Delta

TEST_CASE("shifted D") {
  const auto& D = delta_form();
  auto v = shifted_D(2.5, 1, D, D, 2000);
  CHECK_REL(v.value, -24.730975239849822, 1e-13);
  CHECK(v.value.imag() == 0.0);
  CHECK_REL(shifted_D(cplx(2.2, -0.4), 3, D, D, 2000).value, cplx(-1484.0289296322257, -3.3234552830439619), 1e-13);
  CHECK_REL(shifted_D_lower(cplx(2.2, -0.4), 3, D, D, 2000).value, cplx(0.0011273918726334172, 0.00057379596241315889), 1e-12);
  auto a = shifted_D(2.5, 1, D, D, 10000), b = shifted_D(2.5, 1, D, D, 40000);
  CHECK(std::abs(a.value - b.value) <= a.tail_bound + b.tail_bound);
  CHECK_THROWS_AS(shifted_D(0.9, 1, D, D, 100), Error);
  // large shift: the first term carries the sum at large Re w
  i64 m = 10000;
  auto big = shifted_D(30.0, m, D, D, 50);
  CHECK_REL(big.value, D.a[m + 1] * D.a[1], 1e-6);
}

TEST_CASE("Z dual paths") {
  const auto& D = delta_form();
  ShiftedSeriesRequest r;
  r.s = cplx(8.3, 0.5);
  r.v = 7.1;
  r.t = 0.7;
  r.f = r.g = &D;
  auto a = Z_series_double(r), b = Z_series_rearranged(r);
  CHECK_REL(a.value, b.value, 1e-10);
  CHECK(Z_series(r).value == b.value);
  r.reduction = Reduction::pairwise;
  CHECK_REL(Z_series_rearranged(r).value, b.value, 1e-12);
  r.s = 8.0;
  CHECK_THROWS_AS(Z_series(r), Error);
}

TEST_CASE("Z tail certificate") {
  const auto& D = delta_form();
  ShiftedSeriesRequest r;
  r.s = cplx(9.4, 0.5);
  r.v = 7.9;
  r.t = 0.7;
  r.f = r.g = &D;
  r.trunc = {500, 2000};
  auto a = Z_series(r);
  r.trunc.outer = 2000;
  auto b = Z_series(r);
  CHECK(a.outer_tail >= 2 * b.outer_tail);
  CHECK(std::abs(a.value - b.value) <= a.tail_bound() + b.tail_bound());
}

TEST_CASE("Z at t = 0") {
  // sigma_0(m; 1) m^0 = d(m): the rearranged sum by hand
  const auto& D = delta_form();
  ShiftedSeriesRequest r;
  r.s = cplx(9.0, 0.2);
  r.v = 7.5;
  r.f = r.g = &D;
  r.trunc = {300, 600};
  cplx acc = 0.0;
  for (i64 m = 1; m <= 300; ++m)
    acc += double(divisors(m).size()) * rpow(double(m), -r.v) * shifted_D(r.s - r.v + 0.5, m, D, D, 600).value;
  CHECK_REL(Z_series_rearranged(r).value, riemann_zeta(2.0 * r.s) * acc, 1e-12);
}

TEST_CASE("M3 dual paths and support") {
  const auto& D = delta_form();
  ShiftedSeriesRequest r;
  r.s = cplx(2.5, 0.3);
  r.v = cplx(2.2, -0.4);
  r.t = 0.7;
  r.f = r.g = &D;
  for (i64 N : {1, 2}) {
    r.N = N;
    CHECK_REL(M3_series(r).value, M3_series_rearranged(r).value, 1e-9);
  }
  r.s = 2.5;
  r.v = 2.2;
  r.t = 0.0;
  r.N = 1;
  CHECK(std::abs(M3_series(r).value.imag()) < 1e-14 * std::abs(M3_series(r).value));
  // N = 4: only m divisible by 2 carry weight
  for (i64 m = 1; m < 40; m += 2) CHECK(sigma_twisted_N(m, 4, 0.7) == 0.0);
  CHECK_REL(M3_prefactor(2.2, 12), std::exp(log_gamma(cplx(13.2)) - 13.2 * std::log(4 * pi)), 1e-13);
}
