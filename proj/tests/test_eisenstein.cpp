#include "check.hpp"
#include "rsm/eisenstein.hpp"

using namespace rsm;

TEST_CASE("lambda_chi") {
  cplx s(1.3, 0.4);
  for (i64 n : {1, 2, 6, 12, -9})
    CHECK_REL(lambda_chi(n, s, trivial_character()),
              rpow(double(std::abs(n)), s - 0.5) * sigma_complex(std::abs(n), 1.0 - 2.0 * s), 1e-13);
  for (const auto& chi : characters_mod(6))
    if (!chi.is_trivial) CHECK(std::abs(lambda_chi(2, s, chi)) < 1e-15);
  // primitive chi mod 5, n = 6: the four divisors by hand
  for (const auto& chi : primitive_characters_mod(5)) {
    cplx acc = 0.0;
    for (i64 d : {1, 2, 3, 6}) acc += chi(d) * chi(d) * std::pow(double(d), 1.0 - 2.6);
    CHECK_REL(lambda_chi(6, 1.3, chi), std::conj(chi(6)) * std::pow(6.0, 0.8) * acc, 1e-13);
  }
}

TEST_CASE("tau level 1") {
  CuspLabel inf{1, 1, 1};
  CHECK_REL(tau_cusp({inf, 1.3, 1}), 7.5602308896851753, 1e-13);  // mpmath
  for (double s : {1.2, 1.5, 2.5})
    for (i64 n = 1; n <= 10; ++n) {
      double ref = 2 * std::pow(pi, s) * std::pow(double(n), s - 0.5) * sigma_complex(n, 1.0 - 2.0 * s).real() /
                   (std::tgamma(s) * riemann_zeta(2.0 * s).real());
      CHECK_REL(tau_cusp({inf, s, n}), ref, 1e-12);
    }
  auto o = tau_oracle(inf, 1.3, 1);
  CHECK_REL(tau_cusp({inf, 1.3, 1}), o.value, 1e-5);
}

TEST_CASE("tau conjugation symmetry") {
  for (i64 N : {1, 2, 3, 4, 6, 12})
    for (const auto& cu : enumerate_cusps(N))
      for (double r : {0.3, 1.1})
        for (i64 n : {1, -1, 2, -2})
          CHECK_REL(std::conj(tau_cusp({cu, cplx(0.5, r), n})), tau_cusp({cu, cplx(0.5, -r), -n}), 1e-10);
}

TEST_CASE("tau divisibility and evenness") {
  CuspLabel c{4, 4, 1};
  CHECK(tau_cusp({c, 1.3, 1}) == 0.0);
  CHECK(tau_cusp({c, 1.3, 2}) != 0.0);
  for (i64 N : {2, 3, 6})
    for (const auto& cu : enumerate_cusps(N)) CHECK_REL(tau_cusp({cu, 1.4, 3}), tau_cusp({cu, 1.4, -3}), 1e-14);
  TauCuspEvaluator ev(CuspLabel{6, 2, 1}, cplx(1.2, 0.3));
  for (i64 n : {1, 2, 5, 12}) CHECK_REL(ev(n), tau_cusp({CuspLabel{6, 2, 1}, cplx(1.2, 0.3), n}), 1e-14);
}

TEST_CASE("tau against the coset-sum oracle") {
  auto o = tau_oracle(CuspLabel{3, 3, 1}, 1.4, 2);
  CHECK_REL(tau_cusp({CuspLabel{3, 3, 1}, 1.4, 2}), o.value, 1e-4);
  CHECK_REL(tau_oracle(CuspLabel{2, 1, 1}, 1.5, 2).value, tau_oracle(CuspLabel{2, 1, 1}, 1.5, -2).value, 1e-12);
  LatticeTruncation tr;
  tr.max_height = 60;
  tr.fourier_points = 64;
  CuspLabel c{2, 1, 1};
  CHECK_REL(tau_fourier_extract(c, 2.5, 1, tr), tau_cusp({c, 2.5, 1}), 1e-3);
}

TEST_CASE("coset sum") {
  LatticeTruncation tr;
  tr.max_height = 120;
  cplx v = eisenstein_oracle(CuspLabel{1, 1, 1}, cplx(0, 1.3), 2.0, tr);
  CHECK(std::abs(v.imag()) < 1e-12 * std::abs(v));
  LatticeTruncation a, b;
  a.max_height = 200;
  b.max_height = 400;
  CuspLabel c{2, 2, 1};
  // tails O(H^{1-2s}) with s = 1.5
  CHECK(std::abs(eisenstein_oracle(c, I, 1.5, a) - eisenstein_oracle(c, I, 1.5, b)) < 4.0 / 200.0);
  CHECK(coset_row_admissible(CuspLabel{1, 1, 1}, 3, 7));
  CHECK_THROWS_AS(eisenstein_oracle(c, I, 0.9, a), Error);
}

TEST_CASE("cusp widths") {
  CHECK(cusp_width(CuspLabel{12, 1, 1}) == 12);
  CHECK(cusp_width(CuspLabel{12, 12, 1}) == 1);
  CHECK(cusp_width(CuspLabel{12, 2, 1}) == 3);
  i64 total = 0;
  for (const auto& c : enumerate_cusps(12)) total += cusp_width(c);
  CHECK(total == 24);  // index of Gamma_0(12)
}
