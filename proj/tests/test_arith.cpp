#include <algorithm>

#include "check.hpp"
#include "rsm/arith.hpp"

using namespace rsm;

TEST_CASE("factorize") {
  CHECK(factorize(12) == PrimeFactorization{{2, 2}, {3, 1}});
  CHECK(factorize(1).empty());
  CHECK(factorize(97) == PrimeFactorization{{97, 1}});
  CHECK(factorize(1000000007LL * 998244353LL) == PrimeFactorization{{998244353, 1}, {1000000007, 1}});
  CHECK_THROWS_AS(factorize(0), Error);
}

TEST_CASE("elementary functions") {
  CHECK(divisors(12) == std::vector<i64>{1, 2, 3, 4, 6, 12});
  CHECK(euler_phi(36) == 12);
  CHECK(mobius(30) == -1);
  CHECK(mobius(12) == 0);
  CHECK(radical(72) == 6);
  CHECK(ord_p(96, 2) == 5);
  CHECK(mod_inverse(3, 7) == 5);
  CHECK_THROWS_AS(mod_inverse(2, 4), Error);
}

TEST_CASE("divisor sums") {
  CHECK_REL(sigma_complex(6, 0.0), 4.0, 1e-15);
  CHECK_REL(sigma_complex(6, 1.0), 12.0, 1e-15);
  cplx z(0, -2);
  CHECK_REL(sigma_complex(4, z), 1.0 + rpow(2, z) + rpow(4, z), 1e-15);
  for (i64 m = 1; m <= 40; ++m)
    for (i64 n = 1; n <= 40; ++n)
      if (gcd(m, n) == 1) CHECK_REL(sigma_complex(m * n, cplx(-0.3, 1.1)), sigma_complex(m, cplx(-0.3, 1.1)) * sigma_complex(n, cplx(-0.3, 1.1)), 1e-13);
  CHECK_REL(sigma_complex_coprime(12, 1.0, 2), 4.0, 1e-15);
}

TEST_CASE("euler polynomial P_M") {
  CHECK_REL(P_M(cplx(0.3, 0.8), 7, 1), 1.0, 0.0 + 1e-300);
  // M = p, ord_p(n) = 0, s = 1/2 + it
  for (double t : {0.3, 1.7})
    for (i64 p : {2, 3, 7}) {
      cplx it = I * t;
      cplx ref = (rpow(p, -2.0 * it) * (1.0 - rpow(p, 1.0 + 2.0 * it)) + double(p) - 1.0) / (1.0 - rpow(p, -2.0 * it));
      CHECK_REL(P_M(0.5 + it, 5, p), ref, 1e-13);
    }
  cplx s(0.5, 0.9);
  for (i64 n : {1, 2, 6, 12, 45})
    CHECK_REL(P_M(s, n, 12 * 5), P_M(s, n, 12) * P_M(s, n, 5), 1e-13);
  // removable point: finite value
  CHECK(finite(P_M(0.5, 3, 2)));
  CHECK_REL(P_M(0.5, 3, 2), P_M(cplx(0.5, 1e-7), 3, 2), 1e-6);
}

TEST_CASE("twisted divisor sum") {
  for (i64 m = 1; m <= 10000; m += 37)
    for (double t : {0.0, 0.7, 2.3}) CHECK_REL(sigma_twisted_N(m, 1, t), sigma_complex(m, cplx(0, -2 * t)), 1e-13);
  for (i64 m = 1; m <= 49; m += 2) CHECK(sigma_twisted_N(m, 4, 0.7) == 0.0);
  // N = 2, m = 2: the display transcribed by hand
  cplx it = I * 0.7;
  cplx local = P_local(0.5 + it, 1, 2, 1);
  cplx ref = rpow(2, -2.0 * it) / 2.0 * local * 1.0;
  CHECK_REL(sigma_twisted_N(2, 2, 0.7), ref, 1e-14);
  // the bound
  for (i64 N : {1, 2, 6, 12, 30}) {
    double c = sigma_twisted_N_bound(N);
    for (i64 m = 1; m <= 3000; ++m) {
      double d = double(divisors(m).size());
      CHECK(std::abs(sigma_twisted_N(m, N, 0.7)) <= c * d * (1 + 1e-12));
    }
  }
}

TEST_CASE("depleted zeta") {
  CHECK_REL(zeta_depleted(2.0, 1), pi * pi / 6, 1e-14);
  CHECK_REL(zeta_depleted(2.0, 2), pi * pi / 8, 1e-14);
  CHECK_REL(zeta_depleted(2.0, 6), pi * pi / 9, 1e-14);
}

// cusps of Gamma_0(N) by brute force: orbits of P^1(Q) represented by fractions u/v
i64 coset_cusp_count(i64 N) {
  // a cusp u/v (gcd(u, v) = 1) is determined by d = gcd(v, N) and u mod gcd(d, N/d) up to units
  std::vector<std::pair<i64, i64>> seen;
  for (i64 v = 1; v <= 4 * N; ++v)
    for (i64 u = 0; u <= 4 * N; ++u) {
      if (gcd(u, v) != 1) continue;
      i64 d = gcd(v, N);
      i64 g = gcd(d, N / d);
      std::pair<i64, i64> key{d, ((u * (v / d)) % g + g) % g};
      if (std::find(seen.begin(), seen.end(), key) == seen.end()) seen.push_back(key);
    }
  return static_cast<i64>(seen.size());
}

TEST_CASE("cusps") {
  CHECK(enumerate_cusps(1).size() == 1);
  for (i64 p : {2, 3, 5, 7, 11}) {
    auto c = enumerate_cusps(p);
    REQUIRE(c.size() == 2);
    CHECK(c[0].a == 1);
    CHECK(c[1].a == p);
  }
  CHECK(enumerate_cusps(4).size() == 3);
  CHECK(cusp_count(12) == 6);
  for (i64 N = 1; N <= 60; ++N) {
    CHECK(i64(enumerate_cusps(N).size()) == cusp_count(N));
    for (const auto& c : enumerate_cusps(N)) CHECK(gcd(c.c, N) == 1);
  }
  for (i64 N : {4, 8, 9, 12, 16, 18, 25, 36}) CHECK(coset_cusp_count(N) == cusp_count(N));
}

TEST_CASE("characters") {
  auto c1 = characters_mod(1);
  REQUIRE(c1.size() == 1);
  CHECK(c1[0].is_trivial);
  auto count_primitive = [](i64 q) {
    int n = 0;
    for (const auto& c : characters_mod(q)) n += c.is_primitive;
    return n;
  };
  CHECK(characters_mod(3).size() == 2);
  CHECK(count_primitive(3) == 1);
  CHECK(characters_mod(8).size() == 4);
  CHECK(count_primitive(8) == 2);
  for (i64 q = 1; q <= 30; ++q) {
    CHECK(i64(characters_mod(q).size()) == euler_phi(q));
    CHECK(primitive_characters_mod(q).size() == size_t(count_primitive(q)));
  }
}
