#include <sstream>

#include "check.hpp"
#include "rsm/eisenstein.hpp"
#include "rsm/lseries.hpp"

using namespace rsm;

// Delta-based references: partial sums in Python from q prod (1 - q^n)^24 (pentagonal theorem)

TEST_CASE("Delta coefficients") {
  const auto& D = delta_form();
  CHECK(D.N == 1);
  CHECK(D.k == 12);
  CHECK(D.a[2] == -24);
  CHECK(D.a[3] == 252);
  CHECK(D.a[6] == -6048);
  CHECK(D.a[6] == D.a[2] * D.a[3]);
  CHECK(D.a[2000] == -354382910343168000.0);
  for (i64 n = 2; n <= 2000; ++n) CHECK(std::abs(D.A(n)) <= double(divisors(n).size()) * (1 + 1e-12));
}

TEST_CASE("weight 24 eigenforms") {
  const auto& W = weight24_pair();
  double r = 12 * std::sqrt(144169.0);
  CHECK(std::abs(W.first.a[2] - (540 - r)) < 1e-6);
  CHECK(std::abs(W.second.a[2] - (540 + r)) < 1e-6);
  CHECK_REL(W.first.a[6], W.first.a[2] * W.first.a[3], 1e-12);
  CHECK_REL(W.second.a[35], W.second.a[5] * W.second.a[7], 1e-12);
}

TEST_CASE("newform parsing") {
  std::istringstream ok("# comment\n1 12 3\n1 1\n2 -24\n3 252\n");
  auto f = parse_newform(ok);
  CHECK(f.M() == 3);
  CHECK(f.a[2] == -24);
  std::istringstream bad("1 12 2\n1 2\n2 -24\n");
  try {
    parse_newform(bad);
    FAIL("accepted a(1) = 2");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::invariant);
  }
  std::istringstream missing("1 12 3\n1 1\n3 252\n");
  CHECK_THROWS_AS(parse_newform(missing), Error);
  std::istringstream header("twelve\n");
  CHECK_THROWS_AS(parse_newform(header), Error);
  CHECK_THROWS_AS(load_newform("/nonexistent/delta.txt"), Error);
}

TEST_CASE("holomorphic L-function") {
  const auto& D = delta_form();
  auto L = holomorphic_level1(D);
  CHECK_REL(L(cplx(6.5, 2)), cplx(0.99871206147941222, 0.0054076067516967969), 1e-13);
  CHECK_REL(L(2.5), L.direct(2.5, 100000), 1e-10);
  CHECK(std::abs(holo_L(1.7, D).imag()) < 1e-14);
  // Lambda(s) = i^k Lambda(1 - s) on the critical line
  for (double y : {3.0, 17.0, 45.0}) {
    cplx s(0.5, y);
    CHECK_REL(std::exp(L.log_gamma_factor(s)) * L(s), std::exp(L.log_gamma_factor(1.0 - s)) * L(1.0 - s), 1e-7);
  }
}

TEST_CASE("Rankin-Selberg at level 1") {
  const auto& D = delta_form();
  auto rs = rankin_selberg_level1(D, D, true);
  // residue against (pi/2)(4 pi)^12/11! <Delta, Delta>
  CHECK_REL(rs.residue(), 0.6317929457278832, 1e-10);
  auto r3 = residue_at_1(rs, 3), r4 = residue_at_1(rs, 4);
  CHECK(r3.value.real() > 0);
  CHECK(std::abs(r3.value - r4.value) <= r3.error + r4.error + 1e-12);
  // n <= 2000 in the oracle, tail ~ 1e-9
  auto d35 = rankin_selberg_direct(cplx(3.5, -1), D, D, 2000);
  CHECK_REL(d35.value, cplx(1.0232420751162694, 0.03788674941432592), 1e-13);
  CHECK(std::abs(rs(cplx(3.5, -1)) - d35.value) <= d35.tail_bound);
  auto a = rankin_selberg_direct(2.0, D, D, 10000), b = rankin_selberg_direct(2.0, D, D, 40000);
  CHECK(a.value.real() > 0);
  CHECK(std::abs(a.value.imag()) < 1e-15 * a.value.real());
  CHECK(std::abs(a.value - b.value) <= a.tail_bound + b.tail_bound);
  auto d25 = rankin_selberg_direct(2.5, D, D, 100000);
  CHECK(std::abs(rs(2.5) - d25.value) <= d25.tail_bound);
  CHECK_REL(rs(2.5), d25.value, 1e-7);
  CHECK_THROWS_AS(rankin_selberg_direct(1.0, D, D, 1000), Error);
  // L(conj z) = conj L(z)
  cplx z(0.5, 40.0);
  CHECK(std::abs(rs(std::conj(z)) - std::conj(rs(z))) < 1e-12 * std::abs(rs(z)));
}

TEST_CASE("Eisenstein Dirichlet series factorization") {
  for (const auto& cu : enumerate_cusps(2))
    for (double t : {0.0, 0.7}) {
      auto d = curly_L_eisenstein_direct(2.5, t, I * 0.3, cu, 100000);
      CHECK_REL(d.value, curly_L_eisenstein(2.5, t, I * 0.3, cu), 1e-6);
    }
}

TEST_CASE("Euler polynomial zeros") {
  for (i64 N : {2, 4, 6, 12})
    for (const auto& cu : enumerate_cusps(N))
      for (double y : {-1.0, 0.4}) {
        cplx s(0.8, y), it = I * 0.3;
        cplx P = scrP_eisenstein(s, 0.3, 1.0 - s + it, cu);
        if (cu.a < N) {
          CHECK(std::abs(P) < 1e-12);
        } else {
          cplx den = 1.0, rhs = 2.0 * rpow(N, 1.0 - 2.0 * s);
          for (i64 p : prime_divisors(N)) {
            den *= 1.0 - rpow(p, 1.0 - 2.0 * s + 2.0 * it);
            rhs *= (1.0 - rpow(p, -1.0 - 2.0 * it)) * (1.0 - 1.0 / p);
          }
          CHECK_REL(P / den, rhs, 1e-12);
        }
      }
}

TEST_CASE("Eisenstein cusp-sum functional equation") {
  for (i64 N : {1, 2, 3})
    for (i64 n : {1, 2}) {
      cplx ir = I * 0.3, a = 0.0, b = 0.0;
      for (const auto& cu : enumerate_cusps(N)) {
        a += curly_L_eisenstein(2.5, 0.7, ir, cu) * tau_cusp({cu, 0.5 + ir, n});
        b += curly_L_eisenstein(2.5, 0.7, -ir, cu) * tau_cusp({cu, 0.5 - ir, n});
      }
      CHECK_REL(a, b, 1e-6);
    }
}

TEST_CASE("Maass Dirichlet series") {
  auto u1 = synthetic_maass(1, 1, 5.0, 200000);
  cplx s = 2.5;
  CHECK_REL(curly_L_maass(s, 0.7, u1), u1.rho1 * maass_L(s + 0.7 * I, u1) * maass_L(s - 0.7 * I, u1), 1e-12);
  CHECK_REL(curly_L_maass(s, 0.0, u1), u1.rho1 * maass_L(s, u1) * maass_L(s, u1), 1e-12);
  auto u2 = synthetic_maass(2, 1, 5.0, 200000);
  CHECK_REL(curly_L_maass_direct(s, 0.7, u2, 200000).value, curly_L_maass(s, 0.7, u2), 1e-8);
  CHECK_REL(curly_L_maass_lemma(s, 0.7, u1), curly_L_maass(s, 0.7, u1), 1e-10);
  // Hecke relations of the synthetic eigenvalues
  CHECK_REL(u1.lam(6), u1.lam(2) * u1.lam(3), 1e-12);
  CHECK_REL(u1.lam(4), u1.lam(2) * u1.lam(2) - 1.0, 1e-12);
}

TEST_CASE("divisor bound constant") {
  for (double eps : {0.1, 0.2, 0.3}) {
    double c = divisor_bound_constant(eps);
    for (i64 n = 1; n <= 20000; ++n) CHECK(double(divisors(n).size()) <= c * std::pow(double(n), eps) * (1 + 1e-12));
  }
}
