#include "rsm/eisenstein.hpp"

#include <cmath>
#include <numeric>

namespace rsm {

i64 cusp_width(const CuspLabel& cusp) { return cusp.N / std::gcd(cusp.N, cusp.a * cusp.a); }

cplx lambda_chi(i64 n, cplx s, const DirichletCharacter& chi) {
  if (n == 0) throw Error(ErrorKind::domain, "lambda_chi: n must be nonzero");
  i64 m = n < 0 ? -n : n;
  if (std::gcd(m, chi.modulus) != 1) return 0.0;
  cplx acc = 0.0;
  for (i64 d : divisors(m)) {
    cplx c = chi(d);
    acc += c * c * rpow(static_cast<double>(d), 1.0 - 2.0 * s);
  }
  return std::conj(chi(n)) * rpow(static_cast<double>(m), s - 0.5) * acc;
}

TauCuspEvaluator::TauCuspEvaluator(const CuspLabel& cu, cplx s) : cusp_(cu), s_(s) {
  const i64 N = cu.N, a = cu.a;
  if (N % a != 0) throw Error(ErrorKind::domain, "tau_cusp: a must divide N");
  const i64 g = std::gcd(a, N / a);
  const cplx gamma_s = complex_gamma(s);
  outer_ = rpow(static_cast<double>(N / g), -s) / static_cast<double>(euler_phi(g));
  for (i64 q : divisors(g)) {
    for (const auto& chi : primitive_characters_mod(q)) {
      cplx Lval = dirichlet_L_N(2.0 * s, chi.squared(), N);
      if (std::abs(Lval) < 1e-12)
        throw Error(ErrorKind::ill_conditioned, "tau_cusp: L^(N)(2s, chi^2) vanishes numerically");
      cplx head = std::conj(chi(-cu.c)) * rpow(static_cast<double>(q), -s) * gauss_sum(chi) /
                  (rpow(pi, -s) * gamma_s * Lval);
      heads_.push_back({chi, q, head});
    }
  }
}

cplx TauCuspEvaluator::operator()(i64 n) const {
  if (n == 0) throw Error(ErrorKind::domain, "tau_cusp: n must be nonzero");
  const i64 N = cusp_.N, a = cusp_.a;
  cplx total = 0.0;
  for (const auto& h : heads_) {
    const i64 q = h.q;
    cplx inner = 0.0;
    for (i64 l : divisors(a)) {
      int mul = mobius(l);
      if (mul == 0 || std::gcd(l, q) != 1 || (a / l) % q != 0) continue;
      for (i64 b : divisors(N / a)) {
        int mub = mobius(b);
        if (mub == 0 || std::gcd(b, q) != 1) continue;
        i64 m = b * (a / (q * l));
        if (n % m != 0) continue;
        inner += static_cast<double>(mul * mub) * h.chi(l * b) *
                 rpow(static_cast<double>(l * b), -s_) * 2.0 * std::sqrt(static_cast<double>(m)) *
                 lambda_chi(n / m, s_, h.chi);
      }
    }
    total += h.head * inner;
  }
  return outer_ * total;
}

cplx tau_cusp(const EisensteinCoefficientRequest& req) {
  return TauCuspEvaluator(req.cusp, req.s)(req.n);
}

bool coset_row_admissible(const CuspLabel& cu, i64 cp, i64 dp) {
  if (std::gcd(cp, dp) != 1) return false;
  const i64 ca = cu.c * cu.a;
  if (cp == 0) return cu.a == cu.N;
  if (cp < 0) { cp = -cp; dp = -dp; }
  i64 alpha = cp == 1 ? 0 : mod_inverse(dp, cp);
  i64 gg = std::gcd(cu.N, ca * cp);
  i64 r = (ca % gg) * (alpha % gg) % gg + cp % gg;
  return r % gg == 0;
}

cplx eisenstein_oracle(const CuspLabel& cu, cplx z, cplx s, const LatticeTruncation& trunc) {
  if (!(z.imag() > 0.0)) throw Error(ErrorKind::domain, "eisenstein_oracle: z must lie in the upper half plane");
  if (!(s.real() > 1.0)) throw Error(ErrorKind::region, "eisenstein_oracle: needs Re s > 1");
  const double y = z.imag();
  const i64 H = trunc.max_height;
  cplx acc = 0.0;
  if (cu.a == cu.N) acc += rpow(y, s);
  for (i64 cp = 1; cp <= H; ++cp) {
    for (i64 dp = -H; dp <= H; ++dp) {
      if (!coset_row_admissible(cu, cp, dp)) continue;
      double den = std::norm(static_cast<double>(cp) * z + static_cast<double>(dp));
      acc += rpow(y / den, s);
    }
  }
  return rpow(static_cast<double>(cusp_width(cu)), -s) * acc;
}

Estimate tau_oracle(const CuspLabel& cu, cplx s, i64 n, i64 max_c) {
  if (n == 0) throw Error(ErrorKind::domain, "tau_oracle: n must be nonzero");
  if (!(s.real() > 1.0)) throw Error(ErrorKind::region, "tau_oracle: needs Re s > 1");
  const i64 ca = cu.c * cu.a;
  cplx sum = 0.0, half = 0.0;
  for (i64 cp = 1; cp <= max_c; ++cp) {
    // admissible residues: gcd(N, ca c') | ca * d'^{-1} + c'
    i64 gg = std::gcd(cu.N, ca * cp);
    cplx S = 0.0;
    for (i64 d = 0; d < cp; ++d) {
      if (std::gcd(d, cp) != 1) continue;
      i64 alpha = cp == 1 ? 0 : mod_inverse(d, cp);
      if (((ca % gg) * (alpha % gg) + cp) % gg != 0) continue;
      S += std::polar(1.0, 2.0 * pi * static_cast<double>((n % cp) * d % cp) / cp);
    }
    sum += rpow(static_cast<double>(cp), -2.0 * s) * S;
    if (cp == max_c / 2) half = sum;
  }
  double an = static_cast<double>(n < 0 ? -n : n);
  cplx pref = rpow(static_cast<double>(cusp_width(cu)), -s) * 2.0 * rpow(pi, s) *
              rpow(an, s - 0.5) / complex_gamma(s);
  return {pref * sum, std::abs(pref * (sum - half))};
}

cplx tau_fourier_extract(const CuspLabel& cu, cplx s, i64 n, const LatticeTruncation& trunc) {
  const double y = trunc.fourier_y;
  const int P = trunc.fourier_points;
  double an = static_cast<double>(n < 0 ? -n : n);
  cplx K = bessel_K(s - 0.5, 2.0 * pi * an * y);
  if (std::abs(K) < 1e-8) throw Error(ErrorKind::ill_conditioned, "tau_fourier_extract: K-Bessel divisor underflows");
  cplx acc = 0.0;
  for (int j = 0; j < P; ++j) {
    double x = (j + 0.5) / P;
    acc += eisenstein_oracle(cu, cplx(x, y), s, trunc) * std::polar(1.0, -2.0 * pi * n * x);
  }
  return acc / static_cast<double>(P) / (std::sqrt(y) * K);
}

}  // namespace rsm
