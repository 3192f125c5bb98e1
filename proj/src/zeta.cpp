#include <array>
#include <cmath>

#include "rsm/specfun.hpp"

namespace rsm {

namespace {

constexpr std::array<double, 12> bernoulli = {
    1.0 / 6,         -1.0 / 30,        1.0 / 42,         -1.0 / 30,
    5.0 / 66,        -691.0 / 2730,    7.0 / 6,          -3617.0 / 510,
    43867.0 / 798,   -174611.0 / 330,  854513.0 / 138,   -236364091.0 / 2730};

// sum_{n>=0} (n+a)^{-s} - 1/(s-1), by Euler-Maclaurin with 12 corrections
cplx hurwitz_regular(cplx s, double a) {
  int N = std::max(20, static_cast<int>(2.0 * std::abs(s.imag())) + 1);
  N = std::max(N, static_cast<int>(std::abs(s)) + 10);
  cplx sum = 0.0;
  for (int n = 0; n < N; ++n) sum += std::exp(-s * std::log(n + a));
  double x = N + a;
  double lx = std::log(x);
  // (x^{1-s} - 1)/(s-1) = -lx * expm1(u)/u with u = (1-s) lx
  cplx u = (1.0 - s) * lx;
  cplx pole_part = std::abs(u) == 0.0 ? cplx(-lx) : -lx * expm1c(u) / u;
  cplx xs = std::exp(-s * lx);
  sum += pole_part + 0.5 * xs;
  // B_2k/(2k)! * s(s+1)...(s+2k-2) x^{-s-2k+1}
  cplx rising = s;
  cplx pw = xs / x;
  double fact = 2.0;
  for (int k = 1; k <= 12; ++k) {
    sum += bernoulli[k - 1] / fact * rising * pw;
    rising *= (s + (2.0 * k - 1.0)) * (s + 2.0 * k);
    pw /= x * x;
    fact *= (2.0 * k + 1.0) * (2.0 * k + 2.0);
  }
  return sum;
}

cplx log_sin(cplx w) {
  if (std::abs(w.imag()) < 30.0) return std::log(std::sin(w));
  if (w.imag() > 0.0) return std::log(cplx(0.0, 0.5)) - I * w + std::log(1.0 - std::exp(2.0 * I * w));
  return std::log(cplx(0.0, -0.5)) + I * w + std::log(1.0 - std::exp(-2.0 * I * w));
}

}  // namespace

cplx riemann_zeta(cplx s) {
  if (s == cplx(1.0, 0.0)) throw Error(ErrorKind::pole, "riemann_zeta: pole at s=1");
  if (s.real() < 0.0) {
    // functional equation in log form, no overflow at large |Im s|
    if (s.imag() == 0.0 && std::fmod(-s.real(), 2.0) == 0.0) return 0.0;  // trivial zeros
    cplx lg = s * std::log(2.0) + (s - 1.0) * std::log(pi) + log_sin(pi * s / 2.0) +
              log_gamma(1.0 - s);
    return std::exp(lg) * riemann_zeta(1.0 - s);
  }
  return hurwitz_regular(s, 1.0) + 1.0 / (s - 1.0);
}

cplx riemann_zeta_deriv(cplx s) {
  double r = std::min(0.25, 0.5 * std::abs(s - 1.0));
  return cauchy_derivative([](cplx z) { return riemann_zeta(z); }, s, r, 1, 48);
}

cplx hurwitz_zeta(cplx s, double a) {
  if (s == cplx(1.0, 0.0)) throw Error(ErrorKind::pole, "hurwitz_zeta: pole at s=1");
  if (a <= 0.0) throw Error(ErrorKind::domain, "hurwitz_zeta: a must be positive");
  return hurwitz_regular(s, a) + 1.0 / (s - 1.0);
}

DirichletCharacter DirichletCharacter::squared() const {
  DirichletCharacter c = *this;
  for (auto& v : c.values) v *= v;
  c.is_trivial = true;
  for (std::size_t n = 0; n < c.values.size(); ++n)
    if (std::abs(c.values[n]) > 0.5 && std::abs(c.values[n] - 1.0) > 1e-9) c.is_trivial = false;
  c.is_primitive = (modulus == 1);  // recomputed by callers that need it
  return c;
}

DirichletCharacter DirichletCharacter::conj() const {
  DirichletCharacter c = *this;
  for (auto& v : c.values) v = std::conj(v);
  return c;
}

DirichletCharacter trivial_character(std::int64_t q) {
  DirichletCharacter c;
  c.modulus = q;
  c.values.assign(static_cast<std::size_t>(q), 0.0);
  for (std::int64_t n = 0; n < q; ++n) {
    std::int64_t a = n, b = q;
    while (b) { std::int64_t t = a % b; a = b; b = t; }
    if (a == 1) c.values[static_cast<std::size_t>(n)] = 1.0;
  }
  c.is_trivial = true;
  c.is_primitive = (q == 1);
  return c;
}

cplx gauss_sum(const DirichletCharacter& chi) {
  cplx acc = 0.0;
  for (std::int64_t n = 0; n < chi.modulus; ++n)
    acc += chi(n) * std::polar(1.0, 2.0 * pi * static_cast<double>(n) / chi.modulus);
  return acc;
}

cplx dirichlet_L(cplx s, const DirichletCharacter& chi) {
  const std::int64_t q = chi.modulus;
  if (q == 1) return riemann_zeta(s);
  cplx total_weight = 0.0;
  for (std::int64_t a = 1; a <= q; ++a) total_weight += chi(a);
  bool principal = std::abs(total_weight) > 0.5;
  if (principal && s == cplx(1.0, 0.0))
    throw Error(ErrorKind::pole, "dirichlet_L: pole of the principal character at s=1");
  if (s.real() < 0.0)
    throw Error(ErrorKind::domain, "dirichlet_L: Re s < 0 not supported");
  cplx acc = 0.0;
  for (std::int64_t a = 1; a <= q; ++a) {
    cplx c = chi(a);
    if (c == 0.0) continue;
    acc += c * hurwitz_regular(s, static_cast<double>(a) / q);
  }
  if (principal) acc += total_weight / (s - 1.0);
  return std::exp(-s * std::log(static_cast<double>(q))) * acc;
}

cplx dirichlet_L_N(cplx s, const DirichletCharacter& chi, std::int64_t N) {
  cplx v = dirichlet_L(s, chi);
  std::int64_t m = N;
  for (std::int64_t p = 2; p * p <= m; ++p) {
    if (m % p) continue;
    while (m % p == 0) m /= p;
    v *= 1.0 - chi(p) * std::exp(-s * std::log(static_cast<double>(p)));
  }
  if (m > 1) v *= 1.0 - chi(m) * std::exp(-s * std::log(static_cast<double>(m)));
  return v;
}

}  // namespace rsm
