#include "rsm/arith.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace rsm {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

u64 powmod(u64 a, u64 e, u64 m) {
  u64 r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

bool miller_rabin(u64 n) {
  if (n < 2) return false;
  for (u64 p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % p == 0) return n == p;
  }
  u64 d = n - 1;
  int r = 0;
  while ((d & 1) == 0) { d >>= 1; ++r; }
  // deterministic witness set for 64-bit inputs
  for (u64 a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < r; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) { composite = false; break; }
    }
    if (composite) return false;
  }
  return true;
}

u64 pollard_rho(u64 n) {
  if (n % 2 == 0) return 2;
  for (u64 c = 1;; ++c) {
    u64 x = 2, y = 2, d = 1;
    auto f = [&](u64 v) { return (mulmod(v, v, n) + c) % n; };
    while (d == 1) {
      x = f(x);
      y = f(f(y));
      d = std::gcd(x > y ? x - y : y - x, n);
    }
    if (d != n) return d;
  }
}

void factor_rec(u64 n, std::vector<u64>& out) {
  if (n == 1) return;
  if (miller_rabin(n)) { out.push_back(n); return; }
  u64 d = pollard_rho(n);
  factor_rec(d, out);
  factor_rec(n / d, out);
}

}  // namespace

i64 gcd(i64 a, i64 b) { return std::gcd(a, b); }

bool is_prime(i64 n) { return n > 1 && miller_rabin(static_cast<u64>(n)); }

PrimeFactorization factorize(i64 n) {
  if (n < 1) throw Error(ErrorKind::domain, "factorize: n must be positive");
  std::vector<u64> primes;
  u64 m = static_cast<u64>(n);
  for (u64 p = 2; p < 1000 && p * p <= m; ++p) {
    while (m % p == 0) { primes.push_back(p); m /= p; }
  }
  factor_rec(m, primes);
  std::sort(primes.begin(), primes.end());
  PrimeFactorization f;
  for (u64 p : primes) {
    if (!f.empty() && f.back().p == static_cast<i64>(p)) ++f.back().e;
    else f.push_back({static_cast<i64>(p), 1});
  }
  return f;
}

std::vector<i64> prime_divisors(i64 n) {
  std::vector<i64> ps;
  for (const auto& f : factorize(n)) ps.push_back(f.p);
  return ps;
}

std::vector<i64> divisors(i64 n) {
  std::vector<i64> ds{1};
  for (const auto& [p, e] : factorize(n)) {
    std::size_t sz = ds.size();
    i64 pk = 1;
    for (int j = 1; j <= e; ++j) {
      pk *= p;
      for (std::size_t i = 0; i < sz; ++i) ds.push_back(ds[i] * pk);
    }
  }
  std::sort(ds.begin(), ds.end());
  return ds;
}

int ord_p(i64 n, i64 p) {
  if (n == 0) throw Error(ErrorKind::domain, "ord_p: n = 0");
  int e = 0;
  n = n < 0 ? -n : n;
  while (n % p == 0) { n /= p; ++e; }
  return e;
}

i64 euler_phi(i64 n) {
  i64 r = n;
  for (i64 p : prime_divisors(n)) r = r / p * (p - 1);
  return r;
}

int mobius(i64 n) {
  int mu = 1;
  for (const auto& f : factorize(n)) {
    if (f.e > 1) return 0;
    mu = -mu;
  }
  return mu;
}

i64 radical(i64 n) {
  i64 r = 1;
  for (i64 p : prime_divisors(n)) r *= p;
  return r;
}

i64 mod_inverse(i64 a, i64 m) {
  if (m == 1) return 0;
  i64 g = m, x = 0, x1 = 1, b = ((a % m) + m) % m;
  i64 r = b;
  while (r) {
    i64 q = g / r;
    std::tie(g, r) = std::make_pair(r, g - q * r);
    std::tie(x, x1) = std::make_pair(x1, x - q * x1);
  }
  if (g != 1) throw Error(ErrorKind::domain, "mod_inverse: not invertible");
  return ((x % m) + m) % m;
}

cplx sigma_complex(i64 n, cplx z) {
  cplx acc = 0.0;
  for (i64 d : divisors(n)) acc += rpow(static_cast<double>(d), z);
  return acc;
}

cplx sigma_complex_coprime(i64 n, cplx z, i64 N) {
  cplx acc = 0.0;
  for (i64 d : divisors(n))
    if (std::gcd(d, N) == 1) acc += rpow(static_cast<double>(d), z);
  return acc;
}

cplx P_local(cplx s, int ord_n, i64 p, int ord_M) {
  // with x = (1-2s) log p the local factor is (e^{ax}(1 - p e^{-x}) + p - 1)/(1 - e^x),
  // a = ord_p(n) + 2 - ord_p(M); everything is 2 pi i periodic in x
  double lp = std::log(static_cast<double>(p));
  cplx x = (1.0 - 2.0 * s) * lp;
  x -= cplx(0.0, 2.0 * pi * std::round(x.imag() / (2.0 * pi)));
  double a = ord_n + 2 - ord_M;
  double pd = static_cast<double>(p);
  if (std::abs(x) < 1e-300) return pd * (a - 1.0) - a;
  cplx num = expm1c(a * x) - pd * expm1c((a - 1.0) * x);
  return num / (-expm1c(x));
}

cplx P_M(cplx s, i64 n, i64 M) {
  cplx acc = 1.0;
  for (const auto& [p, eM] : factorize(M)) acc *= P_local(s, ord_p(n, p), p, eM);
  return acc;
}

cplx P_M_conversion_factor(cplx s, i64 M) {
  return rpow(static_cast<double>(M), 1.0 - 2.0 * s) / static_cast<double>(radical(M));
}

cplx sigma_twisted_N(i64 m, i64 N, cplx t) {
  i64 rad = radical(N);
  if (m % (N / rad) != 0) return 0.0;
  cplx it = I * t;
  return rpow(static_cast<double>(N), -2.0 * it) / static_cast<double>(rad) *
         P_M(0.5 + it, m, N) * sigma_complex_coprime(m, -2.0 * it, N);
}

double sigma_twisted_N_bound(i64 N) {
  // each local factor of P_N is a sum of at most ord_p(m) + 2 unimodular terms weighted by 1 or p
  double c = 1.0;
  for (i64 p : prime_divisors(N)) c *= 2.0 * (p + 1.0) / static_cast<double>(p);
  return c;
}

cplx zeta_depleted(cplx s, i64 N) {
  cplx z = riemann_zeta(s);
  return z * euler_product(N, [&](double p) { return 1.0 - rpow(p, -s); });
}

std::vector<CuspLabel> enumerate_cusps(i64 N) {
  if (N < 1) throw Error(ErrorKind::domain, "enumerate_cusps: N must be positive");
  std::vector<CuspLabel> out;
  for (i64 a : divisors(N)) {
    i64 g = std::gcd(a, N / a);
    for (i64 c0 = 1; c0 <= g; ++c0) {
      if (std::gcd(c0, g) != 1) continue;
      i64 c = c0;
      while (std::gcd(c, N) != 1) c += g;
      out.push_back({N, a, c});
    }
  }
  return out;
}

i64 cusp_count(i64 N) {
  i64 total = 0;
  for (i64 a : divisors(N)) total += euler_phi(std::gcd(a, N / a));
  return total;
}

namespace {

struct CyclicFactor {
  i64 generator;  // lifted to the full modulus
  i64 order;
};

i64 crt_lift(i64 g, i64 m, i64 q) {
  // G = g mod m, G = 1 mod q/m
  i64 r = q / m;
  if (r == 1) return ((g % q) + q) % q;
  // G = 1 + r * k with 1 + r k = g mod m
  i64 k = static_cast<i64>(static_cast<__int128>((g - 1) % m + m) % m * mod_inverse(r % m, m) % m);
  return (1 + r * k) % q;
}

i64 multiplicative_order(i64 g, i64 m) {
  i64 o = 1, x = g % m;
  while (x != 1) {
    x = static_cast<i64>(static_cast<__int128>(x) * g % m);
    ++o;
  }
  return o;
}

std::vector<CyclicFactor> unit_group(i64 q) {
  std::vector<CyclicFactor> gens;
  for (const auto& [p, e] : factorize(q)) {
    i64 m = 1;
    for (int j = 0; j < e; ++j) m *= p;
    if (p == 2) {
      if (e == 1) continue;
      gens.push_back({crt_lift(m - 1, m, q), 2});
      if (e >= 3) gens.push_back({crt_lift(5, m, q), m / 4});
      continue;
    }
    i64 phi = m / p * (p - 1);
    i64 g = 2;
    while (multiplicative_order(g, m) != phi || std::gcd(g, m) != 1) ++g;
    gens.push_back({crt_lift(g, m, q), phi});
  }
  return gens;
}

}  // namespace

bool character_is_primitive(const DirichletCharacter& chi) {
  i64 q = chi.modulus;
  for (i64 p : prime_divisors(q)) {
    i64 d = q / p;
    bool induced = true;
    for (i64 n = 1; n < q && induced; n += d) {
      if (std::gcd(n, q) != 1) continue;
      if (std::abs(chi(n) - 1.0) > 1e-9) induced = false;
    }
    if (induced) return false;
  }
  return true;
}

std::vector<DirichletCharacter> characters_mod(i64 q) {
  if (q < 1) throw Error(ErrorKind::domain, "characters_mod: q must be positive");
  auto gens = unit_group(q);
  // exponent vector of every unit
  std::vector<std::vector<i64>> exps(static_cast<std::size_t>(q));
  std::vector<i64> e(gens.size(), 0);
  for (;;) {
    i64 n = 1 % q;
    for (std::size_t i = 0; i < gens.size(); ++i)
      for (i64 j = 0; j < e[i]; ++j) n = static_cast<i64>(static_cast<__int128>(n) * gens[i].generator % q);
    exps[static_cast<std::size_t>(n)] = e;
    std::size_t i = 0;
    while (i < gens.size() && ++e[i] == gens[i].order) e[i++] = 0;
    if (i == gens.size()) break;
  }
  std::vector<DirichletCharacter> out;
  std::vector<i64> j(gens.size(), 0);
  for (;;) {
    DirichletCharacter chi;
    chi.modulus = q;
    chi.values.assign(static_cast<std::size_t>(q), 0.0);
    chi.is_trivial = true;
    for (i64 n = 0; n < q; ++n) {
      if (std::gcd(n, q) != 1) continue;
      const auto& v = exps[static_cast<std::size_t>(n)];
      double frac = 0.0;
      for (std::size_t i = 0; i < gens.size(); ++i)
        frac += static_cast<double>(j[i] * v[i] % gens[i].order) / gens[i].order;
      frac -= std::floor(frac);
      cplx val = std::polar(1.0, 2.0 * pi * frac);
      // exact values at quarter turns
      if (frac == 0.0) val = 1.0;
      else if (frac == 0.5) val = -1.0;
      else if (frac == 0.25) val = I;
      else if (frac == 0.75) val = -I;
      chi.values[static_cast<std::size_t>(n)] = val;
      if (frac != 0.0) chi.is_trivial = false;
    }
    if (q == 1) chi.values[0] = 1.0;
    chi.is_primitive = character_is_primitive(chi);
    out.push_back(std::move(chi));
    std::size_t i = 0;
    while (i < gens.size() && ++j[i] == gens[i].order) j[i++] = 0;
    if (i == gens.size()) break;
  }
  return out;
}

std::vector<DirichletCharacter> primitive_characters_mod(i64 q) {
  std::vector<DirichletCharacter> out;
  for (auto& c : characters_mod(q))
    if (c.is_primitive) out.push_back(std::move(c));
  return out;
}

}  // namespace rsm
