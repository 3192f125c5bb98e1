#include <cmath>
#include <fstream>
#include <mutex>
#include <random>
#include <sstream>

#include "rsm/lseries.hpp"

namespace rsm {

using i128 = __int128;
using u128 = unsigned __int128;

double NewformData::A(i64 n) const {
  if (n < 1 || n > M())
    throw Error(ErrorKind::missing_data, "coefficient a(" + std::to_string(n) + ") beyond horizon M=" +
                                             std::to_string(M()));
  return a[static_cast<std::size_t>(n)] * std::pow(static_cast<double>(n), -(k - 1) / 2.0);
}

double MaassFormData::lam(i64 m) const {
  if (m < 1) return 0.0;
  if (m > M())
    throw Error(ErrorKind::missing_data,
                "lambda(" + std::to_string(m) + ") beyond horizon M=" + std::to_string(M()));
  return lambda[static_cast<std::size_t>(m)];
}

double MaassFormData::rho(i64 n) const {
  double acc = 0.0;
  for (const auto& [d, cd] : c)
    if (n % d == 0) acc += cd * rho1 * lam(n / d) * std::sqrt(static_cast<double>(d));
  return acc;
}

void validate_newform(const NewformData& f) {
  if (f.N < 1) throw Error(ErrorKind::invariant, "newform: level must be positive");
  if (f.k < 4 || f.k % 2 != 0)
    throw Error(ErrorKind::invariant, "newform: weight must be even and >= 4, got " + std::to_string(f.k));
  if (f.M() < 1) throw Error(ErrorKind::invariant, "newform: no coefficients");
  if (f.a[1] != 1.0) throw Error(ErrorKind::invariant, "newform: a(1) must be 1 (failing n=1)");
  // multiplicativity on small coprime pairs
  const i64 lim = std::min<i64>(f.M(), 200);
  for (i64 m = 2; m * 2 <= lim; ++m)
    for (i64 n = m + 1; m * n <= lim; ++n) {
      if (gcd(m, n) != 1) continue;
      double lhs = f.a[static_cast<std::size_t>(m * n)];
      double rhs = f.a[static_cast<std::size_t>(m)] * f.a[static_cast<std::size_t>(n)];
      if (std::abs(lhs - rhs) > 1e-9 * std::max(1.0, std::abs(rhs)))
        throw Error(ErrorKind::invariant,
                    "newform: a(mn) != a(m)a(n) at n=" + std::to_string(m * n));
    }
}

namespace {

std::string next_data_line(std::istream& in) {
  std::string line;
  while (std::getline(in, line)) {
    auto pos = line.find('#');
    if (pos != std::string::npos) line.resize(pos);
    if (line.find_first_not_of(" \t\r") != std::string::npos) return line;
  }
  return {};
}

std::ifstream open_or_throw(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::parse, "cannot open " + path);
  return in;
}

}  // namespace

NewformData parse_newform(std::istream& in) {
  NewformData f;
  i64 M = 0;
  {
    std::istringstream hs(next_data_line(in));
    if (!(hs >> f.N >> f.k >> M) || M < 1) throw Error(ErrorKind::parse, "newform: header must be 'N k M'");
  }
  f.a.assign(static_cast<std::size_t>(M + 1), 0.0);
  std::vector<bool> seen(static_cast<std::size_t>(M + 1), false);
  for (i64 i = 0; i < M; ++i) {
    std::string line = next_data_line(in);
    std::istringstream ls(line);
    i64 n;
    std::string val;
    if (!(ls >> n >> val)) throw Error(ErrorKind::parse, "newform: expected 'n a(n)' on data line " + std::to_string(i + 1));
    if (n < 1 || n > M) throw Error(ErrorKind::parse, "newform: index out of range: " + std::to_string(n));
    char* end = nullptr;
    long double v = std::strtold(val.c_str(), &end);
    if (end == val.c_str() || *end != '\0') throw Error(ErrorKind::parse, "newform: bad coefficient at n=" + std::to_string(n));
    f.a[static_cast<std::size_t>(n)] = static_cast<double>(v);
    seen[static_cast<std::size_t>(n)] = true;
  }
  for (i64 n = 1; n <= M; ++n)
    if (!seen[static_cast<std::size_t>(n)]) throw Error(ErrorKind::parse, "newform: missing a(" + std::to_string(n) + ")");
  validate_newform(f);
  return f;
}

NewformData load_newform(const std::string& path) {
  auto in = open_or_throw(path);
  return parse_newform(in);
}

MaassFormData parse_maass(std::istream& in) {
  MaassFormData u;
  i64 M = 0;
  {
    std::istringstream hs(next_data_line(in));
    if (!(hs >> u.N >> u.L >> u.r >> u.parity >> M) || M < 1 || u.L < 1 || u.N % u.L != 0)
      throw Error(ErrorKind::parse, "maass: header must be 'N L r epsilon M' with L | N");
  }
  {
    // rho1 followed by c_L(d) for the divisors d of N/L in increasing order
    std::istringstream ls(next_data_line(in));
    if (!(ls >> u.rho1)) throw Error(ErrorKind::parse, "maass: missing rho1");
    for (i64 d : divisors(u.N / u.L)) {
      double cd;
      if (!(ls >> cd)) throw Error(ErrorKind::parse, "maass: missing c_L(d) for d=" + std::to_string(d));
      u.c[d] = cd;
    }
  }
  u.lambda.assign(static_cast<std::size_t>(M + 1), 0.0);
  for (i64 i = 0; i < M; ++i) {
    std::istringstream ls(next_data_line(in));
    i64 n;
    double v;
    if (!(ls >> n >> v) || n < 1 || n > M) throw Error(ErrorKind::parse, "maass: bad eigenvalue line " + std::to_string(i + 1));
    u.lambda[static_cast<std::size_t>(n)] = v;
  }
  if (u.lambda[1] != 1.0) throw Error(ErrorKind::invariant, "maass: lambda(1) must be 1");
  return u;
}

MaassFormData load_maass(const std::string& path) {
  auto in = open_or_throw(path);
  return parse_maass(in);
}

CuspExpansionData parse_cusp_expansion(std::istream& in) {
  CuspExpansionData e;
  i64 M = 0;
  {
    std::istringstream hs(next_data_line(in));
    if (!(hs >> e.cusp.N >> e.cusp.a >> e.cusp.c >> M) || M < 1)
      throw Error(ErrorKind::parse, "cusp expansion: header must be 'N a c M'");
  }
  e.a.assign(static_cast<std::size_t>(M + 1), 0.0);
  for (i64 i = 0; i < M; ++i) {
    std::istringstream ls(next_data_line(in));
    i64 n;
    double re, im;
    if (!(ls >> n >> re >> im) || n < 1 || n > M)
      throw Error(ErrorKind::parse, "cusp expansion: bad line " + std::to_string(i + 1));
    e.a[static_cast<std::size_t>(n)] = {re, im};
  }
  return e;
}

CuspExpansionData load_cusp_expansion(const std::string& path) {
  auto in = open_or_throw(path);
  return parse_cusp_expansion(in);
}

namespace {

// prod (1-q^n)^24 = (sum (-1)^j (2j+1) q^{j(j+1)/2})^8, exact
std::vector<i128> eta24(i64 M) {
  std::vector<std::pair<i64, i64>> jac;
  for (i64 j = 0; j * (j + 1) / 2 <= M; ++j) jac.push_back({j * (j + 1) / 2, (j % 2 ? -1 : 1) * (2 * j + 1)});
  std::vector<i128> cur(static_cast<std::size_t>(M + 1), 0);
  for (auto [e, c] : jac) cur[static_cast<std::size_t>(e)] = c;
  for (int rep = 1; rep < 8; ++rep) {
    std::vector<i128> nxt(static_cast<std::size_t>(M + 1), 0);
    for (auto [e, c] : jac)
      for (i64 n = 0; n + e <= M; ++n) nxt[static_cast<std::size_t>(n + e)] += cur[static_cast<std::size_t>(n)] * c;
    cur.swap(nxt);
  }
  return cur;
}

struct ModArith {
  std::uint64_t p;
  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const { return static_cast<std::uint64_t>(static_cast<u128>(a) * b % p); }
  std::uint64_t red(i128 x) const {
    i128 r = x % static_cast<i128>(p);
    if (r < 0) r += p;
    return static_cast<std::uint64_t>(r);
  }
  std::uint64_t pow(std::uint64_t a, std::uint64_t e) const {
    std::uint64_t r = 1;
    while (e) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }
  std::uint64_t inv(std::uint64_t a) const { return pow(a, p - 2); }
};

std::vector<std::uint64_t> mulmod_series(const std::vector<std::uint64_t>& x, const std::vector<std::uint64_t>& y,
                                         const ModArith& m) {
  const std::size_t n = x.size();
  std::vector<std::uint64_t> z(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    if (!x[i]) continue;
    for (std::size_t j = 0; i + j < n; ++j) {
      std::uint64_t t = z[i + j] + m.mul(x[i], y[j]);
      z[i + j] = t >= m.p ? t - m.p : t;
    }
  }
  return z;
}

}  // namespace

const NewformData& delta_form(i64 M) {
  static std::mutex mu;
  static std::map<i64, NewformData> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(M);
  if (it != cache.end()) return it->second;
  auto e = eta24(M - 1);
  NewformData f;
  f.N = 1;
  f.k = 12;
  f.a.assign(static_cast<std::size_t>(M + 1), 0.0);
  for (i64 n = 1; n <= M; ++n) f.a[static_cast<std::size_t>(n)] = static_cast<double>(static_cast<long double>(e[static_cast<std::size_t>(n - 1)]));
  return cache.emplace(M, std::move(f)).first->second;
}

const std::pair<NewformData, NewformData>& weight24_pair(i64 M) {
  static std::mutex mu;
  static std::map<i64, std::pair<NewformData, NewformData>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(M);
  if (it != cache.end()) return it->second;
  const i64 L = std::max<i64>(M, 4);
  const std::size_t len = static_cast<std::size_t>(L + 1);
  // q-expansions up to q^L of f1 = Delta E4^3 and f2 = Delta^2, modulo three primes near 2^61
  std::vector<std::uint64_t> primes;
  for (std::uint64_t c = (1ULL << 61) - 1; primes.size() < 3; c -= 2)
    if (is_prime(static_cast<i64>(c))) primes.push_back(c);
  auto eta = eta24(L);
  std::vector<std::vector<std::uint64_t>> f1r, f2r;
  for (auto p : primes) {
    ModArith m{p};
    std::vector<std::uint64_t> delta(len, 0), e4(len, 0);
    for (std::size_t n = 1; n < len; ++n) delta[n] = m.red(eta[n - 1]);
    e4[0] = 1;
    for (i64 n = 1; n <= L; ++n) {
      i128 s3 = 0;
      for (i64 d : divisors(n)) s3 += static_cast<i128>(d) * d * d;
      e4[static_cast<std::size_t>(n)] = m.red(240 * s3);
    }
    auto e8 = mulmod_series(e4, e4, m);
    auto e12 = mulmod_series(e8, e4, m);
    f1r.push_back(mulmod_series(delta, e12, m));
    f2r.push_back(mulmod_series(delta, delta, m));
  }
  // centered Garner reconstruction to long double
  auto crt = [&](const std::vector<std::vector<std::uint64_t>>& r, std::size_t n) {
    const auto p0 = primes[0], p1 = primes[1], p2 = primes[2];
    ModArith m1{p1}, m2{p2};
    std::uint64_t x0 = r[0][n];
    std::uint64_t v1 = m1.mul((r[1][n] + p1 - x0 % p1) % p1, m1.inv(p0 % p1));
    std::uint64_t t = m2.red(static_cast<i128>(x0) + static_cast<i128>(m2.mul(p0 % p2, v1)));
    std::uint64_t v2 = m2.mul((r[2][n] + p2 - t) % p2, m2.inv(m2.mul(p0 % p2, p1 % p2)));
    // the values are far below p0 p1 p2, so the top digit is small after centering
    i128 top = v2 > p2 / 2 ? static_cast<i128>(v2) - static_cast<i128>(p2) : static_cast<i128>(v2);
    i128 inner = static_cast<i128>(v1) + static_cast<i128>(p1) * top;
    long double value = static_cast<long double>(x0) + static_cast<long double>(p0) * static_cast<long double>(inner);
    return value;
  };
  std::vector<long double> f1(len), f2(len);
  for (std::size_t n = 0; n < len; ++n) {
    f1[n] = crt(f1r, n);
    f2[n] = crt(f2r, n);
  }
  // T_2 eigenvectors g = f1 + lambda f2: lambda^2 + (2 f1(2) - f2(4)) lambda + f1(2)^2 - f1(4) - 2^23 = 0
  long double b = 2 * f1[2] - f2[4];
  long double c = f1[2] * f1[2] - f1[4] - 8388608.0L;
  long double disc = std::sqrt(b * b - 4 * c);
  long double lam[2] = {(-b - disc) / 2, (-b + disc) / 2};
  NewformData out[2];
  for (int j = 0; j < 2; ++j) {
    out[j].N = 1;
    out[j].k = 24;
    out[j].a.assign(static_cast<std::size_t>(M + 1), 0.0);
    for (i64 n = 1; n <= M; ++n)
      out[j].a[static_cast<std::size_t>(n)] = static_cast<double>(f1[static_cast<std::size_t>(n)] + lam[j] * f2[static_cast<std::size_t>(n)]);
  }
  return cache.emplace(M, std::make_pair(std::move(out[0]), std::move(out[1]))).first->second;
}

MaassFormData synthetic_maass(i64 N, i64 L, double r, i64 M, unsigned seed) {
  if (N % L != 0) throw Error(ErrorKind::domain, "synthetic_maass: L must divide N");
  MaassFormData u;
  u.N = N;
  u.L = L;
  u.r = r;
  u.rho1 = 1.0;
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> angle(0.0, pi);
  std::uniform_real_distribution<double> coef(0.2, 1.0);
  for (i64 d : divisors(N / L)) u.c[d] = d == 1 ? 1.0 : coef(gen);
  u.lambda.assign(static_cast<std::size_t>(M + 1), 0.0);
  u.lambda[1] = 1.0;
  std::vector<i64> spf(static_cast<std::size_t>(M + 1), 0);
  for (i64 p = 2; p <= M; ++p) {
    if (spf[static_cast<std::size_t>(p)]) continue;
    for (i64 q = p; q <= M; q += p)
      if (!spf[static_cast<std::size_t>(q)]) spf[static_cast<std::size_t>(q)] = p;
    double lp = 2.0 * std::cos(angle(gen));
    if (L % p == 0) lp = 0.5 * lp / std::sqrt(static_cast<double>(p));
    // lambda(p^{e+1}) = lambda(p) lambda(p^e) - chi_0(p) lambda(p^{e-1})
    double prev = 1.0, cur = lp;
    double chi0 = (L % p == 0) ? 0.0 : 1.0;
    for (i64 q = p; q <= M; q *= p) {
      u.lambda[static_cast<std::size_t>(q)] = cur;
      double nxt = lp * cur - chi0 * prev;
      prev = cur;
      cur = nxt;
      if (q > M / p) break;
    }
  }
  for (i64 n = 2; n <= M; ++n) {
    i64 p = spf[static_cast<std::size_t>(n)];
    i64 q = 1;
    i64 m = n;
    while (m % p == 0) {
      m /= p;
      q *= p;
    }
    if (m > 1) u.lambda[static_cast<std::size_t>(n)] = u.lambda[static_cast<std::size_t>(q)] * u.lambda[static_cast<std::size_t>(m)];
  }
  u.parity = 0;
  return u;
}

}  // namespace rsm
