#include "rsm/shifted.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

namespace rsm {

namespace {

// sum_{j > M} j^{-p} <= M^{1-p}/(p-1)
double power_tail(double p, i64 M) {
  if (p <= 1.0) return INFINITY;
  return std::pow(static_cast<double>(M), 1.0 - p) / (p - 1.0);
}

// zeta(p) <= 1 + 1/(p-1)
double zeta_bound(double p) {
  if (p <= 1.0) return INFINITY;
  return 1.0 + 1.0 / (p - 1.0);
}

// (x + y)^X <= conv(X) (x^X + y^X)
double conv(double X) { return X > 1.0 ? std::pow(2.0, X - 1.0) : 1.0; }

constexpr double kEps[] = {0.1, 0.15, 0.2, 0.25, 0.3};

double half_weight(int k) { return 0.5 * (k - 1); }

void check_pair(const NewformData& f, const NewformData& g, const char* who) {
  if (f.k != g.k) throw Error(ErrorKind::domain, std::string(who) + ": weights differ");
  if (f.N != g.N) throw Error(ErrorKind::domain, std::string(who) + ": levels differ");
}

void need(const NewformData& f, i64 n, const char* who) {
  if (n > f.M())
    throw Error(ErrorKind::missing_data, std::string(who) + ": needs coefficients up to " + std::to_string(n) +
                                             ", have " + std::to_string(f.M()));
}

// per-index terms computed in parallel, summed in a fixed order
template <class F>
cplx reduce(i64 count, Reduction red, F&& term) {
  std::vector<cplx> parts(static_cast<std::size_t>(count));
  const unsigned nt = std::max(1u, std::min(8u, std::thread::hardware_concurrency()));
  if (count < 64 || nt == 1) {
    for (i64 i = 0; i < count; ++i) parts[static_cast<std::size_t>(i)] = term(i);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < nt; ++w)
      pool.emplace_back([&, w] {
        for (i64 i = w; i < count; i += nt) parts[static_cast<std::size_t>(i)] = term(i);
      });
    for (auto& th : pool) th.join();
  }
  if (red == Reduction::sequential) {
    cplx acc = 0.0;
    for (const auto& x : parts) acc += x;
    return acc;
  }
  while (parts.size() > 1) {
    std::vector<cplx> next((parts.size() + 1) / 2);
    for (std::size_t i = 0; i < next.size(); ++i)
      next[i] = parts[2 * i] + (2 * i + 1 < parts.size() ? parts[2 * i + 1] : cplx(0.0));
    parts.swap(next);
  }
  return parts.empty() ? cplx(0.0) : parts[0];
}

struct ZTails {
  double outer = INFINITY, inner = INFINITY;
};

// |term| <= cN C^3 (n+m)^{x+e} n^{x+e-b} m^{e-a}, a = Re v, b = Re(s - v) - 1/2 + k
ZTails z_tails(const ShiftedSeriesRequest& req) {
  const int k = req.f->k;
  const double x = half_weight(k), a = req.v.real(), b = (req.s - req.v).real() - 0.5 + k;
  const double cN = sigma_twisted_N_bound(req.N);
  ZTails best;
  for (double e : kEps) {
    const double C = divisor_bound_constant(e);
    const double X = x + e, pre = cN * C * C * C * conv(X);
    const double outer = pre * (zeta_bound(b - x - e - X) * power_tail(a - e, req.trunc.outer) +
                                zeta_bound(b - x - e) * power_tail(a - e - X, req.trunc.outer));
    const double inner = pre * (power_tail(b - x - e - X, req.trunc.inner) * zeta_bound(a - e) +
                                power_tail(b - x - e, req.trunc.inner) * zeta_bound(a - e - X));
    if (outer + inner < best.outer + best.inner) best = {outer, inner};
  }
  return best;
}

void check_z(const ShiftedSeriesRequest& req) {
  if (!req.f || !req.g) throw Error(ErrorKind::missing_data, "Z: newforms not supplied");
  check_pair(*req.f, *req.g, "Z");
  if (req.trunc.outer < 1 || req.trunc.inner < 1) throw Error(ErrorKind::domain, "Z: truncations must be positive");
  const double hk = 0.5 * req.f->k;
  if (!(req.v.real() > 1.0 + hk))
    throw Error(ErrorKind::region, "Z: needs Re v = 1 + k/2 + eps with eps > 0");
  if (!(req.s.real() > req.v.real() + 1.0)) throw Error(ErrorKind::region, "Z: needs Re s > Re v + 1");
  need(*req.f, req.trunc.outer + req.trunc.inner, "Z");
  need(*req.g, req.trunc.inner, "Z");
}

void check_m3(const ShiftedSeriesRequest& req) {
  if (!req.f || !req.g) throw Error(ErrorKind::missing_data, "M3: newforms not supplied");
  check_pair(*req.f, *req.g, "M3");
  if (req.trunc.outer < 1 || req.trunc.inner < 1) throw Error(ErrorKind::domain, "M3: truncations must be positive");
  if (!(req.s.real() > 1.0 && req.v.real() > 1.0)) throw Error(ErrorKind::region, "M3: needs Re s > 1 and Re w > 1");
  need(*req.f, req.trunc.inner, "M3");
  need(*req.g, req.trunc.outer + req.trunc.inner, "M3");
}

// m^{it - v} sigma_{-2it}(m; N) for m = 1..M
std::vector<cplx> outer_weights(i64 M, i64 N, double t, cplx v) {
  std::vector<cplx> w(static_cast<std::size_t>(M + 1), 0.0);
  for (i64 m = 1; m <= M; ++m) {
    const cplx sg = sigma_twisted_N(m, N, t);
    if (sg != 0.0) w[static_cast<std::size_t>(m)] = sg * rpow(static_cast<double>(m), I * t - v);
  }
  return w;
}

std::vector<cplx> powers(i64 M, cplx e) {
  std::vector<cplx> out(static_cast<std::size_t>(M + 1), 0.0);
  for (i64 n = 1; n <= M; ++n) out[static_cast<std::size_t>(n)] = rpow(static_cast<double>(n), e);
  return out;
}

struct M3Tails {
  double outer = INFINITY, inner = INFINITY;
};

// n = m + j: |term| <= cN C^3 j^{x+e} m^{e - Re s - x} n^{x+e-Re w-2x} and n >= j
M3Tails m3_tails(const ShiftedSeriesRequest& req) {
  const double x = half_weight(req.f->k), rs = req.s.real(), rw = req.v.real();
  const double cN = sigma_twisted_N_bound(req.N);
  M3Tails best;
  for (double e : kEps) {
    const double C = divisor_bound_constant(e);
    const double pre = cN * C * C * C;
    const double outer = pre * power_tail(rs + x - e, req.trunc.outer) * zeta_bound(rw - 2.0 * e);
    const double inner = pre * zeta_bound(rs + x - e) * power_tail(rw - 2.0 * e, req.trunc.inner);
    if (outer + inner < best.outer + best.inner) best = {outer, inner};
  }
  return best;
}

}  // namespace

SeriesValue shifted_D(cplx w, i64 m, const NewformData& f, const NewformData& g, i64 M) {
  check_pair(f, g, "shifted D");
  if (m < 1 || M < 1) throw Error(ErrorKind::domain, "shifted D: m and M must be positive");
  if (!(w.real() > 1.0)) throw Error(ErrorKind::region, "shifted D: direct sum needs Re w > 1");
  need(f, M + m, "shifted D");
  need(g, M, "shifted D");
  const int k = f.k;
  cplx acc = 0.0;
  for (i64 n = M; n >= 1; --n)
    acc += f.a[static_cast<std::size_t>(n + m)] * g.a[static_cast<std::size_t>(n)] *
           rpow(static_cast<double>(n), -w - static_cast<double>(k - 1));
  // |a(n+m) b(n)| n^{-Re w-k+1} <= C^2 conv (n^X + m^X) n^{e - x - Re w}, X = x + e
  const double x = half_weight(k);
  double tail = INFINITY;
  for (double e : kEps) {
    const double C = divisor_bound_constant(e), X = x + e;
    tail = std::min(tail, C * C * conv(X) *
                              (power_tail(w.real() - 2.0 * e, M) +
                               std::pow(static_cast<double>(m), X) * power_tail(w.real() + x - e, M)));
  }
  return {acc, tail};
}

SeriesValue shifted_D_lower(cplx w, i64 m, const NewformData& f, const NewformData& g, i64 M) {
  check_pair(f, g, "shifted D");
  if (m < 1 || M < 1) throw Error(ErrorKind::domain, "shifted D: m and M must be positive");
  if (!(w.real() > 1.0)) throw Error(ErrorKind::region, "shifted D: direct sum needs Re w > 1");
  need(f, M, "shifted D");
  need(g, M + m, "shifted D");
  const int k = f.k;
  cplx acc = 0.0;
  for (i64 j = M; j >= 1; --j)
    acc += f.a[static_cast<std::size_t>(j)] * g.a[static_cast<std::size_t>(j + m)] *
           rpow(static_cast<double>(j + m), -w - static_cast<double>(k - 1));
  double tail = INFINITY;
  for (double e : kEps) {
    const double C = divisor_bound_constant(e);
    tail = std::min(tail, C * C * power_tail(w.real() - 2.0 * e, M));
  }
  return {acc, tail};
}

ShiftedValue Z_series_double(const ShiftedSeriesRequest& req) {
  check_z(req);
  const auto& f = *req.f;
  const auto& g = *req.g;
  const i64 Mo = req.trunc.outer, Mi = req.trunc.inner;
  const auto wm = outer_weights(Mo, req.N, req.t, req.v);
  const auto pn = powers(Mi, -(req.s - req.v - 0.5 + static_cast<double>(f.k)));
  // n outside, m inside
  cplx sum = reduce(Mi, req.reduction, [&](i64 i) {
    const i64 n = i + 1;
    cplx acc = 0.0;
    for (i64 m = Mo; m >= 1; --m) acc += wm[static_cast<std::size_t>(m)] * f.a[static_cast<std::size_t>(n + m)];
    return acc * g.a[static_cast<std::size_t>(n)] * pn[static_cast<std::size_t>(n)];
  });
  const cplx z = zeta_depleted(2.0 * req.s, req.N);
  const auto tails = z_tails(req);
  return {z * sum, std::abs(z) * tails.outer, std::abs(z) * tails.inner};
}

ShiftedValue Z_series_rearranged(const ShiftedSeriesRequest& req) {
  check_z(req);
  const i64 Mo = req.trunc.outer, Mi = req.trunc.inner;
  const auto wm = outer_weights(Mo, req.N, req.t, req.v);
  const cplx w = req.s - req.v + 0.5;
  cplx sum = reduce(Mo, req.reduction, [&](i64 i) {
    const i64 m = i + 1;
    if (wm[static_cast<std::size_t>(m)] == 0.0) return cplx(0.0);
    return wm[static_cast<std::size_t>(m)] * shifted_D(w, m, *req.f, *req.g, Mi).value;
  });
  const cplx z = zeta_depleted(2.0 * req.s, req.N);
  const auto tails = z_tails(req);
  return {z * sum, std::abs(z) * tails.outer, std::abs(z) * tails.inner};
}

ShiftedValue Z_series(const ShiftedSeriesRequest& req) { return Z_series_rearranged(req); }

cplx M3_prefactor(cplx w, int k) {
  const cplx e = static_cast<double>(k) + w - 1.0;
  return std::exp(log_gamma(e) - e * std::log(4.0 * pi));
}

ShiftedValue M3_series(const ShiftedSeriesRequest& req) {
  check_m3(req);
  const auto& f = *req.f;
  const auto& g = *req.g;
  const int k = f.k;
  const i64 Mo = req.trunc.outer, Mi = req.trunc.inner;
  const auto wm = outer_weights(Mo, req.N, req.t, req.s + half_weight(k));
  const auto pn = powers(Mo + Mi, -req.v - static_cast<double>(k - 1));
  // n outside; m runs over 1 <= m <= Mo with 1 <= n - m <= Mi
  cplx sum = reduce(Mo + Mi - 1, req.reduction, [&](i64 i) {
    const i64 n = i + 2;
    cplx acc = 0.0;
    const i64 mlo = std::max<i64>(1, n - Mi), mhi = std::min(Mo, n - 1);
    for (i64 m = mhi; m >= mlo; --m) acc += wm[static_cast<std::size_t>(m)] * f.a[static_cast<std::size_t>(n - m)];
    return acc * g.a[static_cast<std::size_t>(n)] * pn[static_cast<std::size_t>(n)];
  });
  const cplx sp = req.s + req.v + 0.5 * k - 1.0;
  const cplx pre = M3_prefactor(req.v, k) * zeta_depleted(2.0 * sp, req.N);
  const auto tails = m3_tails(req);
  return {pre * sum, std::abs(pre) * tails.outer, std::abs(pre) * tails.inner};
}

ShiftedValue M3_series_rearranged(const ShiftedSeriesRequest& req) {
  check_m3(req);
  const int k = req.f->k;
  const i64 Mo = req.trunc.outer, Mi = req.trunc.inner;
  const auto wm = outer_weights(Mo, req.N, req.t, req.s + half_weight(k));
  cplx sum = reduce(Mo, req.reduction, [&](i64 i) {
    const i64 m = i + 1;
    if (wm[static_cast<std::size_t>(m)] == 0.0) return cplx(0.0);
    return wm[static_cast<std::size_t>(m)] * shifted_D_lower(req.v, m, *req.f, *req.g, Mi).value;
  });
  const cplx sp = req.s + req.v + 0.5 * k - 1.0;
  const cplx pre = M3_prefactor(req.v, k) * zeta_depleted(2.0 * sp, req.N);
  const auto tails = m3_tails(req);
  return {pre * sum, std::abs(pre) * tails.outer, std::abs(pre) * tails.inner};
}

}  // namespace rsm
