#include <cmath>

#include "rsm/lseries.hpp"

namespace rsm {

namespace {

constexpr double node_step = 0.1;

struct Nodes {
  double c;
  std::vector<double> y;
  std::vector<cplx> G;  // gamma ratio * delta^{-w} / w * h / 2pi
};

}  // namespace

SelfDualL::SelfDualL(double logQ, std::vector<double> mu, double eps, std::vector<double> coeffs,
                     double lambda_residue)
    : logQ_(logQ), mu_(std::move(mu)), eps_(eps), c_(std::move(coeffs)), residue_(lambda_residue) {}

cplx SelfDualL::log_gamma_factor(cplx s) const {
  cplx acc = s * logQ_;
  for (double m : mu_) acc += log_gamma(s + m);
  return acc;
}

double SelfDualL::residue() const { return residue_ / std::exp(log_gamma_factor(1.0).real()); }

cplx SelfDualL::direct(cplx s, i64 M) const {
  if (M > available())
    throw Error(ErrorKind::missing_data, "direct series needs M=" + std::to_string(M) +
                                             " coefficients, have " + std::to_string(available()));
  cplx acc = 0.0;
  for (i64 n = M; n >= 1; --n) acc += c_[static_cast<std::size_t>(n)] * rpow(static_cast<double>(n), -s);
  return acc;
}

cplx SelfDualL::side(cplx s, cplx delta) const {
  // F(s,n) = (1/2 pi i) int_(c) gamma(s+w)/gamma(s) delta^{-w} n^{-w} dw/w by the trapezoid rule
  Nodes nd;
  nd.c = std::max(1.5 - s.real(), 1.0);
  const cplx lg0 = log_gamma_factor(s);
  const cplx ldelta = std::log(delta);
  auto logG = [&](double y) {
    cplx w(nd.c, y);
    return log_gamma_factor(s + w) - lg0 - w * ldelta - std::log(w);
  };
  // scan outward until the weight is negligible and the gamma peak near y = -Im s has been passed
  const double peak = -s.imag();
  double lmax = logG(0.0).real();
  std::vector<std::pair<double, cplx>> pts;
  for (int dir : {1, -1}) {
    for (int j = (dir == 1 ? 0 : 1);; ++j) {
      double y = dir * j * node_step;
      cplx lg = logG(y);
      lmax = std::max(lmax, lg.real());
      pts.push_back({y, lg});
      bool past = dir == 1 ? y > peak : y < peak;
      if (past && lg.real() < lmax - 40.0) break;
      if (j > 2000000) throw Error(ErrorKind::convergence, "AFE weight does not decay on the contour");
    }
  }
  std::sort(pts.begin(), pts.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  nd.y.reserve(pts.size());
  nd.G.reserve(pts.size());
  for (auto& [y, lg] : pts) {
    if (lg.real() < lmax - 45.0) continue;
    nd.y.push_back(y);
    nd.G.push_back(std::exp(lg) * (node_step / (2.0 * pi)));
  }
  // nodes sit on the grid y = j h, so n^{-iy} runs through a geometric progression in j
  std::vector<long> idx(nd.y.size());
  for (std::size_t j = 0; j < nd.y.size(); ++j) idx[j] = std::lround(nd.y[j] / node_step);
  cplx acc = 0.0;
  double scale = 0.0;
  int quiet = 0;
  for (i64 n = 1;; ++n) {
    double ln = std::log(static_cast<double>(n));
    cplx F = 0.0;
    if (!idx.empty()) {
      const cplx step = std::polar(1.0, -node_step * ln);
      const double sr = step.real(), si = step.imag();
      cplx e0 = std::polar(1.0, -nd.y[0] * ln);
      double er = e0.real(), ei = e0.imag(), fr = 0.0, fi = 0.0;
      long cur = idx[0];
      for (std::size_t j = 0; j < nd.y.size(); ++j) {
        for (; cur < idx[j]; ++cur) {
          double t = er * sr - ei * si;
          ei = er * si + ei * sr;
          er = t;
        }
        if ((j & 255) == 255) {
          cplx r = std::polar(1.0, -nd.y[j] * ln);
          er = r.real();
          ei = r.imag();
        }
        const double gr = nd.G[j].real(), gi = nd.G[j].imag();
        fr += gr * er - gi * ei;
        fi += gr * ei + gi * er;
      }
      F = cplx(fr, fi);
    }
    F *= std::exp(-nd.c * ln);
    double bound = std::abs(F) * std::exp(-s.real() * ln) * std::max(1.0, std::log(n + 1.0) * std::log(n + 1.0));
    scale = std::max(scale, std::abs(F) * std::exp(-s.real() * ln));
    if (n > available()) {
      if (bound < 1e-17 * scale) break;
      throw Error(ErrorKind::missing_data,
                  "approximate functional equation needs coefficients beyond M=" + std::to_string(available()) +
                      " (at least " + std::to_string(n) + ")");
    }
    double cn = c_[static_cast<std::size_t>(n)];
    if (cn != 0.0) acc += cn * F * std::exp(-s * ln);
    quiet = bound < 1e-17 * scale ? quiet + 1 : 0;
    if (quiet >= 10) break;
  }
  return acc;
}

void SelfDualL::split(cplx s, cplx& regular, cplx& pole_part) const {
  const bool at_pole = std::abs(s - 1.0) < 1e-14 || std::abs(s) < 1e-14;
  if (at_pole && residue_ != 0.0)
    throw Error(ErrorKind::pole, "L-function: pole of the completed function at s=0 or s=1");
  // rotate the weight for large |Im s| to tame the exponential size of the gamma factors
  double T = s.imag();
  double theta = 0.0;
  if (std::abs(T) > 10.0) {
    double full = 0.5 * pi * static_cast<double>(mu_.size());
    double beta = std::min(0.5 * full, 16.0 / std::abs(T));
    theta = (T > 0 ? 1.0 : -1.0) * (full - beta);
  }
  cplx delta = std::polar(1.0, theta);
  cplx lg = log_gamma_factor(s);
  cplx ratio = std::exp(log_gamma_factor(1.0 - s) - lg);
  regular = side(s, delta) + eps_ * ratio * side(1.0 - s, 1.0 / delta);
  if (at_pole) {
    // entire case; no pole term to report
    pole_part = 0.0;
    return;
  }
  cplx ds = std::exp(s * std::log(delta));
  pole_part = std::exp(-lg) * (ds / delta / (1.0 - s) + eps_ * ds / s);
}

cplx SelfDualL::operator()(cplx s) const {
  if (residue_ == 0.0 && (std::abs(s - 1.0) < 1e-6 || std::abs(s) < 1e-6)) {
    // entire, but the gamma quotient of the dual side is singular here: circle mean
    const cplx c = std::abs(s) < 1e-6 ? cplx(0.0) : cplx(1.0);
    cplx acc = 0.0;
    for (int j = 0; j < 16; ++j) acc += (*this)(c + 1e-2 * std::exp(I * (2.0 * pi * (j + 0.5) / 16.0)));
    return acc / 16.0;
  }
  cplx reg, pole;
  split(s, reg, pole);
  return reg - residue_ * pole;
}

SelfDualL holomorphic_level1(const NewformData& f) {
  if (f.N != 1) throw Error(ErrorKind::domain, "holomorphic_level1: level must be 1");
  std::vector<double> c(static_cast<std::size_t>(f.M() + 1), 0.0);
  for (i64 n = 1; n <= f.M(); ++n) c[static_cast<std::size_t>(n)] = f.A(n);
  double eps = (f.k / 2) % 2 == 0 ? 1.0 : -1.0;
  return SelfDualL(-std::log(2.0 * pi), {(f.k - 1) / 2.0}, eps, std::move(c));
}

cplx holo_L(cplx s, const NewformData& f) { return holomorphic_level1(f)(s); }

SelfDualL rankin_selberg_level1(const NewformData& f, const NewformData& g, bool same_form) {
  if (f.N != 1 || g.N != 1) throw Error(ErrorKind::domain, "rankin_selberg_level1: level must be 1");
  if (f.k != g.k) throw Error(ErrorKind::domain, "rankin_selberg_level1: weights differ");
  const i64 M = std::min(f.M(), g.M());
  std::vector<double> ab(static_cast<std::size_t>(M + 1), 0.0), c(static_cast<std::size_t>(M + 1), 0.0);
  for (i64 n = 1; n <= M; ++n) ab[static_cast<std::size_t>(n)] = f.A(n) * g.A(n);
  for (i64 d = 1; d * d <= M; ++d)
    for (i64 m = 1; m * d * d <= M; ++m) c[static_cast<std::size_t>(m * d * d)] += ab[static_cast<std::size_t>(m)];
  SelfDualL L(-2.0 * std::log(2.0 * pi), {0.0, f.k - 1.0}, 1.0, std::move(c));
  if (same_form) {
    // fix the residue by matching the absolutely convergent series at s = 5.3 (off the trivial zeros)
    const cplx s0 = 5.3;
    i64 Md = std::min<i64>(M, 20000);
    cplx reg, pole;
    L.split(s0, reg, pole);
    cplx dir = L.direct(s0, Md);
    L.set_lambda_residue(((reg - dir) / pole).real());
  }
  return L;
}

double divisor_bound_constant(double eps) {
  double C = 1.0;
  for (i64 p = 2; static_cast<double>(p) < std::pow(2.0, 1.0 / eps); ++p) {
    if (!is_prime(p)) continue;
    double best = 1.0;
    for (int k = 1; k < 200; ++k) best = std::max(best, (k + 1) / std::pow(static_cast<double>(p), k * eps));
    C *= best;
  }
  return C;
}

namespace {

// sum_{n > M} d(n)^2 n^{-sigma} <= C^4 M^{1+4 eps - sigma}/(sigma - 1 - 4 eps), best eps on a grid
double divisor_square_tail(double sigma, i64 M, int power = 2) {
  double best = INFINITY;
  for (double eps : {0.05, 0.1, 0.15, 0.2, 0.25, 0.3, 0.4, 0.5}) {
    double ex = sigma - 1.0 - power * eps;
    if (ex <= 0) continue;
    double C = std::pow(divisor_bound_constant(eps), power);
    best = std::min(best, C * std::pow(static_cast<double>(M), -ex) / ex);
  }
  return best;
}

}  // namespace

SeriesValue rankin_selberg_direct(cplx s, const NewformData& f, const NewformData& g, i64 M) {
  if (s.real() <= 1.0) throw Error(ErrorKind::region, "rankin_selberg_direct: needs Re s > 1 (pole at s=1 when f=g)");
  if (M > f.M() || M > g.M()) throw Error(ErrorKind::missing_data, "rankin_selberg_direct: truncation beyond coefficient horizon");
  cplx acc = 0.0;
  for (i64 n = M; n >= 1; --n) acc += f.A(n) * g.A(n) * rpow(static_cast<double>(n), -s);
  cplx z = riemann_zeta(2.0 * s);
  return {z * acc, std::abs(z) * divisor_square_tail(s.real(), M)};
}

SeriesValue rankin_selberg_direct_cusp(cplx s, const CuspExpansionData& fa, const CuspExpansionData& ga, int k,
                                       i64 N, i64 M) {
  if (s.real() <= 1.0) throw Error(ErrorKind::region, "rankin_selberg_direct_cusp: needs Re s > 1");
  i64 have = std::min<i64>(static_cast<i64>(fa.a.size()), static_cast<i64>(ga.a.size())) - 1;
  if (M > have) throw Error(ErrorKind::missing_data, "rankin_selberg_direct_cusp: truncation beyond data");
  cplx acc = 0.0;
  for (i64 n = M; n >= 1; --n)
    acc += fa.a[static_cast<std::size_t>(n)] * std::conj(ga.a[static_cast<std::size_t>(n)]) *
           rpow(static_cast<double>(n), -(k - 1.0) - s);
  cplx z = zeta_depleted(2.0 * s, N);
  return {z * acc, std::abs(z) * divisor_square_tail(s.real(), M)};
}

Estimate residue_at_1(const SelfDualL& L, int nodes) {
  if (nodes < 2 || nodes > 6) throw Error(ErrorKind::domain, "residue_at_1: 2..6 nodes");
  // Neville extrapolation to h = 0 of (s-1) L(s), s = 1 + 0.1/2^j
  std::vector<double> h(static_cast<std::size_t>(nodes));
  std::vector<cplx> v(static_cast<std::size_t>(nodes));
  for (int j = 0; j < nodes; ++j) {
    h[static_cast<std::size_t>(j)] = 0.1 / std::pow(2.0, j);
    v[static_cast<std::size_t>(j)] = h[static_cast<std::size_t>(j)] * L(1.0 + h[static_cast<std::size_t>(j)]);
  }
  std::vector<cplx> prev_diag;
  cplx best = v.back(), second = v.back();
  for (int m = 1; m < nodes; ++m) {
    for (int j = nodes - 1; j >= m; --j) {
      auto J = static_cast<std::size_t>(j);
      auto Jm = static_cast<std::size_t>(j - m);
      v[J] = (h[Jm] * v[J] - h[J] * v[J - 1]) / (h[Jm] - h[J]);
    }
    second = best;
    best = v.back();
  }
  double err = std::abs(best - second);
  if (!finite(best) || err > 1e-2 * std::abs(best))
    throw Error(ErrorKind::ill_conditioned, "residue_at_1: extrapolation unstable");
  return {best.real(), err};
}

cplx laurent_constant_at_1(const SelfDualL& L) {
  return laurent_coefficient([&](cplx z) { return L(z); }, 1.0, 0.25, 0, 32);
}

}  // namespace rsm
