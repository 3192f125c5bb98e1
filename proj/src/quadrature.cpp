#include <cstdio>
#include <cmath>
#include <algorithm>
#include <vector>

#include "rsm/specfun.hpp"

namespace rsm {

namespace {

std::string fmt_sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

}  // namespace

namespace {

constexpr double xgk[8] = {0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                           0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                           0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                           0.207784955007898467600689403773245, 0.0};
constexpr double wgk[8] = {0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                           0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                           0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                           0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double wg[4] = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                          0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
  double a, b;
  cplx value;
  double error;
  bool operator<(const Segment& o) const { return error < o.error; }
};

Segment gk15(const Integrand& f, double a, double b) {
  double c = 0.5 * (a + b), hw = 0.5 * (b - a);
  cplx fc = f(c);
  cplx k = wgk[7] * fc, g = wg[3] * fc;
  for (int j = 0; j < 7; ++j) {
    double dx = hw * xgk[j];
    cplx s = f(c - dx) + f(c + dx);
    k += wgk[j] * s;
    if (j % 2 == 1) g += wg[j / 2] * s;
  }
  k *= hw;
  g *= hw;
  if (!finite(k))
    throw Error(ErrorKind::convergence, "quadrature: non-finite integrand value");
  return {a, b, k, std::abs(k - g)};
}

}  // namespace

Estimate integrate_interval(const Integrand& f, double a, double b, const QuadratureSpec& spec) {
  if (!(spec.rel_tol > 0.0) || spec.abs_tol < 0.0 || spec.max_subdivisions < 1)
    throw Error(ErrorKind::domain, "quadrature: invalid tolerances");
  if (a == b) return {0.0, 0.0};
  std::vector<Segment> heap{gk15(f, a, b)};
  cplx total = heap[0].value;
  double err = heap[0].error;
  while (err > std::max(spec.abs_tol, spec.rel_tol * std::abs(total))) {
    if (static_cast<int>(heap.size()) >= spec.max_subdivisions)
      throw Error(ErrorKind::convergence,
                  "quadrature: subdivision budget exhausted, error " + fmt_sci(err));
    std::pop_heap(heap.begin(), heap.end());
    Segment s = heap.back();
    heap.pop_back();
    double m = 0.5 * (s.a + s.b);
    if (!(m > s.a && m < s.b))
      throw Error(ErrorKind::convergence, "quadrature: interval collapsed");
    heap.push_back(gk15(f, s.a, m));
    std::push_heap(heap.begin(), heap.end());
    heap.push_back(gk15(f, m, s.b));
    std::push_heap(heap.begin(), heap.end());
    // full resum keeps the total free of cancellation drift
    total = 0.0;
    err = 0.0;
    for (const auto& x : heap) {
      total += x.value;
      err += x.error;
    }
  }
  return {total, err};
}

Estimate integrate_line(const Integrand& f, const QuadratureSpec& spec, double center,
                        const TailBound& tail) {
  if (!(spec.cutoff_radius > 0.0)) throw Error(ErrorKind::domain, "quadrature: cutoff_radius must be positive");
  double R = spec.cutoff_radius;
  Estimate e = integrate_interval(f, center - R, center + R, spec);
  if (tail) e.error += tail(R);
  return e;
}

}  // namespace rsm
