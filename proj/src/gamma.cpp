#include <array>
#include <cmath>

#include "rsm/specfun.hpp"

namespace rsm {

const char* kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::pole: return "pole";
    case ErrorKind::domain: return "domain";
    case ErrorKind::convergence: return "convergence";
    case ErrorKind::parse: return "parse";
    case ErrorKind::invariant: return "invariant";
    case ErrorKind::overflow: return "overflow";
    case ErrorKind::region: return "region";
    case ErrorKind::missing_data: return "missing_data";
    case ErrorKind::ill_conditioned: return "ill_conditioned";
  }
  return "unknown";
}

namespace {

// B_2 .. B_24
constexpr std::array<double, 12> bernoulli = {
    1.0 / 6,         -1.0 / 30,        1.0 / 42,         -1.0 / 30,
    5.0 / 66,        -691.0 / 2730,    7.0 / 6,          -3617.0 / 510,
    43867.0 / 798,   -174611.0 / 330,  854513.0 / 138,   -236364091.0 / 2730};

constexpr double shift_target = 15.0;

bool is_pole(cplx z) {
  return z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real());
}

void check_pole(cplx z, const char* who) {
  if (is_pole(z))
    throw Error(ErrorKind::pole, std::string(who) + ": pole at non-positive integer " +
                                     std::to_string(z.real()));
}

}  // namespace

// Stirling series after shifting Re z above shift_target; the shift uses
// principal logs of z+j, which keeps the result on the principal branch.
cplx log_gamma(cplx z) {
  check_pole(z, "log_gamma");
  cplx shift_sum = 0.0;
  while (z.real() < shift_target) {
    shift_sum += std::log(z);
    z += 1.0;
  }
  cplx zinv = 1.0 / z;
  cplx zinv2 = zinv * zinv;
  cplx series = 0.0;
  cplx pw = zinv;
  for (int k = 1; k <= 10; ++k) {
    series += bernoulli[k - 1] / (2.0 * k * (2.0 * k - 1.0)) * pw;
    pw *= zinv2;
  }
  return (z - 0.5) * std::log(z) - z + 0.5 * std::log(2.0 * pi) + series - shift_sum;
}

cplx complex_gamma(cplx z) {
  check_pole(z, "complex_gamma");
  if (z.real() < 0.5 && std::abs(z.imag()) < 50.0) {
    // reflection keeps negative real arguments exact in sign
    return pi / (std::sin(pi * z) * std::exp(log_gamma(1.0 - z)));
  }
  return std::exp(log_gamma(z));
}

cplx digamma_family(cplx z, int m) {
  if (m < 0 || m > 3) throw Error(ErrorKind::domain, "digamma_family: order must be 0..3");
  check_pole(z, "digamma_family");
  static constexpr double fact[] = {1, 1, 2, 6, 24, 120};
  double sign_m = (m % 2 == 0) ? 1.0 : -1.0;
  cplx acc = 0.0;
  // psi^{(m)}(z) = psi^{(m)}(z+1) - (-1)^m m! / z^{m+1}
  while (z.real() < shift_target) {
    acc -= sign_m * fact[m] / std::pow(z, m + 1);
    z += 1.0;
  }
  cplx zinv = 1.0 / z;
  cplx res;
  if (m == 0) {
    res = std::log(z) - 0.5 * zinv;
    cplx pw = zinv * zinv;
    for (int k = 1; k <= 10; ++k) {
      res -= bernoulli[k - 1] / (2.0 * k) * pw;
      pw *= zinv * zinv;
    }
  } else {
    // (-1)^{m+1} [ (m-1)!/z^m + m!/(2 z^{m+1}) + sum B_2k (2k+m-1)!/((2k)! z^{2k+m}) ]
    cplx inner = fact[m - 1] * std::pow(zinv, m) + fact[m] * 0.5 * std::pow(zinv, m + 1);
    cplx pw = std::pow(zinv, m + 2);
    double ratio = 1.0;  // (2k+m-1)!/(2k)!
    for (int k = 1; k <= 10; ++k) {
      ratio = 1.0;
      for (int j = 2 * k + 1; j <= 2 * k + m - 1; ++j) ratio *= j;
      inner += bernoulli[k - 1] * ratio * pw;
      pw *= zinv * zinv;
    }
    res = ((m + 1) % 2 == 0 ? 1.0 : -1.0) * inner;
  }
  return res + acc;
}

cplx cauchy_derivative(const std::function<cplx(cplx)>& f, cplx z0, double r, int order,
                       int points) {
  return laurent_coefficient(f, z0, r, order, points) * std::tgamma(order + 1.0);
}

cplx laurent_coefficient(const std::function<cplx(cplx)>& f, cplx z0, double r, int j,
                         int points) {
  cplx acc = 0.0;
  for (int i = 0; i < points; ++i) {
    double th = 2.0 * pi * (i + 0.5) / points;
    cplx u = std::polar(r, th);
    acc += f(z0 + u) * std::pow(u, -j);
  }
  return acc / static_cast<double>(points);
}

}  // namespace rsm
