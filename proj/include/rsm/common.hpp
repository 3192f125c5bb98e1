#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace rsm {

using cplx = std::complex<double>;

inline constexpr double pi = std::numbers::pi;
inline constexpr double euler_gamma = std::numbers::egamma;
inline constexpr cplx I{0.0, 1.0};

enum class ErrorKind {
  pole,
  domain,
  convergence,
  parse,
  invariant,
  overflow,
  region,
  missing_data,
  ill_conditioned,
};

const char* kind_name(ErrorKind k);

// Every failure raised by the library carries a machine-readable kind.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

// value together with an absolute error estimate
struct Estimate {
  cplx value{};
  double error = 0.0;
};

inline bool finite(cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

inline double rel_diff(cplx a, cplx b) {
  double d = std::max(std::abs(a), std::abs(b));
  return d == 0.0 ? 0.0 : std::abs(a - b) / d;
}

// e^z - 1 without cancellation near z = 0
inline cplx expm1c(cplx z) {
  double x = z.real(), y = z.imag();
  double sh = std::sin(0.5 * y);
  return {std::expm1(x) * std::cos(y) - 2.0 * sh * sh, std::exp(x) * std::sin(y)};
}

// base^z for a positive real base
inline cplx rpow(double base, cplx z) { return std::exp(z * std::log(base)); }

}  // namespace rsm
