#pragma once

#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <vector>

#include "rsm/kernels.hpp"
#include "rsm/lseries.hpp"

namespace rsm {

// Values of L(s, f x g-bar) and of its cusp versions L_a(s, f x g-bar).
struct RSProvider {
  std::function<cplx(cplx)> L;
  // empty at level 1; the cusp a = N (infinity) always falls back to L
  std::function<cplx(const CuspLabel&, cplx)> L_cusp;
  bool same_form = false;
  double residue = 0.0;    // Res_{s=1} L when same_form
  cplx laurent_c0 = 0.0;   // constant term of L at s = 1 when same_form

  cplx at_cusp(const CuspLabel& cusp, cplx s) const;
};

// level-1 provider through the approximate functional equation
std::shared_ptr<const RSProvider> rs_level1(const NewformData& f, const NewformData& g);

struct MomentContext {
  cplx s = 0.5;
  cplx t = 0.0;  // real in production, complex for contour limits
  int tprime_sign = 1;
  const NewformData* f = nullptr;
  const NewformData* g = nullptr;
  i64 N = 1;
  KernelContext kernel;
  std::shared_ptr<const RSProvider> rs;

  // the provider, built from f and g at level 1 when absent
  std::shared_ptr<const RSProvider> provider() const;
  KernelContext kernel_at_t() const;
  void validate() const;
};

// four-term main term for general N
cplx main_term(const MomentContext& ctx);
// the N = 1 display, coded separately
cplx main_term_N1(const MomentContext& ctx);

enum class Specialization { fneq_minus, fneq_plus, feq_minus, feq_plus };
const char* specialization_name(Specialization w);

// s is fixed to 1/2 - it (minus) or 1/2 + it (plus); ctx.s is ignored. For |t| < 1e-3 the value is
// the mean over a circle of radius 0.05 in complex t.
cplx main_term_specialized(const MomentContext& ctx, Specialization which);
// same formula taken at the given (possibly complex) t without the circle
cplx main_term_specialized_raw(const MomentContext& ctx, Specialization which);
// the f = g displays exactly as printed; they agree with the limit of main_term only at N = 1
cplx main_term_specialized_printed(const MomentContext& ctx, Specialization which);

// picks the specialized display within 1e-4 of s = 1/2 -+ it, the generic formula elsewhere
cplx evaluate_main_term(const MomentContext& ctx);

// constant term of main_term over a circle in s around ctx.s
cplx main_term_circle_limit(const MomentContext& ctx, double radius = 1e-2, int points = 32);

struct MainTermBreakdown {
  cplx M1;
  cplx M_Omega_plus;
  cplx M_Omega_minus;
  cplx assembled;
};

enum class DenominatorConvention { depleted, full };
// M1, M_Omega^+ and M_Omega^- from their own displays; Euler polynomials evaluated locally per cusp
MainTermBreakdown main_term_breakdown(const MomentContext& ctx,
                                      DenominatorConvention conv = DenominatorConvention::depleted);

// sum over a | N of the cusp weights, and its product form
cplx euler_identity_sum(i64 N, cplx t);
cplx euler_identity_product(i64 N, cplx t);

// 2^d pi^{-3/2} (2/zeta(2)) prod_{p|N} (1-1/p)/(1+1/p) value, value = L(1) or the residue
double leading_coeff(double value, i64 N, int d);
double leading_coeff(const RSProvider& rs, i64 N);

// the continuous-spectrum integral at level 1; symmetric = integrate r > 0 and double
cplx continuous_part(const MomentContext& ctx, bool symmetric = true);

// L-value of u_j against a newform at a point; supplied by the caller
using SpectralLValue = std::function<cplx(cplx s, const NewformData& f, const MaassFormData& u)>;
// zeta^(N)(2s) sum_{m <= M} A(m) rho(m) m^{-s}, valid for Re s > 1
SeriesValue curly_L_newform_maass_direct(cplx s, const NewformData& f, const MaassFormData& u, i64 M);
// truncated: supplied spectrum only
cplx discrete_moment_truncated(const MomentContext& ctx, const std::vector<MaassFormData>& forms,
                               const SpectralLValue& value);
// h(r)/cosh(pi r) without overflow
double spectral_weight(double r, const TestFunctionParams& p);

struct FirstMomentOptions {
  double sigma_u = 1.35;
  // NaN = midpoint of the allowed range: (-k/2, -sigma_u) for L^-, (1 + k/2, sigma_u + k/2) for L^+
  double sigma_0 = std::numeric_limits<double>::quiet_NaN();
  double sigma_v = std::numeric_limits<double>::quiet_NaN();
  double v_half_width = 30.0;
  // common grid step on the u- and v-lines; NaN = min(0.025, d/6), d the distance from the lines to the
  // nearest pole (1/cos at u = 3/2, Gamma(-v+u+k/2) at Re v = sigma_u + k/2 and at Re u = sigma_v - k/2)
  double step = std::numeric_limits<double>::quiet_NaN();
  i64 inner_terms = 0;      // 0 = every stored coefficient
};

struct FirstMomentPieces {
  cplx M;
  cplx Lminus;
  cplx Lplus;
  double Lplus_tail = 0.0;  // bound on the truncated m-sum
};

// t = ctx.t, f = *ctx.f
cplx first_moment_M(i64 n, const MomentContext& ctx);
FirstMomentPieces first_moment_pieces(i64 n, const MomentContext& ctx, const FirstMomentOptions& opt = {});
// zeta^(N)(2s) sum_{n <= N0} conj(b(n)) n^{-s-(k-1)/2} M(1/2+it, f; n)
cplx first_moment_partial_sum(const MomentContext& ctx, i64 N0);
// M1 from its closed form
cplx main_term_M1(const MomentContext& ctx);

// the exponent s(alpha, beta; t') of the error term; nullopt where no case applies
std::optional<double> error_exponent(double alpha, double beta, int tprime_sign, int k,
                                     std::optional<double> delta = std::nullopt);

}  // namespace rsm
