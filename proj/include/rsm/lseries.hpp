#pragma once

#include <istream>
#include <map>
#include <string>
#include <vector>

#include "rsm/arith.hpp"

namespace rsm {

struct NewformData {
  i64 N = 1;
  int k = 12;
  std::vector<double> a;  // a[n] for 1 <= n <= M, a[0] unused

  i64 M() const { return static_cast<i64>(a.size()) - 1; }
  // A(n) = a(n) n^{-(k-1)/2}
  double A(i64 n) const;
};

struct MaassFormData {
  i64 N = 1;
  i64 L = 1;
  double r = 0.0;
  int parity = 0;
  std::vector<double> lambda;  // lambda[n], lambda[1] = 1
  double rho1 = 1.0;
  std::map<i64, double> c;  // c_L(r; d) for d | N/L

  i64 M() const { return static_cast<i64>(lambda.size()) - 1; }
  // lambda at an integer index; 0 for index < 1 (non-integral arguments)
  double lam(i64 m) const;
  // Fourier coefficient of the level-N form at n >= 1
  double rho(i64 n) const;
};

struct CuspExpansionData {
  CuspLabel cusp;
  std::vector<cplx> a;  // a[n], n >= 1
};

NewformData parse_newform(std::istream& in);
NewformData load_newform(const std::string& path);
MaassFormData parse_maass(std::istream& in);
MaassFormData load_maass(const std::string& path);
CuspExpansionData parse_cusp_expansion(std::istream& in);
CuspExpansionData load_cusp_expansion(const std::string& path);
void validate_newform(const NewformData& f);

// Ramanujan Delta from q prod (1-q^n)^24, exact integer arithmetic, cached
const NewformData& delta_form(i64 M = 100000);
// the two normalized Hecke eigenforms of level 1 and weight 24, cached
const std::pair<NewformData, NewformData>& weight24_pair(i64 M = 3000);

// Synthetic Maass data with multiplicative eigenvalues built from Satake angles
MaassFormData synthetic_maass(i64 N, i64 L, double r, i64 M, unsigned seed = 7);

// ---- L-functions of level 1 through a smoothed approximate functional equation ----

// Lambda(s) = Q^s prod Gamma(s + mu_j) L(s), Lambda(s) = eps Lambda(1-s), real coefficients,
// optional simple poles at s = 1 (residue R of Lambda) and s = 0 (residue -eps R).
class SelfDualL {
 public:
  SelfDualL(double logQ, std::vector<double> mu, double eps, std::vector<double> coeffs,
            double lambda_residue = 0.0);

  cplx operator()(cplx s) const;       // L(s)
  cplx log_gamma_factor(cplx s) const;  // log of Q^s prod Gamma(s+mu)
  double lambda_residue() const { return residue_; }
  void set_lambda_residue(double R) { residue_ = R; }
  // Res_{s=1} L(s)
  double residue() const;
  // terms of the direct Dirichlet series with n <= M
  cplx direct(cplx s, i64 M) const;
  i64 available() const { return static_cast<i64>(c_.size()) - 1; }
  // Lambda(s) with the residue set to 0, and the coefficient of -R
  void split(cplx s, cplx& regular, cplx& pole_part) const;

 private:
  cplx side(cplx s, cplx delta) const;  // sum_n c_n n^{-s} F(s, n; delta)
  double logQ_;
  std::vector<double> mu_;
  double eps_;
  std::vector<double> c_;
  double residue_;
};

// L(s, f x g-bar) = zeta(2s) sum A(n) B(n) n^{-s} for level-1 forms; for f == g the residue
// is fixed by matching the direct series at s = 5
SelfDualL rankin_selberg_level1(const NewformData& f, const NewformData& g, bool same_form);
// L(s, f) = sum A(n) n^{-s}, root number i^k
SelfDualL holomorphic_level1(const NewformData& f);

struct SeriesValue {
  cplx value;
  double tail_bound;
};

// zeta^(N)(2s) sum a_a(n) conj(b_a(n)) n^{-k+1-s} truncated at n <= M with a divisor-bound tail
SeriesValue rankin_selberg_direct(cplx s, const NewformData& f, const NewformData& g, i64 M);
SeriesValue rankin_selberg_direct_cusp(cplx s, const CuspExpansionData& fa,
                                       const CuspExpansionData& ga, int k, i64 N, i64 M);

// Res_{s=1} L(s, f x f-bar) from (s-1)L(s) at s = 1 + h_j, h_j = 0.1 / 2^j, Richardson
Estimate residue_at_1(const SelfDualL& L, int nodes = 3);
// Laurent constant term of L at s = 1
cplx laurent_constant_at_1(const SelfDualL& L);

// L(s, f) for level 1 through the AFE
cplx holo_L(cplx s, const NewformData& f);

// explicit bound d(n) <= C(eps) n^eps
double divisor_bound_constant(double eps);

// ---- the Dirichlet series attached to Eisenstein series and Maass forms ----

// direct series, conj(tau(1/2 + z; m)) continued analytically as tau(1/2 - z; -m)
SeriesValue curly_L_eisenstein_direct(cplx s, cplx t, cplx ir, const CuspLabel& cusp, i64 M);
cplx curly_L_eisenstein(cplx s, cplx t, cplx ir, const CuspLabel& cusp);
// the Euler polynomial and its local factors
cplx scrP_eisenstein(cplx s, cplx t, cplx ir, const CuspLabel& cusp);
cplx scrP_local(cplx s, cplx t, cplx ir, i64 p, i64 N, i64 a);

SeriesValue curly_L_maass_direct(cplx s, cplx t, const MaassFormData& u, i64 M);
// factored through exact local sums at p | N (production path)
cplx curly_L_maass(cplx s, cplx t, const MaassFormData& u);
// the Euler polynomial exactly as printed; agrees with the series only when N = 1
cplx curly_L_maass_lemma(cplx s, cplx t, const MaassFormData& u);
cplx maass_L(cplx s, const MaassFormData& u);  // Euler product over stored primes

}  // namespace rsm
