#pragma once

#include "rsm/arith.hpp"

namespace rsm {

struct EisensteinCoefficientRequest {
  CuspLabel cusp;
  cplx s;
  i64 n = 1;  // nonzero
};

struct LatticeTruncation {
  i64 max_height = 200;  // bound on |c'|, |d'| in the coset sum
  double fourier_y = 0.5;
  int fourier_points = 128;
};

// width of the cusp 1/(ca): N / gcd(N, a^2)
i64 cusp_width(const CuspLabel& cusp);

cplx lambda_chi(i64 n, cplx s, const DirichletCharacter& chi);

// Fourier coefficient from the explicit character-sum formula
cplx tau_cusp(const EisensteinCoefficientRequest& req);

// tau_cusp at a fixed (cusp, s) with the n-independent character data computed once
class TauCuspEvaluator {
 public:
  TauCuspEvaluator(const CuspLabel& cusp, cplx s);
  cplx operator()(i64 n) const;

 private:
  struct Head {
    DirichletCharacter chi;
    i64 q;
    cplx head;
  };
  CuspLabel cusp_;
  cplx s_;
  cplx outer_;
  std::vector<Head> heads_;
};

// True when the bottom row (c', d') belongs to sigma_a^{-1} Gamma_0(N)
bool coset_row_admissible(const CuspLabel& cusp, i64 cp, i64 dp);

// Literal truncated coset sum w^{-s} sum (y / |c'z + d'|^2)^s
cplx eisenstein_oracle(const CuspLabel& cusp, cplx z, cplx s, const LatticeTruncation& trunc);

// Coefficient from the coset sum with the d'-sum resummed exactly, truncated at c' <= max_c.
// error is the change between max_c/2 and max_c.
Estimate tau_oracle(const CuspLabel& cusp, cplx s, i64 n, i64 max_c = 3000);

// (1/(sqrt(y) K_{s-1/2}(2 pi |n| y))) int_0^1 E(x+iy) e(-nx) dx from samples of eisenstein_oracle
cplx tau_fourier_extract(const CuspLabel& cusp, cplx s, i64 n, const LatticeTruncation& trunc);

}  // namespace rsm
