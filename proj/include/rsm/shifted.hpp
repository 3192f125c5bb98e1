#pragma once

#include "rsm/lseries.hpp"

namespace rsm {

struct Truncation {
  i64 outer = 2000;  // m
  i64 inner = 2000;  // n
};

// how the outer index is accumulated; both orders are deterministic
enum class Reduction { sequential, pairwise };

struct ShiftedValue {
  cplx value;
  double outer_tail = 0.0;  // bound on the terms with m > outer
  double inner_tail = 0.0;  // bound on the terms with n > inner (and m <= outer)
  double tail_bound() const { return outer_tail + inner_tail; }
};

// D(w; m) = sum_{n >= 1} a(n+m) conj(b(n)) n^{-w-k+1}, truncated at n <= M
SeriesValue shifted_D(cplx w, i64 m, const NewformData& f, const NewformData& g, i64 M);
// the inner sum of M^(3): sum_{n > m} a(n-m) conj(b(n)) n^{-w-k+1}, truncated at n - m <= M
SeriesValue shifted_D_lower(cplx w, i64 m, const NewformData& f, const NewformData& g, i64 M);

struct ShiftedSeriesRequest {
  cplx s = 0.0;
  cplx v = 0.0;  // v for Z, w for M^(3)
  double t = 0.0;
  const NewformData* f = nullptr;
  const NewformData* g = nullptr;
  i64 N = 1;
  Truncation trunc;
  Reduction reduction = Reduction::sequential;
};

// Z(s, v; it) summed over n outside, m inside
ShiftedValue Z_series_double(const ShiftedSeriesRequest& req);
// zeta^(N)(2s) sum_m sigma_{-2it}(m; N) m^{it - v} D(s - v + 1/2; m)
ShiftedValue Z_series_rearranged(const ShiftedSeriesRequest& req);
// production: the rearranged path
ShiftedValue Z_series(const ShiftedSeriesRequest& req);

// M^(3)(s, w; it) with w = req.v; summed over n outside
ShiftedValue M3_series(const ShiftedSeriesRequest& req);
// the same through shifted_D_lower per m
ShiftedValue M3_series_rearranged(const ShiftedSeriesRequest& req);
// Gamma(k+w-1)/(4 pi)^{k+w-1}
cplx M3_prefactor(cplx w, int k);

}  // namespace rsm
