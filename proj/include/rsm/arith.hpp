#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "rsm/specfun.hpp"

namespace rsm {

using i64 = std::int64_t;

struct PrimeFactor {
  i64 p;
  int e;
  bool operator==(const PrimeFactor&) const = default;
};
using PrimeFactorization = std::vector<PrimeFactor>;

PrimeFactorization factorize(i64 n);
std::vector<i64> prime_divisors(i64 n);
std::vector<i64> divisors(i64 n);  // sorted
int ord_p(i64 n, i64 p);
i64 euler_phi(i64 n);
int mobius(i64 n);
i64 radical(i64 n);  // product of distinct primes dividing n
bool is_prime(i64 n);
i64 gcd(i64 a, i64 b);
i64 mod_inverse(i64 a, i64 m);  // throws domain error if not invertible

// sum_{d|n} d^z, and the version restricted to gcd(d, N) = 1
cplx sigma_complex(i64 n, cplx z);
cplx sigma_complex_coprime(i64 n, cplx z, i64 N);

// Euler product over p | M of the local polynomial; removable 0/0 points are
// replaced by their limits
cplx P_M(cplx s, i64 n, i64 M);
// the factor of P_M at one prime p, from ord_p(n) and ord_p(M)
cplx P_local(cplx s, int ord_n, i64 p, int ord_M);
// ratio between P_M and the older normalization P_M(2s-1, n; 1): M^{1-2s}/prod p
cplx P_M_conversion_factor(cplx s, i64 M);

// sigma_{-2it}(m; N); t may be complex
cplx sigma_twisted_N(i64 m, i64 N, cplx t);
// c with |sigma_{-2it}(m; N)| <= c d(m) for real t
double sigma_twisted_N_bound(i64 N);

// prod_{p|N}(1 - p^{-s}) zeta(s)
cplx zeta_depleted(cplx s, i64 N);
// prod_{p|N} of an arbitrary local factor
template <class F>
cplx euler_product(i64 N, F&& local) {
  cplx acc = 1.0;
  for (i64 p : prime_divisors(N)) acc *= local(static_cast<double>(p));
  return acc;
}

struct CuspLabel {
  i64 N = 1;
  i64 a = 1;
  i64 c = 1;
  bool operator==(const CuspLabel&) const = default;
};

std::vector<CuspLabel> enumerate_cusps(i64 N);
// sum_{a|N} phi(gcd(a, N/a))
i64 cusp_count(i64 N);

std::vector<DirichletCharacter> characters_mod(i64 q);
std::vector<DirichletCharacter> primitive_characters_mod(i64 q);
bool character_is_primitive(const DirichletCharacter& chi);

}  // namespace rsm
