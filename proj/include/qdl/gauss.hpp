#pragma once

// The Gauss-type sums
//   G_k(n) = ((1-i)/2 + (-1|n)(1+i)/2) sum_{a mod n} (a|n) e(ak/n),  n odd,
// by direct summation and by the multiplicative prime-power closed form.

#include <cstdint>
#include <vector>

#include "qdl/arith.hpp"

namespace qdl {

enum class GaussForm {
    zero,
    phi,          // positive integer value (phi(p^beta) case and products)
    neg_p_alpha,  // negative integer value
    sqrt_p_term,  // integer times sqrt(m), m > 1 squarefree
};

struct GaussSumValue {
    double value = 0.0;
    GaussForm form = GaussForm::zero;
    // Exact representation: value = coeff * sqrt(radical), radical squarefree.
    i64 coeff = 0;
    i64 radical = 1;
};

// O(n) complex accumulation; asserts |Im| < 1e-8 * max(1, |Re|) and returns
// the real part.  n odd positive, n <= 10^6.
GaussSumValue gauss_direct(i64 k, i64 n);

// Prime-power closed form: with beta = ord_p(n), alpha = ord_p(k)
// (alpha = infinity for k = 0):
//   0                     beta <= alpha odd
//   phi(p^beta)           beta <= alpha even
//   -p^alpha              beta = alpha + 1 even
//   (k p^-alpha | p) p^alpha sqrt(p)   beta = alpha + 1 odd
//   0                     beta >= alpha + 2
// multiplied over the factorization of n (exact integer/sqrt arithmetic).
GaussSumValue gauss_closed(i64 k, i64 n);

// Same, for a single prime power p^beta given alpha = ord_p(k) (alpha < 0
// encodes k = 0, i.e. alpha = infinity).
GaussSumValue gauss_prime_power(i64 k, i64 p, int beta, int alpha);

}  // namespace qdl
