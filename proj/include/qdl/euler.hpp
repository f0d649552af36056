#pragma once

// The arithmetic constants a_k and the Euler products Z1..Z4 of the moment
// computation, with the exact local factors and the identities
//   Z1(1/2,1/2) = 4 a_4,   Z4(1/2,1/2,0) = 32 a_4 / pi^2,
//   F(0,0,0) = -16 Phi~(1) a_4 / pi^2.

#include <vector>

#include "qdl/arith.hpp"
#include "qdl/special.hpp"

namespace qdl {

struct ShiftPoint {
    cplx alpha = 0.0;
    cplx beta = 0.0;
    cplx gamma = 0.0;
};

struct EulerProductResult {
    cplx value = 0.0;
    i64 prime_limit = 0;
    double tail_bound = 0.0;
};

struct RegionError : std::domain_error {
    using std::domain_error::domain_error;
};

// 4k = k1 k2^2 with k1 a fundamental discriminant (possibly 1), k2 > 0.
struct LocalFactorContext {
    i64 a = 1;   // odd positive (Mobius parameter)
    i64 k = 1;   // nonzero
    i64 k1 = 1;
    i64 k2 = 1;

    LocalFactorContext(i64 a_, i64 k_);
};

// Evaluation route for the two-way transcription check.
enum class EvalRoute { direct, horner };

// a_k = 2^{-k(k+2)/2} prod_{(p,2)=1} (1-1/p)^{k(k+1)/2} / (1+1/p)
//         * ( [ (1+1/sqrt p)^{-k} + (1-1/sqrt p)^{-k} ] / 2 + 1/p ).
EulerProductResult a_k_constant(int k, i64 P);

// The k = 4 product in the simplified form
//   2^{-12} prod (1-1/p)^6/(1+1/p) (1 + 7/p - 3/p^2 + 6/p^3 - 4/p^4 + 1/p^5).
EulerProductResult a4_simplified(i64 P);

// --- Z1 ---------------------------------------------------------------
cplx z1_local(i64 p, const ShiftPoint& sp, EvalRoute route = EvalRoute::direct);
EulerProductResult z1_product(const ShiftPoint& sp, i64 P);

// --- Z2 ---------------------------------------------------------------
// Local factor at p; uses the finite Gauss-sum expansion when p | k and the
// p-nmid-2ak closed form otherwise.
cplx z2_local(i64 p, const ShiftPoint& sp, const LocalFactorContext& ctx,
              EvalRoute route = EvalRoute::direct);
// The finite double-sum form, valid for any p nmid 2a (oracle for the
// closed form).
cplx z2_local_expanded(i64 p, const ShiftPoint& sp, const LocalFactorContext& ctx);
EulerProductResult z2_value(const ShiftPoint& sp, const LocalFactorContext& ctx, i64 P);

// --- Z3 ---------------------------------------------------------------
cplx k1_factor(i64 p, const ShiftPoint& sp);
cplx k2_factor(i64 p, const ShiftPoint& sp, EvalRoute route = EvalRoute::direct);
cplx z3_local(i64 p, const ShiftPoint& sp, i64 a);
// zeta(2a+2g)^2 zeta(2b+2g)^2 prod_p Z_{3,p}; when zeta_completion is set and
// the exponents allow it, the p > P tail of the slow leading factors is
// completed with exact zeta values (algebraically identical regrouping).
EulerProductResult z3_product(const ShiftPoint& sp, i64 a, i64 P,
                              bool zeta_completion = true);

// Precomputes the a-independent part of Z3 at a fixed shift point so that
// sums over many Mobius parameters a cost O(omega(a)) each.
class Z3Evaluator {
public:
    Z3Evaluator(const ShiftPoint& sp, i64 P, bool zeta_completion = true);
    cplx value(i64 a) const;  // = z3_product(sp, a, P).value
    double tail_bound() const { return tail_; }

private:
    std::vector<i64> primes_;
    std::vector<cplx> ratio_;  // K1/K2 per odd prime index
    cplx base_;
    double tail_;
};

// --- Z4 ---------------------------------------------------------------
cplx z4_local(i64 p, const ShiftPoint& sp);
// The local factors carry a (1 - p^{-(2-2gamma)}) leading structure; with
// zeta_completion the p > P part of that structure is supplied by the exact
// zeta value (valid for Re(2-2gamma) > 1), which removes the dominant
// truncation deficit.
EulerProductResult z4_product(const ShiftPoint& sp, i64 P, bool zeta_completion = false);

// F(0,0,0) = -1/2 Phi~(1) g(0)^2 Z4(1/2,1/2,0);  phitilde1 = Phi~(1).
double f000_value(double phitilde1, i64 P);

}  // namespace qdl
