#pragma once

// The quadratic characters chi_{8d} = (8d|.), a Hurwitz-zeta oracle for
// L(s, chi_{8d}), and the approximate functional equation
//   A_t(1/2; 8d) = 2 sum_n tau(n) chi_{8d}(n) / sqrt(n) * omega(n pi / t),
// with L(1/2, chi_{8d})^2 = 2 A(d),  A(d) = A_{8d}(1/2; 8d) / 2.

#include "qdl/arith.hpp"
#include "qdl/special.hpp"

namespace qdl {

struct QuadChar {
    i64 d;        // odd positive square-free
    i64 modulus;  // 8d

    explicit QuadChar(i64 d_);
};

// chi_{8d}(n) = kronecker(8d, n); completely multiplicative, period 8d.
int chi(const QuadChar& q, i64 n);

// L(s, chi_{8d}) = (8d)^{-s} sum_{a=1}^{8d} chi(a) zeta(s, a/8d).
// Handles s = 1 by the digamma limit (chi is never principal here).
// Cost linear in the modulus.
cplx lvalue_oracle(cplx s, const QuadChar& q);

struct AfeResult {
    i64 d = 0;
    i64 truncation = 0;   // N
    double A_value = 0;   // A_t(1/2; 8d)
    double tail_bound = 0;
};

// Certified tail bound for truncating the AFE series at N (envelope-based).
double afe_tail_bound(double t, double N);

// A_t(1/2; 8d), truncated so that the certified tail bound is < tol.
// Throws ConvergenceError if that would need more than term_cap terms.
AfeResult afe_A(double t, const QuadChar& q, double tol = 1e-9,
                i64 term_cap = 40000000);

// A(d) = A_{8d}(1/2; 8d) / 2, so that L(1/2, chi_{8d})^2 = 2 A(d).
double a_of_d(const QuadChar& q, double tol = 1e-9);

// B_U(1/2; 8d) = L(1/2, chi_{8d})^2 - A_U(1/2; 8d), the L-value from the
// Hurwitz-zeta oracle.
double b_u(const QuadChar& q, double U, double tol = 1e-9);

}  // namespace qdl
