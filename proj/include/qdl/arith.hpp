#pragma once

// Integer and multiplicative-function primitives: Kronecker symbol,
// linear-sieve tables for tau/mu/phi, and 64-bit factorization.

#include <cstdint>
#include <vector>

namespace qdl {

using i64 = std::int64_t;
using u64 = std::uint64_t;

// Kronecker symbol (a|n), extended to all integer pairs.
// Conventions: (a|0) = 1 iff a = +-1; (a|-1) = -1 iff a < 0; (a|2) by a mod 8.
// Computed by the reciprocity reduction, no factorization involved.
int kronecker(i64 a, i64 n);

// Jacobi symbol: n must be odd and positive.
int jacobi(i64 a, i64 n);

struct FactoredInt {
    i64 n = 1;
    // (prime, exponent) pairs, primes strictly increasing, exponents >= 1
    std::vector<std::pair<i64, int>> factors;

    int omega() const { return static_cast<int>(factors.size()); }
    i64 tau() const;
    i64 phi() const;
    int mu() const;  // 0 if any exponent > 1
};

// Deterministic Miller-Rabin, valid for all n < 2^63.
bool is_prime_u64(u64 n);

// Full factorization for 1 <= n < 2^62 (trial division + Pollard rho).
FactoredInt factorize(i64 n);

// ord_p(k) for k != 0; throws for k = 0 (the caller handles alpha = infinity).
int ord_p(i64 k, i64 p);

// Sieve tables for n <= N.  Immutable after construction, shareable across
// threads.  Throws std::length_error when the estimated footprint exceeds
// max_bytes (default 1 GiB).
class MultTables {
public:
    explicit MultTables(i64 N, std::size_t max_bytes = (std::size_t(1) << 30));

    i64 limit() const { return N_; }
    i64 tau(i64 n) const { return tau_[n]; }
    int mu(i64 n) const { return mu_[n]; }
    i64 phi(i64 n) const { return phi_[n]; }
    bool squarefree(i64 n) const { return mu_[n] != 0; }
    const std::vector<i64>& primes() const { return primes_; }

private:
    i64 N_;
    std::vector<std::uint16_t> tau_;
    std::vector<std::int8_t> mu_;
    std::vector<std::uint32_t> phi_;
    std::vector<i64> primes_;
};

// Primes <= N by plain Eratosthenes (no auxiliary tables kept).
std::vector<i64> primes_up_to(i64 N);

// Overflow-checked multiply; aborts in debug builds on overflow.
i64 checked_mul(i64 a, i64 b);

}  // namespace qdl
