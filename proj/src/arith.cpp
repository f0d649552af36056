#include "qdl/arith.hpp"

#include <cassert>
#include <numeric>
#include <stdexcept>

namespace qdl {

namespace {

// (a|2) for odd a: +1 if a = +-1 mod 8, -1 if a = +-3 mod 8.
inline int kron_two(i64 a) {
    int r = static_cast<int>(((a % 8) + 8) % 8);
    return (r == 1 || r == 7) ? 1 : -1;
}

}  // namespace

int kronecker(i64 a, i64 n) {
    if (n == 0) return (a == 1 || a == -1) ? 1 : 0;
    if ((a & 1) == 0 && (n & 1) == 0) return 0;

    int k = 1;
    int v = 0;
    while ((n & 1) == 0) { n >>= 1; ++v; }
    if (v & 1) k = kron_two(a);  // a odd here, else we returned above

    if (n < 0) {
        n = -n;
        if (a < 0) k = -k;
    }
    // n odd positive from here; standard Jacobi loop.
    a %= n;
    if (a < 0) a += n;
    while (a != 0) {
        while ((a & 1) == 0) {
            a >>= 1;
            int r = static_cast<int>(n % 8);
            if (r == 3 || r == 5) k = -k;
        }
        std::swap(a, n);
        if ((a & 3) == 3 && (n & 3) == 3) k = -k;
        a %= n;
    }
    return (n == 1) ? k : 0;
}

int jacobi(i64 a, i64 n) {
    if (n <= 0 || (n & 1) == 0) throw std::domain_error("jacobi: n must be odd positive");
    return kronecker(a, n);
}

i64 FactoredInt::tau() const {
    i64 t = 1;
    for (auto [p, e] : factors) t *= (e + 1);
    return t;
}

i64 FactoredInt::phi() const {
    i64 r = 1;
    for (auto [p, e] : factors) {
        r *= (p - 1);
        for (int i = 1; i < e; ++i) r *= p;
    }
    return r;
}

int FactoredInt::mu() const {
    for (auto [p, e] : factors)
        if (e > 1) return 0;
    return (factors.size() & 1) ? -1 : 1;
}

namespace {

u64 mulmod_u64(u64 a, u64 b, u64 m) {
    return static_cast<u64>((__uint128_t)a * b % m);
}

u64 powmod_u64(u64 a, u64 e, u64 m) {
    u64 r = 1;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod_u64(r, a, m);
        a = mulmod_u64(a, a, m);
        e >>= 1;
    }
    return r;
}

}  // namespace

bool is_prime_u64(u64 n) {
    if (n < 2) return false;
    for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % p == 0) return n == p;
    }
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) { d >>= 1; ++s; }
    // Sinclair's deterministic base set for n < 2^64.
    for (u64 a : {2ull, 325ull, 9375ull, 28178ull, 450775ull, 9780504ull, 1795265022ull}) {
        u64 x = powmod_u64(a % n, d, n);
        if (x == 0 || x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod_u64(x, x, n);
            if (x == n - 1) { composite = false; break; }
        }
        if (composite) return false;
    }
    return true;
}

namespace {

u64 pollard_rho(u64 n) {
    if ((n & 1) == 0) return 2;
    for (u64 c = 1;; ++c) {
        u64 x = 2, y = 2, d = 1;
        while (d == 1) {
            x = (mulmod_u64(x, x, n) + c) % n;
            y = (mulmod_u64(y, y, n) + c) % n;
            y = (mulmod_u64(y, y, n) + c) % n;
            d = std::gcd(x > y ? x - y : y - x, n);
        }
        if (d != n) return d;
    }
}

void factor_rec(u64 n, std::vector<u64>& out) {
    if (n == 1) return;
    if (is_prime_u64(n)) { out.push_back(n); return; }
    u64 d = pollard_rho(n);
    factor_rec(d, out);
    factor_rec(n / d, out);
}

}  // namespace

FactoredInt factorize(i64 n) {
    if (n < 1) throw std::domain_error("factorize: n must be >= 1");
    FactoredInt f;
    f.n = n;
    u64 m = static_cast<u64>(n);
    std::vector<u64> ps;
    for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull}) {
        while (m % p == 0) { ps.push_back(p); m /= p; }
    }
    factor_rec(m, ps);
    std::sort(ps.begin(), ps.end());
    for (std::size_t i = 0; i < ps.size();) {
        std::size_t j = i;
        while (j < ps.size() && ps[j] == ps[i]) ++j;
        f.factors.emplace_back(static_cast<i64>(ps[i]), static_cast<int>(j - i));
        i = j;
    }
    return f;
}

int ord_p(i64 k, i64 p) {
    if (k == 0) throw std::domain_error("ord_p: k = 0 has infinite order");
    if (p < 2) throw std::domain_error("ord_p: p must be >= 2");
    if (k < 0) k = -k;
    int e = 0;
    while (k % p == 0) { k /= p; ++e; }
    return e;
}

MultTables::MultTables(i64 N, std::size_t max_bytes) : N_(N) {
    if (N < 1) throw std::domain_error("MultTables: N must be >= 1");
    // tau u16 + mu i8 + phi u32 + spf-exponent u8 transient + primes
    std::size_t need = static_cast<std::size_t>(N + 1) * (2 + 1 + 4 + 1);
    if (need > max_bytes) throw std::length_error("MultTables: N exceeds memory budget");

    tau_.assign(N + 1, 0);
    mu_.assign(N + 1, 0);
    phi_.assign(N + 1, 0);
    std::vector<std::uint8_t> e(N + 1, 0);  // exponent of the smallest prime factor

    tau_[1] = 1;
    mu_[1] = 1;
    phi_[1] = 1;
    for (i64 i = 2; i <= N; ++i) {
        if (e[i] == 0) {
            primes_.push_back(i);
            tau_[i] = 2;
            mu_[i] = -1;
            phi_[i] = static_cast<std::uint32_t>(i - 1);
            e[i] = 1;
        }
        for (i64 p : primes_) {
            i64 ip = i * p;
            if (ip > N) break;
            if (i % p == 0) {
                e[ip] = static_cast<std::uint8_t>(e[i] + 1);
                tau_[ip] = static_cast<std::uint16_t>(tau_[i] / (e[i] + 1) * (e[i] + 2));
                mu_[ip] = 0;
                phi_[ip] = static_cast<std::uint32_t>(phi_[i] * p);
                break;
            }
            e[ip] = 1;
            tau_[ip] = static_cast<std::uint16_t>(tau_[i] * 2);
            mu_[ip] = static_cast<std::int8_t>(-mu_[i]);
            phi_[ip] = static_cast<std::uint32_t>(phi_[i] * (p - 1));
        }
    }
}

std::vector<i64> primes_up_to(i64 N) {
    std::vector<bool> comp(N + 1, false);
    std::vector<i64> ps;
    for (i64 i = 2; i <= N; ++i) {
        if (!comp[i]) {
            ps.push_back(i);
            for (i64 j = i * i; j <= N; j += i) comp[j] = true;
        }
    }
    return ps;
}

i64 checked_mul(i64 a, i64 b) {
    i64 r;
#ifndef NDEBUG
    bool ovf = __builtin_mul_overflow(a, b, &r);
    assert(!ovf && "checked_mul: 64-bit overflow");
#else
    r = a * b;
#endif
    return r;
}

}  // namespace qdl
