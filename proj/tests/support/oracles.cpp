#include "support/oracles.hpp"

#include <atomic>
#include <cmath>
#include <numeric>
#include <thread>

#include "qdl/gauss.hpp"

namespace qdl_test {

using namespace qdl;

namespace {

// smallest-prime-factor table
std::vector<i64> spf_table(i64 N) {
    std::vector<i64> spf(N + 1, 0);
    for (i64 i = 2; i <= N; ++i) {
        if (spf[i]) continue;
        for (i64 j = i; j <= N; j += i)
            if (!spf[j]) spf[j] = i;
    }
    return spf;
}

std::vector<i64> prime_list(i64 n, const std::vector<i64>& spf) {
    std::vector<i64> ps;
    while (n > 1) {
        i64 p = spf[n];
        ps.push_back(p);
        while (n % p == 0) n /= p;
    }
    return ps;
}

}  // namespace

namespace {

// tau(g s^2) for squarefree g from the prime lists of g and s:
// exponent of p in g s^2 is [p|g] + 2 ord_p(s).
double tau_g_s2(const std::vector<std::pair<i64, int>>& gfac,
                const std::vector<std::pair<i64, int>>& sfac) {
    double t = 1.0;
    std::size_t i = 0, j = 0;
    while (i < gfac.size() || j < sfac.size()) {
        if (j >= sfac.size() || (i < gfac.size() && gfac[i].first < sfac[j].first)) {
            t *= 2.0;
            ++i;
        } else if (i >= gfac.size() || sfac[j].first < gfac[i].first) {
            t *= static_cast<double>(2 * sfac[j].second + 1);
            ++j;
        } else {
            t *= static_cast<double>(2 * sfac[j].second + 2);
            ++i;
            ++j;
        }
    }
    return t;
}

std::vector<std::pair<i64, int>> fac_of(i64 n, const std::vector<i64>& spf) {
    std::vector<std::pair<i64, int>> f;
    while (n > 1) {
        i64 p = spf[n];
        int e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        f.emplace_back(p, e);
    }
    return f;
}

}  // namespace

cplx z1_series_oracle(cplx alpha, cplx beta, i64 M, int threads) {
    MultTables tab(M);
    std::vector<i64> spf = spf_table(M);

    std::vector<i64> cores;  // odd squarefree g <= M
    for (i64 g = 1; g <= M; g += 2)
        if (tab.squarefree(g)) cores.push_back(g);

    std::atomic<std::size_t> next{0};
    std::vector<cplx> partial(static_cast<std::size_t>(threads), 0.0);
    auto worker = [&](int tid) {
        cplx acc = 0.0;
        std::vector<i64> uni;
        for (;;) {
            std::size_t ci = next.fetch_add(1);
            if (ci >= cores.size()) break;
            i64 g = cores[ci];
            auto gfac = fac_of(g, spf);
            double lng = std::log(static_cast<double>(g));
            for (i64 s1 = 1; g * s1 <= M; s1 += 2) {
                auto s1fac = fac_of(s1, spf);
                double tau1 = tau_g_s2(gfac, s1fac);
                cplx n1pow = std::exp(-alpha * (lng + 2.0 * std::log(static_cast<double>(s1))));
                i64 s2max = M / (g * s1);
                for (i64 s2 = 1; s2 <= s2max; s2 += 2) {
                    auto s2fac = fac_of(s2, spf);
                    double tau2 = tau_g_s2(gfac, s2fac);
                    cplx n2pow = std::exp(-beta * (lng + 2.0 * std::log(static_cast<double>(s2))));
                    // prod over p | g s1 s2 of p/(p+1)
                    uni.clear();
                    for (auto [p, e] : gfac) uni.push_back(p);
                    for (auto [p, e] : s1fac) uni.push_back(p);
                    for (auto [p, e] : s2fac) uni.push_back(p);
                    std::sort(uni.begin(), uni.end());
                    double w = 1.0;
                    i64 last = 0;
                    for (i64 p : uni) {
                        if (p != last) w *= static_cast<double>(p) / (p + 1.0);
                        last = p;
                    }
                    acc += tau1 * tau2 * w * n1pow * n2pow;
                }
            }
        }
        partial[static_cast<std::size_t>(tid)] = acc;
    };
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker, t);
    for (auto& th : pool) th.join();
    cplx total = 0.0;
    for (cplx v : partial) total += v;
    return total;
}

cplx z2_series_oracle(cplx alpha, cplx beta, i64 a, i64 k, i64 M, int threads) {
    MultTables tab(M);
    std::vector<i64> spf = spf_table(M);

    std::atomic<i64> next{1};
    std::vector<cplx> partial(static_cast<std::size_t>(threads), 0.0);
    auto worker = [&](int tid) {
        cplx acc = 0.0;
        for (;;) {
            i64 n1 = next.fetch_add(2);
            if (n1 > M) break;
            if (std::gcd(n1, 2 * a) != 1) continue;
            auto f1 = fac_of(n1, spf);
            cplx n1pow = std::exp(-(alpha + 1.0) * std::log(static_cast<double>(n1)));
            const i64 n2max = M / n1;  // hyperbola truncation n1 n2 <= M
            for (i64 n2 = 1; n2 <= n2max; n2 += 2) {
                if (std::gcd(n2, 2 * a) != 1) continue;
                auto f2 = fac_of(n2, spf);
                // G_k(n1 n2): merge factorizations
                double gk = 1.0;
                bool zero = false;
                std::size_t i = 0, j = 0;
                while (i < f1.size() || j < f2.size()) {
                    i64 p;
                    int e;
                    if (j >= f2.size() || (i < f1.size() && f1[i].first < f2[j].first)) {
                        p = f1[i].first;
                        e = f1[i].second;
                        ++i;
                    } else if (i >= f1.size() || f2[j].first < f1[i].first) {
                        p = f2[j].first;
                        e = f2[j].second;
                        ++j;
                    } else {
                        p = f1[i].first;
                        e = f1[i].second + f2[j].second;
                        ++i;
                        ++j;
                    }
                    int al = (k == 0) ? -1 : ord_p(k, p);
                    GaussSumValue g = gauss_prime_power(k, p, e, al);
                    if (g.value == 0.0) {
                        zero = true;
                        break;
                    }
                    gk *= g.value;
                }
                if (zero) continue;
                cplx n2pow = std::exp(-(beta + 1.0) * std::log(static_cast<double>(n2)));
                acc += static_cast<double>(tab.tau(n1)) * static_cast<double>(tab.tau(n2)) * gk *
                       n1pow * n2pow;
            }
        }
        partial[static_cast<std::size_t>(tid)] += acc;
    };
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker, t);
    for (auto& th : pool) th.join();
    cplx total = 0.0;
    for (cplx v : partial) total += v;
    return total;
}

cplx z3_k_sum_oracle(cplx alpha, cplx beta, cplx gamma, i64 a, i64 K, i64 P, bool alternating) {
    ShiftPoint sp{alpha, beta, gamma};
    cplx sum = 0.0;
    for (i64 k = 1; k <= K; ++k) {
        LocalFactorContext ctx(a, k * k);
        cplx z2 = z2_value(sp, ctx, P).value;
        double sign = alternating && (k & 1) ? -1.0 : 1.0;
        sum += sign * z2 * std::exp(-2.0 * gamma * std::log(static_cast<double>(k)));
    }
    return sum;
}

cplx z4_mobius_oracle(cplx alpha, cplx beta, cplx gamma, i64 A, i64 P) {
    ShiftPoint sp{alpha, beta, gamma};
    Z3Evaluator z3(sp, P);
    MultTables tab(A);
    cplx sum = 0.0;
    for (i64 a = 1; a <= A; a += 2) {
        int mu = tab.mu(a);
        if (!mu) continue;
        sum += static_cast<double>(mu) *
               std::exp(-(2.0 - 2.0 * gamma) * std::log(static_cast<double>(a))) * z3.value(a);
    }
    return sum;
}

cplx lvalue_series_oracle(cplx s, i64 d, i64 N) {
    if (s.real() < 1.5) throw std::domain_error("lvalue_series_oracle: Re(s) too small");
    cplx sum = 0.0;
    for (i64 n = 1; n <= N; ++n) {
        int c = kronecker(8 * d, n);
        if (c) sum += static_cast<double>(c) * std::exp(-s * std::log(static_cast<double>(n)));
    }
    return sum;
}

i64 squarefree_count_bruteforce(i64 N) {
    i64 count = 0;
    for (i64 n = 1; n <= N; ++n) {
        bool sf = true;
        for (i64 p = 2; p * p <= n; ++p)
            if (n % (p * p) == 0) {
                sf = false;
                break;
            }
        if (sf) ++count;
    }
    return count;
}

cplx zeta_series_oracle(cplx s, i64 N) {
    cplx sum = 0.0;
    for (i64 n = 1; n <= N; ++n) sum += std::exp(-s * std::log(static_cast<double>(n)));
    // integral tail: N^{1-s}/(s-1) + N^{-s}/2
    cplx ns = std::exp(-s * std::log(static_cast<double>(N)));
    return sum + ns * static_cast<double>(N) / (s - 1.0) - 0.5 * ns;
}

}  // namespace qdl_test
