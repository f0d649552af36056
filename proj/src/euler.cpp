#include "qdl/euler.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "qdl/gauss.hpp"

namespace qdl {

namespace {

constexpr double PI = 3.14159265358979323846264338327950288;

inline cplx pw(i64 p, cplx e) {  // p^{-e}
    return std::exp(-e * std::log(static_cast<double>(p)));
}

// Tail of sum_{p > P} |log f(p)| from samples of the last local factors:
// fit |log f| ~ C p^{-kappa} at two sample primes, integrate.
double tail_from_samples(const std::vector<i64>& primes,
                         const std::function<cplx(i64)>& local) {
    if (primes.size() < 8) return 1e-3;
    i64 p2 = primes.back();
    i64 p1 = primes[primes.size() / 2];
    double l1 = std::abs(std::log(local(p1)));
    double l2 = std::abs(std::log(local(p2)));
    if (l2 <= 0.0) return 0.0;
    double kappa = (l1 > 0.0) ? std::log(l1 / l2) / std::log(double(p2) / double(p1)) : 2.0;
    kappa = std::min(8.0, std::max(1.1, kappa));
    double C = l2 * std::pow(double(p2), kappa);
    double P = static_cast<double>(p2);
    return C * std::pow(P, 1.0 - kappa) / ((kappa - 1.0) * std::log(P));
}

}  // namespace

LocalFactorContext::LocalFactorContext(i64 a_, i64 k_) : a(a_), k(k_) {
    if (a < 1 || (a & 1) == 0) throw std::domain_error("LocalFactorContext: a must be odd positive");
    if (k == 0) throw std::domain_error("LocalFactorContext: k must be nonzero");
    // 4k = s f^2, s the signed squarefree part.
    i64 m = 4 * k;
    i64 am = m < 0 ? -m : m;
    FactoredInt f = factorize(am);
    i64 s = m < 0 ? -1 : 1, fo = 1;
    for (auto [p, e] : f.factors) {
        for (int i = 0; i + 1 < e; i += 2) fo *= p;
        if (e & 1) s *= p;
    }
    if (((s % 4) + 4) % 4 == 1) {
        k1 = s;
        k2 = fo;
    } else {
        k1 = 4 * s;
        k2 = fo / 2;  // f is even here since 4 | m and s nequiv 1 mod 4
    }
    if (k1 * k2 * k2 != 4 * k) throw std::logic_error("LocalFactorContext: decomposition failed");
}

EulerProductResult a_k_constant(int k, i64 P) {
    if (P < 3) throw std::domain_error("a_k_constant: P must be >= 3");
    double kk1 = k * (k + 1) / 2.0;
    double log_val = -(k * (k + 2) / 2.0) * std::log(2.0);
    auto primes = primes_up_to(P);
    auto local = [&](i64 p) {
        double ip = 1.0 / static_cast<double>(p);
        double rs = 1.0 / std::sqrt(static_cast<double>(p));
        double bracket = 0.5 * (std::pow(1.0 + rs, -k) + std::pow(1.0 - rs, -k)) + ip;
        return std::pow(1.0 - ip, kk1) / (1.0 + ip) * bracket;
    };
    for (i64 p : primes) {
        if (p == 2) continue;
        log_val += std::log(local(p));
    }
    EulerProductResult r;
    r.value = std::exp(log_val);
    r.prime_limit = P;
    std::vector<i64> odd(primes.begin() + 1, primes.end());
    auto loc_c = [&](i64 p) { return cplx(local(p), 0.0); };
    r.tail_bound = std::abs(r.value) * tail_from_samples(odd, loc_c);
    return r;
}

EulerProductResult a4_simplified(i64 P) {
    if (P < 3) throw std::domain_error("a4_simplified: P must be >= 3");
    auto primes = primes_up_to(P);
    double log_val = -12.0 * std::log(2.0);
    auto local = [&](i64 p) {
        double u = 1.0 / static_cast<double>(p);
        double poly = 1.0 + u * (7.0 + u * (-3.0 + u * (6.0 + u * (-4.0 + u))));
        return std::pow(1.0 - u, 6) / (1.0 + u) * poly;
    };
    for (i64 p : primes) {
        if (p == 2) continue;
        log_val += std::log(local(p));
    }
    EulerProductResult r;
    r.value = std::exp(log_val);
    r.prime_limit = P;
    std::vector<i64> odd(primes.begin() + 1, primes.end());
    auto loc_c = [&](i64 p) { return cplx(local(p), 0.0); };
    r.tail_bound = std::abs(r.value) * tail_from_samples(odd, loc_c);
    return r;
}

// ---------------------------------------------------------------------------
// Z1
// ---------------------------------------------------------------------------

cplx z1_local(i64 p, const ShiftPoint& sp, EvalRoute route) {
    const cplx a = sp.alpha, b = sp.beta;
    if (p == 2) {
        cplx x = pw(4, a), y = pw(4, b), e = pw(2, a + b);
        cplx r = (1.0 - x) * (1.0 - x) * (1.0 - x);
        r *= (1.0 - y) * (1.0 - y) * (1.0 - y);
        cplx f = (1.0 - e) * (1.0 - e);
        return r * f * f;
    }
    const double w = 1.0 / (static_cast<double>(p) + 1.0);
    if (route == EvalRoute::direct) {
        // As printed: powers p^{-2a}, p^{-2b}, p^{-(a+b)}, ... named directly.
        cplx A = pw(p, 2.0 * a), B = pw(p, 2.0 * b), E = pw(p, a + b);
        cplx A2 = pw(p, 4.0 * a), B2 = pw(p, 4.0 * b), AB = pw(p, 2.0 * a + 2.0 * b);
        cplx AB2 = pw(p, 2.0 * a + 4.0 * b), A2B = pw(p, 4.0 * a + 2.0 * b);
        cplx A2B2 = pw(p, 4.0 * a + 4.0 * b);
        cplx bracket = 1.0 + 4.0 * E + A + B + AB -
                       w * (3.0 * A + 3.0 * B + 4.0 * E - A2 - B2 - 3.0 * AB + 2.0 * AB2 +
                            2.0 * A2B - A2B2);
        cplx e4 = (1.0 - E) * (1.0 - E);
        return (1.0 - A) * (1.0 - B) * e4 * e4 * bracket;
    }
    // Horner-style regrouping over cached squares.
    cplx x = pw(p, a), y = pw(p, b);
    cplx A = x * x, B = y * y, E = x * y;
    cplx AB = A * B;
    cplx sub = 3.0 * (A + B) + 4.0 * E - (A * A + B * B) - 3.0 * AB + 2.0 * AB * (A + B) - AB * AB;
    cplx bracket = 1.0 + 4.0 * E + A + B + AB - w * sub;
    cplx e2 = 1.0 - E;
    return (1.0 - A) * (1.0 - B) * (e2 * e2) * (e2 * e2) * bracket;
}

EulerProductResult z1_product(const ShiftPoint& sp, i64 P) {
    if (sp.alpha.real() < 0.3 || sp.beta.real() < 0.3)
        throw RegionError("z1_product: requires Re(alpha), Re(beta) >= 0.3");
    auto primes = primes_up_to(P);
    cplx val = 1.0;
    for (i64 p : primes) val *= z1_local(p, sp);
    EulerProductResult r{val, P, 0.0};
    std::vector<i64> odd(primes.begin() + 1, primes.end());
    r.tail_bound = std::abs(val) * tail_from_samples(odd, [&](i64 p) { return z1_local(p, sp); });
    return r;
}

// ---------------------------------------------------------------------------
// Z2
// ---------------------------------------------------------------------------

namespace {

inline cplx z2_prefactor(i64 p, const ShiftPoint& sp, i64 k1) {
    double c = static_cast<double>(kronecker(k1, p));
    cplx u = 1.0 - c * pw(p, 0.5 + sp.alpha);
    cplx v = 1.0 - c * pw(p, 0.5 + sp.beta);
    return u * u * v * v;
}

}  // namespace

cplx z2_local_expanded(i64 p, const ShiftPoint& sp, const LocalFactorContext& ctx) {
    if (ctx.a % p == 0 || p == 2)
        throw std::domain_error("z2_local_expanded: requires p nmid 2a");
    const int alpha = ord_p(ctx.k, p);
    cplx x = pw(p, sp.alpha), y = pw(p, sp.beta);
    cplx S = 0.0;
    for (int m = 0; m <= alpha + 1; ++m) {
        double gv = (m == 0) ? 1.0 : gauss_prime_power(ctx.k, p, m, alpha).value;
        if (gv == 0.0) continue;
        // T_m = sum_{n1+n2=m} (n1+1)(n2+1) x^{n1} y^{n2}
        cplx T = 0.0;
        cplx xn = 1.0;
        for (int n1 = 0; n1 <= m; ++n1) {
            cplx yn = std::pow(y, m - n1);
            T += static_cast<double>((n1 + 1) * (m - n1 + 1)) * xn * yn;
            xn *= x;
        }
        S += gv / std::pow(static_cast<double>(p), m) * T;
    }
    return z2_prefactor(p, sp, ctx.k1) * S;
}

cplx z2_local(i64 p, const ShiftPoint& sp, const LocalFactorContext& ctx, EvalRoute route) {
    if (p == 2 || ctx.a % p == 0) return z2_prefactor(p, sp, ctx.k1);
    if (ctx.k % p == 0) return z2_local_expanded(p, sp, ctx);
    // p nmid 2ak closed form (15.2+):
    double c = static_cast<double>(kronecker(ctx.k1, p));
    cplx A = pw(p, 0.5 + sp.alpha), B = pw(p, 0.5 + sp.beta);
    if (route == EvalRoute::direct) {
        cplx u = 1.0 - c * A, v = 1.0 - c * B;
        return u * u * v * v * (1.0 + 2.0 * c * A + 2.0 * c * B);
    }
    cplx u = 1.0 - c * A, v = 1.0 - c * B;
    cplx uv = u * v;
    return uv * uv * (1.0 + 2.0 * c * (A + B));
}

EulerProductResult z2_value(const ShiftPoint& sp, const LocalFactorContext& ctx, i64 P) {
    if (sp.alpha.real() <= 0.0 || sp.beta.real() <= 0.0)
        throw RegionError("z2_value: requires Re(alpha), Re(beta) > 0");
    auto primes = primes_up_to(P);
    cplx val = 1.0;
    for (i64 p : primes) val *= z2_local(p, sp, ctx);
    EulerProductResult r{val, P, 0.0};
    std::vector<i64> generic;
    for (i64 p : primes)
        if (p != 2 && ctx.a % p && ctx.k % p) generic.push_back(p);
    r.tail_bound = std::abs(val) *
                   tail_from_samples(generic, [&](i64 p) { return z2_local(p, sp, ctx); });
    return r;
}

// ---------------------------------------------------------------------------
// Z3
// ---------------------------------------------------------------------------

cplx k1_factor(i64 p, const ShiftPoint& sp) {
    cplx A = 1.0 - pw(p, 0.5 + sp.alpha);
    cplx B = 1.0 - pw(p, 0.5 + sp.beta);
    cplx C = 1.0 - pw(p, 2.0 * sp.alpha + 2.0 * sp.gamma);
    cplx D = 1.0 - pw(p, 2.0 * sp.beta + 2.0 * sp.gamma);
    return A * A * B * B * C * C * D * D;
}

cplx k2_factor(i64 p, const ShiftPoint& sp, EvalRoute route) {
    const cplx a = sp.alpha, b = sp.beta, g = sp.gamma;
    const double w = 1.0 / static_cast<double>(p);
    cplx Ap = pw(p, 0.5 + a), Bp = pw(p, 0.5 + b);
    cplx C = pw(p, 2.0 * a + 2.0 * g), D = pw(p, 2.0 * b + 2.0 * g);
    cplx E = pw(p, a + b + 2.0 * g), F = pw(p, 2.0 * g);
    cplx pre = (1.0 - Ap) * (1.0 - Ap) * (1.0 - Bp) * (1.0 - Bp);
    if (route == EvalRoute::direct) {
        // as printed, the two long exponents spelled out
        cplx t1 = pw(p, 0.5 + 2.0 * a + b + 2.0 * g);
        cplx t2 = pw(p, 0.5 + a + 2.0 * b + 2.0 * g);
        cplx bracket = (1.0 - w) * (1.0 + C) * (1.0 + D) +
                       w * (1.0 - C) * (1.0 - C) * (1.0 - D) * (1.0 - D) +
                       (1.0 - w) * 4.0 * E + 2.0 * (1.0 - F) * (Ap + Bp + t1 + t2);
        return pre * bracket;
    }
    cplx bracket = (1.0 - w) * ((1.0 + C) * (1.0 + D) + 4.0 * E) +
                   w * ((1.0 - C) * (1.0 - D)) * ((1.0 - C) * (1.0 - D)) +
                   2.0 * (1.0 - F) * (Ap + Bp) * (1.0 + E);
    return pre * bracket;
}

cplx z3_local(i64 p, const ShiftPoint& sp, i64 a) {
    return (p == 2 || a % p == 0) ? k1_factor(p, sp) : k2_factor(p, sp);
}

namespace {

struct Z3Zetas {
    cplx pref;        // zeta(2a+2g)^2 zeta(2b+2g)^2
    cplx completion;  // extra exact-zeta ratio when completing
    bool can_complete;
};

Z3Zetas z3_zetas(const ShiftPoint& sp) {
    Z3Zetas z;
    cplx e1 = 2.0 * sp.alpha + 2.0 * sp.gamma;
    cplx e2 = 2.0 * sp.beta + 2.0 * sp.gamma;
    cplx e3 = sp.alpha + sp.beta + 2.0 * sp.gamma;
    cplx e4 = 0.5 + sp.alpha + 2.0 * sp.gamma;
    cplx e5 = 0.5 + sp.beta + 2.0 * sp.gamma;
    cplx za = riemann_zeta(e1), zb = riemann_zeta(e2);
    z.pref = za * za * zb * zb;
    z.can_complete = e1.real() > 1.02 && e2.real() > 1.02 && e3.real() > 1.02 &&
                     e4.real() > 1.02 && e5.real() > 1.02;
    if (z.can_complete) {
        cplx zc = riemann_zeta(e3), zd = riemann_zeta(e4), ze = riemann_zeta(e5);
        cplx zc2 = zc * zc;
        z.completion = za * zb * zc2 * zc2 / (zd * zd * ze * ze);
    } else {
        z.completion = 1.0;
    }
    return z;
}

// per-prime factor of the completion denominator:
// (1-C)(1-D)(1-E)^4 (1-G1)^{-2} (1-G2)^{-2}
cplx z3_completion_local(i64 p, const ShiftPoint& sp) {
    cplx C = pw(p, 2.0 * sp.alpha + 2.0 * sp.gamma);
    cplx D = pw(p, 2.0 * sp.beta + 2.0 * sp.gamma);
    cplx E = pw(p, sp.alpha + sp.beta + 2.0 * sp.gamma);
    cplx G1 = pw(p, 0.5 + sp.alpha + 2.0 * sp.gamma);
    cplx G2 = pw(p, 0.5 + sp.beta + 2.0 * sp.gamma);
    cplx e2 = (1.0 - E) * (1.0 - E);
    return (1.0 - C) * (1.0 - D) * e2 * e2 / ((1.0 - G1) * (1.0 - G1) * (1.0 - G2) * (1.0 - G2));
}

void z3_region_check(const ShiftPoint& sp) {
    if (sp.alpha.real() < 0.5 - 1e-12 || sp.beta.real() < 0.5 - 1e-12 ||
        sp.gamma.real() < -1e-12)
        throw RegionError("z3: requires Re(alpha), Re(beta) >= 1/2, Re(gamma) >= 0");
}

}  // namespace

EulerProductResult z3_product(const ShiftPoint& sp, i64 a, i64 P, bool zeta_completion) {
    z3_region_check(sp);
    Z3Zetas zz = z3_zetas(sp);
    auto primes = primes_up_to(P);
    cplx val = zz.pref;
    cplx comp = zz.can_complete && zeta_completion ? zz.completion : 1.0;
    for (i64 p : primes) {
        val *= z3_local(p, sp, a);
        if (zz.can_complete && zeta_completion) comp *= z3_completion_local(p, sp);
    }
    val *= comp;
    EulerProductResult r{val, P, 0.0};
    std::vector<i64> generic;
    for (i64 p : primes)
        if (p != 2 && a % p) generic.push_back(p);
    auto tail_local = [&](i64 p) {
        cplx f = k2_factor(p, sp);
        if (zz.can_complete && zeta_completion) f *= z3_completion_local(p, sp);
        return f;
    };
    r.tail_bound = std::abs(val) * tail_from_samples(generic, tail_local);
    return r;
}

Z3Evaluator::Z3Evaluator(const ShiftPoint& sp, i64 P, bool zeta_completion) {
    z3_region_check(sp);
    Z3Zetas zz = z3_zetas(sp);
    primes_ = primes_up_to(P);
    cplx base = zz.pref;
    cplx comp = zz.can_complete && zeta_completion ? zz.completion : 1.0;
    ratio_.resize(primes_.size());
    for (std::size_t i = 0; i < primes_.size(); ++i) {
        i64 p = primes_[i];
        if (p == 2) {
            base *= k1_factor(p, sp);
            ratio_[i] = 1.0;
        } else {
            cplx k2v = k2_factor(p, sp);
            base *= k2v;
            ratio_[i] = k1_factor(p, sp) / k2v;
        }
        if (zz.can_complete && zeta_completion) comp *= z3_completion_local(p, sp);
    }
    base_ = base * comp;
    std::vector<i64> odd(primes_.begin() + 1, primes_.end());
    auto tail_local = [&](i64 p) {
        cplx f = k2_factor(p, sp);
        if (zz.can_complete && zeta_completion) f *= z3_completion_local(p, sp);
        return f;
    };
    tail_ = std::abs(base_) * tail_from_samples(odd, tail_local);
}

cplx Z3Evaluator::value(i64 a) const {
    if (a < 1 || (a & 1) == 0) throw std::domain_error("Z3Evaluator: a must be odd positive");
    cplx v = base_;
    FactoredInt f = factorize(a);
    for (auto [p, e] : f.factors) {
        (void)e;
        auto it = std::lower_bound(primes_.begin(), primes_.end(), p);
        if (it == primes_.end() || *it != p)
            throw std::domain_error("Z3Evaluator: prime factor of a exceeds prime limit");
        v *= ratio_[static_cast<std::size_t>(it - primes_.begin())];
    }
    return v;
}

// ---------------------------------------------------------------------------
// Z4
// ---------------------------------------------------------------------------

cplx z4_local(i64 p, const ShiftPoint& sp) {
    cplx C = pw(p, 2.0 * sp.alpha + 2.0 * sp.gamma);
    cplx D = pw(p, 2.0 * sp.beta + 2.0 * sp.gamma);
    cplx E = pw(p, sp.alpha + sp.beta + 2.0 * sp.gamma);
    cplx G1 = pw(p, 0.5 + sp.alpha + 2.0 * sp.gamma);
    cplx G2 = pw(p, 0.5 + sp.beta + 2.0 * sp.gamma);
    cplx e2 = (1.0 - E) * (1.0 - E);
    cplx M = (1.0 - C) * (1.0 - D) * e2 * e2 /
             ((1.0 - G1) * (1.0 - G1) * (1.0 - G2) * (1.0 - G2));
    if (p == 2) return k1_factor(2, sp) * M;
    cplx K1 = k1_factor(p, sp), K2 = k2_factor(p, sp);
    return M * (K2 - pw(p, 2.0 - 2.0 * sp.gamma) * K1);
}

EulerProductResult z4_product(const ShiftPoint& sp, i64 P, bool zeta_completion) {
    if (sp.alpha.real() < 0.375 - 1e-12 || sp.beta.real() < 0.375 - 1e-12 ||
        sp.gamma.real() < -0.0625 - 1e-12 || sp.gamma.real() > 0.125 + 1e-12)
        throw RegionError("z4_product: outside Re(a),Re(b) >= 3/8, -1/16 <= Re(g) <= 1/8");
    cplx e = 2.0 - 2.0 * sp.gamma;
    bool complete = zeta_completion && e.real() > 1.02;
    cplx comp = complete ? 1.0 / riemann_zeta(e) : cplx(1.0);
    auto primes = primes_up_to(P);
    cplx val = 1.0;
    for (i64 p : primes) {
        val *= z4_local(p, sp);
        if (complete) comp /= 1.0 - pw(p, e);
    }
    if (complete) val *= comp;  // = prod_{p > P} (1 - p^{-(2-2g)})
    EulerProductResult r{val, P, 0.0};
    std::vector<i64> odd(primes.begin() + 1, primes.end());
    auto tail_local = [&](i64 p) {
        cplx f = z4_local(p, sp);
        if (complete) f /= 1.0 - pw(p, e);
        return f;
    };
    r.tail_bound = std::abs(val) * tail_from_samples(odd, tail_local);
    return r;
}

double f000_value(double phitilde1, i64 P) {
    ShiftPoint half{0.5, 0.5, 0.0};
    double z4 = z4_product(half, P, true).value.real();
    return -0.5 * phitilde1 * z4;  // g(0) = 1
}

}  // namespace qdl
