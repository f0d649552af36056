#include "qdl/characters.hpp"

#include <cmath>
#include <stdexcept>

namespace qdl {

namespace {
constexpr double PI = 3.14159265358979323846264338327950288;
}

QuadChar::QuadChar(i64 d_) : d(d_), modulus(8 * d_) {
    if (d < 1 || (d & 1) == 0) throw std::domain_error("QuadChar: d must be odd positive");
    FactoredInt f = factorize(d);
    for (auto [p, e] : f.factors)
        if (e > 1) throw std::domain_error("QuadChar: d must be square-free");
}

int chi(const QuadChar& q, i64 n) {
    if (n < 1) throw std::domain_error("chi: n must be >= 1");
    return kronecker(q.modulus, n);
}

cplx lvalue_oracle(cplx s, const QuadChar& q) {
    const i64 m = q.modulus;
    if (s == cplx(1.0, 0.0)) {
        // sum chi(a) = 0, so L(1, chi) = -(1/m) sum chi(a) psi(a/m).
        double sum = 0.0;
        for (i64 a = 1; a <= m; ++a) {
            int c = kronecker(m, a);
            if (c) sum += c * digamma(static_cast<double>(a) / m);
        }
        return cplx(-sum / m, 0.0);
    }
    cplx sum = 0.0;
    for (i64 a = 1; a <= m; ++a) {
        int c = kronecker(m, a);
        if (c) sum += static_cast<double>(c) * hurwitz_zeta(s, static_cast<double>(a) / m);
    }
    return std::exp(-s * std::log(static_cast<double>(m))) * sum;
}

double afe_tail_bound(double t, double N) {
    return OmegaEnvelope::instance().afe_tail(t, N);
}

AfeResult afe_A(double t, const QuadChar& q, double tol, i64 term_cap) {
    if (!(t > 0.0)) throw std::domain_error("afe_A: t must be > 0");

    // Smallest N with certified tail < tol (monotone in N: double then bisect).
    i64 lo = 16, hi = 16;
    while (afe_tail_bound(t, static_cast<double>(hi)) >= tol) {
        lo = hi;
        hi *= 2;
        if (hi > term_cap) throw ConvergenceError("afe_A: truncation exceeds term cap");
    }
    while (lo + 1 < hi) {
        i64 mid = lo + (hi - lo) / 2;
        if (afe_tail_bound(t, static_cast<double>(mid)) < tol) hi = mid;
        else lo = mid;
    }
    const i64 N = hi;

    const OmegaTable& omega = OmegaTable::instance();
    const double lam = PI / t;
    // tau(n) stream from a linear sieve; chi_{8d}(n) = 0 for even n, so the
    // sum runs over odd n only.
    MultTables tab(N);
    double sum = 0.0, comp = 0.0;  // Kahan
    for (i64 n = 1; n <= N; n += 2) {
        double xi = lam * static_cast<double>(n);
        if (xi >= omega.xi_hi()) break;
        int c = kronecker(q.modulus, n);
        if (!c) continue;
        double term = static_cast<double>(c) * static_cast<double>(tab.tau(n)) *
                      omega(xi) / std::sqrt(static_cast<double>(n));
        double y = term - comp;
        double t2 = sum + y;
        comp = (t2 - sum) - y;
        sum = t2;
    }

    AfeResult r;
    r.d = q.d;
    r.truncation = N;
    r.A_value = 2.0 * sum;
    r.tail_bound = afe_tail_bound(t, static_cast<double>(N));
    return r;
}

double a_of_d(const QuadChar& q, double tol) {
    return 0.5 * afe_A(static_cast<double>(q.modulus), q, tol).A_value;
}

double b_u(const QuadChar& q, double U, double tol) {
    double L = lvalue_oracle(cplx(0.5, 0.0), q).real();
    return L * L - afe_A(U, q, tol).A_value;
}

}  // namespace qdl
