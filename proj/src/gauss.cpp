#include "qdl/gauss.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

namespace qdl {

namespace {

constexpr double PI = 3.14159265358979323846264338327950288;

GaussForm classify(i64 coeff, i64 radical) {
    if (coeff == 0) return GaussForm::zero;
    if (radical > 1) return GaussForm::sqrt_p_term;
    return coeff > 0 ? GaussForm::phi : GaussForm::neg_p_alpha;
}

}  // namespace

GaussSumValue gauss_direct(i64 k, i64 n) {
    if (n < 1 || (n & 1) == 0) throw std::domain_error("gauss_direct: n must be odd positive");
    if (n > 1000000) throw std::domain_error("gauss_direct: n > 1e6 (use gauss_closed)");

    std::complex<double> sum = 0.0;
    i64 kr = ((k % n) + n) % n;
    for (i64 a = 0; a < n; ++a) {
        int ja = kronecker(a, n);
        if (ja == 0) continue;
        i64 m = (a * kr) % n;
        double ang = 2.0 * PI * static_cast<double>(m) / static_cast<double>(n);
        sum += std::complex<double>(ja * std::cos(ang), ja * std::sin(ang));
    }
    std::complex<double> pref = (kronecker(-1, n) == 1)
                                    ? std::complex<double>(1.0, 0.0)    // (1-i)/2 + (1+i)/2
                                    : std::complex<double>(0.0, -1.0);  // (1-i)/2 - (1+i)/2
    std::complex<double> val = pref * sum;
    if (std::abs(val.imag()) >= 1e-8 * std::max(1.0, std::abs(val.real())))
        throw std::runtime_error("gauss_direct: non-real result (bug)");

    GaussSumValue g;
    g.value = val.real();
    // classify from the rounded exact form: value = c or c*sqrt(p)
    g.coeff = static_cast<i64>(std::llround(val.real()));
    g.radical = 1;
    if (std::abs(val.real() - static_cast<double>(g.coeff)) > 1e-6) {
        g.radical = 0;  // not an integer; direct path leaves radical unknown
        g.coeff = 0;
        g.form = (std::abs(val.real()) < 1e-9) ? GaussForm::zero : GaussForm::sqrt_p_term;
    } else {
        g.form = classify(g.coeff, 1);
    }
    return g;
}

GaussSumValue gauss_prime_power(i64 k, i64 p, int beta, int alpha) {
    if (beta < 1) throw std::domain_error("gauss_prime_power: beta must be >= 1");
    const bool k_zero = alpha < 0;  // alpha = infinity

    GaussSumValue g;
    if (k_zero || beta <= alpha) {
        if (beta & 1) {
            g = {0.0, GaussForm::zero, 0, 1};
        } else {
            i64 phi = p - 1;
            for (int i = 1; i < beta; ++i) phi *= p;
            g = {static_cast<double>(phi), GaussForm::phi, phi, 1};
        }
        return g;
    }
    if (beta == alpha + 1) {
        i64 pa = 1;
        for (int i = 0; i < alpha; ++i) pa *= p;
        if (beta % 2 == 0) {
            g = {static_cast<double>(-pa), GaussForm::neg_p_alpha, -pa, 1};
        } else {
            i64 kp = k;
            for (int i = 0; i < alpha; ++i) kp /= p;
            int sym = kronecker(kp, p);
            i64 c = sym * pa;
            g = {static_cast<double>(c) * std::sqrt(static_cast<double>(p)),
                 c == 0 ? GaussForm::zero : GaussForm::sqrt_p_term, c, c == 0 ? 1 : p};
        }
        return g;
    }
    return {0.0, GaussForm::zero, 0, 1};  // beta >= alpha + 2
}

GaussSumValue gauss_closed(i64 k, i64 n) {
    if (n < 1 || (n & 1) == 0) throw std::domain_error("gauss_closed: n must be odd positive");
    GaussSumValue out{1.0, GaussForm::phi, 1, 1};
    if (n == 1) return out;

    FactoredInt f = factorize(n);
    for (auto [p, beta] : f.factors) {
        int alpha = (k == 0) ? -1 : ord_p(k, p);
        GaussSumValue loc = gauss_prime_power(k, p, beta, alpha);
        if (loc.coeff == 0) return {0.0, GaussForm::zero, 0, 1};
        out.coeff = checked_mul(out.coeff, loc.coeff);
        out.radical = checked_mul(out.radical, loc.radical);  // distinct primes: stays squarefree
    }
    out.value = static_cast<double>(out.coeff) * std::sqrt(static_cast<double>(out.radical));
    out.form = classify(out.coeff, out.radical);
    return out;
}

}  // namespace qdl
