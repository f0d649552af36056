#include "qdl/special.hpp"

#include <cmath>
#include <mutex>

namespace qdl {

namespace {

constexpr double PI = 3.14159265358979323846264338327950288;
constexpr double LOG_PI = 1.14472988584940017414342735135305871;

// Lanczos g = 607/128, n = 15 (Boost's coefficient set).
constexpr double LANCZOS_G = 607.0 / 128.0;
constexpr double LANCZOS_C[15] = {
    0.99999999999999709182,
    57.156235665862923517,
    -59.597960355475491248,
    14.136097974741747174,
    -0.49191381609762019978,
    0.33994649984811888699e-4,
    0.46523628927048575665e-4,
    -0.98374475304879564677e-4,
    0.15808870322491248884e-3,
    -0.21026444172410488319e-3,
    0.21743961811521264320e-3,
    -0.16431810653676389022e-3,
    0.84418223983852743293e-4,
    -0.26190838401581408670e-4,
    0.36899182659531622704e-5,
};

// log Gamma for Re(s) >= 0.5 by Lanczos.
cplx log_gamma_right(cplx s) {
    cplx z = s - 1.0;
    cplx sum = LANCZOS_C[0];
    for (int k = 1; k < 15; ++k) sum += LANCZOS_C[k] / (z + static_cast<double>(k));
    cplx base = z + LANCZOS_G + 0.5;
    return 0.5 * std::log(2.0 * PI) + (z + 0.5) * std::log(base) - base + std::log(sum);
}

// log sin(pi z), continued analytically through the upper half-plane so that
// the reflection formula yields the principal branch of log Gamma.
cplx log_sin_pi(cplx z) {
    if (z.imag() >= 0.0) {
        // sin(pi z) = (i/2) e^{-i pi z} (1 - e^{2 pi i z}), |e^{2 pi i z}| <= 1
        cplx iz(0.0, 1.0);
        return std::log(iz * 0.5) - iz * PI * z + std::log(1.0 - std::exp(2.0 * PI * iz * z));
    }
    return std::conj(log_sin_pi(std::conj(z)));
}

}  // namespace

cplx log_gamma(cplx s) {
    if (s.imag() == 0.0 && s.real() <= 0.0 && s.real() == std::floor(s.real()))
        throw PoleError("log_gamma: pole at non-positive integer");
    if (s.real() >= 0.5) return log_gamma_right(s);
    // Reflection: log Gamma(s) = log pi - log sin(pi s) - log Gamma(1 - s).
    return LOG_PI - log_sin_pi(s) - log_gamma_right(1.0 - s);
}

cplx cgamma(cplx s) { return std::exp(log_gamma(s)); }

double digamma(double x) {
    if (x <= 0.0) throw PoleError("digamma: x must be > 0");
    double r = 0.0;
    while (x < 10.0) { r -= 1.0 / x; x += 1.0; }
    // Asymptotic series
    double inv = 1.0 / x, inv2 = inv * inv;
    double s = std::log(x) - 0.5 * inv;
    // B_2/2 x^-2, B_4/4 x^-4, ...
    static const double c[7] = {1.0 / 12, -1.0 / 120, 1.0 / 252, -1.0 / 240,
                                1.0 / 132, -691.0 / 32760, 1.0 / 12};
    double t = inv2;
    for (int k = 0; k < 7; ++k) { s -= c[k] * t; t *= inv2; }
    return s + r;
}

static const double LOG_GAMMA_QUARTER = 1.28802252469807745737061044021627942;  // log Gamma(1/4)

cplx g_factor(cplx s) {
    cplx w = s * 0.5 + 0.25;
    if (w.imag() == 0.0 && w.real() <= 0.0 && w.real() == std::floor(w.real()))
        throw PoleError("g_factor: pole at s = -1/2 - 2m");
    return std::exp(-s * LOG_PI + 2.0 * (log_gamma(w) - LOG_GAMMA_QUARTER));
}

namespace {

// B_2, B_4, ..., B_30
constexpr double BERNOULLI[15] = {
    1.0 / 6, -1.0 / 30, 1.0 / 42, -1.0 / 30, 5.0 / 66, -691.0 / 2730, 7.0 / 6,
    -3617.0 / 510, 43867.0 / 798, -174611.0 / 330, 854513.0 / 138,
    -236364091.0 / 2730, 8553103.0 / 6, -23749461029.0 / 870,
    8615841276005.0 / 14322,
};

}  // namespace

cplx hurwitz_zeta(cplx s, double a) {
    if (a <= 0.0 || a > 1.0) throw std::domain_error("hurwitz_zeta: a must be in (0, 1]");
    if (s == cplx(1.0, 0.0)) throw PoleError("hurwitz_zeta: pole at s = 1");

    // Euler-Maclaurin: sum to N-1, then integral + half term + Bernoulli tail.
    const int M = 14;
    double abs_s = std::abs(s);
    int N = static_cast<int>(std::max(30.0, std::ceil(1.5 * abs_s)));

    cplx sum = 0.0;
    for (int k = 0; k < N; ++k) sum += std::exp(-s * std::log(k + a));

    double x = N + a;
    double lx = std::log(x);
    cplx xs = std::exp(-s * lx);           // x^{-s}
    sum += xs * x / (s - 1.0);             // x^{1-s} / (s-1)
    sum += 0.5 * xs;

    // sum_{j>=1} B_{2j}/(2j)! * s(s+1)...(s+2j-2) * x^{-s-2j+1}
    cplx rising = s;                        // (s)_{2j-1}
    cplx xp = xs / x;                       // x^{-s-2j+1}, starting at x^{-s-1}
    double fact = 2.0;                      // (2j)!
    for (int j = 1; j <= M; ++j) {
        sum += BERNOULLI[j - 1] / fact * rising * xp;
        rising *= (s + static_cast<double>(2 * j - 1)) * (s + static_cast<double>(2 * j));
        xp /= x * x;
        fact *= (2.0 * j + 1.0) * (2.0 * j + 2.0);
    }
    return sum;
}

cplx riemann_zeta(cplx s) { return hurwitz_zeta(s, 1.0); }

namespace {

// pi^s g(s) xi^{-s} / s = exp(2 log Gamma(s/2+1/4) - 2 log Gamma(1/4) - s log xi) / s
inline cplx omega_integrand(cplx s, double log_xi) {
    return std::exp(2.0 * (log_gamma(s * 0.5 + 0.25) - LOG_GAMMA_QUARTER) - s * log_xi) / s;
}

}  // namespace

double omega_weight(double xi, const QuadratureParams& q) {
    if (!(xi > 0.0)) throw std::domain_error("omega_weight: xi must be > 0");
    if (!(q.line_re > 0.0)) throw std::domain_error("omega_weight: line_re must be > 0");
    if (!(q.step > 0.0) || !(q.half_height > 0.0))
        throw std::domain_error("omega_weight: bad quadrature params");

    const double log_xi = std::log(xi);
    const int M = static_cast<int>(std::llround(q.half_height / q.step));
    cplx sum = 0.0;
    for (int j = -M; j <= M; ++j) {
        cplx s(q.line_re, j * q.step);
        cplx f = omega_integrand(s, log_xi);
        sum += (j == -M || j == M) ? 0.5 * f : f;  // trapezoid ends
    }
    cplx raw = sum * (q.step / (2.0 * PI));

    double edge = std::abs(omega_integrand(cplx(q.line_re, q.half_height), log_xi));
    double tail_est = edge * (2.0 / PI) / (2.0 * PI) * 2.0;
    if (tail_est > 1e-12 * std::max(1.0, std::abs(raw.real())))
        throw ConvergenceError("omega_weight: contour truncated too early");

    if (std::abs(raw.imag()) > 1e-10 * std::max(1.0, std::abs(raw.real())))
        throw ConvergenceError("omega_weight: imaginary residue exceeds tolerance");
    return raw.real();
}

double omega_weight_auto(double xi) {
    QuadratureParams q;
    if (xi < 1e-4) {
        q = {0.25, 80.0, 0.01};
    } else if (xi <= 4.0) {
        q = {1.0, 60.0, 0.05};
    } else {
        q = {2.0 * xi, std::max(60.0, 12.0 * std::sqrt(xi)), 0.05};
    }
    return omega_weight(xi, q);
}

OmegaTable::OmegaTable(double xi_lo, double xi_hi, double log_step)
    : xi_lo_(xi_lo), xi_hi_(xi_hi), h_(log_step) {
    u0_ = std::log(xi_lo);
    u_hi_ = std::log(xi_hi);
    inv_h_ = 1.0 / h_;
    const int n = static_cast<int>(std::ceil((std::log(xi_hi) - u0_) / h_)) + 3;
    val_.resize(n);

    // Group grid points by quadrature regime so contour node weights
    // W_j = (h/2pi) Gamma-part(s_j)/s_j are reused across the group;
    // xi enters as exp(-s_j ln xi) only.
    auto fill = [&](const QuadratureParams& q, double lo, double hi) {
        const int M = static_cast<int>(std::llround(q.half_height / q.step));
        std::vector<cplx> W(M + 1);
        std::vector<double> t(M + 1);
        for (int j = 0; j <= M; ++j) {
            cplx s(q.line_re, j * q.step);
            t[j] = j * q.step;
            W[j] = std::exp(2.0 * (log_gamma(s * 0.5 + 0.25) - LOG_GAMMA_QUARTER)) / s;
            if (j == M) W[j] *= 0.5;
        }
        for (int i = 0; i < static_cast<int>(val_.size()); ++i) {
            double u = u0_ + i * h_;
            double xi = std::exp(u);
            if (xi < lo || xi >= hi) continue;
            // sum over the full contour = W_0 xi^{-c} + 2 Re sum_{j>0} W_j xi^{-s_j}
            double xic = std::exp(-q.line_re * u);
            cplx rot = std::exp(cplx(0.0, -q.step * u));
            cplx ph = rot;
            cplx acc = 0.0;
            for (int j = 1; j <= M; ++j) {
                acc += W[j] * ph;
                ph *= rot;
                if ((j & 63) == 0) ph = std::exp(cplx(0.0, -(j + 1) * q.step * u));
            }
            val_[i] = (W[0].real() + 2.0 * acc.real()) * xic * q.step / (2.0 * PI);
        }
    };
    fill({0.25, 80.0, 0.01}, 0.0, 1e-4);
    fill({1.0, 60.0, 0.05}, 1e-4, 4.0);
    // Large xi: saddle abscissa grows with xi; split into octaves.
    for (double lo = 4.0; lo < xi_hi * 1.01; lo *= 2.0) {
        double hi = lo * 2.0;
        double mid = 1.5 * lo;
        fill({2.0 * mid, std::max(60.0, 12.0 * std::sqrt(mid)), 0.05}, lo, hi);
    }
}

double OmegaTable::operator()(double xi) const {
    if (!(xi > 0.0)) throw std::domain_error("OmegaTable: xi must be > 0");
    if (xi >= xi_hi_) return 0.0;
    if (xi < xi_lo_) return omega_weight_auto(xi);
    return eval_log(std::log(xi));
}

double OmegaTable::eval_log(double u_abs) const {
    if (u_abs >= u_hi_) return 0.0;
    if (u_abs < u0_) return omega_weight_auto(std::exp(u_abs));
    double u = (u_abs - u0_) * inv_h_;
    int i = static_cast<int>(u);
    double f = u - i;
    int n = static_cast<int>(val_.size());
    int i0 = (i > 0) ? i - 1 : 0;
    int i2 = (i + 1 < n) ? i + 1 : n - 1;
    int i3 = (i + 2 < n) ? i + 2 : n - 1;
    double p0 = val_[i0], p1 = val_[i], p2 = val_[i2], p3 = val_[i3];
    // Catmull-Rom
    return p1 + 0.5 * f * (p2 - p0 + f * (2.0 * p0 - 5.0 * p1 + 4.0 * p2 - p3 +
                                          f * (3.0 * (p1 - p2) + p3 - p0)));
}

const OmegaTable& OmegaTable::instance() {
    static OmegaTable table;
    return table;
}

double OmegaEnvelope::operator()(double xi) const { return C * std::exp(-c * std::sqrt(xi)); }

double OmegaEnvelope::afe_tail(double t, double N) const {
    // tau(n) <= 2 sqrt(n)  =>  tail <= 2C sum_{n>N} e^{-c sqrt(n pi / t)}
    //                       <= 2C (t/pi) (2/c^2) (1 + c sqrt(N pi/t)) e^{-c sqrt(N pi/t)}
    double r = c * std::sqrt(N * PI / t);
    return 2.0 * C * (t / PI) * (2.0 / (c * c)) * (1.0 + r) * std::exp(-r);
}

const OmegaEnvelope& OmegaEnvelope::instance() {
    static OmegaEnvelope env = [] {
        OmegaEnvelope e;
        e.c = 8.0;
        const OmegaTable& tab = OmegaTable::instance();
        double C = 0.0;
        for (double xi = 1e-3; xi < 45.0; xi *= 1.05)
            C = std::max(C, std::abs(tab(xi)) * std::exp(e.c * std::sqrt(xi)));
        e.C = 2.0 * C;
        return e;
    }();
    return env;
}

}  // namespace qdl
