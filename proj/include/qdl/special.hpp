#pragma once

// Complex log-gamma, Hurwitz/Riemann zeta, the gamma factor
// g(s) = pi^{-s} (Gamma(s/2 + 1/4) / Gamma(1/4))^2, and the smoothing weight
//   omega(xi) = (1/2 pi i) Int_(c) pi^s g(s) xi^{-s} ds / s,  c > 0,
// evaluated by truncated vertical-line quadrature.

#include <complex>
#include <stdexcept>
#include <vector>

namespace qdl {

using cplx = std::complex<double>;

struct PoleError : std::domain_error {
    using std::domain_error::domain_error;
};
struct ConvergenceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Principal branch (real on the positive axis, analytic off (-inf, 0]).
// Lanczos rational approximation, reflection for Re(s) < 1/2.
cplx log_gamma(cplx s);

// exp(log_gamma)
cplx cgamma(cplx s);

// Real digamma for x > 0 (asymptotic series + upward recurrence).
double digamma(double x);

// g(s); throws PoleError at s = -1/2 - 2m.
cplx g_factor(cplx s);

// Hurwitz zeta, Euler-Maclaurin.  a in (0, 1], s != 1.
cplx hurwitz_zeta(cplx s, double a);

cplx riemann_zeta(cplx s);

// Vertical-contour quadrature parameters for omega (and the cos/sin-Mellin checks).
struct QuadratureParams {
    double line_re = 1.0;  // abscissa c
    double half_height = 60.0;
    double step = 0.05;
};

// omega(xi) by direct quadrature at the given contour.  The raw quadrature is
// complex; |Im| <= 1e-10 * max(1, |Re|) is asserted, then discarded.  Throws
// ConvergenceError when the integrand at +-iT is not yet negligible.
double omega_weight(double xi, const QuadratureParams& q = {});

// Same, with a contour chosen for the magnitude of xi (small xi needs a low
// abscissa and a finer step, large xi a saddle-height abscissa).
double omega_weight_auto(double xi);

// omega memoized on a geometric grid with cubic interpolation; immutable
// after construction and shareable across threads.
class OmegaTable {
public:
    OmegaTable(double xi_lo = 1e-12, double xi_hi = 60.0, double log_step = 2e-3);

    // Interpolated value; exact 0 above xi_hi (omega there is < 1e-50),
    // direct quadrature below xi_lo.
    double operator()(double xi) const;

    // Same value addressed by u = log(xi); the sweep's hot path (the caller
    // streams log n + log(pi/t) and skips the exp/log round trip).
    double eval_log(double u) const;
    double log_hi() const { return u_hi_; }

    double xi_lo() const { return xi_lo_; }
    double xi_hi() const { return xi_hi_; }

    // Shared instance built on first use.
    static const OmegaTable& instance();

private:
    double xi_lo_, xi_hi_, u0_, u_hi_, inv_h_, h_;
    std::vector<double> val_;
};

// Envelope omega(xi) <= C exp(-c sqrt(xi)), calibrated once from the table.
struct OmegaEnvelope {
    double C = 0, c = 0;
    double operator()(double xi) const;
    // Bound on sum_{n > N} tau(n)/sqrt(n) * omega(n pi / t), using tau(n) <= 2 sqrt(n).
    double afe_tail(double t, double N) const;
    static const OmegaEnvelope& instance();
};

}  // namespace qdl
