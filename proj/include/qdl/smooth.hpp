#pragma once

// Compactly supported C-infinity test functions Phi built from the
// exp(-1/x) smooth step, their Mellin / Fourier-type transforms, derivative
// norms Phi_(nu), and the cos/sin-Mellin contour identity check.

#include <array>
#include <complex>
#include <functional>

#include "qdl/special.hpp"

namespace qdl {

// Truncated Taylor (jet) arithmetic: exact derivatives of the glue function
// without finite-difference noise.  ORDER coefficients, f^{(k)} = k! c_k.
template <int ORDER = 12>
struct Jet {
    std::array<double, ORDER + 1> c{};

    static Jet variable(double x0) {
        Jet j;
        j.c[0] = x0;
        if constexpr (ORDER >= 1) j.c[1] = 1.0;
        return j;
    }
    static Jet constant(double v) {
        Jet j;
        j.c[0] = v;
        return j;
    }
    double deriv(int k) const;  // k-th derivative value

    Jet operator+(const Jet& o) const;
    Jet operator-(const Jet& o) const;
    Jet operator*(const Jet& o) const;
    Jet recip() const;
    Jet exp() const;
};

enum class ProfileKind {
    reference,      // supported on [1/2, 5/2], peak 1 at t = 3/2
    plateau_inner,  // = 1 on (1 + 1/Z, 2 - 1/Z), supp in [1, 2]
    plateau_outer,  // = 1 on [1, 2], supp in [1 - 1/Z, 2 + 1/Z]
};

struct BumpProfile {
    ProfileKind kind = ProfileKind::reference;
    double Z = 2.0;  // transition sharpness; unused for the reference profile

    double support_lo() const;
    double support_hi() const;
};

// Phi(t), in [0, 1]; exact 0 outside the support, exact 1 on the plateau.
double phi_eval(const BumpProfile& p, double t);

// nu-th derivative of Phi at t (jet evaluation), nu <= 12.
double phi_deriv(const BumpProfile& p, double t, int nu);

struct TransformValue {
    cplx value = 0.0;
    double est_error = 0.0;
};

struct QuadratureError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Adaptive Gauss-Kronrod (G7, K15) over [a, b], absolute target.
TransformValue integrate(const std::function<cplx(double)>& f, double a, double b,
                         double abs_tol = 1e-11, int max_depth = 48);
TransformValue integrate_real(const std::function<double(double)>& f, double a, double b,
                              double abs_tol = 1e-11, int max_depth = 48);

// Mellin transform  Phi~(s) = Int_0^inf Phi(x) x^{s-1} dx  (entire in s).
TransformValue mellin_tilde(const BumpProfile& p, cplx s);

// check-Phi(s) = Int Phi(t) t^{-s} dt = Phi~(1 - s).
TransformValue phi_check(const BumpProfile& p, cplx s);

// Phi^(y) = Int (cos(2 pi x y) + sin(2 pi x y)) Phi(x) dx.
// Filon quadrature above |y| = 20, adaptive Gauss-Kronrod below.
TransformValue fourier_hat(const BumpProfile& p, double y);

// Filon cos/sin transforms on the support (independent oscillatory route,
// also used as the cross-check implementation).
double filon_cos(const BumpProfile& p, double y, int panels = 8192);
double filon_sin(const BumpProfile& p, double y, int panels = 8192);

// Phi_(nu) = max_{0<=j<=nu} Int |Phi^{(j)}|.
double phi_norm(const BumpProfile& p, int nu);

struct CosMellinResidual {
    double cos_residual;
    double sin_residual;
};

// Contour identity:  Int_0^inf f(x) cos(2 pi x y) dx
//   = (1/2 pi i) Int_(1/2) f~(1-s) Gamma(s) cos(sgn(y) pi s / 2) (2 pi |y|)^{-s} ds,
// and the sin variant.  Returns |LHS - RHS| for both, contour truncated at
// +-i half_height.
CosMellinResidual check_cos_mellin(const BumpProfile& p, double y, const QuadratureParams& q);

}  // namespace qdl
