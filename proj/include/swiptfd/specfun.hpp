// Self-contained special functions and adaptive quadrature used by the
// analytical link formulas. Everything here is a pure function; all routines
// are safe to call concurrently.
#pragma once

#include <functional>
#include <stdexcept>
#include <string>

namespace swiptfd::specfun {

// Tolerances for the adaptive Gauss-Kronrod integrators. An integral is
// accepted once the accumulated error estimate drops below
// max(abs_tol, rel_tol * |integral|).
struct QuadratureSpec {
    double rel_tol = 1e-8;
    double abs_tol = 1e-12;
    int max_subdivisions = 2000;

    void validate() const;
};

// Thrown when an adaptive integration exhausts max_subdivisions without
// meeting its tolerance, or when the integrand produces a non-finite value.
class QuadratureError : public std::runtime_error {
public:
    explicit QuadratureError(const std::string& what) : std::runtime_error(what) {}
};

// Modified Bessel function of the second kind, K_order(x), order in {0,1,2}.
// Relative error <= 1e-10 for x in [1e-8, 700]; returns 0 once e^{-x}
// underflows. Throws std::domain_error for x <= 0 or unsupported order.
double bessel_k(int order, double x);

// Principal branch of the Lambert W function: w with w*exp(w) = x, for
// x >= -1/e. Residual |w e^w - x| <= 1e-12 * max(1, |x|).
double lambert_w0(double x);

// Exponential integral E_n(x) = int_1^inf e^{-x t} / t^n dt, n >= 1, x > 0.
double expint_en(int n, double x);

// e^x * E_n(x), stable for large x (where E_n itself underflows).
double expint_en_scaled(int n, double x);

// psi(1) = -gamma, psi(2) = 1 - gamma; exact to machine precision.
double digamma_small_int(int n);

// Adaptive Gauss-Kronrod (G7,K15) integration of f over the finite interval
// (a, b). Endpoint singularities are tolerated as long as they are
// integrable (the Kronrod nodes are interior).
double integrate_finite(const std::function<double(double)>& f, double a, double b,
                        const QuadratureSpec& quad = {});

// Integral of f over (0, inf) via the map t = v/(1-v) onto (0,1) followed by
// adaptive subdivision. Suited to integrands decaying at least like 1/t^2.
double integrate_semi_infinite(const std::function<double(double)>& f,
                               const QuadratureSpec& quad = {});

}  // namespace swiptfd::specfun
