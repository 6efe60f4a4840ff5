#include "swiptfd/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <vector>

namespace swiptfd::specfun {

namespace {

constexpr double kEulerGamma = 0.57721566490153286060651209008240243;
constexpr double kPi = 3.14159265358979323846264338327950288;

// ---------------------------------------------------------------------------
// Bessel K0/K1: ascending series below x = 2 (A&S 9.6.11), Thompson-Barnett
// continued fraction above. K2 follows from the recurrence
// K2 = K0 + (2/x) K1, which is stable upward in the order.
// ---------------------------------------------------------------------------

struct K01 {
    double k0;
    double k1;
};

K01 bessel_k01_series(double x) {
    const double q = 0.25 * x * x;
    const double lxh = std::log(0.5 * x);

    // I0, I1 and the companion sums of A&S 9.6.11 accumulated together.
    double term0 = 1.0;            // q^k / (k!)^2
    double term1 = 1.0;            // q^k / (k! (k+1)!)
    double i0 = term0;
    double i1 = term1;
    double s0 = 0.0;               // sum q^k H_k / (k!)^2, k >= 1
    double s1 = term1 * (-2.0 * kEulerGamma + 1.0);  // sum [psi(k+1)+psi(k+2)] q^k/(k!(k+1)!)
    double hk = 0.0;
    for (int k = 1; k < 64; ++k) {
        term0 *= q / (static_cast<double>(k) * k);
        term1 *= q / (static_cast<double>(k) * (k + 1));
        hk += 1.0 / k;
        const double hk1 = hk + 1.0 / (k + 1);
        i0 += term0;
        i1 += term1;
        s0 += term0 * hk;
        s1 += term1 * (-2.0 * kEulerGamma + hk + hk1);
        if (term0 < 1e-18 * i0 && term1 < 1e-18 * i1) break;
    }
    i1 *= 0.5 * x;

    K01 r;
    r.k0 = -(lxh + kEulerGamma) * i0 + s0;
    r.k1 = 1.0 / x + lxh * i1 - 0.25 * x * s1;
    return r;
}

K01 bessel_k01_cf(double x) {
    // Steed/Thompson-Barnett CF2 at order 0 (as in the standard bessik
    // routine), machine precision for x >= 2.
    const double eps = std::numeric_limits<double>::epsilon();
    double b = 2.0 * (1.0 + x);
    double d = 1.0 / b;
    double h = d;
    double delh = d;
    double q1 = 0.0;
    double q2 = 1.0;
    const double a1 = 0.25;
    double q = a1;
    double c = a1;
    double a = -a1;
    double s = 1.0 + q * delh;
    for (int i = 2; i <= 20000; ++i) {
        a -= 2.0 * (i - 1);
        c = -a * c / i;
        const double qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q += c * qnew;
        b += 2.0;
        d = 1.0 / (b + a * d);
        delh = (b * d - 1.0) * delh;
        h += delh;
        const double dels = q * delh;
        s += dels;
        if (std::fabs(dels / s) <= eps) break;
    }
    h = a1 * h;
    K01 r;
    r.k0 = std::sqrt(kPi / (2.0 * x)) * std::exp(-x) / s;
    r.k1 = r.k0 * (x + 0.5 - h) / x;
    return r;
}

K01 bessel_k01(double x) {
    return (x <= 2.0) ? bessel_k01_series(x) : bessel_k01_cf(x);
}

// ---------------------------------------------------------------------------
// Exponential integral E_n: series for x <= 1, modified Lentz continued
// fraction for x > 1. The scaled variant omits the e^{-x} prefactor.
// ---------------------------------------------------------------------------

double expint_cf_scaled(int n, double x) {
    const double eps = std::numeric_limits<double>::epsilon();
    const double fpmin = std::numeric_limits<double>::min() / eps;
    double b = x + n;
    double c = 1.0 / fpmin;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= 20000; ++i) {
        const double a = -static_cast<double>(i) * (n - 1 + i);
        b += 2.0;
        d = 1.0 / (a * d + b);
        c = b + a / c;
        const double del = c * d;
        h *= del;
        if (std::fabs(del - 1.0) <= eps) return h;
    }
    throw QuadratureError("expint_en: continued fraction failed to converge");
}

double expint_series(int n, double x) {
    const double eps = std::numeric_limits<double>::epsilon();
    const int nm1 = n - 1;
    double psi = -kEulerGamma;
    for (int i = 1; i <= nm1; ++i) psi += 1.0 / i;
    // pow((-x)^nm1 / (nm1)!) term with the log.
    double prefactor = 1.0;
    for (int i = 1; i <= nm1; ++i) prefactor *= -x / i;
    double ans = prefactor * (psi - std::log(x));
    double fact = 1.0;
    for (int i = 0; i <= 400; ++i) {
        if (i > 0) fact *= -x / i;
        if (i != nm1) {
            const double del = -fact / (i - nm1);
            ans += del;
            if (std::fabs(del) < std::fabs(ans) * eps && i > nm1) return ans;
        }
    }
    throw QuadratureError("expint_en: series failed to converge");
}

// ---------------------------------------------------------------------------
// Adaptive Gauss-Kronrod (G7,K15).
// ---------------------------------------------------------------------------

constexpr double kXgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct Segment {
    double a;
    double b;
    double integral;
    double error;
};

struct SegmentWorse {
    bool operator()(const Segment& l, const Segment& r) const { return l.error < r.error; }
};

Segment gk15(const std::function<double(double)>& f, double a, double b) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);

    const double fc = f(center);
    double result_gauss = kWg[3] * fc;
    double result_kronrod = kWgk[7] * fc;
    for (int j = 0; j < 7; ++j) {
        const double dx = half * kXgk[j];
        const double f1 = f(center - dx);
        const double f2 = f(center + dx);
        result_kronrod += kWgk[j] * (f1 + f2);
        if (j % 2 == 1) result_gauss += kWg[j / 2] * (f1 + f2);
    }
    Segment s;
    s.a = a;
    s.b = b;
    s.integral = result_kronrod * half;
    s.error = std::fabs((result_kronrod - result_gauss) * half);
    if (!std::isfinite(s.integral)) {
        throw QuadratureError("integrand produced a non-finite value on [" +
                              std::to_string(a) + ", " + std::to_string(b) + "]");
    }
    return s;
}

double adaptive_gk(const std::function<double(double)>& f, double a, double b,
                   const QuadratureSpec& quad) {
    quad.validate();
    std::priority_queue<Segment, std::vector<Segment>, SegmentWorse> heap;
    Segment whole = gk15(f, a, b);
    double total = whole.integral;
    double err = whole.error;
    heap.push(whole);

    const double min_width = std::fabs(b - a) * 1e-14;
    int used = 1;
    while (err > std::max(quad.abs_tol, quad.rel_tol * std::fabs(total))) {
        if (used >= quad.max_subdivisions) {
            throw QuadratureError("quadrature failed to converge after " +
                                  std::to_string(used) + " subdivisions (error " +
                                  std::to_string(err) + ")");
        }
        Segment worst = heap.top();
        if (worst.b - worst.a <= min_width) break;  // round-off floor
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        Segment left = gk15(f, worst.a, mid);
        Segment right = gk15(f, mid, worst.b);
        total += left.integral + right.integral - worst.integral;
        err += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        ++used;
    }
    return total;
}

}  // namespace

void QuadratureSpec::validate() const {
    if (!(rel_tol > 0.0) || !(abs_tol > 0.0) || max_subdivisions < 1) {
        throw std::invalid_argument("QuadratureSpec: tolerances must be positive and "
                                    "max_subdivisions >= 1");
    }
}

double bessel_k(int order, double x) {
    if (order < 0 || order > 2) {
        throw std::domain_error("bessel_k: order must be 0, 1 or 2");
    }
    if (!(x > 0.0)) {
        throw std::domain_error("bessel_k: x must be positive");
    }
    if (x > 740.0) return 0.0;  // e^{-x} underflow
    const K01 k01 = bessel_k01(x);
    switch (order) {
        case 0: return k01.k0;
        case 1: return k01.k1;
        default: return k01.k0 + 2.0 / x * k01.k1;
    }
}

double lambert_w0(double x) {
    constexpr double kNegInvE = -0.36787944117144233;  // nearest double below -1/e
    if (x < kNegInvE) {
        throw std::domain_error("lambert_w0: x below -1/e (principal branch)");
    }
    if (x == 0.0) return 0.0;

    // Branch-point series in p = sqrt(2(e x + 1)).
    const double p2 = std::max(0.0, 2.0 * (std::exp(1.0) * x + 1.0));
    const double p = std::sqrt(p2);
    double w;
    if (p < 1e-4) {
        return -1.0 + p * (1.0 + p * (-1.0 / 3.0 + p * (11.0 / 72.0)));
    } else if (x < -0.25) {
        w = -1.0 + p * (1.0 + p * (-1.0 / 3.0 + p * (11.0 / 72.0 - p * 43.0 / 540.0)));
    } else if (x < std::exp(1.0)) {
        w = std::log1p(x) * 0.75;  // crude but inside the Halley basin
    } else {
        const double l1 = std::log(x);
        const double l2 = std::log(l1);
        w = l1 - l2 + l2 / l1 + l2 * (l2 - 2.0) / (2.0 * l1 * l1);
    }

    for (int it = 0; it < 8; ++it) {
        const double ew = std::exp(w);
        const double wew = w * ew;
        const double r = wew - x;
        if (std::fabs(r) <= 1e-13 * std::max(1.0, std::fabs(x))) break;
        const double wp1 = w + 1.0;
        const double delta = r / (ew * wp1 - 0.5 * (w + 2.0) * r / wp1);
        w -= delta;
        if (std::fabs(delta) <= 4.0 * std::numeric_limits<double>::epsilon() *
                                    (1.0 + std::fabs(w))) {
            break;
        }
    }
    return w;
}

double expint_en(int n, double x) {
    if (n < 1) throw std::domain_error("expint_en: n must be >= 1");
    if (!(x > 0.0)) throw std::domain_error("expint_en: x must be positive");
    if (x > 1.0) {
        const double ex = std::exp(-x);
        return ex == 0.0 ? 0.0 : ex * expint_cf_scaled(n, x);
    }
    return expint_series(n, x);
}

double expint_en_scaled(int n, double x) {
    if (n < 1) throw std::domain_error("expint_en: n must be >= 1");
    if (!(x > 0.0)) throw std::domain_error("expint_en: x must be positive");
    if (x > 1.0) return expint_cf_scaled(n, x);
    return std::exp(x) * expint_series(n, x);
}

double digamma_small_int(int n) {
    if (n == 1) return -kEulerGamma;
    if (n == 2) return 1.0 - kEulerGamma;
    throw std::domain_error("digamma_small_int: n must be 1 or 2");
}

double integrate_finite(const std::function<double(double)>& f, double a, double b,
                        const QuadratureSpec& quad) {
    if (!(a < b)) throw std::invalid_argument("integrate_finite: requires a < b");
    return adaptive_gk(f, a, b, quad);
}

double integrate_semi_infinite(const std::function<double(double)>& f,
                               const QuadratureSpec& quad) {
    auto mapped = [&f](double v) {
        const double om = 1.0 - v;
        const double t = v / om;
        return f(t) / (om * om);
    };
    return adaptive_gk(mapped, 0.0, 1.0, quad);
}

}  // namespace swiptfd::specfun
