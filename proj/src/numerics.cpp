#include "cgmldp/numerics.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>

namespace cgmldp::numerics {

namespace {

// 15-point Gauss-Legendre nodes/weights on [-1, 1] (positive half; symmetric).
constexpr int kGaussN = 15;
constexpr double kGaussX[8] = {
    0.0,
    0.2011940939974345,
    0.3941513470775634,
    0.5709721726085388,
    0.7244177313601700,
    0.8482065834104272,
    0.9372733924007059,
    0.9879925180204854,
};
constexpr double kGaussW[8] = {
    0.2025782419255613,
    0.1984314853271116,
    0.1861610000155622,
    0.1662692058169939,
    0.1395706779261543,
    0.1071592204671719,
    0.0703660474881081,
    0.0307532419961173,
};

double gauss15(const std::function<double(double)>& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    double sum = kGaussW[0] * f(c);
    for (int i = 1; i < 8; ++i) {
        const double dx = h * kGaussX[i];
        sum += kGaussW[i] * (f(c - dx) + f(c + dx));
    }
    return sum * h;
}

double integrate_rec(const std::function<double(double)>& f, double a, double b, double whole,
                     double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double left = gauss15(f, a, m);
    const double right = gauss15(f, m, b);
    const double delta = left + right - whole;
    // Relative floor keeps near-singular integrands (whose magnitude dwarfs
    // the absolute tolerance) from splitting past machine precision.
    if (depth >= 48 || std::abs(delta) <= tol + 1e-13 * std::abs(left + right))
        return left + right;
    return integrate_rec(f, a, m, left, 0.5 * tol, depth + 1) +
           integrate_rec(f, m, b, right, 0.5 * tol, depth + 1);
}

constexpr double kGolden = 0.3819660112501051;  // (3 - sqrt(5)) / 2

}  // namespace

double integrate(const std::function<double(double)>& f, double lo, double hi, double abs_tol) {
    if (!(hi > lo)) return 0.0;
    return integrate_rec(f, lo, hi, gauss15(f, lo, hi), abs_tol, 0);
}

MinResult min_convex(const std::function<double(double)>& f, double lo, double hi, double x_tol) {
    assert(hi >= lo);
    double flo = f(lo);
    double fhi = f(hi);
    double a = lo, b = hi;
    if (std::isinf(flo)) a = std::nextafter(lo, hi);
    if (std::isinf(fhi)) b = std::nextafter(hi, lo);
    if (b <= a) {
        // Degenerate interval after the nudges.
        return flo <= fhi ? MinResult{lo, flo} : MinResult{hi, fhi};
    }

    // Brent's method without derivatives. Parabolic steps are skipped while
    // any cached value is infinite.
    double x = a + kGolden * (b - a), w = x, v = x;
    double fx = f(x), fw = fx, fv = fx;
    double d = 0.0, e = 0.0;
    for (int iter = 0; iter < 200; ++iter) {
        const double m = 0.5 * (a + b);
        const double tol1 = x_tol * std::abs(x) + 1e-18;
        const double tol2 = 2.0 * tol1;
        if (std::abs(x - m) <= tol2 - 0.5 * (b - a)) break;
        bool golden = true;
        if (std::abs(e) > tol1 && std::isfinite(fx) && std::isfinite(fw) && std::isfinite(fv)) {
            const double r = (x - w) * (fx - fv);
            double q = (x - v) * (fx - fw);
            double p = (x - v) * q - (x - w) * r;
            q = 2.0 * (q - r);
            if (q > 0.0) p = -p;
            q = std::abs(q);
            const double e_old = e;
            e = d;
            if (std::abs(p) < std::abs(0.5 * q * e_old) && p > q * (a - x) && p < q * (b - x)) {
                d = p / q;
                const double u = x + d;
                if (u - a < tol2 || b - u < tol2) d = (x < m) ? tol1 : -tol1;
                golden = false;
            }
        }
        if (golden) {
            e = (x < m) ? b - x : a - x;
            d = kGolden * e;
        }
        const double u = (std::abs(d) >= tol1) ? x + d : x + (d > 0 ? tol1 : -tol1);
        const double fu = f(u);
        if (fu <= fx) {
            if (u < x) b = x; else a = x;
            v = w; fv = fw;
            w = x; fw = fx;
            x = u; fx = fu;
        } else {
            if (u < x) a = u; else b = u;
            if (fu <= fw || w == x) {
                v = w; fv = fw;
                w = u; fw = fu;
            } else if (fu <= fv || v == x || v == w) {
                v = u; fv = fu;
            }
        }
    }

    MinResult best{x, fx};
    if (flo < best.value) best = {lo, flo};
    if (fhi < best.value) best = {hi, fhi};
    return best;
}

MinResult min_convex_deriv(const std::function<double(double)>& f,
                           const std::function<double(double)>& df, double lo, double hi,
                           double x_tol) {
    MinResult coarse = min_convex(f, lo, hi, std::max(x_tol, 1e-9));
    if (coarse.x == lo || coarse.x == hi) return coarse;

    // Bracket the derivative's sign change around the coarse argmin.
    double w = std::max(1e-6 * (hi - lo), 16.0 * std::max(x_tol, 1e-9) * (1.0 + std::abs(coarse.x)));
    double a = std::max(lo, coarse.x - w);
    double b = std::min(hi, coarse.x + w);
    for (int grow = 0; grow < 60 && df(a) > 0.0 && a > lo; ++grow) a = std::max(lo, a - (b - a));
    for (int grow = 0; grow < 60 && df(b) < 0.0 && b < hi; ++grow) b = std::min(hi, b + (b - a));
    if (df(a) > 0.0 || df(b) < 0.0) return coarse;  // minimum effectively at an endpoint

    const double x = bisect_nondecreasing(df, a, b, x_tol);
    const double fx = f(x);
    return fx <= coarse.value ? MinResult{x, fx} : coarse;
}

double bisect_nondecreasing(const std::function<double(double)>& h, double lo, double hi,
                            double x_tol) {
    double hlo = h(lo);
    if (hlo >= 0.0) return lo;
    double hhi = h(hi);
    if (hhi <= 0.0) return hi;
    double a = lo, b = hi;
    for (int iter = 0; iter < 200 && b - a > x_tol * (1.0 + std::abs(a)); ++iter) {
        const double m = 0.5 * (a + b);
        if (m <= a || m >= b) break;
        if (h(m) < 0.0) a = m; else b = m;
    }
    return 0.5 * (a + b);
}

MinResult max_concave(const std::function<double(double)>& f, double lo, double hi, double x_tol) {
    auto neg = [&f](double x) { return -f(x); };
    MinResult r = min_convex(neg, lo, hi, x_tol);
    return {r.x, -r.value};
}

}  // namespace cgmldp::numerics
