#pragma once

#include <functional>

namespace cgmldp::numerics {

/// Adaptive Gauss-Legendre integral of f over [lo, hi] to absolute tolerance
/// abs_tol. The integrand may be (integrably) singular at lo; panels split
/// toward the endpoint until the estimate stabilizes.
double integrate(const std::function<double(double)>& f, double lo, double hi,
                 double abs_tol = 1e-10);

struct MinResult {
    double x;
    double value;
};

/// Minimum of a strictly convex f on [lo, hi]. Golden-section bracketing
/// followed by Brent refinement to argument tolerance x_tol. f may return
/// +inf (typically at the endpoints); infinite endpoints are nudged inward
/// by one ulp before bracketing. Endpoints are compared explicitly.
MinResult min_convex(const std::function<double(double)>& f, double lo, double hi,
                     double x_tol = 1e-12);

/// Like min_convex, then polished by bisecting the sign change of the
/// derivative df (strictly increasing on [lo, hi]) around the Brent argmin.
/// Used where the argmin itself must be accurate beyond the ~sqrt(eps)
/// resolution of value-based search.
MinResult min_convex_deriv(const std::function<double(double)>& f,
                           const std::function<double(double)>& df, double lo, double hi,
                           double x_tol = 1e-12);

/// Root of a continuous nondecreasing h on [lo, hi] by bisection; h may take
/// the values +-inf. Returns lo if h(lo) >= 0 and hi if h(hi) <= 0 (no sign
/// change inside the bracket).
double bisect_nondecreasing(const std::function<double(double)>& h, double lo, double hi,
                            double x_tol = 1e-12);

/// Maximum of a concave f on [lo, hi] by golden-section search.
MinResult max_concave(const std::function<double(double)>& f, double lo, double hi,
                      double x_tol = 1e-10);

}  // namespace cgmldp::numerics
