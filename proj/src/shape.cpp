#include "cgmldp/shape.hpp"

#include <cmath>
#include <functional>
#include <limits>

#include "cgmldp/errors.hpp"
#include "cgmldp/numerics.hpp"

namespace cgmldp {

namespace {
// Relative slack when deciding whether s/t sits on a phase boundary.
constexpr double kBoundaryTol = 1e-9;
}  // namespace

void validate(const Direction& dir) {
    if (!(dir.s > 0.0) || !(dir.t > 0.0) || !std::isfinite(dir.s) || !std::isfinite(dir.t))
        throw DomainError("direction components must be positive reals");
}

const char* to_string(Region r) {
    switch (r) {
        case Region::LinearA: return "linear-a";
        case Region::BoundaryA: return "boundary-a";
        case Region::Concave: return "concave";
        case Region::BoundaryB: return "boundary-b";
        case Region::LinearB: return "linear-b";
    }
    return "?";
}

ExtReal stationary_shape(const ParameterLaw& alpha, const ParameterLaw& beta, double z,
                         Direction dir) {
    validate(dir);
    if (z < -alpha.ess_inf() || z > beta.ess_inf())
        throw DomainError("stationary shape requires z in [-ess_inf(alpha), ess_inf(beta)]");
    return dir.s * mean_inv_pow(alpha, z, 1) + dir.t * mean_inv_pow(beta, -z, 1);
}

namespace detail {

ShapeResult minimize_shape(double a_inf, double b_inf, const std::function<double(double)>& g_of_z,
                           const std::function<double(double)>& dg_of_z) {
    const double z_lo = -a_inf;
    const double z_hi = b_inf;
    // The objective is strictly convex; an endpoint is the minimizer exactly
    // when the derivative does not cross zero inside.
    if (dg_of_z(z_lo) >= 0.0) return {g_of_z(z_lo), z_lo};
    if (dg_of_z(z_hi) <= 0.0) return {g_of_z(z_hi), z_hi};
    numerics::MinResult m = numerics::min_convex_deriv(g_of_z, dg_of_z, z_lo, z_hi, 1e-12);
    return {m.value, m.x};
}

}  // namespace detail

ShapeResult shape_function(const ParameterLaw& alpha, const ParameterLaw& beta, Direction dir) {
    return shape_function_any(alpha, beta, dir);
}

PhasePortrait phase_portrait(const ParameterLaw& alpha, const ParameterLaw& beta, Direction dir) {
    validate(dir);
    const double a_inf = alpha.ess_inf();
    const double b_inf = beta.ess_inf();

    const ExtReal a_edge = mean_inv_pow(alpha, -a_inf, 2);
    const ExtReal c1 =
        a_edge.is_infinite() ? ExtReal(0.0)
                             : ExtReal(mean_inv_pow(beta, a_inf, 2).finite() / a_edge.finite());
    const ExtReal b_edge = mean_inv_pow(beta, -b_inf, 2);
    const ExtReal c2 =
        b_edge.is_infinite()
            ? ExtReal::infinity()
            : ExtReal(b_edge.finite() / mean_inv_pow(alpha, b_inf, 2).finite());

    const double ratio = dir.s / dir.t;
    auto near = [ratio](ExtReal c) {
        return c.is_finite() && std::abs(ratio - c.finite()) <= kBoundaryTol * (1.0 + c.finite());
    };
    Region region;
    if (near(c1))
        region = Region::BoundaryA;
    else if (near(c2))
        region = Region::BoundaryB;
    else if (ExtReal(ratio) < c1)
        region = Region::LinearA;
    else if (ExtReal(ratio) > c2)
        region = Region::LinearB;
    else
        region = Region::Concave;

    return {c1, c2, shape_function(alpha, beta, dir).zeta, region};
}

std::vector<Direction> shape_level_set(const ParameterLaw& alpha, const ParameterLaw& beta,
                                       int samples) {
    if (samples < 1) throw DomainError("level set needs at least one sample");
    std::vector<Direction> pts;
    pts.reserve(samples);
    const double pi = std::acos(-1.0);
    for (int i = 1; i <= samples; ++i) {
        const double theta = pi / 2.0 * i / (samples + 1);
        Direction d{std::cos(theta), std::sin(theta)};
        const double g = shape_function(alpha, beta, d).g;
        pts.push_back({d.s / g, d.t / g});  // g is homogeneous of degree one
    }
    return pts;
}

}  // namespace cgmldp
