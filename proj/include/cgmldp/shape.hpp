#pragma once

#include <functional>
#include <limits>
#include <vector>

#include "cgmldp/ext_real.hpp"
#include "cgmldp/param_law.hpp"

namespace cgmldp {

/// Macroscopic direction (s, t), both strictly positive.
struct Direction {
    double s;
    double t;
};

void validate(const Direction& dir);

enum class Region { LinearA, BoundaryA, Concave, BoundaryB, LinearB };

const char* to_string(Region r);

/// Direction-ratio thresholds of the shape function together with the
/// minimizer and region classification for one direction.
struct PhasePortrait {
    ExtReal c1;   // 0 when E[(a - alpha_inf)^{-2}] is infinite
    ExtReal c2;   // +inf when E[(b - beta_inf)^{-2}] is infinite
    double zeta;  // unique minimizer of the shape variational formula
    Region region;
};

struct ShapeResult {
    double g;
    double zeta;
};

/// g_z(s,t) = s E[(a+z)^{-1}] + t E[(b-z)^{-1}] for z in [-alpha_inf, beta_inf].
ExtReal stationary_shape(const ParameterLaw& alpha, const ParameterLaw& beta, double z,
                         Direction dir);

/// Shape function g(s,t) = min_z g_z(s,t) with its unique minimizer zeta
/// (endpoints allowed and returned exactly).
ShapeResult shape_function(const ParameterLaw& alpha, const ParameterLaw& beta, Direction dir);

PhasePortrait phase_portrait(const ParameterLaw& alpha, const ParameterLaw& beta, Direction dir);

/// Points on the level set {(s,t) : g(s,t) = 1}, one per angle sample.
std::vector<Direction> shape_level_set(const ParameterLaw& alpha, const ParameterLaw& beta,
                                       int samples);

// Generic variant of the shape minimization for any law-like type providing
// ess_inf(law) and mean_inv_pow(law, z, k). Used to evaluate the shape under
// tilted laws without projecting them.
template <class LawA, class LawB>
ShapeResult shape_function_any(const LawA& alpha, const LawB& beta, Direction dir);

namespace detail {
ShapeResult minimize_shape(double a_inf, double b_inf,
                           const std::function<double(double)>& g_of_z,
                           const std::function<double(double)>& dg_of_z);
}

template <class LawA, class LawB>
ShapeResult shape_function_any(const LawA& alpha, const LawB& beta, Direction dir) {
    validate(dir);
    const double a_inf = ess_inf(alpha);
    const double b_inf = ess_inf(beta);
    auto g_of_z = [&](double z) -> double {
        const ExtReal va = mean_inv_pow(alpha, z, 1);
        const ExtReal vb = mean_inv_pow(beta, -z, 1);
        return (dir.s * va + dir.t * vb).value();
    };
    auto dg_of_z = [&](double z) -> double {
        const ExtReal da = mean_inv_pow(alpha, z, 2);
        const ExtReal db = mean_inv_pow(beta, -z, 2);
        if (da.is_infinite()) return -std::numeric_limits<double>::infinity();
        if (db.is_infinite()) return std::numeric_limits<double>::infinity();
        return -dir.s * da.finite() + dir.t * db.finite();
    };
    return detail::minimize_shape(a_inf, b_inf, g_of_z, dg_of_z);
}

}  // namespace cgmldp
