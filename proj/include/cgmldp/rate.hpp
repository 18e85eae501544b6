#pragma once

#include <optional>

#include "cgmldp/ext_real.hpp"
#include "cgmldp/lyapunov.hpp"
#include "cgmldp/param_law.hpp"
#include "cgmldp/shape.hpp"

namespace cgmldp {

enum class Regime { BelowShape, Interior, LinearTail };

const char* to_string(Regime r);

/// One right-tail rate function evaluation with its maximizing pair.
struct RateEval {
    double r;
    ExtReal value;       // >= 0; zero exactly for r <= g(s,t)
    double lambda_star;  // in [0, alpha_inf + beta_inf]
    double z_star;       // inner minimizer at lambda_star
    Regime regime;
};

RateEval rate_J(Kind kind, const ParameterLaw& alpha, const ParameterLaw& beta, Direction dir,
                double r);

inline RateEval quenched_J(const ParameterLaw& alpha, const ParameterLaw& beta, Direction dir,
                           double r) {
    return rate_J(Kind::Quenched, alpha, beta, dir, r);
}
inline RateEval annealed_J(const ParameterLaw& alpha, const ParameterLaw& beta, Direction dir,
                           double r) {
    return rate_J(Kind::Annealed, alpha, beta, dir, r);
}

/// Full quenched rate function: J above the shape value, +inf below it.
ExtReal quenched_I(const ParameterLaw& alpha, const ParameterLaw& beta, Direction dir, double r);

/// Closed form for alpha = beta = delta_{c/2}, valid for r >= (sqrt s + sqrt t)^2 / c.
double closed_form_J_homogeneous(double c, Direction dir, double r);

/// Closed form for alpha = beta = p delta_c + q delta_d on the diagonal s = t,
/// valid for r >= g(s,s) = 2s(p/c + q/d).
double closed_form_J_twopoint(double p, double q, double c, double d, double s, double r);

/// Closed form for alpha = beta uniform on [c/2, c/2+l] on the diagonal,
/// valid for r >= (2s/l) log(1 + 2l/c).
double closed_form_J_uniform(double c, double l, double s, double r);

/// Rate of P(sigma(nx, nt) > ny) for the TASEP tagged particle: J_{x,x+y}(t).
ExtReal tasep_rate(Kind kind, const ParameterLaw& alpha, const ParameterLaw& beta, double x,
                   double y, double t);

/// Leading-order behavior of J(g + eps) as eps -> 0: J ~ coefficient * eps^exponent.
/// Boundary directions need a third inverse moment; when it fails the
/// coefficient is withheld.
struct ExpansionReport {
    Region region;
    double exponent;  // 3/2 or 2
    std::optional<double> coefficient;
    bool moment_condition_met;
};

ExpansionReport expansion(Kind kind, const ParameterLaw& alpha, const ParameterLaw& beta,
                          Direction dir);

/// |sup_r {lambda r - J(r)} - L(lambda)|, the convex-duality residual. The
/// supremum is located by golden-section search over r, independently of the
/// L'(lambda) inversion inside rate_J.
double duality_gap(Kind kind, const ParameterLaw& alpha, const ParameterLaw& beta, Direction dir,
                   double lambda);

}  // namespace cgmldp
