#include "cgmldp/rate.hpp"

#include <cmath>
#include <functional>
#include <limits>

#include "cgmldp/errors.hpp"
#include "cgmldp/numerics.hpp"

namespace cgmldp {

namespace {

double finite_or_throw(ExtReal v, const char* what) {
    if (!v.is_finite()) throw InternalConsistencyError(what);
    return v.finite();
}

}  // namespace

const char* to_string(Regime r) {
    switch (r) {
        case Regime::BelowShape: return "below-shape";
        case Regime::Interior: return "interior";
        case Regime::LinearTail: return "linear-tail";
    }
    return "?";
}

RateEval rate_J(Kind kind, const ParameterLaw& alpha, const ParameterLaw& beta, Direction dir,
                double r) {
    validate(dir);
    const ShapeResult sh = shape_function(alpha, beta, dir);
    // Slack of a few ulps so that r == g lands on the zero branch even when
    // the minimized g carries rounding error.
    if (r <= sh.g + 1e-12 * std::max(1.0, std::abs(sh.g)))
        return {r, 0.0, 0.0, sh.zeta, Regime::BelowShape};

    const double sum = alpha.ess_inf() + beta.ess_inf();
    const ExtReal slope_end = L_prime_endpoint(kind, alpha, beta, dir);
    if (slope_end.is_finite() && r >= slope_end.finite()) {
        const ExtReal l_end = lyapunov(kind, alpha, beta, dir, sum).value;
        const double value =
            sum * r - finite_or_throw(l_end, "finite endpoint slope with infinite L");
        return {r, value, sum, -alpha.ess_inf(), Regime::LinearTail};
    }

    // L' is continuous and increasing from g to the endpoint slope, so the
    // maximizing lambda solves L'(lambda) = r.
    auto h = [&](double lam) { return L_prime(kind, alpha, beta, dir, lam) - r; };
    const double lam_lo = 1e-14;
    const double lam_hi = sum * (1.0 - 1e-14);
    const double lam = numerics::bisect_nondecreasing(h, lam_lo, lam_hi, 1e-12);
    const LyapunovPoint pt = lyapunov(kind, alpha, beta, dir, lam);
    const double value = lam * r - finite_or_throw(pt.value, "infinite L at interior lambda");
    return {r, std::max(0.0, value), lam, pt.zhat, Regime::Interior};
}

ExtReal quenched_I(const ParameterLaw& alpha, const ParameterLaw& beta, Direction dir, double r) {
    validate(dir);
    const double g = shape_function(alpha, beta, dir).g;
    if (r < g - 1e-12 * std::max(1.0, std::abs(g))) return ExtReal::infinity();
    return quenched_J(alpha, beta, dir, r).value;
}

double closed_form_J_homogeneous(double c, Direction dir, double r) {
    validate(dir);
    if (!(c > 0.0)) throw DomainError("homogeneous closed form requires c > 0");
    const double s = dir.s, t = dir.t;
    const double g = (std::sqrt(s) + std::sqrt(t)) * (std::sqrt(s) + std::sqrt(t)) / c;
    if (r < g) throw DomainError("closed form defined for r >= shape value");
    const double root = std::sqrt(std::max(0.0, (s + t - c * r) * (s + t - c * r) - 4.0 * s * t));
    const double ua = std::max(1.0, (s - t + c * r) / (2.0 * std::sqrt(c * s * r)));
    const double ub = std::max(1.0, (t - s + c * r) / (2.0 * std::sqrt(c * t * r)));
    return root - 2.0 * s * std::acosh(ua) - 2.0 * t * std::acosh(ub);
}

double closed_form_J_twopoint(double p, double q, double c, double d, double s, double r) {
    if (!(p > 0.0) || !(q > 0.0) || std::abs(p + q - 1.0) > 1e-12)
        throw DomainError("two-point weights must be positive and sum to 1");
    if (!(c > 0.0) || !(d > 0.0) || !(s > 0.0)) throw DomainError("two-point parameters must be positive");
    const double g = 2.0 * s * (p / c + q / d);
    if (r < g) throw DomainError("closed form defined for r >= shape value");
    if (r == g) return 0.0;

    // On the diagonal the inner minimizer is symmetric, z* = -(z*+lam*), and
    // x = z*+lam* solves a quadratic in u = x^2.
    const double rho = r / s;
    const double lin = 2.0 * c * p + 2.0 * d * q;
    const double quad_b = lin - (c * c + d * d) * rho;
    const double quad_c = c * c * d * d * rho - 2.0 * c * d * d * p - 2.0 * c * c * d * q;
    const double delta = quad_b * quad_b - 4.0 * rho * quad_c;
    if (delta < 0.0) throw InternalConsistencyError("two-point closed form: negative discriminant");
    const double u = (-quad_b - std::sqrt(delta)) / (2.0 * rho);
    const double edge = std::min(c, d);
    if (u < -1e-12 || u >= edge * edge)
        throw InternalConsistencyError("two-point closed form: root outside admissible interval");
    const double x = std::sqrt(std::max(0.0, u));
    const double lam = 2.0 * x;
    return r * lam - 2.0 * s *
                         (p * std::log((c + x) / (c - x)) + q * std::log((d + x) / (d - x)));
}

double closed_form_J_uniform(double c, double l, double s, double r) {
    if (!(c > 0.0) || !(l > 0.0) || !(s > 0.0))
        throw DomainError("uniform closed form parameters must be positive");
    const double g = 2.0 * s / l * std::log(1.0 + 2.0 * l / c);
    if (r < g) throw DomainError("closed form defined for r >= shape value");
    const double e = std::exp(r * l / s);
    const double half = 0.5 * c;
    const double u = ((half + l) * (half + l) - half * half * e) / (1.0 - e);
    if (u < -1e-12 || u > half * half * (1.0 + 1e-12))
        throw InternalConsistencyError("uniform closed form: root outside admissible interval");
    const double x = std::sqrt(std::max(0.0, u));
    const double lam = 2.0 * x;
    // antiderivative of log((y+x)/(y-x)) in y
    auto phi = [x](double y) {
        const double up = (y + x) * std::log(y + x);
        const double dn = (y - x) <= 0.0 ? 0.0 : (y - x) * std::log(y - x);
        return up - dn;
    };
    return r * lam - 2.0 * s / l * (phi(half + l) - phi(half));
}

ExtReal tasep_rate(Kind kind, const ParameterLaw& alpha, const ParameterLaw& beta, double x,
                   double y, double t) {
    if (!(x > 0.0) || !(y > 0.0) || !(t > 0.0))
        throw DomainError("tasep_rate requires x, y, t > 0");
    return rate_J(kind, alpha, beta, {x, x + y}, t).value;
}

namespace {

ExpansionReport quenched_expansion(const ParameterLaw& alpha, const ParameterLaw& beta,
                                   Direction dir, const PhasePortrait& pp) {
    const double s = dir.s, t = dir.t;
    const double a_inf = alpha.ess_inf();
    const double b_inf = beta.ess_inf();
    switch (pp.region) {
        case Region::LinearA: {
            const double qa = mean_inv_pow(alpha, -a_inf, 2).finite();
            const double qb = mean_inv_pow(beta, a_inf, 2).finite();
            return {pp.region, 2.0, 0.5 / (-s * qa + t * qb), true};
        }
        case Region::BoundaryA: {
            if (!inverse_moment_finite(alpha, 3)) return {pp.region, 1.5, std::nullopt, false};
            const double ca = mean_inv_pow(alpha, -a_inf, 3).finite();
            const double cb = mean_inv_pow(beta, a_inf, 3).finite();
            return {pp.region, 1.5, (2.0 / 3.0) / std::sqrt(s * ca + t * cb), true};
        }
        case Region::Concave: {
            const double ca = mean_inv_pow(alpha, pp.zeta, 3).finite();
            const double cb = mean_inv_pow(beta, -pp.zeta, 3).finite();
            return {pp.region, 1.5, (4.0 / 3.0) / std::sqrt(s * ca + t * cb), true};
        }
        case Region::BoundaryB: {
            if (!inverse_moment_finite(beta, 3)) return {pp.region, 1.5, std::nullopt, false};
            const double ca = mean_inv_pow(alpha, b_inf, 3).finite();
            const double cb = mean_inv_pow(beta, -b_inf, 3).finite();
            return {pp.region, 1.5, (2.0 / 3.0) / std::sqrt(s * ca + t * cb), true};
        }
        case Region::LinearB: {
            const double qa = mean_inv_pow(alpha, b_inf, 2).finite();
            const double qb = mean_inv_pow(beta, -b_inf, 2).finite();
            return {pp.region, 2.0, 0.5 / (s * qa - t * qb), true};
        }
    }
    throw InternalConsistencyError("unreachable expansion region");
}

ExpansionReport annealed_expansion(const ParameterLaw& alpha, const ParameterLaw& beta,
                                   Direction dir, const PhasePortrait& pp) {
    if (alpha.is_degenerate() && beta.is_degenerate())
        throw DomainError("annealed expansion requires laws that are not both degenerate");
    const double s = dir.s, t = dir.t;
    const double a_inf = alpha.ess_inf();
    const double b_inf = beta.ess_inf();
    switch (pp.region) {
        case Region::LinearA: {
            const double m = mean_inv_pow(alpha, -a_inf, 1).finite();
            const double vb = var_inv(beta, a_inf).finite();
            const double qb = mean_inv_pow(beta, a_inf, 2).finite();
            return {pp.region, 2.0, 0.5 / (-s * m * m + t * vb + t * qb), true};
        }
        case Region::LinearB: {
            const double va = var_inv(alpha, b_inf).finite();
            const double qa = mean_inv_pow(alpha, b_inf, 2).finite();
            const double m = mean_inv_pow(beta, -b_inf, 1).finite();
            return {pp.region, 2.0, 0.5 / (s * va + s * qa - t * m * m), true};
        }
        default: {
            bool met = true;
            if (pp.region == Region::BoundaryA) met = inverse_moment_finite(alpha, 3);
            if (pp.region == Region::BoundaryB) met = inverse_moment_finite(beta, 3);
            if (!met) return {pp.region, 2.0, std::nullopt, false};
            const double va = var_inv(alpha, pp.zeta).finite();
            const double vb = var_inv(beta, -pp.zeta).finite();
            return {pp.region, 2.0, 0.5 / (s * va + t * vb), true};
        }
    }
}

}  // namespace

ExpansionReport expansion(Kind kind, const ParameterLaw& alpha, const ParameterLaw& beta,
                          Direction dir) {
    validate(dir);
    const PhasePortrait pp = phase_portrait(alpha, beta, dir);
    return kind == Kind::Quenched ? quenched_expansion(alpha, beta, dir, pp)
                                  : annealed_expansion(alpha, beta, dir, pp);
}

double duality_gap(Kind kind, const ParameterLaw& alpha, const ParameterLaw& beta, Direction dir,
                   double lambda) {
    validate(dir);
    const double sum = alpha.ess_inf() + beta.ess_inf();
    if (!(lambda > 0.0) || !(lambda < sum))
        throw DomainError("duality_gap requires 0 < lambda < alpha_inf + beta_inf");
    const double g = shape_function(alpha, beta, dir).g;
    auto phi = [&](double r) { return lambda * r - rate_J(kind, alpha, beta, dir, r).value.value(); };

    // Expand the bracket until J'(r) = lambda*(r) exceeds lambda, so the
    // concave phi has its maximum inside.
    double hi = g + 1.0;
    for (int i = 0; i < 60; ++i) {
        if (rate_J(kind, alpha, beta, dir, hi).lambda_star > lambda) break;
        hi = g + 2.0 * (hi - g);
    }
    const double sup = numerics::max_concave(phi, g, hi, 1e-10).value;
    const double l_val = lyapunov(kind, alpha, beta, dir, lambda).value.finite();
    return std::abs(sup - l_val);
}

}  // namespace cgmldp
