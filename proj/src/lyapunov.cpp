#include "cgmldp/lyapunov.hpp"

#include <cmath>
#include <functional>
#include <limits>

#include "cgmldp/errors.hpp"
#include "cgmldp/numerics.hpp"

namespace cgmldp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Inner variational problem at fixed lambda in (0, alpha_inf + beta_inf):
// minimize F(z, lambda) over z in [-alpha_inf, beta_inf - lambda].
struct InnerProblem {
    Kind kind;
    const ParameterLaw& alpha;
    const ParameterLaw& beta;
    Direction dir;
    double lambda;

    double objective(double z) const {
        if (kind == Kind::Quenched) {
            return (dir.s * mean_log_ratio(alpha, z, lambda) +
                    dir.t * mean_log_ratio(beta, -z - lambda, lambda))
                .value();
        }
        return (dir.s * ext_log(mean_ratio(alpha, z, lambda)) +
                dir.t * ext_log(mean_ratio(beta, -z - lambda, lambda)))
            .value();
    }

    // dF/dz. The a-side contributes -inf when its edge moment diverges and
    // the b-side +inf; both cannot diverge for lambda < alpha_inf + beta_inf.
    double derivative(double z) const {
        if (kind == Kind::Quenched) {
            const ExtReal a0 = mean_inv_pow(alpha, z, 1);
            if (a0.is_infinite()) return -kInf;
            const ExtReal b1 = mean_inv_pow(beta, -z - lambda, 1);
            if (b1.is_infinite()) return kInf;
            const double a1 = mean_inv_pow(alpha, z + lambda, 1).finite();
            const double b0 = mean_inv_pow(beta, -z, 1).finite();
            return dir.s * (a1 - a0.finite()) + dir.t * (b1.finite() - b0);
        }
        const ExtReal a2 = mean_inv_pow(alpha, z, 2);
        if (a2.is_infinite()) return -kInf;
        const ExtReal b2 = mean_inv_pow(beta, -z - lambda, 2);
        if (b2.is_infinite()) return kInf;
        const double a0 = mean_inv_pow(alpha, z, 1).finite();
        const double b1 = mean_inv_pow(beta, -z - lambda, 1).finite();
        return lambda * (-dir.s * a2.finite() / (1.0 + lambda * a0) +
                         dir.t * b2.finite() / (1.0 + lambda * b1));
    }

    LyapunovPoint solve() const {
        const double z_lo = -alpha.ess_inf();
        const double z_hi = beta.ess_inf() - lambda;
        if (derivative(z_lo) >= 0.0)
            return {lambda, objective(z_lo), z_lo, ZBoundary::AtMinusAlpha};
        if (derivative(z_hi) <= 0.0)
            return {lambda, objective(z_hi), z_hi, ZBoundary::AtBetaMinusLambda};
        auto f = [this](double z) { return objective(z); };
        auto df = [this](double z) { return derivative(z); };
        numerics::MinResult m = numerics::min_convex_deriv(f, df, z_lo, z_hi, 1e-12);
        return {lambda, m.value, m.x, ZBoundary::Interior};
    }
};

ExtReal endpoint_value(Kind kind, const ParameterLaw& alpha, const ParameterLaw& beta,
                       Direction dir) {
    const double sum = alpha.ess_inf() + beta.ess_inf();
    if (kind == Kind::Quenched) {
        return dir.s * mean_log_ratio(alpha, -alpha.ess_inf(), sum) +
               dir.t * mean_log_ratio(beta, -beta.ess_inf(), sum);
    }
    return dir.s * ext_log(mean_ratio(alpha, -alpha.ess_inf(), sum)) +
           dir.t * ext_log(mean_ratio(beta, -beta.ess_inf(), sum));
}

}  // namespace

const char* to_string(Kind k) { return k == Kind::Quenched ? "quenched" : "annealed"; }

const char* to_string(ZBoundary b) {
    switch (b) {
        case ZBoundary::Interior: return "interior";
        case ZBoundary::AtMinusAlpha: return "at-minus-alpha";
        case ZBoundary::AtBetaMinusLambda: return "at-beta-minus-lambda";
        case ZBoundary::AtLambdaEndpoint: return "at-lambda-endpoint";
    }
    return "?";
}

LyapunovPoint lyapunov(Kind kind, const ParameterLaw& alpha, const ParameterLaw& beta,
                       Direction dir, double lambda) {
    validate(dir);
    if (lambda < 0.0) throw DomainError("lyapunov exponent requires lambda >= 0");
    const double a_inf = alpha.ess_inf();
    const double b_inf = beta.ess_inf();
    const double sum = a_inf + b_inf;
    if (lambda == 0.0) {
        const double zeta = shape_function(alpha, beta, dir).zeta;
        ZBoundary b = ZBoundary::Interior;
        if (zeta == -a_inf) b = ZBoundary::AtMinusAlpha;
        else if (zeta == b_inf) b = ZBoundary::AtBetaMinusLambda;
        return {0.0, 0.0, zeta, b};
    }
    if (lambda > sum) return {lambda, ExtReal::infinity(), -a_inf, ZBoundary::AtLambdaEndpoint};
    if (lambda == sum)
        return {lambda, endpoint_value(kind, alpha, beta, dir), -a_inf,
                ZBoundary::AtLambdaEndpoint};
    return InnerProblem{kind, alpha, beta, dir, lambda}.solve();
}

CriticalLambdas critical_lambdas(Kind kind, const ParameterLaw& alpha, const ParameterLaw& beta,
                                 Direction dir) {
    validate(dir);
    const double a_inf = alpha.ess_inf();
    const double b_inf = beta.ess_inf();
    const double sum = a_inf + b_inf;

    // lambda1: first lambda with dF/dz >= 0 at z = -alpha_inf. The scaled
    // condition dF/(dz)/lambda is continuous and increasing in lambda; it is
    // identically -inf when the a-side edge moment diverges.
    auto h1 = [&](double lam) -> double {
        InnerProblem p{kind, alpha, beta, dir, lam};
        if (kind == Kind::Quenched) {
            if (mean_inv_pow(alpha, -a_inf, 1).is_infinite()) return -kInf;
        } else {
            if (mean_inv_pow(alpha, -a_inf, 2).is_infinite()) return -kInf;
        }
        return p.derivative(-a_inf) / lam;
    };
    auto h2 = [&](double lam) -> double {
        InnerProblem p{kind, alpha, beta, dir, lam};
        if (kind == Kind::Quenched) {
            if (mean_inv_pow(beta, -b_inf, 1).is_infinite()) return -kInf;
        } else {
            if (mean_inv_pow(beta, -b_inf, 2).is_infinite()) return -kInf;
        }
        return -p.derivative(b_inf - lam) / lam;
    };
    const double lo = 1e-12;
    const double lambda1 = numerics::bisect_nondecreasing(h1, lo, sum, 1e-12);
    const double lambda2 = numerics::bisect_nondecreasing(h2, lo, sum, 1e-12);
    return {lambda1, lambda2, std::min(lambda1, lambda2)};
}

double L_prime(Kind kind, const ParameterLaw& alpha, const ParameterLaw& beta, Direction dir,
               double lambda) {
    validate(dir);
    const double a_inf = alpha.ess_inf();
    const double b_inf = beta.ess_inf();
    const double sum = a_inf + b_inf;
    if (!(lambda > 0.0) || !(lambda < sum))
        throw DomainError("L_prime requires 0 < lambda < alpha_inf + beta_inf");
    const LyapunovPoint pt = InnerProblem{kind, alpha, beta, dir, lambda}.solve();

    if (kind == Kind::Quenched) {
        // Interior and past lambda1 the derivative is the stationary shape at
        // zhat + lambda; past lambda2 the minimizer rides the moving endpoint
        // and the derivative is the stationary shape at zhat itself.
        const double z =
            pt.boundary == ZBoundary::AtBetaMinusLambda ? pt.zhat : pt.zhat + lambda;
        return (dir.s * mean_inv_pow(alpha, z, 1) + dir.t * mean_inv_pow(beta, -z, 1)).finite();
    }

    const double z = pt.zhat;
    if (pt.boundary == ZBoundary::AtBetaMinusLambda) {
        const double ma = mean_inv_pow(alpha, z, 1).finite();
        const double qa = mean_inv_pow(alpha, z, 2).finite();
        const ExtReal mb = mean_inv_pow(beta, -b_inf, 1);
        const double b_part = mb.is_infinite() ? dir.t / lambda
                                               : dir.t * mb.finite() / (1.0 + lambda * mb.finite());
        return dir.s * (ma + lambda * qa) / (1.0 + lambda * ma) + b_part;
    }
    const ExtReal ma = mean_inv_pow(alpha, z, 1);
    const double a_part = ma.is_infinite() ? dir.s / lambda
                                           : dir.s * ma.finite() / (1.0 + lambda * ma.finite());
    const double mb = mean_inv_pow(beta, -z - lambda, 1).finite();
    const double qb = mean_inv_pow(beta, -z - lambda, 2).finite();
    return a_part + dir.t * (mb + lambda * qb) / (1.0 + lambda * mb);
}

ExtReal L_prime_endpoint(Kind kind, const ParameterLaw& alpha, const ParameterLaw& beta,
                         Direction dir) {
    validate(dir);
    const double a_inf = alpha.ess_inf();
    const double b_inf = beta.ess_inf();
    const double sum = a_inf + b_inf;

    const ExtReal ma = mean_inv_pow(alpha, -a_inf, 1);
    const ExtReal mb = mean_inv_pow(beta, -b_inf, 1);

    if (kind == Kind::Quenched) {
        const ExtReal br1 = dir.s * ma + ExtReal(dir.t * mean_inv_pow(beta, a_inf, 1).finite());
        const ExtReal br2 = ExtReal(dir.s * mean_inv_pow(alpha, b_inf, 1).finite()) + dir.t * mb;
        if (ma.is_infinite() && mb.is_infinite()) return ExtReal::infinity();
        if (ma.is_infinite()) return br1;  // condition reads -inf <= 0
        if (mb.is_infinite()) return br2;
        const double ca = (ma.finite() - mean_inv_pow(alpha, b_inf, 1).finite()) / sum;
        const double cb = (mb.finite() - mean_inv_pow(beta, a_inf, 1).finite()) / sum;
        return (-dir.s * ca + dir.t * cb <= 0.0) ? br1 : br2;
    }

    const ExtReal qa = mean_inv_pow(alpha, -a_inf, 2);
    const ExtReal qb = mean_inv_pow(beta, -b_inf, 2);
    auto saturating = [](double coef, ExtReal m, double lam) {
        // lim of coef * m / (1 + lam * m) with m possibly infinite.
        return m.is_infinite() ? coef / lam : coef * m.finite() / (1.0 + lam * m.finite());
    };
    auto steep = [](double coef, ExtReal m, ExtReal q, double lam) -> ExtReal {
        // coef * (m + lam q) / (1 + lam m); infinite exactly when q is.
        if (q.is_infinite()) return ExtReal::infinity();
        return coef * (m.finite() + lam * q.finite()) / (1.0 + lam * m.finite());
    };
    const ExtReal br1 = steep(dir.s, ma, qa, sum) + ExtReal(saturating(dir.t, mb, sum));
    const ExtReal br2 = ExtReal(saturating(dir.s, ma, sum)) + steep(dir.t, mb, qb, sum);
    if (br1.is_infinite() && br2.is_infinite()) return ExtReal::infinity();
    if (ma.is_infinite()) return br1;
    if (mb.is_infinite()) return br2;
    if (qa.is_infinite()) return br1;
    if (qb.is_infinite()) return br2;
    const double da = 1.0 + sum * ma.finite();
    const double db = 1.0 + sum * mb.finite();
    const double cond = -dir.s * qa.finite() / da + dir.t * qb.finite() / db;
    return cond <= 0.0 ? br1 : br2;
}

ExtReal stationary_L(const ParameterLaw& alpha, const ParameterLaw& beta, double z, Direction dir,
                     double lambda) {
    validate(dir);
    const double a_inf = alpha.ess_inf();
    const double b_inf = beta.ess_inf();
    if (!(z > -a_inf) || !(z < b_inf))
        throw DomainError("stationary_L requires z in (-alpha_inf, beta_inf)");
    if (!(lambda > 0.0) || !(lambda < std::min(a_inf + z, b_inf - z)))
        throw DomainError("stationary_L requires 0 < lambda < min(alpha_inf+z, beta_inf-z)");
    const ExtReal down = dir.s * mean_log_ratio(alpha, z - lambda, lambda) +
                         dir.t * mean_log_ratio(beta, -z, lambda);
    const ExtReal up = dir.s * mean_log_ratio(alpha, z, lambda) +
                       dir.t * mean_log_ratio(beta, -z - lambda, lambda);
    return down >= up ? down : up;
}

}  // namespace cgmldp
