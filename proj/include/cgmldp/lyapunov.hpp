#pragma once

#include "cgmldp/ext_real.hpp"
#include "cgmldp/param_law.hpp"
#include "cgmldp/shape.hpp"

namespace cgmldp {

enum class Kind { Quenched, Annealed };

const char* to_string(Kind k);

enum class ZBoundary { Interior, AtMinusAlpha, AtBetaMinusLambda, AtLambdaEndpoint };

const char* to_string(ZBoundary b);

/// One evaluation of a Lyapunov exponent: value, inner minimizer zhat in
/// [-alpha_inf, beta_inf - lambda], and which constraint (if any) binds.
struct LyapunovPoint {
    double lambda;
    ExtReal value;
    double zhat;
    ZBoundary boundary;
};

/// lambda1/lambda2: first lambda at which the inner minimizer sticks to
/// -alpha_inf resp. beta_inf - lambda; capped at alpha_inf + beta_inf.
/// At most one of them is interior.
struct CriticalLambdas {
    double lambda1;
    double lambda2;
    double lambda0;  // min(lambda1, lambda2)
};

/// Lyapunov exponent at lambda >= 0. For lambda < 0 the analogous limit is
/// the identity -lambda * g(s,t) and is not exposed as an operation.
LyapunovPoint lyapunov(Kind kind, const ParameterLaw& alpha, const ParameterLaw& beta,
                       Direction dir, double lambda);

inline LyapunovPoint quenched_L(const ParameterLaw& alpha, const ParameterLaw& beta, Direction dir,
                                double lambda) {
    return lyapunov(Kind::Quenched, alpha, beta, dir, lambda);
}
inline LyapunovPoint annealed_L(const ParameterLaw& alpha, const ParameterLaw& beta, Direction dir,
                                double lambda) {
    return lyapunov(Kind::Annealed, alpha, beta, dir, lambda);
}

CriticalLambdas critical_lambdas(Kind kind, const ParameterLaw& alpha, const ParameterLaw& beta,
                                 Direction dir);

/// dL/dlambda on (0, alpha_inf + beta_inf), from the closed forms of the
/// applicable regime; continuous across the regime change and tending to
/// g(s,t) as lambda -> 0+.
double L_prime(Kind kind, const ParameterLaw& alpha, const ParameterLaw& beta, Direction dir,
               double lambda);

/// Limit of L' at lambda = alpha_inf + beta_inf; may be +inf.
ExtReal L_prime_endpoint(Kind kind, const ParameterLaw& alpha, const ParameterLaw& beta,
                         Direction dir);

/// Lyapunov exponent of the stationary model with boundary parameter z, for
/// z in (-alpha_inf, beta_inf) and 0 < lambda < min(alpha_inf+z, beta_inf-z).
ExtReal stationary_L(const ParameterLaw& alpha, const ParameterLaw& beta, double z, Direction dir,
                     double lambda);

}  // namespace cgmldp
