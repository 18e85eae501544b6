#pragma once

#include "cgmldp/ext_real.hpp"
#include "cgmldp/param_law.hpp"
#include "cgmldp/rate.hpp"
#include "cgmldp/shape.hpp"

namespace cgmldp {

/// Minimizing pair of the entropy variational link between the annealed and
/// quenched right-tail rate functions, with its entropy costs.
struct TiltPair {
    TiltedLaw nu1;
    TiltedLaw nu2;
    ExtReal h1;  // H(nu1 | alpha)
    ExtReal h2;  // H(nu2 | beta)
};

/// The unique optimal tilts at r > g(s,t): nu1 proportional to
/// (a+z*+lam*)/(a+z*) against alpha, nu2 proportional to
/// (b-z*)/(b-z*-lam*) against beta.
TiltPair optimal_tilts(const ParameterLaw& alpha, const ParameterLaw& beta, Direction dir,
                       double r);

/// | annealed_J(r) - [quenched_I under the optimal tilts + s H1 + t H2] |.
/// Discrete bases only (entropies and the tilted pipeline are exact there).
double entropy_decomposition_residual(const ParameterLaw& alpha, const ParameterLaw& beta,
                                      Direction dir, double r);

/// inf { s H(nu1|alpha) + t H(nu2|beta) : g under (nu1, nu2) in (x, y) },
/// over the product of the discrete simplices; +inf when the constraint set
/// is empty. Dense grid plus local pattern refinement.
ExtReal left_tail_bound(const ParameterLaw& alpha, const ParameterLaw& beta, Direction dir,
                        double x, double y);

struct MeanTiltComparison {
    TiltedLaw nu1;
    double g_tilt;
    double g_base;
};

/// Size-biased tilt of alpha and the shape values with and without it;
/// the tilt strictly lowers the shape value for nondegenerate alpha.
MeanTiltComparison mean_tilt_comparison(const ParameterLaw& alpha, const ParameterLaw& beta,
                                        Direction dir);

}  // namespace cgmldp
