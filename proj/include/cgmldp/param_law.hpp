#pragma once

#include <optional>
#include <vector>

#include "cgmldp/ext_real.hpp"

namespace cgmldp {

enum class LawKind { PointMass, FiniteDiscrete, UniformInterval, PolyInterval };

struct Atom {
    double x;
    double p;
    bool operator==(const Atom&) const = default;
};

/// Probability law on (0, inf) for the marginal parameters. Four closed
/// variants: point mass, finite discrete, uniform on [lo, hi], and the
/// polynomial-density family (k+1)(x-lo)^k / (hi-lo)^(k+1) on [lo, hi].
/// Immutable after construction.
class ParameterLaw {
public:
    static ParameterLaw point_mass(double x);
    static ParameterLaw discrete(std::vector<Atom> atoms);
    static ParameterLaw uniform(double lo, double hi);
    static ParameterLaw poly(double lo, double hi, int degree);

    [[nodiscard]] LawKind kind() const { return kind_; }
    [[nodiscard]] bool is_discrete() const {
        return kind_ == LawKind::PointMass || kind_ == LawKind::FiniteDiscrete;
    }
    [[nodiscard]] bool is_degenerate() const { return is_discrete() && atoms_.size() == 1; }

    /// Exact infimum of the support; strictly positive.
    [[nodiscard]] double ess_inf() const;

    [[nodiscard]] const std::vector<Atom>& atoms() const;  // discrete kinds
    [[nodiscard]] double lo() const;                       // interval kinds
    [[nodiscard]] double hi() const;
    [[nodiscard]] int degree() const;  // PolyInterval exponent k

    [[nodiscard]] double mean() const;

    bool operator==(const ParameterLaw&) const = default;

private:
    ParameterLaw() = default;
    LawKind kind_ = LawKind::PointMass;
    std::vector<Atom> atoms_;  // sorted by x, positive probabilities
    double lo_ = 0.0, hi_ = 0.0;
    int degree_ = 0;
};

// ---------------------------------------------------------------------------
// Expectation functionals. All require z >= -ess_inf (DomainError otherwise)
// and decide infiniteness analytically per variant, never by quadrature.
// ---------------------------------------------------------------------------

/// E[(X+z)^{-k}], k >= 1.
ExtReal mean_inv_pow(const ParameterLaw& law, double z, int k);

/// E[log((X+z+lambda)/(X+z))], lambda >= 0.
ExtReal mean_log_ratio(const ParameterLaw& law, double z, double lambda);

/// E[(X+z+lambda)/(X+z)] = 1 + lambda E[(X+z)^{-1}].
ExtReal mean_ratio(const ParameterLaw& law, double z, double lambda);

/// Var[(X+z)^{-1}].
ExtReal var_inv(const ParameterLaw& law, double z);

/// Finiteness of E[(X - ess_inf)^{-k}], decided exactly per variant.
bool inverse_moment_finite(const ParameterLaw& law, int k);

/// Relative entropy H(nu | mu) for discrete laws; +inf when nu is not
/// absolutely continuous with respect to mu. Both laws must be discrete.
ExtReal relative_entropy(const ParameterLaw& nu, const ParameterLaw& mu);

/// Law reweighted by a fixed positive density. Discrete bases project to an
/// exact FiniteDiscrete; interval bases keep (base, weight) form and evaluate
/// expectations through the base quadrature.
class TiltedLaw {
public:
    /// dnu/dbase(x) proportional to (x+shift+lambda)/(x+shift).
    static TiltedLaw ratio(const ParameterLaw& base, double shift, double lambda);
    /// dnu/dbase(x) proportional to x.
    static TiltedLaw size_biased(const ParameterLaw& base);

    [[nodiscard]] double ess_inf() const;
    [[nodiscard]] ExtReal mean_inv_pow(double z, int k) const;
    [[nodiscard]] ExtReal mean_log_ratio(double z, double lambda) const;
    [[nodiscard]] ExtReal mean_ratio(double z, double lambda) const;
    [[nodiscard]] ExtReal var_inv(double z) const;

    /// H(nu | base).
    [[nodiscard]] ExtReal entropy_vs_base() const;

    [[nodiscard]] const ParameterLaw& base() const { return base_; }
    [[nodiscard]] bool has_exact_law() const { return exact_.has_value(); }
    /// Exact projection onto the closed variant set; discrete bases only.
    [[nodiscard]] const ParameterLaw& exact_law() const;

private:
    TiltedLaw(ParameterLaw base, bool mean_tilt, double p, double q);
    [[nodiscard]] double weight_u(double u) const;
    ParameterLaw base_;
    bool mean_tilt_;
    double p_ = 0.0, q_ = 0.0;  // ratio weight (x+p)/(x+q)
    double norm_ = 1.0;         // E_base[w]
    std::optional<ParameterLaw> exact_;
};

inline TiltedLaw tilt_ratio(const ParameterLaw& law, double z, double lambda) {
    return TiltedLaw::ratio(law, z, lambda);
}
inline TiltedLaw tilt_mean(const ParameterLaw& law) { return TiltedLaw::size_biased(law); }

// Free-function forms so generic code can take either law type.
inline double ess_inf(const ParameterLaw& law) { return law.ess_inf(); }
inline double ess_inf(const TiltedLaw& law) { return law.ess_inf(); }
inline ExtReal mean_inv_pow(const TiltedLaw& law, double z, int k) {
    return law.mean_inv_pow(z, k);
}
inline ExtReal mean_log_ratio(const TiltedLaw& law, double z, double lambda) {
    return law.mean_log_ratio(z, lambda);
}
inline ExtReal mean_ratio(const TiltedLaw& law, double z, double lambda) {
    return law.mean_ratio(z, lambda);
}

}  // namespace cgmldp
