#include "cgmldp/param_law.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "cgmldp/errors.hpp"
#include "cgmldp/numerics.hpp"

namespace cgmldp {

namespace {

constexpr double kProbTol = 1e-12;

void check_shift(double support_min, double z) {
    if (z < -support_min)
        throw DomainError("shift z below -ess_inf of the law");
}

// E_base[f(u)] for interval laws in the shifted variable u = x - lo, so that
// integrands singular at the left edge are evaluated without cancellation.
double expect_interval(const ParameterLaw& law, const std::function<double(double)>& f) {
    const double span = law.hi() - law.lo();
    if (law.kind() == LawKind::UniformInterval) {
        return numerics::integrate([&](double u) { return f(u) / span; }, 0.0, span);
    }
    const int k = law.degree();
    const double c = (k + 1) / std::pow(span, k + 1);
    return numerics::integrate([&](double u) { return f(u) * c * std::pow(u, k); }, 0.0, span);
}

// Density exponent at the left edge: u^k for PolyInterval, u^0 for Uniform.
int density_exponent(const ParameterLaw& law) {
    return law.kind() == LawKind::PolyInterval ? law.degree() : 0;
}

}  // namespace

ParameterLaw ParameterLaw::point_mass(double x) {
    if (!(x > 0.0) || !std::isfinite(x)) throw DomainError("point mass location must be positive");
    ParameterLaw law;
    law.kind_ = LawKind::PointMass;
    law.atoms_ = {{x, 1.0}};
    return law;
}

ParameterLaw ParameterLaw::discrete(std::vector<Atom> atoms) {
    double total = 0.0;
    for (const Atom& a : atoms) {
        if (!(a.x > 0.0) || !std::isfinite(a.x))
            throw DomainError("discrete law atoms must be positive reals");
        if (a.p < 0.0) throw DomainError("discrete law probabilities must be nonnegative");
        total += a.p;
    }
    if (std::abs(total - 1.0) > kProbTol)
        throw DomainError("discrete law probabilities must sum to 1 within 1e-12");
    std::erase_if(atoms, [](const Atom& a) { return a.p == 0.0; });
    if (atoms.empty()) throw DomainError("discrete law needs at least one atom");
    std::sort(atoms.begin(), atoms.end(), [](const Atom& a, const Atom& b) { return a.x < b.x; });
    for (size_t i = 1; i < atoms.size(); ++i)
        if (atoms[i].x == atoms[i - 1].x) throw DomainError("discrete law atoms must be distinct");
    for (Atom& a : atoms) a.p /= total;
    ParameterLaw law;
    law.kind_ = atoms.size() == 1 ? LawKind::PointMass : LawKind::FiniteDiscrete;
    law.atoms_ = std::move(atoms);
    return law;
}

ParameterLaw ParameterLaw::uniform(double lo, double hi) {
    if (!(lo > 0.0) || !(hi > lo)) throw DomainError("uniform law requires 0 < lo < hi");
    ParameterLaw law;
    law.kind_ = LawKind::UniformInterval;
    law.lo_ = lo;
    law.hi_ = hi;
    return law;
}

ParameterLaw ParameterLaw::poly(double lo, double hi, int degree) {
    if (!(lo > 0.0) || !(hi > lo)) throw DomainError("poly law requires 0 < lo < hi");
    if (degree < 0) throw DomainError("poly law degree must be nonnegative");
    ParameterLaw law;
    law.kind_ = LawKind::PolyInterval;
    law.lo_ = lo;
    law.hi_ = hi;
    law.degree_ = degree;
    return law;
}

double ParameterLaw::ess_inf() const {
    return is_discrete() ? atoms_.front().x : lo_;
}

const std::vector<Atom>& ParameterLaw::atoms() const {
    if (!is_discrete()) throw DomainError("atoms() requires a discrete law");
    return atoms_;
}

double ParameterLaw::lo() const { return lo_; }
double ParameterLaw::hi() const { return hi_; }
int ParameterLaw::degree() const { return degree_; }

double ParameterLaw::mean() const {
    switch (kind_) {
        case LawKind::PointMass:
            return atoms_[0].x;
        case LawKind::FiniteDiscrete: {
            double m = 0.0;
            for (const Atom& a : atoms_) m += a.p * a.x;
            return m;
        }
        case LawKind::UniformInterval:
            return 0.5 * (lo_ + hi_);
        case LawKind::PolyInterval:
            // lo + span * (k+1)/(k+2)
            return lo_ + (hi_ - lo_) * (degree_ + 1) / double(degree_ + 2);
    }
    return 0.0;
}

ExtReal mean_inv_pow(const ParameterLaw& law, double z, int k) {
    if (k < 1) throw DomainError("mean_inv_pow requires k >= 1");
    check_shift(law.ess_inf(), z);
    if (law.is_discrete()) {
        double sum = 0.0;
        for (const Atom& a : law.atoms()) {
            const double base = a.x + z;
            if (base == 0.0) return ExtReal::infinity();
            sum += a.p * std::pow(base, -k);
        }
        return sum;
    }
    const double c = law.lo() + z;
    if (c == 0.0 && k > density_exponent(law)) return ExtReal::infinity();
    return expect_interval(law, [c, k](double u) { return std::pow(u + c, -k); });
}

ExtReal mean_log_ratio(const ParameterLaw& law, double z, double lambda) {
    if (lambda < 0.0) throw DomainError("mean_log_ratio requires lambda >= 0");
    check_shift(law.ess_inf(), z);
    if (lambda == 0.0) return 0.0;
    if (law.is_discrete()) {
        double sum = 0.0;
        for (const Atom& a : law.atoms()) {
            const double base = a.x + z;
            if (base == 0.0) return ExtReal::infinity();
            sum += a.p * std::log1p(lambda / base);
        }
        return sum;
    }
    const double c = law.lo() + z;
    return expect_interval(law, [c, lambda](double u) { return std::log1p(lambda / (u + c)); });
}

ExtReal mean_ratio(const ParameterLaw& law, double z, double lambda) {
    if (lambda < 0.0) throw DomainError("mean_ratio requires lambda >= 0");
    check_shift(law.ess_inf(), z);
    if (lambda == 0.0) return 1.0;
    const ExtReal inv = mean_inv_pow(law, z, 1);
    if (inv.is_infinite()) return inv;
    return 1.0 + lambda * inv.finite();
}

ExtReal var_inv(const ParameterLaw& law, double z) {
    const ExtReal m2 = mean_inv_pow(law, z, 2);
    if (m2.is_infinite()) return m2;
    const double m1 = mean_inv_pow(law, z, 1).finite();
    return std::max(0.0, m2.finite() - m1 * m1);
}

bool inverse_moment_finite(const ParameterLaw& law, int k) {
    if (k < 1) throw DomainError("inverse_moment_finite requires k >= 1");
    if (law.is_discrete()) return false;  // atom at the essential infimum
    return k <= density_exponent(law);
}

ExtReal relative_entropy(const ParameterLaw& nu, const ParameterLaw& mu) {
    if (!nu.is_discrete() || !mu.is_discrete())
        throw DomainError("relative_entropy supports discrete laws only");
    double sum = 0.0;
    for (const Atom& a : nu.atoms()) {
        auto it = std::find_if(mu.atoms().begin(), mu.atoms().end(),
                               [&](const Atom& b) { return b.x == a.x; });
        if (it == mu.atoms().end()) return ExtReal::infinity();
        sum += a.p * std::log(a.p / it->p);
    }
    return std::max(0.0, sum);
}

// ---------------------------------------------------------------------------
// TiltedLaw
// ---------------------------------------------------------------------------

TiltedLaw::TiltedLaw(ParameterLaw base, bool mean_tilt, double p, double q)
    : base_(std::move(base)), mean_tilt_(mean_tilt), p_(p), q_(q) {
    if (mean_tilt_) {
        norm_ = base_.mean();
    } else {
        const ExtReal n = cgmldp::mean_ratio(base_, q_, p_ - q_);
        if (n.is_infinite()) throw DomainError("tilt has an infinite normalizer");
        norm_ = n.finite();
    }
    if (base_.is_discrete()) {
        std::vector<Atom> atoms = base_.atoms();
        for (Atom& a : atoms)
            a.p *= (mean_tilt_ ? a.x : (a.x + p_) / (a.x + q_)) / norm_;
        exact_ = ParameterLaw::discrete(std::move(atoms));
    }
}

TiltedLaw TiltedLaw::ratio(const ParameterLaw& base, double shift, double lambda) {
    if (!(lambda >= 0.0)) throw DomainError("tilt_ratio requires lambda >= 0");
    check_shift(base.ess_inf(), shift);
    return TiltedLaw(base, false, shift + lambda, shift);
}

TiltedLaw TiltedLaw::size_biased(const ParameterLaw& base) { return TiltedLaw(base, true, 0, 0); }

const ParameterLaw& TiltedLaw::exact_law() const {
    if (!exact_) throw DomainError("tilt of a continuous law has no exact projection");
    return *exact_;
}

double TiltedLaw::ess_inf() const { return exact_ ? exact_->ess_inf() : base_.ess_inf(); }

// Order of the pole the tilt weight contributes at the left support edge.
// The ratio weight (x+p)/(x+q) has a simple pole there exactly when q = -lo.
namespace {
int weight_pole(bool mean_tilt, double q, double lo) {
    return (!mean_tilt && q + lo == 0.0) ? 1 : 0;
}
}  // namespace

// Tilt weight in the shifted variable u = x - lo.
double TiltedLaw::weight_u(double u) const {
    if (mean_tilt_) return base_.lo() + u;
    return (u + (base_.lo() + p_)) / (u + (base_.lo() + q_));
}

ExtReal TiltedLaw::mean_inv_pow(double z, int k) const {
    if (exact_) return cgmldp::mean_inv_pow(*exact_, z, k);
    if (k < 1) throw DomainError("mean_inv_pow requires k >= 1");
    check_shift(ess_inf(), z);
    const double lo = base_.lo();
    int pole = weight_pole(mean_tilt_, q_, lo);
    const double c = lo + z;
    if (c == 0.0) pole += k;
    if (pole > density_exponent(base_)) return ExtReal::infinity();
    return expect_interval(base_,
                           [&](double u) { return weight_u(u) * std::pow(u + c, -k); }) /
           norm_;
}

ExtReal TiltedLaw::mean_log_ratio(double z, double lambda) const {
    if (exact_) return cgmldp::mean_log_ratio(*exact_, z, lambda);
    if (lambda < 0.0) throw DomainError("mean_log_ratio requires lambda >= 0");
    check_shift(ess_inf(), z);
    if (lambda == 0.0) return 0.0;
    const double c = base_.lo() + z;
    return expect_interval(
               base_, [&](double u) { return weight_u(u) * std::log1p(lambda / (u + c)); }) /
           norm_;
}

ExtReal TiltedLaw::mean_ratio(double z, double lambda) const {
    if (lambda == 0.0) return 1.0;
    const ExtReal inv = mean_inv_pow(z, 1);
    if (inv.is_infinite()) return inv;
    return 1.0 + lambda * inv.finite();
}

ExtReal TiltedLaw::var_inv(double z) const {
    const ExtReal m2 = mean_inv_pow(z, 2);
    if (m2.is_infinite()) return m2;
    const double m1 = mean_inv_pow(z, 1).finite();
    return std::max(0.0, m2.finite() - m1 * m1);
}

ExtReal TiltedLaw::entropy_vs_base() const {
    if (exact_) return cgmldp::relative_entropy(*exact_, base_);
    const double ew_logw = expect_interval(base_, [&](double u) {
        const double w = weight_u(u);
        return w * std::log(w);
    });
    return std::max(0.0, ew_logw / norm_ - std::log(norm_));
}

}  // namespace cgmldp
