#include "cgmldp/annealed_entropy.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <vector>

#include "cgmldp/errors.hpp"

namespace cgmldp {

namespace {

constexpr double kOpenMargin = 1e-12;  // strictness margin for the open constraint
constexpr double kGridStep = 1e-3;
constexpr double kRefineStep = 1e-8;

// Probability vectors over n atoms with coordinates on a uniform grid of the
// given step (simplex lattice). Enumeration is deterministic.
void enumerate_simplex(int n, double step, std::vector<std::vector<double>>& out) {
    const int cells = int(std::lround(1.0 / step));
    std::vector<int> counts(n, 0);
    std::vector<double> probs(n, 0.0);
    std::function<void(int, int)> rec = [&](int coord, int remaining) {
        if (coord == n - 1) {
            counts[coord] = remaining;
            for (int i = 0; i < n; ++i) probs[i] = double(counts[i]) / cells;
            out.push_back(probs);
            return;
        }
        for (int c = remaining; c >= 0; --c) {
            counts[coord] = c;
            rec(coord + 1, remaining - c);
        }
    };
    rec(0, cells);
}

struct Candidate {
    std::vector<double> w1;  // weights on alpha's atoms
    std::vector<double> w2;  // weights on beta's atoms
};

ParameterLaw law_from_weights(const std::vector<Atom>& atoms, const std::vector<double>& w) {
    std::vector<Atom> out;
    out.reserve(atoms.size());
    for (size_t i = 0; i < atoms.size(); ++i)
        if (w[i] > 0.0) out.push_back({atoms[i].x, w[i]});
    return ParameterLaw::discrete(std::move(out));
}

double entropy_vs(const std::vector<Atom>& atoms, const std::vector<double>& w) {
    double h = 0.0;
    for (size_t i = 0; i < atoms.size(); ++i)
        if (w[i] > 0.0) h += w[i] * std::log(w[i] / atoms[i].p);
    return std::max(0.0, h);
}

}  // namespace

TiltPair optimal_tilts(const ParameterLaw& alpha, const ParameterLaw& beta, Direction dir,
                       double r) {
    validate(dir);
    if (!(r > shape_function(alpha, beta, dir).g))
        throw DomainError("optimal tilts are defined for r > g(s,t)");
    const RateEval ev = annealed_J(alpha, beta, dir, r);
    const double lam = ev.lambda_star;
    const double zs = ev.z_star;
    TiltedLaw nu1 = tilt_ratio(alpha, zs, lam);
    // (b-z)/(b-z-lam) is the ratio tilt with shift -z-lam.
    TiltedLaw nu2 = tilt_ratio(beta, -zs - lam, lam);
    ExtReal h1 = nu1.entropy_vs_base();
    ExtReal h2 = nu2.entropy_vs_base();
    return {std::move(nu1), std::move(nu2), h1, h2};
}

double entropy_decomposition_residual(const ParameterLaw& alpha, const ParameterLaw& beta,
                                      Direction dir, double r) {
    if (!alpha.is_discrete() || !beta.is_discrete())
        throw DomainError("entropy decomposition requires discrete base laws");
    const TiltPair tilts = optimal_tilts(alpha, beta, dir, r);
    const double j_ann = annealed_J(alpha, beta, dir, r).value.finite();
    const ExtReal i_tilt = quenched_I(tilts.nu1.exact_law(), tilts.nu2.exact_law(), dir, r);
    const ExtReal rhs = i_tilt + dir.s * tilts.h1 + dir.t * tilts.h2;
    if (!rhs.is_finite()) return std::numeric_limits<double>::infinity();
    return std::abs(j_ann - rhs.finite());
}

ExtReal left_tail_bound(const ParameterLaw& alpha, const ParameterLaw& beta, Direction dir,
                        double x, double y) {
    validate(dir);
    if (!(x < y)) throw DomainError("left_tail_bound requires x < y");
    if (!alpha.is_discrete() || !beta.is_discrete())
        throw DomainError("left_tail_bound requires discrete base laws");
    const std::vector<Atom>& a_atoms = alpha.atoms();
    const std::vector<Atom>& b_atoms = beta.atoms();
    const int na = int(a_atoms.size());
    const int nb = int(b_atoms.size());

    auto feasible = [&](const Candidate& c, double& g_out) {
        const ParameterLaw nu1 = law_from_weights(a_atoms, c.w1);
        const ParameterLaw nu2 = law_from_weights(b_atoms, c.w2);
        g_out = shape_function(nu1, nu2, dir).g;
        return g_out > x + kOpenMargin && g_out < y - kOpenMargin;
    };
    auto objective = [&](const Candidate& c) {
        return dir.s * entropy_vs(a_atoms, c.w1) + dir.t * entropy_vs(b_atoms, c.w2);
    };

    // Dense product grid. The step widens above two free coordinates to keep
    // the cell count bounded; refinement below recovers the lost resolution.
    double step = kGridStep;
    const int free_dims = (na - 1) + (nb - 1);
    while (free_dims > 0 && std::pow(1.0 / step + 1.0, free_dims) > 4.0e6) step *= 4.0;
    std::vector<std::vector<double>> grid1, grid2;
    enumerate_simplex(na, step, grid1);
    enumerate_simplex(nb, step, grid2);

    bool found = false;
    Candidate best;
    double best_obj = std::numeric_limits<double>::infinity();
    double g_tmp = 0.0;
    for (const auto& w1 : grid1) {
        for (const auto& w2 : grid2) {
            Candidate c{w1, w2};
            const double obj = objective(c);
            if (obj >= best_obj) continue;  // min-reduction; order independent
            if (feasible(c, g_tmp)) {
                best = c;
                best_obj = obj;
                found = true;
            }
        }
    }
    if (!found) return ExtReal::infinity();

    // Pattern refinement on the product simplex: move mass h between atom
    // pairs while it improves, shrinking h toward kRefineStep.
    for (double h = step; h >= kRefineStep; h *= 0.5) {
        bool improved = true;
        while (improved) {
            improved = false;
            auto try_moves = [&](std::vector<double> Candidate::* side, int n) {
                for (int i = 0; i < n; ++i) {
                    for (int j = 0; j < n; ++j) {
                        if (i == j || (best.*side)[j] < h) continue;
                        Candidate c = best;
                        (c.*side)[i] += h;
                        (c.*side)[j] -= h;
                        const double obj = objective(c);
                        if (obj < best_obj && feasible(c, g_tmp)) {
                            best = c;
                            best_obj = obj;
                            improved = true;
                        }
                    }
                }
            };
            try_moves(&Candidate::w1, na);
            try_moves(&Candidate::w2, nb);
        }
    }
    return best_obj;
}

MeanTiltComparison mean_tilt_comparison(const ParameterLaw& alpha, const ParameterLaw& beta,
                                        Direction dir) {
    validate(dir);
    if (alpha.is_degenerate())
        throw DomainError("mean tilt comparison requires nondegenerate alpha");
    TiltedLaw nu1 = tilt_mean(alpha);
    const double g_base = shape_function(alpha, beta, dir).g;
    const double g_tilt = nu1.has_exact_law()
                              ? shape_function(nu1.exact_law(), beta, dir).g
                              : shape_function_any(nu1, beta, dir).g;
    return {std::move(nu1), g_tilt, g_base};
}

}  // namespace cgmldp
