#include <doctest.h>

#include <cmath>

#include "cgmldp/annealed_entropy.hpp"
#include "cgmldp/errors.hpp"
#include "oracles.hpp"

using namespace cgmldp;

namespace {
const ParameterLaw kHalf = ParameterLaw::point_mass(0.5);
const ParameterLaw kOne = ParameterLaw::point_mass(1.0);
const ParameterLaw kTwoPoint = ParameterLaw::discrete({{1.0, 0.5}, {2.0, 0.5}});
const ParameterLaw kBeta13 = ParameterLaw::discrete({{1.0, 0.5}, {3.0, 0.5}});
}  // namespace

TEST_SUITE("annealed_entropy") {

TEST_CASE("optimal tilts") {
    const TiltPair trivial = optimal_tilts(kHalf, kHalf, {1, 1}, 6.0);
    CHECK(trivial.nu1.exact_law() == kHalf);
    CHECK(trivial.nu2.exact_law() == kHalf);
    CHECK(trivial.h1.finite() == 0.0);
    CHECK(trivial.h2.finite() == 0.0);

    const TiltPair tp = optimal_tilts(kTwoPoint, kOne, {1, 9}, 7.5);
    const RateEval ev = annealed_J(kTwoPoint, kOne, {1, 9}, 7.5);
    // hand normalization of the ratio weights at (lambda*, z*)
    auto w = [&](double x) { return (x + ev.z_star + ev.lambda_star) / (x + ev.z_star); };
    const double norm = 0.5 * w(1.0) + 0.5 * w(2.0);
    CHECK(tp.nu1.exact_law().atoms()[0].p ==
          doctest::Approx(0.5 * w(1.0) / norm).epsilon(1e-12));
    CHECK(tp.nu1.exact_law().atoms()[0].p == doctest::Approx(0.5872315848504548).epsilon(1e-7));
    CHECK(tp.nu2.exact_law() == kOne);
    CHECK(tp.h2.finite() == 0.0);
    CHECK(tp.h1.finite() > 0.0);

    CHECK_THROWS_AS(optimal_tilts(kTwoPoint, kOne, {1, 9}, 5.0), DomainError);  // r <= g
}

TEST_CASE("entropy decomposition residual is tiny") {
    CHECK(entropy_decomposition_residual(kHalf, kHalf, {1, 1}, 6.0) <= 1e-9);
    CHECK(entropy_decomposition_residual(kTwoPoint, kOne, {1, 9}, 7.5) <= 1e-6);
    CHECK(entropy_decomposition_residual(kTwoPoint, kBeta13, {2, 1},
                                         shape_function(kTwoPoint, kBeta13, {2, 1}).g + 0.5) <=
          1e-6);
}

TEST_CASE("any admissible tilt bounds the annealed rate from above") {
    oracle::SplitMix gen(71);
    const Direction d{1, 9};
    const double g = shape_function(kTwoPoint, kOne, d).g;
    for (double r : {g + 0.3, g + 1.0}) {
        const double j_ann = annealed_J(kTwoPoint, kOne, d, r).value.finite();
        for (int rep = 0; rep < 100; ++rep) {
            const double p = gen.in(1e-3, 1.0 - 1e-3);
            const ParameterLaw nu1 = ParameterLaw::discrete({{1.0, p}, {2.0, 1.0 - p}});
            const ExtReal bound = quenched_I(nu1, kOne, d, r) +
                                  d.s * relative_entropy(nu1, kTwoPoint) + d.t * ExtReal(0.0);
            CHECK(j_ann <= bound.value() + 1e-9);
        }
    }
}

TEST_CASE("the optimal tilt is the unique minimizer") {
    const Direction d{1, 9};
    const double r = 7.5;
    const double j_ann = annealed_J(kTwoPoint, kOne, d, r).value.finite();
    const TiltPair tp = optimal_tilts(kTwoPoint, kOne, d, r);
    const double p_star = tp.nu1.exact_law().atoms()[0].p;
    for (double delta : {-0.05, -0.01, 0.01, 0.05}) {
        const ParameterLaw nu1 =
            ParameterLaw::discrete({{1.0, p_star + delta}, {2.0, 1.0 - p_star - delta}});
        const double objective = quenched_I(nu1, kOne, d, r).value() +
                                 d.s * relative_entropy(nu1, kTwoPoint).finite();
        CHECK(objective > j_ann + 1e-8);
    }
}

TEST_CASE("left tail bound") {
    // an interval containing g costs nothing
    const double g = shape_function(kTwoPoint, kOne, {1, 9}).g;
    CHECK(left_tail_bound(kTwoPoint, kOne, {1, 9}, g - 0.1, g + 0.1).finite() == 0.0);

    // the value gap of the notsharp example: (5.4, 5.5) is unreachable
    CHECK(left_tail_bound(kTwoPoint, kOne, {1, 9}, 5.4, 5.5).is_infinite());

    // (5.3, 5.4) is reached only by the delta_2 tilt, at entropy log 2
    const ExtReal bound = left_tail_bound(kTwoPoint, kOne, {1, 9}, 5.3, 5.4);
    REQUIRE(bound.is_finite());
    CHECK(bound.finite() <= std::log(2.0) + 1e-6);
    CHECK(bound.finite() >= std::log(2.0) - 1e-6);

    // widening the window never increases the bound
    const ExtReal wide = left_tail_bound(kTwoPoint, kOne, {1, 9}, 5.25, 5.45);
    CHECK(wide.value() <= bound.value() + 1e-9);

    CHECK_THROWS_AS(left_tail_bound(kTwoPoint, kOne, {1, 9}, 5.5, 5.4), DomainError);
    CHECK_THROWS_AS(left_tail_bound(ParameterLaw::uniform(0.5, 1.5), kOne, {1, 9}, 5.3, 5.4),
                    DomainError);
}

TEST_CASE("left tail bound refinement beats the raw grid") {
    // target window straddles values between grid points; refinement should
    // still land inside and return a finite entropy cost
    const double g_base = shape_function(kTwoPoint, kOne, {1, 9}).g;
    const ExtReal bound = left_tail_bound(kTwoPoint, kOne, {1, 9}, g_base - 0.37, g_base - 0.36);
    REQUIRE(bound.is_finite());
    // verify feasibility of the reported optimum by rescanning p finely
    bool reachable = false;
    for (double p = 0.0; p <= 1.0; p += 1e-4) {
        std::vector<Atom> atoms;
        if (p > 0.0) atoms.push_back({1.0, p});
        if (p < 1.0) atoms.push_back({2.0, 1.0 - p});
        const double g = shape_function(ParameterLaw::discrete(atoms), kOne, {1, 9}).g;
        if (g > g_base - 0.37 && g < g_base - 0.36) {
            reachable = true;
            const ParameterLaw nu1 = ParameterLaw::discrete(atoms);
            CHECK(bound.finite() <= relative_entropy(nu1, kTwoPoint).finite() + 1e-6);
        }
    }
    CHECK(reachable);
}

TEST_CASE("mean tilt comparison") {
    const MeanTiltComparison cmp = mean_tilt_comparison(kTwoPoint, kOne, {1, 9});
    CHECK(cmp.nu1.exact_law().atoms()[0].p == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
    CHECK(cmp.g_base == doctest::Approx(7.231697671682714).epsilon(1e-9));
    CHECK(cmp.g_tilt == doctest::Approx(6.899588373008395).epsilon(1e-9));
    CHECK(cmp.g_tilt < cmp.g_base);
    CHECK(cmp.nu1.entropy_vs_base().finite() == doctest::Approx(0.0566330122651325).epsilon(1e-9));

    CHECK_THROWS_AS(mean_tilt_comparison(kHalf, kOne, {1, 9}), DomainError);

    // continuous alpha goes through the unprojected tilted-shape route
    const ParameterLaw poly = ParameterLaw::poly(1.0, 2.0, 3);
    const MeanTiltComparison cont = mean_tilt_comparison(poly, kOne, {1, 3});
    CHECK(cont.g_tilt < cont.g_base);
}

}  // TEST_SUITE
