#include <doctest.h>

#include <cmath>

#include "cgmldp/errors.hpp"
#include "cgmldp/lyapunov.hpp"
#include "oracles.hpp"

using namespace cgmldp;

namespace {
const ParameterLaw kHalf = ParameterLaw::point_mass(0.5);
const ParameterLaw kOne = ParameterLaw::point_mass(1.0);
const ParameterLaw kTwoPoint = ParameterLaw::discrete({{1.0, 0.5}, {2.0, 0.5}});
const ParameterLaw kPoly = ParameterLaw::poly(1.0, 2.0, 3);
const ParameterLaw kPoly1 = ParameterLaw::poly(1.0, 2.0, 1);
}  // namespace

TEST_SUITE("lyapunov") {

TEST_CASE("quenched examples") {
    const LyapunovPoint pt = quenched_L(kHalf, kHalf, {1, 1}, 0.5);
    CHECK(pt.value.finite() == doctest::Approx(2.0 * std::log(3.0)).epsilon(1e-12));
    CHECK(pt.zhat == doctest::Approx(-0.25).epsilon(1e-9));
    CHECK(pt.boundary == ZBoundary::Interior);

    CHECK(quenched_L(kTwoPoint, kPoly, {1, 2}, 0.0).value.finite() == 0.0);
    CHECK(quenched_L(kHalf, kHalf, {1, 1}, 1.5).value.is_infinite());
    CHECK(quenched_L(kHalf, kHalf, {1, 1}, 1.0).value.is_infinite());  // log 0 in the C1 formula
    CHECK(quenched_L(kHalf, kHalf, {1, 1}, 1.0).boundary == ZBoundary::AtLambdaEndpoint);
    CHECK_THROWS_AS(quenched_L(kHalf, kHalf, {1, 1}, -0.1), DomainError);
}

TEST_CASE("annealed equals quenched for point masses") {
    for (double lam : {0.1, 0.4, 0.8, 0.99}) {
        const double q = quenched_L(kHalf, kHalf, {1, 2}, lam).value.finite();
        const double a = annealed_L(kHalf, kHalf, {1, 2}, lam).value.finite();
        CHECK(a == doctest::Approx(q).epsilon(1e-12));
    }
    CHECK(annealed_L(kTwoPoint, kOne, {1, 1}, 0.0).value.finite() == 0.0);
}

TEST_CASE("annealed dominates quenched (Jensen)") {
    for (double lam : {0.2, 0.5, 1.0, 1.5}) {
        const double q = quenched_L(kTwoPoint, kOne, {1, 1}, lam).value.finite();
        const double a = annealed_L(kTwoPoint, kOne, {1, 1}, lam).value.finite();
        CHECK(a >= q - 1e-12);
        CHECK(a > q);  // alpha nondegenerate
    }
}

TEST_CASE("critical lambdas") {
    // point masses: both edge moments diverge, so the conditions never hold
    const CriticalLambdas cl = critical_lambdas(Kind::Quenched, kHalf, kHalf, {1, 1});
    CHECK(cl.lambda1 == 1.0);
    CHECK(cl.lambda2 == 1.0);
    CHECK(cl.lambda0 == 1.0);

    // linear-a direction: the boundary condition already holds as lambda -> 0
    const CriticalLambdas lin = critical_lambdas(Kind::Quenched, kPoly, kOne, {1, 10});
    CHECK(lin.lambda1 <= 1e-9);
    CHECK(lin.lambda2 == 2.0);

    // interior threshold strictly between for t between c1 boundary and concave center
    const CriticalLambdas mid = critical_lambdas(Kind::Quenched, kPoly, kOne, {1, 6});
    CHECK(mid.lambda1 > 1e-6);
    CHECK(mid.lambda1 < 2.0);
    // at lambda1 the minimizer transitions to the boundary
    const double eps = 1e-6;
    CHECK(quenched_L(kPoly, kOne, {1, 6}, mid.lambda1 + eps).boundary ==
          ZBoundary::AtMinusAlpha);
    CHECK(quenched_L(kPoly, kOne, {1, 6}, mid.lambda1 - eps).boundary == ZBoundary::Interior);

    // never both interior
    for (const auto* cfg : {&cl, &lin, &mid}) {
        const double sum = 2.0 - (cfg == &cl ? 1.0 : 0.0);
        CHECK((cfg->lambda1 >= sum - 1e-9 || cfg->lambda2 >= sum - 1e-9));
    }
}

TEST_CASE("L_prime closed forms and limits") {
    // lambda -> 0+ recovers the shape value
    for (Kind kind : {Kind::Quenched, Kind::Annealed}) {
        const double lp0 = L_prime(kind, kTwoPoint, kOne, {1, 9}, 1e-8);
        const double g = shape_function(kTwoPoint, kOne, {1, 9}).g;
        CHECK(lp0 == doctest::Approx(g).epsilon(1e-6));
    }
    // g_{zhat+lambda} for the symmetric point-mass pair
    CHECK(L_prime(Kind::Quenched, kHalf, kHalf, {1, 1}, 0.5) ==
          doctest::Approx(16.0 / 3.0).epsilon(1e-9));

    // matches central differences of L in lambda
    for (Kind kind : {Kind::Quenched, Kind::Annealed}) {
        for (double lam : {0.2, 0.7, 1.3}) {
            auto L = [&](double l) {
                return lyapunov(kind, kTwoPoint, kPoly, {1, 2}, l).value.finite();
            };
            const double fd = oracle::central_diff(L, lam, 1e-5);
            CHECK(L_prime(kind, kTwoPoint, kPoly, {1, 2}, lam) ==
                  doctest::Approx(fd).epsilon(1e-6));
        }
    }

    // increasing in lambda (strict convexity of L)
    for (Kind kind : {Kind::Quenched, Kind::Annealed}) {
        double prev = L_prime(kind, kPoly, kOne, {1, 6}, 0.05);
        for (double lam = 0.25; lam < 2.0; lam += 0.2) {
            const double cur = L_prime(kind, kPoly, kOne, {1, 6}, lam);
            CHECK(cur > prev);
            prev = cur;
        }
    }

    // continuous across the regime change at lambda0
    const CriticalLambdas mid = critical_lambdas(Kind::Quenched, kPoly, kOne, {1, 6});
    const double below = L_prime(Kind::Quenched, kPoly, kOne, {1, 6}, mid.lambda0 - 1e-8);
    const double above = L_prime(Kind::Quenched, kPoly, kOne, {1, 6}, mid.lambda0 + 1e-8);
    CHECK(below == doctest::Approx(above).epsilon(1e-6));
}

TEST_CASE("L_prime_endpoint") {
    CHECK(L_prime_endpoint(Kind::Quenched, kHalf, kHalf, {1, 1}).is_infinite());
    CHECK(L_prime_endpoint(Kind::Quenched, kTwoPoint, ParameterLaw::point_mass(2.0), {1, 1})
              .is_infinite());

    // both edge moments finite: the symmetric poly pair, where the branch
    // condition sits exactly at zero and both branches agree
    const ExtReal sym = L_prime_endpoint(Kind::Quenched, kPoly, kPoly, {1, 1});
    const double e_edge = 4.0 / 3.0;  // E[(a-1)^{-1}]
    const double e_far = oracle::interval_inv_pow(kPoly, 1.0, 1);
    CHECK(sym.finite() == doctest::Approx(e_edge + e_far).epsilon(1e-9));
    CHECK(sym.finite() == doctest::Approx(L_prime(Kind::Quenched, kPoly, kPoly, {1, 1},
                                                  2.0 - 1e-6))
                              .epsilon(1e-4));

    // quenched endpoint slope needs only first edge moments; the annealed one
    // also needs second moments, so a degree-1 poly side stays infinite there
    CHECK(L_prime_endpoint(Kind::Quenched, kPoly, kPoly1, {1, 2}).is_finite());
    CHECK(L_prime_endpoint(Kind::Annealed, kPoly, kPoly1, {1, 2}).is_infinite());

    // asymmetric pair picks one branch; the limit of L' agrees
    const ParameterLaw poly2 = ParameterLaw::poly(1.0, 2.0, 2);
    for (Kind kind : {Kind::Quenched, Kind::Annealed}) {
        const ExtReal end = L_prime_endpoint(kind, kPoly, poly2, {1, 2});
        REQUIRE(end.is_finite());
        CHECK(end.finite() == doctest::Approx(L_prime(kind, kPoly, poly2, {1, 2}, 2.0 - 1e-7))
                                  .epsilon(1e-4));
    }
}

TEST_CASE("L_prime in the moving-endpoint regime") {
    // linear-b direction: the inner minimizer rides beta_inf - lambda from
    // lambda ~ 0 on, for both kinds
    const ParameterLaw poly2 = ParameterLaw::poly(1.0, 2.0, 2);
    for (Kind kind : {Kind::Quenched, Kind::Annealed}) {
        for (double lam : {0.5, 1.0, 1.5}) {
            CHECK(lyapunov(kind, kOne, poly2, {13, 1}, lam).boundary ==
                  ZBoundary::AtBetaMinusLambda);
            auto L = [&](double l) {
                return lyapunov(kind, kOne, poly2, {13, 1}, l).value.finite();
            };
            CHECK(L_prime(kind, kOne, poly2, {13, 1}, lam) ==
                  doctest::Approx(oracle::central_diff(L, lam, 1e-5)).epsilon(1e-6));
        }
    }
}

TEST_CASE("stationary Lyapunov exponent") {
    const ExtReal sym = stationary_L(kHalf, kHalf, 0.0, {1, 1}, 0.25);
    CHECK(sym.finite() == doctest::Approx(std::log(2.0) + std::log(1.5)).epsilon(1e-12));

    CHECK(stationary_L(kTwoPoint, kOne, 0.0, {1, 2}, 1e-12).finite() ==
          doctest::Approx(0.0).epsilon(1e-9));

    // domain is open
    CHECK_THROWS_AS(stationary_L(kHalf, kHalf, 0.5, {1, 1}, 0.1), DomainError);
    CHECK_THROWS_AS(stationary_L(kHalf, kHalf, 0.0, {1, 1}, 0.5), DomainError);
    CHECK_THROWS_AS(stationary_L(kHalf, kHalf, 0.0, {1, 1}, 0.0), DomainError);

    // the stationary model dominates the bulk one
    oracle::SplitMix gen(3);
    for (int rep = 0; rep < 10; ++rep) {
        const double z = gen.in(-0.7, 0.7);
        const double lam = gen.in(1e-3, std::min(1.0 + z, 1.0 - z) - 1e-3);
        const double stat = stationary_L(kTwoPoint, kTwoPoint, z, {1, 2}, lam).finite();
        const double bulk = quenched_L(kTwoPoint, kTwoPoint, {1, 2}, lam).value.finite();
        CHECK(stat >= bulk - 1e-10);
    }
}

TEST_CASE("L is nondecreasing and convex in lambda") {
    for (Kind kind : {Kind::Quenched, Kind::Annealed}) {
        for (const ParameterLaw* beta : {&kOne, &kPoly}) {
            std::vector<double> vals;
            for (double lam = 0.0; lam <= 1.81; lam += 0.15)
                vals.push_back(lyapunov(kind, kTwoPoint, *beta, {1, 2}, lam).value.finite());
            for (size_t i = 1; i < vals.size(); ++i) CHECK(vals[i] >= vals[i - 1] - 1e-12);
            for (size_t i = 1; i + 1 < vals.size(); ++i)
                CHECK(vals[i + 1] - vals[i] >= vals[i] - vals[i - 1] - 1e-9);
        }
    }
}

TEST_CASE("L is homogeneous and superadditive in the direction") {
    oracle::SplitMix gen(13);
    for (int rep = 0; rep < 8; ++rep) {
        const double c = gen.in(0.2, 3.0);
        const Direction d{gen.in(0.3, 2.0), gen.in(0.3, 2.0)};
        const Direction e{gen.in(0.3, 2.0), gen.in(0.3, 2.0)};
        const double lam = gen.in(0.05, 1.9);
        const double base = quenched_L(kTwoPoint, kPoly, d, lam).value.finite();
        const double scaled =
            quenched_L(kTwoPoint, kPoly, {c * d.s, c * d.t}, lam).value.finite();
        CHECK(scaled == doctest::Approx(c * base).epsilon(1e-9));
        // concavity plus homogeneity in (s,t) amounts to superadditivity
        const double other = quenched_L(kTwoPoint, kPoly, e, lam).value.finite();
        const double joint =
            quenched_L(kTwoPoint, kPoly, {d.s + e.s, d.t + e.t}, lam).value.finite();
        CHECK(joint >= base + other - 1e-9);
    }
}

TEST_CASE("inner minimizer path") {
    // zhat is nonincreasing with slope in (-1, 0) before lambda0
    const CriticalLambdas cl = critical_lambdas(Kind::Quenched, kTwoPoint, kPoly, {1, 2});
    const double top = std::min(cl.lambda0, 2.0) - 1e-3;
    double prev = quenched_L(kTwoPoint, kPoly, {1, 2}, 1e-4).zhat;
    double lam_prev = 1e-4;
    for (double lam = 0.1; lam < top; lam += 0.1) {
        const double cur = quenched_L(kTwoPoint, kPoly, {1, 2}, lam).zhat;
        const double slope = (cur - prev) / (lam - lam_prev);
        CHECK(slope < 0.0);
        CHECK(slope > -1.0);
        prev = cur;
        lam_prev = lam;
    }

    // interior first-order condition
    for (Kind kind : {Kind::Quenched, Kind::Annealed}) {
        const LyapunovPoint pt = lyapunov(kind, kTwoPoint, kPoly, {1, 2}, 0.8);
        REQUIRE(pt.boundary == ZBoundary::Interior);
        auto F = [&](double z) {
            if (kind == Kind::Quenched)
                return (mean_log_ratio(kTwoPoint, z, 0.8) +
                        2.0 * mean_log_ratio(kPoly, -z - 0.8, 0.8))
                    .finite();
            return (ext_log(mean_ratio(kTwoPoint, z, 0.8)) +
                    2.0 * ext_log(mean_ratio(kPoly, -z - 0.8, 0.8)))
                .finite();
        };
        CHECK(std::abs(oracle::central_diff(F, pt.zhat, 1e-6)) <= 1e-8);
    }

    // the lambda -> 0 limit of zhat is the shape minimizer
    CHECK(quenched_L(kTwoPoint, kPoly, {1, 2}, 1e-9).zhat ==
          doctest::Approx(shape_function(kTwoPoint, kPoly, {1, 2}).zeta).epsilon(1e-4));
}

}  // TEST_SUITE
