#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "fracspl/spl.hpp"

using namespace fracspl;

namespace {
const ModelParams kRef{0.5, 0.5, 1.0, 1.0, 1.0};      // reference scenario
const ModelParams kRepr{0.5, 1.0, 1.0, 1.0, 1.0};     // representation-equivalence scenario
const double kSigma1 = std::numbers::pi * std::numbers::pi + 1.0;
}  // namespace

TEST_CASE("model parameter validation") {
    CHECK_NOTHROW(kRef.validate());
    CHECK_THROWS_AS((ModelParams{1.5, 0.5, 1.0, 1.0, 1.0}.validate()), std::domain_error);
    CHECK_THROWS_AS((ModelParams{0.5, -0.5, 1.0, 1.0, 1.0}.validate()), std::domain_error);
    CHECK_THROWS_AS((ModelParams{0.5, 0.5, 0.0, 1.0, 1.0}.validate()), std::domain_error);
    CHECK_THROWS_AS((ModelParams{0.5, 0.5, 1.0, 1.0, -1.0}.validate()), std::domain_error);
    CHECK_THROWS_AS(SplCoefficients(kRef, -2.0), std::domain_error);
}

TEST_CASE("argument triple of the mode queries") {
    const SplCoefficients c(kRef, kSigma1);
    const MLQuery q = c.query(0.25, 2.0);
    REQUIRE(q.alphas == std::vector<double>{1.5, 1.0, 0.5});
    CHECK(q.beta == 2.0);
    CHECK(q.zs[0] == Catch::Approx(-kSigma1 / 0.5 * std::pow(0.25, 1.5)).epsilon(1e-14));
    CHECK(q.zs[1] == Catch::Approx(-0.25).epsilon(1e-14));
    CHECK(q.zs[2] == Catch::Approx(-std::pow(0.25, 0.5) / 0.5).epsilon(1e-14));
}

TEST_CASE("kernel vanishes at t = 0") {
    const SplCoefficients c(kRepr, kSigma1);
    CHECK(g_mml(0.0, c) == 0.0);
    CHECK(g_double_sum_eval(0.0, c, 10).value == 0.0);
    CHECK_THROWS_AS(g_mml(-0.1, c), std::domain_error);
}

TEST_CASE("the two kernel representations agree") {
    for (double sigma_mult : {1.0, 4.0}) {
        const double sigma = sigma_mult * std::numbers::pi * std::numbers::pi + 1.0;
        const SplCoefficients c(kRepr, sigma);
        for (double t : {0.1, 0.5, 1.0}) {
            const double closed = g_mml(t, c);
            const double series = g_double_sum(t, c, 400);
            INFO("sigma=" << sigma << " t=" << t);
            CHECK(series == Catch::Approx(closed).epsilon(1e-10));
        }
    }
}

TEST_CASE("double sum reports its truncation honestly") {
    const SplCoefficients c(kRepr, 4.0 * std::numbers::pi * std::numbers::pi + 1.0);
    // far below the ~40 outer terms the tail needs at t = 1
    CHECK_THROWS_AS(g_double_sum(1.0, c, 5), ConvergenceError);
    const DoubleSumResult r = g_double_sum_eval(1.0, c, 400);
    CHECK(r.m_used > 20);
    CHECK(r.tail_estimate < 1e-9 * std::abs(r.value));
}

TEST_CASE("automatic cap growth for stiff modes") {
    // sigma of mode 20 on the unit rod: far outside the default degree cap
    const double sigma = 1.0 + 400.0 * std::numbers::pi * std::numbers::pi;
    const SplCoefficients c(kRef, sigma);
    SeriesControl tight;
    tight.max_total_degree = 100;
    CHECK_THROWS_AS(mml_eval(c.query(1.0, 1.5), tight), DegreeCapError);
    const MLResult r = mml_eval_auto(c.query(1.0, 1.5), tight);
    CHECK(std::isfinite(r.value));
}
