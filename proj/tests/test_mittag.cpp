#include <catch_amalgamated.hpp>

#include <cmath>

#include "fracspl/verify.hpp"

using namespace fracspl;

TEST_CASE("gamma helpers") {
    CHECK(gamma_fn(0.5) == Catch::Approx(std::sqrt(std::numbers::pi)).epsilon(1e-14));
    CHECK(rgamma(1.0) == Catch::Approx(1.0).epsilon(1e-15));
    CHECK(rgamma(0.0) == 0.0);   // pole
    CHECK(rgamma(-2.0) == 0.0);  // pole
    // reflection: 1/Gamma(-0.5) = -1/(2 sqrt(pi))
    CHECK(rgamma(-0.5) == Catch::Approx(-0.5 / std::sqrt(std::numbers::pi)).epsilon(1e-13));
}

TEST_CASE("two-parameter series against elementary functions") {
    CHECK(ml2(1.0, 1.0, 1.0) == Catch::Approx(std::exp(1.0)).epsilon(1e-14));
    CHECK(ml2(1.0, 1.0, -5.0) == Catch::Approx(std::exp(-5.0)).epsilon(1e-13));
    CHECK(ml2(2.0, 1.0, -4.0) == Catch::Approx(std::cos(2.0)).margin(1e-13));
    CHECK(ml2(0.5, 1.0, 0.0) == 1.0);
    // frozen 60-digit oracles (independent implementation)
    CHECK(ml2(0.5, 1.0, -1.0) == Catch::Approx(0.4275835761558070044).epsilon(1e-13));
    CHECK(ml2(1.0, 2.0, 2.0) == Catch::Approx(3.194528049465325114).epsilon(1e-13));
}

TEST_CASE("deep cancellation escalates to high precision") {
    // e^{-30}: the double series peaks near e^{30}/sqrt(60 pi), sixty decades
    // above the result
    MLQuery q;
    q.alphas = {1.0};
    q.beta = 1.0;
    q.zs = {-30.0};
    const MLResult r = mml_eval_auto(q);
    CHECK(r.high_precision);
    CHECK(r.value == Catch::Approx(9.357622968840174605e-14).epsilon(1e-12));
}

TEST_CASE("multinomial frozen oracles") {
    auto eval = [](std::vector<double> a, double b, std::vector<double> z) {
        MLQuery q;
        q.alphas = std::move(a);
        q.beta = b;
        q.zs = std::move(z);
        return mml_eval_auto(q).value;
    };
    CHECK(eval({1.5, 1.0, 0.5}, 2.0, {-2.0, -1.0, -0.5}) ==
          Catch::Approx(0.3118178572804116150).epsilon(1e-12));
    CHECK(eval({1.5, 1.0, 0.5}, 1.5, {-100.0, -1.0, -0.5}) ==
          Catch::Approx(-1.599384845260769245e-5).epsilon(1e-10));
    CHECK(eval({1.5, 1.0, 0.5}, 1.0, {-8.0, -0.3, -2.0}) ==
          Catch::Approx(-0.07420089526175455663).epsilon(1e-11));
    CHECK(eval({0.75, 0.5}, 1.25, {-3.0, -1.5}) ==
          Catch::Approx(0.1478122016461716756).epsilon(1e-12));
}

TEST_CASE("multinomial reduces to elementary closed forms") {
    MLQuery q;
    q.alphas = {1.0, 1.0};
    q.beta = 1.0;
    q.zs = {0.7, -2.2};
    // E_{(1,1),1}(z1,z2) = e^{z1+z2} (multinomial theorem collapses the blocks)
    CHECK(mml(q) == Catch::Approx(std::exp(-1.5)).epsilon(1e-13));
    q.alphas = {2.0, 2.0};
    // E_{(2,2),1} = cos(sqrt(-(z1+z2))) for negative sums
    CHECK(mml(q) == Catch::Approx(std::cos(std::sqrt(1.5))).epsilon(1e-13));
}

TEST_CASE("m = 1 multinomial equals the two-parameter function") {
    for (double z : {-3.0, -0.25, 0.5, 2.0}) {
        MLQuery q;
        q.alphas = {0.8};
        q.beta = 1.3;
        q.zs = {z};
        CHECK(mml(q) == Catch::Approx(ml2(0.8, 1.3, z)).epsilon(1e-14));
    }
}

TEST_CASE("argument order does not matter") {
    MLQuery q, p;
    q.alphas = {1.5, 1.0, 0.5};
    q.beta = 1.5;
    q.zs = {-2.0, -1.0, -0.5};
    p.alphas = {0.5, 1.5, 1.0};
    p.beta = 1.5;
    p.zs = {-0.5, -2.0, -1.0};
    CHECK(mml(q) == Catch::Approx(mml(p)).epsilon(1e-12));
}

TEST_CASE("incommensurable exponents use the composition route") {
    MLQuery q;
    q.alphas = {1.0, std::numbers::pi / 3.0};
    q.beta = 1.0;
    q.zs = {-0.5, -0.25};
    const MLResult r = mml_eval(q);
    CHECK_FALSE(r.high_precision);
    CHECK(std::isfinite(r.value));
    // recurrence still holds across the two routes
    double lhs = rgamma(q.beta);
    for (std::size_t j = 0; j < 2; ++j) {
        MLQuery qj = q;
        qj.beta += q.alphas[j];
        lhs += q.zs[j] * mml(qj);
    }
    CHECK(lhs == Catch::Approx(r.value).epsilon(1e-11));
}

TEST_CASE("query validation") {
    MLQuery q;
    CHECK_THROWS_AS(q.validate(), std::invalid_argument);
    q.alphas = {1.0};
    q.zs = {1.0, 2.0};
    CHECK_THROWS_AS(q.validate(), std::invalid_argument);
    q.zs = {1.0};
    q.alphas = {-1.0};
    CHECK_THROWS_AS(q.validate(), std::invalid_argument);
}

TEST_CASE("degree cap reported as retryable") {
    MLQuery q;
    q.alphas = {0.5};
    q.beta = 1.0;
    q.zs = {-30.0};  // needs far more than 40 lattice degrees
    SeriesControl tight;
    tight.max_total_degree = 40;
    CHECK_THROWS_AS(mml_eval(q, tight), DegreeCapError);
    CHECK(std::isfinite(mml_eval_auto(q, tight).value));  // cap growth rescues it
}

TEST_CASE("randomized recurrence and bound suites") {
    CHECK(check_mml_recurrence(99, 100).pass);
    CHECK(check_mml_boundedness(1.0).pass);
    CHECK(check_mml_boundedness(1.5).pass);
    CHECK(check_mml_boundedness(2.0).pass);
    CHECK(check_gamma_ratio_bound(99).pass);
    CHECK(check_ml2_positivity(99).pass);
}

TEST_CASE("time-power derivative identity") {
    // d/dt [ t E_{(1),2}(q t) ] = E_{(1),1}(q t) for alpha = 1: both sides e^{qt}
    MLTimePower f;
    f.alphas = {1.0};
    f.qs = {-0.7};
    f.beta = 1.0;
    const double t = 0.8;
    CHECK(mml_t_derivative(1.0, f, t) == Catch::Approx(std::exp(-0.7 * t)).epsilon(1e-12));
}
