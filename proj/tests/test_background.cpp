#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "biwaves/background.hpp"

using namespace biwaves;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("effective metric velocity") {
    CHECK(effective_metric_velocity(0.0, 1.0) == 1.0);
    CHECK(effective_metric_velocity(1.0, 1.0) ==
          doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-15));
    CHECK(effective_metric_velocity(3.0, 4.0) == doctest::Approx(0.8).epsilon(1e-15));
    CHECK_THROWS_AS(effective_metric_velocity(0.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(effective_metric_velocity(0.0, -1.0), std::invalid_argument);
}

TEST_CASE("configuration validation") {
    BackgroundConfig cfg;
    cfg.B = 0.2;
    cfg.A = 0.1;
    CHECK_NOTHROW(cfg.validate());
    cfg.k = 0.0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg = {};
    cfg.b = -2.0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg = {};
    cfg.A = -0.1;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg = {};
    cfg.B = std::nan("");
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    // the first-order closed forms additionally need a wave to perturb
    CHECK_THROWS_AS(magnetic_first_order(BackgroundConfig{0.2, 0.0, 1.0, 1.0}),
                    std::invalid_argument);
}

TEST_CASE("first-order sloped-background closed forms") {
    BackgroundConfig cfg;
    cfg.B = 0.2;
    cfg.A = 0.1;  // eps = 0.1, B/(A k) = 2
    const MagneticFirstOrder m = magnetic_first_order(cfg);
    CHECK(m.omegaSqOverKSq == doctest::Approx(1.0 - 4.25e-2).epsilon(1e-15));
    CHECK(m.omegaSqOverKSqAlt == doctest::Approx(1.0 - 4.50e-2).epsilon(1e-15));

    // correction profile: (A/64)(s_13 + s_31) + (B/(8k)) s_20 at grade eps^2
    auto val = [&](double x, double t, double eps) {
        return m.correction.evaluate(x, t, eps, 1.0, 1.0);
    };
    for (double x : {0.3, 1.2}) {
        for (double t : {0.0, 0.7}) {
            const double want =
                (0.1 / 64) * 2 *
                    (std::sin(x) * std::cos(3 * t) + std::sin(3 * x) * std::cos(t)) +
                (0.2 / 8) * 2 * std::sin(2 * x);
            CHECK(val(x, t, 1.0) == doctest::Approx(want).epsilon(1e-14));
            // the whole correction carries the eps^2 grade
            CHECK(val(x, t, 0.5) == doctest::Approx(0.25 * want).epsilon(1e-14));
        }
    }
    // B = 0 reduces to the single-mode first-order correction shape
    cfg.B = 0.0;
    const MagneticFirstOrder m0 = magnetic_first_order(cfg);
    CHECK(m0.omegaSqOverKSqAlt == doctest::Approx(1.0 - 0.005).epsilon(1e-15));
    CHECK(m0.correction.evaluate(0.4, 0.0, 1.0, 1.0, 1.0) ==
          doctest::Approx((0.1 / 64) * 2 * (std::sin(0.4) + std::sin(1.2))).epsilon(1e-13));
}

TEST_CASE("pure slope: exact period ratio and unit phase speed") {
    for (double b : {1.0, 2.0}) {
        for (double B : {0.3, 1.0, 2.5}) {
            const InitialCondition ic = background_ic(B, {}, {}, kPi, b);
            const double ratio = period_ratio(ic);
            CHECK(ratio == doctest::Approx(std::sqrt(1 + B * B / (b * b))).epsilon(1e-13));
            CHECK(effective_metric_velocity(B, b) * ratio ==
                  doctest::Approx(1.0).epsilon(1e-13));
        }
    }
}

TEST_CASE("initial-condition builder rejects bad inputs") {
    CHECK_THROWS_AS(background_ic(std::nan(""), {}, {}, kPi), std::invalid_argument);
    CHECK_THROWS_AS(background_ic(0.1, {0.2, std::nan("")}, {}, kPi),
                    std::invalid_argument);
    CHECK_THROWS_AS(background_ic(0.1, {}, {1.0 / 0.0}, kPi), std::invalid_argument);
    CHECK_THROWS_AS(background_ic(0.1, {}, {}, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(background_ic(0.1, {}, {}, kPi, -1.0), std::invalid_argument);
}

TEST_CASE("wave on a slope keeps the standing-wave structure") {
    const InitialCondition ic = background_ic(0.3, {0.1, 0.0, 0.02}, {}, kPi);
    const ParametricSolution ps = build_parametric(ic);
    CHECK(ps.K() > ps.L());  // slope stretches the half-period
    const SymmetryReport rep = validate_symmetries(ps);
    CHECK(rep.worst < 1e-9);
}

TEST_CASE("numerical adjudication of the first-order frequency") {
    // The residual decides between the two closed-form variants: at every
    // eps the 1/2-constant wins by a wide margin and the free minimizer
    // lands (nearly) on it.
    for (double eps : {0.05, 0.1, 0.2}) {
        const FrequencyAdjudication adj = adjudicate_first_order_frequency(eps);
        CHECK(adj.residHalf * 20 < adj.residQuarter);
        CHECK(std::abs(adj.omegaSqNumeric - adj.omegaSqHalf) <
              std::abs(adj.omegaSqNumeric - adj.omegaSqQuarter) / 5);
        CHECK(adj.residNumeric <= adj.residHalf * (1 + 1e-9));
        CHECK(adj.omegaSqQuarter == doctest::Approx(1 - 0.25 * eps * eps).epsilon(1e-15));
        CHECK(adj.omegaSqHalf == doctest::Approx(1 - 0.5 * eps * eps).epsilon(1e-15));
    }
    CHECK_THROWS_AS(adjudicate_first_order_frequency(1.0), std::invalid_argument);
    CHECK_THROWS_AS(adjudicate_first_order_frequency(-0.1), std::invalid_argument);
}
