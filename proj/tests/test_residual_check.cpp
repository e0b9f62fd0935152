#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "biwaves/lindstedt.hpp"
#include "biwaves/residual_check.hpp"

using namespace biwaves;

namespace {
FieldSample full_sample() {
    FieldSample s;
    s.ux = 0.3;
    s.ut = 0.2;
    s.uxx = 1.1;
    s.utt = 0.7;
    s.uxt = -0.4;
    return s;
}
}  // namespace

TEST_CASE("residual formula on a worked sample") {
    const FieldSample s = full_sample();
    // b = 2: (1 - 0.01) 1.1 - (1 + 0.0225) 0.7 + 0.5 (0.3)(0.2)(-0.4)
    const double want = 0.99 * 1.1 - 1.0225 * 0.7 + 0.5 * 0.3 * 0.2 * (-0.4);
    CHECK(bi_residual(s, 2.0) == doctest::Approx(want).epsilon(1e-15));
    // b = 1 drops the scale from the nonlinear terms
    const double want1 = (1 - 0.04) * 1.1 - (1 + 0.09) * 0.7 + 2 * 0.3 * 0.2 * (-0.4);
    CHECK(bi_residual(s, 1.0) == doctest::Approx(want1).epsilon(1e-15));
    CHECK_THROWS_AS(bi_residual(s, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(bi_residual(s, -1.0), std::invalid_argument);
}

TEST_CASE("missing derivatives are reported, not defaulted") {
    for (int drop = 0; drop < 5; ++drop) {
        FieldSample s = full_sample();
        switch (drop) {
            case 0: s.ux.reset(); break;
            case 1: s.ut.reset(); break;
            case 2: s.uxx.reset(); break;
            case 3: s.utt.reset(); break;
            case 4: s.uxt.reset(); break;
        }
        CHECK_THROWS_AS(bi_residual(s, 1.0), MissingDerivatives);
    }
    FieldSample s;  // first-derivative-only accessor
    s.ux = 0.3;
    CHECK_THROWS_AS(hyperbolicity_margin(s, 1.0), MissingDerivatives);
}

TEST_CASE("hyperbolicity margin") {
    const FieldSample s = full_sample();
    CHECK(hyperbolicity_margin(s, 1.0) == doctest::Approx(1.05).epsilon(1e-15));
    CHECK(hyperbolicity_margin(s, 2.0) == doctest::Approx(1.0125).epsilon(1e-15));
    CHECK_THROWS_AS(hyperbolicity_margin(s, 0.0), std::invalid_argument);
}

TEST_CASE("finite-difference stencils against analytic derivatives") {
    auto f = [](double x, double t) { return std::sin(2 * x) * std::cos(3 * t); };
    const double x = 0.7, t = 0.4, h = 1e-4;
    const FieldSample s = fd_derivatives(f, x, t, h, h);
    CHECK(s.u == doctest::Approx(f(x, t)).epsilon(1e-15));
    CHECK(*s.ux == doctest::Approx(2 * std::cos(2 * x) * std::cos(3 * t)).epsilon(1e-7));
    CHECK(*s.ut == doctest::Approx(-3 * std::sin(2 * x) * std::sin(3 * t)).epsilon(1e-7));
    CHECK(*s.uxx == doctest::Approx(-4 * f(x, t)).epsilon(1e-6));
    CHECK(*s.utt == doctest::Approx(-9 * f(x, t)).epsilon(1e-6));
    CHECK(*s.uxt ==
          doctest::Approx(-6 * std::cos(2 * x) * std::sin(3 * t)).epsilon(1e-6));

    // linear fields: first derivatives exact, curvatures at roundoff
    auto lin = [](double x_, double t_) { return 3 * x_ - 2 * t_; };
    const FieldSample l = fd_derivatives(lin, 0.3, 0.9, h, h);
    CHECK(*l.ux == doctest::Approx(3.0).epsilon(1e-10));
    CHECK(*l.ut == doctest::Approx(-2.0).epsilon(1e-10));
    CHECK(std::abs(*l.uxx) < 1e-7);
    CHECK(std::abs(*l.utt) < 1e-7);
    CHECK(std::abs(*l.uxt) < 1e-7);

    CHECK_THROWS_AS(fd_derivatives(nullptr, 0, 0, h, h), std::invalid_argument);
    CHECK_THROWS_AS(fd_derivatives(f, 0, 0, 0.0, h), std::invalid_argument);
}

TEST_CASE("exact traveling profile annihilates the operator") {
    // u = f(x - t) solves the equation for any profile and any b
    const double x = 1.3, t = 0.6;
    const double c = 0.3 * std::cos(x - t), s2 = 0.3 * std::sin(x - t);
    FieldSample s;
    s.ux = c;
    s.ut = -c;
    s.uxx = -s2;
    s.utt = -s2;
    s.uxt = s2;
    CHECK(std::abs(bi_residual(s, 1.0)) < 1e-16);
    CHECK(std::abs(bi_residual(s, 0.5)) < 1e-16);
    CHECK(hyperbolicity_margin(s, 1.0) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("mode-expansion samples leave only the truncation residual") {
    LindstedtSolution sol = solve_order(3);
    const double eps = 0.1;
    sol.A = eps;  // b = k = 1
    double worst = 0.0;
    for (int i = 0; i < 8; ++i) {
        for (int j = 0; j < 8; ++j) {
            const double x = 6.283185307179586 * (i + 0.5) / 8;
            const double t = 6.283185307179586 * (j + 0.5) / 8;
            const LindstedtSample ls = evaluate_sample(sol, x, t, eps);
            FieldSample s;
            s.x = x;
            s.t = t;
            s.u = ls.u;
            s.ux = ls.ux;
            s.ut = ls.ut;
            s.uxx = ls.uxx;
            s.utt = ls.utt;
            s.uxt = ls.uxt;
            worst = std::max(worst, std::abs(bi_residual(s, 1.0)));
        }
    }
    CHECK(worst < 1e-8);  // truncation alone: O(eps^(2N+2)) * A
    CHECK(worst > 0.0);
}

TEST_CASE("grid sweep with finite differences") {
    auto traveling = [](double x, double t) { return 0.3 * std::sin(x - t); };
    const ResidualReport rep =
        residual_scan_fd(traveling, 1.0, 0.0, 6.28, 16, 0.0, 6.28, 16, 1e-4, 1e-4, 1.0);
    CHECK(rep.maxAbsResidual < 1e-6);  // finite-difference noise floor
    CHECK(rep.minMargin == doctest::Approx(1.0).epsilon(1e-7));
    CHECK(rep.gridX == 16);
    CHECK(rep.gridT == 16);

    CHECK_THROWS_AS(residual_scan_fd(traveling, 1.0, 0, 1, 1, 0, 1, 16, 1e-4, 1e-4, 1.0),
                    std::invalid_argument);
    CHECK_THROWS_AS(residual_scan_fd(traveling, 1.0, 0, 1, 8, 0, 1, 8, 1e-4, 1e-4, 0.0),
                    std::invalid_argument);
}
