#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "biwaves/minimal_surface.hpp"

using namespace biwaves;

namespace {
constexpr double kPi = std::numbers::pi;

InitialCondition generic_ic() {
    InitialCondition ic;
    ic.aSine = {0.2, 0.0, 0.05};
    ic.v0Sine = {0.1, 0.02};
    ic.L = kPi;
    return ic;
}
}  // namespace

TEST_CASE("momentum densities: rest state and a worked point") {
    const MomentumDensity rest = momentum_densities(0.0, 0.0);
    CHECK(rest.pt == 1.0);
    CHECK(rest.px == 0.0);
    CHECK(rest.pz == 0.0);

    // a' = 0.3, v0 = 0.4: s = sqrt(1 + 0.09 - 0.16) = sqrt(0.93)
    const double s = std::sqrt(0.93);
    const MomentumDensity m = momentum_densities(0.3, 0.4);
    CHECK(m.pt == doctest::Approx(1.09 / s).epsilon(1e-14));
    CHECK(m.px == doctest::Approx(-0.12 / s).epsilon(1e-14));
    CHECK(m.pz == doctest::Approx(0.4 / s).epsilon(1e-14));
}

TEST_CASE("momentum densities reject non-hyperbolic slope data") {
    CHECK_THROWS_AS(momentum_densities(0.0, 1.0), HyperbolicityViolation);
    CHECK_THROWS_AS(momentum_densities(0.5, 1.2), HyperbolicityViolation);
    try {
        momentum_densities(0.0, 1.5, 0.25);
    } catch (const HyperbolicityViolation& e) {
        CHECK(e.lambda == 0.25);
        CHECK(e.margin == doctest::Approx(1.0 - 2.25).epsilon(1e-14));
    }
}

TEST_CASE("initial condition profile helpers match their series") {
    InitialCondition ic = generic_ic();
    ic.backgroundB = 0.3;
    for (double x : {-1.7, 0.0, 0.4, 2.9}) {
        const double a = 0.3 * x + 0.2 * std::sin(x) + 0.05 * std::sin(3 * x);
        const double ap = 0.3 + 0.2 * std::cos(x) + 0.15 * std::cos(3 * x);
        const double v = 0.1 * std::sin(x) + 0.02 * std::sin(2 * x);
        CHECK(ic.a(x) == doctest::Approx(a).epsilon(1e-14));
        CHECK(ic.aprime(x) == doctest::Approx(ap).epsilon(1e-14));
        CHECK(ic.v0(x) == doctest::Approx(v).epsilon(1e-14));
        // derivative consistency against central differences
        const double h = 1e-6;
        CHECK(ic.aprime(x) ==
              doctest::Approx((ic.a(x + h) - ic.a(x - h)) / (2 * h)).epsilon(1e-7));
    }
}

TEST_CASE("vacuum solution is the identity lightcone map") {
    InitialCondition ic;  // all-zero data, L = pi
    const ParametricSolution ps = build_parametric(ic);
    CHECK(ps.K() == doctest::Approx(kPi).epsilon(1e-14));
    CHECK(ps.minMargin() == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(ps.nullWorst() == doctest::Approx(0.0).epsilon(1e-13));

    const auto p = ps.eval(-0.3, 1.1);
    CHECK(p.t == doctest::Approx((1.1 + 0.3) / 2).epsilon(1e-13));
    CHECK(p.x == doctest::Approx((1.1 - 0.3) / 2).epsilon(1e-13));
    CHECK(p.z == doctest::Approx(0.0).epsilon(1e-13));

    const CharCoords cc = invert(ps, 0.7, 0.25);
    CHECK(cc.alpha == doctest::Approx(0.7 - 0.25).epsilon(1e-11));
    CHECK(cc.beta == doctest::Approx(0.7 + 0.25).epsilon(1e-11));

    const ParametricSample fs = field_at(ps, 0.7, 0.25);
    CHECK(std::abs(fs.u) < 1e-12);
    CHECK(std::abs(fs.ux) < 1e-10);
    CHECK(std::abs(fs.ut) < 1e-10);
    CHECK(fs.margin == doctest::Approx(1.0).epsilon(1e-9));

    const SymmetryReport rep = validate_symmetries(ps);
    CHECK(rep.worst < 1e-11);
}

TEST_CASE("surface evaluation identities") {
    const ParametricSolution ps = build_parametric(generic_ic());

    SUBCASE("equal arguments give the t=0 slice") {
        for (double al : {-2.0, 0.3, 1.9, 5.0}) {
            const auto p = ps.eval(al, al);
            CHECK(p.t == doctest::Approx(0.0).epsilon(1e-13));
            CHECK(p.x == doctest::Approx(al).epsilon(1e-12));
            CHECK(p.z == doctest::Approx(ps.ic().a(al)).epsilon(1e-12));
        }
    }

    SUBCASE("reflection, space shift, time shift") {
        const double al = 0.37, be = 1.62;
        const auto p = ps.eval(al, be);
        const auto pr = ps.eval(-be, -al);
        CHECK(pr.t == doctest::Approx(p.t).epsilon(1e-12));
        CHECK(pr.x == doctest::Approx(-p.x).epsilon(1e-12));
        CHECK(pr.z == doctest::Approx(-p.z).epsilon(1e-12));

        const double twoL = 2 * ps.L();
        const auto px2 = ps.eval(al + twoL, be + twoL);
        CHECK(px2.t == doctest::Approx(p.t).epsilon(1e-12));
        CHECK(px2.x == doctest::Approx(p.x + twoL).epsilon(1e-12));
        CHECK(px2.z == doctest::Approx(p.z).epsilon(1e-12));

        const auto pt2 = ps.eval(al - twoL, be + twoL);
        CHECK(pt2.t == doctest::Approx(p.t + 2 * ps.K()).epsilon(1e-12));
        CHECK(pt2.x == doctest::Approx(p.x).epsilon(1e-12));
        CHECK(pt2.z == doctest::Approx(p.z).epsilon(1e-12));
    }

    SUBCASE("antiderivative wraps by full-period constants") {
        const double twoL = 2 * ps.L();
        for (double lam : {0.1, 1.3, 4.0}) {
            CHECK(ps.prefix(0, lam + twoL) ==
                  doctest::Approx(ps.prefix(0, lam) + 2 * ps.K()).epsilon(1e-12));
        }
        CHECK(ps.prefix(0, twoL) == doctest::Approx(2 * ps.K()).epsilon(1e-13));
        // standing-wave data: the x and z components close over a period
        CHECK(ps.prefix(1, twoL) == doctest::Approx(0.0).epsilon(1e-13));
        CHECK(ps.prefix(2, twoL) == doctest::Approx(0.0).epsilon(1e-13));
    }
}

TEST_CASE("characteristic inversion round-trips random points") {
    const ParametricSolution ps = build_parametric(generic_ic());
    std::mt19937 rng(12345u);
    std::uniform_real_distribution<double> dal(-3.0, 3.0);
    std::uniform_real_distribution<double> dwid(0.0, 5.0);
    for (int i = 0; i < 50; ++i) {
        const double al = dal(rng);
        const double be = al + dwid(rng);
        const auto p = ps.eval(al, be);
        const CharCoords cc = invert(ps, p.x, p.t);
        CHECK(cc.alpha == doctest::Approx(al).epsilon(1e-8));
        CHECK(cc.beta == doctest::Approx(be).epsilon(1e-8));
        const ParametricSample fs = field_at(ps, p.x, p.t);
        CHECK(fs.u == doctest::Approx(p.z).epsilon(1e-9));
    }
}

TEST_CASE("field matches its initial data") {
    const InitialCondition ic = generic_ic();
    const ParametricSolution ps = build_parametric(ic);
    for (double x : {0.2, 0.9, 1.7, 2.8}) {
        const ParametricSample s = field_at(ps, x, 0.0);
        CHECK(s.u == doctest::Approx(ic.a(x)).epsilon(1e-9));
        CHECK(s.ut == doctest::Approx(ic.v0(x)).epsilon(1e-8));
        CHECK(s.ux == doctest::Approx(ic.aprime(x)).epsilon(1e-8));
    }
}

TEST_CASE("symmetry validation passes for generic standing-wave data") {
    const ParametricSolution ps = build_parametric(generic_ic());
    const SymmetryReport rep = validate_symmetries(ps);
    CHECK(rep.antisymmetry < 1e-10);
    CHECK(rep.xShift < 1e-10);
    CHECK(rep.tShift < 1e-10);
    CHECK(rep.dirichlet < 1e-10);
    CHECK(rep.worst < 1e-9);
}

TEST_CASE("field scale b multiplies the field but not the geometry") {
    InitialCondition base = generic_ic();
    InitialCondition scaled = base;
    const double b = 2.5;
    for (auto& c : scaled.aSine) c *= b;
    for (auto& c : scaled.v0Sine) c *= b;
    scaled.b = b;

    const ParametricSolution p1 = build_parametric(base);
    const ParametricSolution pb = build_parametric(scaled);
    CHECK(pb.K() == doctest::Approx(p1.K()).epsilon(1e-13));
    for (double x : {0.4, 1.3}) {
        for (double t : {0.0, 0.8}) {
            const ParametricSample s1 = field_at(p1, x, t);
            const ParametricSample sb = field_at(pb, x, t);
            CHECK(sb.u == doctest::Approx(b * s1.u).epsilon(1e-9));
            CHECK(sb.ux == doctest::Approx(b * s1.ux).epsilon(1e-8));
            CHECK(sb.ut == doctest::Approx(b * s1.ut).epsilon(1e-8));
            CHECK(sb.margin == doctest::Approx(s1.margin).epsilon(1e-8));
        }
    }
}

TEST_CASE("quadrature refinement reports failure honestly") {
    QuadratureSpec q;
    q.panels = 8;
    q.nodesPerPanel = 4;
    q.tol = 1e-30;  // unreachable in doubles
    q.maxPanels = 32;
    CHECK_THROWS_AS(build_parametric(generic_ic(), q), QuadratureNotConverged);
}

TEST_CASE("builder validates its configuration") {
    InitialCondition ic = generic_ic();
    QuadratureSpec q;
    q.panels = 4;
    CHECK_THROWS_AS(build_parametric(ic, q), std::invalid_argument);
    q = {};
    q.nodesPerPanel = 2;
    CHECK_THROWS_AS(build_parametric(ic, q), std::invalid_argument);
    q = {};
    q.tol = 0.0;
    CHECK_THROWS_AS(build_parametric(ic, q), std::invalid_argument);
    ic.L = 0.0;
    CHECK_THROWS_AS(build_parametric(ic, {}), std::invalid_argument);
    ic = generic_ic();
    ic.b = -1.0;
    CHECK_THROWS_AS(build_parametric(ic, {}), std::invalid_argument);
}

TEST_CASE("initial data that breaks hyperbolicity is rejected at build time") {
    InitialCondition ic;
    ic.v0Sine = {1.5};  // |u_t| exceeds 1 somewhere at t = 0
    CHECK_THROWS_AS(build_parametric(ic), HyperbolicityViolation);
}

TEST_CASE("sine projection of function-valued data") {
    const double L = kPi;
    auto a = [](double x) { return 0.3 * std::sin(x) + 0.01 * std::sin(3 * x); };
    auto v = [](double x) { return 0.05 * std::sin(2 * x); };
    const InitialCondition ic = ic_from_functions(a, v, L, 0.0, 1.0, 8);
    REQUIRE(ic.aSine.size() == 8);
    CHECK(ic.aSine[0] == doctest::Approx(0.3).epsilon(1e-12));
    CHECK(ic.aSine[1] == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(ic.aSine[2] == doctest::Approx(0.01).epsilon(1e-12));
    CHECK(ic.v0Sine[1] == doctest::Approx(0.05).epsilon(1e-12));
    for (double x : {0.3, 1.1, 2.6}) {
        CHECK(ic.a(x) == doctest::Approx(a(x)).epsilon(1e-10));
        CHECK(ic.v0(x) == doctest::Approx(v(x)).epsilon(1e-10));
    }

    // even profile: fails the oddness check
    CHECK_THROWS_AS(
        ic_from_functions([](double x) { return std::cos(x); }, nullptr, L),
        SymmetryViolation);
    // wrong period: sin(x/2) is not 2L-periodic on L = pi
    CHECK_THROWS_AS(
        ic_from_functions([](double x) { return std::sin(0.5 * x); }, nullptr, L),
        SymmetryViolation);
}

TEST_CASE("mode-expansion snapshot builds consistent initial data") {
    LindstedtSolution sol = solve_order(3);
    const double eps = 0.2;
    sol.A = eps * sol.b / sol.k;  // keep eps = A k / b consistent
    const InitialCondition ic = lindstedt_initial_condition(sol, eps);
    CHECK(ic.L == doctest::Approx(kPi).epsilon(1e-14));
    // the snapshot must agree with the evaluated mode sum at t = 0
    for (double x : {0.15, 0.8, 1.9, 2.7}) {
        CHECK(ic.a(x) == doctest::Approx(evaluate(sol, x, 0.0, eps)).epsilon(1e-13));
    }
    CHECK(ic.v0(0.9) == 0.0);

    const ParametricSolution ps = build_parametric(ic);
    const SymmetryReport rep = validate_symmetries(ps);
    CHECK(rep.worst < 1e-9);
}
