#pragma once

#include <functional>
#include <vector>

#include "biwaves/errors.hpp"
#include "biwaves/lindstedt.hpp"

namespace biwaves {

// Initial data u(x,0) = a(x), u_t(x,0) = v0(x) for the exact parametric
// construction.  The oscillatory parts are finite sine series on the
// half-period L (harmonic i+1 -> sin((i+1) pi x / L)), which makes them odd
// and 2L-periodic by construction; a may additionally carry a linear slope.
// b is the field-strength scale: internally profiles are divided by b (the
// equation for u/b is the unit-scale equation in the same coordinates).
struct InitialCondition {
    std::vector<double> aSine;
    std::vector<double> v0Sine;
    double L = 3.14159265358979323846;
    double backgroundB = 0.0;  // slope of the linear part of a
    double b = 1.0;

    double a(double x) const;
    double aprime(double x) const;
    double v0(double x) const;
};

struct MomentumDensity {
    double pt, px, pz;
};

// Densities from the scaled slopes: pt = (1+a'^2)/s, px = -a'*v0/s,
// pz = v0/s with s = sqrt(1 + a'^2 - v0^2).  Throws HyperbolicityViolation
// when the radicand is <= 0 (lambdaForError only stamps the message).
MomentumDensity momentum_densities(double aprime, double v0,
                                   double lambdaForError = 0.0);
MomentumDensity momentum_densities(const InitialCondition& ic, double lambda);

struct QuadratureSpec {
    int panels = 64;         // >= 8
    int nodesPerPanel = 8;   // >= 4 (Gauss-Legendre)
    double tol = 1e-12;      // relative error target for K under refinement
    int maxPanels = 1 << 14;
};

// Exact solution surface (t, x, z)(alpha, beta) built from one period of
// quadrature data:
//   t = (P_t(beta) - P_t(alpha))/2
//   x = (alpha + beta)/2 + (P_x(beta) - P_x(alpha))/2
//   z = (a(alpha) + a(beta))/2 + (P_z(beta) - P_z(alpha))/2
// where P_c are antiderivatives of the momentum densities from 0.  Outside
// the cached period [0, 2L] the antiderivatives extend by
// P_c(lambda + 2jL) = P_c(lambda) + j * C_c with the full-period constants
// C_t = 2K, C_x, C_z.
class ParametricSolution {
  public:
    struct Point {
        double t, x, z;
    };

    Point eval(double alpha, double beta) const;
    MomentumDensity momenta(double lambda) const;  // scaled units

    double K() const { return K_; }
    double L() const { return ic_.L; }
    double b() const { return ic_.b; }
    const InitialCondition& ic() const { return ic_; }
    double minMargin() const { return minMargin_; }     // min 1 + a'^2 - v0^2 at nodes
    double nullWorst() const { return nullWorst_; }     // worst |(rho' +/- pi)^2| at nodes
    // scaled profile helpers (physical / b)
    double profile(double lambda) const { return ic_.a(lambda) / ic_.b; }
    double profilePrime(double lambda) const { return ic_.aprime(lambda) / ic_.b; }
    double velocity(double lambda) const { return ic_.v0(lambda) / ic_.b; }

    // antiderivative of one momentum component (0 = t, 1 = x, 2 = z)
    double prefix(int component, double lambda) const;

  private:
    friend ParametricSolution build_parametric(const InitialCondition&,
                                               const QuadratureSpec&);
    InitialCondition ic_;
    int panels_ = 0;
    double K_ = 0.0;
    double Cx_ = 0.0, Cz_ = 0.0;  // full-period integrals of px, pz
    double minMargin_ = 0.0;
    double nullWorst_ = 0.0;
    // prefix sums at panel boundaries: prefix_[c][p] = integral over [0, p*h]
    std::vector<double> prefixT_, prefixX_, prefixZ_;
};

ParametricSolution build_parametric(const InitialCondition& ic,
                                    const QuadratureSpec& quad = {});

struct CharCoords {
    double alpha, beta;
};

// Invert (x,t) -> (alpha,beta) by damped Newton on the analytic Jacobian
//   dt/dalpha = -pt(alpha)/2   dt/dbeta = pt(beta)/2
//   dx/dalpha = (1 - px(alpha))/2   dx/dbeta = (1 + px(beta))/2
// seeded from the lightcone guess (x - t L/K, x + t L/K), with a nested
// bisection fallback on the strictly monotone t-direction.
CharCoords invert(const ParametricSolution& ps, double x, double t);

struct ParametricSample {
    double u, ux, ut;
    double margin;  // 1 + (ux^2 - ut^2)/b^2
};

ParametricSample field_at(const ParametricSolution& ps, double x, double t);

// Worst-case violations of the standing-wave structure, all in field/length
// units of order one.  Sampled deterministically.
struct SymmetryReport {
    double antisymmetry;  // eval(-beta,-alpha) vs (t,-x,-z)
    double xShift;        // eval(alpha+2L,beta+2L) vs (t,x+2L,z+2L*slope)
    double tShift;        // eval(alpha-2L,beta+2L) vs (t+2K,x,z)
    double dirichlet;     // |u| at x in {0, L}
    double nullCondition; // |(rho' +/- pi)^2| at quadrature nodes
    double worst;
};

SymmetryReport validate_symmetries(const ParametricSolution& ps, int samples = 64);

// Projection of arbitrary (smooth, odd, 2L-periodic) profiles onto the sine
// representation; checks the symmetry requirements at sampled points first
// and throws SymmetryViolation on failure.  Null functions mean zero.
InitialCondition ic_from_functions(const std::function<double(double)>& a,
                                   const std::function<double(double)>& v0,
                                   double L, double slope = 0.0, double b = 1.0,
                                   int harmonics = 64, double symTol = 1e-9);

// t = 0 snapshot of a frequency-corrected mode solution as initial data
// (all velocity factors vanish at t = 0, so v0 = 0).
InitialCondition lindstedt_initial_condition(const LindstedtSolution& sol, double eps);

}  // namespace biwaves
