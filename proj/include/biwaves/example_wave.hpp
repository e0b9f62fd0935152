#pragma once

#include "biwaves/errors.hpp"
#include "biwaves/minimal_surface.hpp"
#include "biwaves/rational.hpp"

namespace biwaves {

// Closed-form standing-wave example: a one-parameter family of initial
// profiles whose characteristic inversion reduces to the scalar
// transcendental equation xi + eps*sin(xi) = tau (a Kepler-type equation).
struct ExampleConfig {
    double A = 0.1;  // amplitude parameter, > 0
    double shapeB() const { return A / (2.0 + A); }
    void validate() const;
};

// The generating profile in its natural parametrization: odd, with
// a(lambda + 2 pi) = -a(lambda) (full period 4 pi).  The closed form uses
// the principal branch on [-pi, pi] continued by antiperiodicity, which
// also realizes the alternating sign of the square root in the derivative.
double a_closed(double lambda, const ExampleConfig& cfg);
double a_closed_prime(double lambda, const ExampleConfig& cfg);
// leading small-amplitude approximation of a_closed
double a_closed_small_amplitude(double lambda, const ExampleConfig& cfg);

struct FixedPointResult {
    double xi;
    int iterations;
};

// Solve xi + eps*sin(xi) = tau by the contraction xi <- tau - eps*sin(xi).
// Guaranteed for |eps| < 1; throws NotConverged if pushed past that guard
// and the iteration fails to settle.
FixedPointResult xi_fixed_point(double tau, double eps, double tol = 1e-14,
                                int maxIter = 500);

// Truncated inversion series xi = tau + sum_{p=1}^{order} eps^p sum_n
// c_{p,n} sin(n tau).  Coefficients are exact rationals from the Lagrange
// inversion of the defining equation.
double xi_series(double tau, double eps, int order);
// c_{p,n}; zero when n > p or n and p differ in parity
Rational xi_series_coefficient(int p, int n);

// Largest eps for which x = eps*cosh(x) still has a real root (tangency of
// the line and the catenary): x_c solves x*tanh(x) = 1, eps_c = x_c/cosh(x_c).
struct CriticalPoint {
    double epsC, xC;
};
CriticalPoint critical_epsilon();

// Standing wave on the cavity [0, pi] (Dirichlet at both walls):
//   u(x, t) = ( a(2x - zeta) + a(2x + zeta) ) / 4
// with zeta solving zeta + epsHat*sin(zeta) = tauHat,
// tauHat = 2t/(1+A), epsHat = (A/(1+A))*cos(2x).
// Time period 2 pi (1 + A); u(x, 0) is the half-scaled profile a(2x)/2.
double cavity_field(double x, double t, const ExampleConfig& cfg);

// The same initial data as a sine-series InitialCondition (L = pi, b = 1)
// for the parametric builder.
InitialCondition example_initial_condition(const ExampleConfig& cfg, int harmonics = 48);

}  // namespace biwaves
