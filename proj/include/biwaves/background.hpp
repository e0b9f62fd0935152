#pragma once

#include <vector>

#include "biwaves/errors.hpp"
#include "biwaves/minimal_surface.hpp"
#include "biwaves/trig_series.hpp"

namespace biwaves {

// Uniform transverse-gradient background of slope B superposed on a
// standing wave of amplitude A, wavenumber k, scale b.
struct BackgroundConfig {
    double B = 0.0;
    double A = 0.0;
    double k = 1.0;
    double b = 1.0;

    void validate() const;
};

// First-order frequency shift and profile correction on the sloped
// background.  The closed form is carried in two variants that differ in
// the slope-independent constant (1/4 vs 1/2); the 1/2 variant agrees with
// the B = 0 single-mode limit, and adjudicate_first_order_frequency()
// measures which constant the field equation itself selects.
struct MagneticFirstOrder {
    double omegaSqOverKSq = 0.0;     // 1 - (1/4 + (B/(A k))^2) eps^2
    double omegaSqOverKSqAlt = 0.0;  // 1 - (1/2 + (B/(A k))^2) eps^2
    TrigSeries correction;           // O(eps^2) profile correction, k = 1 units
};

MagneticFirstOrder magnetic_first_order(const BackgroundConfig& cfg);

// Build a parametric initial condition carrying the background slope:
// a(x) = B*x + sum tildeASine[n-1] sin(n pi x / L), plus optional velocity.
InitialCondition background_ic(double B, const std::vector<double>& tildeASine,
                               const std::vector<double>& v0Sine, double L,
                               double b = 1.0);

// Half-period ratio K/L of the parametric solution for the given initial
// condition; for the pure background (no wave) this equals sqrt(1 + B^2/b^2).
double period_ratio(const InitialCondition& ic, const QuadratureSpec& quad = {});

// Signal speed of small perturbations riding on the uniform slope:
// v = b / sqrt(b^2 + B^2).  Satisfies v * (K/L) = 1 on the pure background.
double effective_metric_velocity(double B, double b);

// Numerical adjudication of the two first-order frequency variants at a
// given eps (B = 0 slice): minimize the pointwise residual of the one-step
// corrected field over omega^2/k^2 and report the residual each variant
// leaves behind.
struct FrequencyAdjudication {
    double omegaSqQuarter = 0.0;  // the 1/4-constant variant
    double omegaSqHalf = 0.0;     // the 1/2-constant variant
    double omegaSqNumeric = 0.0;  // residual-minimizing value
    double residQuarter = 0.0;
    double residHalf = 0.0;
    double residNumeric = 0.0;
};

FrequencyAdjudication adjudicate_first_order_frequency(double eps);

}  // namespace biwaves
