#pragma once

#include <functional>
#include <optional>

#include "biwaves/errors.hpp"

namespace biwaves {

// Point sample of a candidate field with whatever derivatives the producing
// method could supply.  Second derivatives are optional (analytic paths fill
// them; the parametric path goes through finite differences).
struct FieldSample {
    enum class Source { lindstedt, parametric, example, external };

    double x = 0.0, t = 0.0, u = 0.0;
    std::optional<double> ux, ut, uxx, utt, uxt;
    Source source = Source::external;
};

// Left-hand side of the nonlinear wave equation at the sample:
//   (1 - ut^2/b^2) uxx - (1 + ux^2/b^2) utt + (2/b^2) ux ut uxt
// Throws MissingDerivatives if any required derivative is absent.
double bi_residual(const FieldSample& sample, double b);

// 1 + (ux^2 - ut^2)/b^2; positivity is the caller's decision.
double hyperbolicity_margin(const FieldSample& sample, double b);

// Central O(h^2) stencils for all five derivatives of a scalar sampler.
FieldSample fd_derivatives(const std::function<double(double, double)>& sampler,
                           double x, double t, double hx, double ht);

// Grid sweep of the finite-difference residual and the margin; the residual
// maximum is divided by `normalization` (e.g. A*k^2) so different scales
// stay comparable.  Deterministic for identical inputs.
struct ResidualReport {
    double maxAbsResidual = 0.0;  // normalized
    double minMargin = 0.0;
    int gridX = 0, gridT = 0;
    double hx = 0.0, ht = 0.0;
};

ResidualReport residual_scan_fd(const std::function<double(double, double)>& sampler,
                                double b, double x0, double x1, int nx, double t0,
                                double t1, int nt, double hx, double ht,
                                double normalization);

}  // namespace biwaves
