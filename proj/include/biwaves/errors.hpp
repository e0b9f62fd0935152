#pragma once

#include <stdexcept>
#include <string>

namespace biwaves {

// Base class for runtime numerical failures (as opposed to bad arguments /
// bad configs, which throw std::invalid_argument).  The CLI maps
// std::invalid_argument to exit code 2 and NumericalError to exit code 3.
struct NumericalError : std::runtime_error {
    explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
    virtual const char* name() const { return "NumericalError"; }
};

// The mode-coefficient recursion assumes every diagonal lattice coefficient
// (order M, equal space/time indices, index >= 1) has a vanishing source
// term.  If that ever fails the ansatz itself is inconsistent at that order.
struct DiagonalObstruction : NumericalError {
    int order, index;
    DiagonalObstruction(int order_, int index_, const std::string& what)
        : NumericalError(what), order(order_), index(index_) {}
    const char* name() const override { return "DiagonalObstruction"; }
};

// Truncated dispersion sum went non-positive: eps too large for this order.
struct NegativeOmegaSquared : NumericalError {
    double eps, value;
    NegativeOmegaSquared(double eps_, double value_, const std::string& what)
        : NumericalError(what), eps(eps_), value(value_) {}
    const char* name() const override { return "NegativeOmegaSquared"; }
};

// Initial data left the hyperbolic regime: 1 + a'^2 - v0^2 <= 0 somewhere.
struct HyperbolicityViolation : NumericalError {
    double lambda, margin;
    HyperbolicityViolation(double lambda_, double margin_, const std::string& what)
        : NumericalError(what), lambda(lambda_), margin(margin_) {}
    const char* name() const override { return "HyperbolicityViolation"; }
};

struct QuadratureNotConverged : NumericalError {
    double errorEstimate;
    QuadratureNotConverged(double err, const std::string& what)
        : NumericalError(what), errorEstimate(err) {}
    const char* name() const override { return "QuadratureNotConverged"; }
};

struct InversionNotConverged : NumericalError {
    double x, t, residual;
    InversionNotConverged(double x_, double t_, double residual_, const std::string& what)
        : NumericalError(what), x(x_), t(t_), residual(residual_) {}
    const char* name() const override { return "InversionNotConverged"; }
};

// Fixed-point iteration driven outside its contraction region.
struct NotConverged : NumericalError {
    explicit NotConverged(const std::string& what) : NumericalError(what) {}
    const char* name() const override { return "NotConverged"; }
};

// Profile handed to an initial-condition builder fails the required
// antisymmetry / periodicity checks.
struct SymmetryViolation : NumericalError {
    explicit SymmetryViolation(const std::string& what) : NumericalError(what) {}
    const char* name() const override { return "SymmetryViolation"; }
};

struct MissingDerivatives : NumericalError {
    explicit MissingDerivatives(const std::string& what) : NumericalError(what) {}
    const char* name() const override { return "MissingDerivatives"; }
};

}  // namespace biwaves
