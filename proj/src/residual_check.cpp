#include "biwaves/residual_check.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace biwaves {

namespace {

double require(const std::optional<double>& v, const char* name) {
    if (!v) {
        throw MissingDerivatives(std::string("field sample is missing ") + name);
    }
    return *v;
}

}  // namespace

double bi_residual(const FieldSample& sample, double b) {
    if (!(b > 0.0) || !std::isfinite(b)) {
        throw std::invalid_argument("bi_residual: b must be positive and finite");
    }
    const double ux = require(sample.ux, "ux");
    const double ut = require(sample.ut, "ut");
    const double uxx = require(sample.uxx, "uxx");
    const double utt = require(sample.utt, "utt");
    const double uxt = require(sample.uxt, "uxt");
    const double ib2 = 1.0 / (b * b);
    return (1.0 - ut * ut * ib2) * uxx - (1.0 + ux * ux * ib2) * utt +
           2.0 * ib2 * ux * ut * uxt;
}

double hyperbolicity_margin(const FieldSample& sample, double b) {
    if (!(b > 0.0) || !std::isfinite(b)) {
        throw std::invalid_argument("hyperbolicity_margin: b must be positive and finite");
    }
    const double ux = require(sample.ux, "ux");
    const double ut = require(sample.ut, "ut");
    return 1.0 + (ux * ux - ut * ut) / (b * b);
}

FieldSample fd_derivatives(const std::function<double(double, double)>& sampler,
                           double x, double t, double hx, double ht) {
    if (!sampler) {
        throw std::invalid_argument("fd_derivatives: sampler is empty");
    }
    if (!(hx > 0.0) || !(ht > 0.0)) {
        throw std::invalid_argument("fd_derivatives: step sizes must be positive");
    }
    FieldSample s;
    s.x = x;
    s.t = t;
    s.u = sampler(x, t);
    const double fpx = sampler(x + hx, t);
    const double fmx = sampler(x - hx, t);
    const double fpt = sampler(x, t + ht);
    const double fmt = sampler(x, t - ht);
    const double fpp = sampler(x + hx, t + ht);
    const double fpm = sampler(x + hx, t - ht);
    const double fmp = sampler(x - hx, t + ht);
    const double fmm = sampler(x - hx, t - ht);
    s.ux = (fpx - fmx) / (2.0 * hx);
    s.ut = (fpt - fmt) / (2.0 * ht);
    s.uxx = (fpx - 2.0 * s.u + fmx) / (hx * hx);
    s.utt = (fpt - 2.0 * s.u + fmt) / (ht * ht);
    s.uxt = (fpp - fpm - fmp + fmm) / (4.0 * hx * ht);
    s.source = FieldSample::Source::external;
    return s;
}

ResidualReport residual_scan_fd(const std::function<double(double, double)>& sampler,
                                double b, double x0, double x1, int nx, double t0,
                                double t1, int nt, double hx, double ht,
                                double normalization) {
    if (nx < 2 || nt < 2) {
        throw std::invalid_argument("residual_scan_fd: need at least a 2x2 grid");
    }
    if (!(normalization > 0.0)) {
        throw std::invalid_argument("residual_scan_fd: normalization must be positive");
    }
    ResidualReport rep;
    rep.gridX = nx;
    rep.gridT = nt;
    rep.hx = hx;
    rep.ht = ht;
    double worst = 0.0;
    double minMargin = std::numeric_limits<double>::infinity();
    for (int i = 0; i < nx; ++i) {
        const double x = x0 + (x1 - x0) * (i + 0.5) / nx;
        for (int j = 0; j < nt; ++j) {
            const double t = t0 + (t1 - t0) * (j + 0.5) / nt;
            const FieldSample s = fd_derivatives(sampler, x, t, hx, ht);
            const double r = std::abs(bi_residual(s, b));
            if (r > worst) worst = r;
            const double m = hyperbolicity_margin(s, b);
            if (m < minMargin) minMargin = m;
        }
    }
    rep.maxAbsResidual = worst / normalization;
    rep.minMargin = minMargin;
    return rep;
}

}  // namespace biwaves
