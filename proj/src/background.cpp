#include "biwaves/background.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "biwaves/lindstedt.hpp"
#include "biwaves/residual_check.hpp"

namespace biwaves {

void BackgroundConfig::validate() const {
    if (!std::isfinite(B)) throw std::invalid_argument("background: B must be finite");
    if (!(A >= 0.0) || !std::isfinite(A))
        throw std::invalid_argument("background: A must be >= 0 and finite");
    if (!(k > 0.0) || !std::isfinite(k))
        throw std::invalid_argument("background: k must be positive and finite");
    if (!(b > 0.0) || !std::isfinite(b))
        throw std::invalid_argument("background: b must be positive and finite");
}

MagneticFirstOrder magnetic_first_order(const BackgroundConfig& cfg) {
    cfg.validate();
    if (!(cfg.A > 0.0)) {
        throw std::invalid_argument("magnetic_first_order: A must be positive");
    }
    const double eps = cfg.A * cfg.k / cfg.b;
    const double ratio = cfg.B / (cfg.A * cfg.k);
    MagneticFirstOrder out;
    out.omegaSqOverKSq = 1.0 - (0.25 + ratio * ratio) * eps * eps;
    out.omegaSqOverKSqAlt = 1.0 - (0.5 + ratio * ratio) * eps * eps;
    // Profile correction in k = 1 units; coefficients are exact binary
    // fractions of the inputs.
    Rational cA(cfg.A);
    cA /= 64;
    Rational cB(cfg.B);
    cB /= Rational(8) * Rational(cfg.k);
    TrigSeries corr;
    corr += TrigSeries::s_nm(1, 3, cA, 2);
    corr += TrigSeries::s_nm(3, 1, cA, 2);
    corr += TrigSeries::s_nm(2, 0, cB, 2);
    out.correction = corr;
    return out;
}

InitialCondition background_ic(double B, const std::vector<double>& tildeASine,
                               const std::vector<double>& v0Sine, double L, double b) {
    if (!std::isfinite(B)) throw std::invalid_argument("background_ic: B must be finite");
    if (!(L > 0.0) || !std::isfinite(L))
        throw std::invalid_argument("background_ic: L must be positive and finite");
    if (!(b > 0.0) || !std::isfinite(b))
        throw std::invalid_argument("background_ic: b must be positive and finite");
    for (double c : tildeASine) {
        if (!std::isfinite(c))
            throw std::invalid_argument("background_ic: non-finite profile coefficient");
    }
    for (double c : v0Sine) {
        if (!std::isfinite(c))
            throw std::invalid_argument("background_ic: non-finite velocity coefficient");
    }
    InitialCondition ic;
    ic.aSine = tildeASine;
    ic.v0Sine = v0Sine;
    ic.L = L;
    ic.backgroundB = B;
    ic.b = b;
    return ic;
}

double period_ratio(const InitialCondition& ic, const QuadratureSpec& quad) {
    const ParametricSolution ps = build_parametric(ic, quad);
    return ps.K() / ps.L();
}

double effective_metric_velocity(double B, double b) {
    if (!(b > 0.0) || !std::isfinite(b))
        throw std::invalid_argument("effective_metric_velocity: b must be positive");
    if (!std::isfinite(B))
        throw std::invalid_argument("effective_metric_velocity: B must be finite");
    return b / std::hypot(b, B);
}

namespace {

// Worst pointwise wave-operator residual of the first-order corrected field
// when the squared frequency is forced to W (k = b = 1, A = eps).
double residual_for_wsq(const TrigSeries& uhat, double eps, double W) {
    const double omega = std::sqrt(W);
    const TrigSeries dx = uhat.diff_x();
    const TrigSeries dt = uhat.diff_t();
    const TrigSeries dxx = dx.diff_x();
    const TrigSeries dtt = dt.diff_t();
    const TrigSeries dxt = dx.diff_t();
    const double A = eps;
    double worst = 0.0;
    const int n = 64;
    for (int i = 0; i < n; ++i) {
        const double x = 2.0 * std::numbers::pi * (i + 0.5) / n;
        for (int j = 0; j < n; ++j) {
            const double phi = 2.0 * std::numbers::pi * (j + 0.5) / n;
            const double t = phi / omega;
            FieldSample s;
            s.x = x;
            s.t = t;
            s.u = A * uhat.evaluate(x, t, eps, 1.0, omega);
            s.ux = A * dx.evaluate(x, t, eps, 1.0, omega);
            s.ut = A * dt.evaluate(x, t, eps, 1.0, omega);
            s.uxx = A * dxx.evaluate(x, t, eps, 1.0, omega);
            s.utt = A * dtt.evaluate(x, t, eps, 1.0, omega);
            s.uxt = A * dxt.evaluate(x, t, eps, 1.0, omega);
            const double r = std::abs(bi_residual(s, 1.0));
            if (r > worst) worst = r;
        }
    }
    return worst;
}

}  // namespace

FrequencyAdjudication adjudicate_first_order_frequency(double eps) {
    if (!(eps > 0.0) || !(eps < 1.0)) {
        throw std::invalid_argument("adjudicate_first_order_frequency: need 0 < eps < 1");
    }
    const TrigSeries uhat = solve_order(1).normalized_series();
    FrequencyAdjudication adj;
    adj.omegaSqQuarter = 1.0 - 0.25 * eps * eps;
    adj.omegaSqHalf = 1.0 - 0.5 * eps * eps;
    adj.residQuarter = residual_for_wsq(uhat, eps, adj.omegaSqQuarter);
    adj.residHalf = residual_for_wsq(uhat, eps, adj.omegaSqHalf);
    // Golden-section minimization of the worst residual over W.
    double lo = 1.0 - eps * eps;
    double hi = 1.0;
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = hi - gr * (hi - lo);
    double d = lo + gr * (hi - lo);
    double fc = residual_for_wsq(uhat, eps, c);
    double fd = residual_for_wsq(uhat, eps, d);
    for (int iter = 0; iter < 60 && (hi - lo) > 1e-12; ++iter) {
        if (fc < fd) {
            hi = d;
            d = c;
            fd = fc;
            c = hi - gr * (hi - lo);
            fc = residual_for_wsq(uhat, eps, c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + gr * (hi - lo);
            fd = residual_for_wsq(uhat, eps, d);
        }
    }
    adj.omegaSqNumeric = 0.5 * (lo + hi);
    adj.residNumeric = residual_for_wsq(uhat, eps, adj.omegaSqNumeric);
    return adj;
}

}  // namespace biwaves
