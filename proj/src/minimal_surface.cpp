#include "biwaves/minimal_surface.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

namespace biwaves {

namespace {
constexpr double kPi = std::numbers::pi;

struct GaussRule {
    std::vector<double> x, w;  // nodes/weights on [-1, 1]
};

// Gauss-Legendre rule by Newton iteration on the Legendre recurrence.
GaussRule gauss_rule(int n) {
    GaussRule r;
    r.x.resize(n);
    r.w.resize(n);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double z = std::cos(kPi * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int iter = 0; iter < 64; ++iter) {
            double p1 = 1.0, p2 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p3 = p2;
                p2 = p1;
                p1 = ((2 * j + 1) * z * p2 - j * p3) / (j + 1);
            }
            pp = n * (z * p1 - p2) / (z * z - 1.0);
            const double dz = p1 / pp;
            z -= dz;
            if (std::abs(dz) < 1e-15) break;
        }
        r.x[i] = -z;
        r.x[n - 1 - i] = z;
        r.w[i] = r.w[n - 1 - i] = 2.0 / ((1.0 - z * z) * pp * pp);
    }
    return r;
}

const GaussRule& partial_rule() {
    static const GaussRule r = gauss_rule(16);
    return r;
}
}  // namespace

double InitialCondition::a(double x) const {
    double s = backgroundB * x;
    for (std::size_t i = 0; i < aSine.size(); ++i)
        s += aSine[i] * std::sin((i + 1) * kPi * x / L);
    return s;
}

double InitialCondition::aprime(double x) const {
    double s = backgroundB;
    for (std::size_t i = 0; i < aSine.size(); ++i) {
        const double wn = (i + 1) * kPi / L;
        s += aSine[i] * wn * std::cos(wn * x);
    }
    return s;
}

double InitialCondition::v0(double x) const {
    double s = 0.0;
    for (std::size_t i = 0; i < v0Sine.size(); ++i)
        s += v0Sine[i] * std::sin((i + 1) * kPi * x / L);
    return s;
}

MomentumDensity momentum_densities(double aprime, double v0, double lambdaForError) {
    const double m = 1.0 + aprime * aprime - v0 * v0;
    if (!(m > 0.0)) {
        std::ostringstream msg;
        msg << "initial data leaves the hyperbolic regime: 1 + a'^2 - v0^2 = " << m
            << " at lambda = " << lambdaForError;
        throw HyperbolicityViolation(lambdaForError, m, msg.str());
    }
    const double s = std::sqrt(m);
    return {(1.0 + aprime * aprime) / s, -aprime * v0 / s, v0 / s};
}

MomentumDensity momentum_densities(const InitialCondition& ic, double lambda) {
    return momentum_densities(ic.aprime(lambda) / ic.b, ic.v0(lambda) / ic.b, lambda);
}

MomentumDensity ParametricSolution::momenta(double lambda) const {
    return momentum_densities(ic_, lambda);
}

namespace {

struct PanelTables {
    std::vector<double> pt, px, pz;  // prefix sums at panel boundaries
    double minMargin, nullWorst;
};

PanelTables integrate_panels(const InitialCondition& ic, int panels, const GaussRule& g) {
    PanelTables out;
    out.pt.assign(panels + 1, 0.0);
    out.px.assign(panels + 1, 0.0);
    out.pz.assign(panels + 1, 0.0);
    out.minMargin = std::numeric_limits<double>::infinity();
    out.nullWorst = 0.0;
    const double h = 2.0 * ic.L / panels;
    for (int p = 0; p < panels; ++p) {
        const double x0 = p * h;
        double st = 0.0, sx = 0.0, sz = 0.0;
        for (std::size_t q = 0; q < g.x.size(); ++q) {
            const double lam = x0 + 0.5 * h * (1.0 + g.x[q]);
            const double ap = ic.aprime(lam) / ic.b;
            const double v = ic.v0(lam) / ic.b;
            const double margin = 1.0 + ap * ap - v * v;
            out.minMargin = std::min(out.minMargin, margin);
            const MomentumDensity d = momentum_densities(ap, v, lam);
            const double w = 0.5 * h * g.w[q];
            st += w * d.pt;
            sx += w * d.px;
            sz += w * d.pz;
            // null transport vectors rho' -/+ pi must have vanishing
            // Minkowski norm; track the worst numerical violation
            const double n1 = d.pt * d.pt - (1.0 - d.px) * (1.0 - d.px) -
                              (ap - d.pz) * (ap - d.pz);
            const double n2 = d.pt * d.pt - (1.0 + d.px) * (1.0 + d.px) -
                              (ap + d.pz) * (ap + d.pz);
            out.nullWorst = std::max({out.nullWorst, std::abs(n1), std::abs(n2)});
        }
        out.pt[p + 1] = out.pt[p] + st;
        out.px[p + 1] = out.px[p] + sx;
        out.pz[p + 1] = out.pz[p] + sz;
    }
    return out;
}

}  // namespace

ParametricSolution build_parametric(const InitialCondition& ic, const QuadratureSpec& quad) {
    if (quad.panels < 8 || quad.nodesPerPanel < 4)
        throw std::invalid_argument("build_parametric: need >= 8 panels and >= 4 nodes");
    if (!(ic.L > 0.0) || !(ic.b > 0.0))
        throw std::invalid_argument("build_parametric: L and b must be positive");
    if (!(quad.tol > 0.0))
        throw std::invalid_argument("build_parametric: tolerance must be positive");

    const GaussRule g = gauss_rule(quad.nodesPerPanel);

    int panels = quad.panels;
    PanelTables coarse = integrate_panels(ic, panels, g);
    double K = coarse.pt.back() / 2.0;
    double err = std::numeric_limits<double>::infinity();
    PanelTables fine = coarse;
    while (true) {
        if (2 * panels > quad.maxPanels) {
            std::ostringstream msg;
            msg << "quadrature error estimate " << err << " above tolerance " << quad.tol
                << " at the panel cap " << panels;
            throw QuadratureNotConverged(err, msg.str());
        }
        panels *= 2;
        fine = integrate_panels(ic, panels, g);
        const double K2 = fine.pt.back() / 2.0;
        err = std::abs(K2 - K) / std::max(1.0, std::abs(K2));
        K = K2;
        if (err <= quad.tol) break;
        coarse = fine;
    }

    ParametricSolution ps;
    ps.ic_ = ic;
    ps.panels_ = panels;
    ps.K_ = K;
    ps.Cx_ = fine.px.back();
    ps.Cz_ = fine.pz.back();
    ps.minMargin_ = fine.minMargin;
    ps.nullWorst_ = fine.nullWorst;
    ps.prefixT_ = std::move(fine.pt);
    ps.prefixX_ = std::move(fine.px);
    ps.prefixZ_ = std::move(fine.pz);
    return ps;
}

double ParametricSolution::prefix(int component, double lambda) const {
    const double period = 2.0 * ic_.L;
    double j = std::floor(lambda / period);
    double lam0 = lambda - j * period;
    if (lam0 >= period) {  // floating-point fold at the boundary
        lam0 -= period;
        j += 1.0;
    }
    if (lam0 < 0.0) {
        lam0 += period;
        j -= 1.0;
    }
    const double h = period / panels_;
    int p = static_cast<int>(lam0 / h);
    p = std::clamp(p, 0, panels_ - 1);
    const double x0 = p * h;

    const std::vector<double>* table;
    double wrap;
    switch (component) {
        case 0: table = &prefixT_; wrap = 2.0 * K_; break;
        case 1: table = &prefixX_; wrap = Cx_; break;
        default: table = &prefixZ_; wrap = Cz_; break;
    }

    // partial-panel integral over [x0, lam0] with the fixed 16-node rule
    const GaussRule& g = partial_rule();
    const double half = 0.5 * (lam0 - x0);
    const double mid = 0.5 * (lam0 + x0);
    double part = 0.0;
    for (std::size_t q = 0; q < g.x.size(); ++q) {
        const double lam = mid + half * g.x[q];
        const MomentumDensity d = momentum_densities(ic_, lam);
        const double v = component == 0 ? d.pt : (component == 1 ? d.px : d.pz);
        part += half * g.w[q] * v;
    }
    return j * wrap + (*table)[p] + part;
}

ParametricSolution::Point ParametricSolution::eval(double alpha, double beta) const {
    Point pt;
    pt.t = 0.5 * (prefix(0, beta) - prefix(0, alpha));
    pt.x = 0.5 * (alpha + beta) + 0.5 * (prefix(1, beta) - prefix(1, alpha));
    const double zS =
        0.5 * (profile(alpha) + profile(beta)) + 0.5 * (prefix(2, beta) - prefix(2, alpha));
    pt.z = ic_.b * zS;
    return pt;
}

namespace {

struct NewtonState {
    double alpha, beta, f1, f2, err;
};

// residuals of (t,x) and the scaled error measure
NewtonState residuals(const ParametricSolution& ps, double alpha, double beta, double x,
                      double t) {
    const ParametricSolution::Point p = ps.eval(alpha, beta);
    NewtonState s;
    s.alpha = alpha;
    s.beta = beta;
    s.f1 = p.t - t;
    s.f2 = p.x - x;
    const double scaleT = std::max(1.0, 2.0 * ps.K());
    const double scaleX = std::max(1.0, 2.0 * ps.L());
    s.err = std::max(std::abs(s.f1) / scaleT, std::abs(s.f2) / scaleX);
    return s;
}

// Solve t(m - d, m + d) = t for d at fixed midpoint m; dt/dd >= 1 so the
// problem is strictly monotone and bisection is safe.
double solve_halfwidth(const ParametricSolution& ps, double m, double t) {
    auto tOf = [&](double d) { return ps.eval(m - d, m + d).t; };
    double lo = 0.0, hi = std::abs(t) + 1.0;
    const double sign = t >= 0.0 ? 1.0 : -1.0;
    // t(d) >= d for d >= 0 guarantees the bracket
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (tOf(sign * mid) * sign < std::abs(t))
            lo = mid;
        else
            hi = mid;
        if (hi - lo < 1e-16 * (1.0 + hi)) break;
    }
    return sign * 0.5 * (lo + hi);
}

}  // namespace

CharCoords invert(const ParametricSolution& ps, double x, double t) {
    if (!std::isfinite(x) || !std::isfinite(t))
        throw std::invalid_argument("invert: nonfinite target point");
    const double v = ps.L() / ps.K();  // phase velocity <= 1
    NewtonState cur = residuals(ps, x - t * v, x + t * v, x, t);
    const double tol = 1e-14;
    bool converged = false;
    for (int iter = 0; iter < 80 && !converged; ++iter) {
        if (cur.err < tol) {
            converged = true;
            break;
        }
        const MomentumDensity da = ps.momenta(cur.alpha);
        const MomentumDensity db = ps.momenta(cur.beta);
        const double ta = -0.5 * da.pt, tb = 0.5 * db.pt;
        const double xa = 0.5 * (1.0 - da.px), xb = 0.5 * (1.0 + db.px);
        const double det = ta * xb - tb * xa;  // strictly negative
        const double stepA = -(cur.f1 * xb - cur.f2 * tb) / det;
        const double stepB = -(-cur.f1 * xa + cur.f2 * ta) / det;
        double damp = 1.0;
        bool accepted = false;
        for (int half = 0; half < 40; ++half) {
            const NewtonState trial =
                residuals(ps, cur.alpha + damp * stepA, cur.beta + damp * stepB, x, t);
            if (trial.err < cur.err) {
                cur = trial;
                accepted = true;
                break;
            }
            damp *= 0.5;
        }
        if (!accepted) break;  // stalled (at machine precision or stuck)
    }
    if (cur.err < 1e-10) return {cur.alpha, cur.beta};

    // Fallback: nested bisection.  Inner loop matches t via the halfwidth,
    // outer loop matches x via the midpoint.
    auto gOf = [&](double m) {
        const double d = solve_halfwidth(ps, m, t);
        return ps.eval(m - d, m + d).x - x;
    };
    double lo = x, hi = x;
    double span = std::abs(t) + 2.0 * ps.L();
    double gLo = gOf(lo), gHi = gOf(hi);
    for (int i = 0; i < 64 && gLo * gHi > 0.0; ++i) {
        lo -= span;
        hi += span;
        gLo = gOf(lo);
        gHi = gOf(hi);
    }
    if (gLo * gHi <= 0.0) {
        for (int i = 0; i < 200; ++i) {
            const double mid = 0.5 * (lo + hi);
            const double gm = gOf(mid);
            if (gLo * gm <= 0.0) {
                hi = mid;
                gHi = gm;
            } else {
                lo = mid;
                gLo = gm;
            }
            if (hi - lo < 1e-16 * (1.0 + std::abs(hi))) break;
        }
        const double m = 0.5 * (lo + hi);
        const double d = solve_halfwidth(ps, m, t);
        NewtonState fb = residuals(ps, m - d, m + d, x, t);
        // polish with a few undamped Newton steps
        for (int iter = 0; iter < 8 && fb.err >= tol; ++iter) {
            const MomentumDensity da = ps.momenta(fb.alpha);
            const MomentumDensity db = ps.momenta(fb.beta);
            const double ta = -0.5 * da.pt, tb = 0.5 * db.pt;
            const double xa = 0.5 * (1.0 - da.px), xb = 0.5 * (1.0 + db.px);
            const double det = ta * xb - tb * xa;
            const double stepA = -(fb.f1 * xb - fb.f2 * tb) / det;
            const double stepB = -(-fb.f1 * xa + fb.f2 * ta) / det;
            const NewtonState trial = residuals(ps, fb.alpha + stepA, fb.beta + stepB, x, t);
            if (trial.err >= fb.err) break;
            fb = trial;
        }
        if (fb.err < 1e-10) return {fb.alpha, fb.beta};
        cur = fb;
    }
    std::ostringstream msg;
    msg << "characteristic inversion failed at (x, t) = (" << x << ", " << t
        << "), scaled residual " << cur.err;
    throw InversionNotConverged(x, t, cur.err, msg.str());
}

ParametricSample field_at(const ParametricSolution& ps, double x, double t) {
    const CharCoords c = invert(ps, x, t);
    const MomentumDensity da = ps.momenta(c.alpha);
    const MomentumDensity db = ps.momenta(c.beta);
    const double ta = -0.5 * da.pt, tb = 0.5 * db.pt;
    const double xa = 0.5 * (1.0 - da.px), xb = 0.5 * (1.0 + db.px);
    const double det = ta * xb - tb * xa;
    const double alphaT = xb / det, alphaX = -tb / det;
    const double betaT = -xa / det, betaX = ta / det;
    const double za = 0.5 * (ps.profilePrime(c.alpha) - da.pz);
    const double zb = 0.5 * (ps.profilePrime(c.beta) + db.pz);
    const double uxS = za * alphaX + zb * betaX;
    const double utS = za * alphaT + zb * betaT;
    ParametricSample s;
    s.u = ps.eval(c.alpha, c.beta).z;
    s.ux = ps.b() * uxS;
    s.ut = ps.b() * utS;
    s.margin = 1.0 + uxS * uxS - utS * utS;
    return s;
}

SymmetryReport validate_symmetries(const ParametricSolution& ps, int samples) {
    if (samples < 1) throw std::invalid_argument("validate_symmetries: samples < 1");
    std::mt19937 rng(0x5eed1234u);
    const double L = ps.L(), K = ps.K();
    std::uniform_real_distribution<double> lab(-2.0 * L, 2.0 * L);
    std::uniform_real_distribution<double> times(0.0, 4.0 * K);

    SymmetryReport rep{0, 0, 0, 0, ps.nullWorst(), 0};
    const double slopeShift = 2.0 * L * ps.ic().backgroundB;
    for (int i = 0; i < samples; ++i) {
        const double alpha = lab(rng), beta = lab(rng);
        const ParametricSolution::Point p = ps.eval(alpha, beta);
        const ParametricSolution::Point refl = ps.eval(-beta, -alpha);
        rep.antisymmetry = std::max({rep.antisymmetry, std::abs(refl.t - p.t),
                                     std::abs(refl.x + p.x), std::abs(refl.z + p.z)});
        const ParametricSolution::Point xs = ps.eval(alpha + 2 * L, beta + 2 * L);
        rep.xShift = std::max({rep.xShift, std::abs(xs.t - p.t),
                               std::abs(xs.x - p.x - 2 * L),
                               std::abs(xs.z - p.z - slopeShift)});
        const ParametricSolution::Point tsh = ps.eval(alpha - 2 * L, beta + 2 * L);
        rep.tShift = std::max({rep.tShift, std::abs(tsh.t - p.t - 2 * K),
                               std::abs(tsh.x - p.x), std::abs(tsh.z - p.z)});
    }
    for (int i = 0; i < samples; ++i) {
        const double t = times(rng);
        // the walls sit on the background drift line slope*x
        rep.dirichlet = std::max(rep.dirichlet, std::abs(field_at(ps, 0.0, t).u));
        rep.dirichlet = std::max(
            rep.dirichlet, std::abs(field_at(ps, L, t).u - ps.ic().backgroundB * L));
    }
    rep.worst = std::max({rep.antisymmetry, rep.xShift, rep.tShift, rep.dirichlet,
                          rep.nullCondition});
    return rep;
}

InitialCondition ic_from_functions(const std::function<double(double)>& a,
                                   const std::function<double(double)>& v0, double L,
                                   double slope, double b, int harmonics, double symTol) {
    if (!(L > 0.0) || !(b > 0.0))
        throw std::invalid_argument("ic_from_functions: L and b must be positive");
    if (harmonics < 1) throw std::invalid_argument("ic_from_functions: harmonics < 1");

    auto check = [&](const std::function<double(double)>& f, const char* what) {
        if (!f) return;
        double scale = 1.0;
        const int S = 64;
        for (int i = 0; i < S; ++i) scale = std::max(scale, std::abs(f((2.0 * L * i) / S)));
        for (int i = 0; i < S; ++i) {
            const double x = (2.0 * L * (i + 0.37)) / S;
            if (std::abs(f(-x) + f(x)) > symTol * scale) {
                std::ostringstream msg;
                msg << what << " profile is not antisymmetric at x = " << x << " (|f(-x)+f(x)| = "
                    << std::abs(f(-x) + f(x)) << ")";
                throw SymmetryViolation(msg.str());
            }
            if (std::abs(f(x + 2 * L) - f(x)) > symTol * scale) {
                std::ostringstream msg;
                msg << what << " profile is not 2L-periodic at x = " << x;
                throw SymmetryViolation(msg.str());
            }
        }
    };
    check(a, "displacement");
    check(v0, "velocity");

    // midpoint-rule sine projection (spectrally accurate for smooth
    // periodic inputs)
    const int M = std::max(1024, 16 * harmonics);
    auto project = [&](const std::function<double(double)>& f) {
        std::vector<double> c;
        if (!f) return c;  // null means identically zero
        c.assign(harmonics, 0.0);
        for (int i = 0; i < M; ++i) {
            const double x = 2.0 * L * (i + 0.5) / M;
            const double fx = f(x);
            for (int n = 1; n <= harmonics; ++n)
                c[n - 1] += fx * std::sin(n * kPi * x / L);
        }
        for (double& v : c) v *= 2.0 / M;
        return c;
    };

    InitialCondition ic;
    ic.aSine = project(a);
    ic.v0Sine = project(v0);
    ic.L = L;
    ic.backgroundB = slope;
    ic.b = b;
    return ic;
}

InitialCondition lindstedt_initial_condition(const LindstedtSolution& sol, double eps) {
    if (!(eps >= 0.0)) throw std::invalid_argument("lindstedt_initial_condition: eps < 0");
    // amplitude follows from eps = A k / b so the snapshot is consistent
    const double A = eps * sol.b / sol.k;
    InitialCondition ic;
    ic.L = kPi / sol.k;
    ic.b = sol.b;
    ic.aSine.assign(2 * sol.N + 1, 0.0);
    const double e2 = eps * eps;
    double ePow = 1.0;
    for (int M = 0; M <= sol.N; ++M) {
        for (int nu = 0; nu <= M; ++nu) {
            double rowSum = 0.0;
            for (int mu = 0; mu <= M; ++mu) rowSum += to_double(sol.alpha_at(M, nu, mu));
            ic.aSine[2 * nu] += A * ePow * rowSum;
        }
        ePow *= e2;
    }
    return ic;
}

}  // namespace biwaves
