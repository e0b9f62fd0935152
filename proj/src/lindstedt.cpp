#include "biwaves/lindstedt.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace biwaves {

namespace {

// One Kronecker delta of a kernel: fires when
//   i3 == c0 + cT*target + c1*i1 + c2*i2,
// contributing `sign`.  Each kernel is eight such deltas; the tables are the
// fold coefficients of the triple trig products
//   Q1: sin sin sin -> sin     P1: sin sin cos -> cos
//   Q2: cos cos sin -> sin     P2: cos cos cos -> cos
//   Q3: sin cos cos -> sin     P3: sin cos sin -> cos
// (arguments ordered source1, source2, source3 = the tilde factor).
struct Delta {
    int sign, c0, cT, c1, c2;
};
using KernelTable = std::array<Delta, 8>;

constexpr KernelTable kQ1 = {{{+1, -2, -1, -1, -1},
                              {-1, -1, +1, -1, -1},
                              {-1, -1, -1, +1, -1},
                              {+1, 0, +1, +1, -1},
                              {-1, -1, -1, -1, +1},
                              {+1, 0, +1, -1, +1},
                              {+1, 0, -1, +1, +1},
                              {-1, +1, +1, +1, +1}}};

constexpr KernelTable kQ2 = {{{-1, -2, -1, -1, -1},
                              {+1, -1, +1, -1, -1},
                              {-1, -1, -1, +1, -1},
                              {+1, 0, +1, +1, -1},
                              {-1, -1, -1, -1, +1},
                              {+1, 0, +1, -1, +1},
                              {-1, 0, -1, +1, +1},
                              {+1, +1, +1, +1, +1}}};

constexpr KernelTable kQ3 = {{{+1, -1, +1, -1, -1},
                              {-1, 0, +1, +1, -1},
                              {+1, 0, +1, -1, +1},
                              {-1, +1, +1, +1, +1},
                              {+1, 0, -1, +1, +1},
                              {-1, -1, -1, -1, +1},
                              {+1, -1, -1, +1, -1},
                              {-1, -2, -1, -1, -1}}};

constexpr KernelTable kP1 = {{{-1, -2, -1, -1, -1},
                              {-1, -1, +1, -1, -1},
                              {+1, -1, -1, +1, -1},
                              {+1, 0, +1, +1, -1},
                              {+1, -1, -1, -1, +1},
                              {+1, 0, +1, -1, +1},
                              {-1, 0, -1, +1, +1},
                              {-1, +1, +1, +1, +1}}};

// All-plus kernel (even product of cosines); every delta solvable.
constexpr KernelTable kP2 = {{{+1, -1, +1, -1, -1},
                              {+1, 0, +1, +1, -1},
                              {+1, 0, +1, -1, +1},
                              {+1, +1, +1, +1, +1},
                              {+1, 0, -1, +1, +1},
                              {+1, -1, -1, -1, +1},
                              {+1, -1, -1, +1, -1},
                              {+1, -2, -1, -1, -1}}};

constexpr KernelTable kP3 = {{{-1, -2, -1, -1, -1},
                              {-1, -1, +1, -1, -1},
                              {+1, -1, -1, +1, -1},
                              {+1, 0, +1, +1, -1},
                              {-1, -1, -1, -1, +1},
                              {-1, 0, +1, -1, +1},
                              {+1, 0, -1, +1, +1},
                              {+1, +1, +1, +1, +1}}};

const KernelTable& kernel_table(KernelKind which) {
    switch (which) {
        case KernelKind::Q1: return kQ1;
        case KernelKind::Q2: return kQ2;
        case KernelKind::Q3: return kQ3;
        case KernelKind::P1: return kP1;
        case KernelKind::P2: return kP2;
        case KernelKind::P3: return kP3;
    }
    throw std::invalid_argument("kernel: bad kind");
}

// Targets hit by one kernel for fixed source indices: solving each delta for
// the target harmonic gives target = cT*(i3 - c0 - c1*i1 - c2*i2).
struct Fire {
    int target, sign;
};
inline int fire_list(const KernelTable& tab, int i1, int i2, int i3, Fire out[8]) {
    int count = 0;
    for (const Delta& d : tab) {
        const int target = d.cT * (i3 - d.c0 - d.c1 * i1 - d.c2 * i2);
        if (target >= 0) out[count++] = {target, d.sign};
    }
    return count;
}

struct Entry {
    int nu, mu;
    Rational value;
};

std::vector<Entry> order_entries(const LindstedtSolution& sol, int M) {
    std::vector<Entry> entries;
    for (int nu = 0; nu <= M; ++nu) {
        for (int mu = 0; mu <= M; ++mu) {
            const Rational& a = sol.alpha_at(M, nu, mu);
            if (a != 0) entries.push_back({nu, mu, a});
        }
    }
    return entries;
}

}  // namespace

int kernel(KernelKind which, int target, int i1, int i2, int i3) {
    if (target < 0 || i1 < 0 || i2 < 0 || i3 < 0)
        throw std::invalid_argument("kernel: negative index");
    int sum = 0;
    for (const Delta& d : kernel_table(which)) {
        if (i3 == d.c0 + d.cT * target + d.c1 * i1 + d.c2 * i2) sum += d.sign;
    }
    return sum;
}

LindstedtSolution solve_order(int N) {
    if (N < 0) throw std::invalid_argument("solve_order: N < 0");
    LindstedtSolution sol;
    sol.N = N;
    sol.alpha.assign(N + 1, {});
    sol.alpha[0] = {Rational(1)};
    sol.xi.assign(1, Rational(1));

    std::vector<std::vector<Entry>> entries(N + 1);
    entries[0] = {{0, 0, Rational(1)}};

    for (int ord = 1; ord <= N; ++ord) {
        // Source coefficient on each lattice point (nu, mu) at this order.
        std::vector<Rational> total((ord + 1) * (ord + 1), Rational(0));
        auto at = [&](int nu, int mu) -> Rational& { return total[nu * (ord + 1) + mu]; };

        Fire fq[8], fp[8];
        for (int Mt = 0; Mt <= ord - 1; ++Mt) {
            for (const Entry& et : entries[Mt]) {
                for (int Mp = 0; Mp + Mt <= ord - 1; ++Mp) {
                    for (const Entry& ep : entries[Mp]) {
                        for (int Mpp = 0; Mpp + Mp + Mt <= ord - 1; ++Mpp) {
                            const Rational& xiFac = sol.xi[ord - 1 - Mt - Mp - Mpp];
                            if (xiFac == 0) continue;
                            for (const Entry& epp : entries[Mpp]) {
                                const Rational base = xiFac * et.value * ep.value * epp.value;
                                const int np = 2 * ep.nu + 1, mp = 2 * ep.mu + 1;
                                const int npp = 2 * epp.nu + 1, mpp = 2 * epp.mu + 1;
                                const int nt = 2 * et.nu + 1, mt = 2 * et.mu + 1;

                                // sin sin sin x sin sin cos
                                long w = static_cast<long>(mp) * mpp * nt * nt;
                                int cq = fire_list(kQ1, ep.nu, epp.nu, et.nu, fq);
                                int cp = fire_list(kP1, ep.mu, epp.mu, et.mu, fp);
                                for (int a = 0; a < cq; ++a)
                                    for (int b = 0; b < cp; ++b)
                                        if (fq[a].target <= ord && fp[b].target <= ord)
                                            at(fq[a].target, fp[b].target) +=
                                                base * (w * fq[a].sign * fp[b].sign);

                                // cos cos sin x cos cos cos
                                w = static_cast<long>(np) * npp * mt * mt;
                                cq = fire_list(kQ2, ep.nu, epp.nu, et.nu, fq);
                                cp = fire_list(kP2, ep.mu, epp.mu, et.mu, fp);
                                for (int a = 0; a < cq; ++a)
                                    for (int b = 0; b < cp; ++b)
                                        if (fq[a].target <= ord && fp[b].target <= ord)
                                            at(fq[a].target, fp[b].target) +=
                                                base * (w * fq[a].sign * fp[b].sign);

                                // sin cos cos x sin cos sin, weight doubled
                                w = 2L * mp * npp * nt * mt;
                                cq = fire_list(kQ3, ep.nu, epp.nu, et.nu, fq);
                                cp = fire_list(kP3, ep.mu, epp.mu, et.mu, fp);
                                for (int a = 0; a < cq; ++a)
                                    for (int b = 0; b < cp; ++b)
                                        if (fq[a].target <= ord && fp[b].target <= ord)
                                            at(fq[a].target, fp[b].target) +=
                                                base * (w * fq[a].sign * fp[b].sign);
                            }
                        }
                    }
                }
            }
        }

        // Cross terms between lower-order modes and dispersion corrections.
        for (auto& r : total) r /= 16;
        for (int M = 1; M <= ord - 1; ++M) {
            const Rational& xiFac = sol.xi[ord - M];
            if (xiFac == 0) continue;
            for (const Entry& e : entries[M]) {
                const long msq = static_cast<long>(2 * e.mu + 1) * (2 * e.mu + 1);
                at(e.nu, e.mu) += e.value * msq * xiFac;
            }
        }

        // Read off this order: the seed lattice point fixes xi, the rest of
        // the diagonal must vanish identically, and every off-diagonal point
        // is resolved against (2 mu + 1)^2 - (2 nu + 1)^2.
        sol.xi.push_back(-at(0, 0));
        std::vector<Rational> table((ord + 1) * (ord + 1), Rational(0));
        for (int nu = 0; nu <= ord; ++nu) {
            for (int mu = 0; mu <= ord; ++mu) {
                if (nu == mu) {
                    if (nu >= 1 && at(nu, mu) != 0) {
                        std::ostringstream msg;
                        msg << "diagonal source coefficient nonzero at order " << ord
                            << ", index " << nu << ": " << to_string(at(nu, mu));
                        throw DiagonalObstruction(ord, nu, msg.str());
                    }
                    continue;
                }
                const long p = 2 * mu + 1, q = 2 * nu + 1;
                table[nu * (ord + 1) + mu] = -at(nu, mu) / (p * p - q * q);
            }
        }
        sol.alpha[ord] = std::move(table);
        entries[ord] = order_entries(sol, ord);
    }
    return sol;
}

LindstedtSolution LindstedtSolution::truncated(int order) const {
    if (order < 0 || order > N) throw std::invalid_argument("truncated: bad order");
    LindstedtSolution out;
    out.N = order;
    out.alpha.assign(alpha.begin(), alpha.begin() + order + 1);
    out.xi.assign(xi.begin(), xi.begin() + order + 1);
    out.A = A;
    out.k = k;
    out.b = b;
    return out;
}

TrigSeries LindstedtSolution::normalized_series() const {
    TrigSeries u;
    for (int M = 0; M <= N; ++M) {
        for (int nu = 0; nu <= M; ++nu) {
            for (int mu = 0; mu <= M; ++mu) {
                const Rational& a = alpha_at(M, nu, mu);
                if (a == 0) continue;
                u.add_term(a, 2 * nu + 1, 2 * mu + 1, Fn::Sin, Fn::Cos, 2 * M, 0);
            }
        }
    }
    return u;
}

std::vector<Rational> dispersion(int N) { return solve_order(N).xi; }

double dispersion_value(const LindstedtSolution& sol, double eps, bool allowLargeEps) {
    if (eps < 0) throw std::invalid_argument("dispersion_value: eps < 0");
    if (eps >= 1.0 && !allowLargeEps)
        throw std::invalid_argument("dispersion_value: eps >= 1 leaves the hyperbolic "
                                    "regime of the seed (override to force)");
    double sum = 0.0;
    const double e2 = eps * eps;
    double p = 1.0;
    for (const Rational& x : sol.xi) {
        sum += to_double(x) * p;
        p *= e2;
    }
    if (sum <= 0.0) {
        std::ostringstream msg;
        msg << "dispersion sum " << sum << " <= 0 at eps = " << eps << ", order " << sol.N;
        throw NegativeOmegaSquared(eps, sum, msg.str());
    }
    return sum;
}

double evaluate(const LindstedtSolution& sol, double x, double t, double eps,
                bool allowLargeEps) {
    const double omega = sol.k * std::sqrt(dispersion_value(sol, eps, allowLargeEps));
    const double e2 = eps * eps;
    double sum = 0.0;
    double ePow = 1.0;
    for (int M = 0; M <= sol.N; ++M) {
        for (int nu = 0; nu <= M; ++nu) {
            for (int mu = 0; mu <= M; ++mu) {
                const Rational& a = sol.alpha_at(M, nu, mu);
                if (a == 0) continue;
                sum += to_double(a) * ePow * std::sin((2 * nu + 1) * sol.k * x) *
                       std::cos((2 * mu + 1) * omega * t);
            }
        }
        ePow *= e2;
    }
    return sol.A * sum;
}

LindstedtSample evaluate_sample(const LindstedtSolution& sol, double x, double t,
                                double eps, bool allowLargeEps) {
    const double omega = sol.k * std::sqrt(dispersion_value(sol, eps, allowLargeEps));
    const double e2 = eps * eps;
    LindstedtSample s{0, 0, 0, 0, 0, 0};
    double ePow = 1.0;
    for (int M = 0; M <= sol.N; ++M) {
        for (int nu = 0; nu <= M; ++nu) {
            for (int mu = 0; mu <= M; ++mu) {
                const Rational& a = sol.alpha_at(M, nu, mu);
                if (a == 0) continue;
                const double kn = (2 * nu + 1) * sol.k;
                const double wm = (2 * mu + 1) * omega;
                const double sx = std::sin(kn * x), cx = std::cos(kn * x);
                const double ct = std::cos(wm * t), st = std::sin(wm * t);
                const double c = to_double(a) * ePow;
                s.u += c * sx * ct;
                s.ux += c * kn * cx * ct;
                s.ut += -c * wm * sx * st;
                s.uxx += -c * kn * kn * sx * ct;
                s.utt += -c * wm * wm * sx * ct;
                s.uxt += -c * kn * wm * cx * st;
            }
        }
        ePow *= e2;
    }
    s.u *= sol.A;
    s.ux *= sol.A;
    s.ut *= sol.A;
    s.uxx *= sol.A;
    s.utt *= sol.A;
    s.uxt *= sol.A;
    return s;
}

// ---------------------------------------------------------------------------
// Graded residual tail in doubles.
//
// In phase variables theta = k x, phi = omega t with U = u/A the residual
// normalized by A k^2 is
//   U_tt'' ... concretely:
//   R = U_.. (theta theta) - D U_(phi phi)
//       - eps^2 D [ U_phi^2 U_thth + U_th^2 U_phph - 2 U_th U_ph U_thph ]
// with D(eps^2) = sum_M xi_M eps^(2M).  R is a polynomial in eps^2 whose
// grades 0..N vanish identically by construction; the scan keeps only grades
// N+1..4N+1 and evaluates each grade's trig polynomial once on the grid.
// ---------------------------------------------------------------------------

namespace {

struct GradePoly {
    // planes[fx*2+ft][n*(mMax+1)+m], fx/ft: 0 = sin, 1 = cos
    int nMax = 0, mMax = 0;
    std::array<std::vector<double>, 4> planes;

    void resize(int nM, int mM) {
        nMax = nM;
        mMax = mM;
        for (auto& p : planes) p.assign((nM + 1) * (mM + 1), 0.0);
    }
    double& at(int fx, int ft, int n, int m) { return planes[fx * 2 + ft][n * (mMax + 1) + m]; }
    double get(int fx, int ft, int n, int m) const {
        return planes[fx * 2 + ft][n * (mMax + 1) + m];
    }
};

struct SparseTerm {
    int n, m;
    std::uint8_t fx, ft;
    double c;
};
using SparseGrade = std::vector<SparseTerm>;

SparseGrade to_sparse(const GradePoly& g) {
    SparseGrade out;
    for (int fx = 0; fx < 2; ++fx)
        for (int ft = 0; ft < 2; ++ft)
            for (int n = 0; n <= g.nMax; ++n)
                for (int m = 0; m <= g.mMax; ++m) {
                    const double c = g.get(fx, ft, n, m);
                    if (c != 0.0)
                        out.push_back({n, m, static_cast<std::uint8_t>(fx),
                                       static_cast<std::uint8_t>(ft), c});
                }
    return out;
}

// Fold one product term into a dense accumulator (same product-to-sum rules
// as the exact engine, double coefficients).
inline void fold_into(GradePoly& acc, int n, int m, int fx, int ft, double c) {
    if (n < 0) {
        n = -n;
        if (fx == 0) c = -c;
    }
    if (m < 0) {
        m = -m;
        if (ft == 0) c = -c;
    }
    if ((n == 0 && fx == 0) || (m == 0 && ft == 0)) return;
    acc.at(fx, ft, n, m) += c;
}

void accumulate_product(GradePoly& acc, const SparseGrade& a, const SparseGrade& b) {
    for (const SparseTerm& ta : a) {
        for (const SparseTerm& tb : b) {
            const double base = 0.25 * ta.c * tb.c;
            // x-axis fold
            int xh[2], xf[2];
            double xs[2];
            if (ta.fx == 0 && tb.fx == 0) {  // sin sin
                xh[0] = ta.n - tb.n; xf[0] = 1; xs[0] = +1;
                xh[1] = ta.n + tb.n; xf[1] = 1; xs[1] = -1;
            } else if (ta.fx == 1 && tb.fx == 1) {  // cos cos
                xh[0] = ta.n - tb.n; xf[0] = 1; xs[0] = +1;
                xh[1] = ta.n + tb.n; xf[1] = 1; xs[1] = +1;
            } else if (ta.fx == 0) {  // sin cos
                xh[0] = ta.n + tb.n; xf[0] = 0; xs[0] = +1;
                xh[1] = ta.n - tb.n; xf[1] = 0; xs[1] = +1;
            } else {  // cos sin
                xh[0] = ta.n + tb.n; xf[0] = 0; xs[0] = +1;
                xh[1] = ta.n - tb.n; xf[1] = 0; xs[1] = -1;
            }
            int th[2], tf[2];
            double ts[2];
            if (ta.ft == 0 && tb.ft == 0) {
                th[0] = ta.m - tb.m; tf[0] = 1; ts[0] = +1;
                th[1] = ta.m + tb.m; tf[1] = 1; ts[1] = -1;
            } else if (ta.ft == 1 && tb.ft == 1) {
                th[0] = ta.m - tb.m; tf[0] = 1; ts[0] = +1;
                th[1] = ta.m + tb.m; tf[1] = 1; ts[1] = +1;
            } else if (ta.ft == 0) {
                th[0] = ta.m + tb.m; tf[0] = 0; ts[0] = +1;
                th[1] = ta.m - tb.m; tf[1] = 0; ts[1] = +1;
            } else {
                th[0] = ta.m + tb.m; tf[0] = 0; ts[0] = +1;
                th[1] = ta.m - tb.m; tf[1] = 0; ts[1] = -1;
            }
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j)
                    fold_into(acc, xh[i], th[j], xf[i], tf[j], base * xs[i] * ts[j]);
        }
    }
}

using Graded = std::vector<SparseGrade>;  // index = power of eps^2

// c = a * b truncated at grade cap, with per-grade harmonic bound hint.
Graded graded_multiply(const Graded& a, const Graded& b, int cap, int nBound, int mBound) {
    Graded out(cap + 1);
    std::vector<GradePoly> acc(cap + 1);
    for (auto& g : acc) g.resize(nBound, mBound);
    for (std::size_t ga = 0; ga < a.size(); ++ga) {
        if (a[ga].empty()) continue;
        for (std::size_t gb = 0; gb < b.size(); ++gb) {
            if (b[gb].empty()) continue;
            const std::size_t g = ga + gb;
            if (g > static_cast<std::size_t>(cap)) continue;
            accumulate_product(acc[g], a[ga], b[gb]);
        }
    }
    for (int g = 0; g <= cap; ++g) out[g] = to_sparse(acc[g]);
    return out;
}

Graded derivative(const Graded& a, bool alongTheta) {
    Graded out(a.size());
    for (std::size_t g = 0; g < a.size(); ++g) {
        for (const SparseTerm& t : a[g]) {
            SparseTerm d = t;
            if (alongTheta) {
                d.c = t.fx == 0 ? t.c * t.n : -t.c * t.n;
                d.fx = t.fx == 0 ? 1 : 0;
                if (t.n == 0) continue;
            } else {
                d.c = t.ft == 0 ? t.c * t.m : -t.c * t.m;
                d.ft = t.ft == 0 ? 1 : 0;
                if (t.m == 0) continue;
            }
            if (d.c != 0.0) out[g].push_back(d);
        }
    }
    return out;
}

}  // namespace

ResidualScan::ResidualScan(const LindstedtSolution& sol, int gridX, int gridT)
    : N_(sol.N), gridX_(gridX), gridT_(gridT), xi_(sol.xi) {
    if (gridX < 8 || gridT < 8)
        throw std::invalid_argument("ResidualScan: grid must be >= 8 per direction");

    const int N = sol.N;
    const int cap = 4 * N + 1;       // top eps^2 grade of the residual
    const int hMax = 3 * (2 * N + 1);  // top harmonic of the cubic terms

    // U as a graded sparse series (exact coefficients narrowed to double).
    Graded U(N + 1);
    for (int M = 0; M <= N; ++M) {
        for (int nu = 0; nu <= M; ++nu)
            for (int mu = 0; mu <= M; ++mu) {
                const Rational& a = sol.alpha_at(M, nu, mu);
                if (a == 0) continue;
                U[M].push_back({2 * nu + 1, 2 * mu + 1, 0, 1, to_double(a)});
            }
    }

    const Graded Uth = derivative(U, true);
    const Graded Uph = derivative(U, false);
    const Graded Uthth = derivative(Uth, true);
    const Graded Uphph = derivative(Uph, false);
    const Graded Uthph = derivative(Uth, false);

    const int hSq = 2 * (2 * N + 1);
    const Graded PhPh = graded_multiply(Uph, Uph, cap, hSq, hSq);
    const Graded ThTh = graded_multiply(Uth, Uth, cap, hSq, hSq);
    const Graded ThPh = graded_multiply(Uth, Uph, cap, hSq, hSq);

    Graded cubic = graded_multiply(PhPh, Uthth, cap, hMax, hMax);
    {
        const Graded t2 = graded_multiply(ThTh, Uphph, cap, hMax, hMax);
        const Graded t3 = graded_multiply(ThPh, Uthph, cap, hMax, hMax);
        for (int g = 0; g < static_cast<int>(cubic.size()); ++g) {
            for (const SparseTerm& t : t2[g]) cubic[g].push_back(t);
            for (SparseTerm t : t3[g]) {
                t.c *= -2.0;
                cubic[g].push_back(t);
            }
        }
    }

    // R_g = (Uthth)_g - sum_j xi_j (Uphph)_{g-j} - sum_j xi_j cubic_{g-1-j},
    // assembled densely per grade; grades 0..N are identically zero by
    // construction and are dropped rather than evaluated.
    std::vector<double> xiD(xi_.size());
    for (std::size_t j = 0; j < xi_.size(); ++j) xiD[j] = to_double(xi_[j]);

    std::vector<GradePoly> rGrades(cap + 1);
    for (auto& g : rGrades) g.resize(hMax, hMax);
    auto add_sparse = [](GradePoly& acc, const SparseGrade& s, double f) {
        for (const SparseTerm& t : s) acc.at(t.fx, t.ft, t.n, t.m) += f * t.c;
    };
    for (int g = N + 1; g <= cap; ++g) {
        if (g < static_cast<int>(Uthth.size())) add_sparse(rGrades[g], Uthth[g], 1.0);
        for (int j = 0; j < static_cast<int>(xiD.size()); ++j) {
            const int gl = g - j;
            if (gl >= 0 && gl < static_cast<int>(Uphph.size()))
                add_sparse(rGrades[g], Uphph[gl], -xiD[j]);
            const int gc = g - 1 - j;
            if (gc >= 0 && gc < static_cast<int>(cubic.size()))
                add_sparse(rGrades[g], cubic[gc], -xiD[j]);
        }
    }

    // Evaluate each kept grade on the phase grid via the separable form
    // V = Sx^T C St (per parity pair); tables over theta_i = 2 pi i / gridX,
    // phi_j = 2 pi j / gridT.
    const double twoPi = 2.0 * std::acos(-1.0);
    std::vector<double> sinX((hMax + 1) * gridX), cosX((hMax + 1) * gridX);
    std::vector<double> sinT((hMax + 1) * gridT), cosT((hMax + 1) * gridT);
    for (int n = 0; n <= hMax; ++n) {
        for (int i = 0; i < gridX; ++i) {
            const double th = twoPi * i / gridX * n;
            sinX[n * gridX + i] = std::sin(th);
            cosX[n * gridX + i] = std::cos(th);
        }
        for (int j = 0; j < gridT; ++j) {
            const double ph = twoPi * j / gridT * n;
            sinT[n * gridT + j] = std::sin(ph);
            cosT[n * gridT + j] = std::cos(ph);
        }
    }

    gradeValues_.assign(cap + 1, {});
    std::vector<double> partial((hMax + 1) * gridT);
    for (int g = N + 1; g <= cap; ++g) {
        std::vector<double> vals(gridX * gridT, 0.0);
        const GradePoly& poly = rGrades[g];
        for (int fx = 0; fx < 2; ++fx) {
            for (int ft = 0; ft < 2; ++ft) {
                const std::vector<double>& plane = poly.planes[fx * 2 + ft];
                bool any = false;
                for (double c : plane)
                    if (c != 0.0) {
                        any = true;
                        break;
                    }
                if (!any) continue;
                const std::vector<double>& tTab = (ft == 0) ? sinT : cosT;
                const std::vector<double>& xTab = (fx == 0) ? sinX : cosX;
                // partial[n][j] = sum_m plane[n][m] * tTab[m][j]
                std::fill(partial.begin(), partial.end(), 0.0);
                for (int n = 0; n <= hMax; ++n) {
                    for (int m = 0; m <= hMax; ++m) {
                        const double c = plane[n * (hMax + 1) + m];
                        if (c == 0.0) continue;
                        const double* tj = &tTab[m * gridT];
                        double* pj = &partial[n * gridT];
                        for (int j = 0; j < gridT; ++j) pj[j] += c * tj[j];
                    }
                }
                for (int i = 0; i < gridX; ++i) {
                    for (int n = 0; n <= hMax; ++n) {
                        const double xv = xTab[n * gridX + i];
                        if (xv == 0.0) continue;
                        const double* pj = &partial[n * gridT];
                        double* vj = &vals[i * gridT];
                        for (int j = 0; j < gridT; ++j) vj[j] += xv * pj[j];
                    }
                }
            }
        }
        gradeValues_[g] = std::move(vals);
    }
}

double ResidualScan::operator()(double eps, bool allowLargeEps) const {
    // Reuse the dispersion guard (also validates eps).
    LindstedtSolution probe;
    probe.N = N_;
    probe.xi = xi_;
    (void)dispersion_value(probe, eps, allowLargeEps);

    const double e2 = eps * eps;
    const int cap = static_cast<int>(gradeValues_.size()) - 1;
    const int nPts = gridX_ * gridT_;
    double best = 0.0;
    for (int p = 0; p < nPts; ++p) {
        double acc = 0.0;
        for (int g = cap; g >= N_ + 1; --g) {
            acc = acc * e2 + (gradeValues_[g].empty() ? 0.0 : gradeValues_[g][p]);
        }
        acc *= std::pow(e2, N_ + 1);
        best = std::max(best, std::abs(acc));
    }
    return best;
}

double residual_max(const LindstedtSolution& sol, double eps, int gridX, int gridT,
                    bool allowLargeEps) {
    return ResidualScan(sol, gridX, gridT)(eps, allowLargeEps);
}

double margin_min(const LindstedtSolution& sol, double eps, int gridX, int gridT,
                  bool allowLargeEps) {
    if (gridX < 8 || gridT < 8)
        throw std::invalid_argument("margin_min: grid must be >= 8 per direction");
    const double D = dispersion_value(sol, eps, allowLargeEps);
    const double twoPi = 2.0 * std::acos(-1.0);
    const double e2 = eps * eps;
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < gridX; ++i) {
        const double th = twoPi * i / gridX;
        for (int j = 0; j < gridT; ++j) {
            const double ph = twoPi * j / gridT;
            double uth = 0.0, uph = 0.0;
            double ePow = 1.0;
            for (int M = 0; M <= sol.N; ++M) {
                for (int nu = 0; nu <= M; ++nu)
                    for (int mu = 0; mu <= M; ++mu) {
                        const Rational& a = sol.alpha_at(M, nu, mu);
                        if (a == 0) continue;
                        const double c = to_double(a) * ePow;
                        const int nn = 2 * nu + 1, mm = 2 * mu + 1;
                        uth += c * nn * std::cos(nn * th) * std::cos(mm * ph);
                        uph += -c * mm * std::sin(nn * th) * std::sin(mm * ph);
                    }
                ePow *= e2;
            }
            // margin = 1 + (u_x^2 - u_t^2)/b^2 = 1 + eps^2 (U_th^2 - D U_ph^2)
            best = std::min(best, 1.0 + e2 * (uth * uth - D * uph * uph));
        }
    }
    return best;
}

TwoModeFirstOrder two_mode_first_order(const Rational& A1, const Rational& A3) {
    if (A1 == 0 && A3 == 0)
        throw std::invalid_argument("two_mode_first_order: zero seed");
    TwoModeFirstOrder out;
    out.xi1 = Rational(-1, 2);
    out.nonlinearScale = 1 / (A1 * A1 + 9 * A3 * A3);

    TrigSeries u;
    u += TrigSeries::s_nm(1, 1, A1 / 2, 0);
    u += TrigSeries::s_nm(3, 3, A3 / 2, 0);

    // First-order blocks; each resonant-free pair (n,m)/(m,n) is divided by
    // its own (m^2 - n^2) resolvent, which flips the sign inside the (5,1)
    // pair relative to the forcing.
    const Rational c8 = out.nonlinearScale / 8;
    const Rational q1 = A1 * A1 * (A1 + 6 * A3) / 8;
    const Rational q2 = 3 * A1 * A3 * (A1 + 6 * A3) / 8;
    const Rational q3 = 3 * A1 * A1 * A3 / 8;
    const Rational q4 = 9 * A1 * A3 * A3 / 8;
    const Rational q5 = 3 * A1 * A3 * A3 / 8;
    const Rational q6 = 9 * A3 * A3 * A3 / 8;
    u += TrigSeries::s_nm(3, 1, c8 * q1, 2);
    u += TrigSeries::s_nm(1, 3, c8 * q1, 2);
    u += TrigSeries::s_nm(5, 1, c8 * q2, 2);
    u += TrigSeries::s_nm(1, 5, -c8 * q2, 2);
    u += TrigSeries::s_nm(5, 3, c8 * q3, 2);
    u += TrigSeries::s_nm(3, 5, c8 * q3, 2);
    u += TrigSeries::s_nm(7, 1, c8 * q4, 2);
    u += TrigSeries::s_nm(1, 7, c8 * q4, 2);
    u += TrigSeries::s_nm(7, 5, c8 * q5, 2);
    u += TrigSeries::s_nm(5, 7, c8 * q5, 2);
    u += TrigSeries::s_nm(9, 3, c8 * q6, 2);
    u += TrigSeries::s_nm(3, 9, c8 * q6, 2);
    out.series = u;
    return out;
}

std::string dump_json(const LindstedtSolution& sol) {
    std::ostringstream os;
    os << "{\"N\":" << sol.N << ",\"xi\":[";
    for (int M = 0; M <= sol.N; ++M) {
        if (M) os << ",";
        os << "[" << sol.xi[M].get_num().get_str() << "," << sol.xi[M].get_den().get_str()
           << "]";
    }
    os << "],\"alpha\":[";
    bool first = true;
    for (int M = 1; M <= sol.N; ++M) {
        for (int nu = 0; nu <= M; ++nu) {
            for (int mu = 0; mu <= M; ++mu) {
                const Rational& a = sol.alpha_at(M, nu, mu);
                if (a == 0) continue;
                if (!first) os << ",";
                first = false;
                os << "{\"M\":" << M << ",\"nu\":" << nu << ",\"mu\":" << mu
                   << ",\"num\":" << a.get_num().get_str()
                   << ",\"den\":" << a.get_den().get_str() << "}";
            }
        }
    }
    os << "]}";
    return os.str();
}

}  // namespace biwaves
