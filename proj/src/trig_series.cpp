#include "biwaves/trig_series.hpp"

#include <cmath>
#include <stdexcept>

namespace biwaves {

namespace {

// Fold a possibly-negative harmonic into canonical form.  Returns false if
// the factor is identically zero (sin(0)).  sign picks up -1 for sin(-y).
bool fold_axis(int& h, Fn fn, int& sign) {
    if (h < 0) {
        h = -h;
        if (fn == Fn::Sin) sign = -sign;
    }
    if (h == 0 && fn == Fn::Sin) return false;
    return true;
}

}  // namespace

std::string parity_string(Fn fx, Fn ft) {
    std::string s;
    s += (fx == Fn::Sin) ? 's' : 'c';
    s += (ft == Fn::Sin) ? 's' : 'c';
    return s;
}

TrigSeries TrigSeries::term(const Rational& coeff, int n, int m, Fn fx, Fn ft,
                            int epsPow, int omegaPow) {
    TrigSeries s;
    s.add_term(coeff, n, m, fx, ft, epsPow, omegaPow);
    return s;
}

TrigSeries TrigSeries::s_nm(int n, int m, const Rational& coeff, int epsPow) {
    TrigSeries s;
    s.add_term(2 * coeff, n, m, Fn::Sin, Fn::Cos, epsPow, 0);
    return s;
}

void TrigSeries::add_term(const Rational& coeff, int n, int m, Fn fx, Fn ft,
                          int epsPow, int omegaPow) {
    if (coeff == 0) return;
    int sign = 1;
    if (!fold_axis(n, fx, sign)) return;
    if (!fold_axis(m, ft, sign)) return;
    TrigKey key{epsPow, omegaPow, n, m, fx, ft};
    auto it = terms_.find(key);
    if (it == terms_.end()) {
        terms_.emplace(key, sign * coeff);
    } else {
        it->second += sign * coeff;
        if (it->second == 0) terms_.erase(it);
    }
}

Rational TrigSeries::coeff(int n, int m, Fn fx, Fn ft, int epsPow, int omegaPow) const {
    auto it = terms_.find(TrigKey{epsPow, omegaPow, n, m, fx, ft});
    return it == terms_.end() ? Rational(0) : it->second;
}

TrigSeries& TrigSeries::operator+=(const TrigSeries& other) {
    for (const auto& [k, c] : other.terms_) {
        auto it = terms_.find(k);
        if (it == terms_.end()) {
            terms_.emplace(k, c);
        } else {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }
    return *this;
}

TrigSeries& TrigSeries::operator-=(const TrigSeries& other) {
    for (const auto& [k, c] : other.terms_) {
        auto it = terms_.find(k);
        if (it == terms_.end()) {
            terms_.emplace(k, -c);
        } else {
            it->second -= c;
            if (it->second == 0) terms_.erase(it);
        }
    }
    return *this;
}

TrigSeries TrigSeries::scaled(const Rational& factor, int epsShift) const {
    TrigSeries out;
    if (factor == 0) return out;
    for (const auto& [k, c] : terms_) {
        TrigKey nk = k;
        nk.epsPow += epsShift;
        out.terms_.emplace(nk, c * factor);
    }
    return out;
}

TrigSeries multiply(const TrigSeries& a, const TrigSeries& b) {
    // Per-axis product-to-sum:
    //   sin p sin q = (cos(p-q) - cos(p+q))/2      cos p cos q = (cos(p-q) + cos(p+q))/2
    //   sin p cos q = (sin(p+q) + sin(p-q))/2      cos p sin q = (sin(p+q) - sin(p-q))/2
    // Each axis contributes two half-weight terms; the four combinations are
    // re-canonicalized through add_term.
    struct AxisTerm {
        int h;
        Fn fn;
        int sign;  // +1 or -1 applied to the 1/2 weight
    };
    auto axis_product = [](int h1, Fn f1, int h2, Fn f2, AxisTerm out[2]) {
        if (f1 == Fn::Sin && f2 == Fn::Sin) {
            out[0] = {h1 - h2, Fn::Cos, +1};
            out[1] = {h1 + h2, Fn::Cos, -1};
        } else if (f1 == Fn::Cos && f2 == Fn::Cos) {
            out[0] = {h1 - h2, Fn::Cos, +1};
            out[1] = {h1 + h2, Fn::Cos, +1};
        } else if (f1 == Fn::Sin && f2 == Fn::Cos) {
            out[0] = {h1 + h2, Fn::Sin, +1};
            out[1] = {h1 - h2, Fn::Sin, +1};
        } else {  // cos * sin
            out[0] = {h1 + h2, Fn::Sin, +1};
            out[1] = {h1 - h2, Fn::Sin, -1};
        }
    };

    TrigSeries out;
    AxisTerm xs[2], ts[2];
    for (const auto& [ka, ca] : a.terms_) {
        for (const auto& [kb, cb] : b.terms_) {
            axis_product(ka.n, ka.fx, kb.n, kb.fx, xs);
            axis_product(ka.m, ka.ft, kb.m, kb.ft, ts);
            const Rational base = ca * cb / 4;
            const int epsPow = ka.epsPow + kb.epsPow;
            const int omegaPow = ka.omegaPow + kb.omegaPow;
            for (const AxisTerm& xt : xs) {
                for (const AxisTerm& tt : ts) {
                    out.add_term(base * (xt.sign * tt.sign), xt.h, tt.h, xt.fn, tt.fn,
                                 epsPow, omegaPow);
                }
            }
        }
    }
    return out;
}

TrigSeries TrigSeries::truncated(int maxEpsPow) const {
    TrigSeries out;
    for (const auto& [k, c] : terms_) {
        if (k.epsPow <= maxEpsPow) out.terms_.emplace(k, c);
    }
    return out;
}

TrigSeries TrigSeries::diff_x() const {
    TrigSeries out;
    for (const auto& [k, c] : terms_) {
        if (k.fx == Fn::Sin) {
            out.add_term(c * k.n, k.n, k.m, Fn::Cos, k.ft, k.epsPow, k.omegaPow);
        } else {
            out.add_term(c * (-k.n), k.n, k.m, Fn::Sin, k.ft, k.epsPow, k.omegaPow);
        }
    }
    return out;
}

TrigSeries TrigSeries::diff_t() const {
    TrigSeries out;
    for (const auto& [k, c] : terms_) {
        if (k.ft == Fn::Sin) {
            out.add_term(c * k.m, k.n, k.m, k.fx, Fn::Cos, k.epsPow, k.omegaPow + 1);
        } else {
            out.add_term(c * (-k.m), k.n, k.m, k.fx, Fn::Sin, k.epsPow, k.omegaPow + 1);
        }
    }
    return out;
}

TrigSeries TrigSeries::substitute_omega_sq(const std::vector<Rational>& xi,
                                           int maxEpsPow) const {
    if (xi.empty()) throw std::invalid_argument("substitute_omega_sq: empty dispersion");
    // Powers of the dispersion polynomial D(eps) = sum_M xi[M] eps^(2M),
    // built incrementally; pow[j] maps eps-power -> coefficient of D^j.
    std::vector<std::map<int, Rational>> powers(1);
    powers[0].emplace(0, 1);
    auto ensure_power = [&](int j) {
        while (static_cast<int>(powers.size()) <= j) {
            const auto& prev = powers.back();
            std::map<int, Rational> next;
            for (const auto& [p, c] : prev) {
                for (std::size_t M = 0; M < xi.size(); ++M) {
                    const int np = p + 2 * static_cast<int>(M);
                    if (np > maxEpsPow) break;
                    if (xi[M] == 0) continue;
                    auto [it, inserted] = next.emplace(np, c * xi[M]);
                    if (!inserted) it->second += c * xi[M];
                }
            }
            powers.push_back(std::move(next));
        }
    };

    TrigSeries out;
    for (const auto& [k, c] : terms_) {
        if (k.omegaPow % 2 != 0)
            throw std::invalid_argument("substitute_omega_sq: odd omega power survives");
        const int j = k.omegaPow / 2;
        ensure_power(j);
        for (const auto& [p, pc] : powers[j]) {
            const int epsPow = k.epsPow + p;
            if (epsPow > maxEpsPow) continue;
            if (pc == 0) continue;
            out.add_term(c * pc, k.n, k.m, k.fx, k.ft, epsPow, 0);
        }
    }
    return out;
}

double TrigSeries::evaluate(double x, double t, double eps, double k, double omega) const {
    double sum = 0.0;
    for (const auto& [key, c] : terms_) {
        double v = to_double(c);
        v *= std::pow(eps, key.epsPow) * std::pow(omega, key.omegaPow);
        const double px = key.n * k * x;
        const double pt = key.m * omega * t;
        v *= (key.fx == Fn::Sin) ? std::sin(px) : std::cos(px);
        v *= (key.ft == Fn::Sin) ? std::sin(pt) : std::cos(pt);
        sum += v;
    }
    return sum;
}

std::vector<TrigSeries::DumpRow> TrigSeries::dump_rows() const {
    std::vector<DumpRow> rows;
    rows.reserve(terms_.size());
    for (const auto& [k, c] : terms_) {
        if (k.omegaPow != 0)
            throw std::invalid_argument("dump_rows: unsubstituted omega power");
        rows.push_back(DumpRow{k.n, k.m, parity_string(k.fx, k.ft),
                               c.get_num().get_str(), c.get_den().get_str(), k.epsPow});
    }
    return rows;
}

TrigSeries bi_operator_symbolic(const TrigSeries& u, const std::vector<Rational>& xi,
                                int maxOrder, const Rational& nonlinearScale) {
    if (maxOrder < 0) throw std::invalid_argument("bi_operator_symbolic: maxOrder < 0");
    const int maxEps = 2 * maxOrder;

    const TrigSeries ux = u.diff_x();
    const TrigSeries ut = u.diff_t();
    const TrigSeries uxx = ux.diff_x();
    const TrigSeries utt = ut.diff_t();
    const TrigSeries uxt = ux.diff_t();

    TrigSeries lhs = uxx - utt;
    // The cubic part enters at eps^2; pre-truncating the factors keeps the
    // intermediate products small.
    const int cubicBudget = maxEps - 2;
    if (cubicBudget >= 0) {
        TrigSeries cubic =
            multiply(multiply(ut.truncated(cubicBudget), ut.truncated(cubicBudget)),
                     uxx.truncated(cubicBudget));
        cubic += multiply(multiply(ux.truncated(cubicBudget), ux.truncated(cubicBudget)),
                          utt.truncated(cubicBudget));
        cubic -= multiply(multiply(ux.truncated(cubicBudget), ut.truncated(cubicBudget)),
                          uxt.truncated(cubicBudget))
                     .scaled(2);
        lhs -= cubic.truncated(cubicBudget).scaled(nonlinearScale, 2);
    }
    return lhs.truncated(maxEps).substitute_omega_sq(xi, maxEps);
}

}  // namespace biwaves
