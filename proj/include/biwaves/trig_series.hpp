#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "biwaves/rational.hpp"

namespace biwaves {

// Exact symbolic algebra on finite trigonometric sums in the two phases
//   theta = k*x  and  phi = omega*t.
// A term is
//   coeff * eps^epsPow * omega^omegaPow * Fx(n*theta) * Ft(m*phi)
// with Fx, Ft in {sin, cos}.  The wave number k is normalized to 1 inside
// the engine (it is a pure scale and is reinstated by callers); omega is a
// formal symbol tracked through t-derivatives and eliminated at the end by
// substituting the dispersion polynomial for omega^2.
//
// Canonical form: n >= 0 and m >= 0.  Negative harmonics fold via
// sin(-y) = -sin(y), cos(-y) = cos(y); sin(0) kills a term and cos(0) = 1
// is kept as a constant factor with harmonic 0.

enum class Fn : std::uint8_t { Sin = 0, Cos = 1 };

struct TrigKey {
    int epsPow = 0;    // grading power of eps (ordering: grade first)
    int omegaPow = 0;  // formal power of omega
    int n = 0;         // x-harmonic
    int m = 0;         // t-harmonic
    Fn fx = Fn::Sin;
    Fn ft = Fn::Cos;
    auto operator<=>(const TrigKey&) const = default;
};

// Two-letter parity tag used for serialization: "sc", "cs", "ss", "cc"
// (x-factor letter first).
std::string parity_string(Fn fx, Fn ft);

class TrigSeries {
  public:
    TrigSeries() = default;

    // Single canonical term; folds negative harmonics, drops exact zeros.
    static TrigSeries term(const Rational& coeff, int n, int m, Fn fx, Fn ft,
                           int epsPow = 0, int omegaPow = 0);

    // s_{nm} = sin(n theta + m phi) + sin(n theta - m phi)
    //        = 2 sin(n theta) cos(m phi).
    static TrigSeries s_nm(int n, int m, const Rational& coeff = 1, int epsPow = 0);

    bool empty() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }
    const std::map<TrigKey, Rational>& terms() const { return terms_; }

    // Exact coefficient lookup (zero if absent).
    Rational coeff(int n, int m, Fn fx, Fn ft, int epsPow = 0, int omegaPow = 0) const;

    void add_term(const Rational& coeff, int n, int m, Fn fx, Fn ft,
                  int epsPow = 0, int omegaPow = 0);

    TrigSeries& operator+=(const TrigSeries& other);
    TrigSeries& operator-=(const TrigSeries& other);
    friend TrigSeries operator+(TrigSeries a, const TrigSeries& b) { return a += b; }
    friend TrigSeries operator-(TrigSeries a, const TrigSeries& b) { return a -= b; }
    friend bool operator==(const TrigSeries& a, const TrigSeries& b) {
        return a.terms_ == b.terms_;
    }

    // Scalar multiple, optionally shifting the eps grade.
    TrigSeries scaled(const Rational& factor, int epsShift = 0) const;

    // Exact product (bilinear, commutative); product-to-sum on each axis.
    friend TrigSeries multiply(const TrigSeries& a, const TrigSeries& b);

    // Drop all terms with epsPow > maxEpsPow.
    TrigSeries truncated(int maxEpsPow) const;

    // d/dx and d/dt.  k = 1 internally; each d/dt multiplies by the formal
    // omega (omegaPow + 1).
    TrigSeries diff_x() const;
    TrigSeries diff_t() const;

    // Replace omega^(2j) by (sum_M xi[M] eps^(2M))^j, truncating at
    // eps^maxEpsPow.  Throws std::invalid_argument if any term carries an
    // odd omega power (cannot happen for the wave operator).
    TrigSeries substitute_omega_sq(const std::vector<Rational>& xi, int maxEpsPow) const;

    // Floating evaluation of the defining sum at phases theta = k*x,
    // phi = omega*t with the given numeric eps and omega.
    double evaluate(double x, double t, double eps, double k, double omega) const;

    // Serialization rows {n, m, parity, num, den, epsPower}; requires all
    // omega powers to have been substituted away.
    struct DumpRow {
        int n, m;
        std::string parity;
        std::string num, den;
        int epsPower;
    };
    std::vector<DumpRow> dump_rows() const;

  private:
    std::map<TrigKey, Rational> terms_;
};

// Left-hand side of the scalar wave equation with the cubic coupling,
//   u_xx - u_tt - nonlinearScale * eps^2 * (u_t^2 u_xx + u_x^2 u_tt - 2 u_x u_t u_xt),
// evaluated symbolically on a graded series and truncated at eps^(2*maxOrder),
// with omega^2 eliminated through the dispersion coefficients xi.
//
// nonlinearScale expresses the coupling 1/b^2 in grading units:
// 1/b^2 = nonlinearScale * eps^2 with k = 1.  For a series measured in units
// of the single-mode amplitude A (seed = (1/2) s_11) the scale is 1; for a
// physical two-mode series with amplitudes A1, A3 it is 1/(A1^2 + 9 A3^2).
TrigSeries bi_operator_symbolic(const TrigSeries& u, const std::vector<Rational>& xi,
                                int maxOrder, const Rational& nonlinearScale = 1);

}  // namespace biwaves
