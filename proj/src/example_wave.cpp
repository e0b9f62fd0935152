#include "biwaves/example_wave.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace biwaves {

namespace {
constexpr double kPi = std::numbers::pi;

// principal-branch values on [-pi, pi]
double a_principal(double m, const ExampleConfig& cfg) {
    const double A = cfg.A, B = cfg.shapeB();
    const double root = std::sqrt(1.0 + B * std::cos(m));
    return 2.0 * std::sqrt(A * (1.0 + A / 2.0)) * std::sin(m / 2.0) * root +
           2.0 * (1.0 + A) * std::atan(std::sqrt(2.0 * B) * std::sin(m / 2.0) / root);
}

double a_prime_principal(double m, const ExampleConfig& cfg) {
    const double A = cfg.A;
    const double c = std::cos(m / 2.0);
    return 2.0 * std::sqrt(A) * c * std::sqrt(1.0 + A * c * c);
}

// fold lambda to the principal interval; the sign alternates per half turn
struct Fold {
    double m;
    double sign;
};
Fold fold_antiperiodic(double lambda) {
    const double m = std::remainder(lambda, 2.0 * kPi);
    const long long j = std::llround((lambda - m) / (2.0 * kPi));
    return {m, (j & 1LL) ? -1.0 : 1.0};
}
}  // namespace

void ExampleConfig::validate() const {
    if (!(A > 0.0)) throw std::invalid_argument("ExampleConfig: A must be positive");
}

double a_closed(double lambda, const ExampleConfig& cfg) {
    cfg.validate();
    const Fold f = fold_antiperiodic(lambda);
    return f.sign * a_principal(f.m, cfg);
}

double a_closed_prime(double lambda, const ExampleConfig& cfg) {
    cfg.validate();
    const Fold f = fold_antiperiodic(lambda);
    return f.sign * a_prime_principal(f.m, cfg);
}

double a_closed_small_amplitude(double lambda, const ExampleConfig& cfg) {
    cfg.validate();
    const double s = std::sin(lambda / 2.0);
    return 4.0 * std::sqrt(cfg.A) * s * (1.0 + (cfg.A / 2.0) * (1.0 - s * s / 6.0));
}

FixedPointResult xi_fixed_point(double tau, double eps, double tol, int maxIter) {
    if (!(tol > 0.0)) throw std::invalid_argument("xi_fixed_point: tol must be positive");
    double xi = tau;
    for (int it = 1; it <= maxIter; ++it) {
        const double next = tau - eps * std::sin(xi);
        const double delta = std::abs(next - xi);
        xi = next;
        if (delta <= tol) return {xi, it};
    }
    std::ostringstream msg;
    msg << "fixed point xi = tau - eps*sin(xi) did not settle after " << maxIter
        << " iterations (tau = " << tau << ", eps = " << eps
        << "; contraction requires |eps| < 1)";
    throw NotConverged(msg.str());
}

Rational xi_series_coefficient(int p, int n) {
    if (p < 1 || n < 1 || n > p || (p - n) % 2 != 0) return Rational(0);
    const int j = (p - n) / 2;
    // c_{p,n} = (2/n) (-1)^n (-1)^j n^(n+2j) / (2^(n+2j) j! (n+j)!)
    mpz_class npow, two_pow, jfact, njfact;
    mpz_ui_pow_ui(npow.get_mpz_t(), n, n + 2 * j);
    mpz_ui_pow_ui(two_pow.get_mpz_t(), 2, n + 2 * j);
    mpz_fac_ui(jfact.get_mpz_t(), j);
    mpz_fac_ui(njfact.get_mpz_t(), n + j);
    Rational c(2 * npow, n * two_pow * jfact * njfact);
    c.canonicalize();
    if ((n + j) % 2 != 0) c = -c;
    return c;
}

double xi_series(double tau, double eps, int order) {
    constexpr int kMaxOrder = 24;
    if (order < 0 || order > kMaxOrder)
        throw std::invalid_argument("xi_series: order outside [0, 24]");
    double xi = tau;
    double epow = 1.0;
    for (int p = 1; p <= order; ++p) {
        epow *= eps;
        double block = 0.0;
        for (int n = p % 2 == 0 ? 2 : 1; n <= p; n += 2)
            block += to_double(xi_series_coefficient(p, n)) * std::sin(n * tau);
        xi += epow * block;
    }
    return xi;
}

CriticalPoint critical_epsilon() {
    // tangency of x and eps*cosh(x): x*tanh(x) = 1
    double x = 1.2;
    for (int it = 0; it < 64; ++it) {
        const double th = std::tanh(x);
        const double f = x * th - 1.0;
        const double df = th + x * (1.0 - th * th);
        const double dx = f / df;
        x -= dx;
        if (std::abs(dx) < 1e-15) break;
    }
    return {x / std::cosh(x), x};
}

double cavity_field(double x, double t, const ExampleConfig& cfg) {
    cfg.validate();
    const double tauHat = 2.0 * t / (1.0 + cfg.A);
    const double epsHat = (cfg.A / (1.0 + cfg.A)) * std::cos(2.0 * x);
    const double zeta = xi_fixed_point(tauHat, epsHat).xi;
    return 0.25 * (a_closed(2.0 * x - zeta, cfg) + a_closed(2.0 * x + zeta, cfg));
}

InitialCondition example_initial_condition(const ExampleConfig& cfg, int harmonics) {
    cfg.validate();
    auto profile = [cfg](double x) { return 0.5 * a_closed(2.0 * x, cfg); };
    return ic_from_functions(profile, nullptr, kPi, 0.0, 1.0, harmonics);
}

}  // namespace biwaves
