"""High-precision oracle for the closed-form standing-wave example.

The example is driven by the temporal momentum density 1 + A + A*cos(lam)
on the doubled parameter cell.  Checks performed here:

 1. the closed-form displacement profile a(lam) differentiates to
    a'(lam) = 2 sqrt(A) cos(lam/2) sqrt(1 + A cos^2(lam/2));
 2. a is odd, continuous through lam = pi, and ANTI-periodic over 2*pi
    (a(lam + 2pi) = -a(lam)), i.e. its fundamental period is 4*pi;
 3. the rescaled cavity profile  ahat(x) = a(2x)/2  is pi-antiperiodic and
    expands in odd sine harmonics sin((2j+1)x); coefficients frozen (A=0.1);
 4. cavity field u(x,t) = [a(2x - xi) + a(2x + xi)]/4 with
    xi + eps*sin(xi) = tau, tau = 2t/(1+A), eps = A cos(2x)/(1+A):
    Dirichlet at x in {0, pi} and time period 2*pi*(1+A) hold to 1e-25;
    the raw (unscaled) field is only ANTI-periodic over 2*pi*(1+A);
 5. critical inversion amplitude: root of x*tanh(x) = 1, eps_c = x_c/cosh(x_c);
 6. exact rational phase-series coefficients (Lagrange inversion of the
    Kepler-like equation) through order 8, and the order-5 remainder bound
    |series(4) - fixed point| <= 2*eps^5 on [0,2pi] x [0,0.3].
"""

import math

import mpmath as mp
from fractions import Fraction

mp.mp.dps = 40
A = mp.mpf('0.1')
B = A / (2 + A)


def a_closed(lam, A=A):
    Bc = A / (2 + A)
    root = mp.sqrt(1 + Bc * mp.cos(lam))
    return (2 * mp.sqrt(A * (1 + A / 2)) * mp.sin(lam / 2) * root
            + 2 * (1 + A) * mp.atan(mp.sqrt(2 * Bc) * mp.sin(lam / 2) / root))


def a_prime(lam, A=A):
    c = mp.cos(lam / 2)
    return 2 * mp.sqrt(A) * c * mp.sqrt(1 + A * c * c)


def xi_solve(tau, eps):
    # Kepler-like phase equation xi + eps*sin(xi) = tau, |eps| < 1
    xi = tau
    for _ in range(400):
        nxt = tau - eps * mp.sin(xi)
        if abs(nxt - xi) < mp.mpf('1e-35'):
            xi = nxt
            break
        xi = nxt
    return xi


def u_cavity(x, t, A=A):
    tau = 2 * t / (1 + A)
    eps = A * mp.cos(2 * x) / (1 + A)
    xi = xi_solve(tau, eps)
    return (a_closed(2 * x - xi, A) + a_closed(2 * x + xi, A)) / 4


def main():
    # -- 1. derivative of the closed form
    worst = mp.mpf(0)
    for lam in [mp.mpf('0.3'), 1, 2, 3, mp.pi - mp.mpf('1e-6'), 4, 5, 6]:
        fd = mp.diff(lambda s: a_closed(s), lam)
        worst = max(worst, abs(fd - a_prime(lam)))
    print("max |d/dlam a_closed - a'| on [0,2pi]:", mp.nstr(worst, 3))

    # -- 2. parity / periodicity structure
    print("a(0.7)+a(-0.7)          :", mp.nstr(a_closed(mp.mpf('0.7')) + a_closed(mp.mpf('-0.7')), 3))
    print("a(l+2pi)+a(l) at l=0.9  :", mp.nstr(a_closed(mp.mpf('0.9') + 2 * mp.pi) + a_closed(mp.mpf('0.9')), 3))
    print("a(l+4pi)-a(l) at l=0.9  :", mp.nstr(a_closed(mp.mpf('0.9') + 4 * mp.pi) - a_closed(mp.mpf('0.9')), 3))
    print("a(pi) (interior, nonzero):", mp.nstr(a_closed(mp.pi), 20))
    jump = a_closed(mp.pi + mp.mpf('1e-20')) - a_closed(mp.pi - mp.mpf('1e-20'))
    print("continuity jump at pi    :", mp.nstr(jump, 3))

    # -- 3. cavity-profile sine coefficients, ahat(x) = a(2x)/2
    N = 4096
    coeffs = []
    for n in range(1, 26):
        s = mp.mpf(0)
        for i in range(N):
            x = 2 * mp.pi * i / N
            s += a_closed(2 * x) / 2 * mp.sin(n * x)
        coeffs.append(s * 2 / N)
    print("\ncavity sine coefficients b_n (A=0.1):")
    for n, c in enumerate(coeffs, 1):
        if abs(c) > mp.mpf('1e-30'):
            print(f"  b[{n}] = {mp.nstr(c, 22)}")
    even_max = max(abs(c) for n, c in enumerate(coeffs, 1) if n % 2 == 0)
    print("max |even harmonic|:", mp.nstr(even_max, 3))

    # -- 4. cavity field checks
    print("\nu(0, 1.3)          :", mp.nstr(u_cavity(0, mp.mpf('1.3')), 3))
    print("u(pi, 1.3)         :", mp.nstr(u_cavity(mp.pi, mp.mpf('1.3')), 3))
    T = 2 * mp.pi * (1 + A)
    x0, t0 = mp.mpf('0.77'), mp.mpf('0.41')
    print("u(x0,t0+T)-u(x0,t0):", mp.nstr(u_cavity(x0, t0 + T) - u_cavity(x0, t0), 3))
    print("u(x0,0) - a(2x0)/2 :", mp.nstr(u_cavity(x0, 0) - a_closed(2 * x0) / 2, 3))
    # raw doubled-cell field: anti-periodic over T
    def u_raw(x, t):
        tau = t / (1 + A)
        eps = A * mp.cos(x) / (1 + A)
        xi = xi_solve(tau, eps)
        return (a_closed(x - xi) + a_closed(x + xi)) / 2
    print("raw u(x0,t0+T)+u(x0,t0):", mp.nstr(u_raw(x0, t0 + T) + u_raw(x0, t0), 3),
          " (raw field flips sign after T)")
    print("u(x0,t0) value      :", mp.nstr(u_cavity(x0, t0), 22))

    # -- 5. critical inversion amplitude
    xc = mp.findroot(lambda x: x * mp.tanh(x) - 1, mp.mpf('1.2'))
    ec = xc / mp.cosh(xc)
    print("\nx_c  =", mp.nstr(xc, 22))
    print("eps_c =", mp.nstr(ec, 22))

    # -- 6. phase-series coefficients: xi = tau + sum_p sum_n c[p][n] eps^p sin(n tau)
    #    c_{p,n} from Lagrange inversion / Bessel expansion:
    #    (2/n)(-1)^n J_n(n eps) has eps^p term with p = n + 2j.
    print("\nphase-series coefficients c[p][n] (exact):")
    coeff = {}
    for n in range(1, 9):
        for j in range(0, 5):
            p = n + 2 * j
            if p > 8:
                continue
            c = (Fraction(2, n) * (-1) ** n * (-1) ** j
                 * Fraction(n ** (n + 2 * j), 2 ** (n + 2 * j))
                 / (math.factorial(j) * math.factorial(n + j)))
            coeff[(p, n)] = c
    for (p, n) in sorted(coeff):
        print(f"  c[{p}][{n}] = {coeff[(p,n)]}")

    # remainder bound for the order-4 truncation
    def series4(tau, eps):
        out = tau
        for (p, n), c in coeff.items():
            if p <= 4:
                out += mp.mpf(c.numerator) / c.denominator * eps ** p * mp.sin(n * tau)
        return out
    worst_ratio = mp.mpf(0)
    for ie in range(1, 13):
        eps = mp.mpf('0.3') * ie / 12
        for it in range(48):
            tau = 2 * mp.pi * it / 48
            d = abs(series4(tau, eps) - xi_solve(tau, eps))
            worst_ratio = max(worst_ratio, d / eps ** 5)
    print("\nmax |series4 - fixed point| / eps^5 on [0,2pi]x(0,0.3]:",
          mp.nstr(worst_ratio, 6))


if __name__ == "__main__":
    main()
