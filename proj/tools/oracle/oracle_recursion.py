"""Independent oracle for the standing-wave perturbation tables.

Solves order by order for the harmonic coefficients alpha[(M,nu,mu)] and the
dispersion coefficients xi[M] of the odd-harmonic ansatz

    u/A = sum_M sum_{nu,mu<=M} alpha[M,nu,mu] sin((2nu+1)x) cos((2mu+1)omega t) eps^(2M)

by brute-force trig-series expansion of the quasilinear wave operator
(no index-kernel recursion anywhere in this path).  At each order N the
residual is computed with alpha_N = 0, xi_N = 0; the linear operator acts
diagonally, so the new unknowns are read off directly:

    alpha[N,nu,mu] = -C[nu,mu] / ((2mu+1)^2 - (2nu+1)^2)   (nu != mu)
    xi[N]          = -C[0,0]
    C[nu,nu]       must vanish for nu >= 1  (solvability of the ansatz)

Output: exact rational tables for N <= NMAX, printed as C++ initialiser
fragments to freeze into the test suite.
"""

import sys
import time
from fractions import Fraction

from graded_trig import SIN, COS, add_term, quasilinear_residual

NMAX = int(sys.argv[1]) if len(sys.argv) > 1 else 5


def build_u(alpha, nmax):
    u = {}
    for (M, nu, mu), c in alpha.items():
        if M <= nmax:
            add_term(u, M, 2 * nu + 1, 2 * mu + 1, SIN, COS, 0, c)
    return u


def main():
    alpha = {(0, 0, 0): Fraction(1)}
    xi = [Fraction(1)]

    for N in range(1, NMAX + 1):
        t0 = time.time()
        u = build_u(alpha, N - 1)
        res = quasilinear_residual(u, xi, Fraction(1), N)
        # collect the grade-N block (all canonical terms are sin*cos here)
        C = {}
        for (g, n, m, px, pt, w), c in res.items():
            if g != N:
                continue
            assert px == SIN and pt == COS and w == 0, (g, n, m, px, pt, w)
            assert n % 2 == 1 and m % 2 == 1, (n, m)
            C[((n - 1) // 2, (m - 1) // 2)] = c
        xi.append(-C.get((0, 0), Fraction(0)))
        for nu in range(0, N + 1):
            for mu in range(0, N + 1):
                if nu == mu:
                    if nu >= 1:
                        assert C.get((nu, nu), Fraction(0)) == 0, \
                            f"diagonal obstruction at N={N}, nu={nu}"
                    continue
                c = C.get((nu, mu), Fraction(0))
                a = -c / ((2 * mu + 1) ** 2 - (2 * nu + 1) ** 2)
                if a != 0:
                    alpha[(N, nu, mu)] = a
        print(f"# order {N} done in {time.time()-t0:.2f}s", file=sys.stderr)

    print("// xi coefficients (exact):")
    for M, x in enumerate(xi):
        print(f"//   xi[{M}] = {x}")
    print("// alpha table (M, nu, mu) -> value:")
    for (M, nu, mu) in sorted(alpha):
        print(f"//   ({M},{nu},{mu}) = {alpha[(M,nu,mu)]}")

    print()
    print("// C++ fragment: {{M,nu,mu},{num,den}},")
    for (M, nu, mu) in sorted(alpha):
        v = alpha[(M, nu, mu)]
        print(f"    {{{{{M},{nu},{mu}}},{{{v.numerator},{v.denominator}}}}},")
    print("// xi fragment: {num,den},")
    for x in xi:
        print(f"    {{{x.numerator},{x.denominator}}},")


if __name__ == "__main__":
    main()
