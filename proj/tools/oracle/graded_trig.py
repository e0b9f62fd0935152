"""Exact graded trigonometric series algebra (reference implementation).

A series is a dict mapping

    (g, n, m, px, pt, w)  ->  Fraction

where the term is  coeff * eps^g * omega^w * X_px(n*x) * T_pt(m*omega_t)
with px/pt in {'s', 'c'} selecting sin or cos of the phase.  The spatial
wavenumber is normalised to 1; omega is kept as a formal symbol so that
omega^2 can later be replaced by a graded polynomial (a dispersion series).

Everything is exact (fractions.Fraction), used to freeze reference values
for the C++ tests.
"""

from fractions import Fraction

SIN, COS = 's', 'c'


def _fold_axis(p, n):
    """Canonicalise one factor: returns (sign, p, n) or None if the term is 0."""
    if n < 0:
        if p == SIN:
            return (-1, SIN, -n)
        return (1, COS, -n)
    if n == 0 and p == SIN:
        return None
    return (1, p, n)


def add_term(series, g, n, m, px, pt, w, coeff):
    if coeff == 0:
        return
    fx = _fold_axis(px, n)
    if fx is None:
        return
    ft = _fold_axis(pt, m)
    if ft is None:
        return
    sx, px, n = fx
    st, pt, m = ft
    key = (g, n, m, px, pt, w)
    c = series.get(key, Fraction(0)) + coeff * sx * st
    if c == 0:
        series.pop(key, None)
    else:
        series[key] = c


def mul(a, b, gmax=None):
    """Product of two graded series with canonical folding.

    Uses sin A sin B = (cos(A-B) - cos(A+B))/2 etc. on each axis.
    """
    out = {}
    for (g1, n1, m1, px1, pt1, w1), c1 in a.items():
        for (g2, n2, m2, px2, pt2, w2), c2 in b.items():
            g = g1 + g2
            if gmax is not None and g > gmax:
                continue
            c = c1 * c2 / 4
            w = w1 + w2
            # axis product tables: list of (sign, p, harmonic)
            for sx, px, n in _axis_product(px1, n1, px2, n2):
                for st, pt, m in _axis_product(pt1, m1, pt2, m2):
                    add_term(out, g, n, m, px, pt, w, c * sx * st)
    return out


def _axis_product(p1, n1, p2, n2):
    """f1(n1 u) * f2(n2 u) = 1/2 * [terms]; returns the two (sign,p,n) terms."""
    if p1 == SIN and p2 == SIN:   # sin sin = (cos(d) - cos(s))/2
        return [(1, COS, n1 - n2), (-1, COS, n1 + n2)]
    if p1 == COS and p2 == COS:   # cos cos = (cos(d) + cos(s))/2
        return [(1, COS, n1 - n2), (1, COS, n1 + n2)]
    if p1 == SIN and p2 == COS:   # sin cos = (sin(s) + sin(d))/2
        return [(1, SIN, n1 + n2), (1, SIN, n1 - n2)]
    # cos sin = (sin(s) - sin(d))/2
    return [(1, SIN, n1 + n2), (-1, SIN, n1 - n2)]


def diff_x(a):
    out = {}
    for (g, n, m, px, pt, w), c in a.items():
        if n == 0:
            continue
        if px == SIN:
            add_term(out, g, n, m, COS, pt, w, c * n)
        else:
            add_term(out, g, n, m, SIN, pt, w, -c * n)
    return out


def diff_t(a):
    """d/dt; multiplies by m*omega (omega power goes up by one)."""
    out = {}
    for (g, n, m, px, pt, w), c in a.items():
        if m == 0:
            continue
        if pt == SIN:
            add_term(out, g, n, m, px, COS, w + 1, c * m)
        else:
            add_term(out, g, n, m, px, SIN, w + 1, -c * m)
    return out


def scale(a, c, dg=0):
    out = {}
    for (g, n, m, px, pt, w), cc in a.items():
        add_term(out, g + dg, n, m, px, pt, w, cc * c)
    return out


def add(a, b):
    out = dict(a)
    for (g, n, m, px, pt, w), c in b.items():
        add_term(out, g, n, m, px, pt, w, c)
    return out


def subst_omega_sq(a, xi, gmax):
    """Replace omega^(2j) by (sum_M xi[M] eps^(2M))^j; truncate grade at gmax."""
    out = {}
    for (g, n, m, px, pt, w), c in a.items():
        assert w % 2 == 0, "odd omega power left over"
        j = w // 2
        # multinomial expansion of the dispersion polynomial to the j-th power
        terms = {0: Fraction(1)}
        for _ in range(j):
            nxt = {}
            for gg, cc in terms.items():
                for M, xiM in enumerate(xi):
                    if gg + M + g <= gmax:
                        nxt[gg + M] = nxt.get(gg + M, Fraction(0)) + cc * xiM
            terms = nxt
        for gg, cc in terms.items():
            if g + gg <= gmax:
                add_term(out, g + gg, n, m, px, pt, 0, c * cc)
    return out


def quasilinear_residual(u, xi, nl_scale, gmax):
    """Graded residual of  u_xx - u_tt - nl_scale*eps^2*(u_t^2 u_xx + u_x^2 u_tt - 2 u_x u_t u_xt).

    nl_scale carries the 1/b^2 normalisation per unit of the grading
    variable eps^2; the linear part keeps omega symbolic until the final
    substitution omega^2 -> sum_M xi[M] eps^(2M).
    """
    ux, ut = diff_x(u), diff_t(u)
    uxx, utt = diff_x(ux), diff_t(ut)
    uxt = diff_t(ux)
    lin = add(uxx, scale(utt, Fraction(-1)))
    p1 = mul(mul(ut, ut, gmax), uxx, gmax)
    p2 = mul(mul(ux, ux, gmax), utt, gmax)
    p3 = mul(mul(ux, ut, gmax), uxt, gmax)
    nl = add(add(p1, p2), scale(p3, Fraction(-2)))
    res = add(lin, scale(nl, -nl_scale, dg=1))
    return subst_omega_sq(res, xi, gmax)
