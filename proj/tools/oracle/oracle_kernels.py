"""Independent oracle for the six harmonic-coupling kernels.

Each kernel is the coefficient with which a triple product of odd-harmonic
trig factors contributes to a canonical target harmonic after folding
negative arguments:

  Q1(v, v1, v2, v3): 4 sin(a1) sin(a2) sin(a3)  -> coefficient of sin(a),
  Q2:                4 cos(a1) cos(a2) sin(a3)  -> sin(a),
  Q3:                4 sin(a1) cos(a2) cos(a3)  -> sin(a),
  P1(u, u1, u2, u3): 4 sin(b1) sin(b2) cos(b3)  -> coefficient of cos(b),
  P2:                4 cos(b1) cos(b2) cos(b3)  -> cos(b),
  P3:                4 sin(b1) cos(b2) sin(b3)  -> cos(b),

with a_i = (2 v_i + 1) theta, a = (2v+1) theta (and the same for b/u with
the time phase).  Computed here by direct product-to-sum expansion and
harmonic folding; no hand-transcribed Kronecker-delta lists are involved.

Emits a C++ table of values on the index box [0..3]^4 for the test suite,
plus a few spot values.
"""

from fractions import Fraction
from itertools import product

from graded_trig import SIN, COS, add_term, mul


def kernel(kind, tgt, i1, i2, i3):
    pats = {
        'Q1': (SIN, SIN, SIN, SIN), 'Q2': (COS, COS, SIN, SIN),
        'Q3': (SIN, COS, COS, SIN), 'P1': (SIN, SIN, COS, COS),
        'P2': (COS, COS, COS, COS), 'P3': (SIN, COS, SIN, COS),
    }
    p1, p2, p3, ptgt = pats[kind]
    # build the triple product on a single axis (use the x slot; t slot trivial)
    f1 = {(0, 2 * i1 + 1, 0, p1, COS, 0): Fraction(1)}
    f2 = {(0, 2 * i2 + 1, 0, p2, COS, 0): Fraction(1)}
    f3 = {(0, 2 * i3 + 1, 0, p3, COS, 0): Fraction(1)}
    prod = mul(mul(f1, f2), f3)
    c = prod.get((0, 2 * tgt + 1, 0, ptgt, COS, 0), Fraction(0)) * 4
    assert c.denominator == 1
    return int(c)


def main():
    names = ['Q1', 'Q2', 'Q3', 'P1', 'P2', 'P3']
    print("// kernel spot checks:")
    for k in names:
        print(f"//   {k}(0,0,0,0) = {kernel(k,0,0,0,0)}, "
              f"{k}(1,0,0,0) = {kernel(k,1,0,0,0)}, "
              f"{k}(2,1,0,1) = {kernel(k,2,1,0,1)}")
    print()
    print("// C++ table: kind, tgt, i1, i2, i3, value (only nonzero), box [0..3]^4")
    for ki, k in enumerate(names):
        for tgt, i1, i2, i3 in product(range(4), repeat=4):
            v = kernel(k, tgt, i1, i2, i3)
            if v != 0:
                print(f"    {{{ki},{tgt},{i1},{i2},{i3},{v}}},")


if __name__ == "__main__":
    main()
