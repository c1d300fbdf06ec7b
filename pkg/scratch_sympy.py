"""Scratch: independent sympy resultant check of the unit ratios."""
import sys
sys.path.insert(0, "/root/pkg/src")

from transdeg.toric import canonical_sets
from transdeg.spectral import adjugate_coefficient_matrices
from transdeg import certify as ct
from transdeg.exactcore.polynomials import poly_mul
from transdeg.exactcore.matrices import char_poly

import sympy as sy

COMPANION = ((0, -1, 1), (1, 0, 0), (0, 1, 0))
Y = ((1, -2, 3), (0, 1, -2), (0, 0, 1))
P = char_poly(COMPANION)
adj = adjugate_coefficient_matrices(COMPANION)
support = canonical_sets(3)
pivot = (0, 0)

def F_of(v, w):
    F1, F2 = ct._element_polys(COMPANION, Y, adj, pivot, v, w)
    return poly_mul(F1, F2)

x, l, m = sy.symbols("x l m")

def ev(coeffs, z):
    return sum(sy.Integer(c) * z**k for k, c in enumerate(coeffs))

Pl = ev(P, l)
Pm = ev(P, m)

cases = [
    ("B1", (0, 1, 1), (0, 1, -1), (1, 1, 0), (0, 0, 1)),
    ("B2", (0, 1, 1), (0, 1, -1), (1, 1, 0), (1, -1, 0)),
    ("B3", (0, 1, 1), (1, 0, 0), (1, 1, 0), (0, 1, -1)),
    ("M1", (0, 1, 1), (0, 0, 1), (0, 1, 1), (1, -1, 0)),
    ("M2", (0, 1, 1), (0, 1, 0), (0, 1, 1), (1, 0, -1)),
]
for label, v, w, v2, w2 in cases:
    Fa = F_of(v, w)
    Fb = F_of(v2, w2)
    h = sy.expand(x * ev(Fb, m) * ev(Fa, l) - ev(Fa, m) * ev(Fb, l))
    inner = sy.resultant(Pm, h, m)
    outer = sy.Poly(sy.resultant(Pl, inner, l), x)
    quo, rem = sy.div(outer, sy.Poly((x - 1) ** 3, x), domain="QQ")
    assert rem.is_zero, (label, "division not exact")
    monic = quo.monic()
    print(label, "->", monic.as_expr(), "| factors:",
          sy.factor_list(monic.as_expr()))
