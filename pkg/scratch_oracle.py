"""Scratch: exact resultant oracle for the discordance unit ratios."""
import sys
sys.path.insert(0, "/root/pkg/src")

import math
from fractions import Fraction

from transdeg.toric import canonical_sets
from transdeg.spectral import spectral_data, adjugate_coefficient_matrices, sigma
from transdeg import certify as ct
from transdeg.exactcore.polynomials import (
    resultant_bivariate, poly_divmod_exact, normalize, poly_mul, degree,
)
from transdeg.exactcore.matrices import char_poly

COMPANION = ((0, -1, 1), (1, 0, 0), (0, 1, 0))
Y = ((1, -2, 3), (0, 1, -2), (0, 0, 1))

support = canonical_sets(3)
spec = spectral_data(COMPANION, Fraction(1, 10**40))
P = char_poly(COMPANION)
d = 3
adj = adjugate_coefficient_matrices(COMPANION)

# pivot search identical to certify_discordance
pivot = None
for i0 in range(d):
    for j0 in range(d):
        H = ct._poly_add_many(
            poly_mul(ct._entry_poly(adj, i0, k), ct._entry_poly(adj, k, j0))
            for k in range(d)
        )
        if ct._resultant_with(P, H) != 0:
            pivot = (i0, j0)
            break
    if pivot:
        break
i0, j0 = pivot
H = ct._poly_add_many(
    poly_mul(ct._entry_poly(adj, i0, k), ct._entry_poly(adj, k, j0))
    for k in range(d)
)
print("pivot:", pivot, "H:", H)

v_classes = sorted({ct._projective_rep(v) for v in support.V_set})
w_classes = sorted({ct._projective_rep(w) for w in support.D_set})
print("v_classes:", v_classes)
print("w_classes:", w_classes)
elements = []
for v in v_classes:
    for w in w_classes:
        F1, F2 = ct._element_polys(COMPANION, Y, adj, pivot, v, w)
        elements.append({"v": v, "w": w, "F": poly_mul(F1, F2)})
print("n elements:", len(elements))

# numeric cross-check: e_(up,low) from (F, H) against spectral.sigma
import mpmath as mp
mp.mp.prec = 200
rts = [mp.mpc(mp.mpf(r.re.lo._mpf_[:] and 0) if False else 0) for r in []]
# evaluate at high-precision eigenvalues via mpmath directly
lam = mp.polyroots([1, 0, 1, -1], maxsteps=200, extraprec=200)  # t^3 + t - 1
# identify leading conjugate pair (modulus > 1)
pair = [z for z in lam if abs(z) > 1]
up = pair[0] if mp.im(pair[0]) > 0 else pair[1]
low = mp.conj(up)

def pval(coeffs, z):
    acc = mp.mpc(0)
    for c in reversed(coeffs):
        acc = acc * z + c
    return acc

bad = 0
for el in elements:
    e_num = -pval(el["F"], low) * pval(H, up) / (pval(H, low) * pval(el["F"], up))
    s = sigma(Y, el["v"], el["w"], spec)
    sv = mp.mpc(
        mp.mpf(s.re.lo.numerator) / mp.mpf(s.re.lo.denominator)
        if isinstance(s.re.lo, Fraction) else 0, 0)
    # sigma returns a ComplexEnclosure; just compare midpoints loosely
    mid = mp.mpc(float(s.re.midpoint()), float(s.im.midpoint())) if hasattr(s.re, "midpoint") else None
    if mid is not None and abs(mid - e_num) > 1e-6:
        bad += 1
        print("MISMATCH", el["v"], el["w"], mid, complex(e_num))
print("sigma cross-check mismatches:", bad)

shared = ct._SharedRoots(P)

def exact_orbit_poly(Q1, Q2, sign):
    """Monic orbit polynomial of e = sign*Q1(m)Q2(l)/(Q2(m)Q1(l)) via resultants."""
    Q1, Q2 = normalize(Q1), normalize(Q2)
    h = {}
    for j, a in enumerate(Q1):
        for k, b in enumerate(Q2):
            h[(1, j, k)] = h.get((1, j, k), 0) + a * b          # x*Q1(l)Q2(m)
    for j, a in enumerate(Q2):
        for k, b in enumerate(Q1):
            h[(0, j, k)] = h.get((0, j, k), 0) - sign * a * b   # -sign*Q2(l)Q1(m)
    R = resultant_bivariate(P, h, d * d)
    # diagonal l == m contributes (x - sign)^d
    for _ in range(d):
        R = poly_divmod_exact(R, (-sign, 1))
    lead = R[-1]
    return tuple(Fraction(c, lead) for c in R)

def run_case(label, Q1, Q2, sign):
    rec = ct._orbit_unit_test(P, Q1, Q2, sign, shared, start_prec=spec.precision)
    exact = exact_orbit_poly(Q1, Q2, sign)
    got = tuple(Fraction(c) for c in rec.get("orbit_poly", ()))
    match = got == exact
    print(f"{label}: verdict={rec['verdict']:9s} match={match}")
    if not match:
        print("   numeric:", got)
        print("   exact:  ", exact)
    return match

# pick two sigma elements and all suspicious ratio pairs
print("\n-- sigma spot checks --")
run_case("sigma[0]", elements[0]["F"], H, -1)
run_case("sigma[5]", elements[5]["F"], H, -1)

print("\n-- all 66 ratios: compare numeric reconstruction to exact resultant --")
units = []
for a in range(len(elements)):
    for b in range(a + 1, len(elements)):
        ea, eb = elements[a], elements[b]
        rec = ct._orbit_unit_test(P, ea["F"], eb["F"], 1, shared,
                                  start_prec=spec.precision)
        exact = exact_orbit_poly(ea["F"], eb["F"], 1)
        got = tuple(Fraction(c) for c in rec.get("orbit_poly", ()))
        tag = "OK " if got == exact else "BUG"
        if rec["verdict"] == "unit":
            units.append((ea["v"], ea["w"], eb["v"], eb["w"], exact))
        if got != exact or rec["verdict"] == "unit":
            print(tag, ea["v"], ea["w"], "/", eb["v"], eb["w"],
                  rec["verdict"], exact if rec["verdict"] == "unit" else "")
print("\nunit count:", len(units))
