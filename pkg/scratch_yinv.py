"""Scratch: discordance scan with the transporter orientation of section 5."""
import sys
sys.path.insert(0, "/root/pkg/src")

from collections import Counter
from fractions import Fraction

from transdeg.toric import canonical_sets
from transdeg.spectral import spectral_data
from transdeg import certify as ct
from transdeg.exactcore.matrices import mat_mul, inverse_unimodular

COMPANION = ((0, -1, 1), (1, 0, 0), (0, 1, 0))
Y = ((1, -2, 3), (0, 1, -2), (0, 0, 1))
A_MATRIX = ((-3, -14, -12), (4, 11, 6), (-2, -4, -1))

Yinv = inverse_unimodular(Y)
M7 = COMPANION
for _ in range(6):
    M7 = mat_mul(M7, COMPANION)
print("Y M^7 Y^-1 == A:", mat_mul(mat_mul(Y, M7), Yinv) == A_MATRIX)
print("Y^-1 M^7 Y == A:", mat_mul(mat_mul(Yinv, M7), Y) == A_MATRIX)

support = canonical_sets(3)
spec = spectral_data(COMPANION, Fraction(1, 10**40))

for label, Z in (("Y_p", Y), ("Y_p^-1", Yinv)):
    cert = ct.certify_discordance(COMPANION, Z, support, spec)
    ev = cert.evidence
    sig = Counter(r["verdict"] for r in ev["sigma_elements"])
    rat = Counter(r["verdict"] for r in ev["ratio_elements"])
    print(f"\n=== transporter {label}: verdict={cert.verdict}")
    print("  sigma:", dict(sig), " ratios:", dict(rat))
    for r in ev["ratio_elements"]:
        if r["verdict"] == "unit":
            print("  UNIT", r["v"], r["w"], "/", r["v2"], r["w2"],
                  [str(c) for c in r["orbit_poly"]])
