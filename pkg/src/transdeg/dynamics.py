"""Degree growth of f = g . h_A through lattice-measure evolution.

The degree of a monomial map h_A on a curve class with measure mu is the
integral of the support function psi against the pushforward A_* mu; the
involution g adds deg(C) copies of the balanced atom set V.  Alternating
the two steps from the line measure mu_L = mu_P yields exact integer
sequences deg f^n and deg(h o f^n).

The same sequences satisfy a closed convolution recursion in the numbers

    Psi_{U,W}(A^n) = sum_{w in W} max_{u in U} <u, A^n w>,

and degree_sequence always recomputes them that way as a cross-check;
disagreement raises RecursionMismatch and means an index-convention bug.

Convention used throughout (self-consistent; verified against the
symbolic oracle):

    mu_0 = mu_P
    deg(h o f^n)  = integral of psi d(A_* mu_n)
    mu_{n+1}      = A_* mu_n + deg(h o f^n) . mu_V
    deg f^n       = integral of psi d mu_n

equivalently  mu_n = A^n mu_P + sum_{j=0}^{n-1} deg(h o f^j) A^{n-1-j} mu_V.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import RecursionMismatch
from .exactcore.matrices import is_sl, mat_vec
from .toric import LatticeMeasure, canonical_sets, measure_from_set, support_function


# ---------------------------------------------------------------------------
# the Psi functional

def psi(A, U: Sequence, V: Sequence) -> int:
    """Psi_{U,V}(A) = sum_{v in V} max_{u in U} <u, A v>, exact."""
    if not U or not V:
        raise ValueError("U and V must be nonempty")
    return sum(support_function(mat_vec(A, v), U) for v in V)


def psi_power_table(A, U: Sequence, V: Sequence, P: Sequence, n_max: int):
    """(Psi_{U,P}(A^n), Psi_{U,V}(A^n)) for n = 0..n_max, via incremental
    powers A^{n+1} = A . A^n (entries grow geometrically; never recompute
    a power from scratch)."""
    if n_max < 0:
        raise ValueError("n_max must be >= 0")
    d = len(A)
    power = tuple(tuple(int(i == j) for j in range(d)) for i in range(d))
    psi_AP, psi_AV = [], []
    from .exactcore.matrices import mat_mul

    for _ in range(n_max + 1):
        psi_AP.append(psi(power, U, P))
        psi_AV.append(psi(power, U, V))
        power = mat_mul(A, power)
    return tuple(psi_AP), tuple(psi_AV)


def integrate_support(mu: LatticeMeasure, U: Sequence) -> int:
    """Integral of psi(.) = max_{u in U} <u, .> against mu."""
    return sum(w * support_function(v, U) for v, w in mu.items())


# ---------------------------------------------------------------------------
# measure evolution

def pushforward(mu: LatticeMeasure, A) -> LatticeMeasure:
    """A_* mu: atoms v -> Av, weights merged on collision."""
    from .exactcore.matrices import det

    if abs(det(A)) != 1:
        raise ValueError("pushforward requires a matrix invertible over the integers")
    atoms = {}
    for v, w in mu.items():
        image = mat_vec(A, v)
        atoms[image] = atoms.get(image, 0) + w
    return LatticeMeasure(atoms, balanced=mu.balanced)


def involution_step(mu: LatticeMeasure, deg_C: int, V: Sequence) -> LatticeMeasure:
    """mu_{g(C)} = mu_C + deg(C) . mu_V.  Requires deg_C >= 1."""
    if not isinstance(deg_C, int) or deg_C < 1:
        raise ValueError(f"deg_C must be a positive integer, got {deg_C!r}")
    atoms = dict(mu.atoms)
    for v in V:
        v = tuple(v)
        atoms[v] = atoms.get(v, 0) + deg_C
    return LatticeMeasure(atoms, balanced=mu.balanced)


# ---------------------------------------------------------------------------
# degree sequences

@dataclass(frozen=True)
class DegreeSequence:
    """Exact degree data for f = g . h_A up to iterate n_max.

    deg_f[n]  = deg f^n          (deg_f[0] = 1)
    deg_hf[n] = deg(h o f^n)     (deg_hf[0] = deg h_A)
    psi_AP[n] = Psi_{U,P}(A^n)   (= deg h_{A^n})
    psi_AV[n] = Psi_{U,V}(A^n)
    """

    n_max: int
    deg_f: tuple
    deg_hf: tuple
    psi_AV: tuple
    psi_AP: tuple

    def growth_ratio(self, n: int) -> float:
        """deg f^{n+1} / deg f^n, a cheap probe of the dynamical degree."""
        if not 0 <= n < self.n_max:
            raise IndexError(n)
        return self.deg_f[n + 1] / self.deg_f[n]

    def to_table(self) -> str:
        lines = ["n\tdeg_f\tdeg_hf\tpsi_AP\tpsi_AV"]
        for n in range(self.n_max + 1):
            lines.append(
                f"{n}\t{self.deg_f[n]}\t{self.deg_hf[n]}"
                f"\t{self.psi_AP[n]}\t{self.psi_AV[n]}"
            )
        return "\n".join(lines) + "\n"


def _recursion_check(deg_f, deg_hf, psi_AP_ext, psi_AV):
    """Closed-form recomputation of both sequences from the Psi tables.

    deg f^n      = Psi_P(A^n)     + sum_{j<n} deg_hf[j] * Psi_V(A^{n-1-j})
    deg(h o f^n) = Psi_P(A^{n+1}) + sum_{j<n} deg_hf[j] * Psi_V(A^{n-j})
    """
    for n in range(len(deg_hf)):
        f_rec = psi_AP_ext[n] + sum(
            deg_hf[j] * psi_AV[n - 1 - j] for j in range(n)
        )
        if f_rec != deg_f[n]:
            raise RecursionMismatch(n)
        hf_rec = psi_AP_ext[n + 1] + sum(
            deg_hf[j] * psi_AV[n - j] for j in range(n)
        )
        if hf_rec != deg_hf[n]:
            raise RecursionMismatch(n)


def degree_sequence(A, d: int, n_max: int) -> DegreeSequence:
    """Exact deg f^n and deg(h o f^n) for n = 0..n_max, two ways.

    Route 1 alternates pushforward and involution_step on measures (every
    intermediate is constructed with the balanced flag set, so balance is
    verified at each step).  Route 2 is the convolution recursion on the
    Psi tables.  The two must agree exactly; RecursionMismatch otherwise.
    """
    if n_max < 0:
        raise ValueError("n_max must be >= 0")
    if len(A) != d or any(len(row) != d for row in A):
        raise ValueError(f"matrix is not {d}x{d}")
    if not is_sl(A):
        raise ValueError("A must lie in SL_d(Z)")
    data = canonical_sets(d)
    U, V, P = data.U_set, data.V_set, data.P_set

    mu = measure_from_set(P, balanced=True)
    deg_f = [integrate_support(mu, U)]
    deg_hf = []
    for n in range(n_max + 1):
        nu = pushforward(mu, A)
        dh = integrate_support(nu, U)
        deg_hf.append(dh)
        if n < n_max:
            mu = involution_step(nu, dh, V)
            deg_f.append(integrate_support(mu, U))

    psi_AP_ext, psi_AV_ext = psi_power_table(A, U, V, P, n_max + 1)
    _recursion_check(deg_f, deg_hf, psi_AP_ext, psi_AV_ext)

    return DegreeSequence(
        n_max=n_max,
        deg_f=tuple(deg_f),
        deg_hf=tuple(deg_hf),
        psi_AV=psi_AV_ext[: n_max + 1],
        psi_AP=psi_AP_ext[: n_max + 1],
    )
