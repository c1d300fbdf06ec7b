"""Canonical combinatorial data attached to the standard fan of projective
d-space and to the quadratic-type involution g = B^{-1} . c . B.

For dimension d >= 3 this module builds:

* the fan generators  P = {(-1,...,-1), e_1, ..., e_d},
* the weight set      U = {0, -e_1, ..., -e_d}, whose support function is
  psi(v) = max(0, -v_1, ..., -v_d),
* the d+1 vectors V, one per linear form b_j = (Bx)_j: the j-th vector
  records the order of b_j in the affine components g_k/g_0 for k = 1..d
  (pure exponent bookkeeping on the explicit factorization of g - no
  polynomial expansion is done, or needed),
* the difference set D = (U - U) \\ {0},
* the d(d+1)/2 wall normals: primitive integer normals of the hyperplanes
  spanned by the (d-1)-subsets of P, canonicalized so that the first
  nonzero entry is positive.

Everything is exact integer / rational arithmetic on immutable tuples.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import gcd
from typing import Mapping, Sequence

from .errors import DimensionTooSmall
from .exactcore.matrices import adjugate, det


# ---------------------------------------------------------------------------
# point sets

def p_set(d: int) -> tuple:
    return ((-1,) * d,) + tuple(
        tuple(int(j == i) for j in range(d)) for i in range(d)
    )


def u_set(d: int) -> tuple:
    return ((0,) * d,) + tuple(
        tuple(-int(j == i) for j in range(d)) for i in range(d)
    )


def _excluded_indices(d: int) -> tuple:
    """excluded[j] = the two b-indices that do NOT divide component g_j."""
    out = [frozenset((j, j + 1)) for j in range(d)]
    out.append(frozenset((0, d)))
    return tuple(out)


def v_set(d: int) -> tuple:
    """One vector per linear form b_j, j = 0..d.

    Component g_k = x_k * prod_{i not excluded for k} b_i, so in the affine
    chart the order of b_j in g_k/g_0 is

        ord_j(k) = [b_j | g_k] - [b_j | g_0]
                 = [j in excluded(0)] - [j in excluded(k)].

    The j-th vector of V is (ord_j(1), ..., ord_j(d)).  The collection is
    balanced: each component is excluded from exactly two factorizations.
    """
    exc = _excluded_indices(d)
    return tuple(
        tuple(int(j in exc[0]) - int(j in exc[k]) for k in range(1, d + 1))
        for j in range(d + 1)
    )


def d_set(U: Sequence) -> tuple:
    """Nonzero pairwise differences of U, deduplicated, sorted."""
    out = set()
    for a in U:
        for b in U:
            w = tuple(x - y for x, y in zip(a, b))
            if any(w):
                out.add(w)
    return tuple(sorted(out))


def _primitive(v: Sequence[int]) -> tuple:
    g = 0
    for x in v:
        g = gcd(g, x)
    if g == 0:
        raise ValueError("zero vector has no primitive form")
    v = tuple(x // g for x in v)
    for x in v:
        if x != 0:
            return v if x > 0 else tuple(-y for y in v)
    raise AssertionError("unreachable")


def wall_normals(d: int) -> tuple:
    """Primitive normals of the hyperplanes spanned by (d-1)-subsets of P.

    There are d(d+1)/2 of them -- the codimension-1 cones of the fan of
    projective d-space -- canonicalized with first nonzero entry positive
    and returned sorted.
    """
    P = p_set(d)
    out = set()
    for subset in combinations(P, d - 1):
        # integer nullspace of the (d-1) x d system <n, p> = 0 by cofactor
        # expansion: n_i = (-1)^i * (minor dropping column i)
        normal = []
        for i in range(d):
            minor = tuple(
                tuple(row[c] for c in range(d) if c != i) for row in subset
            )
            m = det(minor)
            normal.append(m if i % 2 == 0 else -m)
        if not any(normal):
            continue  # degenerate subset; cannot happen for this fan
        out.add(_primitive(normal))
    return tuple(sorted(out))


@dataclass(frozen=True)
class SupportData:
    """All canonical lattice data for one dimension."""

    dim: int
    P_set: tuple
    U_set: tuple
    V_set: tuple
    D_set: tuple
    wall_normals: tuple

    def as_dict(self) -> dict:
        return {
            "dim": self.dim,
            "P_set": [list(v) for v in self.P_set],
            "U_set": [list(v) for v in self.U_set],
            "V_set": [list(v) for v in self.V_set],
            "D_set": [list(v) for v in self.D_set],
            "wall_normals": [list(v) for v in self.wall_normals],
        }


def canonical_sets(d: int) -> SupportData:
    if d < 3:
        raise DimensionTooSmall(f"need d >= 3, got {d}")
    U = u_set(d)
    return SupportData(
        dim=d,
        P_set=p_set(d),
        U_set=U,
        V_set=v_set(d),
        D_set=d_set(U),
        wall_normals=wall_normals(d),
    )


# ---------------------------------------------------------------------------
# lattice measures

@dataclass(frozen=True)
class LatticeMeasure:
    """A finite nonnegative integer combination of Dirac masses on Z^d.

    ``atoms`` maps lattice vectors (tuples) to strictly positive integer
    weights.  Setting ``balanced=True`` asserts sum(weight * vector) = 0;
    the assertion is verified at construction time and rejected if false.
    """

    atoms: Mapping
    balanced: bool = False

    def __post_init__(self):
        cleaned = {}
        dim = None
        for v, w in self.atoms.items():
            v = tuple(int(x) for x in v)
            if dim is None:
                dim = len(v)
            elif len(v) != dim:
                raise ValueError("atoms live in different dimensions")
            if not isinstance(w, int) or isinstance(w, bool) or w <= 0:
                raise ValueError(f"weight for {v} must be a positive integer, got {w!r}")
            cleaned[v] = cleaned.get(v, 0) + w
        object.__setattr__(self, "atoms", cleaned)
        if self.balanced and cleaned:
            total = [0] * dim
            for v, w in cleaned.items():
                for i, x in enumerate(v):
                    total[i] += w * x
            if any(total):
                raise ValueError(f"measure marked balanced but sum w*v = {tuple(total)}")

    def mass(self) -> int:
        return sum(self.atoms.values())

    def moment(self) -> tuple:
        """Sum of weight * vector (the zero vector iff balanced)."""
        if not self.atoms:
            return ()
        dim = len(next(iter(self.atoms)))
        total = [0] * dim
        for v, w in self.atoms.items():
            for i, x in enumerate(v):
                total[i] += w * x
        return tuple(total)

    def __eq__(self, other):
        if not isinstance(other, LatticeMeasure):
            return NotImplemented
        return self.atoms == other.atoms

    def __hash__(self):
        return hash(frozenset(self.atoms.items()))

    def items(self):
        return self.atoms.items()


def measure_from_set(vectors: Sequence, balanced: bool = False) -> LatticeMeasure:
    """Unit mass on each vector of a set (e.g. mu_P, mu_V)."""
    return LatticeMeasure({tuple(v): 1 for v in vectors}, balanced=balanced)


# ---------------------------------------------------------------------------
# support function

def support_function(v: Sequence[int], U: Sequence) -> int:
    """max_{u in U} <u, v>, exact."""
    if not U:
        raise ValueError("U must be nonempty")
    return max(sum(a * b for a, b in zip(u, v)) for u in U)


def psi(v: Sequence[int]) -> int:
    """The standard support function max(0, -v_1, ..., -v_d)."""
    return max(0, max(-x for x in v))


# ---------------------------------------------------------------------------
# the involution g

def _sign(k: int) -> int:
    return 1 if k % 2 == 0 else -1


def b_matrix(d: int) -> tuple:
    """The (d+1) x (d+1) sign matrix B: B[i][j] = (-1)^(i-j) for i <= j
    and (-1)^(i-j-1) for i > j."""
    n = d + 1
    return tuple(
        tuple(_sign(i - j) if i <= j else _sign(i - j - 1) for j in range(n))
        for i in range(n)
    )


def b_matrix_inverse(d: int) -> tuple:
    """Exact B^{-1} (entries always land in {0, +-1/2})."""
    B = b_matrix(d)
    dB = det(B)
    adj = adjugate(B)
    n = d + 1
    inv = tuple(
        tuple(Fraction(adj[i][j], dB) for j in range(n)) for i in range(n)
    )
    allowed = {Fraction(0), Fraction(1, 2), Fraction(-1, 2)}
    for row in inv:
        for e in row:
            if e not in allowed:
                raise AssertionError(f"unexpected entry {e} in B^-1 for d={d}")
    return inv


def involution_factor_indices(d: int) -> tuple:
    """For each component g_j, the sorted tuple of i with b_i dividing g_j.

    g_j = x_j * prod_{i not in {j, j+1}} b_i   for j < d,
    g_d = x_d * prod_{i not in {0, d}} b_i,

    so every component has total degree 1 + (d-1) = d.
    """
    exc = _excluded_indices(d)
    return tuple(
        tuple(i for i in range(d + 1) if i not in exc[j]) for j in range(d + 1)
    )


@dataclass(frozen=True)
class InvolutionData:
    dim: int
    B: tuple
    B_inv: tuple
    factor_indices: tuple  # factor_indices[j] = b-indices multiplying x_j

    @property
    def component_degree(self) -> int:
        return self.dim


def involution_components(d: int) -> InvolutionData:
    if d < 3:
        raise DimensionTooSmall(f"need d >= 3, got {d}")
    return InvolutionData(
        dim=d,
        B=b_matrix(d),
        B_inv=b_matrix_inverse(d),
        factor_indices=involution_factor_indices(d),
    )
