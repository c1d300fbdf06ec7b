"""Machine-checkable certificates for the degree-growth hypotheses.

Every public function returns a :class:`Certificate`: a verdict (``proved`` /
``refuted`` / ``inconclusive``) together with evidence sufficient to replay
the check.  The checks are exact — factorization patterns of integer
polynomials modulo primes, exact resultants and cyclotomic divisions, CRT
merges of zero positions of integer linear recurrences, and rational
reconstruction of Galois-orbit polynomials from certified root enclosures.
Nothing in this module trusts floating point: enclosures only ever *decide*
a question when the exact answer is determined by interval separation, and
every reconstructed rational is confirmed by an a-priori denominator bound.

Certificate kinds
-----------------
``irreducible``      the polynomial is irreducible over Q
``galois_sd``        the Galois group is the full symmetric group S_d
``leading_pair``     a strictly dominant complex-conjugate eigenvalue pair
``no_real_power``    no power of the leading eigenvalue is real
``resonance_free``   no multiplicative resonance among the eigenvalues
``cone_condition``   the forward orbit avoids the critical walls
``discordance``      sigma values and their ratios are not algebraic units
``dyndeg``           a certified bracket for the series growth rate
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import metadata

import numpy as np

from .errors import (
    BoundNotReached,
    DenominatorNearZero,
    NotSquarefree,
    PrecisionCeiling,
    ReconstructionAmbiguous,
    RootsNotSeparable,
)
from .exactcore.enclosures import (
    ComplexEnclosure,
    RealEnclosure,
    enclosure_context,
    precision_ceiling,
    unit_circle_point,
)
from .exactcore.matrices import char_poly, inverse_unimodular, mat_mul, mat_vec
from .exactcore.modp import (
    _is_probable_prime,
    element_order,
    factor_pattern_mod_p,
    roots_mod_p,
)
from .exactcore.polynomials import (
    cyclotomic,
    degree,
    euler_phi,
    normalize,
    poly_divmod_exact,
    poly_divmod_q,
    poly_eval,
    poly_is_squarefree_q,
    poly_mul,
    poly_scale,
    ratio_resultant,
    resultant,
    sturm_real_root_count,
)
from .exactcore.reconstruct import mpf_to_fraction, reconstruct_in_lattice
from .spectral import SpectralData, adjugate_coefficient_matrices, certified_roots

try:
    TOOL_VERSION = metadata.version("artifact")
except metadata.PackageNotFoundError:  # running from a source tree
    TOOL_VERSION = "0+unknown"

CERTIFICATE_KINDS = frozenset({
    "irreducible",
    "galois_sd",
    "leading_pair",
    "no_real_power",
    "resonance_free",
    "cone_condition",
    "discordance",
    "dyndeg",
})

VERDICTS = ("proved", "refuted", "inconclusive")

DEFAULT_PRIME_BUDGET = 500
DEFAULT_TARGET_BOUND = 10**20
DEFAULT_PERIOD_CAP = 10**6

# safety valve for the CRT residue merge; never hit on sane inputs
_RESIDUE_SET_CAP = 500_000


# ---------------------------------------------------------------------------
# the certificate container

def _clean(obj):
    """Map evidence to JSON-native values (exactly, or not at all)."""
    if obj is None or isinstance(obj, (bool, int, str)):
        return obj
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, float):
        raise TypeError("floats are not certificate evidence; use Fraction")
    if isinstance(obj, dict):
        return {str(k): _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    raise TypeError(f"unsupported evidence type: {type(obj).__name__}")


@dataclass(frozen=True)
class Certificate:
    """A replayable verdict: what was checked, what came out, and why."""

    kind: str
    verdict: str
    evidence: dict
    parameters: dict = field(default_factory=dict)
    tool_version: str = TOOL_VERSION


def _certificate(kind, verdict, evidence, parameters) -> Certificate:
    if kind not in CERTIFICATE_KINDS:
        raise ValueError(f"unknown certificate kind {kind!r}")
    if verdict not in VERDICTS:
        raise ValueError(f"unknown verdict {verdict!r}")
    return Certificate(kind, verdict, _clean(evidence), _clean(parameters))


def certificate_to_json(cert: Certificate) -> str:
    """Canonical JSON: sorted keys, no whitespace, deterministic."""
    record = {
        "kind": cert.kind,
        "verdict": cert.verdict,
        "evidence": cert.evidence,
        "parameters": cert.parameters,
        "tool_version": cert.tool_version,
    }
    return json.dumps(record, sort_keys=True, separators=(",", ":"))


def certificate_from_json(text: str) -> Certificate:
    record = json.loads(text)
    return Certificate(
        kind=record["kind"],
        verdict=record["verdict"],
        evidence=record["evidence"],
        parameters=record["parameters"],
        tool_version=record["tool_version"],
    )


# ---------------------------------------------------------------------------
# prime utilities

def _prime_stream(start: int = 2):
    """Primes in increasing order from ``start``."""
    n = max(2, start)
    if n == 2:
        yield 2
        n = 3
    if n % 2 == 0:
        n += 1
    while True:
        if _is_probable_prime(n):
            yield n
        n += 2


def _require_monic(P) -> tuple:
    P = normalize(P)
    if degree(P) < 1:
        raise ValueError("need a nonconstant polynomial")
    if P[-1] != 1:
        raise ValueError("need a monic integer polynomial")
    if any(not isinstance(c, int) for c in P):
        raise ValueError("need integer coefficients")
    return P


# ---------------------------------------------------------------------------
# irreducibility and Galois group

def certify_irreducible(P, prime_budget: int = DEFAULT_PRIME_BUDGET) -> Certificate:
    """Irreducibility over Q via a single inert prime.

    If P stays irreducible modulo some prime (factor pattern ``(deg P,)``),
    it is irreducible over Q.  The converse fails, so absence of a witness
    among the primes ``p <= prime_budget`` is only ``inconclusive`` — this
    certifier never refutes.
    """
    P = _require_monic(P)
    d = degree(P)
    params = {"prime_budget": prime_budget}
    scanned = 0
    for p in _prime_stream():
        if p > prime_budget:
            break
        try:
            pattern = factor_pattern_mod_p(P, p)
        except NotSquarefree:
            continue
        scanned += 1
        if pattern == (d,):
            return _certificate(
                "irreducible",
                "proved",
                {"witness_prime": p, "factor_pattern": list(pattern)},
                params,
            )
    return _certificate(
        "irreducible",
        "inconclusive",
        {"primes_scanned": scanned, "reason": "no inert prime found"},
        params,
    )


def certify_galois_sd(P, prime_budget: int = DEFAULT_PRIME_BUDGET) -> Certificate:
    """Full symmetric Galois group from three factorization patterns.

    Pattern ``(d,)`` at some prime makes P irreducible, hence the group
    transitive.  Pattern ``(1, d-1)`` exhibits a (d-1)-cycle, so the group
    is doubly transitive and in particular primitive.  A squarefree pattern
    ``(1, ..., 1, 2)`` exhibits a transposition, and a primitive group
    containing a transposition is all of S_d.  For d = 3 the cycle and the
    transposition are the same pattern and one witness serves for both.
    """
    P = _require_monic(P)
    d = degree(P)
    if d < 3:
        raise ValueError("the symmetric-group test needs degree >= 3")
    params = {"prime_budget": prime_budget}
    want_inert = (d,)
    want_cycle = tuple(sorted((1, d - 1)))
    want_transposition = tuple(sorted([2] + [1] * (d - 2)))
    inert = cycle = transposition = None
    for p in _prime_stream():
        if p > prime_budget:
            break
        try:
            pattern = factor_pattern_mod_p(P, p)
        except NotSquarefree:
            continue
        if inert is None and pattern == want_inert:
            inert = p
        if cycle is None and pattern == want_cycle:
            cycle = p
        if transposition is None and pattern == want_transposition:
            transposition = p
        if inert is not None and cycle is not None and transposition is not None:
            return _certificate(
                "galois_sd",
                "proved",
                {
                    "irreducible_witness": inert,
                    "cycle_witness": cycle,
                    "transposition_witness": transposition,
                },
                params,
            )
    missing = [
        name
        for name, hit in (
            ("inert", inert),
            ("cycle", cycle),
            ("transposition", transposition),
        )
        if hit is None
    ]
    return _certificate(
        "galois_sd",
        "inconclusive",
        {
            "missing_patterns": missing,
            "irreducible_witness": inert,
            "cycle_witness": cycle,
            "transposition_witness": transposition,
        },
        params,
    )


# ---------------------------------------------------------------------------
# root-ratio torsion

def _ratio_quotient(P) -> tuple:
    """The integer polynomial whose roots are the off-diagonal root ratios.

    Res_y(P(y), P(x*y)) has roots l_j / l_i over all ordered index pairs;
    dividing out the d diagonal factors (x - 1) and normalizing the sign
    leaves a degree d(d-1) polynomial with positive leading coefficient.
    """
    P = _require_monic(P)
    d = degree(P)
    if d < 2:
        raise ValueError("need degree >= 2 for root ratios")
    if poly_eval(P, 0) == 0:
        raise ValueError("zero is a root; ratios are undefined")
    if not poly_is_squarefree_q(P):
        raise ValueError("polynomial must be squarefree")
    R = ratio_resultant(P)
    for _ in range(d):
        R = poly_divmod_exact(R, (-1, 1))
    if R[-1] < 0:
        R = poly_scale(-1, R)
    return R


def _match_root(boxes, old_box):
    hits = [s for s, nb in enumerate(boxes) if nb.overlaps(old_box)]
    return hits[0] if len(hits) == 1 else None


def _pair_ratio_decision(roots, pair, candidates):
    """One precision level of the torsion test for the pair ratio.

    Returns ``("proved", None)`` when the pair ratio's enclosure misses
    every candidate root of unity, ``("refuted", (k, m))`` when some
    candidate meets only the pair ratio or its mirror — hence *is* that
    ratio — and None when attribution is still ambiguous.
    """
    lo_i, up_i = pair
    d = len(roots)
    ratios = {}
    for a in range(d):
        for b in range(d):
            if a != b:
                ratios[(a, b)] = roots[b] / roots[a]
    pair_keys = {(lo_i, up_i), (up_i, lo_i)}
    for k, m in candidates:
        z = unit_circle_point(RealEnclosure(Fraction(m, k)))
        touching = {key for key, r in ratios.items() if r.overlaps(z)}
        if not touching & pair_keys:
            continue  # this root of unity is not the pair ratio
        if touching <= pair_keys:
            return ("refuted", (k, m))
        return None  # other ratios still overlap; escalate
    return ("proved", None)


def certify_no_real_power(P, spectral: SpectralData) -> Certificate:
    """No power of the leading eigenvalue is real.

    Equivalently, the ratio of the leading conjugate pair is not a root of
    unity.  Any root of unity among the root ratios has degree at most
    d(d-1), so only cyclotomics Phi_k with phi(k) <= d(d-1) can divide the
    ratio polynomial; if none does, the verdict is ``proved`` outright.
    Otherwise each surviving candidate is an actual root ratio, and
    certified enclosure separation decides whether it is the leading one.
    """
    P = _require_monic(P)
    if P != spectral.char_coeffs:
        raise ValueError("spectral data does not belong to this polynomial")
    d = degree(P)
    K = d * (d - 1)
    index_bound = 2 * K * K + 2
    params = {"cyclotomic_degree_bound": K, "cyclotomic_index_bound": index_bound}
    Q = _ratio_quotient(P)
    dividing = []
    for k in range(1, index_bound + 1):
        if euler_phi(k) > K:
            continue
        _, rem = poly_divmod_q(Q, cyclotomic(k))
        if not rem:
            dividing.append(k)
    if not dividing:
        return _certificate(
            "no_real_power",
            "proved",
            {"dividing_cyclotomics": [], "ratio_poly_degree": degree(Q)},
            params,
        )

    pair = spectral.leading_pair_indices
    pair_source = "leading"
    if pair is None:
        if len(spectral.pair_indices) == 1:
            pair = spectral.pair_indices[0]
            pair_source = "unique_conjugate_pair"
        else:
            return _certificate(
                "no_real_power",
                "inconclusive",
                {
                    "dividing_cyclotomics": dividing,
                    "reason": "no distinguished conjugate pair",
                },
                params,
            )
    candidates = [
        (k, m)
        for k in dividing
        for m in range(k)
        if math.gcd(m, k) == 1 or k == 1
    ]
    prec = max(spectral.precision, 128)
    roots = spectral.roots
    pair = tuple(pair)
    while True:
        with enclosure_context(prec):
            try:
                decision = _pair_ratio_decision(roots, pair, candidates)
            except DenominatorNearZero:
                decision = None
        if decision is not None:
            verdict, hit = decision
            evidence = {
                "dividing_cyclotomics": dividing,
                "pair_source": pair_source,
                "precision_bits": prec,
            }
            if verdict == "refuted":
                k, m = hit
                evidence["witness_order"] = k
                evidence["witness_turn"] = Fraction(m, k) if k > 1 else Fraction(0)
            return _certificate("no_real_power", verdict, evidence, params)
        prec *= 2
        if prec > precision_ceiling():
            raise PrecisionCeiling(
                "cannot separate the leading ratio from roots of unity"
            )
        cert = certified_roots(P, Fraction(1, 1 << (prec // 2)), start_prec=prec)
        a = _match_root(cert.roots, roots[pair[0]])
        b = _match_root(cert.roots, roots[pair[1]])
        if a is None or b is None:
            raise PrecisionCeiling("lost track of the conjugate pair while refining")
        roots, pair = cert.roots, (a, b)


def certify_resonance_free(P, spectral: SpectralData, galois=None) -> Certificate:
    """No multiplicative resonance among the eigenvalues.

    Refuted when every root is real (no complex pair can dominate).  Proved
    along two routes: a certified symmetric Galois group together with at
    most one real root and a certified dominant pair; or, in degree 3, the
    no-real-power test alone (one real root and one conjugate pair leave
    the pair ratio as the only possible resonance).
    """
    P = _require_monic(P)
    if P != spectral.char_coeffs:
        raise ValueError("spectral data does not belong to this polynomial")
    d = degree(P)
    real_count = sturm_real_root_count(P)
    params = {}
    if real_count == d:
        return _certificate(
            "resonance_free",
            "refuted",
            {"real_root_count": real_count, "reason": "all roots are real"},
            params,
        )
    galois_ok = (
        galois is not None
        and galois.kind == "galois_sd"
        and galois.verdict == "proved"
    )
    if galois_ok and real_count <= 1 and spectral.leading_pair_indices is not None:
        return _certificate(
            "resonance_free",
            "proved",
            {
                "real_root_count": real_count,
                "route": "symmetric_galois_group",
                "galois_evidence": galois.evidence,
            },
            params,
        )
    if d == 3:
        sub = certify_no_real_power(P, spectral)
        return _certificate(
            "resonance_free",
            sub.verdict,
            {
                "real_root_count": real_count,
                "route": "leading_ratio_no_torsion",
                "no_real_power": sub.evidence,
            },
            params,
        )
    return _certificate(
        "resonance_free",
        "inconclusive",
        {"real_root_count": real_count, "reason": "no applicable route"},
        params,
    )


# ---------------------------------------------------------------------------
# cone condition: zero positions of integer recurrences via good primes

@dataclass(frozen=True)
class RecurrenceStatus:
    """Where a_n = <u, A^n v> can still vanish, after all merged primes."""

    normal_u: tuple
    start_v: tuple
    verdict: str          # "nonzero_all_n" | "nonzero_up_to"
    witness_primes: tuple  # of (p, period, zero_positions)
    combined_bound: int | None  # certified a_n != 0 for 1 <= n <= bound


def _status_record(st: RecurrenceStatus) -> dict:
    return {
        "normal_u": list(st.normal_u),
        "start_v": list(st.start_v),
        "verdict": st.verdict,
        "witness_primes": [[p, m, list(z)] for (p, m, z) in st.witness_primes],
        "combined_bound": st.combined_bound,
    }


def _power_grid(r: int, m: int, p: int) -> np.ndarray:
    """r^n mod p for n = 0..m-1, via a sqrt-size block product."""
    if m == 1:
        return np.ones(1, dtype=np.int64)
    K = math.isqrt(m - 1) + 1
    small = np.ones(K, dtype=np.int64)
    for t in range(1, K):
        small[t] = small[t - 1] * r % p
    r_block = int(small[K - 1]) * r % p
    nblocks = (m + K - 1) // K
    big = np.ones(nblocks, dtype=np.int64)
    for t in range(1, nblocks):
        big[t] = big[t - 1] * r_block % p
    grid = (big[:, None] * small[None, :]) % p
    return grid.ravel()[:m]


def _solve_mod_p(rows, rhs, p):
    """Gaussian elimination mod p (tiny systems, invertible by construction)."""
    n = len(rhs)
    aug = [list(rows[i]) + [rhs[i] % p] for i in range(n)]
    for c in range(n):
        piv = next(r for r in range(c, n) if aug[r][c] % p)
        aug[c], aug[piv] = aug[piv], aug[c]
        inv = pow(aug[c][c] % p, -1, p)
        aug[c] = [x * inv % p for x in aug[c]]
        for r in range(n):
            if r != c and aug[r][c] % p:
                f = aug[r][c]
                aug[r] = [(x - f * y) % p for x, y in zip(aug[r], aug[c])]
    return [aug[r][n] for r in range(n)]


def _crt_merge(M: int, S: tuple, m: int, Z: tuple):
    """Residues mod lcm(M, m) compatible with S mod M and Z mod m."""
    g = math.gcd(M, m)
    L = M // g * m
    mg = m // g
    inv = pow((M // g) % mg, -1, mg) if mg > 1 else 0
    out = set()
    for s in S:
        for z in Z:
            diff = z - s
            if diff % g:
                continue
            t = (diff // g) * inv % mg if mg > 1 else 0
            out.add((s + M * t) % L)
    return L, tuple(sorted(out))


def _bound_from_residues(M: int, S: tuple) -> int:
    """Largest B with: any n >= 1 hitting zero satisfies n > B."""
    if not S:
        raise ValueError("empty residue set has no finite bound")
    first = min((r if r >= 1 else M) for r in S)
    return first - 1


def _scan_recurrences(A, P, recs, target_bound, prime_budget, period_cap):
    """Drive good primes through every recurrence until all are settled.

    Returns (statuses, good_primes); raises BoundNotReached — with partial
    results attached — when the prime budget runs out first.
    """
    d = len(A)
    seeds = []
    for u, v in recs:
        w = v
        a = []
        for _ in range(d):
            a.append(sum(x * y for x, y in zip(u, w)))
            w = mat_vec(A, w)
        seeds.append(a)

    # state per recurrence: modulus, residues, witnesses, final verdict
    state = [
        {"M": 1, "S": (0,), "witnesses": [], "verdict": None, "bound": 0}
        for _ in recs
    ]
    good_primes = []
    examined = 0
    for p in _prime_stream(3):
        if all(st["verdict"] is not None for st in state):
            break
        if examined >= prime_budget:
            break
        examined += 1
        try:
            roots = roots_mod_p(P, p)
        except NotSquarefree:
            continue
        roots = sorted(set(r % p for r in roots))
        if len(roots) != d or any(r == 0 for r in roots):
            continue
        orders = [element_order(r, p) for r in roots]
        m = math.lcm(*orders)
        if m > period_cap:
            continue
        good_primes.append((p, m))
        grids = [_power_grid(r, m, p) for r in roots]
        vand = [[pow(r, n, p) for r in roots] for n in range(d)]
        for idx, (u, v) in enumerate(recs):
            st = state[idx]
            if st["verdict"] is not None:
                continue
            alphas = _solve_mod_p(vand, [s % p for s in seeds[idx]], p)
            acc = np.zeros(m, dtype=np.int64)
            for al, g in zip(alphas, grids):
                if al:
                    acc += al * g
            acc %= p
            zeros = tuple(int(n) for n in np.nonzero(acc == 0)[0])
            st["witnesses"].append((p, m, zeros))
            if not zeros:
                st["verdict"] = "nonzero_all_n"
                st["bound"] = None
                continue
            M2, S2 = _crt_merge(st["M"], st["S"], m, zeros)
            if len(S2) > _RESIDUE_SET_CAP:
                st["witnesses"].pop()  # merge too costly; skip this prime
                continue
            st["M"], st["S"] = M2, S2
            if not S2:
                # sound for every n, but no single prime witnesses it;
                # report only the target-bound claim
                st["verdict"] = "nonzero_up_to"
                st["bound"] = target_bound
                continue
            st["bound"] = _bound_from_residues(M2, S2)
            if st["bound"] >= target_bound:
                st["verdict"] = "nonzero_up_to"

    statuses = []
    unresolved = None
    for (u, v), st in zip(recs, state):
        verdict = st["verdict"] or "nonzero_up_to"
        statuses.append(
            RecurrenceStatus(
                normal_u=tuple(u),
                start_v=tuple(v),
                verdict=verdict,
                witness_primes=tuple(st["witnesses"]),
                combined_bound=st["bound"],
            )
        )
        if st["verdict"] is None and unresolved is None:
            unresolved = (u, v, st["bound"])
    if unresolved is not None:
        u, v, achieved = unresolved
        err = BoundNotReached(
            f"recurrence u={u}, v={v} certified only to {achieved} < {target_bound}"
        )
        err.normal_u = tuple(u)
        err.start_v = tuple(v)
        err.achieved = achieved
        err.statuses = tuple(statuses)
        err.good_primes = tuple(good_primes)
        raise err
    return tuple(statuses), tuple(good_primes)


def certify_cone_condition(
    A,
    support,
    target_bound: int = DEFAULT_TARGET_BOUND,
    prime_budget: int = DEFAULT_PRIME_BUDGET,
    period_cap: int = DEFAULT_PERIOD_CAP,
) -> Certificate:
    """The orbit pairings <u, A^n v> stay nonzero out to ``target_bound``.

    One recurrence per wall normal u and per starting vector v in V or in
    the auxiliary support set.  A *good* prime is one where the
    characteristic polynomial splits into d distinct nonzero roots with
    period lcm at most ``period_cap``; at such a prime the recurrence is a
    pure power sum and one vectorized pass lists every zero position in a
    full period.  Zero sets from successive good primes are merged by CRT;
    a recurrence is settled by a zero-free prime (nonzero for all n) or by
    a merged first-candidate bound past the target.  An identically zero
    recurrence refutes the condition; an exhausted prime budget leaves it
    inconclusive.
    """
    d = len(A)
    P = char_poly(A)
    params = {
        "target_bound": target_bound,
        "prime_budget": prime_budget,
        "period_cap": period_cap,
    }
    recs = [
        (tuple(u), tuple(v))
        for u in support.wall_normals
        for v in tuple(support.V_set) + tuple(support.P_set)
    ]
    if not recs:
        raise ValueError("support provides no recurrences to scan")

    # exact order-d zero test: the first d terms determine the recurrence
    vanishing = []
    for u, v in recs:
        w = v
        terms = []
        for _ in range(d):
            terms.append(sum(x * y for x, y in zip(u, w)))
            w = mat_vec(A, w)
        if not any(terms):
            vanishing.append({"normal_u": list(u), "start_v": list(v)})
    if vanishing:
        return _certificate(
            "cone_condition",
            "refuted",
            {"vanishing_recurrences": vanishing},
            params,
        )

    try:
        statuses, good_primes = _scan_recurrences(
            A, P, recs, target_bound, prime_budget, period_cap
        )
        verdict = "proved"
        extra = {}
    except BoundNotReached as err:
        statuses, good_primes = err.statuses, err.good_primes
        verdict = "inconclusive"
        extra = {
            "error": "BoundNotReached",
            "first_unresolved": {
                "normal_u": list(err.normal_u),
                "start_v": list(err.start_v),
                "achieved": err.achieved,
            },
        }
    evidence = {
        "recurrences": [_status_record(st) for st in statuses],
        "good_primes": [[p, m] for p, m in good_primes],
        **extra,
    }
    return _certificate("cone_condition", verdict, evidence, params)


# ---------------------------------------------------------------------------
# discordance: Galois-orbit unit tests for sigma values and their ratios

def _entry_poly(adj_mats, i, j) -> tuple:
    """adj(xI - A)[i][j] as a low-first integer polynomial."""
    d = len(adj_mats)
    return normalize(tuple(adj_mats[d - 1 - t][i][j] for t in range(d)))


def _poly_add_many(polys) -> tuple:
    out = ()
    for q in polys:
        la, lb = len(out), len(q)
        out = tuple(
            (out[t] if t < la else 0) + (q[t] if t < lb else 0)
            for t in range(max(la, lb))
        )
    return normalize(out)


def _poly_at_enc(coeffs, z: ComplexEnclosure) -> ComplexEnclosure:
    acc = ComplexEnclosure(0)
    for c in reversed(coeffs):
        acc = acc * z + c
    return acc


def _resultant_with(P, Q) -> int:
    Q = normalize(Q)
    if degree(Q) < 1:
        return (Q[0] if Q else 0) ** degree(P)
    return resultant(P, Q)


def _projective_rep(v) -> tuple:
    g = math.gcd(*[abs(x) for x in v])
    if g:
        v = tuple(x // g for x in v)
    lead = next((x for x in v if x), 0)
    if lead < 0:
        v = tuple(-x for x in v)
    return tuple(v)


class _SharedRoots:
    """Certified root enclosures of one polynomial, cached per precision."""

    def __init__(self, P):
        self.P = P
        self._cache = {}

    def at(self, prec: int):
        if prec not in self._cache:
            cert = certified_roots(
                self.P, Fraction(1, 1 << max(64, prec // 2)), start_prec=prec
            )
            self._cache[prec] = cert.roots
        return self._cache[prec]


def _orbit_unit_test(P, Q1, Q2, sign, shared: _SharedRoots, start_prec=256) -> dict:
    """Unit test for e = sign * Q1(l_j) Q2(l_i) / (Q2(l_j) Q1(l_i)).

    The product of (x - e_ij) over all ordered root pairs, each with
    multiplicity (d-2)!, is a degree-d! rational polynomial fixed by every
    root permutation; the products of Q1 and Q2 over all roots bound its
    denominators, so each coefficient is reconstructed exactly from a
    certified enclosure.  Under a full symmetric Galois group the e_ij are
    exactly the conjugates of e, so the reconstructed polynomial is a power
    of the minimal polynomial: e is an algebraic unit if and only if the
    polynomial is integral with constant term of absolute value 1.
    """
    P = normalize(P)
    d = degree(P)
    Q1, Q2 = normalize(Q1), normalize(Q2)
    r1 = _resultant_with(P, Q1)
    r2 = _resultant_with(P, Q2)
    if r1 == 0 or r2 == 0:
        return {
            "verdict": "degenerate",
            "reason": "numerator or denominator vanishes at a conjugate root",
        }
    mult = math.factorial(d - 2)
    dstar = (abs(r1) * abs(r2)) ** ((d - 1) * mult)
    prec = max(start_prec, dstar.bit_length() + 96)
    while prec <= precision_ceiling():
        try:
            roots = shared.at(prec)
        except RootsNotSeparable:
            break
        with enclosure_context(prec):
            try:
                q1v = [_poly_at_enc(Q1, z) for z in roots]
                q2v = [_poly_at_enc(Q2, z) for z in roots]
                values = []
                for i in range(d):
                    for j in range(d):
                        if i != j:
                            values.append(
                                sign * q1v[j] * q2v[i] / (q2v[j] * q1v[i])
                            )
                poly = [ComplexEnclosure(1)]
                for e in values:
                    for _ in range(mult):
                        shifted = [-(e * c) for c in poly] + [ComplexEnclosure(0)]
                        poly = [
                            (poly[t - 1] if t >= 1 else ComplexEnclosure(0))
                            + shifted[t]
                            for t in range(len(poly) + 1)
                        ]
                # poly is low-degree-first; its last entry is exactly 1
                coeffs = []
                ok = True
                for c in poly[:-1]:
                    if not c.im.contains(0):
                        raise AssertionError(
                            "orbit polynomial coefficient is not real"
                        )
                    try:
                        coeffs.append(reconstruct_in_lattice(c.re, dstar))
                    except ReconstructionAmbiguous:
                        ok = False
                        break
                if ok:
                    coeffs.append(Fraction(1))
                    integral = all(c.denominator == 1 for c in coeffs)
                    const = coeffs[0]
                    if integral and abs(const) == 1:
                        verdict, reason = "unit", "integral with unit constant term"
                    elif integral:
                        verdict, reason = (
                            "non_unit",
                            f"integral with constant term {const}",
                        )
                    else:
                        t = next(
                            t for t, c in enumerate(coeffs) if c.denominator != 1
                        )
                        verdict, reason = (
                            "non_unit",
                            f"coefficient of x^{t} is {coeffs[t]}, not an integer",
                        )
                    return {
                        "verdict": verdict,
                        "reason": reason,
                        "orbit_poly": [str(c) for c in coeffs],
                        "denominator_bound": str(dstar),
                        "precision_bits": prec,
                    }
            except DenominatorNearZero:
                pass
        prec *= 2
    return {
        "verdict": "undecided",
        "reason": "reconstruction stayed ambiguous at the precision ceiling",
        "denominator_bound": str(dstar),
    }


def _element_polys(adj_mats, pivot, v, w):
    """Numerator polynomials F1, F2 of zeta(x) for one (v, w) pair."""
    i0, j0 = pivot
    d = len(adj_mats[0])
    F1 = _poly_add_many(
        poly_scale(v[k], _entry_poly(adj_mats, i0, k)) for k in range(d)
    )
    F2 = _poly_add_many(
        poly_scale(w[k], _entry_poly(adj_mats, k, j0)) for k in range(d)
    )
    return F1, F2


def certify_discordance(Atilde, Y, support, spectral: SpectralData) -> Certificate:
    """Every selector-breakpoint element, and every ratio of two of them
    from distinct proportionality classes, is a non-unit.

    The breakpoints of the piecewise selector attached to the conjugate
    matrix A = Y * Atilde * Y^{-1} sit at angles t with e^{4 pi i t} =
    sigma(v, w) = -conj(zeta)/zeta, where zeta = <l, v><w, r> is built from
    the leading left/right eigenvectors of A itself.  (Conjugating moves
    the eigenvectors, so the element set genuinely depends on Y, but it is
    invariant under replacing A by a power of A: powers share
    eigenvectors.)  sigma depends on (v, w) only up to scaling, so elements
    are enumerated over projective classes of V x D.

    Each element and each ratio of two elements is run through the
    Galois-orbit unit test; the certificate is proved when every orbit
    polynomial certifies a non-unit, refuted when any element or ratio is a
    unit.  Ratios are checked for *all* pairs of distinct classes, not just
    those with both the v's and the w's independent: a unit ratio between
    breakpoint elements with distinct values breaks the angle-independence
    property this certificate feeds (both elements have modulus one at the
    distinguished place, so a unit ratio is automatically multiplicatively
    dependent on the leading eigenvalue ratio).  In the orbit test, ratios
    share the pairing polynomial, which cancels, so the ratio of elements
    (F, H) and (F', H) reduces to the pair (F, F').
    """
    d = len(Atilde)
    P = char_poly(Atilde)
    if P != spectral.char_coeffs:
        raise ValueError("spectral data does not belong to this matrix")
    if spectral.leading_pair_indices is None:
        raise ValueError("discordance needs a certified leading pair")
    Yt = tuple(tuple(row) for row in Y)
    A = mat_mul(mat_mul(Yt, Atilde), inverse_unimodular(Yt))
    adj_mats = adjugate_coefficient_matrices(A)

    # pivot row/column with nonvanishing pairing at every conjugate root
    pivot = None
    for i0 in range(d):
        for j0 in range(d):
            H = _poly_add_many(
                poly_mul(_entry_poly(adj_mats, i0, k), _entry_poly(adj_mats, k, j0))
                for k in range(d)
            )
            if _resultant_with(P, H) != 0:
                pivot = (i0, j0)
                break
        if pivot:
            break
    if pivot is None:
        raise ValueError("no pivot with nonvanishing pairing polynomial")
    i0, j0 = pivot
    H = _poly_add_many(
        poly_mul(_entry_poly(adj_mats, i0, k), _entry_poly(adj_mats, k, j0))
        for k in range(d)
    )

    v_classes = sorted({_projective_rep(v) for v in support.V_set})
    w_classes = sorted({_projective_rep(w) for w in support.D_set})
    elements = []
    for v in v_classes:
        for w in w_classes:
            F1, F2 = _element_polys(adj_mats, pivot, v, w)
            elements.append({"v": v, "w": w, "F": poly_mul(F1, F2)})

    shared = _SharedRoots(P)
    params = {
        "conjugated_matrix": [list(row) for row in A],
        "orbit_multiplicity": math.factorial(d - 2),
        "orbit_degree": math.factorial(d),
    }
    sigma_records = []
    for el in elements:
        rec = _orbit_unit_test(P, el["F"], H, -1, shared,
                               start_prec=spectral.precision)
        sigma_records.append({"v": list(el["v"]), "w": list(el["w"]), **rec})
    ratio_records = []
    for a in range(len(elements)):
        for b in range(a + 1, len(elements)):
            rec = _orbit_unit_test(
                P, elements[a]["F"], elements[b]["F"], 1, shared,
                start_prec=spectral.precision,
            )
            ratio_records.append(
                {
                    "v": list(elements[a]["v"]),
                    "w": list(elements[a]["w"]),
                    "v2": list(elements[b]["v"]),
                    "w2": list(elements[b]["w"]),
                    **rec,
                }
            )

    all_records = sigma_records + ratio_records
    if any(r["verdict"] == "unit" for r in all_records):
        verdict = "refuted"
    elif all(r["verdict"] == "non_unit" for r in all_records):
        verdict = "proved"
    else:
        verdict = "inconclusive"
    evidence = {
        "pivot": [i0, j0],
        "sigma_elements": sigma_records,
        "ratio_elements": ratio_records,
        "element_counts": {
            "sigma": len(sigma_records),
            "ratio": len(ratio_records),
        },
    }
    return _certificate("discordance", verdict, evidence, params)


# ---------------------------------------------------------------------------
# wrappers for spectral and series results

def leading_pair_certificate(spectral: SpectralData) -> Certificate:
    """Certificate form of a dominance decision already made exactly."""
    params = {"precision_bits": spectral.precision}
    evidence = {"char_poly": list(spectral.char_coeffs)}
    if not spectral.pair_indices:
        return _certificate(
            "leading_pair",
            "refuted",
            {**evidence, "reason": "no complex conjugate pair"},
            params,
        )
    if spectral.leading_pair_indices is None:
        return _certificate(
            "leading_pair",
            "inconclusive",
            {**evidence, "reason": "root moduli could not be strictly ordered"},
            params,
        )
    rho = spectral.spectral_radius()
    return _certificate(
        "leading_pair",
        "proved",
        {
            **evidence,
            "pair_indices": list(spectral.leading_pair_indices),
            "modulus_lo": mpf_to_fraction(rho.lo),
            "modulus_hi": mpf_to_fraction(rho.hi),
        },
        params,
    )


def dyndeg_certificate(result, tolerance=None) -> Certificate:
    """Certificate form of a successful series-root bracket."""
    lam = result.lambda_enclosure
    x_lo, x_hi = result.x_bracket
    evidence = {
        "lambda_lo": mpf_to_fraction(lam.lo),
        "lambda_hi": mpf_to_fraction(lam.hi),
        "x_bracket": [x_lo, x_hi],
        "n_terms_used": result.n_terms_used,
        "tail_constant": result.tail_constant,
        "tail_base": result.tail_base,
        "tail_bound_at_root": result.tail_bound_at_root,
    }
    params = {}
    if tolerance is not None:
        params["tolerance"] = Fraction(tolerance)
    return _certificate("dyndeg", "proved", evidence, params)
