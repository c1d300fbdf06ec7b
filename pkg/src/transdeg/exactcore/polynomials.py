"""Dense univariate polynomials with exact coefficients.

Representation: a tuple of coefficients, lowest degree first, with no
trailing zeros; the zero polynomial is the empty tuple.  Coefficients are
Python ints unless an operation explicitly works over Q (Fractions).

The resultant machinery deliberately supports *formal* degrees: for a
monic first argument P, the Sylvester determinant built with a padded
second argument still equals prod_{P(a)=0} H(a), which is what makes
evaluation/interpolation of parametric resultants sound even when the
actual degree drops at special parameter values.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd as _gcd
from typing import Iterable, Sequence

from . import matrices

IntPolynomial = tuple  # tuple of int coefficients, low degree first


# ---------------------------------------------------------------------------
# basics

def normalize(coeffs: Iterable) -> tuple:
    c = list(coeffs)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def degree(P: Sequence) -> int:
    """Degree; the zero polynomial gets -1."""
    return len(P) - 1


def poly_add(P: Sequence, Q: Sequence) -> tuple:
    n = max(len(P), len(Q))
    return normalize(
        (P[i] if i < len(P) else 0) + (Q[i] if i < len(Q) else 0) for i in range(n)
    )


def poly_sub(P: Sequence, Q: Sequence) -> tuple:
    n = max(len(P), len(Q))
    return normalize(
        (P[i] if i < len(P) else 0) - (Q[i] if i < len(Q) else 0) for i in range(n)
    )


def poly_scale(c, P: Sequence) -> tuple:
    if c == 0:
        return ()
    return normalize(c * a for a in P)


def poly_mul(P: Sequence, Q: Sequence) -> tuple:
    if not P or not Q:
        return ()
    out = [0] * (len(P) + len(Q) - 1)
    for i, a in enumerate(P):
        if a == 0:
            continue
        for j, b in enumerate(Q):
            out[i + j] += a * b
    return normalize(out)


def poly_eval(P: Sequence, x: int):
    """Horner evaluation; works for any coefficient/point type that mixes."""
    acc = 0
    for c in reversed(P):
        acc = acc * x + c
    return acc


def poly_eval_fraction(P: Sequence, x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(P):
        acc = acc * x + c
    return acc


def poly_derivative(P: Sequence) -> tuple:
    return normalize(i * P[i] for i in range(1, len(P)))


def poly_compose_scale(P: Sequence, c) -> tuple:
    """P(c*t) with exact coefficients."""
    return normalize(P[i] * c ** i for i in range(len(P)))


def poly_content(P: Sequence) -> int:
    g = 0
    for c in P:
        g = _gcd(g, abs(int(c)))
    return g


def primitive_part(P: Sequence) -> tuple:
    g = poly_content(P)
    if g in (0, 1):
        return normalize(P)
    return tuple(c // g for c in normalize(P))


# ---------------------------------------------------------------------------
# division and gcd

def poly_divmod_q(P: Sequence, Q: Sequence) -> tuple:
    """(quotient, remainder) over Q.  Q must be nonzero."""
    if not Q:
        raise ZeroDivisionError("polynomial division by zero")
    rem = [Fraction(c) for c in P]
    qcoeffs = [Fraction(0)] * max(0, len(P) - len(Q) + 1)
    dQ = len(Q) - 1
    lead = Fraction(Q[-1])
    for i in range(len(rem) - 1, dQ - 1, -1):
        if rem[i] == 0:
            continue
        f = rem[i] / lead
        qcoeffs[i - dQ] = f
        for j in range(dQ + 1):
            rem[i - dQ + j] -= f * Q[j]
    return normalize(qcoeffs), normalize(rem)


def poly_divmod_exact(P: Sequence, Q: Sequence) -> tuple:
    """Exact division over Z; raises if Q does not divide P exactly."""
    q, r = poly_divmod_q(P, Q)
    if r:
        raise ArithmeticError("division is not exact")
    out = []
    for c in q:
        if isinstance(c, Fraction):
            if c.denominator != 1:
                raise ArithmeticError("quotient is not integral")
            out.append(int(c))
        else:
            out.append(int(c))
    return normalize(out)


def poly_gcd_q(P: Sequence, Q: Sequence) -> tuple:
    """Monic gcd over Q, returned as a primitive integer polynomial."""
    a = [Fraction(c) for c in normalize(P)]
    b = [Fraction(c) for c in normalize(Q)]
    while b:
        _, r = poly_divmod_q(a, b)
        a, b = b, list(r)
    if not a:
        return ()
    # clear denominators, make primitive with positive lead
    from math import lcm
    den = 1
    for c in a:
        den = lcm(den, Fraction(c).denominator)
    ints = [int(Fraction(c) * den) for c in a]
    out = primitive_part(ints)
    if out and out[-1] < 0:
        out = tuple(-c for c in out)
    return out


def poly_is_squarefree_q(P: Sequence) -> bool:
    return degree(poly_gcd_q(P, poly_derivative(P))) <= 0


# ---------------------------------------------------------------------------
# resultants

def _sylvester_det(P: Sequence, Q: Sequence, nq: int) -> int:
    """Determinant of the Sylvester matrix of P (actual degree) and Q padded
    to formal degree nq.  Integer entries only."""
    m = len(P) - 1
    if m < 0:
        raise ValueError("first argument must be nonzero")
    Qp = list(Q) + [0] * (nq + 1 - len(Q))
    size = m + nq
    if size == 0:
        return 1
    rows = []
    # nq rows of P
    for i in range(nq):
        row = [0] * size
        for j, c in enumerate(reversed(P)):
            row[i + j] = int(c)
        rows.append(tuple(row))
    # m rows of Q (formal degree nq)
    for i in range(m):
        row = [0] * size
        for j, c in enumerate(reversed(Qp)):
            row[i + j] = int(c)
        rows.append(tuple(row))
    return matrices.det(tuple(rows))


def resultant(P: Sequence, Q: Sequence, formal_deg_q: int | None = None) -> int:
    """Res(P, Q) over Z.

    With ``formal_deg_q`` set and P monic, computes the determinant of the
    padded Sylvester matrix, i.e. prod of Q over the roots of P — the right
    notion for interpolating parametric resultants.
    """
    P = normalize(P)
    Q = normalize(Q)
    if not P:
        raise ValueError("Res(0, Q) undefined here")
    if formal_deg_q is None:
        if not Q:
            return 0
        formal_deg_q = len(Q) - 1
    else:
        if P[-1] != 1:
            raise ValueError("formal degree requires monic first argument")
        if len(Q) - 1 > formal_deg_q:
            raise ValueError("actual degree exceeds formal degree")
    return _sylvester_det(P, Q, formal_deg_q)


def _lagrange_integer(points: Sequence[int], values: Sequence[int], deg_bound: int) -> tuple:
    """Interpolate an integer polynomial of degree <= deg_bound through
    (points, values); raises if the result is not integral."""
    assert len(points) >= deg_bound + 1
    pts = list(points)[: deg_bound + 1]
    vals = list(values)[: deg_bound + 1]
    # Newton's divided differences over Q, then expand
    n = len(pts)
    coef = [Fraction(v) for v in vals]
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (pts[i] - pts[i - j])
    # expand: p(x) = coef[0] + coef[1](x-p0) + coef[2](x-p0)(x-p1) + ...
    poly = [Fraction(0)] * n
    for i in range(n - 1, -1, -1):
        # poly = poly * (x - pts[i]) + coef[i]
        new = [Fraction(0)] * n
        for k in range(n - 1):
            new[k + 1] += poly[k]
            new[k] -= poly[k] * pts[i]
        new[0] += coef[i]
        poly = new
    out = []
    for c in poly:
        if c.denominator != 1:
            raise ArithmeticError("interpolated polynomial is not integral")
        out.append(int(c))
    return normalize(out)


def ratio_resultant(P: Sequence) -> tuple:
    """R(x) = Res_y(P(y), P(x*y)) as an exact integer polynomial.

    For monic P with roots l_1..l_d this equals prod_{i,j}(x*l_i - l_j) up
    to the unit det(A)^d; its roots are the ratios l_j / l_i.  Computed by
    evaluation at integer points + interpolation (each evaluation is an
    exact Sylvester determinant at formal degree d).
    """
    P = normalize(P)
    d = degree(P)
    if d < 1 or P[-1] != 1:
        raise ValueError("need a monic polynomial of positive degree")
    deg_bound = d * d
    pts = []
    vals = []
    x0 = 2  # skip 0 and 1: harmless but keeps determinants well-conditioned
    while len(pts) < deg_bound + 1:
        Q = poly_compose_scale(P, x0)
        vals.append(resultant(P, Q, formal_deg_q=d))
        pts.append(x0)
        x0 += 1
    R = _lagrange_integer(pts, vals, deg_bound)
    return R


def resultant_bivariate(P: Sequence, h_coeffs: dict, deg_x: int) -> tuple:
    """G(x) = Res_l(P(l), Res_m(P(m), h(x, l, m))) as an integer polynomial.

    ``h_coeffs`` maps (i, j, k) -> c for the monomial c * x^i * l^j * m^k.
    P must be monic.  Everything is computed by two layers of
    evaluation/interpolation over exact Sylvester determinants, so degree
    drops at special points are harmless.
    """
    P = normalize(P)
    d = degree(P)
    if P[-1] != 1:
        raise ValueError("P must be monic")
    deg_l = max((j for (_, j, _) in h_coeffs), default=0)
    deg_m = max((k for (_, _, k) in h_coeffs), default=0)
    # inner: W(x0, l) = Res_m(P, h(x0, l, m)) has l-degree <= deg_l * d
    inner_deg = deg_l * d
    # outer: G(x) = Res_l(P, W) = prod over roots, x-degree <= deg_x
    xs, gvals = [], []
    x0 = 2
    while len(xs) < deg_x + 1:
        # interpolate W in l
        ls, wvals = [], []
        l0 = 2
        while len(ls) < inner_deg + 1:
            hc = [0] * (deg_m + 1)
            for (i, j, k), c in h_coeffs.items():
                hc[k] += c * x0 ** i * l0 ** j
            wvals.append(resultant(P, normalize(hc), formal_deg_q=deg_m))
            ls.append(l0)
            l0 += 1
        W = _lagrange_integer(ls, wvals, inner_deg)
        gvals.append(resultant(P, W, formal_deg_q=inner_deg))
        xs.append(x0)
        x0 += 1
    return _lagrange_integer(xs, gvals, deg_x)


# ---------------------------------------------------------------------------
# cyclotomics

def cyclotomic(k: int) -> tuple:
    """The k-th cyclotomic polynomial, by exact division of x^k - 1."""
    if k < 1:
        raise ValueError("k >= 1")
    num = tuple([-1] + [0] * (k - 1) + [1])  # x^k - 1
    for dd in range(1, k):
        if k % dd == 0:
            num = poly_divmod_exact(num, cyclotomic(dd))
    return num


def euler_phi(k: int) -> int:
    out, n, p = k, k, 2
    while p * p <= n:
        if n % p == 0:
            while n % p == 0:
                n //= p
            out -= out // p
        p += 1
    if n > 1:
        out -= out // n
    return out


# ---------------------------------------------------------------------------
# Sturm

def sturm_chain(P: Sequence) -> list:
    """Sturm chain of P over Q (as Fraction tuples)."""
    chain = [tuple(Fraction(c) for c in normalize(P))]
    dP = poly_derivative(chain[0])
    if dP:
        chain.append(dP)
    while len(chain[-1]) > 1:
        _, r = poly_divmod_q(chain[-2], chain[-1])
        if not r:
            break
        chain.append(tuple(-c for c in r))
    return chain


def _sign_changes(vals: Sequence) -> int:
    signs = [1 if v > 0 else -1 for v in vals if v != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def sturm_real_root_count(P: Sequence, interval: tuple = (None, None)) -> int:
    """Number of distinct real roots of P in (a, b]; None means +/- infinity.

    P must be squarefree for the classical count to equal the root count;
    we divide out the gcd with P' first so the answer is always the number
    of *distinct* roots.
    """
    P = normalize(P)
    if degree(P) <= 0:
        return 0
    g = poly_gcd_q(P, poly_derivative(P))
    if degree(g) > 0:
        q, _ = poly_divmod_q(P, g)
        P = q
    chain = sturm_chain(P)

    def eval_at(x):
        if x is None:
            return None
        return [poly_eval_fraction(c, Fraction(x)) for c in chain]

    def sign_at_inf(sign: int) -> int:
        vals = []
        for c in chain:
            lead = c[-1]
            dd = len(c) - 1
            vals.append(lead if sign > 0 else lead * (-1) ** dd)
        return _sign_changes(vals)

    a, b = interval
    va = sign_at_inf(-1) if a is None else _sign_changes(eval_at(a))
    vb = sign_at_inf(+1) if b is None else _sign_changes(eval_at(b))
    return va - vb
