"""Mod-p structure: distinct-degree factor patterns and matrix periods.

Degree patterns (not full factorizations) are all the Galois certificates
need, and multiplicative orders of matrices mod p are what the recurrence
scanner needs.  Everything here returns exact small data that can be
replayed cheaply by an independent checker.
"""

from __future__ import annotations

from math import gcd
from typing import Sequence

from ..errors import NotSquarefree, PeriodCapExceeded
from .matrices import identity, mat_mul
from .polynomials import normalize

DEFAULT_PERIOD_CAP = 10 ** 7


# ---------------------------------------------------------------------------
# polynomials over Z/p (dense lists, low degree first)

def poly_mod(P: Sequence, p: int) -> tuple:
    return normalize(int(c) % p for c in P)


def _pm_mul(a, b, p):
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return normalize(out)


def _pm_rem(a, b, p):
    a = list(a)
    db = len(b) - 1
    inv = pow(b[-1], p - 2, p)
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i] % p
        if c == 0:
            continue
        f = c * inv % p
        for j in range(db + 1):
            a[i - db + j] = (a[i - db + j] - f * b[j]) % p
    return normalize(a)


def _pm_gcd(a, b, p):
    a, b = normalize(c % p for c in a), normalize(c % p for c in b)
    while b:
        a, b = b, _pm_rem(a, b, p)
    if a:
        inv = pow(a[-1], p - 2, p)
        a = tuple(c * inv % p for c in a)
    return a


def _pm_powmod(base, e: int, mod_poly, p: int):
    """base^e mod (mod_poly, p)."""
    result = (1,)
    base = _pm_rem(base, mod_poly, p)
    while e:
        if e & 1:
            result = _pm_rem(_pm_mul(result, base, p), mod_poly, p)
        base = _pm_rem(_pm_mul(base, base, p), mod_poly, p)
        e >>= 1
    return result


def _pm_deriv(a, p):
    return normalize((i * a[i]) % p for i in range(1, len(a)))


def factor_pattern_mod_p(P: Sequence, p: int) -> tuple:
    """Multiset (sorted tuple) of degrees of the irreducible factors of P mod p.

    Distinct-degree factorization: strip the degree-k part by
    gcd(x^(p^k) - x, f) for k = 1, 2, ...  Raises NotSquarefree(p) when P
    has a repeated factor mod p, as those primes carry no Dedekind data.
    """
    f = poly_mod(P, p)
    if len(f) == 0 or len(f) - 1 < 1:
        raise ValueError("polynomial must be nonconstant mod p")
    # monic-ize
    inv = pow(f[-1], p - 2, p)
    f = tuple(c * inv % p for c in f)
    if len(_pm_gcd(f, _pm_deriv(f, p), p)) > 1:
        raise NotSquarefree(p)
    degrees = []
    k = 0
    h = (0, 1)  # x
    while len(f) - 1 >= 1:
        k += 1
        if 2 * k > len(f) - 1:
            # what is left is irreducible
            degrees.append(len(f) - 1)
            break
        h = _pm_powmod(h, p, f, p)
        g = _pm_gcd(poly_sub_mod(h, (0, 1), p), f, p)
        if len(g) > 1:
            # the degree-k part is a product of (deg g)/k irreducibles of degree k
            dk = len(g) - 1
            assert dk % k == 0
            degrees.extend([k] * (dk // k))
            f = _pm_div_exact(f, g, p)
            h = _pm_rem(h, f, p) if len(f) > 1 else h
        if len(f) - 1 == 0:
            break
    return tuple(sorted(degrees))


def poly_sub_mod(a, b, p):
    n = max(len(a), len(b))
    return normalize(
        ((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p
        for i in range(n)
    )


def _pm_div_exact(a, b, p):
    """a / b mod p, assuming exact divisibility."""
    a = list(a)
    db = len(b) - 1
    inv = pow(b[-1], p - 2, p)
    out = [0] * (len(a) - db)
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i] % p
        if c == 0:
            continue
        f = c * inv % p
        out[i - db] = f
        for j in range(db + 1):
            a[i - db + j] = (a[i - db + j] - f * b[j]) % p
    assert all(c % p == 0 for c in a[:db]), "division was not exact"
    return normalize(out)


def roots_mod_p(P: Sequence, p: int) -> list:
    """All roots of P in Z/p by direct search (p is always small here)."""
    f = poly_mod(P, p)
    out = []
    for x in range(p):
        acc = 0
        for c in reversed(f):
            acc = (acc * x + c) % p
        if acc == 0:
            out.append(x)
    return out


# ---------------------------------------------------------------------------
# multiplicative orders

def _factorize(n: int) -> dict:
    fs = {}
    m = n
    f = 2
    while f * f <= m:
        while m % f == 0:
            fs[f] = fs.get(f, 0) + 1
            m //= f
        f += 1
    if m > 1:
        fs[m] = fs.get(m, 0) + 1
    return fs


def element_order(x: int, p: int) -> int:
    """Multiplicative order of x mod p (x not divisible by p)."""
    if x % p == 0:
        raise ValueError("x is 0 mod p")
    o = p - 1
    for f in _factorize(p - 1):
        while o % f == 0 and pow(x, o // f, p) == 1:
            o //= f
    return o


def _mat_mod(A, p):
    return tuple(tuple(int(x) % p for x in row) for row in A)


def _mat_mul_mod(A, B, p):
    Bt = tuple(zip(*B))
    return tuple(
        tuple(sum(a * b for a, b in zip(row, col)) % p for col in Bt) for row in A
    )


def _mat_pow_mod(A, n, p):
    d = len(A)
    R = identity(d)
    base = _mat_mod(A, p)
    while n:
        if n & 1:
            R = _mat_mul_mod(R, base, p)
        base = _mat_mul_mod(base, base, p)
        n >>= 1
    return R


def matrix_order_divides(A, n: int, p: int) -> bool:
    return _mat_pow_mod(A, n, p) == identity(len(A))


def matrix_period_mod_p(A, p: int, cap: int = DEFAULT_PERIOD_CAP) -> int:
    """Least m >= 1 with A^m = I mod p.

    Strategy: the order divides the group exponent of GL_d(F_p); we use the
    standard exponent bound lcm(p^d - 1, ..., p - 1) * p^ceil(log_p d) and
    strip prime factors.  When the exponent is awkward to factor we fall
    back to plain iteration up to ``cap`` and raise PeriodCapExceeded
    beyond it.
    """
    d = len(A)
    Ap = _mat_mod(A, p)
    from .matrices import det
    if det(A) % p == 0:
        raise ValueError("det(A) not coprime to p")
    # try exponent-divisor order finding with the cheap exponent
    # E = lcm(p^k - 1 for k <= d) * p^s, s minimal with p^s >= d
    E = 1
    for k in range(1, d + 1):
        v = p ** k - 1
        E = E * v // gcd(E, v)
    s = 0
    while p ** s < d:
        s += 1
    E *= p ** s
    # factor E; if a cofactor resists small-prime stripping we iterate instead
    fs = {}
    m = E
    for f in range(2, 10 ** 6):
        if f * f > m:
            break
        while m % f == 0:
            fs[f] = fs.get(f, 0) + 1
            m //= f
    if m > 1:
        if m < 10 ** 12 or _is_probable_prime(m):
            fs[m] = fs.get(m, 0) + 1
        else:
            return _period_by_iteration(Ap, p, cap)
    if not matrix_order_divides(Ap, E, p):
        # matrix is not in the group generated as expected (shouldn't happen
        # for invertible A); iterate as a fallback
        return _period_by_iteration(Ap, p, cap)
    o = E
    for f in fs:
        while o % f == 0 and matrix_order_divides(Ap, o // f, p):
            o //= f
    if o > cap:
        raise PeriodCapExceeded(cap)
    return o


def _is_probable_prime(n: int) -> bool:
    if n < 2:
        return False
    for sp in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % sp == 0:
            return n == sp
    dd = n - 1
    r = 0
    while dd % 2 == 0:
        dd //= 2
        r += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, dd, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _period_by_iteration(Ap, p: int, cap: int) -> int:
    d = len(Ap)
    I = identity(d)
    M = Ap
    for m in range(1, cap + 1):
        if M == I:
            return m
        M = _mat_mul_mod(M, Ap, p)
    raise PeriodCapExceeded(cap)
