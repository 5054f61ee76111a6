"""Dense univariate polynomials over Q.

A polynomial is a tuple of ``Fraction`` coefficients, lowest degree first,
with no trailing zeros; the zero polynomial is ``()``.  Everything here is
a pure function on tuples so the scalar kernel can stay immutable.
"""

from fractions import Fraction
from functools import lru_cache

ZERO = ()
ONE = (Fraction(1),)
X = (Fraction(0), Fraction(1))


def strip(coeffs):
    coeffs = list(coeffs)
    while coeffs and not coeffs[-1]:
        coeffs.pop()
    return tuple(coeffs)


def const(c):
    c = Fraction(c)
    return (c,) if c else ZERO


def monomial(k, c=1):
    c = Fraction(c)
    if not c:
        return ZERO
    return (Fraction(0),) * k + (c,)


def degree(p):
    return len(p) - 1


def lead(p):
    return p[-1]


def add(p, r):
    if len(p) < len(r):
        p, r = r, p
    out = list(p)
    for i, c in enumerate(r):
        out[i] += c
    return strip(out)


def neg(p):
    return tuple(-c for c in p)


def sub(p, r):
    return add(p, neg(r))


def scale(p, c):
    if not c:
        return ZERO
    return tuple(a * c for a in p)


def mul(p, r):
    if not p or not r:
        return ZERO
    out = [Fraction(0)] * (len(p) + len(r) - 1)
    for i, a in enumerate(p):
        if not a:
            continue
        for j, b in enumerate(r):
            out[i + j] += a * b
    return strip(out)


def shift(p, k):
    """Multiply by x**k (k >= 0)."""
    if not p or k == 0:
        return p
    return (Fraction(0),) * k + p


def order(p):
    """Largest k with x**k dividing p (p nonzero)."""
    for i, c in enumerate(p):
        if c:
            return i
    raise ValueError("order of the zero polynomial")


def unshift(p, k):
    return p[k:]


def divmod_(p, r):
    if not r:
        raise ZeroDivisionError("polynomial division by zero")
    if len(p) < len(r):
        return ZERO, p
    rem = list(p)
    dr = len(r) - 1
    inv = 1 / r[-1]
    quot = [Fraction(0)] * (len(p) - dr)
    for i in range(len(p) - 1, dr - 1, -1):
        c = rem[i]
        if not c:
            continue
        c = c * inv
        quot[i - dr] = c
        for j in range(dr + 1):
            rem[i - dr + j] -= c * r[j]
    return strip(quot), strip(rem[:dr])


def rem(p, r):
    return divmod_(p, r)[1]


def monic(p):
    if not p:
        return p
    c = p[-1]
    if c == 1:
        return p
    return tuple(a / c for a in p)


def gcd(p, r):
    """Monic gcd; gcd(0, 0) = 0."""
    while r:
        p, r = r, rem(p, r)
    return monic(p)


def xgcd(p, r):
    """Return (g, s, t) with s*p + t*r = g, g monic."""
    s0, s1 = ONE, ZERO
    t0, t1 = ZERO, ONE
    while r:
        quo, rr = divmod_(p, r)
        p, r = r, rr
        s0, s1 = s1, sub(s0, mul(quo, s1))
        t0, t1 = t1, sub(t0, mul(quo, t1))
    if not p:
        return ZERO, ZERO, ZERO
    c = 1 / p[-1]
    return scale(p, c), scale(s0, c), scale(t0, c)


def evaluate(p, x):
    acc = Fraction(0) if isinstance(x, (int, Fraction)) else 0
    for c in reversed(p):
        acc = acc * x + c
    return acc


def is_monomial(p):
    """True when p = c * x**k for some k (p nonzero)."""
    return bool(p) and all(not c for c in p[:-1])


@lru_cache(maxsize=None)
def cyclotomic(n):
    """The n-th cyclotomic polynomial, by dividing x^n - 1 by Phi_d for d | n, d < n."""
    if n < 1:
        raise ValueError("cyclotomic order must be >= 1")
    num = add(monomial(n), const(-1))
    for d in range(1, n):
        if n % d == 0:
            num, r = divmod_(num, cyclotomic(d))
            assert not r
    return num


def to_str(p, var="q"):
    """Canonical text form, highest degree first, e.g. ``3/4*q^2-q+1``."""
    if not p:
        return "0"
    out = []
    for k in range(len(p) - 1, -1, -1):
        c = p[k]
        if not c:
            continue
        sign = "-" if c < 0 else "+"
        a = -c if c < 0 else c
        if k == 0:
            body = str(a)
        else:
            mono = var if k == 1 else f"{var}^{k}"
            body = mono if a == 1 else f"{a}*{mono}"
        if not out:
            out.append(body if sign == "+" else "-" + body)
        else:
            out.append(sign + body)
    return "".join(out)
