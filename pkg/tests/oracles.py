"""Independent reference computations built on sympy.

Nothing here imports homavg internals beyond string output, so agreement
with the package is a real cross-check.
"""

from functools import lru_cache

import sympy as sp

q = sp.Symbol("q")


def to_sympy(scalar):
    """Parse the canonical string of a Scalar into a sympy expression in q."""
    return sp.sympify(str(scalar).replace("^", "**"), locals={"q": q})


@lru_cache(maxsize=None)
def cyclotomic_poly(n):
    return sp.Poly(sp.cyclotomic_poly(n, q), q)


class OracleField:
    """A reference field: 'rational' with a concrete q, 'cyclotomic' N, or 'qfunc'."""

    def __init__(self, kind, value=None):
        self.kind = kind
        self.value = value

    def reduce(self, expr):
        expr = sp.together(sp.sympify(expr))
        if self.kind == "rational":
            return sp.nsimplify(expr.subs(q, sp.Rational(self.value)))
        if self.kind == "qfunc":
            return sp.cancel(expr)
        num, den = sp.fraction(expr)
        mod = cyclotomic_poly(self.value)
        num = sp.Poly(num, q).rem(mod)
        den = sp.Poly(den, q).rem(mod)
        inv = sp.invert(den.as_expr(), mod.as_expr(), q)
        return sp.Poly(num.as_expr() * inv, q).rem(mod).as_expr().expand()

    def equal(self, a, b):
        return sp.simplify(self.reduce(a) - self.reduce(b)) == 0

    def is_one_power(self, n):
        return self.equal(q ** n, 1)

    @property
    def q_is_one(self):
        return self.equal(q, 1)

    @property
    def q_is_minus_one(self):
        return self.equal(q, -1)


def brace(field, n):
    if field.q_is_one:
        return sp.Integer(n)
    return field.reduce((1 - q ** n) / (1 - q))


def bracket(field, n):
    if field.q_is_one:
        return sp.Integer(n)
    if field.q_is_minus_one:
        return sp.Integer((-1) ** (n - 1) * n)
    return field.reduce((q ** n - q ** (-n)) / (q - 1 / q))


# --- reference algebras: elements are dicts {(family, degree): expr} -------

def witt_bracket(field, a, b):
    (_, m), (_, n) = a, b
    return {("L", m + n): brace(field, m) - brace(field, n)}


def w22_bracket(field, a, b):
    (fa, m), (fb, n) = a, b
    if fa == "W" and fb == "W":
        return {}
    fam = "L" if fa == fb == "L" else "W"
    return {(fam, m + n): bracket(field, m - n)}


def witt_twist(field, a, k=0):
    fam, n = a
    return {(fam, n + k): field.reduce(1 + q ** (n - k))}


def w22_twist(field, a, k=0):
    fam, n = a
    return {(fam, n + k): field.reduce(q ** (n - k) + q ** (k - n))}


def lin(field, fn, x, y):
    out = {}
    for a, ca in x.items():
        for b, cb in y.items():
            for idx, c in fn(field, a, b).items():
                out[idx] = out.get(idx, 0) + ca * cb * c
    return {k: v for k, v in ((k, field.reduce(v)) for k, v in out.items()) if v != 0}


def apply_op(field, profile, d, x):
    """profile(t) -> (f1, g1, f2, g2) with t the output degree."""
    out = {}
    for (fam, m), c in x.items():
        f1, g1, f2, g2 = profile(m + d)
        pairs = ((("L", m + d), f1), (("W", m + d), g1)) if fam == "L" else ((("L", m + d), f2), (("W", m + d), g2))
        for idx, v in pairs:
            out[idx] = out.get(idx, 0) + c * v
    return {k: v for k, v in ((k, field.reduce(v)) for k, v in out.items()) if v != 0}


def same(field, x, y):
    keys = set(x) | set(y)
    return all(field.equal(x.get(k, 0), y.get(k, 0)) for k in keys)


def is_averaging(field, algebra, profile, d, M):
    """Brute-force two-sided averaging axiom plus twist commutation on the window."""
    br = witt_bracket if algebra == "witt" else w22_bracket
    tw = witt_twist if algebra == "witt" else w22_twist
    fams = ("L",) if algebra == "witt" else ("L", "W")
    basis = [{(f, m): 1} for m in range(-M, M + 1) for f in fams]
    P = lambda x: apply_op(field, profile, d, x)
    for x in basis:
        a = next(iter(x))
        if not same(field, P(tw(field, a)), _twist_el(field, tw, P(x))):
            return False
    for x in basis:
        px = P(x)
        for y in basis:
            py = P(y)
            both = lin(field, br, px, py)
            left = P(lin(field, br, px, y))
            right = P(lin(field, br, x, py))
            if not (same(field, both, left) and same(field, both, right)):
                return False
    return True


def _twist_el(field, tw, x):
    out = {}
    for a, c in x.items():
        for idx, v in tw(field, a).items():
            out[idx] = out.get(idx, 0) + c * v
    return {k: v for k, v in ((k, field.reduce(v)) for k, v in out.items()) if v != 0}
