"""Exact scalars for the three field modes.

* ``rational``   -- Q with q a fixed nonzero rational.
* ``cyclotomic`` -- Q[x]/Phi_N(x) with q the class of x, an exact primitive
  N-th root of unity.
* ``qfunc``      -- the rational function field Q(q).

Scalars are immutable and always kept in canonical form, so equality of
field elements is equality of representations.
"""

import re
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from functools import lru_cache

from . import poly
from .errors import InvalidParameter

RATIONAL = "rational"
CYCLOTOMIC = "cyclotomic"
QFUNC = "qfunc"


@dataclass(frozen=True)
class ScalarField:
    kind: str
    q_value: Fraction = None
    order: int = None
    modulus: tuple = dc_field(default=None, compare=False, repr=False)

    # construction ------------------------------------------------------

    @classmethod
    def rational(cls, q):
        q = Fraction(q)
        if q == 0:
            raise InvalidParameter("q must be nonzero")
        return cls(RATIONAL, q_value=q)

    @classmethod
    def cyclotomic(cls, n):
        if not isinstance(n, int) or isinstance(n, bool) or n < 1:
            raise InvalidParameter(f"cyclotomic order must be a positive integer, got {n!r}")
        return cls(CYCLOTOMIC, order=n, modulus=poly.cyclotomic(n))

    @classmethod
    def rational_function(cls):
        return cls(QFUNC)

    # elements ----------------------------------------------------------

    def __call__(self, value):
        """Coerce an int, Fraction, string or Scalar into this field."""
        if isinstance(value, Scalar):
            if value.field != self:
                raise InvalidParameter(f"scalar from {value.field} used in {self}")
            return value
        if isinstance(value, str):
            return parse_scalar(self, value)
        if isinstance(value, (int, Fraction)):
            return self._const(Fraction(value))
        raise TypeError(f"cannot coerce {value!r} into {self}")

    def _const(self, c):
        if self.kind == RATIONAL:
            return Scalar(self, c)
        if self.kind == CYCLOTOMIC:
            return Scalar(self, poly.const(c))
        return Scalar(self, (poly.const(c), poly.ONE))

    @property
    def zero(self):
        return _zero(self)

    @property
    def one(self):
        return _one(self)

    @property
    def q(self):
        return _gen(self)

    def q_power(self, n):
        return q_power(self, n)

    def q_pow_is_one(self, n):
        return q_power(self, n) == _one(self)

    def brace(self, n):
        return brace_num(self, n)

    def bracket(self, n):
        return bracket_num(self, n)

    @property
    def q_is_one(self):
        return _gen(self) == _one(self)

    @property
    def q_is_minus_one(self):
        return _gen(self) == -_one(self)

    # serialization -----------------------------------------------------

    def descriptor(self):
        if self.kind == RATIONAL:
            return {"kind": "rational", "q": _frac_str(self.q_value)}
        if self.kind == CYCLOTOMIC:
            return {"kind": "cyclotomic", "order": self.order}
        return {"kind": "rational_function"}

    def shorthand(self):
        if self.kind == RATIONAL:
            return f"rational:{_frac_str(self.q_value)}"
        if self.kind == CYCLOTOMIC:
            return f"cyclotomic:{self.order}"
        return "qfunc"

    def __str__(self):
        return self.shorthand()


def _frac_str(c):
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def field_make(spec):
    """Build a field from a descriptor dict or the CLI shorthand string."""
    if isinstance(spec, ScalarField):
        return spec
    if isinstance(spec, str):
        return _field_from_shorthand(spec)
    if not isinstance(spec, dict) or "kind" not in spec:
        raise InvalidParameter(f"malformed field descriptor: {spec!r}")
    kind = spec["kind"]
    if kind == "rational":
        try:
            q = Fraction(str(spec["q"]))
        except (KeyError, ValueError, ZeroDivisionError) as exc:
            raise InvalidParameter(f"bad rational q in {spec!r}") from exc
        return ScalarField.rational(q)
    if kind == "cyclotomic":
        order = spec.get("order")
        if not isinstance(order, int):
            raise InvalidParameter(f"bad cyclotomic order in {spec!r}")
        return ScalarField.cyclotomic(order)
    if kind in ("rational_function", "qfunc"):
        return ScalarField.rational_function()
    raise InvalidParameter(f"unknown field kind {kind!r}")


def _field_from_shorthand(text):
    text = text.strip()
    if text in ("qfunc", "rational_function", "generic"):
        return ScalarField.rational_function()
    head, _, arg = text.partition(":")
    if head == "rational" and arg:
        try:
            return ScalarField.rational(Fraction(arg))
        except (ValueError, ZeroDivisionError) as exc:
            raise InvalidParameter(f"bad rational field {text!r}") from exc
    if head == "cyclotomic" and arg:
        try:
            n = int(arg)
        except ValueError as exc:
            raise InvalidParameter(f"bad cyclotomic field {text!r}") from exc
        return ScalarField.cyclotomic(n)
    raise InvalidParameter(f"unrecognised field shorthand {text!r}")


# ---------------------------------------------------------------------------
# canonical-form helpers per mode


def _cyc_reduce(p, modulus):
    if len(p) < len(modulus):
        return p
    return poly.rem(p, modulus)


def _qf_normalize(num, den):
    if not den:
        raise ZeroDivisionError("rational function with zero denominator")
    if not num:
        return poly.ZERO, poly.ONE
    # common powers of q are cheap to strip; this keeps Laurent data fast
    k = min(poly.order(num), poly.order(den))
    if k:
        num, den = num[k:], den[k:]
    if len(den) > 1 and not poly.is_monomial(den):
        g = poly.gcd(num, den)
        if len(g) > 1:
            num = poly.divmod_(num, g)[0]
            den = poly.divmod_(den, g)[0]
    c = den[-1]
    if c != 1:
        num = poly.scale(num, 1 / c)
        den = poly.scale(den, 1 / c)
    return num, den


class Scalar:
    """An element of a ScalarField in canonical form."""

    __slots__ = ("field", "rep")

    def __init__(self, field, rep):
        self.field = field
        self.rep = rep

    # coercion ----------------------------------------------------------

    def _other(self, other):
        if isinstance(other, Scalar):
            if other.field is not self.field and other.field != self.field:
                raise InvalidParameter(
                    f"mixed fields: {self.field} and {other.field}"
                )
            return other
        if isinstance(other, (int, Fraction)):
            return self.field._const(Fraction(other))
        return NotImplemented

    # predicates --------------------------------------------------------

    def is_zero(self):
        kind = self.field.kind
        if kind == QFUNC:
            return not self.rep[0]
        return not self.rep

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        other = self._other(other) if not isinstance(other, Scalar) else other
        if other is NotImplemented:
            return False
        if other.field is not self.field and other.field != self.field:
            return False
        return self.rep == other.rep

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        rep = self.rep
        if self.field.kind == RATIONAL:
            return hash(rep)
        if self.field.kind == CYCLOTOMIC and len(rep) <= 1:
            return hash(rep[0] if rep else 0)
        return hash((self.field.kind, rep))

    # arithmetic --------------------------------------------------------

    def __add__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        f = self.field
        if f.kind == RATIONAL:
            return Scalar(f, self.rep + other.rep)
        if f.kind == CYCLOTOMIC:
            return Scalar(f, poly.add(self.rep, other.rep))
        (a, b), (c, d) = self.rep, other.rep
        if b == d:
            return Scalar(f, _qf_normalize(poly.add(a, c), b))
        if poly.is_monomial(b) and poly.is_monomial(d):
            kb, kd = len(b) - 1, len(d) - 1
            k = max(kb, kd)
            num = poly.add(poly.shift(a, k - kb), poly.shift(c, k - kd))
            return Scalar(f, _qf_normalize(num, poly.monomial(k)))
        return Scalar(f, _qf_normalize(poly.add(poly.mul(a, d), poly.mul(c, b)), poly.mul(b, d)))

    __radd__ = __add__

    def __neg__(self):
        f = self.field
        if f.kind == RATIONAL:
            return Scalar(f, -self.rep)
        if f.kind == CYCLOTOMIC:
            return Scalar(f, poly.neg(self.rep))
        return Scalar(f, (poly.neg(self.rep[0]), self.rep[1]))

    def __pos__(self):
        return self

    def __sub__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        f = self.field
        if f.kind == RATIONAL:
            return Scalar(f, self.rep * other.rep)
        if f.kind == CYCLOTOMIC:
            return Scalar(f, _cyc_reduce(poly.mul(self.rep, other.rep), f.modulus))
        (a, b), (c, d) = self.rep, other.rep
        if not a or not c:
            return f.zero
        return Scalar(f, _qf_normalize(poly.mul(a, c), poly.mul(b, d)))

    __rmul__ = __mul__

    def inverse(self):
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero scalar")
        f = self.field
        if f.kind == RATIONAL:
            return Scalar(f, 1 / self.rep)
        if f.kind == CYCLOTOMIC:
            g, s, _ = poly.xgcd(self.rep, f.modulus)
            # Phi_N is irreducible, so a nonzero residue has gcd 1
            assert g == poly.ONE
            return Scalar(f, _cyc_reduce(s, f.modulus))
        num, den = self.rep
        return Scalar(f, _qf_normalize(den, num))

    def __truediv__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result = self.field.one
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # conversion --------------------------------------------------------

    def as_fraction(self):
        """The rational value if this scalar lies in Q, else None."""
        f = self.field
        if f.kind == RATIONAL:
            return self.rep
        if f.kind == CYCLOTOMIC:
            if len(self.rep) <= 1:
                return self.rep[0] if self.rep else Fraction(0)
            return None
        num, den = self.rep
        if den == poly.ONE and len(num) <= 1:
            return num[0] if num else Fraction(0)
        return None

    def __str__(self):
        f = self.field
        if f.kind == RATIONAL:
            return _frac_str(self.rep)
        if f.kind == CYCLOTOMIC:
            return poly.to_str(self.rep)
        num, den = self.rep
        if den == poly.ONE:
            return poly.to_str(num)
        return f"({poly.to_str(num)})/({poly.to_str(den)})"

    def __repr__(self):
        return f"Scalar({self.field.shorthand()}, {self})"


def arith(a, op, b):
    """Dispatch form of the field operations: op in '+', '-', '*', '/', '=='."""
    if op == "+":
        return a + b
    if op == "-":
        return a - b
    if op in ("*", "×"):
        return a * b
    if op in ("/", "÷"):
        return a / b
    if op in ("==", "=?"):
        if isinstance(a, Scalar) and isinstance(b, Scalar) and a.field != b.field:
            raise InvalidParameter("mixed fields")
        return a == b
    raise InvalidParameter(f"unknown operator {op!r}")


# ---------------------------------------------------------------------------
# q-powers and q-numbers (cached per field)


@lru_cache(maxsize=None)
def _zero(field):
    return field._const(Fraction(0))


@lru_cache(maxsize=None)
def _one(field):
    return field._const(Fraction(1))


@lru_cache(maxsize=None)
def _gen(field):
    if field.kind == RATIONAL:
        return Scalar(field, field.q_value)
    if field.kind == CYCLOTOMIC:
        return Scalar(field, _cyc_reduce(poly.X, field.modulus))
    return Scalar(field, (poly.X, poly.ONE))


@lru_cache(maxsize=None)
def q_power(field, n):
    """q**n; negative n allowed since q is a unit."""
    if field.kind == QFUNC:
        if n >= 0:
            return Scalar(field, (poly.monomial(n), poly.ONE))
        return Scalar(field, (poly.ONE, poly.monomial(-n)))
    if field.kind == CYCLOTOMIC:
        n %= field.order
    return _gen(field) ** n


def q_pow_is_one(field, n):
    return q_power(field, n) == _one(field)


@lru_cache(maxsize=None)
def brace_num(field, n):
    """{n} = (1 - q^n)/(1 - q), and n itself when q = 1."""
    if field.q_is_one:
        return field(n)
    one = _one(field)
    return (one - q_power(field, n)) / (one - _gen(field))


@lru_cache(maxsize=None)
def bracket_num(field, n):
    """[n] = (q^n - q^-n)/(q - q^-1), with the q = 1 and q = -1 limits."""
    if field.q_is_one:
        return field(n)
    if field.q_is_minus_one:
        return field(n if n % 2 else -n)
    q = _gen(field)
    return (q_power(field, n) - q_power(field, -n)) / (q - q.inverse())


# ---------------------------------------------------------------------------
# parsing


_TOKEN = re.compile(r"\s*(?:(\d+)|(q|x)|(.))")


def _tokenize(text):
    out = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise InvalidParameter(f"cannot parse scalar {text!r}")
        pos = m.end()
        num, var, sym = m.groups()
        if num is not None:
            out.append(("num", int(num)))
        elif var is not None:
            out.append(("q", None))
        elif sym.strip():
            if sym not in "+-*/^()":
                raise InvalidParameter(f"unexpected {sym!r} in scalar {text!r}")
            out.append((sym, None))
    return out


class _Parser:
    def __init__(self, field, text):
        self.field = field
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i][0] if self.i < len(self.toks) else None

    def take(self, kind=None):
        if self.i >= len(self.toks):
            raise InvalidParameter(f"unexpected end of scalar {self.text!r}")
        tok = self.toks[self.i]
        if kind is not None and tok[0] != kind:
            raise InvalidParameter(f"expected {kind!r} in scalar {self.text!r}")
        self.i += 1
        return tok

    def parse(self):
        if not self.toks:
            raise InvalidParameter("empty scalar")
        value = self.expr()
        if self.i != len(self.toks):
            raise InvalidParameter(f"trailing input in scalar {self.text!r}")
        return value

    def expr(self):
        value = self.term()
        while self.peek() in ("+", "-"):
            op = self.take()[0]
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self):
        value = self.unary()
        while self.peek() in ("*", "/"):
            op = self.take()[0]
            rhs = self.unary()
            if op == "*":
                value = value * rhs
            else:
                if rhs.is_zero():
                    raise InvalidParameter(f"division by zero in {self.text!r}")
                value = value / rhs
        return value

    def unary(self):
        if self.peek() == "-":
            self.take()
            return -self.unary()
        if self.peek() == "+":
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek() == "^":
            self.take()
            sign = 1
            if self.peek() in ("-", "+"):
                sign = -1 if self.take()[0] == "-" else 1
            exp = sign * self.take("num")[1]
            if base.is_zero() and exp < 0:
                raise InvalidParameter(f"division by zero in {self.text!r}")
            base = base ** exp
        return base

    def atom(self):
        kind = self.peek()
        if kind == "num":
            return self.field(self.take()[1])
        if kind == "q":
            self.take()
            return self.field.q
        if kind == "(":
            self.take()
            value = self.expr()
            self.take(")")
            return value
        raise InvalidParameter(f"cannot parse scalar {self.text!r}")


def parse_scalar(field, text):
    """Parse canonical strings such as ``3/4``, ``q^2+1`` or ``(q^2+1)/(q-1)``."""
    return _Parser(field, text).parse()
