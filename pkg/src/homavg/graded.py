"""Z-graded elements, the two built-in Hom-algebras, and homogeneous operators."""

from typing import Callable, NamedTuple

from . import linalg
from .errors import DomainError, InvalidBasis, InvalidParameter, SingularAtDegree
from .scalars import Scalar, ScalarField, bracket_num, brace_num, q_power


class BasisIndex(NamedTuple):
    family: str
    degree: int

    def label(self):
        return f"{self.family}_{self.degree}"

    @classmethod
    def parse(cls, text):
        fam, _, deg = text.partition("_")
        try:
            return cls(fam, int(deg))
        except ValueError as exc:
            raise InvalidBasis(f"bad basis label {text!r}") from exc


def L(n):
    return BasisIndex("L", n)


def W(n):
    return BasisIndex("W", n)


def _sort_key(idx):
    return (idx.degree, idx.family)


class Element:
    """Finitely supported linear combination of basis vectors; zeros are never stored."""

    __slots__ = ("field", "terms")

    def __init__(self, field, terms=None):
        self.field = field
        clean = {}
        if terms:
            for idx, c in terms.items():
                if not isinstance(c, Scalar):
                    c = field(c)
                if not c.is_zero():
                    clean[idx] = c
        self.terms = clean

    @classmethod
    def basis(cls, field, idx, coeff=None):
        return cls(field, {idx: field.one if coeff is None else coeff})

    @classmethod
    def _raw(cls, field, terms):
        # terms already free of zeros
        obj = cls.__new__(cls)
        obj.field = field
        obj.terms = terms
        return obj

    def is_zero(self):
        return not self.terms

    def coeff(self, idx):
        return self.terms.get(idx, self.field.zero)

    def support(self):
        return sorted(self.terms, key=_sort_key)

    def degrees(self):
        return sorted({idx.degree for idx in self.terms})

    def __add__(self, other):
        out = dict(self.terms)
        for idx, c in other.terms.items():
            s = out.get(idx)
            s = c if s is None else s + c
            if s.is_zero():
                out.pop(idx, None)
            else:
                out[idx] = s
        return Element._raw(self.field, out)

    def __neg__(self):
        return Element._raw(self.field, {i: -c for i, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        c = self.field(c)
        if c.is_zero():
            return Element._raw(self.field, {})
        return Element._raw(self.field, {i: a * c for i, a in self.terms.items()})

    def __rmul__(self, c):
        return self.scale(c)

    def __eq__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def to_json(self):
        return {idx.label(): str(self.terms[idx]) for idx in self.support()}

    @classmethod
    def from_json(cls, field, data):
        return cls(field, {BasisIndex.parse(k): field(v) for k, v in data.items()})

    def __repr__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"({self.terms[i]})*{i.label()}" for i in self.support())


def _accumulate(out, idx, c):
    s = out.get(idx)
    s = c if s is None else s + c
    if s.is_zero():
        out.pop(idx, None)
    else:
        out[idx] = s


class GradedProductMixin:
    """Shared bilinear machinery; subclasses provide product_basis and twist_basis."""

    def product(self, x, y):
        out = {}
        for a, ca in x.terms.items():
            for b, cb in y.terms.items():
                for idx, c in self.product_basis(a, b):
                    _accumulate(out, idx, ca * cb * c)
        return Element._raw(self.field, out)

    def twist(self, x):
        out = {}
        for a, ca in x.terms.items():
            for idx, c in self.twist_basis(a):
                _accumulate(out, idx, ca * c)
        return Element._raw(self.field, out)

    def basis_element(self, idx):
        self.validate(idx)
        return Element.basis(self.field, idx)

    def validate(self, idx):
        if idx.family not in self.families:
            raise InvalidBasis(f"{idx.label()} is not a basis vector of {self.name}")

    def window_basis(self, M):
        return [BasisIndex(f, n) for n in range(-M, M + 1) for f in self.families]


class HomAlgebra(GradedProductMixin):
    """A graded bracket with a homogeneous twist of degree k.

    ``bracket_rule(a, b)`` and ``twist_rule(a)`` return sequences of
    (BasisIndex, Scalar) pairs; results are memoised per basis input.
    """

    product_shift = 0

    def __init__(self, name, field: ScalarField, k: int, families, bracket_rule: Callable,
                 twist_rule: Callable, skew_symmetric=True):
        self.name = name
        self.field = field
        self.k = k
        self.families = tuple(families)
        self._bracket_rule = bracket_rule
        self._twist_rule = twist_rule
        self.skew_symmetric = skew_symmetric
        self._bcache = {}
        self._tcache = {}

    def product_basis(self, a, b):
        key = (a, b)
        hit = self._bcache.get(key)
        if hit is None:
            self.validate(a)
            self.validate(b)
            hit = tuple((i, c) for i, c in self._bracket_rule(a, b) if not c.is_zero())
            self._bcache[key] = hit
        return hit

    def twist_basis(self, a):
        hit = self._tcache.get(a)
        if hit is None:
            self.validate(a)
            hit = tuple((i, c) for i, c in self._twist_rule(a) if not c.is_zero())
            self._tcache[a] = hit
        return hit

    def bracket(self, x, y):
        return self.product(x, y)

    @property
    def kind(self):
        return "witt" if self.name == "witt-q" else "w22"

    def descriptor(self):
        return {"name": self.kind, "k": self.k, "field": self.field.descriptor()}

    def __repr__(self):
        return f"HomAlgebra({self.name}, {self.field}, k={self.k})"


def witt(field, k=0):
    """q-deformed Witt algebra with twist alpha_k(L_n) = (1 + q^(n-k)) L_(n+k)."""
    one = field.one

    def bracket_rule(a, b):
        m, n = a.degree, b.degree
        return ((L(m + n), brace_num(field, m) - brace_num(field, n)),)

    def twist_rule(a):
        n = a.degree
        return ((L(n + k), one + q_power(field, n - k)),)

    return HomAlgebra("witt-q", field, k, ("L",), bracket_rule, twist_rule)


def w22(field, k=0):
    """q-deformed W(2,2) algebra with twist beta_k(X_n) = (q^(n-k) + q^(k-n)) X_(n+k)."""

    def bracket_rule(a, b):
        m, n = a.degree, b.degree
        if a.family == "W" and b.family == "W":
            return ()
        fam = "L" if a.family == b.family == "L" else "W"
        # [W_m, L_n] = [m-n] W_(m+n) is stored directly rather than by negation
        return ((BasisIndex(fam, m + n), bracket_num(field, m - n)),)

    def twist_rule(a):
        n = a.degree
        return ((BasisIndex(a.family, n + k), q_power(field, n - k) + q_power(field, k - n)),)

    return HomAlgebra("w22-q", field, k, ("L", "W"), bracket_rule, twist_rule)


def make_algebra(name, field, k=0):
    if name in ("witt", "witt-q"):
        return witt(field, k)
    if name in ("w22", "w22-q"):
        return w22(field, k)
    raise InvalidParameter(f"unknown algebra {name!r}")


# ---------------------------------------------------------------------------
# homogeneous operators


class Block(NamedTuple):
    """Per-degree coefficients: P(L) = f1 L + g1 W and P(W) = f2 L + g2 W."""

    f1: Scalar
    g1: Scalar
    f2: Scalar
    g2: Scalar

    def matrix(self):
        # columns are the images of L and W
        return [[self.f1, self.f2], [self.g1, self.g2]]

    @classmethod
    def from_matrix(cls, m):
        return cls(m[0][0], m[1][0], m[0][1], m[1][1])

    def is_zero(self):
        return all(x.is_zero() for x in self)


def block_of(field, f1=0, g1=0, f2=0, g2=0):
    return Block(field(f1), field(g1), field(f2), field(g2))


class HomogeneousOperator:
    """Linear map of degree d given by a per-output-degree Block.

    ``profile`` is either a callable t -> Block (total on Z) or a dict
    {t: Block} whose keys form the finite domain.
    """

    def __init__(self, algebra: str, field: ScalarField, d: int, profile, descriptor=None):
        if algebra not in ("witt", "w22"):
            raise InvalidParameter(f"unknown operator algebra {algebra!r}")
        self.algebra = algebra
        self.field = field
        self.d = d
        self.descriptor = descriptor
        if callable(profile):
            self._rule = profile
            self.domain = None
            self._cache = {}
        else:
            self._rule = None
            self.domain = frozenset(profile)
            if algebra == "witt":
                z = field.zero
                profile = {t: Block(b.f1, z, z, z) for t, b in profile.items()}
            self._cache = dict(profile)
        self.flagged = False
        self.verification = None

    @property
    def is_table(self):
        return self.domain is not None

    @property
    def families(self):
        return ("L",) if self.algebra == "witt" else ("L", "W")

    def covers(self, t):
        return self.domain is None or t in self.domain

    def block(self, t):
        b = self._cache.get(t)
        if b is None:
            if self._rule is None:
                raise DomainError([t])
            b = self._rule(t)
            if self.algebra == "witt":
                z = self.field.zero
                b = Block(b.f1, z, z, z)
            self._cache[t] = b
        return b

    def apply_basis(self, idx):
        t = idx.degree + self.d
        b = self.block(t)
        if idx.family == "L":
            pairs = ((L(t), b.f1), (W(t), b.g1))
        else:
            pairs = ((L(t), b.f2), (W(t), b.g2))
        return tuple(p for p in pairs if not p[1].is_zero())

    def apply(self, x):
        if self.domain is not None:
            missing = [i.degree + self.d for i in x.terms if i.degree + self.d not in self.domain]
            if missing:
                raise DomainError(missing)
        out = {}
        for a, ca in x.terms.items():
            if a.family not in self.families:
                raise InvalidBasis(f"{a.label()} is not in the domain of a {self.algebra} operator")
            for idx, c in self.apply_basis(a):
                _accumulate(out, idx, ca * c)
        return Element._raw(self.field, out)

    __call__ = apply

    # combinators -------------------------------------------------------

    def _derive(self, d, rule, domain):
        if domain is None:
            return HomogeneousOperator(self.algebra, self.field, d, rule)
        return HomogeneousOperator(self.algebra, self.field, d, {t: rule(t) for t in sorted(domain)})

    def _check_compatible(self, other):
        if other.algebra != self.algebra or other.field != self.field:
            raise InvalidParameter("operators live on different algebras or fields")

    def scale(self, lam):
        lam = self.field(lam)
        return self._derive(self.d, lambda t: Block(*(lam * x for x in self.block(t))), self.domain)

    def __add__(self, other):
        self._check_compatible(other)
        if other.d != self.d:
            raise InvalidParameter(f"cannot add operators of degrees {self.d} and {other.d}")
        domain = _meet(self.domain, other.domain)
        return self._derive(self.d, lambda t: Block(*(a + b for a, b in zip(self.block(t), other.block(t)))), domain)

    def compose(self, other):
        """self after other: block at t is self(t) * other(t - self.d)."""
        self._check_compatible(other)
        d = self.d + other.d
        shifted = None if other.domain is None else frozenset(t + self.d for t in other.domain)
        domain = _meet(self.domain, shifted)

        def rule(t):
            a = self.block(t).matrix()
            b = other.block(t - self.d).matrix()
            return Block.from_matrix(linalg.mat_mul(a, b))

        return self._derive(d, rule, domain)

    def power(self, n):
        if n < 1:
            raise InvalidParameter("operator powers start at 1")
        out = self
        for _ in range(n - 1):
            out = out.compose(self)
        return out

    def polynomial(self, coeffs):
        """F(P) for F given low-to-high by coeffs, with F(0) = 0 required."""
        coeffs = [self.field(c) for c in coeffs]
        if coeffs and not coeffs[0].is_zero():
            raise InvalidParameter("polynomial must have zero constant term")
        if self.d != 0:
            raise InvalidParameter("polynomials need a degree-0 operator")
        out = zero_operator(self.algebra, self.field, 0, self.domain)
        for i, c in enumerate(coeffs):
            if i and not c.is_zero():
                out = out + self.power(i).scale(c)
        return out

    def inverse(self):
        if self.d != 0:
            raise InvalidParameter("only degree-0 operators can be inverted per degree")
        field = self.field

        def rule(t):
            b = self.block(t)
            if self.algebra == "witt":
                if b.f1.is_zero():
                    raise SingularAtDegree(t)
                return Block(b.f1.inverse(), field.zero, field.zero, field.zero)
            inv = linalg.inverse(b.matrix(), field)
            if inv is None:
                raise SingularAtDegree(t)
            return Block.from_matrix(inv)

        return self._derive(0, rule, self.domain)

    # serialization -----------------------------------------------------

    def table(self, degrees):
        return {t: self.block(t) for t in degrees}

    def to_json(self, degrees=None):
        if self.descriptor is not None and degrees is None:
            return {"algebra": self.algebra, "degree": self.d, "profile": dict(self.descriptor, kind="family")}
        if degrees is None:
            if self.domain is None:
                raise InvalidParameter("closed-form operator needs explicit degrees to tabulate")
            degrees = sorted(self.domain)
        entries = []
        for t in degrees:
            b = self.block(t)
            row = {"t": t, "f1": str(b.f1)}
            if self.algebra == "w22":
                row.update(g1=str(b.g1), f2=str(b.f2), g2=str(b.g2))
            entries.append(row)
        return {"algebra": self.algebra, "degree": self.d, "profile": {"kind": "table", "entries": entries}}

    @classmethod
    def from_table_json(cls, field, data):
        prof = data["profile"]
        if prof.get("kind") != "table":
            raise InvalidParameter("expected a table profile")
        table = {}
        for row in prof["entries"]:
            table[int(row["t"])] = Block(
                field(row.get("f1", "0")), field(row.get("g1", "0")),
                field(row.get("f2", "0")), field(row.get("g2", "0")),
            )
        return cls(data["algebra"], field, int(data["degree"]), table)

    def __repr__(self):
        backing = "closed" if self.domain is None else f"table[{len(self.domain)}]"
        return f"HomogeneousOperator({self.algebra}, d={self.d}, {backing})"


def _meet(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return a & b


def identity_operator(algebra, field, domain=None):
    one, zero = field.one, field.zero
    blk = Block(one, zero, zero, one)
    if domain is None:
        return HomogeneousOperator(algebra, field, 0, lambda t: blk)
    return HomogeneousOperator(algebra, field, 0, {t: blk for t in domain})


def zero_operator(algebra, field, d=0, domain=None):
    z = field.zero
    blk = Block(z, z, z, z)
    if domain is None:
        return HomogeneousOperator(algebra, field, d, lambda t: blk)
    return HomogeneousOperator(algebra, field, d, {t: blk for t in domain})


def operator_from_function(algebra, field, d, fn):
    """Closed-form operator from a callable t -> (f1[, g1, f2, g2]) of plain values."""

    def rule(t):
        vals = fn(t)
        if not isinstance(vals, tuple):
            vals = (vals,)
        vals = tuple(field(v) for v in vals) + (field.zero,) * (4 - len(vals))
        return Block(*vals)

    return HomogeneousOperator(algebra, field, d, rule)


# ---------------------------------------------------------------------------
# induced products


class InducedAlgebra(GradedProductMixin):
    """{x, y} = [P(x), y] with the twist of the parent algebra."""

    skew_symmetric = False

    def __init__(self, parent: HomAlgebra, P: HomogeneousOperator):
        self.parent = parent
        self.P = P
        self.field = parent.field
        self.k = parent.k
        self.families = parent.families
        self.product_shift = P.d
        self.name = f"induced({parent.name}, d={P.d})"
        self._cache = {}

    def product_basis(self, a, b):
        key = (a, b)
        hit = self._cache.get(key)
        if hit is None:
            out = {}
            for idx, c in self.P.apply_basis(a):
                for jdx, e in self.parent.product_basis(idx, b):
                    _accumulate(out, jdx, c * e)
            hit = tuple(out.items())
            self._cache[key] = hit
        return hit

    def twist_basis(self, a):
        return self.parent.twist_basis(a)

    @property
    def kind(self):
        return self.parent.kind

    def descriptor(self):
        return {"name": self.parent.kind, "k": self.k, "field": self.field.descriptor(), "induced_degree": self.P.d}


def induced_algebra(alg: HomAlgebra, P: HomogeneousOperator):
    if P.is_table:
        raise InvalidParameter("induced algebra needs a closed-form (total) operator")
    if P.field != alg.field:
        raise InvalidParameter("operator and algebra fields differ")
    if P.algebra != alg.kind:
        raise InvalidParameter(f"{P.algebra} operator on {alg.name}")
    return InducedAlgebra(alg, P)
