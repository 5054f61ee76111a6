"""Exhaustive search for averaging coefficient profiles on a finite window.

Unknowns are the profile entries at output degrees t in [-M, M]: f(t) for
the Witt algebra and f1, f2, g1, g2 for W(2,2).  A constraint instance
(m, n) is checked only when m, n and m + n all lie in that range, so the
search is exact relative to the window and the value set, and no wider.
"""

import itertools
import os
import time
from dataclasses import dataclass, field as dc_field

from .errors import InvalidParameter, SearchTooLarge
from .families import (
    DEGREE_ZERO,
    ROOT_OF_UNITY,
    W22FamilyParams,
    WittFamilyParams,
    make_w22_family,
    make_witt_family,
    w22_discrepancy,
    w22_profile,
    witt_discrepancy,
    witt_profile,
)
from .graded import Block, HomogeneousOperator, make_algebra
from .laws import check_averaging
from .scalars import ScalarField, brace_num, bracket_num, q_power

DEFAULT_CEILING = 10 ** 10
CEILING_ENV = "HOMAVG_SEARCH_CEILING"
SCOPE_NOTE = "complete only relative to the window [-M, M] and the value set S"

WITT_SLOTS = ("f",)
W22_SLOTS = ("f1", "f2", "g1", "g2")


def search_ceiling():
    raw = os.environ.get(CEILING_ENV)
    if raw is None:
        return DEFAULT_CEILING
    try:
        return int(raw)
    except ValueError as exc:
        raise InvalidParameter(f"{CEILING_ENV} must be an integer, got {raw!r}") from exc


@dataclass
class SearchSpace:
    algebra: str
    field: ScalarField
    d: int
    M: int
    values: tuple
    ceiling: int = None

    def __post_init__(self):
        if self.algebra not in ("witt", "w22"):
            raise InvalidParameter(f"unknown algebra {self.algebra!r}")
        if self.M < 1:
            raise InvalidParameter("window must be at least 1")
        vals = []
        for v in self.values:
            v = self.field(v)
            if v not in vals:
                vals.append(v)
        if not any(v.is_zero() for v in vals):
            raise InvalidParameter("value set must contain 0")
        self.values = tuple(vals)
        if self.ceiling is None:
            self.ceiling = search_ceiling()

    @property
    def slots(self):
        return WITT_SLOTS if self.algebra == "witt" else W22_SLOTS

    @property
    def degrees(self):
        return list(range(-self.M, self.M + 1))

    def unknowns(self):
        """(t, slot) pairs in search order: increasing |t|, then t, then slot."""
        order = sorted(self.degrees, key=lambda t: (abs(t), t))
        return [(t, s) for t in order for s in self.slots]

    def estimate(self):
        return len(self.values) ** len(self.unknowns())

    def to_json(self):
        return {
            "algebra": self.algebra,
            "field": self.field.descriptor(),
            "d": self.d,
            "M": self.M,
            "values": [str(v) for v in self.values],
        }


@dataclass
class ProfileSet:
    space: SearchSpace
    solutions: list  # list of {t: Block}
    vectors: list  # S-index vectors in search order
    verified: bool = True
    millis: int = 0
    nodes: int = 0
    unverified: list = dc_field(default_factory=list)

    @property
    def verdict(self):
        return "pass" if self.verified else "fail"

    def to_json(self):
        return {
            "check": "search",
            "verdict": self.verdict,
            "space": self.space.to_json(),
            "scope": SCOPE_NOTE,
            "count": len(self.solutions),
            "solutions": [table_to_json(self.space, s) for s in self.solutions],
            "reverified": self.verified,
            "witness_count": len(self.unverified),
            "witnesses": [{"unverified_solution": table_to_json(self.space, self.solutions[i])} for i in self.unverified],
        }


def table_to_json(space, table):
    rows = []
    for t in sorted(table):
        b = table[t]
        if space.algebra == "witt":
            rows.append({"t": t, "f1": str(b.f1)})
        else:
            rows.append({"t": t, "f1": str(b.f1), "f2": str(b.f2), "g1": str(b.g1), "g2": str(b.g2)})
    return rows


# ---------------------------------------------------------------------------
# constraint compilation


def _twist_coeff(space, t):
    f = space.field
    if space.algebra == "witt":
        return f.one + q_power(f, t)
    return q_power(f, t) + q_power(f, -t)


def _equations(space, m, n):
    """The constraint equations at (m, n) as lists of (coef, var, var) terms."""
    f = space.field
    d = space.d
    s = m + n
    if space.algebra == "witt":
        a = brace_num(f, m) - brace_num(f, n)
        b = brace_num(f, m) - brace_num(f, n - d)
        # f(m) (f(n) a - f(m+n) b) = 0
        return [[(a, (m, "f"), (n, "f")), (-b, (m, "f"), (s, "f"))]]
    br = lambda k: bracket_num(f, k)
    c_mn, c_mdn, c_nm, c_nmd = br(m - n), br(m + d - n), br(n - m), br(n - m - d)
    F1, F2, G1, G2 = "f1", "f2", "g1", "g2"
    return [
        [(c_mn, (m, F1), (n, F1)), (-c_mdn, (m, F1), (s, F1)), (c_nmd, (m, G1), (s, F2))],
        [(c_mn, (m, F1), (n, G1)), (-c_nm, (n, F1), (m, G1)), (-c_mdn, (m, F1), (s, G1)), (c_nmd, (m, G1), (s, G2))],
        [(c_mn, (m, F1), (n, F2)), (-c_mdn, (m, F1), (s, F2))],
        [(c_mn, (m, F1), (n, G2)), (-c_nm, (m, G1), (n, F2)), (-c_mdn, (m, F1), (s, G2))],
        [(c_mn, (m, F2), (n, F2)), (-c_mdn, (m, F2), (s, F2))],
        [(c_mn, (m, F2), (n, G2)), (-c_nm, (n, F2), (m, G2)), (-c_mdn, (m, F2), (s, G2))],
        [(c_mn, (m, F2), (n, F1)), (-c_mdn, (m, F2), (s, F1)), (c_nmd, (m, G2), (s, F2))],
        [(c_mn, (m, F2), (n, G1)), (-c_nm, (m, G2), (n, F1)), (-c_mdn, (m, F2), (s, G1)), (c_nmd, (m, G2), (s, G2))],
    ]


def compile_constraints(space):
    """Group equations by the search position of their last-assigned unknown."""
    order = space.unknowns()
    pos = {u: i for i, u in enumerate(order)}
    dom = set(space.degrees)
    by_pos = [[] for _ in order]
    for m, n in itertools.product(space.degrees, repeat=2):
        if m + n not in dom:
            continue
        for eq in _equations(space, m, n):
            terms = [(c, pos[u], pos[v]) for c, u, v in eq if not c.is_zero()]
            if not terms:
                continue
            last = max(max(i, j) for _, i, j in terms)
            by_pos[last].append(terms)
    # alpha-commuting: P(t) must vanish where the twist weights at t and t - d differ
    forced_zero = [
        not (_twist_coeff(space, t) == _twist_coeff(space, t - space.d)) for t, _ in order
    ]
    return order, by_pos, forced_zero


def _satisfied(eq, assignment):
    total = None
    for c, i, j in eq:
        a, b = assignment[i], assignment[j]
        if a.is_zero() or b.is_zero():
            continue
        term = c * a * b
        total = term if total is None else total + term
    return total is None or total.is_zero()


# ---------------------------------------------------------------------------
# search


def _table_from(space, order, assignment):
    z = space.field.zero
    cells = {t: {s: z for s in W22_SLOTS} for t in space.degrees}
    for (t, s), v in zip(order, assignment):
        if s == "f":
            cells[t]["f1"] = v
        else:
            cells[t][s] = v
    return {t: Block(c["f1"], c["g1"], c["f2"], c["g2"]) for t, c in cells.items()}


def enumerate_profiles(space: SearchSpace, verify=True, prune=True):
    """Every S-valued profile on the window satisfying all constraint instances."""
    est = space.estimate()
    if prune and est > space.ceiling:
        raise SearchTooLarge(est, space.ceiling)
    started = time.perf_counter()
    order, by_pos, forced_zero = compile_constraints(space)
    values = space.values
    zero_index = next(i for i, v in enumerate(values) if v.is_zero())
    n = len(order)
    assignment = [None] * n
    vector = [0] * n
    vectors = []
    nodes = 0

    if prune:
        def dfs(p):
            nonlocal nodes
            if p == n:
                vectors.append(tuple(vector))
                return
            choices = [zero_index] if forced_zero[p] else range(len(values))
            for vi in choices:
                nodes += 1
                assignment[p] = values[vi]
                vector[p] = vi
                if all(_satisfied(eq, assignment) for eq in by_pos[p]):
                    dfs(p + 1)
            assignment[p] = None

        dfs(0)
    else:
        every = [eq for group in by_pos for eq in group]
        for combo in itertools.product(range(len(values)), repeat=n):
            nodes += 1
            if any(forced_zero[p] and combo[p] != zero_index for p in range(n)):
                continue
            assign = [values[i] for i in combo]
            if all(_satisfied(eq, assign) for eq in every):
                vectors.append(combo)

    vectors.sort()
    solutions = [_table_from(space, order, [values[i] for i in vec]) for vec in vectors]
    result = ProfileSet(space, solutions, vectors, verified=False, nodes=nodes)
    if verify:
        result.unverified = [i for i, table in enumerate(solutions) if not reverify(space, table)]
        result.verified = not result.unverified
    result.millis = int((time.perf_counter() - started) * 1000)
    return result


def reverify(space, table):
    """Independent check of one solution through the averaging checker."""
    alg = make_algebra(space.algebra, space.field)
    op = HomogeneousOperator(space.algebra, space.field, space.d, table)
    rep = check_averaging(alg, op, space.M + abs(space.d), restrict_to_domain=True)
    return rep.passed


# ---------------------------------------------------------------------------
# matching against the classified families


@dataclass
class FamilyInstance:
    ident: str
    params: object
    table: dict
    discrepancy: str = None

    def to_json(self, space):
        return {"family": self.ident, "params": self.params.to_json(), "discrepancy": self.discrepancy}


@dataclass
class CoverageReport:
    space: SearchSpace
    matched: list = dc_field(default_factory=list)  # (solution index, [family instances])
    unmatched_solutions: list = dc_field(default_factory=list)  # (solution index, adjudication)
    unmatched_families: list = dc_field(default_factory=list)  # (instance, adjudication)
    outside_value_set: list = dc_field(default_factory=list)
    solutions: list = dc_field(default_factory=list)
    millis: int = 0

    @property
    def complete(self):
        return not self.unmatched_solutions and not self.unmatched_families

    @property
    def verdict(self):
        return "pass" if self.complete else "fail"

    def to_json(self):
        sp = self.space
        unmatched_sol = [
            {"solution": table_to_json(sp, self.solutions[i]), "adjudication": adj}
            for i, adj in self.unmatched_solutions
        ]
        unmatched_fam = [dict(inst.to_json(sp), adjudication=adj) for inst, adj in self.unmatched_families]
        return {
            "check": "coverage",
            "verdict": self.verdict,
            "witness_count": len(unmatched_sol) + len(unmatched_fam),
            "space": sp.to_json(),
            "scope": SCOPE_NOTE,
            "solutions": len(self.solutions),
            "matched": [
                {"solution": table_to_json(sp, self.solutions[i]), "families": [f.to_json(sp) for f in fams]}
                for i, fams in self.matched
            ],
            "unmatched_solutions": unmatched_sol,
            "unmatched_families": unmatched_fam,
            "families_outside_value_set": len(self.outside_value_set),
        }


def family_instances(space: SearchSpace):
    """Every theorem-level family instantiation with parameters drawn from S."""
    field = space.field
    S = space.values
    nonzero = [v for v in S if not v.is_zero()]
    out = []
    dom = space.degrees

    def add(ident, params, rule, discrepancy):
        out.append(FamilyInstance(ident, params, {t: rule(t) for t in dom}, discrepancy))

    q_d_one = field.q_pow_is_one(space.d)
    if space.algebra == "witt":
        z = field.zero
        wrap = lambda f: (lambda t: Block(f(t), z, z, z))
        if field.q_is_one:
            for beta, nu in itertools.product(S, repeat=2):
                p = WittFamilyParams(1, space.d, beta, nu)
                add("witt:1", p, wrap(witt_profile(p, field)), witt_discrepancy(p, field))
            for gamma, mu in itertools.product(nonzero, (0, 1)):
                p = WittFamilyParams(2, space.d, gamma=gamma, mu=mu)
                add("witt:2", p, wrap(witt_profile(p, field)), witt_discrepancy(p, field))
        elif q_d_one:
            for beta, nu in itertools.product(S, repeat=2):
                p = WittFamilyParams(3, space.d, beta, nu)
                add("witt:3", p, wrap(witt_profile(p, field)), witt_discrepancy(p, field))
        else:
            out.append(FamilyInstance("zero", _ZeroParams(space.d), {t: Block(z, z, z, z) for t in dom}))
        return out

    z = field.zero
    if field.q_is_one or field.q_is_minus_one:
        case = DEGREE_ZERO if space.d == 0 else None
    else:
        case = ROOT_OF_UNITY if q_d_one else None
    if case is None:
        out.append(FamilyInstance("zero", _ZeroParams(space.d), {t: Block(z, z, z, z) for t in dom}))
        return out
    for v in range(1, 6):
        betas = S if v == 1 else nonzero
        free = ("nu1", "nu2", "nu3", "nu4", "gamma", "theta")
        for combo in itertools.product(S, repeat=len(free)):
            kw = dict(zip(free, combo))
            if v in (1, 2) and not kw["theta"].is_zero():
                continue  # theta only enters variant 5; skip duplicates
            if v in (3, 4) and not kw["theta"].is_zero():
                continue
            if v == 3 and not kw["gamma"].is_zero():
                continue  # gamma unused in variant 3
            for beta in (betas if v > 1 else (field.zero,)):
                p = W22FamilyParams(v, case, space.d, beta=beta, **kw)
                add(f"w22:{case}:{v}", p, w22_profile(p, field), w22_discrepancy(p, field))
    return out


@dataclass(frozen=True)
class _ZeroParams:
    d: int

    def to_json(self):
        return {"family": "zero", "d": self.d}


def _key(space, table):
    return tuple((t, tuple(table[t])) for t in sorted(table))


def match_families(profiles: ProfileSet, space: SearchSpace, extend_window=None):
    """Two-sided comparison of search output with family instantiations."""
    started = time.perf_counter()
    rep = CoverageReport(space, solutions=profiles.solutions)
    index = {}
    for i, table in enumerate(profiles.solutions):
        index[_key(space, table)] = i
    hits = {}
    in_S = set(space.values)
    seen_families = set()
    for inst in family_instances(space):
        k = _key(space, inst.table)
        i = index.get(k)
        if i is not None:
            hits.setdefault(i, []).append(inst)
            continue
        if not all(all(x in in_S for x in blk) for blk in inst.table.values()):
            rep.outside_value_set.append(inst)
            continue
        if k in seen_families:
            continue
        seen_families.add(k)
        rep.unmatched_families.append((inst, _adjudicate_family(space, inst)))
    for i, table in enumerate(profiles.solutions):
        if i in hits:
            rep.matched.append((i, hits[i]))
        else:
            rep.unmatched_solutions.append((i, _adjudicate_solution(space, table, extend_window)))
    rep.millis = int((time.perf_counter() - started) * 1000)
    return rep


def _adjudicate_family(space, inst):
    """Why a family instantiation with values in S has no matching solution."""
    p = inst.params
    if isinstance(p, WittFamilyParams):
        op = make_witt_family(p, space.field, M=space.M + abs(space.d))
    elif isinstance(p, W22FamilyParams):
        op = make_w22_family(p, space.field, M=space.M + abs(space.d))
    else:
        return {"verdict": "missed"}
    if op.flagged:
        return {"verdict": "unsound", "ledger": inst.discrepancy}
    return {"verdict": "missed"}


def _adjudicate_solution(space, table, extend_window=None):
    """A solution outside every family is genuine if some total extension stays averaging."""
    M_ext = extend_window or (8 if space.algebra == "witt" else 4)
    alg = make_algebra(space.algebra, space.field)
    for name, rule in _extensions(space, table):
        op = HomogeneousOperator(space.algebra, space.field, space.d, rule)
        if check_averaging(alg, op, M_ext).passed:
            return {"verdict": "genuine", "extension": name, "checked_window": M_ext}
    return {"verdict": "window_artifact", "checked_window": M_ext}


def _extensions(space, table):
    z = space.field.zero
    zero_block = Block(z, z, z, z)
    yield "zero", lambda t: table.get(t, zero_block)
    M = space.M
    for period in range(1, M + 1):
        if all(table[t] == table[t + period] for t in range(-M, M + 1 - period)):
            def periodic(t, period=period):
                r = (t + M) % period - M
                return table[r]
            yield f"periodic:{period}", periodic
            break
