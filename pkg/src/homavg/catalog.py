"""Representative family instantiations used by the soundness and induced-product runs.

Witt samples stay inside the parameter ranges the f-propositions allow, plus
the one flagged shift-constant case.  W(2,2) samples are the natural
choices per variant (zero, unit, all nonzero) with no such filtering.
"""

from dataclasses import dataclass

from .families import (
    DEGREE_ZERO,
    ROOT_OF_UNITY,
    W22FamilyParams,
    WittFamilyParams,
    make_w22_family,
    make_witt_family,
)
from .scalars import ScalarField


@dataclass(frozen=True)
class Sample:
    label: str
    field: ScalarField
    params: object
    expect_pass: bool = True

    @property
    def algebra(self):
        return "witt" if isinstance(self.params, WittFamilyParams) else "w22"

    def build(self, M=None, verify=True):
        if self.algebra == "witt":
            return make_witt_family(self.params, self.field, M or 6, verify)
        return make_w22_family(self.params, self.field, M or 4, verify)


def witt_samples():
    one = ScalarField.rational(1)
    c2, c3, c4 = (ScalarField.cyclotomic(n) for n in (2, 3, 4))
    P = WittFamilyParams
    out = [
        Sample("witt:1 zero", one, P(1, 0, 0, 0)),
        Sample("witt:1 constant", one, P(1, 0, 1, 0)),
        Sample("witt:1 delta d=0", one, P(1, 0, 0, 1)),
        Sample("witt:1 delta d=1", one, P(1, 1, 0, 2)),
        Sample("witt:1 zero d=2", one, P(1, 2, 0, 0)),
        Sample("witt:2 zero d=0", one, P(2, 0, gamma=1, mu=0)),
        Sample("witt:2 d=1", one, P(2, 1, gamma=2, mu=0)),
        Sample("witt:2 d=-2", one, P(2, -2, gamma=3, mu=0)),
        Sample("witt:3 zero", c2, P(3, 0, 0, 0)),
        Sample("witt:3 constant q=-1 d=2", c2, P(3, 2, 1, 0)),
        Sample("witt:3 delta q^3=1 d=3", c3, P(3, 3, 0, 1)),
        Sample("witt:3 constant q^4=1 d=4", c4, P(3, 4, 2, 0)),
        Sample("witt:1 flagged shift constant", one, P(1, 1, 1, 0), expect_pass=False),
    ]
    return out


def _w22_params(case, variant, d, kind):
    if kind == "zero":
        vals = dict(nu1=0, nu2=0, nu3=0, nu4=0, gamma=0, theta=0, beta=0 if variant == 1 else 1)
    elif kind == "unit":
        vals = dict(nu1=1, nu2=1, nu3=1, nu4=1, gamma=1, theta=1, beta=1)
    else:
        vals = dict(nu1=1, nu2=2, nu3=3, nu4=1, gamma=2, theta=3, beta=1)
    return W22FamilyParams(variant, case, d, **vals)


def w22_samples():
    spaces = [
        (ROOT_OF_UNITY, ScalarField.cyclotomic(4), 0),
        (ROOT_OF_UNITY, ScalarField.cyclotomic(3), 3),
        (DEGREE_ZERO, ScalarField.rational(1), 0),
        (DEGREE_ZERO, ScalarField.cyclotomic(2), 0),
    ]
    out = []
    for case, field, d in spaces:
        for v in range(1, 6):
            for kind in ("zero", "unit", "nonzero"):
                out.append(Sample(f"w22:{case}:{v} {kind} {field} d={d}", field, _w22_params(case, v, d, kind)))
    return out


def all_samples():
    return witt_samples() + w22_samples()
