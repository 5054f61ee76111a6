from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from homavg import (
    Block,
    DomainError,
    Element,
    HomogeneousOperator,
    InvalidBasis,
    InvalidParameter,
    L,
    ScalarField,
    SingularAtDegree,
    W,
    identity_operator,
    induced_algebra,
    make_algebra,
    operator_from_function,
    zero_operator,
)
from homavg.families import WittFamilyParams, make_witt_family
from oracles import OracleField, lin, same, to_sympy, w22_bracket, witt_bracket

Q1 = ScalarField.rational(1)
Q2 = ScalarField.rational(2)
QF = ScalarField.rational_function()
C2 = ScalarField.cyclotomic(2)


def el(field, **terms):
    return Element(field, {L(int(k[1:])) if k[0] == "L" else W(int(k[1:])): field(v) for k, v in terms.items()})


def basis(field, idx):
    return Element.basis(field, idx)


# --- bracket / twist examples -------------------------------------------------

def test_witt_bracket_q1():
    alg = make_algebra("witt", Q1)
    assert alg.bracket(basis(Q1, L(2)), basis(Q1, L(1))) == basis(Q1, L(3))


def test_w22_bracket_generic():
    alg = make_algebra("w22", QF)
    q = QF.q
    got = alg.bracket(basis(QF, L(1)), basis(QF, W(4)))
    assert got == Element(QF, {W(5): -(q ** 2 + 1 + q ** -2)})
    assert alg.bracket(basis(QF, W(2)), basis(QF, W(5))).is_zero()


def test_self_bracket_vanishes():
    for name in ("witt", "w22"):
        alg = make_algebra(name, QF)
        for idx in alg.window_basis(3):
            x = basis(QF, idx)
            assert alg.bracket(x, x).is_zero()


def test_twist_examples():
    assert make_algebra("witt", Q2).twist(basis(Q2, L(3))) == Element(Q2, {L(3): Q2(9)})
    assert make_algebra("w22", Q2).twist(basis(Q2, W(2))) == Element(Q2, {W(2): Q2(Fraction(17, 4))})
    assert make_algebra("witt", C2).twist(basis(C2, L(1))).is_zero()


def test_w_index_rejected_by_witt():
    alg = make_algebra("witt", Q2)
    with pytest.raises(InvalidBasis):
        alg.bracket(basis(Q2, W(1)), basis(Q2, L(0)))


@pytest.mark.parametrize("name", ["witt", "w22"])
@pytest.mark.parametrize("kind,value", [("rational", 3), ("cyclotomic", 5), ("qfunc", None)])
def test_brackets_match_oracle(name, kind, value):
    F = {"rational": lambda: ScalarField.rational(value), "cyclotomic": lambda: ScalarField.cyclotomic(value),
         "qfunc": ScalarField.rational_function}[kind]()
    O = OracleField(kind, value)
    alg = make_algebra(name, F)
    ref = witt_bracket if name == "witt" else w22_bracket
    for a in alg.window_basis(3):
        for b in alg.window_basis(3):
            got = alg.bracket(basis(F, a), basis(F, b))
            want = lin(O, ref, {(a.family, a.degree): 1}, {(b.family, b.degree): 1})
            assert same(O, {(i.family, i.degree): to_sympy(c) for i, c in got.terms.items()}, want)


# --- graded structure properties ----------------------------------------------

deg = st.integers(-8, 8)
fields = st.sampled_from([Q2, QF, ScalarField.cyclotomic(3), ScalarField.cyclotomic(4), C2])


@given(fields, st.sampled_from(["witt", "w22"]), st.integers(-2, 2), deg, deg, st.booleans(), st.booleans())
def test_grading(F, name, k, m, n, wa, wb):
    alg = make_algebra(name, F, k)
    fa = "W" if (wa and name == "w22") else "L"
    fb = "W" if (wb and name == "w22") else "L"
    out = alg.bracket(basis(F, L(m) if fa == "L" else W(m)), basis(F, L(n) if fb == "L" else W(n)))
    assert set(out.degrees()) <= {m + n}
    tw = alg.twist(basis(F, L(m)))
    assert set(tw.degrees()) == {m + k} or tw.is_zero()


small_coeff = st.integers(-3, 3)


@st.composite
def elements(draw, field, families):
    terms = {}
    for _ in range(draw(st.integers(0, 3))):
        fam = draw(st.sampled_from(families))
        d = draw(st.integers(-4, 4))
        terms[L(d) if fam == "L" else W(d)] = field(draw(small_coeff))
    return Element(field, terms)


@given(st.data(), st.sampled_from(["witt", "w22"]))
def test_bilinear_and_skew(data, name):
    F = ScalarField.cyclotomic(5)
    alg = make_algebra(name, F)
    fams = alg.families
    x, y, z = (data.draw(elements(F, fams)) for _ in range(3))
    a, b = F(data.draw(small_coeff)), F(data.draw(small_coeff))
    lhs = alg.bracket(x.scale(a) + y.scale(b), z)
    assert lhs == alg.bracket(x, z).scale(a) + alg.bracket(y, z).scale(b)
    assert (alg.bracket(x, y) + alg.bracket(y, x)).is_zero()


def test_element_has_no_zero_coefficients():
    x = el(Q2, L1=1, L2=3)
    y = el(Q2, L1=-1)
    s = x + y
    assert s.support() == [L(2)]
    assert (x - x).terms == {}
    assert Element.from_json(Q2, s.to_json()) == s


# --- operators ------------------------------------------------------------------

def test_operator_application_examples():
    P0 = zero_operator("witt", Q1, d=2)
    assert P0(el(Q1, L3=5)).is_zero()
    ident = identity_operator("witt", Q1)
    assert ident(el(Q1, L4=2)) == el(Q1, L4=2)
    P = operator_from_function("witt", Q1, 1, lambda t: t)
    assert P(basis(Q1, L(2))) == Element(Q1, {L(3): Q1(3)})


def test_table_operator_domain_error():
    tab = {t: Block(Q1.one, Q1.zero, Q1.zero, Q1.zero) for t in range(-2, 3)}
    P = HomogeneousOperator("witt", Q1, 1, tab)
    assert P(basis(Q1, L(1))) == basis(Q1, L(2))
    with pytest.raises(DomainError) as info:
        P(el(Q1, L2=1, L5=1))
    assert info.value.missing == [3, 6]


def test_witt_table_drops_w_entries():
    tab = {0: Block(Q1.one, Q1.one, Q1.one, Q1.one)}
    P = HomogeneousOperator("witt", Q1, 0, tab)
    assert P.block(0) == Block(Q1.one, Q1.zero, Q1.zero, Q1.zero)


def test_combinator_examples():
    P = operator_from_function("w22", Q2, 0, lambda t: (1 + t * t, t, 0, 2))
    x = el(Q2, L1=1, W2=3)
    assert P.scale(0)(x).is_zero()
    assert identity_operator("w22", Q2).compose(P)(x) == P(x)
    with pytest.raises(InvalidParameter):
        P + operator_from_function("w22", Q2, 1, lambda t: 1)
    with pytest.raises(InvalidParameter):
        P.polynomial([1, 1])
    Pd = operator_from_function("witt", Q2, 1, lambda t: 1)
    with pytest.raises(InvalidParameter):
        Pd.inverse()


def test_inverse_of_witt_profile():
    q = Q2.q
    P = operator_from_function("witt", Q2, 0, lambda t: 1 + Q2(2) ** t)
    inv = P.inverse()
    for t in range(-4, 5):
        assert inv.block(t).f1 == (1 + q ** t).inverse()


def test_singular_inverse_is_lazy():
    P = operator_from_function("witt", Q2, 0, lambda t: t)
    inv = P.inverse()
    assert inv(basis(Q2, L(2))) == Element(Q2, {L(2): Q2(Fraction(1, 2))})
    with pytest.raises(SingularAtDegree) as info:
        inv(basis(Q2, L(0)))
    assert info.value.degree == 0


@given(st.lists(st.integers(-3, 3), min_size=4, max_size=4), st.integers(-5, 5))
def test_compose_with_inverse_is_identity(vals, t0):
    F = ScalarField.cyclotomic(3)
    a, b, c, d = vals
    if a * d - b * c == 0:
        return

    def rule(t):
        # invertible at every degree: a fixed nonsingular matrix twisted by q^t on the diagonal
        return (F(a) * F.q ** t, F(b), F(c), F(d) * F.q ** t)

    P = operator_from_function("w22", F, 0, rule)
    inv = P.inverse()
    for idx in (L(t0), W(t0)):
        x = basis(F, idx)
        assert P.compose(inv)(x) == x
        assert inv.compose(P)(x) == x


def test_compose_degree_and_shift():
    P = operator_from_function("witt", Q1, 1, lambda t: t)
    Q = operator_from_function("witt", Q1, 2, lambda t: t + 10)
    PQ = P.compose(Q)
    assert PQ.d == 3
    # P(Q(L_0)) = P(12 L_2) = 12 * 3 L_3
    assert PQ(basis(Q1, L(0))) == Element(Q1, {L(3): Q1(36)})


def test_polynomial_matches_manual_sum():
    P = operator_from_function("witt", QF, 0, lambda t: QF.q ** t)
    F = P.polynomial([0, 3, 1])  # t^2 + 3t
    x = basis(QF, L(2))
    assert F(x) == P(P(x)) + P(x).scale(3)


def test_operator_json_roundtrip():
    P = operator_from_function("w22", Q2, 1, lambda t: (t, 1, 0, 2))
    data = P.to_json(degrees=range(-2, 3))
    back = HomogeneousOperator.from_table_json(Q2, data)
    assert back.table(range(-2, 3)) == P.table(range(-2, 3))


# --- induced algebra -----------------------------------------------------------

def test_induced_examples():
    alg = make_algebra("w22", Q2)
    x, y = el(Q2, L1=1, W0=2), el(Q2, L2=1, W3=-1)
    assert induced_algebra(alg, identity_operator("w22", Q2)).product(x, y) == alg.bracket(x, y)
    assert induced_algebra(alg, zero_operator("w22", Q2)).product(x, y).is_zero()


def test_induced_witt_family_value():
    op = make_witt_family(WittFamilyParams(1, 0, 1, 1), Q1, verify=False)
    ind = induced_algebra(make_algebra("witt", Q1), op)
    assert ind.product(basis(Q1, L(1)), basis(Q1, L(0))) == basis(Q1, L(1))


def test_induced_needs_closed_form():
    tab = {0: Block(Q1.one, Q1.zero, Q1.zero, Q1.zero)}
    with pytest.raises(InvalidParameter):
        induced_algebra(make_algebra("witt", Q1), HomogeneousOperator("witt", Q1, 0, tab))
