from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from homavg import InvalidParameter, ScalarField, arith, brace_num, bracket_num, field_make, q_power
from homavg.scalars import parse_scalar
from oracles import OracleField, brace, bracket, to_sympy

QFUNC = ScalarField.rational_function()
FIELDS = [
    (ScalarField.rational(2), OracleField("rational", 2)),
    (ScalarField.rational(Fraction(1, 3)), OracleField("rational", "1/3")),
    (ScalarField.rational(1), OracleField("rational", 1)),
    (ScalarField.rational(-1), OracleField("rational", -1)),
    (QFUNC, OracleField("qfunc")),
] + [(ScalarField.cyclotomic(n), OracleField("cyclotomic", n)) for n in range(1, 9)]
IDS = [str(f) for f, _ in FIELDS]


# --- worked examples ---------------------------------------------------------

def test_cyclotomic4_squares_to_minus_one():
    F = field_make({"kind": "cyclotomic", "order": 4})
    assert F.modulus == (1, 0, 1)  # x^2 + 1, low to high
    assert F.q * F.q == F(-1)


def test_cyclotomic1_is_q_one():
    F = ScalarField.cyclotomic(1)
    assert F.q_is_one
    assert [brace_num(F, n) for n in range(-3, 4)] == [F(n) for n in range(-3, 4)]
    R = ScalarField.rational(1)
    assert [str(bracket_num(F, n)) for n in range(-8, 9)] == [str(bracket_num(R, n)) for n in range(-8, 9)]


@pytest.mark.parametrize("bad", [{"kind": "rational", "q": "0"}, "rational:0", "cyclotomic:0", "cyclotomic:-3", "nope"])
def test_bad_field_descriptors(bad):
    with pytest.raises(InvalidParameter):
        field_make(bad)


def test_qfunc_division_is_polynomial():
    q = QFUNC.q
    assert str(arith(1 - q ** 3, "/", 1 - q)) == "q^2+q+1"


def test_cyclotomic4_product():
    F = ScalarField.cyclotomic(4)
    assert arith(F.q + 1, "*", F.q - 1) == F(-2)


def test_division_by_zero_and_mixed_fields():
    F = ScalarField.cyclotomic(3)
    with pytest.raises(ZeroDivisionError):
        F.one / F.zero
    with pytest.raises(InvalidParameter):
        F.one + QFUNC.one
    assert arith(F.q, "=?", F.q) is True


def test_q_power_examples():
    assert q_power(ScalarField.cyclotomic(2), 5) == ScalarField.cyclotomic(2)(-1)
    assert q_power(ScalarField.rational(2), -2).as_fraction() == Fraction(1, 4)
    C4 = ScalarField.cyclotomic(4)
    assert not C4.q_pow_is_one(2) and C4.q_pow_is_one(4)


def test_brace_examples():
    assert brace_num(ScalarField.rational(1), 5).as_fraction() == 5
    assert brace_num(ScalarField.rational(2), 3).as_fraction() == 7
    for F, _ in FIELDS:
        assert brace_num(F, 0).is_zero()


def test_bracket_examples():
    assert str(bracket_num(QFUNC, 2)) == str(QFUNC.q + QFUNC.q ** -1)
    assert bracket_num(ScalarField.cyclotomic(2), 4) == ScalarField.cyclotomic(2)(-4)
    for F, _ in FIELDS:
        assert bracket_num(F, 0).is_zero()


def test_serialized_forms():
    F = ScalarField.rational(1)
    assert str(F(Fraction(3, 4))) == "3/4"
    C = ScalarField.cyclotomic(5)
    assert str(C.q ** 2 + 1) == "q^2+1"
    assert str(parse_scalar(QFUNC, "(q^2+1)/(q-1)")) == "(q^2+1)/(q-1)"


@pytest.mark.parametrize("text", ["q+", "(q", "1/0", "q^^2", "2 q"])
def test_parse_errors(text):
    with pytest.raises((InvalidParameter, ZeroDivisionError)):
        parse_scalar(QFUNC, text)


# --- oracle agreement -------------------------------------------------------

@pytest.mark.parametrize("pair", FIELDS, ids=IDS)
def test_qnumbers_match_oracle(pair):
    F, O = pair
    for n in range(-6, 7):
        assert O.equal(to_sympy(brace_num(F, n)), brace(O, n)), n
        assert O.equal(to_sympy(bracket_num(F, n)), bracket(O, n)), n


# --- properties --------------------------------------------------------------

small = st.integers(-8, 8)
field_st = st.sampled_from([f for f, _ in FIELDS])


@given(field_st, small, small)
def test_brace_identities(F, m, n):
    b = lambda k: brace_num(F, k)
    assert b(m + n) == b(m) + q_power(F, m) * b(n)
    assert q_power(F, m) * b(-m) == -b(m)
    assert b(m + 1) == 1 + F.q * b(m)


@given(field_st, small, small)
def test_bracket_identities(F, m, n):
    b = lambda k: bracket_num(F, k)
    assert b(-n) == -b(n)
    assert q_power(F, n) * b(m) - q_power(F, m) * b(n) == b(m - n)
    assert q_power(F, -n) * b(m) + q_power(F, m) * b(n) == b(m + n)


@given(st.integers(2, 6), small)
def test_brace_zero_iff_root(N, n):
    F = ScalarField.cyclotomic(N)
    assert brace_num(F, n).is_zero() == F.q_pow_is_one(n)


@pytest.mark.xfail(strict=True, reason="{n} = n at q = 1, so {n} = 0 and q^n = 1 disagree for n != 0")
def test_brace_zero_iff_root_at_q_one():
    F = ScalarField.cyclotomic(1)
    assert all(brace_num(F, n).is_zero() == F.q_pow_is_one(n) for n in range(-8, 9))


@given(st.integers(3, 8), small)
def test_bracket_zero_iff_root(N, n):
    F = ScalarField.cyclotomic(N)
    assert bracket_num(F, n).is_zero() == F.q_pow_is_one(2 * n)


def _poly_text(coeffs):
    return "+".join(f"({c})*q^{i}" for i, c in enumerate(coeffs)) or "0"


coeff_st = st.lists(st.fractions(min_value=-5, max_value=5, max_denominator=4), min_size=1, max_size=4)


@given(st.sampled_from([QFUNC, ScalarField.cyclotomic(5), ScalarField.cyclotomic(6), ScalarField.rational(3)]), coeff_st, coeff_st)
def test_canonical_form_unique(F, a, b):
    x = parse_scalar(F, _poly_text(a))
    y = parse_scalar(F, _poly_text(b))
    if y.is_zero():
        return
    z = x / y
    # re-deriving the same value along another route gives the identical representation
    assert str((z * y * y) / y) == str(x)
    assert (z * y) == x
    assert str(parse_scalar(F, str(z))) == str(z)  # normalizing twice is normalizing once
    assert hash(z * y) == hash(x)


@given(st.sampled_from([QFUNC, ScalarField.cyclotomic(7), ScalarField.rational(Fraction(2, 5))]), coeff_st)
def test_inverse_roundtrip(F, a):
    x = parse_scalar(F, _poly_text(a))
    if x.is_zero():
        return
    assert x * x.inverse() == F.one
