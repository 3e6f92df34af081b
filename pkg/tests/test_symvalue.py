import json
from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from tanint.symvalue import (
    CATALAN_ATOM,
    LN2_ATOM,
    PI,
    PI_LN2_ATOM,
    ZERO,
    ConstAtom,
    SymValue,
    SymValueError,
    add,
    extract_coefficient,
    parse_json,
    pi_pow,
    scale,
    seed,
    to_json,
    to_latex,
    to_text,
)

from conftest import even_row

ATOMS = [PI, pi_pow(2), pi_pow(3), pi_pow(11), LN2_ATOM, PI_LN2_ATOM, CATALAN_ATOM, seed(2), seed(7)]

fractions = st.fractions(min_value=-50, max_value=50, max_denominator=60)
symvalues = st.builds(
    SymValue, fractions, st.dictionaries(st.sampled_from(ATOMS), fractions, max_size=5))


def assert_canonical(v):
    assert all(c != 0 for c in v.terms.values())
    for c in list(v.terms.values()) + [v.rational_part]:
        assert isinstance(c, F)


def test_additive_inverse():
    quarter_pi = SymValue.atom(PI, F(1, 4))
    s = add(quarter_pi, -quarter_pi)
    assert s.is_zero() and dict(s.terms) == {} and s.rational_part == 0


def test_cancellation_leaves_rational():
    assert SymValue(1, {PI: F(-1, 4)}) + SymValue.atom(PI, F(1, 4)) == SymValue(1)


def test_recurrence_left_side_at_n2():
    assert add(even_row(2), even_row(0)) == SymValue(0, {PI: F(1, 4), LN2_ATOM: F(-1, 2)})


def test_scale_by_zero():
    assert scale(0, even_row(14)).is_zero()


def test_scale_half():
    assert scale(F(1, 2), SymValue.atom(LN2_ATOM)) == SymValue.atom(LN2_ATOM, F(1, 2))


def test_scale_negates_row():
    expected = SymValue(F(1, 6), {pi_pow(2): F(-1, 32), PI: F(1, 6), LN2_ATOM: F(-2, 3)})
    assert scale(-1, even_row(4)) == expected


def test_extract_coefficient():
    assert extract_coefficient(even_row(2), pi_pow(2)) == F(-1, 32)
    assert extract_coefficient(even_row(2), CATALAN_ATOM) == 0
    assert extract_coefficient(even_row(14), LN2_ATOM) == F(-88069, 90090)


def test_zero_coefficients_dropped():
    v = SymValue(0, {PI: 0, LN2_ATOM: F(2, 4)})
    assert set(v.terms) == {LN2_ATOM}
    assert v.terms[LN2_ATOM] == F(1, 2)


@pytest.mark.parametrize("kind,index", [("pi_pow", 0), ("seed", 0), ("seed", 1), ("ln2", 3), ("sqrt2", 0)])
def test_invalid_atoms(kind, index):
    with pytest.raises(ValueError):
        ConstAtom(kind, index)


def test_values_are_immutable():
    v = SymValue(1, {PI: 1})
    with pytest.raises(TypeError):
        v.terms[PI] = 2


# -- JSON -------------------------------------------------------------------

def test_json_zero():
    assert to_json(ZERO) == '{"rational":"0","terms":{}}'
    assert parse_json(to_json(ZERO)) == ZERO


def test_json_quarter_pi():
    text = to_json(SymValue.atom(PI, F(1, 4)))
    assert text == '{"rational":"0","terms":{"pi^1":"1/4"}}'
    assert parse_json(text) == SymValue.atom(PI, F(1, 4))


def test_json_table_row_keys_sorted():
    text = to_json(even_row(2))
    assert list(json.loads(text)["terms"]) == ["ln2", "pi^1", "pi^2"]
    assert parse_json(text) == even_row(2)


def test_json_all_atom_names():
    v = SymValue(F(-3, 7), {a: F(i + 1, 3) for i, a in enumerate(ATOMS)})
    names = set(json.loads(to_json(v))["terms"])
    assert names == {"pi^1", "pi^2", "pi^3", "pi^11", "ln2", "pi*ln2", "catalan", "seed_2", "seed_7"}
    assert parse_json(to_json(v)) == v


@pytest.mark.parametrize("text", [
    "not json",
    '{"rational":"0"}',
    '{"rational":"0","terms":{},"extra":1}',
    '{"rational":"2/4","terms":{}}',
    '{"rational":"1/-2","terms":{}}',
    '{"rational":"3","terms":{}}',
    '{"rational":0,"terms":{}}',
    '{"rational":"0","terms":{"pi":"1/1"}}',
    '{"rational":"0","terms":{"seed_1":"1/1"}}',
    '{"rational":"0","terms":{"pi^0":"1/1"}}',
    '{"rational":"0","terms":{"ln2":"0"}}',
    '{"rational":"0","terms":{"ln2":"0/1"}}',
    '{"rational":"0","terms":[]}',
])
def test_json_rejects(text):
    with pytest.raises(SymValueError):
        parse_json(text)


# -- properties -------------------------------------------------------------

@given(symvalues, symvalues)
def test_add_commutes(a, b):
    assert a + b == b + a
    assert_canonical(a + b)


@given(symvalues, symvalues, symvalues)
def test_add_associates(a, b, c):
    assert (a + b) + c == a + (b + c)


@given(fractions, symvalues, symvalues)
def test_scale_distributes(k, a, b):
    assert scale(k, a + b) == scale(k, a) + scale(k, b)
    assert_canonical(scale(k, a))


@given(symvalues)
def test_json_round_trip(a):
    assert parse_json(to_json(a)) == a


@given(symvalues)
def test_equal_values_hash_equal(a):
    b = parse_json(to_json(a))
    assert hash(a) == hash(b)


# -- rendering --------------------------------------------------------------

def test_text_rendering():
    assert to_text(SymValue.atom(PI, F(1, 4))) == "pi/4"
    assert to_text(even_row(4)) == "pi^2/32 - pi/6 - 1/6 + 2*ln2/3"
    assert to_text(ZERO) == "0"


def test_latex_rendering():
    assert to_latex(even_row(2)) == r"-\frac{\pi^2}{32}+\frac{\pi}{4}-\frac{\ln 2}{2}"
    v = SymValue(F(-1, 2), {PI: F(1, 4), CATALAN_ATOM: F(-1, 2), PI_LN2_ATOM: F(1, 8), seed(12): 3})
    assert to_latex(v) == r"\frac{\pi}{4}-\frac{1}{2}+\frac{\pi \ln 2}{8}-\frac{G}{2}+3S_{12}"
    assert to_latex(SymValue.atom(pi_pow(12), -1)) == r"-\pi^{12}"
