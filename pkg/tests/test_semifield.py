"""Exact arithmetic: subtraction-free rationals and tropical monomials."""

import pytest
from hypothesis import given, settings, strategies as st

from periodica import semifield as sf
from periodica.semifield import (
    SFRational,
    SizeLimitError,
    SparsePoly,
    TropMonomial,
    set_max_terms,
    sfr_add,
    sfr_div,
    sfr_eq,
    sfr_mul,
    trop_evaluate,
    trop_oplus,
)

NVARS = 3


def poly(*terms):
    """poly((coeff, {var: exp}), ...)"""
    acc = SparsePoly.zero()
    for coeff, exps in terms:
        acc = acc + SparsePoly.monomial(exps, coeff)
    return acc


y0, y1, y2 = (SFRational.var(i) for i in range(3))
one = SFRational.one()


# -- strategies ---------------------------------------------------------------

pos_polys = st.lists(
    st.tuples(
        st.integers(min_value=1, max_value=4),
        st.dictionaries(
            st.integers(min_value=0, max_value=NVARS - 1),
            st.integers(min_value=0, max_value=3),
            max_size=NVARS,
        ),
    ),
    min_size=1,
    max_size=4,
).map(lambda ts: poly(*ts))


@st.composite
def sfrationals(draw):
    num = draw(pos_polys)
    den = draw(pos_polys)
    return SFRational.from_pair(num, den)


trop_monos = st.lists(
    st.integers(min_value=-5, max_value=5), min_size=NVARS, max_size=NVARS
).map(lambda v: TropMonomial(tuple(v)))


# -- SparsePoly ---------------------------------------------------------------


def test_poly_basic_arithmetic():
    p = poly((1, {0: 1}), (1, {}))  # y0 + 1
    q = poly((1, {0: 1}))
    assert (p * q).terms == poly((1, {0: 2}), (1, {0: 1})).terms
    assert (p - p).is_zero()
    assert (p ** 3) == p * p * p


def test_poly_exact_division_roundtrip():
    import random

    rng = random.Random(7)
    for _ in range(50):
        a = poly(*[(rng.randint(1, 3), {v: rng.randint(0, 2) for v in range(2)}) for _ in range(3)])
        b = poly(*[(rng.randint(1, 3), {v: rng.randint(0, 2) for v in range(2)}) for _ in range(3)])
        prod = a * b
        q = prod.exact_div(b)
        assert q == a
    assert poly((1, {0: 1}), (1, {})).exact_div(poly((1, {1: 1}), (1, {}))) is None


def test_poly_size_guard():
    set_max_terms(8)
    try:
        p = poly(*[(1, {0: i}) for i in range(5)])
        q = poly(*[(1, {1: i}) for i in range(5)])
        with pytest.raises(SizeLimitError):
            _ = p * q
    finally:
        set_max_terms(10**6)


def test_poly_json_roundtrip_and_order():
    p = poly((2, {1: 1}), (3, {0: 2, 1: 1}), (1, {}))
    data = p.to_json()
    assert SparsePoly.from_json(data) == p
    # descending lexicographic on exponent vectors: (2,1) first, then (0,1), then 1
    assert data[0] == [[{"var": 1, "exp": 2}, {"var": 2, "exp": 1}], 3]
    assert data[-1] == [[], 1]


# -- SFRational operations ----------------------------------------------------


def test_add_examples():
    r = sfr_add(y0, one)
    assert r.num == poly((1, {0: 1}), (1, {})) and r.den.is_one()

    a = y0 / (one + y1)  # y0/(1+y1)
    r = sfr_add(a, y0)
    # (2 y0 + y0 y1) / (1 + y1)
    assert sfr_eq(r, SFRational.from_pair(poly((2, {0: 1}), (1, {0: 1, 1: 1})), poly((1, {}), (1, {1: 1}))))
    assert r.den == poly((1, {}), (1, {1: 1}))


def test_mul_div_examples():
    assert sfr_mul(y0, y0.inv()).is_one()
    r = sfr_mul((one + y0) / y1, y1)
    assert sfr_eq(r, one + y0)
    assert r.den.is_one()
    assert sfr_div(y0 + y1, y0 + y1).is_one()


def test_eq_examples():
    lhs = SFRational.from_pair(
        poly((1, {0: 1}), (1, {0: 1, 1: 1})), poly((1, {}), (1, {1: 1}))
    )
    assert sfr_eq(lhs, y0)
    assert not sfr_eq(y0, y1)


def test_from_pair_rejects_bad_input():
    with pytest.raises(ValueError):
        SFRational.from_pair(poly((1, {0: 1}), (-1, {})), SparsePoly.one())
    with pytest.raises(ZeroDivisionError):
        SFRational.from_pair(SparsePoly.zero(), SparsePoly.one())
    with pytest.raises(ValueError):
        SFRational.from_int(0)


def test_canonicalization_divides_content():
    # common monomial and integer content must drop out
    r = SFRational.from_pair(poly((2, {0: 2}), (2, {0: 1, 1: 1})), poly((4, {0: 1})))
    assert r.num == poly((1, {0: 1}), (1, {1: 1}))
    assert r.den == poly((2, {}))


def test_json_roundtrip():
    a = (y0 + one) / (y1 + y2 ** 2)
    b = SFRational.from_json(a.to_json())
    assert sfr_eq(a, b)
    assert a.to_json() == b.to_json()


# -- property tests -----------------------------------------------------------


@settings(max_examples=100, deadline=None)
@given(sfrationals(), sfrationals())
def test_add_commutative(a, b):
    assert sfr_eq(sfr_add(a, b), sfr_add(b, a))


@settings(max_examples=60, deadline=None)
@given(sfrationals(), sfrationals(), sfrationals())
def test_add_associative(a, b, c):
    assert sfr_eq(sfr_add(sfr_add(a, b), c), sfr_add(a, sfr_add(b, c)))


@settings(max_examples=100, deadline=None)
@given(sfrationals(), sfrationals(), sfrationals())
def test_mul_distributes_over_add(a, b, c):
    assert sfr_eq(sfr_mul(a, sfr_add(b, c)), sfr_add(sfr_mul(a, b), sfr_mul(a, c)))


@settings(max_examples=60, deadline=None)
@given(sfrationals())
def test_canonicalize_idempotent(a):
    again = SFRational.from_pair(a.num, a.den)
    assert again.num == a.num and again.den == a.den


@settings(max_examples=60, deadline=None)
@given(sfrationals(), sfrationals(), sfrationals())
def test_eq_is_equivalence(a, b, c):
    assert sfr_eq(a, a)
    assert sfr_eq(a, b) == sfr_eq(b, a)
    if sfr_eq(a, b) and sfr_eq(b, c):
        assert sfr_eq(a, c)


@settings(max_examples=60, deadline=None)
@given(sfrationals(), pos_polys)
def test_trop_invariant_under_representative(a, p):
    blown = SFRational.from_pair(a.num * p, a.den * p)
    assert trop_evaluate(a, NVARS) == trop_evaluate(blown, NVARS)


@settings(max_examples=100, deadline=None)
@given(sfrationals(), sfrationals())
def test_trop_is_multiplicative(a, b):
    assert trop_evaluate(sfr_mul(a, b), NVARS) == trop_evaluate(a, NVARS) * trop_evaluate(b, NVARS)


@settings(max_examples=100, deadline=None)
@given(trop_monos, trop_monos, trop_monos)
def test_trop_semifield_axioms(a, b, c):
    assert trop_oplus(a, b) == trop_oplus(b, a)
    assert trop_oplus(trop_oplus(a, b), c) == trop_oplus(a, trop_oplus(b, c))
    assert a * trop_oplus(b, c) == trop_oplus(a * b, a * c)
    assert trop_oplus(a, a) == a


# -- tropical evaluation ------------------------------------------------------


def test_trop_examples():
    assert trop_oplus(TropMonomial((1, 0)), TropMonomial((1, 1))) == TropMonomial((1, 0))
    assert trop_oplus(TropMonomial((0, 0)), TropMonomial((-1, 2))) == TropMonomial((-1, 0))
    with pytest.raises(ValueError):
        trop_oplus(TropMonomial((0,)), TropMonomial((0, 0)))

    # (y0 + y0 y1)/(1 + y0) -> y0
    a = SFRational.from_pair(poly((1, {0: 1}), (1, {0: 1, 1: 1})), poly((1, {}), (1, {0: 1})))
    assert trop_evaluate(a, 2) == TropMonomial((1, 0))
    # rational constants evaluate to 1
    assert trop_evaluate(SFRational.from_fraction(3, 7), 2) == TropMonomial.one(2)


def test_trop_sign():
    assert TropMonomial((1, 0)).sign() == 1
    assert TropMonomial((-1, -2)).sign() == -1
    assert TropMonomial((1, -1)).sign() == 0
    assert TropMonomial((0, 0)).sign() == 0
