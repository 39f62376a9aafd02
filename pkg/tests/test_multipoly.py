from fractions import Fraction

import pytest

from hypothesis import given, settings, strategies as st

from jetalg.multipoly import (
    Poly, grlex_key, mi_add, mi_below, mi_binomial, mi_degree, mi_factorial,
    mi_le, mi_range, mi_sub, poly_div_exact,
)

VARS = ("x", "y")

fractions = st.builds(Fraction, st.integers(-6, 6), st.integers(1, 4))
monomials = st.tuples(st.integers(0, 3), st.integers(0, 3))
polys = st.dictionaries(monomials, fractions, max_size=4).map(
    lambda d: Poly(VARS, d))


def P(**coeffs):
    """Shorthand: P(x=1, y=2) is x + 2y; exponent tuples via double-under
    names like x2y1."""
    x = Poly.variable(VARS, "x")
    y = Poly.variable(VARS, "y")
    table = {"x": x, "y": y}
    out = Poly.zero(VARS)
    for name, c in coeffs.items():
        out = out + table[name] * Fraction(c)
    return out


def test_product_of_conjugates():
    x = Poly.variable(("x",), "x")
    one = Poly.one(("x",))
    assert (x + one) * (x - one) == x * x - one


def test_additive_inverse():
    p = P(x=3, y=-2) + Poly.const(VARS, Fraction(1, 2))
    assert (p + (-p)).is_zero()


def test_binomial_square():
    x1 = Poly.variable(VARS, "x")
    x2 = Poly.variable(VARS, "y")
    lhs = (x1 + x2) ** 2
    assert lhs == x1 ** 2 + x1 * x2 * 2 + x2 ** 2


def test_partial_derivatives():
    x = Poly.variable(VARS, "x")
    y = Poly.variable(VARS, "y")
    assert (x ** 3).partial(0) == 3 * x ** 2
    assert x.partial(1).is_zero()
    assert (x ** 2 * y).partial(0) == 2 * x * y


def test_multiindex_helpers():
    assert mi_factorial((2, 1)) == 2
    assert mi_binomial((2, 1), (1, 0)) == 2
    assert mi_binomial((2, 1), (2, 1)) == 1
    assert mi_degree((2, 1)) == 3
    assert mi_add((1, 0), (0, 2)) == (1, 2)
    assert mi_sub((2, 2), (1, 0)) == (1, 2)
    assert mi_le((1, 1), (2, 1)) and not mi_le((2, 0), (1, 1))
    below = list(mi_below((2, 1)))
    assert len(below) == 6 and (0, 0) in below and (2, 1) in below
    ms = list(mi_range(2, 2))
    assert len(ms) == 6
    assert ms == sorted(ms, key=grlex_key)


@settings(deadline=None, max_examples=60)
@given(polys, polys, polys)
def test_ring_axioms(p, q, r):
    assert p + q == q + p
    assert p * q == q * p
    assert (p + q) + r == p + (q + r)
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r


@settings(deadline=None, max_examples=60)
@given(polys)
def test_neutral_elements(p):
    assert p + Poly.zero(VARS) == p
    assert p * Poly.one(VARS) == p
    assert (p * Poly.zero(VARS)).is_zero()


@settings(deadline=None, max_examples=60)
@given(polys, polys)
def test_partial_leibniz(p, q):
    for i in range(2):
        assert (p * q).partial(i) == p.partial(i) * q + p * q.partial(i)


@settings(deadline=None, max_examples=60)
@given(polys)
def test_partials_commute(p):
    assert p.partial(0).partial(1) == p.partial(1).partial(0)


@settings(deadline=None, max_examples=60)
@given(polys, polys)
def test_exact_division_roundtrip(p, q):
    if q.is_zero():
        with pytest.raises(ZeroDivisionError):
            poly_div_exact(p, q)
    else:
        assert poly_div_exact(p * q, q) == p


def test_exact_division_failure():
    x = Poly.variable(("x",), "x")
    one = Poly.one(("x",))
    assert poly_div_exact(x + one, x) is None


@settings(deadline=None, max_examples=40)
@given(polys, st.integers(0, 4))
def test_power_is_repeated_product(p, e):
    expected = Poly.one(VARS)
    for _ in range(e):
        expected = expected * p
    assert p ** e == expected


def test_variable_extension():
    x = Poly.variable(("x",), "x")
    ext = (x ** 2 + x).extended(("x", "y"))
    y = Poly.variable(("x", "y"), "y")
    assert ext * y == Poly.variable(("x", "y"), "x") ** 2 * y + Poly.variable(("x", "y"), "x") * y


def test_polys_are_immutable_and_hashable():
    p = P(x=1)
    q = P(x=1)
    assert hash(p) == hash(q)
    assert len({p, q}) == 1
