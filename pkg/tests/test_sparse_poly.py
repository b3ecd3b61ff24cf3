from fractions import Fraction

import pytest
from conftest import nonconstant_polys, polys
from hypothesis import given
from hypothesis import strategies as st

from lacunary.sparse_poly import (
    MAX_EXPONENT,
    ExponentOverflow,
    Instance,
    PolyParseError,
    SparsePoly,
    compose,
    divmod_poly,
    mul,
    nonconstant_terms,
    normalize_f,
    parse_poly,
    pow,
    tilde_transform,
)

P = parse_poly


def y(text: str) -> SparsePoly:
    return parse_poly(text, var="y")


# -- parsing -------------------------------------------------------------------


def test_parse_reads_terms_directly():
    assert P("x^2 + 2*x + 1").terms == {2: 1, 1: 2, 0: 1}


def test_parse_zero_is_empty():
    assert P("0").terms == {}
    assert not P("0")


def test_parse_merges_like_terms():
    assert P("3/2*x^5 - x^5").terms == {5: Fraction(1, 2)}


def test_parse_ignores_whitespace():
    assert P("  - x ^ 2 +  1/3 ") == SparsePoly({2: -1, 0: Fraction(1, 3)})


@pytest.mark.parametrize("text", ["x^-2", "2*", "x*x", "x^", "1/0", "+", "x^2 +", "y"])
def test_parse_rejects_bad_syntax(text):
    with pytest.raises(PolyParseError) as info:
        P(text)
    assert info.value.position >= 0


def test_parse_exponent_limits():
    assert P(f"x^{MAX_EXPONENT}").degree == MAX_EXPONENT
    with pytest.raises(ExponentOverflow):
        P(f"x^{MAX_EXPONENT + 1}")


@given(polys())
def test_text_round_trip(p):
    assert P(p.to_text()) == p


def test_canonical_text_is_descending():
    assert P("1 + x^2 - 2*x^4 + x^6").to_text() == "x^6 - 2*x^4 + x^2 + 1"


# -- arithmetic ----------------------------------------------------------------------


def test_mul_examples():
    assert mul(P("x+1"), P("x-1")) == P("x^2-1")
    assert mul(P("3*x^2+1"), P("0")) == P("0")
    assert mul(y("1+y^3"), y("1+y^3")) == y("1+2*y^3+y^6")


def test_mul_overflow_is_checked():
    with pytest.raises(ExponentOverflow):
        mul(P(f"x^{MAX_EXPONENT}"), P("x"))


def test_pow_examples():
    assert pow(y("1+y"), 2) == y("1+2*y+y^2")
    p = P("3*x^4 - x + 2")
    assert pow(p, 1) == p
    assert pow(p, 0) == P("1")
    assert pow(y("1+2*y+y^2"), 2) == y("1+4*y+6*y^2+4*y^3+y^4")


def test_compose_examples():
    assert compose(P("x^2"), P("x+1")) == P("x^2+2*x+1")
    h = P("5*x^7 - x^3 + 2/3")
    assert compose(P("x"), h) == h
    assert compose(P("x^2+1"), P("x^3-x")) == P("x^6-2*x^4+x^2+1")


def test_nonconstant_terms_examples():
    assert nonconstant_terms(P("3")) == 0
    assert nonconstant_terms(P("4 + 2*x^3 - x^7")) == 2
    assert nonconstant_terms(P("x^5 + 3*x^5 - 4*x^5")) == 0


def test_divmod():
    q, r = divmod_poly(P("x^3+1"), P("x+1"))
    assert q == P("x^2-x+1") and not r
    q, r = divmod_poly(P("x^3+2"), P("x^2"))
    assert q == P("x") and r == P("2")


@given(polys(), polys(), polys())
def test_ring_axioms(a, b, c):
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert (a + b) - b == a
    assert len(mul(a, b)) <= len(a) * len(b)


@given(polys(max_deg=3, max_terms=3), polys(max_deg=3, max_terms=3), polys(max_deg=3, max_terms=3))
def test_compose_associative(a, b, c):
    assert compose(compose(a, b), c) == compose(a, compose(b, c))


@given(nonconstant_polys(), nonconstant_polys())
def test_compose_degree_law(g, h):
    assert compose(g, h).degree == g.degree * h.degree


@given(polys(max_deg=5, max_terms=4), st.integers(0, 4))
def test_pow_matches_repeated_product(p, k):
    expect = P("1")
    for _ in range(k):
        expect = expect * p
    assert pow(p, k) == expect


@given(nonconstant_polys(), nonconstant_polys(max_deg=3))
def test_divmod_identity(f, g):
    q, r = divmod_poly(f, g)
    assert q * g + r == f
    assert not r or r.degree < g.degree


# -- normalization and the tilde transform ----------------------------------------------


def test_normalize_examples():
    nf = normalize_f(P("x^6+2*x^3+5"))
    assert (nf.a, nf.m, nf.n, nf.b) == (1, 6, (3, 6), (2, 5))
    nf = normalize_f(P("7/2*x^9"))
    assert (nf.a, nf.m, nf.n, nf.b) == (Fraction(7, 2), 9, (), ())
    nf = normalize_f(P("2*x^4+2*x"))
    assert (nf.a, nf.m, nf.n, nf.b) == (2, 4, (3,), (1,))


def test_normalize_rejects_constants():
    with pytest.raises(ValueError):
        normalize_f(P("5"))
    with pytest.raises(ValueError):
        normalize_f(P("0"))


@given(nonconstant_polys())
def test_normalize_round_trip(f):
    nf = normalize_f(f)
    assert nf.reconstruct() == f
    assert list(nf.n) == sorted(set(nf.n)) and all(k > 0 for k in nf.n)


def test_tilde_examples():
    c = Fraction(5, 3)
    assert tilde_transform(P("x^3") + c) == SparsePoly({0: 1, 3: c})
    assert tilde_transform(P("x")) == P("1")
    assert tilde_transform(P("x^2+3*x")) == y("1+3*y")


def test_tilde_rejects_zero():
    with pytest.raises(ValueError):
        tilde_transform(P("0"))


@given(polys(min_terms=1))
def test_tilde_preserves_terms(h):
    t = tilde_transform(h)
    assert len(t) == len(h)
    assert t.coeff(0) == h.leading_coeff
    assert t.degree <= h.degree


@given(polys(min_terms=1))
def test_tilde_involution(h):
    if h.coeff(0):
        assert tilde_transform(tilde_transform(h)) == h


def test_instance_fields():
    inst = Instance.from_pair(P("x^2"), P("x^3+2"))
    assert inst.f == P("x^6+4*x^3+4")
    assert (inst.l, inst.d, inst.m, inst.n, inst.a, inst.b) == (2, 2, 6, (3, 6), 1, (4, 4))
    assert inst.delta(1) == y("1+4*y^3")


def test_instance_needs_nonzero_constant():
    with pytest.raises(ValueError):
        Instance.from_pair(P("x^2"), P("x^3+x"))
