import pytest

from lacunary.bounds import (
    B1,
    PUBLISHED,
    B1_log2_text,
    L_bound,
    M_of,
    b1_identity,
    case1_check,
    closing_remark_check,
    d_max,
    exponent_chain_check,
    final_chain_check,
    l2_pipeline,
    ladder_exponent,
    lambda_,
    lemma1_check,
    nl_bound,
    quotient_iterate,
    quotient_step,
    ratio_bound,
    twoL_bound,
    twoL_chain_check,
    x_closed_form,
    x_recurrence,
    x_upper,
    za_prop1_bound,
)
from lacunary.series import enumerate_term_shapes
from lacunary.towers import Cmp, pow2_exponent, power, prod, tower_cmp


def test_lambda_examples():
    assert lambda_(2, 4).evaluate() == 2**19 == 524288
    assert lambda_(1, 1).evaluate() == 512


@pytest.mark.parametrize("l", range(2, 9))
def test_lambda_below_quotient_base(l):
    cap = 16 ** (l + 2) * l**6
    assert all(lambda_(l, d).evaluate() <= cap for d in range(1, d_max(l) + 1))


def test_quotient_step_examples():
    lam = lambda_(2, 3).evaluate()
    assert quotient_step(2, 3, 1).evaluate() == lam
    assert quotient_iterate(2, 3, 2).evaluate() == lam ** (2 * 2 + 1)
    assert quotient_iterate(2, 3, 3).evaluate() == lam ** (1 + 4 * (1 + 4))


def test_ladder_within_cap():
    for l in range(1, 7):
        for r in range(1, 7):
            assert ladder_exponent(l, r) <= (3 * l) ** (r - 1)


def test_nl_bound():
    assert nl_bound(2, 4, 1, 0).evaluate() == 16**3 * 64
    assert nl_bound(2, 4, 5, 3).evaluate() == 16**3 * 64 * 5**4 * 4
    # at n_p = 0 the quotient step is exactly twice the n_l bound
    for l, d, prev in [(2, 1, 1), (2, 4, 7), (3, 5, 2)]:
        assert tower_cmp(quotient_step(l, d, prev), prod(2, nl_bound(l, d, prev, 0))) is Cmp.EQUAL


def test_za_form_gives_2448():
    assert za_prop1_bound(17, 4, 1) == 2448
    assert all(za_prop1_bound(17, 4, n) <= 2448 * n for n in range(1, 100))


def test_lemma1_examples():
    assert lemma1_check(2, 4, 1).ok
    assert lemma1_check(3, 12, 2).ok
    assert quotient_iterate(2, 4, 1).evaluate() == 2**19 <= 16**4 * 2**6 == 4194304


def test_lemma1_rejects_bad_args():
    with pytest.raises(ValueError):
        lemma1_check(2, 5, 1)
    with pytest.raises(ValueError):
        lemma1_check(3, 1, 3)


@pytest.mark.parametrize("l", range(2, 9))
def test_case1(l):
    chk = case1_check(l)
    assert chk.ok, chk.report()


def test_case1_exponent_sanity():
    for l in range(2, 13):
        assert 2 * l * (3 * l) ** (l - 2) + 1 < (3 * l) ** (l - 1)


def test_M_of_two():
    assert pow2_exponent(M_of(2)) == 137
    assert (4 * 2 + 8) * 6 == 96 and 2 + 6**2 == 38


def test_exponent_chain_l2_has_one_false_link():
    chk = exponent_chain_check(2)
    assert not chk.ok
    assert [k.label for k in chk.failures] == [
        "4l^2(1 + lR) - 1 < 4l^2 * 2 * 2^((4l+8)(3l)^(l-1)) l^((3l)^l) - 1"
    ]
    bad = chk.failures[0]
    assert bad.verdict is Cmp.GREATER
    # the left side overshoots by exactly 16
    assert bad.lhs.evaluate() - bad.rhs.evaluate() == 16
    # the conclusion itself still holds
    assert chk.links[-1].ok


@pytest.mark.parametrize("l", [3, 4])
def test_exponent_chain(l):
    chk = exponent_chain_check(l)
    assert chk.ok, chk.report()


@pytest.mark.parametrize("l", [2, 3, 4])
def test_twoL_chain(l):
    chk = twoL_chain_check(l)
    assert chk.ok, chk.report()


@pytest.mark.parametrize("l", [2, 3, 4])
def test_final_chain(l):
    chk = final_chain_check(l)
    assert chk.ok, chk.report()


def test_l2_closed_forms():
    assert pow2_exponent(twoL_bound(2)) == 384
    assert pow2_exponent(L_bound(2)) == 383
    assert tower_cmp(power(twoL_bound(2), M_of(2)), power(2, 3 * 2**144)) is Cmp.EQUAL


def test_x_recurrence_and_closed_form():
    for l, L, M in [(1, 5, 3), (2, 5, 3), (3, 4, 2), (4, 3, 2)]:
        x = x_recurrence(l, L, M)
        assert x_closed_form(l, L, M).evaluate() == x
        assert x <= x_upper(l, L, M).evaluate()


def test_b1_values():
    assert B1(1).evaluate() == 4**512
    ident = b1_identity(2)
    assert ident.pow2_exponent == 3 * 2**432
    assert ident.log2_text == B1_log2_text(2) == "3*2^432"
    assert ident.text == "(4*2)^((2*2)^((3*2)^(2+1)))"
    assert PUBLISHED["B1_base"] == 2 < B1(1).evaluate()
    with pytest.raises(ValueError):
        B1(0)


def test_closing_remark():
    chk = closing_remark_check()
    assert chk.ok, chk.report()


def test_ratio_bound_below_b1():
    for l in range(2, 6):
        assert tower_cmp(ratio_bound(l), B1(l)) is Cmp.LESS


def test_l2_pipeline_values():
    rep = l2_pipeline()
    assert rep.ok, rep.checks
    assert rep.L_used == 17
    assert rep.ratio_bound == 2448 == 17 * 18 * 4 * 2
    assert rep.h1_max == 1224
    assert rep.case1_terms == 1226
    assert rep.case2_exponents == list(range(-15, 2))
    assert rep.denom_terms == 2**16
    assert rep.final_bound == 1_114_112 == rep.L_used * rep.denom_terms
    assert rep.shape_counts == {
        2: {"strict": 6, "nonstrict": 9},
        3: {"strict": 9, "nonstrict": 12},
        4: {"strict": 12, "nonstrict": 15},
    }
    assert all(max(c.values()) <= 17 for c in rep.shape_counts.values())


def test_l2_pipeline_flags_a_bad_enumerator():
    def too_many(l, p, d, n, mode):
        return enumerate_term_shapes(l, p, d, n, mode) * 2

    rep = l2_pipeline(too_many)
    assert not rep.ok
    failed = [name for name, ok in rep.checks if not ok]
    assert "shape counts <= 17 for d in {2,3,4}" in failed
