"""Acceptance criteria 1-9.

Each test records its criterion number, title and runtime; the terminal
summary hook in conftest.py prints one PASS/FAIL line per criterion.  Run
with ``python3 -m pytest tests/test_acceptance.py``.
"""

import random
import time
from fractions import Fraction

import pytest

from lacunary import bounds
from lacunary.harness import TrialConfig, evaluate_pair, gen_lacunary_instance, is_special_shape, run_trials
from lacunary.series import (
    TruncSeries,
    combine,
    match_target,
    poly_to_series,
    pow_frac,
    puiseux_basis,
    structural_match,
    term_value,
)
from lacunary.sparse_poly import Instance, SparsePoly, parse_poly, tilde_transform
from lacunary.towers import Cmp, digit_count, pow2_exponent, power, prod, tower_cmp


@pytest.fixture
def criterion(record_property):
    """Register the criterion and time the body; fails if it runs past the limit."""

    class Timer:
        def __call__(self, number, title, limit):
            self.limit = limit
            record_property("criterion", number)
            record_property("title", title)
            self.start = time.perf_counter()
            return self

        def __enter__(self):
            return self

        def __exit__(self, *exc):
            elapsed = time.perf_counter() - self.start
            record_property("elapsed", elapsed)
            if exc[0] is None:
                assert elapsed < self.limit, f"took {elapsed:.2f} s, limit {self.limit} s"
            return False

    return Timer()


def test_criterion_1_b1_identity(criterion):
    with criterion(1, "B1 identity: B1(2) = 2^(3*2^432); B1(1) = 4^512, text value 2", 1.0):
        assert pow2_exponent(bounds.B1(2)) == 3 * 2**432
        assert tower_cmp(bounds.B1(2), power(2, prod(3, power(2, 432)))) is Cmp.EQUAL
        assert bounds.B1_log2_text(2) == "3*2^432"
        assert bounds.B1(1).evaluate() == 4**512
        assert bounds.PUBLISHED["B1_base"] == 2


def test_criterion_2_tower_comparison(criterion):
    with criterion(2, "tower comparison: 2^(3*2^432) > 10^(2^431); digits(2^431) = 130", 1.0):
        assert tower_cmp(power(2, prod(3, power(2, 432))), power(10, power(2, 431))) is Cmp.GREATER
        assert digit_count(power(2, 431)) == 130


def test_criterion_3_l2_pipeline(criterion):
    with criterion(3, "l = 2 pipeline: 17, 2448, 1224, 1226, {1..-15}, 2^16, 1114112", 1.0):
        rep = bounds.l2_pipeline()
        assert rep.ok, [name for name, ok in rep.checks if not ok]
        assert set(rep.shape_counts) == {2, 3, 4}
        assert all(max(c.values()) <= 17 for c in rep.shape_counts.values())
        assert rep.L_used == 17
        assert rep.ratio_bound == 2448
        assert rep.h1_max == 1224
        assert rep.case1_terms == 1226
        assert rep.case2_exponents == list(range(-15, 2))
        assert rep.denom_terms == 2**16
        assert rep.final_bound == 1_114_112


def test_criterion_4_lemma1(criterion):
    with criterion(4, "Lemma 1 suite for l = 2..6, all r <= l-1, d <= 2l(l-1)", 30.0):
        failed = []
        for l in range(2, 7):
            for r in range(1, l):
                assert bounds.ladder_exponent(l, r) <= (3 * l) ** (r - 1)
                for d in range(1, bounds.d_max(l) + 1):
                    chk = bounds.lemma1_check(l, d, r)
                    if not chk.ok:
                        failed.append(chk.report())
        assert not failed, "\n".join(failed[:3])


def test_criterion_5_main_chains(criterion):
    with criterion(5, "main-proof chains for l = 2, 3, 4 with no inconclusive verdicts", 60.0):
        checks = [
            fn(l)
            for l in (2, 3, 4)
            for fn in (
                bounds.case1_check,
                bounds.exponent_chain_check,
                bounds.twoL_chain_check,
                bounds.final_chain_check,
            )
        ]
        inconclusive = [k.describe() for c in checks for k in c.links if k.error]
        assert not inconclusive, inconclusive
        failed = [c.report() for c in checks if not c.ok]
        assert not failed, "\n".join(failed)


@pytest.fixture(scope="module")
def fuzz_run():
    cfg = TrialConfig(master_seed=2024, trials=500, max_deg_g=8, max_deg_h=8, max_terms_h=4, coeff_bound=10)
    start = time.perf_counter()
    records = list(run_trials(cfg))
    return records, time.perf_counter() - start


def test_criterion_6_round_trip(criterion, fuzz_run):
    with criterion(6, "decomposition round trip on 500 random pairs, deg <= 8, coeff 10", 60.0) as c:
        records, elapsed = fuzz_run
        c.start -= elapsed  # the shared run counts toward this criterion
        assert len(records) >= 500
        errors = [r for r in records if r.error]
        assert not errors, errors[:3]
        assert all(r.decomposition_recovered for r in records)


def test_criterion_7_series(criterion):
    with criterion(7, "pow_frac root and inverse identities on 200 random draws", 30.0):
        assert pow_frac(parse_poly("1+2*y+y^2", var="y"), 1, 2, 12) == poly_to_series(parse_poly("1+y", var="y"), 1, 12)
        rng = random.Random(7)
        for _ in range(200):
            exps = rng.sample(range(1, 8), rng.randint(1, 3))
            delta = SparsePoly({0: 1, **{e: Fraction(rng.choice((-1, 1)) * rng.randint(1, 9), rng.randint(1, 5)) for e in exps}})
            s = rng.randint(-6, 6)
            d = rng.randint(1, 6)
            T = rng.randint(1, 16)
            u = pow_frac(delta, s, d, T)
            base = poly_to_series(delta, 1, T)
            one = TruncSeries.one(1, T)
            if s >= 0:
                assert u.pow_int(d) == base.pow_int(s)
            else:
                assert u.pow_int(d) * base.pow_int(-s) == one
            assert u * pow_frac(delta, -s, d, T) == one


def test_criterion_8_structural_membership(criterion):
    with criterion(8, "structural membership on 100 instances with l <= 3; worked instance", 120.0):
        c = Fraction(5, 3)
        worked = Instance.from_pair(parse_poly("x^2"), parse_poly("x^3") + c)
        T = 2 * worked.n[-1]
        target = poly_to_series(tilde_transform(worked.h), 1, T)
        basis = puiseux_basis(worked.f, worked.d, T)
        assert basis[0] == target  # h~ = f~^(1/2)
        assert match_target(target, basis) == [1] + [0] * (len(basis) - 1)
        m = structural_match(worked)
        assert m.ok and combine(m.coefficients, [term_value(sh, worked.delta(1), worked.m, 2, T) for sh in m.shapes]) == target
        # with delta_1 = 1 + 2c y^3 the leading shape delta_1^(1/2) carries weight 1
        lead = [coef for sh, coef in zip(m.shapes, m.coefficients) if (sh.s, sh.h) == (1, (0,))]
        assert lead == [1]
        for seed in range(100):
            inst = gen_lacunary_instance(seed)
            assert inst.l <= 3 and not is_special_shape(inst.h)
            rec = evaluate_pair(inst.g, inst.h, seed=seed)
            assert rec.structural_match, (inst.g.to_text(), inst.h.to_text())


def test_criterion_9_degree_bound(criterion, fuzz_run):
    with criterion(9, "degree-bound probe: no applicable trial has d > 2l(l-1)", 60.0):
        records, _ = fuzz_run
        applicable = [r for r in records if r.deg_bound_applicable]
        assert applicable
        violations = [r for r in applicable if not r.deg_bound_ok]
        assert not violations, violations[:3]
