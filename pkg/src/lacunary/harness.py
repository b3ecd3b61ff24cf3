"""Random instances, end-to-end trial runs and the aggregated verification run.

Every trial draws (g, h) from its own seed, derived from the master seed and
the trial index by the SplitMix64 finalizer, so a run is reproducible trial by
trial and independent of execution order.
"""

from __future__ import annotations

import json
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, fields
from fractions import Fraction
from typing import IO, Iterable, Iterator

from . import bounds
from .decompose import decompose_at_degree, normalize_pair
from .series import structural_match
from .sparse_poly import Instance, SparsePoly
from .towers import Cmp, TowerCompareInconclusive, digit_count, power, tower_cmp

_MASK64 = (1 << 64) - 1


def splitmix64(x: int) -> int:
    """One SplitMix64 step: add the golden-ratio increment, then the finalizer."""
    z = (x + 0x9E3779B97F4A7C15) & _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return z ^ (z >> 31)


def trial_seed(master_seed: int, trial_index: int) -> int:
    return splitmix64(splitmix64(master_seed & _MASK64) ^ (trial_index & _MASK64))


@dataclass(frozen=True)
class TrialConfig:
    master_seed: int = 0
    trials: int = 100
    max_deg_g: int = 4
    max_deg_h: int = 4
    max_terms_h: int = 3
    coeff_bound: int = 10

    def __post_init__(self):
        caps = (self.max_deg_g, self.max_deg_h, self.max_terms_h, self.coeff_bound)
        if min(caps) < 1:
            raise ValueError("all caps must be >= 1")
        if self.trials < 1:
            raise ValueError("trials must be >= 1")


@dataclass(frozen=True)
class TrialRecord:
    trial_index: int
    seed: int
    g: str
    h: str
    f: str
    l: int
    d: int
    deg_bound_applicable: bool
    deg_bound_ok: bool
    decomposition_recovered: bool
    structural_match: bool
    terms_h: int
    b1_satisfied: bool
    error: str | None = None

    def to_json(self) -> str:
        return json.dumps(asdict(self), separators=(",", ":"))

    @classmethod
    def from_json(cls, line: str) -> "TrialRecord":
        data = json.loads(line)
        names = {f.name for f in fields(cls)}
        return cls(**{k: v for k, v in data.items() if k in names})


# -- instance generation -----------------------------------------------------------


def _rational(rng: random.Random, bound: int) -> Fraction:
    num = rng.randint(1, bound) * rng.choice((-1, 1))
    return Fraction(num, rng.randint(1, bound))


def gen_pair(seed: int, cfg: TrialConfig) -> tuple[SparsePoly, SparsePoly]:
    """(g, h) with h monic, h(0) = 0, deg h >= 2, and g(0) != 0, deg g >= 2."""
    rng = random.Random(seed)
    deg_h = rng.randint(2, max(2, cfg.max_deg_h))
    n_terms = rng.randint(1, min(cfg.max_terms_h, deg_h))
    lower = rng.sample(range(1, deg_h), n_terms - 1)
    h = SparsePoly({deg_h: 1, **{e: _rational(rng, cfg.coeff_bound) for e in lower}})
    deg_g = rng.randint(2, max(2, cfg.max_deg_g))
    coeffs = {deg_g: _rational(rng, cfg.coeff_bound), 0: _rational(rng, cfg.coeff_bound)}
    for e in range(1, deg_g):
        if rng.random() < 2 / 3:
            coeffs[e] = _rational(rng, cfg.coeff_bound)
    return SparsePoly(coeffs), h


def gen_instance(seed: int, cfg: TrialConfig) -> Instance:
    g, h = gen_pair(seed, cfg)
    return Instance.from_pair(g, h)


def gen_lacunary_instance(seed: int, coeff_bound: int = 10, max_exp: int = 12) -> Instance:
    """An instance with l <= 3 whose h has two terms (so is not a x^m + b).

    Two families, chosen by the seed:
    g = x^2 + c0 with h = x^A + c x^B, giving f = x^2A + 2c x^(A+B) + c^2 x^2B + c0;
    g = x^2 - c^2 x + c0 with h = x^2b + c x^b, where the x^2b terms cancel.
    """
    rng = random.Random(seed)
    c = _rational(rng, coeff_bound)
    c0 = _rational(rng, coeff_bound)
    if rng.random() < 0.5:
        A = rng.randint(2, max_exp)
        B = rng.randint(1, A - 1)
        g = SparsePoly({2: 1, 0: c0})
        h = SparsePoly({A: 1, B: c})
    else:
        b = rng.randint(1, max_exp // 2)
        g = SparsePoly({2: 1, 1: -c * c, 0: c0})
        h = SparsePoly({2 * b: 1, b: c})
    return Instance.from_pair(g, h)


# -- trials ---------------------------------------------------------------------------


def is_special_shape(h: SparsePoly) -> bool:
    """h = a x^m + b: at most two terms, exactly one of positive degree."""
    return len(h) <= 2 and sum(1 for e in h.exponents() if e > 0) == 1


def evaluate_pair(g: SparsePoly, h: SparsePoly, trial_index: int = 0, seed: int = 0) -> TrialRecord:
    """Run every per-trial check on f = g(h) and collect the outcome."""
    inst = Instance.from_pair(g, h)
    l, d = inst.l, inst.d
    applicable = not is_special_shape(h)
    g_norm, h_norm = normalize_pair(g, h)
    dec = decompose_at_degree(inst.f, d)
    recovered = dec is not None and dec.g == g_norm and dec.h == h_norm
    sm = structural_match(inst).ok
    terms_h = len(h)
    b1_ok = tower_cmp(terms_h, bounds.B1(l)) is not Cmp.GREATER
    return TrialRecord(
        trial_index=trial_index,
        seed=seed,
        g=g.to_text(),
        h=h.to_text(),
        f=inst.f.to_text(),
        l=l,
        d=d,
        deg_bound_applicable=applicable,
        deg_bound_ok=(not applicable) or d <= bounds.d_max(l),
        decomposition_recovered=recovered,
        structural_match=sm,
        terms_h=terms_h,
        b1_satisfied=b1_ok,
    )


def run_trial(cfg: TrialConfig, trial_index: int) -> TrialRecord:
    seed = trial_seed(cfg.master_seed, trial_index)
    g = h = None
    try:
        g, h = gen_pair(seed, cfg)
        return evaluate_pair(g, h, trial_index, seed)
    except Exception as exc:  # recorded, never fatal to the run
        return TrialRecord(
            trial_index=trial_index,
            seed=seed,
            g=g.to_text() if g is not None else "",
            h=h.to_text() if h is not None else "",
            f="",
            l=0,
            d=0,
            deg_bound_applicable=False,
            deg_bound_ok=False,
            decomposition_recovered=False,
            structural_match=False,
            terms_h=0,
            b1_satisfied=False,
            error=f"{type(exc).__name__}: {exc}",
        )


def _run_one(args: tuple[TrialConfig, int]) -> TrialRecord:
    return run_trial(*args)


def run_trials(cfg: TrialConfig, workers: int = 1) -> Iterator[TrialRecord]:
    """Yield one record per trial in trial_index order, whatever the worker count."""
    jobs = ((cfg, i) for i in range(cfg.trials))
    if workers <= 1:
        yield from map(_run_one, jobs)
        return
    with ProcessPoolExecutor(max_workers=workers) as pool:
        yield from pool.map(_run_one, jobs, chunksize=8)


def write_jsonl(records: Iterable[TrialRecord], out: IO[str]) -> int:
    count = 0
    for rec in records:
        out.write(rec.to_json() + "\n")
        count += 1
    return count


# -- aggregated verification --------------------------------------------------------------


@dataclass(frozen=True)
class CheckOutcome:
    name: str
    ok: bool
    detail: str = ""


@dataclass
class VerifySummary:
    l_max: int
    outcomes: list[CheckOutcome]

    @property
    def ok(self) -> bool:
        return all(o.ok for o in self.outcomes)

    @property
    def failures(self) -> list[CheckOutcome]:
        return [o for o in self.outcomes if not o.ok]

    def report(self) -> str:
        lines = [f"{'PASS' if o.ok else 'FAIL'}  {o.name}" for o in self.outcomes]
        for o in self.failures:
            if o.detail:
                lines.append("")
                lines.append(o.detail)
        passed = sum(o.ok for o in self.outcomes)
        lines.append(f"{passed}/{len(self.outcomes)} checks passed")
        return "\n".join(lines)


def _chain_outcome(chk: bounds.ChainCheck, name: str | None = None) -> CheckOutcome:
    return CheckOutcome(name or f"{chk.name}(l={chk.l})", chk.ok, "" if chk.ok else chk.report())


def verify_all(l_max: int) -> VerifySummary:
    """Every bounds check for l in {2, ..., l_max}, the l = 2 pipeline, and the tower/digit checks."""
    if l_max < 2:
        raise ValueError("l_max must be >= 2")
    out: list[CheckOutcome] = []
    for l in range(2, l_max + 1):
        failed = [
            c for d in range(1, bounds.d_max(l) + 1) for r in range(1, l)
            if not (c := bounds.lemma1_check(l, d, r))
        ]
        out.append(CheckOutcome(
            f"lemma1(l={l}, all d <= {bounds.d_max(l)}, r <= {l - 1})",
            not failed,
            "\n".join(c.report() for c in failed[:3]),
        ))
        out.append(_chain_outcome(bounds.case1_check(l)))
        out.append(_chain_outcome(bounds.exponent_chain_check(l)))
        out.append(_chain_outcome(bounds.twoL_chain_check(l)))
        out.append(_chain_outcome(bounds.final_chain_check(l)))
    rep = bounds.l2_pipeline()
    out.append(CheckOutcome(
        "l2_pipeline",
        rep.ok,
        "\n".join(f"  [{'ok' if ok else 'FAIL'}] {n}" for n, ok in rep.checks),
    ))
    ident = bounds.b1_identity(2)
    out.append(CheckOutcome(
        "B1(2) = 2^(3*2^432)",
        ident.pow2_exponent == 3 * 2**432,
        f"  pow2 exponent of B1(2): {ident.pow2_exponent}",
    ))
    out.append(_chain_outcome(bounds.closing_remark_check(), "2^(3*2^432) > 10^(2^431), digits(2^431) = 130"))
    try:
        inc = all(tower_cmp(bounds.B1(l), bounds.B1(l + 1)) is Cmp.LESS for l in range(1, l_max + 1))
        detail = ""
    except TowerCompareInconclusive as exc:
        inc, detail = False, str(exc)
    out.append(CheckOutcome(f"B1 increasing on 1..{l_max + 1}", inc, detail))
    out.append(CheckOutcome("digit_count(2^431) = 130", digit_count(power(2, 431)) == 130))
    return VerifySummary(l_max, out)
