"""Iterated-exponential integers and an exact-or-error comparison engine.

A :class:`TowerInt` is an expression tree over positive integers built from
leaves, products, sums and powers.  Trees are compared by value, never by
shape.  :func:`tower_cmp` tries, in order:

1. exact evaluation, when both sides have at most ``exact_bits`` bits;
2. symbolic normal forms: both sides are expanded into sums of monomials
   over a pairwise coprime basis of their leaves, with exponents that are
   again such expressions; equal forms, or a difference whose coefficients
   all share a sign, decide the comparison;
3. exact exponent arithmetic: both sides are rewritten as products of powers
   of a pairwise coprime integer basis (factor refinement), which decides
   equality outright; the sign of ``sum (E_a - E_b) * log2(q)`` is then fixed
   exactly when a single base remains, and by outward-rounded interval
   arithmetic otherwise;
4. certified enclosures of iterated logarithms ``log2(log2(...))``, starting at
   the lowest level where both sides fit in a floating-point exponent and
   escalating one level at a time.

If no route can decide, :class:`TowerCompareInconclusive` is raised; verdicts
are never approximate.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

import mpmath
from mpmath.ctx_iv import MPIntervalContext

EXACT_BITS = 1 << 20
MAX_PREC = 1 << 14
EXP_BITS_CAP = 4096
MAX_LEVEL = 4


class TowerCompareInconclusive(ArithmeticError):
    def __init__(self, a: "TowerInt", b: "TowerInt"):
        super().__init__(f"cannot order {a.render()} and {b.render()} within the refinement cap")
        self.a, self.b = a, b


class Cmp(enum.IntEnum):
    LESS = -1
    EQUAL = 0
    GREATER = 1


TowerLike = Union["TowerInt", int]


class TowerInt:
    """Base of the expression tree; use :func:`tower` / operators to build."""

    __slots__ = ()

    def __mul__(self, other: TowerLike) -> "TowerInt":
        return Prod((self, tower(other)))

    def __rmul__(self, other: TowerLike) -> "TowerInt":
        return Prod((tower(other), self))

    def __add__(self, other: TowerLike) -> "TowerInt":
        return Sum((self, tower(other)))

    def __radd__(self, other: TowerLike) -> "TowerInt":
        return Sum((tower(other), self))

    def __pow__(self, other: TowerLike) -> "TowerInt":
        return Pow(self, tower(other))

    def __rpow__(self, other: TowerLike) -> "TowerInt":
        return Pow(tower(other), self)

    def __str__(self) -> str:
        return self.render()

    # value-based comparisons
    def __lt__(self, other):
        return tower_cmp(self, other) is Cmp.LESS

    def __le__(self, other):
        return tower_cmp(self, other) is not Cmp.GREATER

    def __gt__(self, other):
        return tower_cmp(self, other) is Cmp.GREATER

    def __ge__(self, other):
        return tower_cmp(self, other) is not Cmp.LESS

    def evaluate(self, max_bits: int = EXACT_BITS) -> int:
        """Exact value; refuses when the estimated size exceeds ``max_bits``."""
        if _estimate(self).l1 > max_bits + 64:
            raise OverflowError(f"{self.render()} has more than {max_bits} bits")
        return self._eval()


@dataclass(frozen=True)
class Leaf(TowerInt):
    value: int

    def __post_init__(self):
        if not isinstance(self.value, int) or self.value < 1:
            raise ValueError("tower leaves must be integers >= 1")

    def _eval(self) -> int:
        return self.value

    def render(self) -> str:
        return str(self.value)


@dataclass(frozen=True)
class Prod(TowerInt):
    factors: tuple[TowerInt, ...]

    def _eval(self) -> int:
        out = 1
        for f in self.factors:
            out *= f._eval()
        return out

    def render(self) -> str:
        return "*".join(f"({f.render()})" if isinstance(f, Sum) else f.render() for f in self.factors)


@dataclass(frozen=True)
class Sum(TowerInt):
    terms: tuple[TowerInt, ...]

    def _eval(self) -> int:
        return sum(t._eval() for t in self.terms)

    def render(self) -> str:
        return "+".join(t.render() for t in self.terms)


@dataclass(frozen=True)
class Pow(TowerInt):
    base: TowerInt
    exp: TowerInt

    def _eval(self) -> int:
        return self.base._eval() ** self.exp._eval()

    def render(self) -> str:
        b = self.base.render() if isinstance(self.base, Leaf) else f"({self.base.render()})"
        e = self.exp.render() if isinstance(self.exp, Leaf) else f"({self.exp.render()})"
        return f"{b}^{e}"


def tower(x: TowerLike) -> TowerInt:
    if isinstance(x, TowerInt):
        return x
    if isinstance(x, bool) or not isinstance(x, int):
        raise TypeError(f"cannot build a tower from {x!r}")
    return Leaf(x)


def prod(*xs: TowerLike) -> TowerInt:
    return Prod(tuple(tower(x) for x in xs))


def tsum(*xs: TowerLike) -> TowerInt:
    return Sum(tuple(tower(x) for x in xs))


def power(b: TowerLike, e: TowerLike) -> TowerInt:
    return Pow(tower(b), tower(e))


# -- size estimates ---------------------------------------------------------------


@dataclass(frozen=True)
class _Est:
    # float estimates of log2(t), log2(log2(t)), log2(log2(log2(t))); -inf when undefined
    l1: float
    l2: float
    l3: float


_NEG = float("-inf")
_INF = float("inf")


def _lg(x: float) -> float:
    if x <= 0:
        return _NEG
    if x == _INF:
        return _INF
    return math.log2(x)


def _exp2(x: float) -> float:
    if x > 1000:
        return _INF
    return 2.0**x


def _from_l2(l2: float) -> _Est:
    return _Est(_exp2(l2), l2, _lg(l2))


def _estimate(t: TowerInt) -> _Est:
    if isinstance(t, Leaf):
        l1 = math.log2(t.value)
        l2 = _lg(l1)
        return _Est(l1, l2, _lg(l2))
    if isinstance(t, Pow):
        eb, ee = _estimate(t.base), _estimate(t.exp)
        if eb.l1 == 0:
            return _Est(0.0, _NEG, _NEG)
        if ee.l1 < _INF:
            l2 = ee.l1 + eb.l2
            if l2 < _INF:
                return _from_l2(l2)
        l3 = max(ee.l2, eb.l3) + 1
        return _Est(_INF, _INF, l3)
    kids = [_estimate(c) for c in (t.factors if isinstance(t, Prod) else t.terms)]
    n = len(kids)
    if isinstance(t, Prod):
        l1 = sum(k.l1 for k in kids)
    else:
        l1 = max(k.l1 for k in kids) + math.log2(n)
    if l1 < _INF:
        l2 = _lg(l1)
        return _Est(l1, l2, _lg(l2))
    l2 = max(k.l2 for k in kids) + math.log2(n)
    if l2 < _INF:
        return _Est(_INF, l2, _lg(l2))
    return _Est(_INF, _INF, max(k.l3 for k in kids) + 1)


def bit_estimate(t: TowerLike) -> float:
    """Approximate log2 of the value (inf when it does not fit a float)."""
    return _estimate(tower(t)).l1


# -- route 2: products of powers over a coprime basis --------------------------------


def _power_product(t: TowerInt, cap: int) -> dict[int, int] | None:
    if isinstance(t, Leaf):
        return {} if t.value == 1 else {t.value: 1}
    if isinstance(t, Prod):
        out: dict[int, int] = {}
        for f in t.factors:
            m = _power_product(f, cap)
            if m is None:
                return None
            for k, v in m.items():
                out[k] = out.get(k, 0) + v
        return out
    if isinstance(t, Pow):
        if _estimate(t.exp).l1 > cap:
            return None
        e = t.exp._eval()
        m = _power_product(t.base, cap)
        if m is None:
            return None
        return {k: v * e for k, v in m.items()}
    if _estimate(t).l1 > cap:
        return None
    v = t._eval()
    return {} if v == 1 else {v: 1}


def _coprime_basis(values: list[int]) -> list[int]:
    basis = sorted(set(v for v in values if v > 1))
    changed = True
    while changed:
        changed = False
        for i in range(len(basis)):
            for j in range(i + 1, len(basis)):
                g = math.gcd(basis[i], basis[j])
                if g > 1:
                    a, b = basis[i], basis[j]
                    rest = [x for k, x in enumerate(basis) if k not in (i, j)]
                    basis = sorted(set(rest + [x for x in (a // g, b // g, g) if x > 1]))
                    changed = True
                    break
            if changed:
                break
    return sorted(set(_perfect_power_root(q) for q in basis))


def _iroot(q: int, j: int) -> int:
    # floor(q^(1/j)) by integer Newton iteration
    x = 1 << -(-q.bit_length() // j)
    while True:
        y = ((j - 1) * x + q // x ** (j - 1)) // j
        if y >= x:
            return x
        x = y


def _perfect_power_root(q: int) -> int:
    # smallest r with q = r^j; roots of pairwise coprime numbers stay coprime.
    # Large values (evaluated sums) are left alone: uniqueness does not need it.
    if q.bit_length() > 512:
        return q
    for j in range(q.bit_length(), 1, -1):
        r = _iroot(q, j)
        if r > 1 and r**j == q:
            return _perfect_power_root(r)
    return q


def _express(m: dict[int, int], basis: list[int]) -> dict[int, int] | None:
    out: dict[int, int] = {}
    for v, e in m.items():
        for q in basis:
            k = 0
            while v % q == 0:
                v //= q
                k += 1
            if k:
                out[q] = out.get(q, 0) + k * e
        if v != 1:
            return None
    return {q: e for q, e in out.items() if e}


def power_product_form(t: TowerLike, cap: int = EXACT_BITS) -> dict[int, int] | None:
    """{q: E} over a pairwise coprime basis with value = prod q^E, or None."""
    m = _power_product(tower(t), cap)
    if m is None:
        return None
    return _express(m, _coprime_basis(list(m)))


def pow2_exponent(t: TowerLike, cap: int = EXACT_BITS) -> int | None:
    """E when the value is exactly 2^E (E computed exactly), else None."""
    form = power_product_form(t, cap)
    if form is None:
        return None
    if not form:
        return 0
    if set(form) == {2}:
        return form[2]
    return None


def _new_ctx(prec: int) -> MPIntervalContext:
    ctx = MPIntervalContext()
    ctx._mp = mpmath.mp
    ctx._iv = ctx
    ctx.prec = prec
    return ctx


def _sign_of_log_combination(delta: dict[int, int], max_prec: int) -> int | None:
    nz = {q: e for q, e in delta.items() if e}
    if not nz:
        return 0
    signs = {1 if e > 0 else -1 for e in nz.values()}
    if len(signs) == 1:
        return signs.pop()
    bits = max(abs(e).bit_length() for e in nz.values())
    prec = 64
    while prec <= max(max_prec, 2 * bits + 64):
        ctx = _new_ctx(prec)
        total = ctx.mpf(0)
        for q, e in nz.items():
            total = total + ctx.mpf(e) * ctx.log(ctx.mpf(q))
        if total.a > 0:
            return 1
        if total.b < 0:
            return -1
        prec *= 2
    return None


def _cmp_power_products(a: TowerInt, b: TowerInt, cap: int, max_prec: int) -> Cmp | None:
    ma = _power_product(a, cap)
    mb = _power_product(b, cap)
    if ma is None or mb is None:
        return None
    basis = _coprime_basis(list(ma) + list(mb))
    fa, fb = _express(ma, basis), _express(mb, basis)
    if fa is None or fb is None:
        return None
    delta = {q: fa.get(q, 0) - fb.get(q, 0) for q in set(fa) | set(fb)}
    s = _sign_of_log_combination(delta, max_prec)
    return None if s is None else Cmp(s)


# -- route 2b: symbolic normal forms ----------------------------------------------------
#
# A value is written as a sum of c * prod q^E over the coprime basis of all
# leaves, where every exponent E is again such an expression.  Subexpressions
# that evaluate to at most _SYM_INT_BITS bits are collapsed to integers and
# refactored over the basis, so small values always get the same form.  Equal
# forms prove equality; a difference whose coefficients share a sign proves
# the strict order, because every monomial is positive.


_SYM_INT_BITS = 4096
_SYM_MAX_TERMS = 256


class _SymTooBig(Exception):
    pass


def _freeze(expr: dict) -> tuple:
    return tuple(sorted(expr.items()))


class _Sym:
    def __init__(self, basis: list[int]):
        self.basis = basis

    def const(self, k: int) -> dict:
        if k == 0:
            return {}
        sign, k = (-1 if k < 0 else 1), abs(k)
        mono = []
        for q in self.basis:
            v = 0
            while k % q == 0:
                k //= q
                v += 1
            if v:
                mono.append((q, _freeze(self.const(v))))
        return {tuple(mono): sign * k}

    def as_int(self, expr, budget: int = _SYM_INT_BITS) -> int | None:
        if isinstance(expr, tuple):
            expr = dict(expr)
        total = 0
        for mono, c in expr.items():
            v = c
            for q, e in mono:
                k = self.as_int(e, budget)
                if k is None or k * q.bit_length() > budget:
                    return None
                v *= q**k
            if v.bit_length() > budget:
                return None
            total += v
        return total

    def canon(self, expr: dict) -> dict:
        v = self.as_int(expr)
        if v is not None:
            return self.const(v)
        while True:
            out: dict = {}
            moved = False
            for mono, c in expr.items():
                (cmono, c2), = self.const(c).items()
                if cmono:
                    mono = self.mul_mono(mono, cmono)
                    moved = True
                out[mono] = out.get(mono, 0) + c2
            out = {m: c for m, c in out.items() if c}
            if len(out) > _SYM_MAX_TERMS:
                raise _SymTooBig
            merged = self._merge_close(out)
            if merged is not None:
                out, moved = merged, True
            if not moved:
                return out
            expr = out

    def _offsets(self, m1: tuple, m2: tuple) -> dict[int, int] | None:
        # {q: E1_q - E2_q} when every difference is a small integer
        e1, e2 = dict(m1), dict(m2)
        out = {}
        bits = 0
        for q in set(e1) | set(e2):
            a, b = dict(e1.get(q, ())), dict(e2.get(q, ()))
            if a == b:
                continue
            diff = self.add(a, self.mul(self.const(-1), b))
            k = self.as_int(diff, 64)
            if k is None:
                return None
            bits += abs(k) * q.bit_length()
            if bits > _SYM_INT_BITS:
                return None
            out[q] = k
        return out

    def _merge_close(self, expr: dict) -> dict | None:
        # combine two terms whose monomials differ by a small integer factor
        items = list(expr.items())
        for i in range(len(items)):
            for j in range(i + 1, len(items)):
                (m1, c1), (m2, c2) = items[i], items[j]
                off = self._offsets(m1, m2)
                if off is None:
                    continue
                # base monomial: the componentwise minimum of the two
                lower = {q: -max(0, k) for q, k in off.items()}
                base = self.mul_mono(m1, self._int_mono(lower))
                v1 = c1
                v2 = c2
                for q, k in off.items():
                    v1 *= q ** max(0, k)
                    v2 *= q ** max(0, -k)
                rest = {m: c for k_, (m, c) in enumerate(items) if k_ not in (i, j)}
                rest[base] = rest.get(base, 0) + v1 + v2
                return {m: c for m, c in rest.items() if c}
        return None

    def _int_mono(self, exps: dict[int, int]) -> tuple:
        return tuple(sorted((q, _freeze(self.const(k))) for q, k in exps.items() if k))

    def mul_mono(self, m1: tuple, m2: tuple) -> tuple:
        exps = {q: dict(e) for q, e in m1}
        for q, e in m2:
            exps[q] = self.add(exps[q], dict(e)) if q in exps else dict(e)
        return tuple(sorted((q, _freeze(e)) for q, e in exps.items() if e))

    def add(self, a: dict, b: dict) -> dict:
        out = dict(a)
        for m, c in b.items():
            out[m] = out.get(m, 0) + c
        return self.canon({m: c for m, c in out.items() if c})

    def mul(self, a: dict, b: dict) -> dict:
        if len(a) * len(b) > _SYM_MAX_TERMS:
            raise _SymTooBig
        out: dict = {}
        for m1, c1 in a.items():
            for m2, c2 in b.items():
                m = self.mul_mono(m1, m2)
                out[m] = out.get(m, 0) + c1 * c2
        return self.canon({m: c for m, c in out.items() if c})

    def pow(self, a: dict, e: dict) -> dict:
        k = self.as_int(e, 64)
        if k is not None and k <= 64 and len(a) > 1:
            out = self.const(1)
            for _ in range(k):
                out = self.mul(out, a)
            return out
        if len(a) != 1:
            raise _SymTooBig
        (mono, c), = a.items()
        if c != 1:
            if k is None:
                raise _SymTooBig
            return self.mul(self.const(c**k), self.pow({mono: 1}, e))
        new = tuple(sorted((q, _freeze(self.mul(dict(x), e))) for q, x in mono))
        return self.canon({new: 1})

    def of(self, t: TowerInt) -> dict:
        if isinstance(t, Leaf):
            return self.const(t.value)
        if isinstance(t, Prod):
            out = self.const(1)
            for f in t.factors:
                out = self.mul(out, self.of(f))
            return out
        if isinstance(t, Sum):
            out: dict = {}
            for x in t.terms:
                out = self.add(out, self.of(x))
            return out
        return self.pow(self.of(t.base), self.of(t.exp))


def _leaves(t: TowerInt, acc: set) -> set:
    if isinstance(t, Leaf):
        acc.add(t.value)
    else:
        for c in _children(t):
            _leaves(c, acc)
    return acc


def _children(t: TowerInt) -> tuple:
    if isinstance(t, Prod):
        return t.factors
    if isinstance(t, Sum):
        return t.terms
    if isinstance(t, Pow):
        return (t.base, t.exp)
    return ()


def _cmp_symbolic(a: TowerInt, b: TowerInt) -> Cmp | None:
    if a == b:
        return Cmp.EQUAL
    sym = _Sym(_coprime_basis(sorted(_leaves(a, set()) | _leaves(b, set()))))
    try:
        diff = sym.add(sym.of(a), sym.mul(sym.const(-1), sym.of(b)))
    except _SymTooBig:
        return None
    if not diff:
        return Cmp.EQUAL
    signs = {c > 0 for c in diff.values()}
    if signs == {True}:
        return Cmp.GREATER
    if signs == {False}:
        return Cmp.LESS
    return None


# -- route 3: certified iterated-log enclosures ---------------------------------------


class _Enclosure:
    """Interval enclosures of L_k(t) = log2^(k)(t) at a fixed working precision.

    ``None`` stands for L_k = -infinity (the value is too small for level k).
    """

    def __init__(self, prec: int):
        self.ctx = _new_ctx(prec)
        self.ln2 = self.ctx.log(2)
        self.floor = -4 * prec

    def lg(self, x):
        if x is None or x.b <= 0:
            return None
        return self.ctx.log(x) / self.ln2

    def _exp2_bounds(self, x):
        # 2^x as an interval, clamping very negative exponents
        ctx = self.ctx
        lo = ctx.mpf(0) if x.a < self.floor else ctx.exp(ctx.mpf(x.a) * self.ln2)
        hi = ctx.exp(ctx.mpf(self.floor) * self.ln2) if x.b < self.floor else ctx.exp(ctx.mpf(x.b) * self.ln2)
        return lo.a, hi.b

    def lse(self, xs):
        """Enclosure of log2(sum 2^x_i)."""
        xs = [x for x in xs if x is not None]
        if not xs:
            return None
        ctx = self.ctx
        m_lo = max(x.a for x in xs)
        m_hi = max(x.b for x in xs)
        lo_sum = ctx.mpf(0)
        hi_sum = ctx.mpf(0)
        for x in xs:
            lo_t, _ = self._exp2_bounds(ctx.mpf(x.a) - ctx.mpf(m_lo))
            _, hi_t = self._exp2_bounds(ctx.mpf(x.b) - ctx.mpf(m_hi))
            lo_sum += ctx.mpf(lo_t)
            hi_sum += ctx.mpf(hi_t)
        lo = ctx.mpf(m_lo) + ctx.log(lo_sum) / self.ln2
        hi = ctx.mpf(m_hi) + ctx.log(hi_sum) / self.ln2
        return ctx.mpf([lo.a, hi.b])

    def level(self, t: TowerInt, k: int):
        if k == 0:
            return self.l0(t)
        if k == 1:
            return self.l1(t)
        x = self.l2(t)
        for _ in range(k - 2):
            x = self.lg(x)
        return x

    def l0(self, t: TowerInt):
        ctx = self.ctx
        if isinstance(t, Leaf):
            return ctx.mpf(t.value)
        if isinstance(t, Prod):
            out = ctx.mpf(1)
            for f in t.factors:
                out = out * self.l0(f)
            return out
        if isinstance(t, Sum):
            out = ctx.mpf(0)
            for f in t.terms:
                out = out + self.l0(f)
            return out
        b = self.l0(t.base)
        e = self.l0(t.exp)
        return ctx.exp(ctx.log(b) * e)

    def l1(self, t: TowerInt):
        ctx = self.ctx
        if isinstance(t, Leaf):
            return ctx.log(ctx.mpf(t.value)) / self.ln2
        if isinstance(t, Prod):
            out = ctx.mpf(0)
            for f in t.factors:
                out = out + self.l1(f)
            return out
        if isinstance(t, Sum):
            return self.lse([self.l1(f) for f in t.terms])
        return self.l0(t.exp) * self.l1(t.base)

    def l2(self, t: TowerInt):
        ctx = self.ctx
        if isinstance(t, Leaf):
            return self.lg(self.lg(ctx.mpf(t.value)))
        if isinstance(t, Prod):
            return self.lse([self.l2(f) for f in t.factors])
        if isinstance(t, Sum):
            kids = [self.l2(f) for f in t.terms]
            kids = [x for x in kids if x is not None]
            if not kids:
                # every term is 1: the sum is the term count
                return self.lg(self.lg(ctx.mpf(len(t.terms))))
            # log2 of the sum lies in [max L1, max L1 + log2 n]
            m_lo = max(x.a for x in kids)
            m_hi = max(x.b for x in kids)
            extra = ctx.log(ctx.mpf(len(t.terms))) / self.ln2
            hi = self.lg(ctx.exp(ctx.mpf(m_hi) * self.ln2) + extra)
            return ctx.mpf([m_lo, hi.b])
        lb = self.l2(t.base)
        if lb is None:
            return None  # base is 1
        return self.l1(t.exp) + lb


def _min_level(t: TowerInt) -> int:
    # lowest k where L_k(t) fits: its floating exponent L_(k+1) has <= EXP_BITS_CAP bits
    est = _estimate(t)
    if est.l2 <= math.log2(EXP_BITS_CAP):
        return 0
    if est.l3 <= math.log2(EXP_BITS_CAP):
        return 1
    return 2


def _cmp_intervals(x, y) -> Cmp | None:
    if x is None and y is None:
        return None
    if x is None:
        return Cmp.LESS
    if y is None:
        return Cmp.GREATER
    if x.b < y.a:
        return Cmp.LESS
    if x.a > y.b:
        return Cmp.GREATER
    return None


def _cmp_nested_logs(a: TowerInt, b: TowerInt, max_prec: int) -> Cmp | None:
    start = max(_min_level(a), _min_level(b))
    for k in range(start, MAX_LEVEL + 1):
        prec = 64
        while prec <= max_prec:
            enc = _Enclosure(prec)
            try:
                verdict = _cmp_intervals(enc.level(a, k), enc.level(b, k))
            except (OverflowError, ValueError, ZeroDivisionError):
                verdict = None
            if verdict is not None:
                return verdict
            prec *= 4
    return None


def tower_cmp(
    a: TowerLike, b: TowerLike, *, exact_bits: int = EXACT_BITS, max_prec: int = MAX_PREC
) -> Cmp:
    """Exact ordering of two tower integers, or TowerCompareInconclusive."""
    a, b = tower(a), tower(b)
    if bit_estimate(a) <= exact_bits and bit_estimate(b) <= exact_bits:
        va, vb = a._eval(), b._eval()
        return Cmp((va > vb) - (va < vb))
    verdict = _cmp_symbolic(a, b)
    if verdict is None:
        verdict = _cmp_power_products(a, b, exact_bits, max_prec)
    if verdict is None:
        verdict = _cmp_nested_logs(a, b, max_prec)
    if verdict is None:
        raise TowerCompareInconclusive(a, b)
    return verdict


# -- decimal digits --------------------------------------------------------------------


_LOG10_2 = math.log10(2)


def _digits_exact(v: int) -> int:
    if v < 1:
        raise ValueError("digit count needs a positive integer")
    k = int((v.bit_length() - 1) * _LOG10_2)
    p = 10**k
    while p * 10 <= v:
        p *= 10
        k += 1
    while p > v:
        p //= 10
        k -= 1
    return k + 1


def digit_count(t: TowerLike, *, exact_bits: int = EXACT_BITS, max_prec: int = MAX_PREC) -> int:
    """Number of decimal digits, exactly.

    Works for exactly evaluable towers and for ``base^exp`` with both parts
    evaluable, via floor(exp * log10(base)) + 1 on certified intervals.
    """
    t = tower(t)
    if bit_estimate(t) <= exact_bits:
        return _digits_exact(t._eval())
    if not isinstance(t, Pow) or bit_estimate(t.exp) > exact_bits or bit_estimate(t.base) > exact_bits:
        raise ValueError(f"digit count not supported for {t.render()}")
    base, e = t.base._eval(), t.exp._eval()
    j, rest = 0, base
    while rest % 10 == 0:
        rest //= 10
        j += 1
    if rest == 1:
        return j * e + 1
    prec = e.bit_length() + 64
    while prec <= max(max_prec, e.bit_length() + 64):
        ctx = _new_ctx(prec)
        x = ctx.mpf(e) * ctx.log(ctx.mpf(base)) / ctx.log(ctx.mpf(10))
        lo, hi = int(mpmath.floor(x.a)), int(mpmath.floor(x.b))
        if lo == hi:
            return lo + 1
        prec *= 2
    raise TowerCompareInconclusive(t, Leaf(10))


def log2_fraction(t: TowerLike) -> Fraction | None:
    """log2 of the value as an exact rational when it is a power of two."""
    e = pow2_exponent(t)
    return None if e is None else Fraction(e)
