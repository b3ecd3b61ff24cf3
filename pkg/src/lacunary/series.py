"""Truncated series in y with exponents in (1/ram)Z>=0.

Houses the fractional powers ``delta^(s/d)``, the summands of the expansion of
``h~`` (``c * delta_p^(s/d - k) * y^(...)``), the Puiseux basis at infinity and
exact linear-dependence detection over Q.

A :class:`TruncSeries` stores integer keys ``k`` standing for ``y^(k/ram)``;
every key is ``< trunc``, i.e. the series is known modulo ``y^(trunc/ram)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

from . import linalg
from .sparse_poly import Instance, SparsePoly, normalize_f, tilde_transform


class TruncSeries:
    __slots__ = ("ram", "trunc", "_coeffs")

    def __init__(self, ram: int, trunc: int, coeffs: Mapping[int, object] = ()):
        if ram < 1 or trunc < 0:
            raise ValueError("ram must be >= 1 and trunc >= 0")
        self.ram = ram
        self.trunc = trunc
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        c: dict[int, Fraction] = {}
        for k, v in items:
            if k < 0:
                raise ValueError("negative series exponent")
            if k < trunc:
                v = Fraction(v)
                if v:
                    c[k] = c.get(k, 0) + v
        self._coeffs = {k: c[k] for k in sorted(c) if c[k] != 0}

    @classmethod
    def one(cls, ram: int, trunc: int) -> "TruncSeries":
        return cls(ram, trunc, {0: 1})

    @property
    def coeffs(self) -> dict[int, Fraction]:
        return dict(self._coeffs)

    def get(self, k: int) -> Fraction:
        return self._coeffs.get(k, Fraction(0))

    def items(self):
        return self._coeffs.items()

    def is_zero(self) -> bool:
        return not self._coeffs

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruncSeries):
            return NotImplemented
        return (self.ram, self.trunc, self._coeffs) == (other.ram, other.trunc, other._coeffs)

    def __hash__(self):
        return hash((self.ram, self.trunc, tuple(self._coeffs.items())))

    def __repr__(self) -> str:
        return f"TruncSeries({self.to_text()})"

    def to_text(self, var: str = "y") -> str:
        def mono(k: int) -> str:
            e = Fraction(k, self.ram)
            if e == 1:
                return var
            return f"{var}^{e}" if e.denominator == 1 else f"{var}^({e})"

        parts = []
        for k, c in self._coeffs.items():
            if k == 0:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono(k))
            else:
                parts.append(f"{c}*{mono(k)}")
        body = " + ".join(parts) if parts else "0"
        return f"{body} + O({mono(self.trunc) if self.trunc else '1'})".replace("+ -", "- ")

    # -- alignment ------------------------------------------------------------

    def rescale(self, ram: int) -> "TruncSeries":
        if ram % self.ram:
            raise ValueError("target ramification must be a multiple of the current one")
        f = ram // self.ram
        return TruncSeries(ram, self.trunc * f, {k * f: c for k, c in self._coeffs.items()})

    def truncate(self, trunc: int) -> "TruncSeries":
        if trunc > self.trunc:
            raise ValueError("cannot raise the truncation of a truncated series")
        return TruncSeries(self.ram, trunc, self._coeffs)

    # -- arithmetic -----------------------------------------------------------

    def _align(self, other: "TruncSeries") -> tuple["TruncSeries", "TruncSeries"]:
        a, b = align([self, other])
        return a, b

    def __add__(self, other: "TruncSeries") -> "TruncSeries":
        a, b = self._align(other)
        out = dict(a._coeffs)
        for k, c in b._coeffs.items():
            out[k] = out.get(k, 0) + c
        return TruncSeries(a.ram, a.trunc, out)

    def __neg__(self) -> "TruncSeries":
        return TruncSeries(self.ram, self.trunc, {k: -c for k, c in self._coeffs.items()})

    def __sub__(self, other: "TruncSeries") -> "TruncSeries":
        return self + (-other)

    def scale(self, c) -> "TruncSeries":
        c = Fraction(c)
        return TruncSeries(self.ram, self.trunc, {k: c * v for k, v in self._coeffs.items()})

    def __mul__(self, other: "TruncSeries") -> "TruncSeries":
        a, b = self._align(other)
        t = a.trunc
        out: dict[int, Fraction] = {}
        bi = list(b._coeffs.items())
        for ka, ca in a._coeffs.items():
            for kb, cb in bi:
                k = ka + kb
                if k >= t:
                    break
                out[k] = out.get(k, 0) + ca * cb
        return TruncSeries(a.ram, t, out)

    def shift(self, k_num: int) -> "TruncSeries":
        """Multiply by y^(k_num/ram); the truncation window is unchanged."""
        return TruncSeries(self.ram, self.trunc, {k + k_num: c for k, c in self._coeffs.items()})

    def pow_int(self, k: int) -> "TruncSeries":
        if k < 0:
            raise ValueError("use pow_frac for negative powers")
        result = TruncSeries.one(self.ram, self.trunc)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result


def align(series: Sequence[TruncSeries]) -> list[TruncSeries]:
    """Rescale to the lcm ramification and cut to the smallest common window."""
    ram = math.lcm(*(s.ram for s in series))
    scaled = [s.rescale(ram) for s in series]
    trunc = min(s.trunc for s in scaled)
    return [s if s.trunc == trunc else s.truncate(trunc) for s in scaled]


def congruent(a: TruncSeries, b: TruncSeries) -> bool:
    x, y = align([a, b])
    return x == y


def poly_to_series(p: SparsePoly, ram: int, trunc: int) -> TruncSeries:
    return TruncSeries(ram, trunc, {e * ram: c for e, c in p.items() if e * ram < trunc})


# -- fractional powers ---------------------------------------------------------


def _binomial_coeffs(alpha: Fraction, count: int) -> list[Fraction]:
    out = [Fraction(1)]
    for j in range(1, count):
        out.append(out[-1] * (alpha - j + 1) / j)
    return out


def _root_binomial(delta: SparsePoly, alpha: Fraction, top: int) -> dict[int, Fraction]:
    # sum_j C(alpha, j) (delta - 1)^j, all exponents <= top
    u = [(e, c) for e, c in delta.items() if e > 0]
    out: dict[int, Fraction] = {0: Fraction(1)}
    if not u or alpha == 0:
        return out
    nu = min(e for e, _ in u)
    jmax = top // nu
    binom = _binomial_coeffs(alpha, jmax + 1)
    power: dict[int, Fraction] = {0: Fraction(1)}
    for j in range(1, jmax + 1):
        nxt: dict[int, Fraction] = {}
        for e1, c1 in power.items():
            for e2, c2 in u:
                e = e1 + e2
                if e <= top:
                    nxt[e] = nxt.get(e, 0) + c1 * c2
        power = {e: c for e, c in nxt.items() if c}
        if not power:
            break
        bj = binom[j]
        if bj:
            for e, c in power.items():
                out[e] = out.get(e, 0) + bj * c
    return out


def _root_recurrence(delta: SparsePoly, alpha: Fraction, top: int) -> dict[int, Fraction]:
    # v = delta^alpha satisfies delta * v' = alpha * delta' * v, giving
    # n v_n = sum_{k=1..n} ((alpha + 1) k - n) delta_k v_{n-k}.
    # With alpha = a/b, delta_k = N_k/D and W_n = n! (bD)^n v_n this becomes the
    # integer recurrence
    # W_n = sum_k (ak + bk - bn) N_k W_{n-k} (n-1)!/(n-k)! (bD)^(k-1).
    a, b = alpha.numerator, alpha.denominator
    u = sorted((e, c) for e, c in delta.items() if e > 0)
    D = math.lcm(*(c.denominator for _, c in u)) if u else 1
    num = [(k, c.numerator * (D // c.denominator)) for k, c in u]
    bD = b * D
    kmax = num[-1][0] if num else 0
    powers = [1]
    for _ in range(kmax):
        powers.append(powers[-1] * bD)
    W = [0] * (top + 1)
    W[0] = 1
    for n in range(1, top + 1):
        acc = 0
        falling = 1  # (n-1)!/(n-k)!
        prev_k = 1
        for k, Nk in num:
            if k > n:
                break
            for j in range(prev_k, k):
                falling *= n - j
            prev_k = k
            w = W[n - k]
            if w:
                acc += ((a + b) * k - b * n) * Nk * w * falling * powers[k - 1]
        W[n] = acc
    out = {0: Fraction(1)}
    scale = 1
    for n in range(1, top + 1):
        scale *= n * bD
        if W[n]:
            out[n] = Fraction(W[n], scale)
    return out


# The binomial sum needs top // nu powers of (delta - 1), each costing about as
# much as the whole recurrence, so it is only used when a few powers suffice.
_BINOMIAL_MAX_POWER = 3


@lru_cache(maxsize=4096)
def _root_cached(delta: SparsePoly, alpha: Fraction, top: int, method: str) -> tuple:
    if method == "auto":
        nu = min((e for e in delta.exponents() if e > 0), default=top + 1)
        method = "binomial" if top // nu <= _BINOMIAL_MAX_POWER else "recurrence"
    fn = _root_binomial if method == "binomial" else _root_recurrence
    return tuple(sorted(fn(delta, alpha, top).items()))


def pow_frac(
    delta: SparsePoly, s: int, d: int, trunc: int, ram: int = 1, method: str = "auto"
) -> TruncSeries:
    """The series u with u(0) = 1 and u^d = delta^s, modulo y^(trunc/ram).

    ``method="binomial"`` sums C(s/d, j) (delta - 1)^j with exact falling-factorial
    binomials; ``"recurrence"`` uses the linear recurrence coming from
    ``delta * u' = (s/d) * delta' * u``.  ``"auto"`` picks the binomial sum
    when at most three powers of (delta - 1) reach the window, and the
    recurrence otherwise.  Both give the same series.
    """
    if delta.coeff(0) != 1:
        raise ValueError("pow_frac needs delta(0) = 1")
    if d < 1:
        raise ValueError("d must be positive")
    if method not in ("auto", "binomial", "recurrence"):
        raise ValueError(f"unknown method {method!r}")
    if trunc <= 0:
        return TruncSeries(ram, trunc)
    top = (trunc - 1) // ram
    coeffs = _root_cached(delta, Fraction(s, d), top, method)
    return TruncSeries(ram, trunc, {e * ram: c for e, c in coeffs})


# -- term shapes -----------------------------------------------------------------


@dataclass(frozen=True)
class TermShape:
    """One summand c * delta_p^(s/d - k) * y^ypow of the expansion of h~.

    ``h`` pairs with n_(p+1), ..., n_l; ``ypow_num`` is ypow in units of 1/d.
    """

    p: int
    s: int
    h: tuple[int, ...]
    k: int
    ypow_num: int
    d: int
    c: Fraction | None = None

    @property
    def ypow(self) -> Fraction:
        return Fraction(self.ypow_num, self.d)

    @property
    def delta_exponent(self) -> Fraction:
        return Fraction(self.s, self.d) - self.k


def shape_count_bound(l: int, p: int, d: int, n: Sequence[int]) -> Fraction:
    """(2d + 1)(2 n_l / n_(p+1) + 1)^l."""
    return (2 * d + 1) * (2 * Fraction(n[-1], n[p]) + 1) ** l


def enumerate_term_shapes(
    l: int, p: int, d: int, n: Sequence[int], cap_mode: str = "strict"
) -> list[TermShape]:
    """All (s, h) with s in {1-2d, ..., 1} whose y-exponent stays under the 2 n_l cap.

    ``cap_mode="strict"`` keeps ypow < 2 n_l, ``"nonstrict"`` keeps ypow <= 2 n_l.
    Ordered lexicographically in (s, h).
    """
    n = tuple(n)
    if len(n) != l:
        raise ValueError(f"need {l} exponents, got {len(n)}")
    if not 0 <= p <= l - 1:
        raise ValueError("p must lie in [0, l-1]")
    if any(a >= b for a, b in zip(n, n[1:])) or (n and n[0] <= 0):
        raise ValueError("n must be strictly increasing positive integers")
    if d < 1:
        raise ValueError("d must be positive")
    if cap_mode not in ("strict", "nonstrict"):
        raise ValueError("cap_mode is 'strict' or 'nonstrict'")
    m = n[-1]
    if m % d:
        raise ValueError(f"d = {d} does not divide n_l = {m}")
    cap = 2 * m * d  # in units of 1/d
    within = (lambda v: v < cap) if cap_mode == "strict" else (lambda v: v <= cap)
    tail = [ni * d for ni in n[p:]]

    def vectors(i: int, used: int):
        if i == len(tail):
            yield ()
            return
        hj = 0
        while within(used + hj * tail[i]):
            for rest in vectors(i + 1, used + hj * tail[i]):
                yield (hj,) + rest
            hj += 1

    shapes = []
    for s in range(1 - 2 * d, 2):
        base = (1 - s) * m  # (1-s) m/d in units of 1/d
        if not within(base):
            continue
        for h in vectors(0, base):
            ypow_num = base + sum(hj * t for hj, t in zip(h, tail))
            shapes.append(TermShape(p=p, s=s, h=h, k=sum(h), ypow_num=ypow_num, d=d))
    return shapes


def term_value(
    shape: TermShape, delta_p: SparsePoly, m: int, d: int, trunc: int, ram: int = 1
) -> TruncSeries:
    """c * delta_p^(s/d - k) * y^ypow modulo y^(trunc/ram) (c = 1 when unset)."""
    if shape.d != d:
        raise ValueError("shape was enumerated for a different d")
    shift = shape.ypow * ram
    if shift.denominator != 1:
        raise ValueError("ramification too small for this shape's exponent")
    shift = int(shift)
    if shift >= trunc:
        return TruncSeries(ram, trunc)
    # full-length root, shared by every shape with the same s - kd
    body = pow_frac(delta_p, shape.s - shape.k * d, d, trunc, ram)
    out = TruncSeries(ram, trunc, {k + shift: c for k, c in body.items() if k + shift < trunc})
    return out if shape.c is None else out.scale(shape.c)


def puiseux_basis(f: SparsePoly, d: int, trunc: int, ram: int = 1) -> list[TruncSeries]:
    """[f~^(1/d), y^(m/d), y^(2m/d) f~^(-1/d), ...] modulo y^(trunc/ram).

    Element j (j = -1, 0, 1, ...) is y^((j+1) m/d) * f~^(-j/d); the list stops
    at the first element whose leading exponent reaches the window.
    """
    norm = normalize_f(f)
    if norm.m % d:
        raise ValueError(f"d = {d} does not divide deg f = {norm.m}")
    ftilde = norm.tail()
    step = norm.m // d * ram
    basis = []
    j = -1
    while (j + 1) * step < trunc:
        shift = (j + 1) * step
        body = pow_frac(ftilde, -j, d, trunc - shift, ram)
        basis.append(TruncSeries(ram, trunc, {k + shift: c for k, c in body.items()}))
        j += 1
    return basis


# -- linear algebra on series ------------------------------------------------------


def _columns(series: Sequence[TruncSeries]) -> tuple[list[list[Fraction]], list[int]]:
    keys = sorted({k for s in series for k in s.coeffs})
    return [[s.get(k) for k in keys] for s in series], keys


def linear_dependence(series: Sequence[TruncSeries]) -> list[Fraction] | None:
    """A nonzero rational v with sum v_i series_i = 0 (truncated), or None."""
    if not series:
        raise ValueError("need at least one series")
    aligned = align(series)
    cols, keys = _columns(aligned)
    if not keys:
        v = [Fraction(0)] * len(series)
        v[0] = Fraction(1)
        return v
    return linalg.kernel_vector(cols)


def match_target(target: TruncSeries, basis: Sequence[TruncSeries]) -> list[Fraction] | None:
    """Coefficients c with target = sum c_i basis_i modulo the common window, or None."""
    if not basis:
        return [] if align([target])[0].is_zero() else None
    aligned = align([target, *basis])
    cols, keys = _columns(aligned)
    rhs, basis_cols = cols[0], cols[1:]
    return linalg.solve(basis_cols, rhs)


def combine(coeffs: Iterable[Fraction], series: Sequence[TruncSeries]) -> TruncSeries:
    aligned = align(series)
    acc = TruncSeries(aligned[0].ram, aligned[0].trunc)
    for c, s in zip(coeffs, aligned):
        if c:
            acc = acc + s.scale(c)
    return acc


# -- the expansion of h~ ---------------------------------------------------------


@dataclass(frozen=True)
class StructuralMatch:
    shapes: list[TermShape]
    coefficients: list[Fraction] | None
    trunc: int

    @property
    def ok(self) -> bool:
        return self.coefficients is not None


def structural_match(inst: Instance, p: int | None = None, cap_mode: str = "strict") -> StructuralMatch:
    """Solve h~ = t_1 + ... + t_L + O(y^(2 n_l)) over the enumerated shapes at p (default l-1)."""
    p = inst.l - 1 if p is None else p
    trunc = 2 * inst.n[-1]
    shapes = enumerate_term_shapes(inst.l, p, inst.d, inst.n, cap_mode)
    delta_p = inst.delta(p)
    basis = [term_value(s, delta_p, inst.m, inst.d, trunc) for s in shapes]
    target = poly_to_series(tilde_transform(inst.h), 1, trunc)
    return StructuralMatch(shapes, match_target(target, basis), trunc)
