"""Functional decomposition f = g(h) over Q and ratio representations of h~.

The normalized right factor is unique in characteristic 0: with h monic and
h(0) = 0, the top coefficients of f determine h through a truncated d-th root
at infinity, and g then falls out of the h-adic expansion of f.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .series import pow_frac
from .sparse_poly import (
    ONE,
    SparsePoly,
    compose,
    divmod_poly,
    mul,
    pow,
    tilde_transform,
)


class NoRadicalRoot(ArithmeticError):
    pass


@dataclass(frozen=True)
class Decomposition:
    g: SparsePoly
    h: SparsePoly
    d: int


@dataclass(frozen=True)
class RadicalRoot:
    delta: SparsePoly
    d: int
    e: int
    eta: SparsePoly


@dataclass(frozen=True)
class RatioRep:
    P: SparsePoly
    Q: SparsePoly

    def __post_init__(self):
        if not self.Q:
            raise ZeroDivisionError("ratio with zero denominator")

    @property
    def terms_P(self) -> int:
        return len(self.P)

    @property
    def terms_Q(self) -> int:
        return len(self.Q)


def _divisors(n: int) -> list[int]:
    small = [k for k in range(1, int(n**0.5) + 1) if n % k == 0]
    return sorted(set(small + [n // k for k in small]))


def normalize_pair(g: SparsePoly, h: SparsePoly) -> tuple[SparsePoly, SparsePoly]:
    """Rewrite (g, h) as (g(a x + b), (h - b)/a) so that h is monic with h(0) = 0."""
    a = h.leading_coeff
    b = h.coeff(0)
    h_new = (h - b).scale(1 / a)
    g_new = compose(g, SparsePoly({1: a, 0: b}))
    return g_new, h_new


def decompose_at_degree(f: SparsePoly, d: int) -> Decomposition | None:
    """The normalized (g, h) with deg g = d and f = g(h), or None if none exists over Q."""
    if f.is_constant():
        raise ValueError("cannot decompose a constant polynomial")
    if d < 1:
        raise ValueError("d must be positive")
    n = f.degree
    if n % d:
        return None
    r = n // d
    # reversed monic f: F(y) = y^n f(1/y) / lc(f) = 1 + ...
    F = tilde_transform(f).scale(1 / f.leading_coeff)
    root = pow_frac(F, 1, d, r)
    h = SparsePoly({r - k: c for k, c in root.items()})
    digits = []
    rem = f
    for _ in range(d + 1):
        rem, c = divmod_poly(rem, h)
        if not c.is_constant():
            return None
        digits.append(c.coeff(0))
    if rem:
        return None
    g = SparsePoly(enumerate(digits))
    if g.degree != d or compose(g, h) != f:
        return None
    return Decomposition(g=g, h=h, d=d)


def all_decompositions(f: SparsePoly) -> list[Decomposition]:
    """Every normalized decomposition with deg g >= 2 and deg h >= 2, sorted by d."""
    if f.is_constant():
        raise ValueError("cannot decompose a constant polynomial")
    n = f.degree
    out = []
    for d in _divisors(n):
        if d >= 2 and n // d >= 2:
            dec = decompose_at_degree(f, d)
            if dec is not None:
                out.append(dec)
    return out


def _poly_root(D: SparsePoly, d: int) -> SparsePoly | None:
    # The d-th root with constant term 1 if D is a perfect d-th power, else None.
    deg = D.degree
    if deg % d:
        return None
    top = deg // d
    cand = pow_frac(D, 1, d, top + 1)
    eta = SparsePoly(cand.items())
    return eta if pow(eta, d) == D else None


def radical_root(delta: SparsePoly, d: int) -> RadicalRoot:
    """Least e with delta^e a d-th power in Q[y], and eta with delta^e = eta^d.

    The exponents e that work form the multiples of the least one, and e = d
    always works, so only divisors of d are tried.
    """
    if delta.coeff(0) != 1:
        raise ValueError("radical_root needs delta(0) = 1")
    if d < 1:
        raise ValueError("d must be positive")
    for e in _divisors(d):
        D = pow(delta, e)
        eta = _poly_root(D, d)
        if eta is not None:
            return RadicalRoot(delta=delta, d=d, e=e, eta=eta)
    raise NoRadicalRoot(f"no radical root of {delta} for d = {d}")


def assemble_ratio(
    terms: Sequence[tuple[Fraction, int, int]],
    eta1: SparsePoly,
    eta2: SparsePoly,
    M: int,
) -> RatioRep:
    """Sum of c * (eta1/eta2)^j * y^ypow over the common denominator eta2 * eta1^(M-1).

    Each j must lie in {-(M-1), ..., 0, 1}.  Multiplying a term by the common
    denominator leaves c * y^ypow * eta1^(M-1+j) * eta2^(1-j); no cancellation
    is attempted.
    """
    if not eta2 or not eta1:
        raise ZeroDivisionError("eta1 and eta2 must be nonzero")
    if M < 1:
        raise ValueError("M must be positive")
    powers1 = {}
    powers2 = {}

    def p1(k):
        if k not in powers1:
            powers1[k] = pow(eta1, k)
        return powers1[k]

    def p2(k):
        if k not in powers2:
            powers2[k] = pow(eta2, k)
        return powers2[k]

    numerator = SparsePoly()
    for c, j, ypow in terms:
        if not -(M - 1) <= j <= 1:
            raise ValueError(f"exponent {j} outside {{-(M-1), ..., 1}} for M = {M}")
        if ypow < 0:
            raise ValueError("ypow must be non-negative")
        piece = mul(p1(M - 1 + j), p2(1 - j)).shift(ypow).scale(c)
        numerator = numerator + piece
    return RatioRep(P=numerator, Q=mul(eta2, p1(M - 1)))


def ratio_term_bounds(L: int, terms_eta1: int, terms_eta2: int, M: int) -> tuple[int, int]:
    """Upper bounds (numerator, denominator) on the term counts of assemble_ratio.

    With B = max(terms_eta1, terms_eta2) every numerator piece has at most B^M
    terms, so P has at most L * B^M and Q at most terms_eta2 * terms_eta1^(M-1).
    """
    B = max(terms_eta1, terms_eta2)
    return L * B**M, terms_eta2 * terms_eta1 ** (M - 1)


def verify_ratio(target: SparsePoly, rep: RatioRep) -> tuple[bool, int, int]:
    """(target * Q == P, terms of P, terms of Q)."""
    return mul(target, rep.Q) == rep.P, rep.terms_P, rep.terms_Q


def identity_ratio(h: SparsePoly) -> RatioRep:
    return RatioRep(P=h, Q=ONE)
