"""Exact sparse univariate polynomials over the rationals.

A polynomial is an immutable map ``exponent -> Fraction`` with no zero
coefficients stored; the zero polynomial is the empty map.  Equality is map
equality because every constructor canonicalizes.

    x^6 - 2*x^4 + x^2 + 1  ->  {6: 1, 4: -2, 2: 1, 0: 1}

Besides ring arithmetic the module provides the normalizations used by the
decomposition analysis: ``normalize_f`` (``f = a x^m (1 + b_1 y^n_1 + ...)``
with ``y = 1/x``) and ``tilde_transform`` (``h~(y) = y^deg(h) h(1/y)``).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

MAX_EXPONENT = 2**63 - 1

Rat = Fraction


class ExponentOverflow(OverflowError):
    """An exponent left the machine-width range [0, 2^63 - 1]."""


class PolyParseError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


def _check_exponent(e: int) -> int:
    if e < 0:
        raise ValueError(f"negative exponent {e}")
    if e > MAX_EXPONENT:
        raise ExponentOverflow(f"exponent {e} exceeds 2^63 - 1")
    return e


class SparsePoly:
    """Immutable sparse polynomial with Fraction coefficients."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[int, object] | Iterable[tuple[int, object]] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[int, Fraction] = {}
        for e, c in items:
            e = _check_exponent(int(e))
            acc[e] = acc.get(e, Fraction(0)) + Fraction(c)
        self._terms = {e: c for e, c in sorted(acc.items(), reverse=True) if c != 0}
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict[int, Fraction]) -> "SparsePoly":
        # Caller guarantees valid exponents; zeros are still filtered here.
        p = cls.__new__(cls)
        p._terms = {e: terms[e] for e in sorted(terms, reverse=True) if terms[e] != 0}
        p._hash = None
        return p

    @classmethod
    def constant(cls, c) -> "SparsePoly":
        return cls({0: c})

    @classmethod
    def monomial(cls, e: int, c=1) -> "SparsePoly":
        return cls({e: c})

    # -- inspection ---------------------------------------------------------

    @property
    def terms(self) -> dict[int, Fraction]:
        """Copy of the exponent -> coefficient map, descending exponents."""
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def exponents(self) -> list[int]:
        return list(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and 0 in self._terms)

    @property
    def degree(self) -> int:
        if not self._terms:
            raise ValueError("degree of the zero polynomial is undefined")
        return next(iter(self._terms))

    @property
    def low_degree(self) -> int:
        if not self._terms:
            raise ValueError("zero polynomial has no lowest term")
        return next(reversed(self._terms))

    @property
    def leading_coeff(self) -> Fraction:
        if not self._terms:
            raise ValueError("zero polynomial has no leading coefficient")
        return next(iter(self._terms.values()))

    def coeff(self, e: int) -> Fraction:
        return self._terms.get(e, Fraction(0))

    def __eq__(self, other) -> bool:
        if isinstance(other, SparsePoly):
            return self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self._terms == SparsePoly.constant(other)._terms
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(tuple(self._terms.items()))
        return self._hash

    def __repr__(self) -> str:
        return f"SparsePoly({self})"

    def __str__(self) -> str:
        return self.to_text()

    def to_text(self, var: str = "x") -> str:
        """Render in the shared grammar, descending exponents."""
        if not self._terms:
            return "0"
        parts = []
        for i, (e, c) in enumerate(self._terms.items()):
            sign = "-" if c < 0 else "+"
            mag = -c if c < 0 else c
            if e == 0:
                body = str(mag)
            else:
                mono = var if e == 1 else f"{var}^{e}"
                body = mono if mag == 1 else f"{mag}*{mono}"
            if i == 0:
                parts.append(body if sign == "+" else f"-{body}")
            else:
                parts.append(f" {sign} {body}")
        return "".join(parts)

    # -- arithmetic ---------------------------------------------------------

    def __neg__(self) -> "SparsePoly":
        return SparsePoly._raw({e: -c for e, c in self._terms.items()})

    def __add__(self, other) -> "SparsePoly":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self._terms)
        for e, c in other._terms.items():
            out[e] = out.get(e, Fraction(0)) + c
        return SparsePoly._raw(out)

    __radd__ = __add__

    def __sub__(self, other) -> "SparsePoly":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "SparsePoly":
        return (-self) + other

    def __mul__(self, other) -> "SparsePoly":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return mul(self, other)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "SparsePoly":
        return pow(self, k)

    def scale(self, c) -> "SparsePoly":
        c = Fraction(c)
        return SparsePoly._raw({e: c * v for e, v in self._terms.items()})

    def shift(self, k: int) -> "SparsePoly":
        """Multiply by x^k."""
        if self._terms and self.degree + k > MAX_EXPONENT:
            raise ExponentOverflow("shift overflows exponent range")
        return SparsePoly._raw({e + k: c for e, c in self._terms.items()})

    def __call__(self, x):
        """Evaluate at a rational (or any ring element supporting * and +)."""
        acc = 0
        prev = None
        for e, c in self._terms.items():
            if prev is not None:
                acc = acc * x ** (prev - e)
            acc = acc + c
            prev = e
        if prev:
            acc = acc * x**prev
        return acc

    def __divmod__(self, other: "SparsePoly"):
        return divmod_poly(self, other)


def _coerce(x):
    if isinstance(x, SparsePoly):
        return x
    if isinstance(x, (int, Fraction)):
        return SparsePoly.constant(x)
    return NotImplemented


ZERO = SparsePoly()
ONE = SparsePoly.constant(1)
X = SparsePoly.monomial(1)


# -- parsing --------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|(\S))")


def parse_poly(text: str, var: str = "x") -> SparsePoly:
    """Parse the shared polynomial grammar.

    ``poly := term (("+"|"-") term)*``, ``term := coef | coef "*" mono | mono``,
    ``mono := var ["^" uint]``, ``coef := int | int "/" uint``.  A leading sign on
    the first term is accepted.
    """
    tokens: list[tuple[str, str, int]] = []
    pos = 0
    for m in _TOKEN.finditer(text):
        if m.group(1) is not None:
            tokens.append(("int", m.group(1), m.start(1)))
        elif m.group(2) is not None:
            tokens.append(("ch", m.group(2), m.start(2)))
        pos = m.end()
    if text[pos:].strip():
        raise PolyParseError("unexpected trailing input", pos)
    tokens.append(("end", "", len(text)))

    i = 0

    def peek():
        return tokens[i]

    def expect_int(what: str) -> int:
        nonlocal i
        kind, val, p = tokens[i]
        if kind != "int":
            raise PolyParseError(f"expected {what}", p)
        i += 1
        return int(val)

    def parse_mono() -> int:
        nonlocal i
        kind, val, p = tokens[i]
        if kind != "ch" or val != var:
            raise PolyParseError(f"expected '{var}'", p)
        i += 1
        kind, val, p = tokens[i]
        if kind == "ch" and val == "^":
            i += 1
            kind, val, p = tokens[i]
            if kind == "ch" and val == "-":
                raise PolyParseError("negative exponent", p)
            e = expect_int("exponent")
            if e > MAX_EXPONENT:
                raise ExponentOverflow(f"exponent {e} exceeds 2^63 - 1 at position {p}")
            return e
        return 1

    def parse_term() -> tuple[int, Fraction]:
        nonlocal i
        kind, val, p = peek()
        if kind == "int":
            num = expect_int("integer")
            coef = Fraction(num)
            kind, val, p = peek()
            if kind == "ch" and val == "/":
                i += 1
                den_pos = peek()[2]
                den = expect_int("denominator")
                if den == 0:
                    raise PolyParseError("zero denominator", den_pos)
                coef = Fraction(num, den)
            kind, val, p = peek()
            if kind == "ch" and val == "*":
                i += 1
                return parse_mono(), coef
            return 0, coef
        if kind == "ch" and val == var:
            return parse_mono(), Fraction(1)
        raise PolyParseError("expected a term", p)

    acc: dict[int, Fraction] = {}
    sign = 1
    kind, val, p = peek()
    if kind == "ch" and val in "+-":
        sign = -1 if val == "-" else 1
        i += 1
    while True:
        e, c = parse_term()
        acc[e] = acc.get(e, Fraction(0)) + sign * c
        kind, val, p = peek()
        if kind == "end":
            break
        if kind == "ch" and val in "+-":
            sign = -1 if val == "-" else 1
            i += 1
            continue
        raise PolyParseError(f"unexpected {val!r}", p)
    return SparsePoly._raw(acc)


# -- ring operations --------------------------------------------------------


def add(p: SparsePoly, q: SparsePoly) -> SparsePoly:
    return p + q


def mul(p: SparsePoly, q: SparsePoly) -> SparsePoly:
    """Exact product; raises ExponentOverflow if a product exponent overflows."""
    if not p or not q:
        return ZERO
    if p.degree + q.degree > MAX_EXPONENT:
        raise ExponentOverflow("product degree exceeds 2^63 - 1")
    if len(p) > len(q):
        p, q = q, p
    out: dict[int, Fraction] = {}
    qi = list(q.items())
    for ea, ca in p.items():
        for eb, cb in qi:
            e = ea + eb
            out[e] = out.get(e, 0) + ca * cb
    return SparsePoly._raw(out)


def pow(p: SparsePoly, k: int) -> SparsePoly:  # noqa: A001 - mirrors the op name
    """p**k by repeated squaring; pow(p, 0) == 1."""
    if k < 0:
        raise ValueError("negative power of a polynomial")
    if k == 0:
        return ONE
    if p and p.degree * k > MAX_EXPONENT:
        raise ExponentOverflow("power degree exceeds 2^63 - 1")
    result = ONE
    base = p
    while True:
        if k & 1:
            result = mul(result, base)
        k >>= 1
        if not k:
            return result
        base = mul(base, base)


def compose(g: SparsePoly, h: SparsePoly) -> SparsePoly:
    """g(h(x)), Horner's rule with power jumps over the gaps of g."""
    if not g:
        return ZERO
    if h and not h.is_constant() and g.degree * h.degree > MAX_EXPONENT:
        raise ExponentOverflow("composition degree exceeds 2^63 - 1")
    acc = ZERO
    prev = None
    for e, c in g.items():
        if prev is not None:
            acc = mul(acc, pow(h, prev - e))
        acc = acc + c
        prev = e
    if prev:
        acc = mul(acc, pow(h, prev))
    return acc


def divmod_poly(f: SparsePoly, g: SparsePoly) -> tuple[SparsePoly, SparsePoly]:
    """Euclidean division f = q*g + r with deg r < deg g."""
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    dg = g.degree
    lc = g.leading_coeff
    rest = list(g.items())[1:]
    rem = dict(f.items())
    quot: dict[int, Fraction] = {}
    while rem:
        e = max(rem)
        if e < dg:
            break
        c = rem.pop(e) / lc
        shift = e - dg
        quot[shift] = c
        for eg, cg in rest:
            k = eg + shift
            v = rem.get(k, 0) - c * cg
            if v:
                rem[k] = v
            else:
                rem.pop(k, None)
    return SparsePoly._raw(quot), SparsePoly._raw(rem)


def nonconstant_terms(f: SparsePoly) -> int:
    return sum(1 for e in f.exponents() if e > 0)


@dataclass(frozen=True)
class Normalization:
    a: Fraction
    m: int
    n: tuple[int, ...]
    b: tuple[Fraction, ...]

    def reconstruct(self) -> SparsePoly:
        """a*x^m*(1 + sum b_i x^(-n_i)) expanded back into a polynomial."""
        terms = {self.m: self.a}
        for ni, bi in zip(self.n, self.b):
            terms[self.m - ni] = self.a * bi
        return SparsePoly(terms)

    def tail(self, p: int | None = None) -> SparsePoly:
        """delta_p(y) = 1 + b_1 y^n_1 + ... + b_p y^n_p (all terms if p is None)."""
        p = len(self.n) if p is None else p
        return SparsePoly({0: 1, **{self.n[i]: self.b[i] for i in range(p)}})


def normalize_f(f: SparsePoly) -> Normalization:
    """Write f(x) = a x^m (1 + b_1 y^n_1 + ... + b_l y^n_l), y = 1/x."""
    if f.is_constant():
        raise ValueError("normalize_f needs a non-constant polynomial")
    a = f.leading_coeff
    m = f.degree
    rest = list(f.items())[1:]
    return Normalization(
        a=a,
        m=m,
        n=tuple(m - e for e, _ in rest),
        b=tuple(c / a for _, c in rest),
    )


def tilde_transform(h: SparsePoly) -> SparsePoly:
    """h~(y) = y^deg(h) * h(1/y); reverses the coefficient sequence."""
    if not h:
        raise ValueError("tilde transform of the zero polynomial")
    n = h.degree
    return SparsePoly._raw({n - e: c for e, c in h.items()})


@dataclass(frozen=True)
class Instance:
    """A decomposition scenario f = g(h) together with f's normalization."""

    f: SparsePoly
    g: SparsePoly
    h: SparsePoly
    l: int
    d: int
    m: int
    n: tuple[int, ...]
    a: Fraction
    b: tuple[Fraction, ...]

    @classmethod
    def from_pair(cls, g: SparsePoly, h: SparsePoly) -> "Instance":
        if g.is_constant() or h.is_constant():
            raise ValueError("g and h must be non-constant")
        f = compose(g, h)
        if f.coeff(0) == 0:
            # n_l = m needs a nonzero constant term; shift g by a constant.
            raise ValueError("f(0) must be nonzero; add a constant to g")
        norm = normalize_f(f)
        return cls(
            f=f, g=g, h=h,
            l=nonconstant_terms(f),
            d=g.degree,
            m=norm.m,
            n=norm.n,
            a=norm.a,
            b=norm.b,
        )

    @property
    def normalization(self) -> Normalization:
        return Normalization(self.a, self.m, self.n, self.b)

    def delta(self, p: int) -> SparsePoly:
        return self.normalization.tail(p)
