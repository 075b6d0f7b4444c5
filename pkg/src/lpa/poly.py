"""Exact univariate polynomials over the rationals and prime fields.

Only what the ideal machinery needs: Euclidean gcd, square-freeness,
factorization into monic irreducibles (complete over F_p, degree-limited over
Q), Laurent normalization, and a small literal parser.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import gcd as igcd
from typing import Iterable, Mapping


class PolyError(ValueError):
    pass


class UnsupportedError(RuntimeError):
    """The computation is outside what this module decides (never a guessed verdict)."""


# -- fields --------------------------------------------------------------------


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


@dataclass(frozen=True)
class FieldSpec:
    """The rationals (``p is None``) or the prime field F_p with p < 2**16."""

    p: int | None = None

    def __post_init__(self):
        if self.p is not None and (not _is_prime(self.p) or self.p >= 1 << 16):
            raise PolyError(f"F_p needs a prime p < 65536, got {self.p}")

    @property
    def is_rational(self) -> bool:
        return self.p is None

    def __call__(self, x):
        if self.p is None:
            return Fraction(x)
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise PolyError(f"{x} is not defined in F_{self.p}")
            return x.numerator * pow(x.denominator, -1, self.p) % self.p
        return int(x) % self.p

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("inverse of zero")
        if self.p is None:
            return 1 / a
        return pow(a, -1, self.p)

    @property
    def name(self) -> str:
        return "Q" if self.p is None else f"F{self.p}"

    def to_document(self):
        return "Q" if self.p is None else {"p": self.p}

    def __str__(self):
        return self.name


QQ = FieldSpec()


def GF(p: int) -> FieldSpec:
    return FieldSpec(p)


def field_from_document(raw) -> FieldSpec:
    """Accepts ``"Q"``, ``"F2"``, ``"F_3"``, ``{"p": 5}`` or None (rationals)."""
    if raw is None:
        return QQ
    if isinstance(raw, dict):
        if set(raw) != {"p"}:
            raise PolyError(f"field descriptor must be 'Q' or {{'p': prime}}, got {raw!r}")
        p = raw["p"]
        if isinstance(p, bool) or not isinstance(p, int):
            raise PolyError(f"field characteristic must be an integer, got {p!r}")
        return FieldSpec(p)
    if isinstance(raw, str):
        s = raw.strip()
        if s in ("Q", "QQ", "rationals"):
            return QQ
        m = re.fullmatch(r"(?:F|GF)_?\(?(\d+)\)?", s)
        if m:
            return FieldSpec(int(m.group(1)))
    raise PolyError(f"unknown field {raw!r}")


# -- polynomials -------------------------------------------------------------------


@dataclass(frozen=True)
class Poly:
    """Dense coefficients, lowest degree first, no trailing zeros."""

    field: FieldSpec
    coeffs: tuple = ()

    def __post_init__(self):
        cs = [self.field(c) for c in self.coeffs]
        while cs and not cs[-1]:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    @classmethod
    def x(cls, field: FieldSpec) -> Poly:
        return cls(field, (0, 1))

    @classmethod
    def const(cls, field: FieldSpec, c) -> Poly:
        return cls(field, (c,))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lc(self):
        return self.coeffs[-1] if self.coeffs else self.field(0)

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    @property
    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def constant_term(self):
        return self.coeffs[0] if self.coeffs else self.field(0)

    def monic(self) -> Poly:
        if self.is_zero:
            raise PolyError("the zero polynomial has no monic associate")
        inv = self.field.inv(self.lc)
        return Poly(self.field, tuple(c * inv for c in self.coeffs))

    def _same(self, other: Poly):
        if not isinstance(other, Poly):
            return NotImplemented
        if other.field != self.field:
            raise PolyError(f"cannot mix polynomials over {self.field} and {other.field}")
        return other

    def __add__(self, other: Poly) -> Poly:
        other = self._same(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = other.coeffs + (0,) * (n - len(other.coeffs))
        return Poly(self.field, tuple(x + y for x, y in zip(a, b)))

    def __neg__(self) -> Poly:
        return Poly(self.field, tuple(-c for c in self.coeffs))

    def __sub__(self, other: Poly) -> Poly:
        return self + (-other)

    def __mul__(self, other: Poly) -> Poly:
        other = self._same(other)
        if self.is_zero or other.is_zero:
            return Poly(self.field)
        out = [self.field(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return Poly(self.field, tuple(out))

    def __pow__(self, k: int) -> Poly:
        result = Poly.const(self.field, 1)
        for _ in range(k):
            result = result * self
        return result

    def scale(self, c) -> Poly:
        c = self.field(c)
        return Poly(self.field, tuple(a * c for a in self.coeffs))

    def __divmod__(self, other: Poly):
        other = self._same(other)
        if other.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        inv = self.field.inv(other.lc)
        dq = len(rem) - len(other.coeffs) + 1
        quo = [self.field(0)] * max(dq, 0)
        for k in range(dq - 1, -1, -1):
            c = rem[k + other.degree] * inv
            quo[k] = c
            if c:
                for j, b in enumerate(other.coeffs):
                    rem[k + j] -= c * b
        return Poly(self.field, tuple(quo)), Poly(self.field, tuple(rem))

    def __floordiv__(self, other: Poly) -> Poly:
        return divmod(self, other)[0]

    def __mod__(self, other: Poly) -> Poly:
        return divmod(self, other)[1]

    def divides(self, other: Poly) -> bool:
        """True if ``self`` divides ``other``."""
        if self.is_zero:
            return other.is_zero
        return (other % self).is_zero

    def derivative(self) -> Poly:
        return Poly(self.field, tuple(self.field(i) * c for i, c in enumerate(self.coeffs))[1:])

    def __call__(self, x):
        acc = self.field(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return self.field(acc)

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"Poly({format_poly(self)!r} over {self.field})"

    def sort_key(self):
        return (self.degree, tuple(_coeff_key(c) for c in reversed(self.coeffs)))


def _coeff_key(c):
    return (c.numerator, c.denominator) if isinstance(c, Fraction) else (c, 1)


def poly(field: FieldSpec, coeffs: Iterable) -> Poly:
    return Poly(field, tuple(coeffs))


def gcd(f: Poly, g: Poly) -> Poly:
    """Monic greatest common divisor."""
    if f.is_zero and g.is_zero:
        raise PolyError("gcd(0, 0) is undefined")
    f._same(g)
    a, b = f, g
    while not b.is_zero:
        a, b = b, a % b
    return a.monic()


def lcm(f: Poly, g: Poly) -> Poly:
    if f.is_zero or g.is_zero:
        return Poly(f.field)
    return ((f * g) // gcd(f, g)).monic()


def is_squarefree(f: Poly) -> bool:
    """No irreducible factor repeats.

    Over F_p a vanishing derivative means f(x) = g(x^p) = g(x)^p, which is a
    p-th power and therefore not square-free unless constant.
    """
    if f.is_zero:
        raise PolyError("square-freeness of the zero polynomial is undefined")
    if f.is_constant:
        return True
    d = f.derivative()
    if d.is_zero:
        return False
    return gcd(f, d).is_constant


# -- factorization --------------------------------------------------------------


_TRIAL_LIMIT = 200_000


@lru_cache(maxsize=None)
def monic_irreducibles(field: FieldSpec, degree: int) -> tuple[Poly, ...]:
    """All monic irreducibles of exactly ``degree`` over F_p, in sort order."""
    if field.is_rational:
        raise UnsupportedError("irreducibles over Q cannot be listed")
    p = field.p
    if degree < 1:
        return ()
    if p ** degree > _TRIAL_LIMIT:
        raise UnsupportedError(f"listing degree-{degree} irreducibles over F_{p} is too large")
    smaller = [q for d in range(1, degree // 2 + 1) for q in monic_irreducibles(field, d)]
    out = []
    for tail in product(range(p), repeat=degree):
        f = Poly(field, tuple(reversed(tail)) + (1,))
        if degree > 1 and not f.constant_term():
            continue
        if not any(q.divides(f) for q in smaller):
            out.append(f)
    out.sort(key=Poly.sort_key)
    return tuple(out)


def laurent_irreducibles(field: FieldSpec, max_degree: int) -> list[Poly]:
    """Monic irreducibles with nonzero constant term (the prime elements of K[x, 1/x] up to units)."""
    return [q for d in range(1, max_degree + 1) for q in monic_irreducibles(field, d)
            if q.constant_term()]


def _factor_fp(f: Poly) -> list[tuple[Poly, int]]:
    out = []
    rest = f.monic()
    d = 1
    while 2 * d <= rest.degree:
        for q in monic_irreducibles(f.field, d):
            k = 0
            while True:
                quo, rem = divmod(rest, q)
                if not rem.is_zero:
                    break
                rest, k = quo, k + 1
            if k:
                out.append((q, k))
        d += 1
    if not rest.is_constant:
        out.append((rest, 1))
    return out


def _divisors(n: int) -> list[int]:
    n = abs(n)
    small = [d for d in range(1, int(n ** 0.5) + 1) if n % d == 0]
    return sorted(set(small + [n // d for d in small]))


def _primitive_int(f: Poly) -> list[int]:
    den = 1
    for c in f.coeffs:
        den = den * c.denominator // igcd(den, c.denominator)
    ints = [int(c * den) for c in f.coeffs]
    g = 0
    for c in ints:
        g = igcd(g, c)
    return [c // g for c in ints]


def _factor_q(f: Poly) -> list[tuple[Poly, int]]:
    field = f.field
    out: dict[Poly, int] = {}
    rest = f.monic()
    x = Poly.x(field)
    while not rest.is_constant and rest.constant_term() == 0:
        rest = rest // x
        out[x] = out.get(x, 0) + 1
    found = True
    while found and rest.degree >= 1:
        found = False
        ints = _primitive_int(rest)
        for num in _divisors(ints[0]):
            for den in _divisors(ints[-1]):
                for r in (Fraction(num, den), Fraction(-num, den)):
                    if rest(r) == 0:
                        lin = Poly(field, (-r, 1))
                        rest = rest // lin
                        out[lin] = out.get(lin, 0) + 1
                        found = True
                        break
                if found:
                    break
            if found:
                break
    if rest.degree >= 4:
        raise UnsupportedError(
            f"cannot decide irreducibility over Q of the degree-{rest.degree} factor {rest}; "
            "use a prime field or supply the factors")
    if rest.degree >= 1:
        rest = rest.monic()
        out[rest] = out.get(rest, 0) + 1
    return list(out.items())


def irreducible_factors(f: Poly) -> list[tuple[Poly, int]]:
    """Monic irreducible factors with multiplicities, sorted; product equals f up to a scalar."""
    if f.is_zero:
        raise PolyError("cannot factor the zero polynomial")
    if f.is_constant:
        return []
    facs = _factor_q(f) if f.field.is_rational else _factor_fp(f)
    return sorted(facs, key=lambda t: t[0].sort_key())


def is_irreducible(f: Poly) -> bool:
    facs = irreducible_factors(f)
    return len(facs) == 1 and facs[0][1] == 1


# -- Laurent normal form ----------------------------------------------------------


@dataclass(frozen=True)
class LaurentNormalForm:
    """x**shift * f(x) with f(0) != 0."""

    shift: int
    f: Poly


def normalize_laurent(coeffs: Mapping[int, object], field: FieldSpec) -> LaurentNormalForm:
    terms = {e: field(c) for e, c in coeffs.items()}
    terms = {e: c for e, c in terms.items() if c}
    if not terms:
        raise PolyError("the zero Laurent polynomial generates the zero ideal")
    m = min(terms)
    top = max(terms)
    return LaurentNormalForm(m, Poly(field, tuple(terms.get(m + i, 0) for i in range(top - m + 1))))


# -- literals -------------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|(x)|(\*\*|[-+*/^()]))")


class _Parser:
    """Recursive descent over ``expr := term (('+'|'-') term)*`` with implicit products."""

    def __init__(self, text: str, field: FieldSpec):
        self.text = text
        self.field = field
        self.toks = []
        pos = 0
        text = text.rstrip()
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if not m:
                raise PolyError(f"cannot parse polynomial {self.text!r} at position {pos}")
            num, var, op = m.groups()
            self.toks.append(("num", int(num)) if num else ("x", None) if var else
                             ("op", "^" if op == "**" else op))
            pos = m.end()
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def parse(self) -> dict[int, object]:
        if not self.toks:
            raise PolyError("empty polynomial literal")
        out = self.expr()
        if self.i != len(self.toks):
            raise PolyError(f"trailing input in polynomial {self.text!r}")
        return out

    def expr(self):
        kind, val = self.peek()
        sign = 1
        if kind == "op" and val in "+-":
            self.take()
            sign = -1 if val == "-" else 1
        acc = _lscale(self.term(), sign, self.field)
        while self.peek() in (("op", "+"), ("op", "-")):
            _, op = self.take()
            t = self.term()
            acc = _ladd(acc, _lscale(t, -1 if op == "-" else 1, self.field))
        return acc

    def term(self):
        acc = self.factor()
        while True:
            kind, val = self.peek()
            if kind == "op" and val == "*":
                self.take()
                acc = _lmul(acc, self.factor(), self.field)
            elif kind in ("num", "x") or (kind == "op" and val == "("):
                acc = _lmul(acc, self.factor(), self.field)
            else:
                return acc

    def factor(self):
        base = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            neg = False
            if self.peek() == ("op", "-"):
                self.take()
                neg = True
            kind, val = self.take()
            if kind != "num":
                raise PolyError(f"exponent must be an integer in {self.text!r}")
            if neg:
                if base != {1: self.field(1)}:
                    raise PolyError("negative exponents are only allowed on x")
                return {-val: self.field(1)}
            out = {0: self.field(1)}
            for _ in range(val):
                out = _lmul(out, base, self.field)
            return out
        return base

    def atom(self):
        kind, val = self.take()
        if kind == "num":
            if self.peek() == ("op", "/"):
                self.take()
                k2, den = self.take()
                if k2 != "num" or den == 0:
                    raise PolyError(f"bad fraction in {self.text!r}")
                return {0: self.field(Fraction(val, den))}
            return {0: self.field(val)}
        if kind == "x":
            return {1: self.field(1)}
        if (kind, val) == ("op", "("):
            inner = self.expr()
            if self.take() != ("op", ")"):
                raise PolyError(f"unbalanced parentheses in {self.text!r}")
            return inner
        raise PolyError(f"unexpected token {val!r} in {self.text!r}")


def _clean(d):
    return {e: c for e, c in d.items() if c}


def _ladd(a, b):
    out = dict(a)
    for e, c in b.items():
        out[e] = out.get(e, 0) + c
    return _clean(out)


def _lscale(a, k, field):
    return _clean({e: c * field(k) for e, c in a.items()})


def _lmul(a, b, field):
    out: dict[int, object] = {}
    for e1, c1 in a.items():
        for e2, c2 in b.items():
            out[e1 + e2] = out.get(e1 + e2, field(0)) + c1 * c2
    return _clean(out)


def parse_laurent(text: str, field: FieldSpec) -> dict[int, object]:
    """Parse a literal such as ``"x^2+3x+1"``, ``"(x+1)^2"`` or ``"x^-1 + 1 + x"``."""
    if not isinstance(text, str):
        raise PolyError(f"polynomial literal must be a string, got {text!r}")
    return _Parser(text, field).parse()


def parse_poly(text: str, field: FieldSpec) -> Poly:
    terms = parse_laurent(text, field)
    if any(e < 0 for e in terms):
        raise PolyError(f"{text!r} has negative powers of x; it is not a polynomial")
    top = max(terms, default=-1)
    return Poly(field, tuple(terms.get(i, 0) for i in range(top + 1)))


def format_poly(f: Poly) -> str:
    if f.is_zero:
        return "0"
    parts = []
    for e in range(f.degree, -1, -1):
        c = f.coeffs[e]
        if not c:
            continue
        if f.field.is_rational:
            neg = c < 0
            a = -c if neg else c
        else:
            neg, a = False, c
        if isinstance(a, Fraction) and a.denominator != 1:
            mag = f"({a.numerator}/{a.denominator})"
        else:
            mag = str(int(a))
        if e == 0:
            body = mag
        else:
            mono = "x" if e == 1 else f"x^{e}"
            body = mono if mag == "1" else mag + mono
        parts.append(("-" if neg else "+", body))
    sign, body = parts[0]
    text = ("-" if sign == "-" else "") + body
    for sign, body in parts[1:]:
        text += sign + body
    return text
