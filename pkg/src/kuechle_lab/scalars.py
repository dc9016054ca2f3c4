"""Exact scalars over the rationals and prime fields, and binary forms.

Elements carry their field.  Over Q the value is a reduced
:class:`fractions.Fraction`; over F_p it is the residue in ``[0, p)``.
Mixing fields raises :class:`FieldMismatch`; plain Python ints and
Fractions are coerced into the field of the other operand.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

from .errors import FieldMismatch, InvalidInput, ZeroForm, ZeroVector


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class Field:
    """Q when ``p`` is None, otherwise the prime field F_p."""

    p: int | None = None

    def __post_init__(self):
        if self.p is not None and not is_prime(self.p):
            raise InvalidInput(f"{self.p} is not prime")

    @property
    def is_prime_field(self) -> bool:
        return self.p is not None

    @property
    def characteristic(self) -> int:
        return 0 if self.p is None else self.p

    @property
    def zero(self) -> FieldElem:
        return self(0)

    @property
    def one(self) -> FieldElem:
        return self(1)

    def __call__(self, x) -> FieldElem:
        if isinstance(x, FieldElem):
            if x.field != self:
                raise FieldMismatch(f"{x!r} is not in {self}")
            return x
        return FieldElem._make(self._reduce(x), self)

    def _reduce(self, x):
        if self.p is None:
            return Fraction(x)
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise ZeroDivisionError(f"{x} has no image in F_{self.p}")
            return x.numerator * pow(x.denominator, -1, self.p) % self.p
        if isinstance(x, str):
            return self._reduce(Fraction(x))
        return int(x) % self.p

    def elements(self) -> Iterator[FieldElem]:
        if self.p is None:
            raise InvalidInput("Q is infinite")
        for a in range(self.p):
            yield FieldElem._make(a, self)

    def parse(self, text) -> FieldElem:
        """Parse the text encoding (``"3"``, ``"-2/5"``) or a JSON number."""
        if isinstance(text, bool):
            raise InvalidInput(f"not a field element: {text!r}")
        if isinstance(text, int):
            return self(text)
        if isinstance(text, str):
            try:
                return self(Fraction(text.strip()))
            except (ValueError, ZeroDivisionError) as exc:
                raise InvalidInput(f"not a field element: {text!r}") from exc
        raise InvalidInput(f"not a field element: {text!r}")

    def to_json(self) -> dict:
        if self.p is None:
            return {"field": "Q"}
        return {"field": "Fp", "p": self.p}

    @classmethod
    def from_json(cls, obj) -> Field:
        if isinstance(obj, str):
            obj = {"field": obj}
        if not isinstance(obj, dict):
            raise InvalidInput(f"bad field encoding: {obj!r}")
        kind = obj.get("field")
        if kind == "Q":
            return QQ
        if kind == "Fp":
            p = obj.get("p")
            if not isinstance(p, int):
                raise InvalidInput("Fp field needs an integer 'p'")
            return cls(p)
        raise InvalidInput(f"unknown field kind {kind!r}")

    def __str__(self):
        return "Q" if self.p is None else f"F_{self.p}"


QQ = Field()


def GF(p: int) -> Field:
    return Field(p)


class FieldElem:
    __slots__ = ("value", "field")

    def __init__(self, value, field: Field):
        self.value = field._reduce(value)
        self.field = field

    @classmethod
    def _make(cls, value, field):
        obj = object.__new__(cls)
        obj.value = value
        obj.field = field
        return obj

    def _coerce(self, other):
        if isinstance(other, FieldElem):
            if other.field is not self.field and other.field != self.field:
                raise FieldMismatch(f"{self.field} vs {other.field}")
            return other.value
        if isinstance(other, (int, Fraction)):
            return self.field._reduce(other)
        return None

    def _wrap(self, value):
        p = self.field.p
        return FieldElem._make(value if p is None else value % p, self.field)

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._wrap(self.value + o)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._wrap(self.value - o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._wrap(o - self.value)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._wrap(self.value * o)

    __rmul__ = __mul__

    def __neg__(self):
        return self._wrap(-self.value)

    def inverse(self) -> FieldElem:
        if not self.value:
            raise ZeroDivisionError("division by zero in " + str(self.field))
        if self.field.p is None:
            return FieldElem._make(Fraction(1) / self.value, self.field)
        return FieldElem._make(pow(self.value, -1, self.field.p), self.field)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * FieldElem._make(o, self.field).inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FieldElem._make(o, self.field) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        if self.field.p is None:
            return FieldElem._make(self.value**k, self.field)
        return FieldElem._make(pow(self.value, k, self.field.p), self.field)

    def __eq__(self, other):
        if isinstance(other, FieldElem):
            return self.field == other.field and self.value == other.value
        if isinstance(other, (int, Fraction)):
            try:
                return self.value == self.field._reduce(other)
            except ZeroDivisionError:
                return False
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.field.p))

    def __bool__(self):
        return bool(self.value)

    def __str__(self):
        return str(self.value)

    def __repr__(self):
        return f"FieldElem({self.value}, {self.field})"

    def to_text(self) -> str:
        return str(self.value)


# --------------------------------------------------------------------------
# projective line


@dataclass(frozen=True)
class ProjPoint1:
    """A point (u : v) of P^1 normalized so the first nonzero coordinate is 1."""

    u: FieldElem
    v: FieldElem

    @property
    def field(self) -> Field:
        return self.u.field

    def sort_key(self):
        # (1 : a) points ordered by a, then (0 : 1)
        return (0, self.v.value) if self.u else (1, 0)

    def is_infinite(self) -> bool:
        """True for (1 : 0), the point where the second coordinate vanishes."""
        return not self.v

    def to_json(self) -> list[str]:
        return [self.u.to_text(), self.v.to_text()]

    def __str__(self):
        return f"({self.u}:{self.v})"


def normalize_point(u: FieldElem, v: FieldElem) -> ProjPoint1:
    if u:
        return ProjPoint1(u.field.one, v / u)
    if v:
        return ProjPoint1(u.field.zero, v.field.one)
    raise ZeroVector("(0, 0) is not a point of P^1")


def projective_line(field: Field) -> list[ProjPoint1]:
    """All F_p-points of P^1 in canonical order."""
    pts = [ProjPoint1(field.one, a) for a in field.elements()]
    pts.append(ProjPoint1(field.zero, field.one))
    return pts


# --------------------------------------------------------------------------
# binary forms


@dataclass(frozen=True)
class BinaryForm:
    """Homogeneous form sum_i coeffs[i] * u^(degree-i) * v^i."""

    coeffs: tuple
    field: Field

    @classmethod
    def from_coeffs(cls, coeffs, field: Field) -> BinaryForm:
        if not coeffs:
            raise InvalidInput("a binary form needs degree + 1 >= 1 coefficients")
        return cls(tuple(field(c) for c in coeffs), field)

    @classmethod
    def linear(cls, a, b, field: Field) -> BinaryForm:
        """The degree-1 form a*u + b*v."""
        return cls.from_coeffs([a, b], field)

    @classmethod
    def constant(cls, c, field: Field) -> BinaryForm:
        return cls.from_coeffs([c], field)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __call__(self, u, v) -> FieldElem:
        u, v = self.field(u), self.field(v)
        n = self.degree
        total = self.field.zero
        for i, c in enumerate(self.coeffs):
            if c:
                total = total + c * u ** (n - i) * v**i
        return total

    def __add__(self, other: BinaryForm) -> BinaryForm:
        if other.degree != self.degree:
            raise InvalidInput("adding binary forms of different degrees")
        return BinaryForm(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)), self.field)

    def __neg__(self) -> BinaryForm:
        return BinaryForm(tuple(-c for c in self.coeffs), self.field)

    def __sub__(self, other: BinaryForm) -> BinaryForm:
        return self + (-other)

    def __mul__(self, other) -> BinaryForm:
        if isinstance(other, BinaryForm):
            out = [self.field.zero] * (self.degree + other.degree + 1)
            for i, a in enumerate(self.coeffs):
                if not a:
                    continue
                for j, b in enumerate(other.coeffs):
                    if b:
                        out[i + j] = out[i + j] + a * b
            return BinaryForm(tuple(out), self.field)
        return BinaryForm(tuple(c * other for c in self.coeffs), self.field)

    __rmul__ = __mul__

    def divide_linear(self, point: ProjPoint1) -> BinaryForm:
        """Exact quotient by the linear form v0*u - u0*v vanishing at ``point``."""
        u0, v0 = point.u, point.v
        a = list(self.coeffs)
        if not v0:
            # point is (1:0), the factor is -v and f(1,0) = a[0]
            if a[0]:
                raise InvalidInput(f"{point} is not a root")
            return BinaryForm(tuple(c * (-u0).inverse() for c in a[1:]), self.field)
        # synthetic division in t = u/v by (v0*t - u0)
        r = u0 / v0
        inv = v0.inverse()
        out = []
        acc = self.field.zero
        for c in a:
            acc = acc * r + c
            out.append(acc)
        if out.pop():
            raise InvalidInput(f"{point} is not a root")
        return BinaryForm(tuple(c * inv for c in out), self.field)

    def to_json(self) -> list[str]:
        return [c.to_text() for c in self.coeffs]

    def __str__(self):
        n = self.degree
        terms = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            mono = "*".join(
                s for s in (_power("u", n - i), _power("v", i)) if s
            )
            terms.append(f"{c}*{mono}" if mono else str(c))
        return " + ".join(terms) or "0"


def _power(x, k):
    if k == 0:
        return ""
    return x if k == 1 else f"{x}^{k}"


@dataclass(frozen=True)
class RootReport:
    """Roots of a binary form over its base field.

    ``nonsplit_degree`` is the degree of the residual factor left after all
    base-field roots are divided out, or None when the form splits.
    """

    roots: tuple  # of (ProjPoint1, multiplicity)
    residual: BinaryForm

    @property
    def nonsplit_degree(self) -> int | None:
        d = self.residual.degree
        return d if d > 0 else None

    @property
    def splits(self) -> bool:
        return self.nonsplit_degree is None

    @property
    def total_multiplicity(self) -> int:
        return sum(m for _, m in self.roots)


def binary_form_roots(f: BinaryForm) -> RootReport:
    """Base-field roots of ``f`` with multiplicities.

    Multiplicities come from repeated exact division by the linear factor,
    which is valid in every characteristic.
    """
    if f.is_zero():
        raise ZeroForm("the binary form vanishes identically")
    if f.field.is_prime_field:
        candidates = projective_line(f.field)
    else:
        candidates = _rational_candidates(f)
    roots = []
    residual = f
    for pt in candidates:
        mult = 0
        while residual.degree > 0 and not residual(pt.u, pt.v):
            residual = residual.divide_linear(pt)
            mult += 1
        if mult:
            roots.append((pt, mult))
    roots.sort(key=lambda rm: rm[0].sort_key())
    return RootReport(tuple(roots), residual)


def _divisors(n: int) -> list[int]:
    n = abs(n)
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def _rational_candidates(f: BinaryForm) -> list[ProjPoint1]:
    """Candidate rational roots by the rational root theorem on both charts."""
    field = f.field
    cands = [ProjPoint1(field.zero, field.one), ProjPoint1(field.one, field.zero)]
    coeffs = [c.value for c in f.coeffs]
    # strip roots at (1:0) [leading zeros] and (0:1) [trailing zeros]
    lo, hi = 0, len(coeffs)
    while lo < hi and coeffs[lo] == 0:
        lo += 1
    while hi > lo and coeffs[hi - 1] == 0:
        hi -= 1
    core = coeffs[lo:hi]
    if len(core) <= 1:
        return cands
    den = math.lcm(*(c.denominator for c in core))
    ints = [int(c * den) for c in core]
    g = math.gcd(*ints)
    ints = [c // g for c in ints]
    # f(t, 1) has leading coefficient ints[0] (of t^k) and constant ints[-1]
    for num in _divisors(ints[-1]):
        for dd in _divisors(ints[0]):
            for sgn in (1, -1):
                t = Fraction(sgn * num, dd)
                # root t = u/v  ->  point (t : 1) normalized to (1 : 1/t)
                cands.append(ProjPoint1(field.one, field(1 / t)))
    seen = set()
    out = []
    for c in cands:
        key = (c.u.value, c.v.value)
        if key not in seen:
            seen.add(key)
            out.append(c)
    return out
