"""Truncated graded rings (Chow rings of P^d and (P^1)^n) and rank ledgers."""

from __future__ import annotations

import math
import re
from dataclasses import dataclass

from .errors import BadCodim, DegreeMismatch, InvalidInput, RingMismatch


@dataclass(frozen=True)
class GradedRing:
    """Z[g_1, ..., g_r] / (g_i^(b_i + 1)), every generator of degree 1."""

    names: tuple
    bounds: tuple
    label: str

    def gens(self) -> list[ChowClass]:
        out = []
        for i in range(len(self.names)):
            e = [0] * len(self.names)
            e[i] = 1
            out.append(ChowClass(self, {tuple(e): 1}))
        return out

    def one(self) -> ChowClass:
        return ChowClass(self, {(0,) * len(self.names): 1})

    def zero(self) -> ChowClass:
        return ChowClass(self, {})

    def parse(self, text: str) -> ChowClass:
        return parse_class(text, self)


def projective_space(d: int) -> GradedRing:
    return GradedRing(("h",), (d,), f"P{d}")


def p1_product(n: int) -> GradedRing:
    return GradedRing(tuple(f"h{i}" for i in range(1, n + 1)), (1,) * n, f"(P1)^{n}")


def ring_from_label(label: str) -> GradedRing:
    m = re.fullmatch(r"P(\d+)", label)
    if m:
        return projective_space(int(m.group(1)))
    m = re.fullmatch(r"\(?P1\)?\^(\d+)", label)
    if m:
        return p1_product(int(m.group(1)))
    raise InvalidInput(f"unknown ring {label!r}; use Pd or (P1)^n")


class ChowClass:
    __slots__ = ("ring", "coeffs")

    def __init__(self, ring: GradedRing, coeffs: dict):
        self.ring = ring
        self.coeffs = {
            e: c for e, c in coeffs.items() if c and all(x <= b for x, b in zip(e, ring.bounds))
        }

    def _check(self, other: ChowClass):
        if not isinstance(other, ChowClass) or other.ring != self.ring:
            raise RingMismatch("classes live in different rings")

    def __add__(self, other):
        if isinstance(other, int):
            other = self.ring.one() * other
        self._check(other)
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            out[e] = out.get(e, 0) + c
        return ChowClass(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return ChowClass(self.ring, {e: -c for e, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return ChowClass(self.ring, {e: c * other for e, c in self.coeffs.items()})
        self._check(other)
        out = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return ChowClass(self.ring, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = self.ring.one()
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, int) and other == 0:
            return not self.coeffs
        if not isinstance(other, ChowClass):
            return NotImplemented
        return self.ring == other.ring and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.ring, tuple(sorted(self.coeffs.items()))))

    def coefficient_of(self, exponents) -> int:
        return self.coeffs.get(tuple(exponents), 0)

    def degrees(self) -> set:
        return {sum(e) for e in self.coeffs}

    def is_homogeneous_of(self, d: int) -> bool:
        return self.degrees() <= {d}

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for e in sorted(self.coeffs, key=lambda e: (sum(e), [-x for x in e])):
            c = self.coeffs[e]
            mono = "*".join(
                n if x == 1 else f"{n}^{x}" for n, x in zip(self.ring.names, e) if x
            )
            if not mono:
                terms.append(str(c))
            elif c == 1:
                terms.append(mono)
            elif c == -1:
                terms.append("-" + mono)
            else:
                terms.append(f"{c}{mono}")
        return " + ".join(terms).replace("+ -", "- ")

    __repr__ = __str__


def parse_class(text: str, ring: GradedRing) -> ChowClass:
    """Parse integer-coefficient monomials such as ``4h^3``, ``h1 + 2h1*h2 - 3``."""
    s = text.replace(" ", "")
    if not s:
        raise InvalidInput("empty class")
    if s[0] not in "+-":
        s = "+" + s
    pieces = re.findall(r"[+-][^+-]+", s)
    if "".join(pieces) != s:
        raise InvalidInput(f"cannot parse class {text!r}")
    index = {n: i for i, n in enumerate(ring.names)}
    total = ring.zero()
    for piece in pieces:
        sign = -1 if piece[0] == "-" else 1
        body = piece[1:]
        m = re.fullmatch(r"(\d*)\*?((?:[a-z]\d*(?:\^\d+)?\*?)*)", body)
        if not m or (not m.group(1) and not m.group(2)):
            raise InvalidInput(f"cannot parse term {piece!r}")
        coeff = int(m.group(1)) if m.group(1) else 1
        e = [0] * len(ring.names)
        for name, power in re.findall(r"([a-z]\d*)(?:\^(\d+))?", m.group(2)):
            if name not in index:
                raise InvalidInput(f"unknown generator {name!r} in ring {ring.label}")
            e[index[name]] += int(power) if power else 1
        total = total + ChowClass(ring, {tuple(e): sign * coeff})
    return total


# --------------------------------------------------------------------------


def degeneracy_classes(c1: ChowClass, c2: ChowClass, c3: ChowClass) -> dict:
    """Discriminant 2 c1 and corank-2 locus 4 (c1 c2 - c3) of a symmetric map."""
    c1._check(c2)
    c1._check(c3)
    for k, c in ((1, c1), (2, c2), (3, c3)):
        if not c.is_homogeneous_of(k):
            raise DegreeMismatch(f"c{k} must be homogeneous of degree {k}")
    return {"discriminant": c1 * 2, "corank2": (c1 * c2 - c3) * 4}


def blowup_k0_rank(base_rank: int, center_rank: int, codim: int) -> int:
    """Exceptional-object count after blowing up a center of the given codimension."""
    if codim < 2:
        raise BadCodim("blowup center needs codimension >= 2")
    if base_rank < 0 or center_rank < 0:
        raise InvalidInput("ranks are nonnegative")
    return base_rank + (codim - 1) * center_rank


@dataclass(frozen=True)
class SODLedger:
    """Components of a semiorthogonal decomposition; rank None marks a
    component tracked by name only."""

    name: str
    entries: tuple  # (description, rank or None)

    @property
    def exceptional_part(self) -> int:
        return sum(r for _, r in self.entries if r is not None)

    @property
    def total(self) -> int:
        return self.exceptional_part

    @property
    def symbolic(self) -> list[str]:
        return [d for d, r in self.entries if r is None]

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "entries": [{"component": d, "rank": r} for d, r in self.entries],
            "total": self.total,
            "exceptional_part": self.exceptional_part,
            "symbolic": self.symbolic,
        }


def ledger_b9() -> SODLedger:
    points, lines = 7, math.comb(7, 2)
    p4 = 5
    blown = blowup_k0_rank(p4, points, 4) - p4
    return SODLedger(
        "b9",
        (
            ("standard collection on P^4", p4),
            (f"blowup of {points} points, 3 objects each", blown),
            (f"antiflips: {lines} lines L_ij and the rational normal quartic", lines + 1),
        ),
    )


def ledger_d3() -> SODLedger:
    return SODLedger(
        "d3",
        (
            ("line bundles O(k1h1+k2h2+k3h3+k4h4), 0 <= k_i <= 1", 2**4),
            ("D(Z), Z a K3 surface", None),
        ),
    )


def ledger_c7() -> SODLedger:
    return SODLedger(
        "c7",
        (
            ("line bundles O_X, O_X(H), O_X(2H)", 3),
            ("i_*O_E, i_*O_E(h), i_*O_E(2h) on the exceptional divisor", 3),
            ("A_X, noncommutative K3 category", None),
        ),
    )


def ledger_b4() -> SODLedger:
    return SODLedger(
        "b4",
        (
            ("line bundles O_X(kh), 0 <= k <= 3", 4),
            ("D(P(W), Cliff_0), even Clifford algebra component", None),
        ),
    )


LEDGERS = {"b9": ledger_b9, "d3": ledger_d3, "c7": ledger_c7, "b4": ledger_b4}
