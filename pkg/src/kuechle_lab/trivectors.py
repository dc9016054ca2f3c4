"""Alternating 3-forms, with sl(3) as the model 8-space.

Coordinates on sl(3) use the fixed ordered basis

    E12, E13, E21, E23, E31, E32, H1 = E11 - E22, H2 = E22 - E33

and trivector coefficients are keyed by 0-based sorted triples (the JSON
encoding is 1-based).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

from .errors import BadCharacteristic, InvalidInput
from .linalg import Matrix, Subspace, _rref_values, kernel
from .scalars import Field, FieldElem, QQ

_OFFDIAG = ((0, 1), (0, 2), (1, 0), (1, 2), (2, 0), (2, 1))


def sl3_basis(field: Field) -> list[Matrix]:
    out = []
    for i, j in _OFFDIAG:
        vals = [[0] * 3 for _ in range(3)]
        vals[i][j] = 1
        out.append(Matrix(vals, field))
    out.append(Matrix.diag([1, -1, 0], field))
    out.append(Matrix.diag([0, 1, -1], field))
    return out


def to_coords(M: Matrix) -> tuple:
    """8 coordinates of a traceless 3x3 matrix in the fixed basis."""
    if M.shape != (3, 3) or M.trace():
        raise InvalidInput("not a traceless 3x3 matrix")
    off = tuple(M[i, j] for i, j in _OFFDIAG)
    # diag(d1, d2, d3) = d1*H1 + (-d3)*H2
    return off + (M[0, 0], -M[2, 2])


def from_coords(x: Sequence, field: Field) -> Matrix:
    x = [field(c) for c in x]
    vals = [[field.zero] * 3 for _ in range(3)]
    for (i, j), c in zip(_OFFDIAG, x):
        vals[i][j] = c
    h1, h2 = x[6], x[7]
    vals[0][0], vals[1][1], vals[2][2] = h1, h2 - h1, -h2
    return Matrix(vals, field)


def bracket(x: Matrix, y: Matrix) -> Matrix:
    return x @ y - y @ x


def trace_pairing_matrix(field: Field) -> Matrix:
    """Gram matrix of Tr(xi eta) on the sl(3) basis."""
    B = sl3_basis(field)
    return Matrix([[(a @ b).trace() for b in B] for a in B], field)


def _check_char(field: Field):
    if field.p == 3:
        raise BadCharacteristic("sl(3) constructions are not available in characteristic 3")


# --------------------------------------------------------------------------


def _sign_sort(i, j, k):
    """Sorted triple and sign of the sorting permutation (0 if repeated)."""
    if i == j or j == k or i == k:
        return None, 0
    t = [i, j, k]
    sign = 1
    for a in range(3):
        for b in range(2 - a):
            if t[b] > t[b + 1]:
                t[b], t[b + 1] = t[b + 1], t[b]
                sign = -sign
    return tuple(t), sign


@dataclass(frozen=True)
class TriVector:
    """Alternating 3-form with coefficients on sorted 0-based triples."""

    dim: int
    field: Field
    coeffs: tuple  # sorted ((i, j, k), FieldElem) with nonzero values

    @classmethod
    def from_dict(cls, dim: int, field: Field, coeffs: dict) -> TriVector:
        items = []
        for key, c in coeffs.items():
            t, s = _sign_sort(*key)
            if s == 0 or max(key) >= dim or min(key) < 0:
                raise InvalidInput(f"bad index triple {key}")
            items.append((t, field(c) * s))
        merged = {}
        for t, c in items:
            merged[t] = merged.get(t, field.zero) + c
        return cls(dim, field, tuple(sorted((t, c) for t, c in merged.items() if c)))

    @classmethod
    def zero(cls, dim: int, field: Field) -> TriVector:
        return cls(dim, field, ())

    def as_dict(self) -> dict:
        return dict(self.coeffs)

    def coeff(self, i, j, k) -> FieldElem:
        t, s = _sign_sort(i, j, k)
        if s == 0:
            return self.field.zero
        c = self.as_dict().get(t)
        if c is None:
            return self.field.zero
        return c if s > 0 else -c

    def dense(self) -> list:
        """Full antisymmetric array of raw values, a[i][j][k]."""
        d = self.dim
        zero = self.field.zero.value
        a = [[[zero] * d for _ in range(d)] for _ in range(d)]
        for (i, j, k), c in self.coeffs:
            v = c.value
            for (x, y, z), s in _PERMS:
                t = ((i, j, k)[x], (i, j, k)[y], (i, j, k)[z])
                a[t[0]][t[1]][t[2]] = v if s > 0 else -v
        return a

    def eval(self, v1, v2, v3) -> FieldElem:
        F = self.field
        v1, v2, v3 = ([F(x) for x in v] for v in (v1, v2, v3))
        total = F.zero
        for (i, j, k), c in self.coeffs:
            d = (
                v1[i] * (v2[j] * v3[k] - v2[k] * v3[j])
                - v1[j] * (v2[i] * v3[k] - v2[k] * v3[i])
                + v1[k] * (v2[i] * v3[j] - v2[j] * v3[i])
            )
            total = total + c * d
        return total

    def pullback(self, g: Matrix) -> TriVector:
        """(g^* lambda)(v1, v2, v3) = lambda(g v1, g v2, g v3)."""
        cols = [g.col(j) for j in range(self.dim)]
        return TriVector.from_dict(
            self.dim,
            self.field,
            {t: self.eval(cols[t[0]], cols[t[1]], cols[t[2]]) for t in itertools.combinations(range(self.dim), 3)},
        )

    def is_proportional_to(self, other: TriVector) -> bool:
        a, b = self.as_dict(), other.as_dict()
        if set(a) != set(b) or not a:
            return False
        key = next(iter(a))
        r = a[key] / b[key]
        return all(a[t] == r * b[t] for t in a)

    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "terms": [{"ijk": [i + 1, j + 1, k + 1], "c": c.to_text()} for (i, j, k), c in self.coeffs],
        }

    @classmethod
    def from_json(cls, obj, field: Field) -> TriVector:
        if not isinstance(obj, dict) or "terms" not in obj:
            raise InvalidInput("trivector JSON needs 'terms'")
        dim = obj.get("dim", 8)
        coeffs = {}
        for term in obj["terms"]:
            ijk = term.get("ijk")
            if not isinstance(ijk, list) or len(ijk) != 3:
                raise InvalidInput(f"bad term {term!r}")
            key = tuple(int(x) - 1 for x in ijk)
            if key in coeffs:
                raise InvalidInput(f"duplicate term {ijk}")
            coeffs[key] = field.parse(term.get("c", "0"))
        return cls.from_dict(dim, field, coeffs)


_PERMS = [
    ((0, 1, 2), 1),
    ((1, 2, 0), 1),
    ((2, 0, 1), 1),
    ((1, 0, 2), -1),
    ((0, 2, 1), -1),
    ((2, 1, 0), -1),
]


def trace_form(field: Field = QQ) -> TriVector:
    """lambda(x, y, z) = Tr([x, y] z) on sl(3)."""
    _check_char(field)
    B = sl3_basis(field)
    return TriVector.from_dict(
        8,
        field,
        {(i, j, k): (bracket(B[i], B[j]) @ B[k]).trace() for i, j, k in itertools.combinations(range(8), 3)},
    )


def kuchle_coordinate_form(field: Field = QQ) -> TriVector:
    """x238 + x167 - x247 - x356 - x148 - x158 (1-based indices)."""
    terms = {(2, 3, 8): 1, (1, 6, 7): 1, (2, 4, 7): -1, (3, 5, 6): -1, (1, 4, 8): -1, (1, 5, 8): -1}
    return TriVector.from_dict(8, field, {tuple(i - 1 for i in t): c for t, c in terms.items()})


def decomposable_form(i: int, j: int, k: int, field: Field = QQ, dim: int = 8) -> TriVector:
    """e_i* ^ e_j* ^ e_k* (0-based)."""
    return TriVector.from_dict(dim, field, {(i, j, k): 1})


def is_isotropic(lam: TriVector, U: Subspace) -> bool:
    if U.ambient_dim != lam.dim:
        raise InvalidInput("subspace and form live in different dimensions")
    return all(not lam.eval(*t) for t in itertools.combinations(U.basis, 3))


def stabilizer_dim(lam: TriVector) -> int:
    """dim {X in gl(d) : X . lambda = 0}, a (C(d,3)) x d^2 linear system.

    Unknown X[a][b] sends e_b to sum_a X[a][b] e_a.  The equation at the
    sorted triple (i, j, k) is
    sum_a X[a][i] l(a,j,k) + X[a][j] l(i,a,k) + X[a][k] l(i,j,a) = 0.
    """
    d = lam.dim
    a = lam.dense()
    p = lam.field.p
    rows = []
    for i, j, k in itertools.combinations(range(d), 3):
        row = [0] * (d * d)
        for x in range(d):
            row[x * d + i] += a[x][j][k]
            row[x * d + j] += a[i][x][k]
            row[x * d + k] += a[i][j][x]
        rows.append(row if p is None else [x % p for x in row])
    return d * d - len(_rref_values(rows, p))


def adjoint_matrices(lie_basis: Sequence[Matrix], coords) -> list[list]:
    """ad(X) as raw-value matrices in the given basis; ``coords`` maps a matrix to coordinates."""
    n = len(lie_basis)
    out = []
    for X in lie_basis:
        cols = [[c.value for c in coords(bracket(X, Y))] for Y in lie_basis]
        out.append([[cols[b][r] for b in range(n)] for r in range(n)])
    return out


def invariant_space(lie_basis: Sequence[Matrix], coords, field: Field) -> list[TriVector]:
    """Basis of the 3-forms killed by ad(X) for every X in the Lie algebra.

    Unknowns are the C(n,3) coefficients; each (generator, sorted triple)
    gives one equation (X.l)(e_i, e_j, e_k) = 0.
    """
    n = len(lie_basis)
    triples = list(itertools.combinations(range(n), 3))
    index = {t: c for c, t in enumerate(triples)}
    rows = []
    for ad in adjoint_matrices(lie_basis, coords):
        for i, j, k in triples:
            row = [0] * len(triples)
            # (X.l)(e_i,e_j,e_k) = -l(ad e_i, e_j, e_k) - ... ; ad e_b = sum_a ad[a][b] e_a
            for slot, base in enumerate((i, j, k)):
                for a_ in range(n):
                    c = ad[a_][base]
                    if not c:
                        continue
                    t = [i, j, k]
                    t[slot] = a_
                    st, s = _sign_sort(*t)
                    if s:
                        row[index[st]] -= s * c
            rows.append(row)
    A = Matrix(rows, field)
    K = kernel(A)
    return [TriVector.from_dict(n, field, {t: v[index[t]] for t in triples}) for v in K.basis]


def invariant_space_dim(field: Field = QQ) -> tuple[int, list[TriVector]]:
    """Dimension and basis of SL(3)-invariant 3-forms on sl(3) (characteristic 0)."""
    if field.p is not None:
        raise BadCharacteristic("the invariant count is a characteristic-0 statement")
    basis = invariant_space(sl3_basis(field), to_coords, field)
    return len(basis), basis


def sl2_basis(field: Field) -> list[Matrix]:
    return [Matrix([[0, 1], [0, 0]], field), Matrix([[0, 0], [1, 0]], field), Matrix([[1, 0], [0, -1]], field)]


def sl2_coords(M: Matrix) -> tuple:
    return (M[0, 1], M[1, 0], M[0, 0])


# representation-theoretic bookkeeping: the decomposition of the third
# exterior power of sl(3) into irreducibles has these dimensions
LAMBDA3_SL3_SUMMANDS = (27, 10, 10, 8, 1)
