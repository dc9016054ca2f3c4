"""Exact dense linear algebra over a :class:`~kuechle_lab.scalars.Field`.

Elimination runs on raw values (Fractions over Q, ints mod p) and only the
results are wrapped back into field elements.  Subspaces are stored by
their reduced row-echelon basis, so equal subspaces compare equal.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

from .errors import AmbientMismatch, DegenerateForm, FieldMismatch, InvalidInput, NotSkew
from .scalars import Field, FieldElem


class Matrix:
    """Immutable rectangular matrix of field elements."""

    __slots__ = ("entries", "rows", "cols", "field")

    def __init__(self, entries: Sequence[Sequence], field: Field, cols: int | None = None):
        rows = tuple(tuple(field(x) for x in row) for row in entries)
        if cols is None:
            if not rows:
                raise InvalidInput("empty matrix needs an explicit column count")
            cols = len(rows[0])
        if any(len(r) != cols for r in rows):
            raise InvalidInput("ragged matrix")
        self.entries = rows
        self.rows = len(rows)
        self.cols = cols
        self.field = field

    @classmethod
    def _from_values(cls, values, field: Field, cols: int) -> Matrix:
        obj = object.__new__(cls)
        obj.entries = tuple(tuple(FieldElem._make(x, field) for x in row) for row in values)
        obj.rows = len(obj.entries)
        obj.cols = cols
        obj.field = field
        return obj

    @classmethod
    def identity(cls, n: int, field: Field) -> Matrix:
        return cls([[int(i == j) for j in range(n)] for i in range(n)], field)

    @classmethod
    def zeros(cls, r: int, c: int, field: Field) -> Matrix:
        return cls([[0] * c for _ in range(r)], field, cols=c)

    @classmethod
    def diag(cls, values, field: Field) -> Matrix:
        n = len(values)
        return cls([[values[i] if i == j else 0 for j in range(n)] for i in range(n)], field)

    @classmethod
    def block_diag(cls, blocks: Sequence[Matrix]) -> Matrix:
        field = blocks[0].field
        n = sum(b.rows for b in blocks)
        out = [[field.zero] * n for _ in range(n)]
        off = 0
        for b in blocks:
            for i in range(b.rows):
                for j in range(b.cols):
                    out[off + i][off + j] = b.entries[i][j]
            off += b.rows
        return cls(out, field)

    # -- access ---------------------------------------------------------

    def __getitem__(self, ij) -> FieldElem:
        i, j = ij
        return self.entries[i][j]

    def values(self) -> list[list]:
        return [[x.value for x in row] for row in self.entries]

    def row(self, i: int) -> tuple:
        return self.entries[i]

    def col(self, j: int) -> tuple:
        return tuple(row[j] for row in self.entries)

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    @property
    def T(self) -> Matrix:
        return Matrix._from_values(
            [[self.entries[i][j].value for i in range(self.rows)] for j in range(self.cols)],
            self.field,
            self.rows,
        )

    # -- arithmetic -----------------------------------------------------

    def _check(self, other: Matrix):
        if other.field != self.field:
            raise FieldMismatch(f"{self.field} vs {other.field}")

    def _wrap(self, values, cols):
        p = self.field.p
        if p is not None:
            values = [[x % p for x in row] for row in values]
        return Matrix._from_values(values, self.field, cols)

    def __add__(self, other: Matrix) -> Matrix:
        self._check(other)
        if self.shape != other.shape:
            raise InvalidInput("shape mismatch")
        return self._wrap(
            [[a.value + b.value for a, b in zip(r, s)] for r, s in zip(self.entries, other.entries)],
            self.cols,
        )

    def __neg__(self) -> Matrix:
        return self._wrap([[-a.value for a in r] for r in self.entries], self.cols)

    def __sub__(self, other: Matrix) -> Matrix:
        return self + (-other)

    def __matmul__(self, other: Matrix) -> Matrix:
        self._check(other)
        if self.cols != other.rows:
            raise InvalidInput(f"cannot multiply {self.shape} by {other.shape}")
        a = self.values()
        bt = list(zip(*other.values())) if other.rows else [()] * other.cols
        out = [[sum(x * y for x, y in zip(r, c)) for c in bt] for r in a]
        return self._wrap(out, other.cols)

    def scale(self, c) -> Matrix:
        c = self.field(c).value
        return self._wrap([[c * a.value for a in r] for r in self.entries], self.cols)

    def apply(self, vec: Sequence) -> tuple:
        """Matrix times column vector."""
        vec = [self.field(x).value for x in vec]
        p = self.field.p
        out = []
        for r in self.entries:
            s = sum(a.value * x for a, x in zip(r, vec))
            out.append(FieldElem._make(s % p if p else s, self.field))
        return tuple(out)

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.field == other.field and self.cols == other.cols and self.entries == other.entries

    def __hash__(self):
        return hash((self.entries, self.cols))

    def __repr__(self):
        body = "; ".join(" ".join(str(x) for x in r) for r in self.entries)
        return f"Matrix[{self.field}]({body})"

    # -- predicates -----------------------------------------------------

    def is_square(self) -> bool:
        return self.rows == self.cols

    def is_symmetric(self) -> bool:
        return self.is_square() and all(
            self.entries[i][j] == self.entries[j][i] for i in range(self.rows) for j in range(i)
        )

    def is_skew(self) -> bool:
        """A^T = -A and a zero diagonal (the latter matters in characteristic 2)."""
        if not self.is_square():
            return False
        for i in range(self.rows):
            if self.entries[i][i]:
                return False
            for j in range(i):
                if self.entries[i][j] != -self.entries[j][i]:
                    return False
        return True

    def is_zero(self) -> bool:
        return not any(x for row in self.entries for x in row)

    def trace(self) -> FieldElem:
        t = self.field.zero
        for i in range(min(self.rows, self.cols)):
            t = t + self.entries[i][i]
        return t

    def rank(self) -> int:
        return len(_rref_values(self.values(), self.field.p))

    # -- serialization ---------------------------------------------------

    def to_json(self) -> dict:
        return {
            "rows": self.rows,
            "cols": self.cols,
            "entries": [[x.to_text() for x in r] for r in self.entries],
        }

    @classmethod
    def from_json(cls, obj, field: Field) -> Matrix:
        if isinstance(obj, list):
            return cls([[field.parse(x) for x in r] for r in obj], field)
        if not isinstance(obj, dict) or "entries" not in obj:
            raise InvalidInput("matrix JSON needs 'entries'")
        entries = obj["entries"]
        if not isinstance(entries, list) or not all(isinstance(r, list) for r in entries):
            raise InvalidInput("matrix 'entries' must be a list of rows")
        cols = obj.get("cols")
        m = cls([[field.parse(x) for x in r] for r in entries], field, cols=cols)
        if "rows" in obj and obj["rows"] != m.rows:
            raise InvalidInput("declared row count does not match entries")
        return m


# --------------------------------------------------------------------------
# elimination on raw values


def _rref_values(mat: list[list], p: int | None) -> list[int]:
    """Reduce ``mat`` in place to reduced row-echelon form; return pivot columns.

    Zero rows end up at the bottom.  Rows are assumed mutable lists.
    """
    nrows = len(mat)
    if nrows == 0:
        return []
    ncols = len(mat[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pr = None
        for i in range(r, nrows):
            if mat[i][c]:
                pr = i
                break
        if pr is None:
            continue
        mat[r], mat[pr] = mat[pr], mat[r]
        row = mat[r]
        if p is None:
            inv = 1 / Fraction(row[c])
            row = [x * inv if x else x for x in row]
        else:
            inv = pow(row[c], -1, p)
            row = [x * inv % p for x in row]
        mat[r] = row
        nz = [j for j in range(c, ncols) if row[j]]
        for i in range(nrows):
            if i == r:
                continue
            f = mat[i][c]
            if not f:
                continue
            other = mat[i]
            if p is None:
                for j in nz:
                    other[j] = other[j] - f * row[j]
            else:
                for j in nz:
                    other[j] = (other[j] - f * row[j]) % p
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return pivots


def rref(A: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row-echelon form (zero rows dropped) and pivot columns."""
    vals = A.values()
    piv = _rref_values(vals, A.field.p)
    return Matrix._from_values(vals[: len(piv)], A.field, A.cols), piv


def rank(A: Matrix) -> int:
    return A.rank()


def det(A: Matrix) -> FieldElem:
    """Determinant by Gaussian elimination."""
    if not A.is_square():
        raise InvalidInput("determinant of a non-square matrix")
    p = A.field.p
    m = A.values()
    n = len(m)
    d = Fraction(1) if p is None else 1
    for c in range(n):
        pr = next((i for i in range(c, n) if m[i][c]), None)
        if pr is None:
            return A.field.zero
        if pr != c:
            m[c], m[pr] = m[pr], m[c]
            d = -d
        piv = m[c][c]
        d = d * piv
        inv = (1 / Fraction(piv)) if p is None else pow(piv, -1, p)
        for i in range(c + 1, n):
            f = m[i][c]
            if f:
                f = f * inv
                row = m[c]
                if p is None:
                    m[i] = [x - f * y for x, y in zip(m[i], row)]
                else:
                    m[i] = [(x - f * y) % p for x, y in zip(m[i], row)]
    return A.field(d)


def adjugate3(C: Matrix) -> Matrix:
    """Classical adjoint of a 3x3 matrix, adj(C) @ C = det(C) * I."""
    if C.shape != (3, 3):
        raise InvalidInput("adjugate3 needs a 3x3 matrix")
    a = C.values()

    def cof(i, j):
        r = [x for x in range(3) if x != i]
        c = [y for y in range(3) if y != j]
        m = a[r[0]][c[0]] * a[r[1]][c[1]] - a[r[0]][c[1]] * a[r[1]][c[0]]
        return m if (i + j) % 2 == 0 else -m

    # adj = transpose of the cofactor matrix
    vals = [[cof(j, i) for j in range(3)] for i in range(3)]
    if C.field.p is not None:
        vals = [[x % C.field.p for x in r] for r in vals]
    return Matrix._from_values(vals, C.field, 3)


# --------------------------------------------------------------------------
# Pfaffians


def pfaffian_generic(entry, m: int, one):
    """Pfaffian of the m x m skew array given by ``entry(i, j)`` (i < j).

    First-row expansion with memoization on index subsets; only ring
    operations are used, so it works for field elements and for polynomial
    entries alike.  Convention: pf([[0, 1], [-1, 0]]) = 1.
    """
    if m % 2:
        return one - one
    cache = {}

    def pf(idx: tuple):
        if not idx:
            return one
        hit = cache.get(idx)
        if hit is not None:
            return hit
        first, rest = idx[0], idx[1:]
        total = None
        for k, j in enumerate(rest):
            a = entry(first, j)
            sub = pf(rest[:k] + rest[k + 1 :])
            term = a * sub
            if k % 2:
                term = -term
            total = term if total is None else total + term
        cache[idx] = total
        return total

    return pf(tuple(range(m)))


def pfaffian(A: Matrix) -> FieldElem:
    if not A.is_skew():
        raise NotSkew("pfaffian needs a skew-symmetric matrix with zero diagonal")
    if A.rows % 2:
        return A.field.zero
    e = A.entries
    return pfaffian_generic(lambda i, j: e[i][j], A.rows, A.field.one)


# --------------------------------------------------------------------------
# subspaces


class Subspace:
    """A linear subspace stored by its reduced row-echelon basis."""

    __slots__ = ("ambient_dim", "field", "basis", "pivots")

    def __init__(self, ambient_dim: int, field: Field, basis: tuple, pivots: tuple):
        self.ambient_dim = ambient_dim
        self.field = field
        self.basis = basis  # tuple of tuples of FieldElem, canonical
        self.pivots = pivots

    @classmethod
    def span(cls, vectors: Iterable[Sequence], ambient_dim: int, field: Field) -> Subspace:
        vals = []
        for v in vectors:
            if len(v) != ambient_dim:
                raise AmbientMismatch(f"vector of length {len(v)} in {ambient_dim}-space")
            vals.append([field(x).value for x in v])
        return cls._from_values(vals, ambient_dim, field)

    @classmethod
    def _from_values(cls, vals, ambient_dim, field):
        piv = _rref_values(vals, field.p)
        basis = tuple(tuple(FieldElem._make(x, field) for x in row) for row in vals[: len(piv)])
        return cls(ambient_dim, field, basis, tuple(piv))

    @classmethod
    def zero(cls, ambient_dim: int, field: Field) -> Subspace:
        return cls(ambient_dim, field, (), ())

    @classmethod
    def full(cls, ambient_dim: int, field: Field) -> Subspace:
        return cls.span(Matrix.identity(ambient_dim, field).entries, ambient_dim, field)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def basis_matrix(self) -> Matrix:
        return Matrix(self.basis, self.field, cols=self.ambient_dim)

    def basis_values(self) -> list[list]:
        return [[x.value for x in row] for row in self.basis]

    def contains(self, v: Sequence) -> bool:
        return subspace_sum(self, Subspace.span([v], self.ambient_dim, self.field)).dim == self.dim

    def contains_subspace(self, other: Subspace) -> bool:
        return subspace_sum(self, other).dim == self.dim

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return (
            self.field == other.field
            and self.ambient_dim == other.ambient_dim
            and self.basis == other.basis
        )

    def __hash__(self):
        return hash((self.ambient_dim, self.basis))

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim}, {self.field})"

    def to_json(self) -> dict:
        return {
            "ambient_dim": self.ambient_dim,
            "dim": self.dim,
            "basis": [[x.to_text() for x in r] for r in self.basis],
        }

    @classmethod
    def from_json(cls, obj, field: Field) -> Subspace:
        if isinstance(obj, dict) and "basis" in obj:
            rows = obj["basis"]
            m = obj.get("ambient_dim") or (len(rows[0]) if rows else None)
        elif isinstance(obj, dict) and "entries" in obj:
            rows = obj["entries"]
            m = obj.get("cols") or (len(rows[0]) if rows else None)
        elif isinstance(obj, list):
            rows = obj
            m = len(rows[0]) if rows else None
        else:
            raise InvalidInput("subspace JSON needs 'basis' rows")
        if m is None:
            raise InvalidInput("cannot infer ambient dimension of an empty basis")
        return cls.span([[field.parse(x) for x in r] for r in rows], m, field)


def _same_ambient(U: Subspace, W: Subspace):
    if U.ambient_dim != W.ambient_dim:
        raise AmbientMismatch(f"ambient dimensions {U.ambient_dim} and {W.ambient_dim}")
    if U.field != W.field:
        raise FieldMismatch(f"{U.field} vs {W.field}")


def kernel(A: Matrix) -> Subspace:
    """Right kernel {x : A x = 0}."""
    vals = A.values()
    piv = _rref_values(vals, A.field.p)
    free = [c for c in range(A.cols) if c not in piv]
    zero = 0 if A.field.p is not None else Fraction(0)
    basis = []
    for f in free:
        v = [zero] * A.cols
        v[f] = 1
        for r, c in enumerate(piv):
            v[c] = -vals[r][f]
        basis.append(v)
    if A.field.p is not None:
        basis = [[x % A.field.p for x in v] for v in basis]
    return Subspace._from_values(basis, A.cols, A.field)


def annihilator(U: Subspace) -> Subspace:
    """Linear functionals (as coordinate vectors) vanishing on U."""
    if U.dim == 0:
        return Subspace.full(U.ambient_dim, U.field)
    return kernel(U.basis_matrix())


def subspace_sum(U: Subspace, W: Subspace) -> Subspace:
    _same_ambient(U, W)
    return Subspace._from_values(U.basis_values() + W.basis_values(), U.ambient_dim, U.field)


def subspace_intersect(U: Subspace, W: Subspace) -> Subspace:
    _same_ambient(U, W)
    rows = annihilator(U).basis_values() + annihilator(W).basis_values()
    if not rows:
        return Subspace.full(U.ambient_dim, U.field)
    return kernel(Matrix._from_values(rows, U.field, U.ambient_dim))


def orth_complement(U: Subspace, B: Matrix) -> Subspace:
    """{x : B(x, u) = 0 for all u in U} where B(x, u) = x^T B u."""
    m = U.ambient_dim
    if B.shape != (m, m):
        raise AmbientMismatch(f"form of shape {B.shape} on a {m}-space")
    if B.rank() < m:
        raise DegenerateForm("the bilinear form is degenerate")
    if U.dim == 0:
        return Subspace.full(m, U.field)
    # B(x, u) = (B u) . x, so x is killed by the rows (B u)^T
    return kernel(U.basis_matrix() @ B.T)


def minors(rows: Sequence[Sequence[FieldElem]], m: int, field: Field) -> list[FieldElem]:
    """All maximal minors of an r x m matrix, columns in lexicographic order."""
    r = len(rows)
    vals = [[field(x).value for x in row] for row in rows]
    out = []
    for cols in itertools.combinations(range(m), r):
        sub = Matrix._from_values([[row[c] for c in cols] for row in vals], field, r)
        out.append(det(sub))
    return out


def projective_normalize(vec: Sequence[FieldElem]) -> tuple:
    """Scale so the first nonzero coordinate is 1."""
    for x in vec:
        if x:
            inv = x.inverse()
            return tuple(y * inv for y in vec)
    raise InvalidInput("the zero vector has no projective class")


def plucker(U: Subspace) -> tuple:
    """Normalized Plucker vector of U (lexicographic sorted column tuples)."""
    if U.dim == 0:
        raise InvalidInput("Plucker coordinates need dim >= 1")
    return projective_normalize(minors(U.basis, U.ambient_dim, U.field))


def proportional(a: Sequence[FieldElem], b: Sequence[FieldElem]) -> bool:
    """Projective equality of two nonzero vectors."""
    return projective_normalize(a) == projective_normalize(b)


# --------------------------------------------------------------------------
# enumeration over F_q


def gaussian_binomial(m: int, k: int, q: int) -> int:
    """Number of k-dimensional subspaces of F_q^m."""
    if k < 0 or k > m:
        return 0
    num = den = 1
    for i in range(k):
        num *= q ** (m - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


def enumerate_subspaces(k: int, m: int, p: int) -> Iterator[tuple]:
    """Reduced row-echelon bases of every k-subspace of F_p^m, as int rows.

    Order: pivot tuples lexicographically, then free entries in
    ``itertools.product`` order.  One representative per subspace.
    """
    for piv in itertools.combinations(range(m), k):
        pivset = set(piv)
        slots = [(r, c) for r, pc in enumerate(piv) for c in range(pc + 1, m) if c not in pivset]
        for vals in itertools.product(range(p), repeat=len(slots)):
            rows = [[0] * m for _ in range(k)]
            for r, pc in enumerate(piv):
                rows[r][pc] = 1
            for (r, c), x in zip(slots, vals):
                rows[r][c] = x
            yield tuple(tuple(r) for r in rows)


def projective_points(m: int, p: int) -> Iterator[tuple]:
    """Normalized representatives of P^{m-1}(F_p) (first nonzero coordinate 1)."""
    for (row,) in enumerate_subspaces(1, m, p):
        yield row


# --------------------------------------------------------------------------
# random sampling helpers (seeded by the caller)


def random_element(rng: random.Random, field: Field, bound: int = 5) -> FieldElem:
    if field.p is not None:
        return field(rng.randrange(field.p))
    return field(rng.randint(-bound, bound))


def random_matrix(rng: random.Random, r: int, c: int, field: Field, bound: int = 5) -> Matrix:
    return Matrix([[random_element(rng, field, bound) for _ in range(c)] for _ in range(r)], field)


def random_invertible(rng: random.Random, n: int, field: Field, bound: int = 5) -> Matrix:
    while True:
        g = random_matrix(rng, n, n, field, bound)
        if g.rank() == n:
            return g


def random_skew(rng: random.Random, n: int, field: Field, bound: int = 5) -> Matrix:
    vals = [[field.zero] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            x = random_element(rng, field, bound)
            vals[i][j] = x
            vals[j][i] = -x
    return Matrix(vals, field)


def random_symmetric(rng: random.Random, n: int, field: Field, bound: int = 5) -> Matrix:
    vals = [[field.zero] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            x = random_element(rng, field, bound)
            vals[i][j] = vals[j][i] = x
    return Matrix(vals, field)


def inverse(A: Matrix) -> Matrix:
    n = A.rows
    if not A.is_square():
        raise InvalidInput("inverse of a non-square matrix")
    aug = [row + [int(i == j) for j in range(n)] for i, row in enumerate(A.values())]
    if A.field.p is None:
        aug = [[Fraction(x) for x in row] for row in aug]
    piv = _rref_values(aug, A.field.p)
    if piv[:n] != list(range(n)):
        raise InvalidInput("matrix is singular")
    return Matrix._from_values([row[n:] for row in aug], A.field, n)
