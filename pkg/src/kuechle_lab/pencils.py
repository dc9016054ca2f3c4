"""Pencils of skew-forms on a 2n-space and their common Lagrangian subspaces.

A pencil is stored by the two members ``A`` (at (u:v) = (1:0)) and ``B``
(at (0:1)); the member at (u:v) is ``u*A + v*B``.  When the pencil is
smooth, the kernels K_1, ..., K_n of its degenerate members split V and a
common Lagrangian U corresponds to the tuple of lines (U & K_i).
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field as dc_field

import numpy as np

from . import kernels
from .errors import (
    BadDimension,
    DegenerateQuadric,
    InvalidInput,
    InvariantViolation,
    LineNotInKernel,
    NotLagrangian,
    NotSkew,
    NotSmooth,
    TooLarge,
    ZeroForm,
)
from .linalg import (
    Matrix,
    Subspace,
    enumerate_subspaces,
    gaussian_binomial,
    kernel,
    pfaffian_generic,
    projective_points,
    subspace_intersect,
    subspace_sum,
)
from .scalars import BinaryForm, Field, ProjPoint1, binary_form_roots, projective_line

MAX_ENUMERATION = 250_000


@dataclass(frozen=True)
class SkewPencil:
    A: Matrix
    B: Matrix

    def __post_init__(self):
        if self.A.field != self.B.field:
            raise InvalidInput("pencil members over different fields")
        if self.A.shape != self.B.shape:
            raise InvalidInput("pencil members of different sizes")
        if not (self.A.is_skew() and self.B.is_skew()):
            raise NotSkew("pencil members must be skew with zero diagonal")
        if self.A.rows % 2 or self.A.rows == 0:
            raise InvalidInput("pencil lives on an even-dimensional space")
        if Matrix([_flat(self.A), _flat(self.B)], self.A.field).rank() < 2:
            raise InvalidInput("A and B are linearly dependent, not a pencil")

    @property
    def field(self) -> Field:
        return self.A.field

    @property
    def n(self) -> int:
        return self.A.rows // 2

    @property
    def size(self) -> int:
        return self.A.rows

    def member(self, u, v) -> Matrix:
        return self.A.scale(u) + self.B.scale(v)

    def conjugate(self, P: Matrix) -> SkewPencil:
        """The pencil P^T (uA + vB) P."""
        return SkewPencil(P.T @ self.A @ P, P.T @ self.B @ P)

    def to_json(self) -> dict:
        return {"field": self.field.to_json(), "A": self.A.to_json(), "B": self.B.to_json()}

    @classmethod
    def from_json(cls, obj, field: Field | None = None) -> SkewPencil:
        if not isinstance(obj, dict) or "A" not in obj or "B" not in obj:
            raise InvalidInput("pencil JSON needs 'A' and 'B'")
        if field is None:
            field = Field.from_json(obj.get("field", {"field": "Q"}))
        return cls(Matrix.from_json(obj["A"], field), Matrix.from_json(obj["B"], field))


def _flat(M: Matrix):
    return [x for row in M.entries for x in row]


_J = ((0, 1), (-1, 0))


def standard_pencil(a_values, field: Field) -> SkewPencil:
    """u * diag(J, ..., J) + v * diag(-a_1 J, ..., -a_n J), J = [[0, 1], [-1, 0]]."""
    A = Matrix.block_diag([Matrix(_J, field)] * len(a_values))
    B = Matrix.block_diag([Matrix(_J, field).scale(-field(a)) for a in a_values])
    return SkewPencil(A, B)


def block_pencil(blocks, field: Field) -> SkewPencil:
    """Pencil with 2x2 blocks alpha_i * J in A and beta_i * J in B."""
    A = Matrix.block_diag([Matrix(_J, field).scale(al) for al, _ in blocks])
    B = Matrix.block_diag([Matrix(_J, field).scale(be) for _, be in blocks])
    return SkewPencil(A, B)


# --------------------------------------------------------------------------
# discriminant analysis


def pfaffian_form(P: SkewPencil) -> BinaryForm:
    """pf(u*A + v*B) as a binary form of degree n.

    Expanded symbolically; interpolation would need n + 1 points of P^1,
    which small prime fields do not have.
    """
    F = P.field
    lin = [
        [BinaryForm((P.A.entries[i][j], P.B.entries[i][j]), F) for j in range(P.size)]
        for i in range(P.size)
    ]
    return pfaffian_generic(lambda i, j: lin[i][j], P.size, BinaryForm.constant(1, F))


@dataclass(frozen=True)
class SmoothnessReport:
    pencil: SkewPencil
    verdict: str  # smooth | singular | non_split
    pfaffian_form: BinaryForm
    roots: tuple  # (ProjPoint1, multiplicity)
    kernels: tuple  # Subspace per distinct root, aligned with roots
    failure_reasons: tuple = dc_field(default=())

    @property
    def failure_reason(self) -> str | None:
        return self.failure_reasons[0] if self.failure_reasons else None

    @property
    def is_smooth(self) -> bool:
        return self.verdict == "smooth"

    def to_json(self) -> dict:
        return {
            "verdict": self.verdict,
            "field": self.pencil.field.to_json(),
            "n": self.pencil.n,
            "pfaffian_form": self.pfaffian_form.to_json(),
            "roots": [{"point": pt.to_json(), "multiplicity": m} for pt, m in self.roots],
            "kernels": [K.to_json() for K in self.kernels],
            "failure_reason": self.failure_reason,
            "failure_reasons": list(self.failure_reasons),
        }


def analyze(P: SkewPencil) -> SmoothnessReport:
    """Check that the discriminant meets the pencil in n simple points whose
    kernels are 2-dimensional and span V as a direct sum.

    Every failed condition is listed, in check order: roots, kernels,
    direct sum.  A double root with a 4-dimensional kernel therefore reports
    both ``RepeatedRoot`` and ``FatKernel(i)``.
    """
    f = pfaffian_form(P)
    if f.is_zero():
        return SmoothnessReport(P, "singular", f, (), (), ("LineInDiscriminant",))
    rr = binary_form_roots(f)
    reasons = []
    if not rr.splits:
        reasons.append("NonSplit")
    if any(m > 1 for _, m in rr.roots):
        reasons.append("RepeatedRoot")
    kers = tuple(kernel(P.member(pt.u, pt.v)) for pt, _ in rr.roots)
    for i, K in enumerate(kers, start=1):
        if K.dim != 2:
            reasons.append(f"FatKernel({i})")
    # kernels at roots outside the base field are missing, so the direct
    # sum test only means something once the form splits
    total = Subspace.zero(P.size, P.field)
    for K in kers:
        total = subspace_sum(total, K)
    if rr.splits and (sum(K.dim for K in kers) != P.size or total.dim != P.size):
        reasons.append("NotDirectSum")
    if any(r != "NonSplit" for r in reasons):
        verdict = "singular"
    elif reasons:
        verdict = "non_split"
    else:
        verdict = "smooth"
    return SmoothnessReport(P, verdict, f, rr.roots, kers, tuple(reasons))


def generic_member(P: SkewPencil) -> tuple | None:
    """First nondegenerate member, scanning (1:0), (0:1), (1:1), then (1:a).

    Returns ``((u, v), matrix)`` or None if every member over the base field
    is degenerate (possible over small prime fields).
    """
    F = P.field
    cands = [(F.one, F.zero), (F.zero, F.one), (F.one, F.one)]
    if F.p is not None:
        cands += [(F.one, a) for a in F.elements() if a not in (0, 1)]
    else:
        cands += [(F.one, F(a)) for a in range(2, 2 * P.n + 3)]
    f = pfaffian_form(P)
    for u, v in cands:
        if f(u, v):
            return (u, v), P.member(u, v)
    return None


# --------------------------------------------------------------------------
# standard form


@dataclass(frozen=True)
class StandardForm:
    """Basis change P with P^T A P, P^T B P block diagonal.

    Block i is alpha_i J for A and beta_i J for B.  With alpha_i = 1 the B
    block is -a_i J and ``a_values[i] = a_i``; a block whose root is (1:0)
    has alpha_i = 0, beta_i = 1 and ``a_values[i] = None``.
    """

    basis_change: Matrix
    a_values: tuple
    block_roots: tuple  # ProjPoint1 per block

    def to_json(self) -> dict:
        return {
            "basis_change": self.basis_change.to_json(),
            "a_values": [None if a is None else a.to_text() for a in self.a_values],
            "block_roots": [r.to_json() for r in self.block_roots],
        }


def _form(M: Matrix, x, y):
    return sum((a * b for a, b in zip(x, M.apply(y))), M.field.zero)


def standard_form(P: SkewPencil, report: SmoothnessReport | None = None) -> StandardForm:
    report = report or analyze(P)
    if not report.is_smooth:
        raise NotSmooth(f"pencil is {report.verdict}: {', '.join(report.failure_reasons)}")
    F = P.field
    # blocks ordered by the pivot columns of the kernels' canonical bases
    order = sorted(range(len(report.kernels)), key=lambda i: report.kernels[i].pivots)
    cols, a_values, roots = [], [], []
    for i in order:
        k1, k2 = report.kernels[i].basis
        alpha, beta = _form(P.A, k1, k2), _form(P.B, k1, k2)
        if alpha:
            scale = alpha.inverse()
            a_values.append(-beta / alpha)
        elif beta:
            scale = beta.inverse()
            a_values.append(None)
        else:
            raise InvariantViolation(f"kernel K_{i + 1} is isotropic for the whole pencil")
        cols += [k1, tuple(x * scale for x in k2)]
        roots.append(report.roots[i][0])
    Pmat = Matrix([[c[r] for c in cols] for r in range(P.size)], F)
    sf = StandardForm(Pmat, tuple(a_values), tuple(roots))
    _check_standard(P, sf)
    return sf


def _check_standard(P: SkewPencil, sf: StandardForm):
    F = P.field
    blocks_A = []
    for a in sf.a_values:
        if a is None:
            blocks_A.append((0, 1))
        else:
            blocks_A.append((1, -a))
    expected = block_pencil(blocks_A, F)
    got = P.conjugate(sf.basis_change)
    if got.A != expected.A or got.B != expected.B:
        raise InvariantViolation("basis change does not produce the block-diagonal form")


# --------------------------------------------------------------------------
# M_lambda = P(K_1) x ... x P(K_n)


def _isotropic(M: Matrix, U: Subspace) -> bool:
    return all(not _form(M, x, y) for x, y in itertools.combinations(U.basis, 2))


def split_lagrangian(report: SmoothnessReport, U: Subspace) -> list[Subspace]:
    """U -> (U & K_1, ..., U & K_n)."""
    if not report.is_smooth:
        raise NotSmooth("split_lagrangian needs a smooth pencil")
    P = report.pencil
    if U.ambient_dim != P.size or U.dim != P.n:
        raise BadDimension(f"need an {P.n}-dimensional subspace of a {P.size}-space")
    if not (_isotropic(P.A, U) and _isotropic(P.B, U)):
        raise NotLagrangian("subspace is not isotropic for the whole pencil")
    lines = [subspace_intersect(U, K) for K in report.kernels]
    if any(L.dim != 1 for L in lines):
        raise InvariantViolation("a common Lagrangian meets some kernel in dim != 1")
    return lines


def assemble_lagrangian(report: SmoothnessReport, lines) -> Subspace:
    """(l_1, ..., l_n) with l_i in K_i -> l_1 + ... + l_n."""
    if not report.is_smooth:
        raise NotSmooth("assemble_lagrangian needs a smooth pencil")
    P = report.pencil
    if len(lines) != P.n:
        raise BadDimension(f"need {P.n} lines")
    total = Subspace.zero(P.size, P.field)
    for i, (L, K) in enumerate(zip(lines, report.kernels), start=1):
        if L.dim != 1 or not K.contains_subspace(L):
            raise LineNotInKernel(i)
        total = subspace_sum(total, L)
    if total.dim != P.n or not (_isotropic(P.A, total) and _isotropic(P.B, total)):
        raise InvariantViolation("assembled subspace is not a common Lagrangian")
    return total


def line_tuples(report: SmoothnessReport):
    """Every tuple of lines (l_1, ..., l_n), l_i in P(K_i), over F_p."""
    P = report.pencil
    per_kernel = []
    for K in report.kernels:
        k1, k2 = K.basis
        per_kernel.append(
            [
                Subspace.span([[pt.u * x + pt.v * y for x, y in zip(k1, k2)]], P.size, P.field)
                for pt in projective_line(P.field)
            ]
        )
    return itertools.product(*per_kernel)


@dataclass
class EnumerationResult:
    count: int
    verdict: str
    expected_if_smooth: int
    lagrangians: list | None = None

    def to_json(self) -> dict:
        out = {
            "count": self.count,
            "verdict": self.verdict,
            "expected_if_smooth": self.expected_if_smooth,
        }
        if self.lagrangians is not None:
            out["lagrangians"] = [U.to_json() for U in self.lagrangians]
        return out


def enumerate_lagrangians(P: SkewPencil, with_list: bool = False) -> EnumerationResult:
    """Brute-force scan of Gr(n, 2n)(F_q) for common Lagrangians."""
    q = P.field.p
    if q is None:
        raise InvalidInput("enumeration needs a prime field")
    if P.size > 8 or q > 5:
        raise TooLarge("enumeration is limited to 2n <= 8 and q <= 5")
    total = gaussian_binomial(P.size, P.n, q)
    if total > MAX_ENUMERATION:
        raise TooLarge(f"Gr({P.n},{P.size})(F_{q}) has {total} points")
    bases = np.array(list(enumerate_subspaces(P.n, P.size, q)), dtype=np.int64)
    forms = np.array([P.A.values(), P.B.values()], dtype=np.int64)
    mask = kernels.bilinear_isotropic_mask(bases, forms, q)
    report = analyze(P)
    subs = None
    if with_list:
        subs = [Subspace.span(b.tolist(), P.size, P.field) for b in bases[mask]]
    return EnumerationResult(int(mask.sum()), report.verdict, (q + 1) ** P.n, subs)


# --------------------------------------------------------------------------
# hyperplane sections: multilinear forms on (P^1)^n


@dataclass(frozen=True)
class MultilinearForm:
    """s in K_1^v (x) ... (x) K_n^v.

    ``coeffs[b]`` multiplies prod_i x_i[bit i of b]; bit 0 belongs to the
    first factor.
    """

    n: int
    coeffs: tuple
    field: Field

    def __post_init__(self):
        if len(self.coeffs) != 2**self.n:
            raise InvalidInput(f"need 2^{self.n} coefficients")

    def __call__(self, points) -> object:
        total = self.field.zero
        for b, c in enumerate(self.coeffs):
            if not c:
                continue
            term = c
            for i, pt in enumerate(points):
                term = term * (pt[(b >> i) & 1])
            total = total + term
        return total

    def to_json(self) -> dict:
        return {"n": self.n, "field": self.field.to_json(), "coeffs": [c.to_text() for c in self.coeffs]}


def random_multilinear_form(n: int, field: Field, rng: random.Random) -> MultilinearForm:
    return MultilinearForm(n, tuple(field(rng.randrange(field.p)) for _ in range(2**n)), field)


@dataclass
class D3Counts:
    count_X: int
    count_Z: int
    count_base: int
    q: int

    @property
    def identity_holds(self) -> bool:
        return self.count_X == self.count_base + self.q * self.count_Z

    def to_json(self) -> dict:
        return {
            "count_X": self.count_X,
            "count_Z": self.count_Z,
            "count_base": self.count_base,
            "q": self.q,
            "identity_holds": self.identity_holds,
        }


def d3_point_counts(s: MultilinearForm) -> D3Counts:
    """Count X = {s = 0} in (P^1)^n and Z in (P^1)^(n-1) over F_q.

    Z is where both sections s(., e_0) and s(., e_1) of the last factor vanish.
    """
    q = s.field.p
    if q is None:
        raise InvalidInput("point counts need a prime field")
    if s.n > 4 or q > 5 or s.n < 2:
        raise TooLarge("d3 counts are limited to 2 <= n <= 4, q <= 5")
    line = [(pt.u, pt.v) for pt in projective_line(s.field)]
    F = s.field
    e0, e1 = (F.one, F.zero), (F.zero, F.one)
    count_X = sum(1 for pts in itertools.product(line, repeat=s.n) if not s(pts))
    count_Z = 0
    for pts in itertools.product(line, repeat=s.n - 1):
        if not s(pts + (e0,)) and not s(pts + (e1,)):
            count_Z += 1
    return D3Counts(count_X, count_Z, (q + 1) ** (s.n - 1), q)


# --------------------------------------------------------------------------
# (b4): lines on a quadric in P^5 vs the (1,1) divisor in P^3 x P^3


def hyperbolic_quadric(field: Field, m: int = 6) -> Matrix:
    """x1*x2 + x3*x4 + ... as a symmetric matrix in the upper-triangle convention."""
    vals = [[0] * m for _ in range(m)]
    for i in range(0, m, 2):
        vals[i][i + 1] = vals[i + 1][i] = 1
    return Matrix(vals, field)


def quadric_polar(Q: Matrix) -> Matrix:
    """Polar bilinear form of q(x) = sum_{i<=j} Q_ij x_i x_j (diagonal doubled)."""
    return Q + Matrix.diag([Q[i, i] for i in range(Q.rows)], Q.field)


def quadric_value(Q: Matrix, x) -> object:
    m = Q.rows
    return sum((Q[i, j] * x[i] * x[j] for i in range(m) for j in range(i, m)), Q.field.zero)


@dataclass
class B4LineCount:
    q: int
    lines_on_quadric: int
    flag_divisor_count: int

    @property
    def equal(self) -> bool:
        return self.lines_on_quadric == self.flag_divisor_count

    def to_json(self) -> dict:
        return {
            "q": self.q,
            "lines_on_quadric": self.lines_on_quadric,
            "flag_divisor_count": self.flag_divisor_count,
            "equal": self.equal,
        }


def b4_line_count_check(Q: Matrix) -> B4LineCount:
    """Lines on the quadric {q = 0} in P^5(F_q) against incident pairs in P^3 x P^3.

    Q is symmetric and encodes q(x) = sum_{i<=j} Q_ij x_i x_j, which
    represents every quadratic form, characteristic 2 included.
    """
    q = Q.field.p
    if q is None:
        raise InvalidInput("line counts need a prime field")
    if q > 3:
        raise TooLarge("b4 line counts are limited to q <= 3")
    if Q.shape != (6, 6) or not Q.is_symmetric():
        raise InvalidInput("need a symmetric 6x6 matrix")
    if quadric_polar(Q).rank() < 6:
        raise DegenerateQuadric("the quadric is degenerate")
    bases = np.array(list(enumerate_subspaces(2, 6, q)), dtype=np.int64)
    mask = kernels.quadratic_isotropic_mask(bases, np.array(Q.values(), dtype=np.int64), q)
    pts = list(projective_points(4, q))
    flags = sum(1 for x in pts for h in pts if sum(a * b for a, b in zip(x, h)) % q == 0)
    return B4LineCount(q, int(mask.sum()), flags)
