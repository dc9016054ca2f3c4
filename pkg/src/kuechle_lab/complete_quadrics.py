"""Complete quadrics Y in P(S^2 W) x P(S^2 W^v), dim W = 3.

A point is a pair of nonzero symmetric 3x3 matrices (C, C') with
C @ C' = t * I.  GL(W) acts by

    g . (C, C') = (g C g^T, g^-T C' g^-1),

under which the subalgebra g(C, C') is conjugated by g, so ranks, orbit
labels and isotropy of phi are invariant.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import (
    BadCharacteristic,
    InvalidInput,
    NoAnnihilator,
    NotOnY,
    NotUnique,
    RankNotThree,
    TooLarge,
    Unclassifiable,
)
from .linalg import (
    Matrix,
    Subspace,
    adjugate3,
    det,
    enumerate_subspaces,
    inverse,
    kernel,
    orth_complement,
    plucker,
    projective_normalize,
    proportional,
    random_invertible,
    random_symmetric,
)
from .scalars import Field, QQ
from .trivectors import bracket, is_isotropic, to_coords, trace_form, trace_pairing_matrix


@dataclass(frozen=True)
class CQPoint:
    C: Matrix
    Cp: Matrix
    t: object

    @property
    def field(self) -> Field:
        return self.C.field

    def to_json(self) -> dict:
        return {
            "field": self.field.to_json(),
            "C": [[x.to_text() for x in r] for r in self.C.entries],
            "Cp": [[x.to_text() for x in r] for r in self.Cp.entries],
            "t": self.t.to_text(),
        }


def _flat(M: Matrix):
    return [x for r in M.entries for x in r]


def y_membership(C: Matrix, Cp: Matrix) -> CQPoint:
    for name, M in (("C", C), ("Cp", Cp)):
        if M.shape != (3, 3) or not M.is_symmetric():
            raise InvalidInput(f"{name} must be a symmetric 3x3 matrix")
        if M.is_zero():
            raise InvalidInput(f"{name} must be nonzero")
    prod = C @ Cp
    t = prod[0, 0]
    if prod != Matrix.identity(3, C.field).scale(t):
        raise NotOnY("C @ Cp is not a scalar matrix")
    return CQPoint(C, Cp, t)


def transport(g: Matrix, pt: CQPoint) -> CQPoint:
    gi = inverse(g)
    return y_membership(g @ pt.C @ g.T, gi.T @ pt.Cp @ gi)


def representatives(field: Field = QQ) -> dict:
    d = lambda *v: Matrix.diag(list(v), field)  # noqa: E731
    return {
        "Y0": y_membership(d(1, 1, 1), d(1, 1, 1)),
        "Y1": y_membership(d(1, 1, 0), d(0, 0, 1)),
        "Y2": y_membership(d(1, 0, 0), d(0, 1, 1)),
        "Y3": y_membership(d(1, 0, 0), d(0, 0, 1)),
    }


def orbit_classify(pt: CQPoint) -> str:
    rc, rcp = pt.C.rank(), pt.Cp.rank()
    adj_c, adj_cp = adjugate3(pt.C), adjugate3(pt.Cp)
    if rc == 3 and rcp == 3 and proportional(_flat(pt.Cp), _flat(adj_c)):
        return "Y0"
    if rc == 2 and rcp == 1 and proportional(_flat(pt.Cp), _flat(adj_c)):
        return "Y1"
    if rc == 1 and rcp == 2 and proportional(_flat(pt.C), _flat(adj_cp)):
        return "Y2"
    if rc == 1 and rcp == 1 and (pt.C @ pt.Cp).is_zero():
        return "Y3"
    raise Unclassifiable(f"ranks ({rc}, {rcp}) match no orbit")


# --------------------------------------------------------------------------
# the Lie subalgebra g = Im(c + c')


def _skew_basis(field: Field) -> list[Matrix]:
    out = []
    for i, j in ((0, 1), (0, 2), (1, 2)):
        vals = [[0] * 3 for _ in range(3)]
        vals[i][j], vals[j][i] = 1, -1
        out.append(Matrix(vals, field))
    return out


@dataclass(frozen=True)
class SubalgebraG:
    """3-dimensional subspace of the 9-dimensional space of 3x3 matrices."""

    space: Subspace

    @property
    def field(self) -> Field:
        return self.space.field

    def matrices(self) -> list[Matrix]:
        return [Matrix([row[3 * i : 3 * i + 3] for i in range(3)], self.field) for row in self.space.basis]

    def contains(self, M: Matrix) -> bool:
        return self.space.contains(_flat(M))

    def sl3_subspace(self) -> Subspace:
        return Subspace.span([to_coords(M) for M in self.matrices()], 8, self.field)

    def is_traceless(self) -> bool:
        return all(not M.trace() for M in self.matrices())

    def is_bracket_closed(self) -> bool:
        ms = self.matrices()
        return all(self.contains(bracket(a, b)) for a, b in itertools.combinations(ms, 2))

    def to_json(self) -> dict:
        return {"dim": self.space.dim, "basis": [[[x.to_text() for x in r] for r in M.entries] for M in self.matrices()]}


def g_subalgebra(pt: CQPoint) -> SubalgebraG:
    F = pt.field
    gens = [pt.C @ s for s in _skew_basis(F)] + [s @ pt.Cp for s in _skew_basis(F)]
    space = Subspace.span([_flat(M) for M in gens], 9, F)
    if space.dim != 3:
        raise RankNotThree(f"image of c + c' has dimension {space.dim}")
    g = SubalgebraG(space)
    if not g.is_traceless():
        raise RankNotThree("image of c + c' leaves sl(W)")
    return g


def _check_sl3_char(field: Field):
    if field.p in (2, 3):
        raise BadCharacteristic("orthogonal complements in sl(3) need characteristic not 2 or 3")


def phi(pt: CQPoint) -> Subspace:
    """g^perp inside sl(3) for the trace pairing, in the 8 basis coordinates."""
    _check_sl3_char(pt.field)
    g = g_subalgebra(pt)
    return orth_complement(g.sl3_subspace(), trace_pairing_matrix(pt.field))


def reconstruct_quadric(g: SubalgebraG) -> Matrix:
    """The unique symmetric q with xi^T q + q xi = 0 for all xi in g."""
    F = g.field
    sym = []
    for i, j in ((0, 0), (1, 1), (2, 2), (0, 1), (0, 2), (1, 2)):
        vals = [[0] * 3 for _ in range(3)]
        vals[i][j] = vals[j][i] = 1
        sym.append(Matrix(vals, F))
    # columns: image of each symmetric basis element, stacked over xi in g
    cols = []
    for S in sym:
        col = []
        for xi in g.matrices():
            col += _flat(xi.T @ S + S @ xi)
        cols.append(col)
    A = Matrix([[c[r] for c in cols] for r in range(len(cols[0]))], F)
    K = kernel(A)
    if K.dim != 1:
        raise NotUnique(K.dim)
    (v,) = K.basis
    out = Matrix.zeros(3, 3, F)
    for c, S in zip(v, sym):
        out = out + S.scale(c)
    return out


def annihilator_element(g: SubalgebraG, w, covector: bool = False) -> Matrix:
    """A nonzero xi in g with xi w = 0 (or w^T xi = 0 for a covector)."""
    F = g.field
    w = [F(x) for x in w]
    if not any(w):
        raise InvalidInput("w must be nonzero")
    ms = g.matrices()
    if covector:
        images = [[sum((w[r] * M[r, c] for r in range(3)), F.zero) for c in range(3)] for M in ms]
    else:
        images = [list(M.apply(w)) for M in ms]
    A = Matrix([[images[k][r] for k in range(3)] for r in range(3)], F)
    K = kernel(A)
    if K.dim == 0:
        raise NoAnnihilator("only the zero element annihilates w")
    coeffs = K.basis[0]
    xi = Matrix.zeros(3, 3, F)
    for c, M in zip(coeffs, ms):
        xi = xi + M.scale(c)
    return xi


# --------------------------------------------------------------------------
# sampling


def sample_point(orbit: str, field: Field, rng: random.Random) -> CQPoint:
    """A random point of the given orbit.

    Y0: random nondegenerate symmetric C with C' = adj(C); other orbits:
    the representative moved by a random g in GL(3).
    """
    bound = 4
    if orbit == "Y0":
        while True:
            C = random_symmetric(rng, 3, field, bound)
            if det(C):
                return y_membership(C, adjugate3(C))
    g = random_invertible(rng, 3, field, bound)
    return transport(g, representatives(field)[orbit])


# --------------------------------------------------------------------------
# point count over F_q


@dataclass
class YPointCount:
    q: int
    direct_count: int
    blowup_formula_count: int
    anomalies: list  # symmetric matrices C whose fibre size is unexpected

    @property
    def equal(self) -> bool:
        return self.direct_count == self.blowup_formula_count

    def to_json(self) -> dict:
        return {
            "q": self.q,
            "direct_count": self.direct_count,
            "blowup_formula_count": self.blowup_formula_count,
            "equal": self.equal,
            "anomalies": self.anomalies,
        }


def _proj_count(d: int, q: int) -> int:
    return (q ** (d + 1) - 1) // (q - 1)


def blowup_formula_count(q: int) -> int:
    """#P^5(F_q) + (q + q^2) #P^2(F_q): blowup along a codimension-3 surface."""
    return _proj_count(5, q) + (q + q * q) * _proj_count(2, q)


def symmetric_points(q: int) -> list[list[list[int]]]:
    """P(S^2 W)(F_q) as normalized symmetric matrices."""
    out = []
    for (a, b, c, d, e, f) in (row for (row,) in enumerate_subspaces(1, 6, q)):
        out.append([[a, d, e], [d, b, f], [e, f, c]])
    return out


def y_point_count(q: int) -> YPointCount:
    if q > 3:
        raise TooLarge("Y point counts are limited to q <= 3")
    F = Field(q)
    mats = symmetric_points(q)
    fibres = kernels.scalar_product_fibers(np.array(mats, dtype=np.int64), q)
    anomalies = []
    for M, n in zip(mats, fibres.tolist()):
        expected = 1 if Matrix(M, F).rank() >= 2 else q * q + q + 1
        if n != expected:
            anomalies.append({"C": M, "fibre": n, "expected": expected})
    return YPointCount(q, int(fibres.sum()), blowup_formula_count(q), anomalies)


# --------------------------------------------------------------------------
# batch verification


ORBITS = ("Y0", "Y1", "Y2", "Y3")


def check_point(pt: CQPoint, expected_orbit: str, lam) -> dict:
    """All per-point checks; returns name -> bool."""
    out = {"orbit_label": orbit_classify(pt) == expected_orbit}
    try:
        g = g_subalgebra(pt)
    except RankNotThree:
        out["rank_g_is_3"] = False
        return out
    out["rank_g_is_3"] = True
    out["g_traceless"] = g.is_traceless()
    out["g_bracket_closed"] = g.is_bracket_closed()
    U = orth_complement(g.sl3_subspace(), trace_pairing_matrix(pt.field))
    out["phi_dim_5"] = U.dim == 5
    out["phi_isotropic"] = is_isotropic(lam, U)
    if expected_orbit == "Y0":
        try:
            q = reconstruct_quadric(g)
            out["reconstruct_quadric"] = proportional(_flat(q), _flat(adjugate3(pt.C)))
        except NotUnique:
            out["reconstruct_quadric"] = False
    return out


def verify_embedding(budget: int = 100, seed: int = 0, p: int = 7, rng: random.Random | None = None) -> dict:
    """Sample points on every orbit and run the embedding checks.

    Over Q the four representatives plus ``budget // 10`` transported
    samples per orbit; over F_p ``budget`` samples per orbit.  On Y0 the
    Plucker vectors of phi must be pairwise distinct for distinct points.
    A caller-supplied ``rng`` takes precedence over ``seed``.
    """
    entries = []
    if budget <= 0:
        return {"budget": budget, "seed": seed, "p": p, "checks": entries, "passed": True}
    rng = rng if rng is not None else random.Random(seed)
    Fp = Field(p)
    _check_sl3_char(Fp)
    runs = [(QQ, "rep", [(o, pt) for o, pt in representatives(QQ).items()])]
    runs.append((QQ, "sample", [(o, sample_point(o, QQ, rng)) for o in ORBITS for _ in range(budget // 10)]))
    runs.append((Fp, "sample", [(o, sample_point(o, Fp, rng)) for o in ORBITS for _ in range(budget)]))
    for F, kind, pts in runs:
        lam = trace_form(F)
        tallies = {}
        for orbit, pt in pts:
            for name, ok in check_point(pt, orbit, lam).items():
                key = (orbit, name)
                t = tallies.setdefault(key, {"total": 0, "failed": 0, "witness": None})
                t["total"] += 1
                if not ok:
                    t["failed"] += 1
                    if t["witness"] is None:
                        t["witness"] = pt.to_json()
        for (orbit, name), t in sorted(tallies.items()):
            entries.append(
                {
                    "field": str(F),
                    "kind": kind,
                    "orbit": orbit,
                    "check": name,
                    "total": t["total"],
                    "failed": t["failed"],
                    "passed": t["failed"] == 0,
                    "witness": t["witness"],
                }
            )
        y0 = {}
        for orbit, pt in pts:
            if orbit == "Y0":
                key = tuple(x for x in itertools.chain(_norm(pt.C), _norm(pt.Cp)))
                y0[key] = pt
        vecs = {plucker(phi(pt)) for pt in y0.values()}
        entries.append(
            {
                "field": str(F),
                "kind": kind,
                "orbit": "Y0",
                "check": "phi_injective",
                "total": len(y0),
                "failed": len(y0) - len(vecs),
                "passed": len(vecs) == len(y0),
                "witness": None,
            }
        )
    return {"budget": budget, "seed": seed, "p": p, "checks": entries, "passed": all(e["passed"] for e in entries)}


def _norm(M: Matrix) -> tuple:
    return tuple(x.value for x in projective_normalize(_flat(M)))
