"""Acceptance gate: ten criteria, each timed against its limit.

The terminal summary prints one PASS/FAIL line per criterion.
"""

import math
import random
import subprocess
import sys
import time

import pytest

from kuechle_lab.chow import LEDGERS, blowup_k0_rank, degeneracy_classes, projective_space
from kuechle_lab.complete_quadrics import ORBITS, representatives, verify_embedding, y_point_count
from kuechle_lab.linalg import Subspace, det, pfaffian, random_skew, subspace_sum
from kuechle_lab.pencils import (
    analyze,
    b4_line_count_check,
    d3_point_counts,
    hyperbolic_quadric,
    random_multilinear_form,
    standard_pencil,
)
from kuechle_lab.scalars import GF, QQ
from kuechle_lab.trivectors import (
    TriVector,
    decomposable_form,
    invariant_space_dim,
    stabilizer_dim,
    trace_form,
)
from kuechle_lab.verify import lagrangian_bijection, smooth_test_pencils


class Timer:
    def __init__(self, limit):
        self.limit = limit

    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.start
        if exc[0] is None:
            assert self.elapsed < self.limit, f"took {self.elapsed:.2f}s, limit {self.limit}s"


@pytest.mark.criterion(1, "Pfaffian squares to det (200 over F_101, 50 over Q)", 5)
def test_c1_pfaffian():
    rng = random.Random(0)
    with Timer(5):
        for F, count in ((GF(101), 200), (QQ, 50)):
            for i in range(count):
                A = random_skew(rng, 2 + i % 7, F)
                assert pfaffian(A) ** 2 == det(A)


@pytest.mark.criterion(2, "smoothness criterion and failure reasons", 1)
def test_c2_smoothness():
    with Timer(1):
        r = analyze(standard_pencil([1, 2, 3, 4, 5], QQ))
        assert r.is_smooth
        assert len(r.roots) == 5 and all(m == 1 for _, m in r.roots)
        total = Subspace.zero(10, QQ)
        for K in r.kernels:
            total = subspace_sum(total, K)
        assert total == Subspace.full(10, QQ) and sum(K.dim for K in r.kernels) == 10
        bad = analyze(standard_pencil([1, 2, 3, 3, 5], QQ))
        assert bad.verdict == "singular"
        assert bad.failure_reason == "RepeatedRoot"
        assert any(x.startswith("FatKernel") for x in bad.failure_reasons)


@pytest.mark.criterion(3, "(q+1)^n common Lagrangians and split/assemble bijection", 120)
def test_c3_lagrangians():
    with Timer(120):
        counts = {}
        for (n, q), P in smooth_test_pencils():
            d = lagrangian_bijection(P)
            assert d["verdict"] == "smooth"
            assert d["round_trip"] and d["assemble_image_equals_enumeration"]
            counts[(n, q)] = d["count"]
        assert counts == {(2, 2): 9, (2, 3): 16, (2, 5): 36, (3, 2): 27}


@pytest.mark.criterion(4, "blowup identity count_X = (q+1)^3 + q count_Z at n = 4", 10)
def test_c4_d3_identity():
    with Timer(10):
        for q in (2, 3):
            rng = random.Random(q)
            for _ in range(5):
                s = random_multilinear_form(4, GF(q), rng)
                c = d3_point_counts(s)
                assert c.count_base == (q + 1) ** 3
                assert c.count_X == (q + 1) ** 3 + q * c.count_Z, s.to_json()


@pytest.mark.criterion(5, "genericity: stabilizer dims and unique invariant", 10)
def test_c5_trivectors():
    with Timer(10):
        lam = trace_form(QQ)
        assert stabilizer_dim(lam) == 8
        assert stabilizer_dim(TriVector.zero(8, QQ)) == 64
        assert stabilizer_dim(decomposable_form(0, 1, 2, QQ)) == 48
        dim, basis = invariant_space_dim(QQ)
        assert dim == 1 and basis[0].is_proportional_to(lam)


@pytest.mark.criterion(6, "embedding: rank 3, traceless, closed, dim 5, isotropic, injective", 30)
def test_c6_embedding():
    with Timer(30):
        res = verify_embedding(budget=100, seed=0, p=7)
        failing = [c for c in res["checks"] if not c["passed"]]
        assert not failing, failing[:2]
        f7 = [c for c in res["checks"] if c["field"] == "F_7" and c["check"] != "phi_injective"]
        assert {c["orbit"] for c in f7} == set(ORBITS)
        assert all(c["total"] == 100 for c in f7)
        reps = [c for c in res["checks"] if c["kind"] == "rep"]
        assert {c["check"] for c in reps if c["orbit"] == "Y0"} >= {
            "rank_g_is_3",
            "g_traceless",
            "g_bracket_closed",
            "phi_dim_5",
            "phi_isotropic",
            "reconstruct_quadric",
        }
        assert set(representatives(QQ)) == set(ORBITS)


@pytest.mark.criterion(7, "complete quadrics: direct count vs blowup formula", 30)
def test_c7_point_count_matches_formula():
    with Timer(30):
        r2, r3 = y_point_count(2), y_point_count(3)
        assert r2.direct_count == 105 == r2.blowup_formula_count
        assert r2.anomalies == []
        assert r3.direct_count == r3.blowup_formula_count
        assert r3.anomalies == []


@pytest.mark.criterion(7, "complete quadrics: direct count vs blowup formula", 30)
def test_c7_point_count_q3_stated_value():
    """The stated q = 3 value, 121 + 12*13 = 277, taken literally."""
    with Timer(30):
        assert y_point_count(3).direct_count == 277


@pytest.mark.criterion(8, "(b4): 8h, 80h^3 and equal line counts over F_2", 30)
def test_c8_b4():
    with Timer(30):
        R = projective_space(3)
        d = degeneracy_classes(R.parse("4h"), R.parse("6h^2"), R.parse("4h^3"))
        assert d["discriminant"] == R.parse("8h")
        assert d["corank2"] == R.parse("80h^3")
        c = b4_line_count_check(hyperbolic_quadric(GF(2)))
        assert c.lines_on_quadric == c.flag_divisor_count == 105


@pytest.mark.criterion(9, "ledgers 48, 16 + K3, 6 + A_X, 4 + Clifford; 21 = C(7,2)", 1)
def test_c9_ledgers():
    with Timer(1):
        totals = {name: build() for name, build in LEDGERS.items()}
        assert totals["b9"].total == 48 and not totals["b9"].symbolic
        assert totals["d3"].exceptional_part == 16 and len(totals["d3"].symbolic) == 1
        assert totals["c7"].exceptional_part == 6 and len(totals["c7"].symbolic) == 1
        assert totals["b4"].exceptional_part == 4 and len(totals["b4"].symbolic) == 1
        assert math.comb(7, 2) == 21 == blowup_k0_rank(5, 7, 4) - 5
        assert [r for _, r in totals["b9"].entries] == [5, 21, 22]


@pytest.mark.criterion(10, "verify-all --seed 0 is byte-identical across runs", 120)
def test_c10_determinism(tmp_path):
    with Timer(120):
        outs = []
        for k in range(2):
            dest = tmp_path / f"report{k}.json"
            proc = subprocess.run(
                [sys.executable, "-m", "kuechle_lab.cli", "verify-all", "--seed", "0", "--output", str(dest)],
                capture_output=True,
                text=True,
            )
            assert proc.returncode == 0, proc.stderr
            outs.append(dest.read_bytes())
        assert outs[0] == outs[1]
