"""Both kernel backends must agree bit for bit."""

import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from kuechle_lab import kernels
from kuechle_lab.linalg import enumerate_subspaces

BACKENDS = kernels.available_backends()


def test_python_backend_always_present():
    assert "python" in BACKENDS
    assert kernels.backend_name() in BACKENDS


def test_unknown_backend():
    with pytest.raises(KeyError):
        with kernels.use_backend("fortran"):
            pass


def _all(fn, *args):
    out = {}
    for name in BACKENDS:
        with kernels.use_backend(name):
            out[name] = fn(*args)
    return out


def _same(results):
    vals = list(results.values())
    return all(np.array_equal(vals[0], v) for v in vals[1:])


@given(st.integers(0, 2**31), st.sampled_from([2, 3, 5]))
@settings(max_examples=20)
def test_bilinear_parity(seed, p):
    rng = np.random.default_rng(seed)
    bases = np.array(list(enumerate_subspaces(2, 4, p)), dtype=np.int64)
    raw = rng.integers(0, p, size=(2, 4, 4))
    forms = (raw - raw.transpose(0, 2, 1)) % p
    res = _all(kernels.bilinear_isotropic_mask, bases, forms, p)
    assert _same(res)


def test_bilinear_against_loop():
    p = 3
    bases = np.array(list(enumerate_subspaces(2, 4, p)), dtype=np.int64)
    J = np.array([[0, 1, 0, 0], [-1, 0, 0, 0], [0, 0, 0, 1], [0, 0, -1, 0]]) % p
    mask = kernels.bilinear_isotropic_mask(bases, J[None], p)
    want = [all((b[i] @ J @ b[j]) % p == 0 for i, j in itertools.combinations(range(2), 2)) for b in bases]
    assert mask.tolist() == want


@given(st.integers(0, 2**31), st.sampled_from([2, 3]))
@settings(max_examples=10)
def test_quadratic_parity(seed, p):
    rng = np.random.default_rng(seed)
    bases = np.array(list(enumerate_subspaces(2, 5, p)), dtype=np.int64)
    q = rng.integers(0, p, size=(5, 5))
    q = np.triu(q) + np.triu(q, 1).T
    assert _same(_all(kernels.quadratic_isotropic_mask, bases, q, p))


@given(st.integers(0, 2**31), st.sampled_from([2, 3, 5]))
@settings(max_examples=10)
def test_fiber_parity(seed, p):
    rng = np.random.default_rng(seed)
    m = rng.integers(0, p, size=(40, 3, 3))
    m = (m + m.transpose(0, 2, 1)) % p
    assert _same(_all(kernels.scalar_product_fibers, m, p))


def test_shape_check():
    with pytest.raises(ValueError):
        kernels.bilinear_isotropic_mask(np.zeros((2, 2)), np.zeros((1, 2, 2)), 2)
