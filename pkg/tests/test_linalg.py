import numpy as np
from hypothesis import given, settings, strategies as st
from hypothesis.extra.numpy import arrays

from qcivar import linalg

from conftest import all_vectors

P = 5
matrices = st.tuples(st.integers(1, 4), st.integers(1, 4)).flatmap(
    lambda s: arrays(np.int64, s, elements=st.integers(0, P - 1))
)


@settings(max_examples=150, deadline=None)
@given(matrices)
def test_nullspace_matches_enumeration(m):
    kernel = linalg.nullspace(m, P)
    brute = sum(1 for v in all_vectors(m.shape[1], P) if not np.any(m @ v % P))
    assert P ** kernel.shape[0] == brute
    assert not np.any(linalg.matmul(m, kernel.T, P))
    assert linalg.rank(m, P) + kernel.shape[0] == m.shape[1]


@settings(max_examples=100, deadline=None)
@given(matrices)
def test_rref_is_canonical(m):
    r, piv = linalg.rref(m, P)
    # row operations by a random invertible matrix do not change the RREF
    g = np.random.default_rng(int(m.sum())).integers(0, P, size=(m.shape[0], m.shape[0]))
    if linalg.inverse(g, P) is not None:
        r2, piv2 = linalg.rref(linalg.matmul(g, m, P), P)
        assert piv == piv2 and np.array_equal(r, r2)
    for i, c in enumerate(piv):
        assert r[i, c] == 1 and np.count_nonzero(r[:, c]) == 1


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 4).flatmap(lambda n: arrays(np.int64, (n, n), elements=st.integers(0, P - 1))))
def test_inverse(m):
    inv = linalg.inverse(m, P)
    if inv is None:
        assert linalg.rank(m, P) < m.shape[0]
    else:
        assert np.array_equal(linalg.matmul(m, inv, P), np.eye(m.shape[0], dtype=np.int64))


def test_quotient_maps_kill_subspace():
    w = np.array([[1, 2, 0, 1], [0, 0, 1, 3]])
    basis, piv = linalg.rref(w, 7)
    proj, section = linalg.quotient_maps(basis, piv, 4, 7)
    assert not np.any(linalg.matmul(proj, basis.T, 7))
    assert np.array_equal(linalg.matmul(proj, section, 7), np.eye(2, dtype=np.int64))


def test_large_prime_products_do_not_overflow():
    p = 2**31 - 1
    m = np.full((40, 40), p - 1, dtype=np.int64)
    out = linalg.matmul(m, m, p)
    assert int(out[0, 0]) == (40 * (p - 1) ** 2) % p
