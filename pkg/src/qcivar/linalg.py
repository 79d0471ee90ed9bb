"""Dense exact linear algebra over F_p on numpy integer arrays.

Matrices hold residues in ``[0, p)``.  Products switch to Python-int object
arrays when an int64 accumulation could overflow.
"""
from __future__ import annotations

import numpy as np

_INT64_LIMIT = 2**62


def _dtype_for(p: int, inner: int = 1):
    return np.int64 if (p - 1) ** 2 * max(inner, 1) < _INT64_LIMIT else object


def asmat(data, p: int, shape: tuple[int, int] | None = None) -> np.ndarray:
    m = np.array(data, dtype=object if p > 2**31 else np.int64)
    if shape is not None:
        m = m.reshape(shape)
    return m % p


def zeros(rows: int, cols: int, p: int) -> np.ndarray:
    return np.zeros((rows, cols), dtype=_dtype_for(p))


def identity(n: int, p: int) -> np.ndarray:
    return np.eye(n, dtype=_dtype_for(p))


def matmul(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    inner = a.shape[1] if a.ndim == 2 else a.shape[0]
    if _dtype_for(p, inner) is object:
        return (a.astype(object) @ b.astype(object)) % p
    return (a.astype(np.int64) @ b.astype(np.int64)) % p


def matpow(a: np.ndarray, n: int, p: int) -> np.ndarray:
    result = identity(a.shape[0], p)
    base = a
    while n:
        if n & 1:
            result = matmul(result, base, p)
        base = matmul(base, base, p)
        n >>= 1
    return result


def rref(mat: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form and pivot columns.

    Pivots are taken left to right, pivot row = first row (from the current
    position down) with a nonzero entry, so the result is canonical for the
    row space.
    """
    m = np.array(mat, dtype=_dtype_for(p), copy=True) % p
    rows, cols = m.shape
    pivots: list[int] = []
    r = 0
    for col in range(cols):
        if r == rows:
            break
        nz = np.nonzero(m[r:, col])[0]
        if nz.size == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            m[[r, k]] = m[[k, r]]
        m[r] = m[r] * pow(int(m[r, col]), -1, p) % p
        factors = m[:, col].copy()
        factors[r] = 0
        hit = np.nonzero(factors)[0]
        if hit.size:
            m[hit] = (m[hit] - np.outer(factors[hit], m[r])) % p
        pivots.append(col)
        r += 1
    return m[:r], pivots


def rank(mat: np.ndarray, p: int) -> int:
    if mat.size == 0:
        return 0
    return len(rref(mat, p)[1])


def row_space(vectors: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Canonical basis (rows, RREF) of the span of the given rows."""
    if vectors.shape[0] == 0:
        return vectors[:0].copy(), []
    return rref(vectors, p)


def nullspace(mat: np.ndarray, p: int) -> np.ndarray:
    """Rows spanning ``{v : mat @ v = 0}``, returned in RREF."""
    n = mat.shape[1]
    if mat.shape[0] == 0:
        return identity(n, p)
    r, pivots = rref(mat, p)
    free = [j for j in range(n) if j not in set(pivots)]
    basis = zeros(len(free), n, p)
    for k, j in enumerate(free):
        basis[k, j] = 1
        for i, pc in enumerate(pivots):
            basis[k, pc] = -r[i, j] % p
    if basis.shape[0] == 0:
        return basis
    return rref(basis, p)[0]


def inverse(mat: np.ndarray, p: int) -> np.ndarray | None:
    """Inverse of a square matrix, or ``None`` when singular."""
    n = mat.shape[0]
    if mat.shape != (n, n):
        return None
    aug = np.concatenate([np.asarray(mat) % p, identity(n, p)], axis=1)
    r, pivots = rref(aug, p)
    if pivots[:n] != list(range(n)):
        return None
    return r[:, n:]


def coordinates(basis: np.ndarray, pivots: list[int], vectors: np.ndarray) -> np.ndarray:
    """Coordinates of column ``vectors`` with respect to an RREF row basis.

    Valid only for vectors that lie in the span; the pivot entries of such a
    vector are exactly its coordinates.
    """
    return vectors[pivots, :]


def in_span(basis: np.ndarray, pivots: list[int], vectors: np.ndarray, p: int) -> bool:
    if vectors.shape[1] == 0:
        return True
    if basis.shape[0] == 0:
        return not np.any(vectors % p)
    recon = matmul(basis.T, vectors[pivots, :], p)
    return bool(np.array_equal(recon % p, vectors % p))


def quotient_maps(basis: np.ndarray, pivots: list[int], n: int, p: int) -> tuple[np.ndarray, np.ndarray]:
    """Projection ``V -> V/W`` and a section ``V/W -> V`` for ``W`` = row span.

    The quotient basis is the images of the standard vectors at non-pivot
    positions, in increasing order.
    """
    piv = set(pivots)
    free = [j for j in range(n) if j not in piv]
    proj = zeros(len(free), n, p)
    for k, j in enumerate(free):
        proj[k, j] = 1
    if basis.shape[0]:
        # v - sum_k v[pivot_k] * row_k, read off at the free columns
        proj[:, pivots] = (-basis[:, free].T) % p
    section = zeros(n, len(free), p)
    for k, j in enumerate(free):
        section[j, k] = 1
    return proj, section
