import itertools

import numpy as np
import pytest

from qcivar.algebra import AlgebraSpec


@pytest.fixture(scope="session")
def spec237():
    return AlgebraSpec.create(2, 3, 7)


@pytest.fixture(scope="session")
def spec225():
    return AlgebraSpec.create(2, 2, 5)


@pytest.fixture(scope="session")
def spec325():
    return AlgebraSpec.create(3, 2, 5)


def all_vectors(n, p):
    for v in itertools.product(range(p), repeat=n):
        yield np.array(v, dtype=np.int64)


def span_size(columns, p):
    """Number of distinct F_p-combinations of the given columns (brute force)."""
    cols = [np.asarray(c) % p for c in columns]
    seen = set()
    for coeffs in itertools.product(range(p), repeat=len(cols)):
        v = sum((x * c for x, c in zip(coeffs, cols)), np.zeros_like(cols[0])) % p
        seen.add(tuple(int(t) for t in v))
    return len(seen)
