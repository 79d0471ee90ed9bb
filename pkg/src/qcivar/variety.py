"""Rank varieties pushed through F(lambda) = (lambda_1^a, ..., lambda_c^a).

A direction lambda is in the rank variety of M when M restricted to
k[u_lambda]/(u_lambda^a) is not free.  The support variety of M is taken to
be the image of the rank variety under F; with this convention the variety
of A u_lambda is the line through F(lambda).  Only F_p-rational points are
scanned.
"""
from __future__ import annotations

import itertools
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

import numpy as np

from . import linalg
from .modules import ModuleRep


class AmbientMismatch(ValueError):
    pass


@dataclass(frozen=True, order=True)
class ProjPoint:
    """A point of P^{c-1}(F_p), first nonzero coordinate scaled to 1."""

    coords: tuple[int, ...]
    p: int

    def __post_init__(self):
        coords = tuple(int(x) % self.p for x in self.coords)
        lead = next((x for x in coords if x), None)
        if lead is None:
            raise ValueError("a projective point needs a nonzero coordinate")
        s = pow(lead, -1, self.p)
        object.__setattr__(self, "coords", tuple(x * s % self.p for x in coords))

    @property
    def c(self) -> int:
        return len(self.coords)

    def __repr__(self):
        return f"ProjPoint({list(self.coords)}, p={self.p})"


def projective_points(c: int, p: int) -> list[ProjPoint]:
    """All points of P^{c-1}(F_p), lexicographic in normalized coordinates."""
    pts = []
    for lead in range(c):
        for tail in itertools.product(range(p), repeat=c - lead - 1):
            pts.append(ProjPoint((0,) * lead + (1,) + tail, p))
    return sorted(pts)


def F_map(lam: ProjPoint, a: int) -> ProjPoint:
    return ProjPoint(tuple(pow(x, a, lam.p) for x in lam.coords), lam.p)


@dataclass(frozen=True)
class VarietySet:
    """Finite set of projective points; empty means the trivial variety {0}."""

    c: int
    p: int
    points: frozenset[ProjPoint] = frozenset()

    def __post_init__(self):
        for pt in self.points:
            if pt.c != self.c or pt.p != self.p:
                raise AmbientMismatch(f"point {pt} not in P^{self.c - 1}(F_{self.p})")

    @classmethod
    def of(cls, c: int, p: int, points: Iterable) -> "VarietySet":
        pts = frozenset(x if isinstance(x, ProjPoint) else ProjPoint(tuple(x), p) for x in points)
        return cls(c, p, pts)

    @classmethod
    def full(cls, c: int, p: int) -> "VarietySet":
        return cls(c, p, frozenset(projective_points(c, p)))

    @property
    def trivial(self) -> bool:
        return not self.points

    @property
    def contains_origin(self) -> bool:
        return True

    def sorted_points(self) -> list[ProjPoint]:
        return sorted(self.points)

    def coords(self) -> list[list[int]]:
        return [list(pt.coords) for pt in self.sorted_points()]

    def _check(self, other: "VarietySet"):
        if (self.c, self.p) != (other.c, other.p):
            raise AmbientMismatch(f"P^{self.c - 1}(F_{self.p}) vs P^{other.c - 1}(F_{other.p})")

    def to_dict(self) -> dict:
        return {"ambient": {"c": self.c, "p": self.p}, "points": self.coords(), "trivial": self.trivial}


def is_subset(v: VarietySet, w: VarietySet) -> bool:
    v._check(w)
    return v.points <= w.points


def intersect(v: VarietySet, w: VarietySet) -> VarietySet:
    v._check(w)
    return VarietySet(v.c, v.p, v.points & w.points)


def union(v: VarietySet, w: VarietySet) -> VarietySet:
    v._check(w)
    return VarietySet(v.c, v.p, v.points | w.points)


def line_of(point: ProjPoint | Sequence[int], p: int | None = None) -> VarietySet:
    if not isinstance(point, ProjPoint):
        point = ProjPoint(tuple(point), p)
    return VarietySet(point.c, point.p, frozenset([point]))


def restriction_operator(m: ModuleRep, lam: ProjPoint | Sequence[int]) -> np.ndarray:
    coords = lam.coords if isinstance(lam, ProjPoint) else tuple(lam)
    u = linalg.zeros(m.dim, m.dim, m.p)
    for x, l in zip(m.actions, coords):
        if l:
            u = (u + l * x) % m.p
    return u


def rank_criterion_free(m: ModuleRep, lam) -> bool:
    """M free over k[u]/(u^a)  <=>  a * rank(U^{a-1}) = dim M."""
    u = restriction_operator(m, lam)
    a = m.spec.a
    return a * linalg.rank(linalg.matpow(u, a - 1, m.p), m.p) == m.dim


def point_in_rank_variety(m: ModuleRep, lam) -> bool:
    return not rank_criterion_free(m, lam)


def jordan_block_sizes(u: np.ndarray, p: int, a: int) -> list[int]:
    """Jordan type of a nilpotent U (U^a = 0) from the ranks of its powers."""
    n = u.shape[0]
    ranks = [n]
    power = linalg.identity(n, p)
    for _ in range(a):
        power = linalg.matmul(power, u, p)
        ranks.append(linalg.rank(power, p))
    if ranks[-1] != 0:
        raise ValueError("operator is not nilpotent of order a")
    # blocks of size >= j: ranks[j-1] - ranks[j]
    at_least = [ranks[j - 1] - ranks[j] for j in range(1, a + 1)] + [0]
    sizes = []
    for j in range(1, a + 1):
        sizes += [j] * (at_least[j - 1] - at_least[j])
    return sorted(sizes, reverse=True)


def jordan_oracle_in_variety(m: ModuleRep, lam) -> bool:
    sizes = jordan_block_sizes(restriction_operator(m, lam), m.p, m.spec.a)
    return any(s != m.spec.a for s in sizes)


def support_variety(
    m: ModuleRep,
    criterion: Callable[[ModuleRep, ProjPoint], bool] = point_in_rank_variety,
    workers: int = 1,
    chunks: int | None = None,
) -> VarietySet:
    """Scan P^{c-1}(F_p) and collect F(lambda) for every lambda in the rank variety.

    ``workers``/``chunks`` split the scan; the result does not depend on them.
    """
    c, p, a = m.spec.c, m.p, m.spec.a
    pts = projective_points(c, p)
    nchunks = max(1, chunks or workers)
    parts = [pts[i::nchunks] for i in range(nchunks)]

    def scan(part):
        return [F_map(lam, a) for lam in part if criterion(m, lam)]

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(scan, parts))
    else:
        results = [scan(part) for part in parts]
    return VarietySet(c, p, frozenset(itertools.chain.from_iterable(results)))


def rank_variety(m: ModuleRep) -> VarietySet:
    """The unpushed rank variety (directions lambda themselves)."""
    pts = [lam for lam in projective_points(m.spec.c, m.p) if point_in_rank_variety(m, lam)]
    return VarietySet(m.spec.c, m.p, frozenset(pts))
