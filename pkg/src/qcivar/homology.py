"""Projective covers, syzygies and minimal resolutions over A.

A is local and selfinjective, so projective = free and a minimal free cover
of M has rank dim(M / rM).
"""
from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass, field

import numpy as np

from . import linalg
from .modules import ModuleRep, restrict, zero_module, free_module, submodule_generated


class InsufficientData(ValueError):
    pass


def radical_image(m: ModuleRep) -> tuple[np.ndarray, list[int]]:
    """RREF basis of rM = sum of the images of the X_i."""
    if m.dim == 0:
        return linalg.zeros(0, 0, m.p), []
    return linalg.row_space(np.concatenate(m.actions, axis=1).T, m.p)


def top(m: ModuleRep) -> int:
    return m.dim - len(radical_image(m)[1])


def top_generators(m: ModuleRep) -> np.ndarray:
    """Columns: standard vectors at the non-pivot positions of rM, lifting a basis of M/rM."""
    _, pivots = radical_image(m)
    piv = set(pivots)
    free = [j for j in range(m.dim) if j not in piv]
    g = linalg.zeros(m.dim, len(free), m.p)
    for k, j in enumerate(free):
        g[j, k] = 1
    return g


def cover_matrix(m: ModuleRep, gens: np.ndarray) -> np.ndarray:
    """Matrix of the map A^t -> M sending the k-th free generator to column k of ``gens``."""
    spec = m.spec
    t = gens.shape[1]
    out = linalg.zeros(m.dim, t * spec.dim, m.p)
    for idx, mono in enumerate(spec.monomials):
        images = linalg.matmul(m.monomial_action(mono), gens, m.p)
        out[:, idx :: spec.dim] = images
    return out


def projective_cover_map(m: ModuleRep) -> tuple[ModuleRep, np.ndarray]:
    gens = top_generators(m)
    return free_module(m.spec, gens.shape[1]), cover_matrix(m, gens)


def _kernel_module(free: ModuleRep, surj: np.ndarray) -> tuple[ModuleRep, np.ndarray]:
    if free.dim == 0:
        return zero_module(free.spec), linalg.zeros(0, 0, free.p)
    basis = linalg.nullspace(surj, free.p)
    if basis.shape[0] == 0:
        return zero_module(free.spec), basis
    _, pivots = linalg.rref(basis, free.p)
    return restrict(free.spec, free.actions, basis, pivots), basis


def syzygy(m: ModuleRep) -> ModuleRep:
    free, surj = projective_cover_map(m)
    return _kernel_module(free, surj)[0]


def kernel_in_radical(free: ModuleRep, kernel_basis: np.ndarray) -> bool:
    """No kernel vector has a unit coefficient on a free generator."""
    if kernel_basis.shape[0] == 0:
        return True
    n = free.spec.dim
    return not np.any(kernel_basis[:, ::n])


@dataclass
class ResolutionPrefix:
    module: ModuleRep
    betti: list[int]
    syzygies: list[ModuleRep] = field(default_factory=list)
    minimal: bool = True


def resolve(m: ModuleRep, n: int) -> ResolutionPrefix:
    if n < 0:
        raise ValueError("depth must be >= 0")
    betti: list[int] = []
    syzygies: list[ModuleRep] = []
    minimal = True
    current = m
    for i in range(n + 1):
        free, surj = projective_cover_map(current)
        betti.append(free.dim // m.spec.dim)
        if i == n:
            break
        current, kernel_basis = _kernel_module(free, surj)
        minimal = minimal and kernel_in_radical(free, kernel_basis)
        syzygies.append(current)
    return ResolutionPrefix(m, betti, syzygies, minimal)


def is_projective(m: ModuleRep) -> bool:
    return syzygy(m).dim == 0


@dataclass(frozen=True)
class ComplexityFit:
    complexity: int
    slope: float | None
    window: tuple[int, int]


def complexity_fit(betti, lo: int = 2) -> ComplexityFit:
    """Polynomial growth rate of a Betti window.

    Fits log b_n = s log(n + 1) + const by least squares over degrees
    ``lo..len-1`` and reports d = round(s) + 1; d = 0 when the sequence ends
    in zeros (projective module).  Using n + 1 absorbs the usual shift in
    binomial Betti numbers, e.g. b_n = C(n + c - 1, c - 1).
    """
    betti = [int(b) for b in betti]
    if len(betti) < 6:
        raise InsufficientData(f"need at least 6 Betti numbers, got {len(betti)}")
    hi = len(betti) - 1
    if betti[-1] == 0:
        return ComplexityFit(0, None, (lo, hi))
    pts = [(math.log(n + 1), math.log(b)) for n, b in enumerate(betti) if n >= lo and b > 0]
    xs = np.array([x for x, _ in pts])
    ys = np.array([y for _, y in pts])
    xc = xs - xs.mean()
    slope = float((xc * (ys - ys.mean())).sum() / (xc * xc).sum())
    return ComplexityFit(max(1, int(math.floor(slope + 0.5)) + 1), slope, (lo, hi))


def complexity_estimate(betti) -> int:
    return complexity_fit(betti).complexity


def module_digest(m: ModuleRep) -> str:
    h = hashlib.sha256()
    h.update(repr(sorted(m.spec.to_dict().items())).encode())
    h.update(str(m.dim).encode())
    for x in m.actions:
        h.update(np.ascontiguousarray(x, dtype=np.int64).tobytes())
    return h.hexdigest()[:16]


def resolution_report(m: ModuleRep, depth: int) -> dict:
    res = resolve(m, depth)
    fit = complexity_fit(res.betti)
    return {
        "module_digest": module_digest(m),
        "betti": res.betti,
        "complexity": fit.complexity,
        "window": list(fit.window),
        "slope": None if fit.slope is None else round(fit.slope, 6),
    }


# -- independent Ext oracle --------------------------------------------------

def greedy_generators(m: ModuleRep) -> np.ndarray:
    """Standard vectors e_j, taken in order whenever e_j is not yet generated.

    Generates M but is usually not minimal; used only to cross-check Betti
    numbers through Hom(-, k) cohomology.
    """
    p = m.p
    chosen: list[int] = []
    basis, pivots = linalg.zeros(0, m.dim, p), []
    for j in range(m.dim):
        e = linalg.zeros(m.dim, 1, p)
        e[j, 0] = 1
        if linalg.in_span(basis, pivots, e, p):
            continue
        chosen.append(j)
        g = linalg.zeros(m.dim, len(chosen), p)
        for k, jj in enumerate(chosen):
            g[jj, k] = 1
        basis, pivots = submodule_generated(m, g)
    g = linalg.zeros(m.dim, len(chosen), p)
    for k, jj in enumerate(chosen):
        g[jj, k] = 1
    return g


def ext_dims_via_hom(m: ModuleRep, n: int) -> list[int]:
    """dim Ext^i(M, k) for i <= n from a non-minimal free resolution.

    Hom(A^t, k) = k^t, and the dual differential only sees the constant
    coefficient of each generator image.
    """
    p, size = m.p, m.spec.dim
    ranks: list[int] = []
    reduced: list[np.ndarray] = []  # reduced[i]: P_{i+1} generators -> P_i constant terms
    current = m
    # the embedding of current into the previous free module, as columns
    embed = None
    for i in range(n + 2):
        gens = greedy_generators(current)
        t = gens.shape[1]
        ranks.append(t)
        if embed is not None:
            images = linalg.matmul(embed, gens, p)  # in previous free-module coordinates
            reduced.append(images[::size, :] if images.size else linalg.zeros(0, t, p))
        if i == n + 1:
            break
        free = free_module(m.spec, t)
        surj = cover_matrix(current, gens)
        current, kernel_basis = _kernel_module(free, surj)
        embed = kernel_basis.T if kernel_basis.size else linalg.zeros(free.dim, 0, p)
    out = []
    for i in range(n + 1):
        into = linalg.rank(reduced[i - 1], p) if i > 0 else 0
        outof = linalg.rank(reduced[i], p)
        out.append(ranks[i] - into - outof)
    return out
