"""Left modules and bimodules over A as explicit matrices.

Vectors are columns; ``actions[i]`` is the matrix of v -> x_{i+1} v.  For a
bimodule ``right_actions[i]`` is the matrix of v -> v x_{i+1}; right action by
a product x_i x_j therefore applies R_i first, giving the relation
R_j R_i = q R_i R_j (i < j).
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import linalg
from .algebra import (
    AlgebraElement,
    AlgebraSpec,
    DiagonalAutomorphism,
    Monomial,
    SpecMismatch,
    left_mult_matrix,
    right_mult_matrix,
    u_lambda,
)


class InvalidModule(ValueError):
    pass


class ZeroLambda(ValueError):
    pass


def _same(x: np.ndarray, y: np.ndarray) -> bool:
    return x.shape == y.shape and bool(np.array_equal(x, y))


def _check_left_relations(spec: AlgebraSpec, mats: Sequence[np.ndarray], side: str) -> None:
    p, q = spec.p, spec.q
    for i, x in enumerate(mats):
        if np.any(linalg.matpow(x, spec.a, p)):
            raise InvalidModule(f"{side} action of x_{i + 1} is not nilpotent of order a={spec.a}")
    for i in range(spec.c):
        for j in range(i + 1, spec.c):
            lhs = linalg.matmul(mats[i], mats[j], p)
            rhs = linalg.matmul(mats[j], mats[i], p) * q % p
            if not _same(lhs, rhs):
                raise InvalidModule(f"{side} actions of x_{i + 1}, x_{j + 1} violate q-commutation")


@dataclass(frozen=True, eq=False)
class ModuleRep:
    spec: AlgebraSpec
    actions: tuple[np.ndarray, ...]
    check: bool = field(default=True, repr=False)

    def __post_init__(self):
        acts = tuple(np.asarray(x) % self.spec.p for x in self.actions)
        object.__setattr__(self, "actions", acts)
        if len(acts) != self.spec.c:
            raise InvalidModule(f"need {self.spec.c} action matrices, got {len(acts)}")
        n = acts[0].shape[0]
        if any(x.shape != (n, n) for x in acts):
            raise InvalidModule("action matrices must be square of equal size")
        if self.check:
            self.validate()

    @property
    def dim(self) -> int:
        return self.actions[0].shape[0]

    @property
    def p(self) -> int:
        return self.spec.p

    def validate(self) -> None:
        _check_left_relations(self.spec, self.actions, "left")

    def monomial_action(self, m: Monomial) -> np.ndarray:
        out = linalg.identity(self.dim, self.p)
        for x, e in zip(self.actions, m):
            if e:
                out = linalg.matmul(out, linalg.matpow(x, e, self.p), self.p)
        return out

    def element_action(self, x: AlgebraElement) -> np.ndarray:
        out = linalg.zeros(self.dim, self.dim, self.p)
        for m, v in x.terms:
            out = (out + v * self.monomial_action(m)) % self.p
        return out

    def __eq__(self, other):
        if not isinstance(other, ModuleRep):
            return NotImplemented
        return self.spec == other.spec and all(_same(x, y) for x, y in zip(self.actions, other.actions))

    def __hash__(self):
        return hash((self.spec, tuple(x.tobytes() for x in self.actions)))

    def to_dict(self) -> dict:
        return {
            "spec": self.spec.to_dict(),
            "dim": self.dim,
            "actions": [[[int(v) for v in row] for row in x] for x in self.actions],
        }

    @classmethod
    def from_dict(cls, d: dict, spec: AlgebraSpec | None = None) -> "ModuleRep":
        spec = spec or AlgebraSpec.from_dict(d["spec"])
        n = int(d["dim"])
        acts = tuple(linalg.asmat(x, spec.p).reshape(n, n) if n else linalg.zeros(0, 0, spec.p)
                     for x in d["actions"])
        return cls(spec, acts)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


@dataclass(frozen=True, eq=False)
class BimoduleRep:
    spec: AlgebraSpec
    left_actions: tuple[np.ndarray, ...]
    right_actions: tuple[np.ndarray, ...]
    check: bool = field(default=True, repr=False)

    def __post_init__(self):
        p = self.spec.p
        object.__setattr__(self, "left_actions", tuple(np.asarray(x) % p for x in self.left_actions))
        object.__setattr__(self, "right_actions", tuple(np.asarray(x) % p for x in self.right_actions))
        if len(self.left_actions) != self.spec.c or len(self.right_actions) != self.spec.c:
            raise InvalidModule(f"need {self.spec.c} left and right action matrices")
        if self.check:
            self.validate()

    @property
    def dim(self) -> int:
        return self.left_actions[0].shape[0]

    def validate(self) -> None:
        spec, p = self.spec, self.spec.p
        _check_left_relations(spec, self.left_actions, "left")
        for i, r in enumerate(self.right_actions):
            if np.any(linalg.matpow(r, spec.a, p)):
                raise InvalidModule(f"right action of x_{i + 1} is not nilpotent of order a={spec.a}")
        for i in range(spec.c):
            for j in range(i + 1, spec.c):
                ri, rj = self.right_actions[i], self.right_actions[j]
                if not _same(linalg.matmul(rj, ri, p), linalg.matmul(ri, rj, p) * spec.q % p):
                    raise InvalidModule(f"right actions of x_{i + 1}, x_{j + 1} violate q-commutation")
        for i, left in enumerate(self.left_actions):
            for j, right in enumerate(self.right_actions):
                if not _same(linalg.matmul(left, right, p), linalg.matmul(right, left, p)):
                    raise InvalidModule(f"left x_{i + 1} and right x_{j + 1} do not commute")

    def left_module(self) -> ModuleRep:
        return ModuleRep(self.spec, self.left_actions, check=False)

    def __eq__(self, other):
        if not isinstance(other, BimoduleRep):
            return NotImplemented
        return (
            self.spec == other.spec
            and all(_same(x, y) for x, y in zip(self.left_actions, other.left_actions))
            and all(_same(x, y) for x, y in zip(self.right_actions, other.right_actions))
        )

    def __hash__(self):
        return hash((self.spec, tuple(x.tobytes() for x in self.left_actions + self.right_actions)))

    def to_dict(self) -> dict:
        def rows(x):
            return [[int(v) for v in row] for row in x]

        return {
            "spec": self.spec.to_dict(),
            "dim": self.dim,
            "left_actions": [rows(x) for x in self.left_actions],
            "right_actions": [rows(x) for x in self.right_actions],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "BimoduleRep":
        spec = AlgebraSpec.from_dict(d["spec"])
        n = int(d["dim"])

        def mats(key):
            return tuple(linalg.asmat(x, spec.p).reshape(n, n) if n else linalg.zeros(0, 0, spec.p)
                         for x in d[key])

        return cls(spec, mats("left_actions"), mats("right_actions"))


@dataclass(frozen=True, eq=False)
class ModuleMap:
    """Linear map ``source -> target``; ``matrix`` has shape (target.dim, source.dim)."""

    source: ModuleRep
    target: ModuleRep
    matrix: np.ndarray

    def is_homomorphism(self) -> bool:
        p = self.source.p
        if self.matrix.shape != (self.target.dim, self.source.dim):
            return False
        return all(
            _same(linalg.matmul(self.matrix, xs, p), linalg.matmul(xt, self.matrix, p))
            for xs, xt in zip(self.source.actions, self.target.actions)
        )


def check_isomorphism_via_map(f: ModuleMap) -> bool:
    if f.source.spec != f.target.spec or f.source.dim != f.target.dim:
        return False
    if f.source.dim and linalg.inverse(f.matrix, f.source.p) is None:
        return False
    return f.is_homomorphism()


# -- constructions ---------------------------------------------------------

def restrict(spec: AlgebraSpec, actions: Sequence[np.ndarray], basis: np.ndarray, pivots: list[int]) -> ModuleRep:
    """Submodule spanned by the RREF rows ``basis`` (must be invariant)."""
    p = spec.p
    k = basis.shape[0]
    if k == 0:
        return zero_module(spec)
    acts = tuple(linalg.coordinates(basis, pivots, linalg.matmul(x, basis.T, p)) for x in actions)
    return ModuleRep(spec, acts)


def quotient(spec: AlgebraSpec, actions: Sequence[np.ndarray], basis: np.ndarray, pivots: list[int]) -> ModuleRep:
    """Quotient by the invariant subspace spanned by the RREF rows ``basis``."""
    p = spec.p
    n = actions[0].shape[0]
    proj, section = linalg.quotient_maps(basis, pivots, n, p)
    if proj.shape[0] == 0:
        return zero_module(spec)
    acts = tuple(linalg.matmul(linalg.matmul(proj, x, p), section, p) for x in actions)
    return ModuleRep(spec, acts)


def zero_module(spec: AlgebraSpec) -> ModuleRep:
    return ModuleRep(spec, tuple(linalg.zeros(0, 0, spec.p) for _ in range(spec.c)))


def regular_left_actions(spec: AlgebraSpec) -> list[np.ndarray]:
    return [left_mult_matrix(AlgebraElement.gen(spec, i + 1)) for i in range(spec.c)]


def regular_right_actions(spec: AlgebraSpec) -> list[np.ndarray]:
    return [right_mult_matrix(AlgebraElement.gen(spec, i + 1)) for i in range(spec.c)]


def free_module(spec: AlgebraSpec, rank: int) -> ModuleRep:
    """A^rank; basis index ``k * a^c + monomial index`` for copy ``k``."""
    if rank < 0:
        raise ValueError("rank must be >= 0")
    if rank == 0:
        return zero_module(spec)
    eye = linalg.identity(rank, spec.p)
    return ModuleRep(spec, tuple(np.kron(eye, x) for x in regular_left_actions(spec)), check=False)


def simple_module(spec: AlgebraSpec) -> ModuleRep:
    return ModuleRep(spec, tuple(linalg.zeros(1, 1, spec.p) for _ in range(spec.c)))


def cyclic_u_basis(spec: AlgebraSpec, lam: Sequence[int]) -> tuple[np.ndarray, list[int]]:
    """RREF basis (rows, monomial coordinates) of the left ideal A u_lambda."""
    if all(v % spec.p == 0 for v in lam):
        raise ZeroLambda("lambda must be nonzero")
    u = u_lambda(spec, lam)
    gens = right_mult_matrix(u)  # column m is m * u
    return linalg.row_space(gens.T, spec.p)


def cyclic_u_module(spec: AlgebraSpec, lam: Sequence[int]) -> ModuleRep:
    basis, pivots = cyclic_u_basis(spec, lam)
    return restrict(spec, regular_left_actions(spec), basis, pivots)


def twist(psi: DiagonalAutomorphism, m: ModuleRep) -> ModuleRep:
    if len(psi.mu) != m.spec.c or psi.p != m.p:
        raise SpecMismatch("automorphism does not match the module's algebra")
    return ModuleRep(m.spec, tuple(x * mu % m.p for x, mu in zip(m.actions, psi.mu)))


def twisted_bimodule(psi: DiagonalAutomorphism, spec: AlgebraSpec) -> BimoduleRep:
    """A with left action through psi and the ordinary right action."""
    if len(psi.mu) != spec.c or psi.p != spec.p:
        raise SpecMismatch("automorphism does not match the algebra")
    left = [x * mu % spec.p for x, mu in zip(regular_left_actions(spec), psi.mu)]
    return BimoduleRep(spec, tuple(left), tuple(regular_right_actions(spec)))


def regular_bimodule(spec: AlgebraSpec) -> BimoduleRep:
    return twisted_bimodule(DiagonalAutomorphism.identity(spec), spec)


def _balanced_quotient(spec, right_of_first, left_of_second, n1, n2):
    """Kernel data of B1 (x) M -> B1 (x)_A M: span of b x_i (x) m - b (x) x_i m."""
    p = spec.p
    eye1, eye2 = linalg.identity(n1, p), linalg.identity(n2, p)
    rels = [(np.kron(r, eye2) - np.kron(eye1, x)) % p for r, x in zip(right_of_first, left_of_second)]
    gens = np.concatenate(rels, axis=1).T
    return linalg.row_space(gens, p)


def tensor_bimodule_module(b: BimoduleRep, m: ModuleRep) -> ModuleRep:
    """B (x)_A M; basis = classes of b (x) m at non-pivot positions of the relation span.

    Basis vector ``b (x) m`` of the underlying B (x)_k M has index ``b * dim M + m``.
    """
    if b.spec != m.spec:
        raise SpecMismatch("bimodule and module over different algebras")
    spec, p = b.spec, b.spec.p
    if b.dim == 0 or m.dim == 0:
        return zero_module(spec)
    basis, pivots = _balanced_quotient(spec, b.right_actions, m.actions, b.dim, m.dim)
    eye = linalg.identity(m.dim, p)
    return quotient(spec, [np.kron(x, eye) for x in b.left_actions], basis, pivots)


def tensor_quotient_data(b: BimoduleRep, m: ModuleRep) -> tuple[np.ndarray, np.ndarray]:
    """Projection and section matrices realising B (x)_A M as a quotient of B (x)_k M."""
    basis, pivots = _balanced_quotient(b.spec, b.right_actions, m.actions, b.dim, m.dim)
    return linalg.quotient_maps(basis, pivots, b.dim * m.dim, b.spec.p)


def tensor_bimodules(b1: BimoduleRep, b2: BimoduleRep) -> BimoduleRep:
    if b1.spec != b2.spec:
        raise SpecMismatch("bimodules over different algebras")
    spec, p = b1.spec, b1.spec.p
    if b1.dim == 0 or b2.dim == 0:
        z = tuple(linalg.zeros(0, 0, p) for _ in range(spec.c))
        return BimoduleRep(spec, z, z)
    basis, pivots = _balanced_quotient(spec, b1.right_actions, b2.left_actions, b1.dim, b2.dim)
    proj, section = linalg.quotient_maps(basis, pivots, b1.dim * b2.dim, p)
    eye1, eye2 = linalg.identity(b1.dim, p), linalg.identity(b2.dim, p)

    def induced(x):
        return linalg.matmul(linalg.matmul(proj, x, p), section, p)

    left = tuple(induced(np.kron(x, eye2)) for x in b1.left_actions)
    right = tuple(induced(np.kron(eye1, x)) for x in b2.right_actions)
    return BimoduleRep(spec, left, right)


def direct_sum(m: ModuleRep, n: ModuleRep) -> ModuleRep:
    if m.spec != n.spec:
        raise SpecMismatch("modules over different algebras")
    p = m.p
    acts = []
    for x, y in zip(m.actions, n.actions):
        z = linalg.zeros(m.dim + n.dim, m.dim + n.dim, p)
        z[: m.dim, : m.dim] = x
        z[m.dim :, m.dim :] = y
        acts.append(z)
    return ModuleRep(m.spec, tuple(acts), check=False)


def submodule_generated(module: ModuleRep, vectors: np.ndarray) -> tuple[np.ndarray, list[int]]:
    """RREF basis of the submodule generated by the columns of ``vectors``."""
    p = module.p
    spans = [linalg.matmul(module.monomial_action(mono), vectors, p) for mono in module.spec.monomials]
    return linalg.row_space(np.concatenate(spans, axis=1).T, p)


def random_module(spec: AlgebraSpec, dim: int, seed: int) -> ModuleRep:
    """A random sub- or quotient module of a free module of dimension <= ``dim``.

    Deterministic in ``seed``; falls back to the simple module when no draw
    fits the bound.
    """
    rng = np.random.default_rng(seed)
    p = spec.p
    for _ in range(64):
        rank = int(rng.integers(1, 3))
        free = free_module(spec, rank)
        ngens = int(rng.integers(1, 3))
        gens = rng.integers(0, p, size=(free.dim, ngens)).astype(np.int64)
        # push generators into a random power of the radical for smaller modules
        depth = int(rng.integers(0, spec.a * spec.c // 2 + 1))
        for _ in range(depth):
            mono = spec.monomials[int(rng.integers(1, spec.dim))]
            gens = linalg.matmul(free.monomial_action(mono), gens, p)
        if not np.any(gens):
            continue
        basis, pivots = submodule_generated(free, gens)
        if rng.random() < 0.5:
            out = restrict(spec, free.actions, basis, pivots)
        else:
            out = quotient(spec, free.actions, basis, pivots)
        if 0 < out.dim <= dim:
            return out
    return simple_module(spec)


# -- explicit maps -----------------------------------------------------------

def multiplication_map(m: ModuleRep) -> np.ndarray:
    """A (x)_k M -> M, a (x) v -> a v, on the basis b * dim M + v."""
    spec = m.spec
    cols = [m.monomial_action(mono) for mono in spec.monomials]
    return np.concatenate(cols, axis=1) if cols and m.dim else linalg.zeros(m.dim, 0, m.p)


def canonical_twist_map(psi: DiagonalAutomorphism, m: ModuleRep) -> ModuleMap:
    """_psi A_1 (x)_A M -> _psi M, a (x) v -> a v."""
    b = twisted_bimodule(psi, m.spec)
    source = tensor_bimodule_module(b, m)
    target = twist(psi, m)
    if m.dim == 0:
        return ModuleMap(source, target, linalg.zeros(0, source.dim, m.p))
    _, section = tensor_quotient_data(b, m)
    return ModuleMap(source, target, linalg.matmul(multiplication_map(m), section, m.p))


def unit_map(m: ModuleRep) -> ModuleMap:
    """A (x)_A M -> M."""
    f = canonical_twist_map(DiagonalAutomorphism.identity(m.spec), m)
    return ModuleMap(f.source, m, f.matrix)


def proof_isomorphism(spec: AlgebraSpec, lam: Sequence[int], mu: Sequence[int]) -> ModuleMap:
    """A u_{mu^-1 lam} -> _psi_mu(A u_lam), w u_{mu^-1 lam} -> psi_mu(w) u_lam.

    On the ideal A u_{mu^-1 lam} inside A this is just psi_mu applied to
    elements, since psi_mu(u_{mu^-1 lam}) = u_lam.
    """
    p = spec.p
    psi = DiagonalAutomorphism(tuple(mu), p)
    lam_twisted = [l * pow(x, -1, p) % p for l, x in zip(lam, psi.mu)]
    src_basis, _ = cyclic_u_basis(spec, lam_twisted)
    tgt_basis, tgt_pivots = cyclic_u_basis(spec, lam)
    weights = np.array([psi.weight(mono) for mono in spec.monomials], dtype=np.int64)
    images = (src_basis * weights[None, :] % p).T  # columns in monomial coordinates
    matrix = linalg.coordinates(tgt_basis, tgt_pivots, images)
    if not linalg.in_span(tgt_basis, tgt_pivots, images, p):
        raise ValueError("psi_mu does not carry A u_{mu^-1 lambda} into A u_lambda")
    source = cyclic_u_module(spec, lam_twisted)
    target = twist(psi, cyclic_u_module(spec, lam))
    return ModuleMap(source, target, matrix)


def compose_maps(g: ModuleMap, f: ModuleMap) -> ModuleMap:
    """g o f."""
    return ModuleMap(f.source, g.target, linalg.matmul(g.matrix, f.matrix, f.source.p))


def invert_map(f: ModuleMap) -> ModuleMap | None:
    inv = linalg.inverse(f.matrix, f.source.p)
    if inv is None:
        return None
    return ModuleMap(f.target, f.source, inv)


def socle_acts(m: ModuleRep) -> bool:
    """True iff the socle monomial x_1^{a-1}...x_c^{a-1} acts nonzero, i.e. M has a free summand."""
    top_mono = (m.spec.a - 1,) * m.spec.c
    return bool(m.dim) and bool(np.any(m.monomial_action(top_mono)))
