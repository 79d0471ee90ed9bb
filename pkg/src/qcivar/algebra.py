"""The quantum complete intersection A = k<x_1..x_c>/(x_i^a, x_i x_j - q x_j x_i).

Elements are kept in the normal-form basis x_1^e_1 ... x_c^e_c (0 <= e_i < a)
as sparse coefficient maps.  Monomials are exponent tuples and are ordered
lexicographically, which is also the order of the dense coordinate vectors.
"""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from functools import cached_property
from typing import Mapping, Sequence

import numpy as np

from . import linalg
from .exactfield import FieldSpec

Monomial = tuple[int, ...]


class SpecMismatch(ValueError):
    pass


@dataclass(frozen=True)
class AlgebraSpec:
    field: FieldSpec
    c: int
    a: int

    def __post_init__(self):
        if self.c < 2:
            raise ValueError(f"c must be >= 2, got {self.c}")
        if self.a < 2:
            raise ValueError(f"a must be >= 2, got {self.a}")
        if self.field.a != self.a:
            raise SpecMismatch(f"field built for a={self.field.a}, algebra has a={self.a}")

    @classmethod
    def create(cls, c: int, a: int, p: int, q: int | None = None) -> "AlgebraSpec":
        return cls(FieldSpec.create(p, a, q), c, a)

    @property
    def p(self) -> int:
        return self.field.p

    @property
    def q(self) -> int:
        return self.field.q

    @property
    def dim(self) -> int:
        return self.a**self.c

    @cached_property
    def monomials(self) -> list[Monomial]:
        return list(itertools.product(range(self.a), repeat=self.c))

    @cached_property
    def _index(self) -> dict[Monomial, int]:
        return {m: i for i, m in enumerate(self.monomials)}

    def index(self, m: Monomial) -> int:
        return self._index[m]

    def generator(self, i: int) -> Monomial:
        """Exponent tuple of x_{i+1} (0-based ``i``)."""
        e = [0] * self.c
        e[i] = 1
        return tuple(e)

    def to_dict(self) -> dict:
        return {"c": self.c, "a": self.a, **self.field.to_dict()}

    @classmethod
    def from_dict(cls, d: Mapping) -> "AlgebraSpec":
        return cls.create(d["c"], d["a"], d["p"], d.get("q"))


def monomial_product(spec: AlgebraSpec, e: Monomial, f: Monomial) -> tuple[int, Monomial | None]:
    """Normal form of x^e x^f as ``(coefficient, monomial)``.

    Moving x_j left past x_i (i > j) costs a factor q^{-1}; truncation gives
    ``(0, None)``.
    """
    g = tuple(x + y for x, y in zip(e, f))
    if any(x >= spec.a for x in g):
        return 0, None
    swaps = sum(e[i] * f[j] for i in range(spec.c) for j in range(i))
    return pow(spec.field.q_inv, swaps, spec.p), g


@dataclass(frozen=True)
class AlgebraElement:
    spec: AlgebraSpec
    terms: tuple[tuple[Monomial, int], ...]

    @classmethod
    def from_dict(cls, spec: AlgebraSpec, coeffs: Mapping[Monomial, int]) -> "AlgebraElement":
        p = spec.p
        clean = {}
        for m, v in coeffs.items():
            m = tuple(m)
            if len(m) != spec.c or any(not 0 <= x < spec.a for x in m):
                raise ValueError(f"invalid monomial {m} for c={spec.c}, a={spec.a}")
            v = int(v) % p
            if v:
                clean[m] = v
        return cls(spec, tuple(sorted(clean.items())))

    @classmethod
    def zero(cls, spec: AlgebraSpec) -> "AlgebraElement":
        return cls(spec, ())

    @classmethod
    def one(cls, spec: AlgebraSpec) -> "AlgebraElement":
        return cls(spec, (((0,) * spec.c, 1),))

    @classmethod
    def monomial(cls, spec: AlgebraSpec, m: Monomial, coeff: int = 1) -> "AlgebraElement":
        return cls.from_dict(spec, {tuple(m): coeff})

    @classmethod
    def gen(cls, spec: AlgebraSpec, i: int) -> "AlgebraElement":
        """x_i with 1-based ``i``."""
        return cls.monomial(spec, spec.generator(i - 1))

    @classmethod
    def from_vector(cls, spec: AlgebraSpec, vec) -> "AlgebraElement":
        return cls.from_dict(spec, {m: int(v) for m, v in zip(spec.monomials, vec) if int(v) % spec.p})

    @property
    def coefficients(self) -> dict[Monomial, int]:
        return dict(self.terms)

    def to_vector(self) -> np.ndarray:
        v = linalg.zeros(self.spec.dim, 1, self.spec.p)[:, 0]
        for m, x in self.terms:
            v[self.spec.index(m)] = x
        return v

    def is_zero(self) -> bool:
        return not self.terms

    def _check(self, other: "AlgebraElement"):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        if other.spec != self.spec:
            raise SpecMismatch("elements of different algebras")
        return other

    def __add__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        out = self.coefficients
        for m, v in other.terms:
            out[m] = out.get(m, 0) + v
        return AlgebraElement.from_dict(self.spec, out)

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, s: int) -> "AlgebraElement":
        return AlgebraElement.from_dict(self.spec, {m: v * s for m, v in self.terms})

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        if self._check(other) is NotImplemented:
            return NotImplemented
        return multiply(self, other)

    def __rmul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, n: int) -> "AlgebraElement":
        out = AlgebraElement.one(self.spec)
        for _ in range(n):
            out = out * self
        return out

    def __str__(self):
        return format_element(self)


def multiply(x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
    if x.spec != y.spec:
        raise SpecMismatch("elements of different algebras")
    spec, p = x.spec, x.spec.p
    out: dict[Monomial, int] = {}
    for e, u in x.terms:
        for f, v in y.terms:
            coeff, g = monomial_product(spec, e, f)
            if g is not None:
                out[g] = (out.get(g, 0) + coeff * u * v) % p
    return AlgebraElement.from_dict(spec, out)


def u_lambda(spec: AlgebraSpec, lam: Sequence[int]) -> AlgebraElement:
    """The linear element sum_i lam_i x_i."""
    if len(lam) != spec.c:
        raise ValueError(f"lambda needs {spec.c} components, got {len(lam)}")
    return AlgebraElement.from_dict(spec, {spec.generator(i): v for i, v in enumerate(lam)})


def radical_basis(spec: AlgebraSpec) -> list[Monomial]:
    return [m for m in spec.monomials if any(m)]


def left_mult_matrix(x: AlgebraElement) -> np.ndarray:
    """Matrix of w -> x w on the monomial basis (columns are images)."""
    spec = x.spec
    out = linalg.zeros(spec.dim, spec.dim, spec.p)
    for col, m in enumerate(spec.monomials):
        for e, u in x.terms:
            coeff, g = monomial_product(spec, e, m)
            if g is not None:
                row = spec.index(g)
                out[row, col] = (out[row, col] + coeff * u) % spec.p
    return out


def right_mult_matrix(x: AlgebraElement) -> np.ndarray:
    """Matrix of w -> w x on the monomial basis."""
    spec = x.spec
    out = linalg.zeros(spec.dim, spec.dim, spec.p)
    for col, m in enumerate(spec.monomials):
        for e, u in x.terms:
            coeff, g = monomial_product(spec, m, e)
            if g is not None:
                row = spec.index(g)
                out[row, col] = (out[row, col] + coeff * u) % spec.p
    return out


@dataclass(frozen=True)
class DiagonalAutomorphism:
    """x_i -> mu_i x_i."""

    mu: tuple[int, ...]
    p: int

    def __post_init__(self):
        mu = tuple(int(v) % self.p for v in self.mu)
        if any(v == 0 for v in mu):
            raise ValueError(f"diagonal automorphism needs all mu_i nonzero, got {mu}")
        object.__setattr__(self, "mu", mu)

    @classmethod
    def identity(cls, spec: AlgebraSpec) -> "DiagonalAutomorphism":
        return cls((1,) * spec.c, spec.p)

    def compose(self, other: "DiagonalAutomorphism") -> "DiagonalAutomorphism":
        """self o other (diagonal automorphisms commute, so order is cosmetic)."""
        return DiagonalAutomorphism(tuple(x * y for x, y in zip(self.mu, other.mu)), self.p)

    def inverse(self) -> "DiagonalAutomorphism":
        return DiagonalAutomorphism(tuple(pow(x, -1, self.p) for x in self.mu), self.p)

    def weight(self, m: Monomial) -> int:
        w = 1
        for x, e in zip(self.mu, m):
            w = w * pow(x, e, self.p) % self.p
        return w

    def __call__(self, x: AlgebraElement) -> AlgebraElement:
        return apply_automorphism(self, x)


def apply_automorphism(psi, x: AlgebraElement) -> AlgebraElement:
    if isinstance(psi, GeneralAutomorphism):
        return psi(x)
    if len(psi.mu) != x.spec.c:
        raise SpecMismatch(f"automorphism has {len(psi.mu)} components, algebra has c={x.spec.c}")
    return AlgebraElement.from_dict(x.spec, {m: v * psi.weight(m) for m, v in x.terms})


class GeneralAutomorphism:
    """Automorphism given by the images of the generators.

    Construction checks that the relations map to zero and that the induced
    linear map is bijective.
    """

    def __init__(self, images: Sequence[AlgebraElement]):
        if not images:
            raise ValueError("need generator images")
        self.spec = images[0].spec
        if len(images) != self.spec.c or any(g.spec != self.spec for g in images):
            raise SpecMismatch("need one image per generator, all in the same algebra")
        self.images = tuple(images)
        spec, q = self.spec, self.spec.q
        for i, g in enumerate(images):
            if not (g**spec.a).is_zero():
                raise ValueError(f"image of x_{i + 1} does not satisfy x^a = 0")
        for i in range(spec.c):
            for j in range(i + 1, spec.c):
                rel = images[i] * images[j] - (images[j] * images[i]).scale(q)
                if not rel.is_zero():
                    raise ValueError(f"images of x_{i + 1}, x_{j + 1} violate q-commutation")
        if linalg.inverse(self.matrix(), spec.p) is None:
            raise ValueError("generator images do not define a bijection")

    def _image_of_monomial(self, m: Monomial) -> AlgebraElement:
        out = AlgebraElement.one(self.spec)
        for g, e in zip(self.images, m):
            out = out * g**e
        return out

    def matrix(self) -> np.ndarray:
        cols = [self._image_of_monomial(m).to_vector() for m in self.spec.monomials]
        return np.stack(cols, axis=1)

    def __call__(self, x: AlgebraElement) -> AlgebraElement:
        out = AlgebraElement.zero(self.spec)
        for m, v in x.terms:
            out = out + self._image_of_monomial(m).scale(v)
        return out

    @classmethod
    def from_diagonal(cls, spec: AlgebraSpec, psi: DiagonalAutomorphism) -> "GeneralAutomorphism":
        return cls([AlgebraElement.gen(spec, i + 1).scale(mu) for i, mu in enumerate(psi.mu)])


def format_monomial(m: Monomial) -> str:
    return "".join(f"x{i + 1}^{e}" for i, e in enumerate(m))


def format_element(x: AlgebraElement) -> str:
    """Canonical text ``coeff*x1^e1...xc^ec + ...`` in ascending monomial order."""
    if not x.terms:
        return "0"
    return " + ".join(f"{v}*{format_monomial(m)}" for m, v in x.terms)


_TERM = re.compile(r"^(\d+)\*((?:x\d+\^\d+)+)$")
_FACTOR = re.compile(r"x(\d+)\^(\d+)")


def parse_element(spec: AlgebraSpec, text: str) -> AlgebraElement:
    text = text.strip()
    if text == "0":
        return AlgebraElement.zero(spec)
    coeffs: dict[Monomial, int] = {}
    for term in text.split(" + "):
        match = _TERM.match(term.strip())
        if not match:
            raise ValueError(f"cannot parse term {term!r}")
        e = [0] * spec.c
        for idx, exp in _FACTOR.findall(match.group(2)):
            e[int(idx) - 1] = int(exp)
        m = tuple(e)
        coeffs[m] = coeffs.get(m, 0) + int(match.group(1))
    return AlgebraElement.from_dict(spec, coeffs)

