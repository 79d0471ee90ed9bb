"""End-to-end checks of the non-containment counterexample.

Every variety is computed twice: by the closed-form line through F(...) and
by a full projective scan.  The isomorphism A u_{mu^-1 lam} = _psi(A u_lam)
is checked with explicit matrices.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Sequence

from .algebra import AlgebraSpec, DiagonalAutomorphism
from .exactfield import NoSuchRoot
from .modules import (
    canonical_twist_map,
    check_isomorphism_via_map,
    compose_maps,
    cyclic_u_module,
    invert_map,
    proof_isomorphism,
    simple_module,
    tensor_bimodule_module,
    twisted_bimodule,
)
from .variety import (
    F_map,
    ProjPoint,
    VarietySet,
    intersect,
    is_subset,
    line_of,
    support_variety,
)

FIDELITY_NOTE = (
    "varieties are scanned over F_p-rational points of P^{c-1} only; "
    "support variety = F-image of the rank variety"
)


class PreconditionViolated(ValueError):
    def __init__(self, clause: str, message: str):
        super().__init__(f"{clause}: {message}")
        self.clause = clause


class FieldUnsuitable(ValueError):
    pass


def make_spec(c: int, a: int, p: int, q: int | None = None) -> AlgebraSpec:
    try:
        return AlgebraSpec.create(c, a, p, q)
    except NoSuchRoot as exc:
        raise FieldUnsuitable(str(exc)) from exc


def check_preconditions(spec: AlgebraSpec, lam: Sequence[int], mu: Sequence[int]) -> None:
    p, a, c = spec.p, spec.a, spec.c
    if len(lam) != c:
        raise PreconditionViolated("lambda-length", f"lambda needs {c} components, got {len(lam)}")
    if len(mu) != c:
        raise PreconditionViolated("mu-length", f"mu needs {c} components, got {len(mu)}")
    if all(x % p == 0 for x in lam):
        raise PreconditionViolated("lambda-nonzero", "lambda must be a nonzero point")
    if any(x % p == 0 for x in mu):
        raise PreconditionViolated("mu-units", f"all mu_i must be nonzero, got {list(mu)}")
    powers = {pow(x, a, p) for x in mu}
    if len(powers) == 1:
        raise PreconditionViolated(
            "mu-generic", f"the mu_i^a must not all be equal (all equal {powers.pop()} for a={a})"
        )


def twisted_point(lam: Sequence[int], mu: Sequence[int], p: int) -> tuple[int, ...]:
    """mu^-1 lam, componentwise."""
    return tuple(l * pow(m, -1, p) % p for l, m in zip(lam, mu))


@dataclass
class CounterexampleReport:
    params: dict
    V_M: VarietySet
    V_BM: VarietySet
    predicted_V_M: VarietySet
    predicted_V_BM: VarietySet
    containment_holds: bool
    iso_verified: bool
    dims: dict = field(default_factory=dict)

    @property
    def scans_match(self) -> bool:
        return self.V_M == self.predicted_V_M and self.V_BM == self.predicted_V_BM

    @property
    def passed(self) -> bool:
        return self.scans_match and self.iso_verified and not self.containment_holds

    def to_dict(self) -> dict:
        return {
            "params": self.params,
            "dims": self.dims,
            "V_M": self.V_M.to_dict(),
            "V_BM": self.V_BM.to_dict(),
            "predicted_V_M": self.predicted_V_M.to_dict(),
            "predicted_V_BM": self.predicted_V_BM.to_dict(),
            "scans_match_predictions": self.scans_match,
            "containment_holds": self.containment_holds,
            "iso_verified": self.iso_verified,
            "verdict": "PASS" if self.passed else "FAIL",
            "note": FIDELITY_NOTE,
        }


def _counterexample_data(spec: AlgebraSpec, lam, mu):
    p = spec.p
    psi = DiagonalAutomorphism(tuple(mu), p)
    m = cyclic_u_module(spec, lam)
    b = twisted_bimodule(psi, spec)
    bm = tensor_bimodule_module(b, m)
    return psi, m, b, bm


def verify_isomorphism(spec: AlgebraSpec, lam, mu) -> bool:
    """A u_{mu^-1 lam} -> _psi(A u_lam) <- _psi A_1 (x)_A A u_lam, both explicit isomorphisms."""
    psi = DiagonalAutomorphism(tuple(mu), spec.p)
    f = proof_isomorphism(spec, lam, mu)
    g = canonical_twist_map(psi, cyclic_u_module(spec, lam))
    if not (check_isomorphism_via_map(f) and check_isomorphism_via_map(g)):
        return False
    g_inv = invert_map(g)
    return g_inv is not None and check_isomorphism_via_map(compose_maps(g_inv, f))


def run_counterexample(c: int, a: int, p: int, lam, mu, q: int | None = None, workers: int = 1) -> CounterexampleReport:
    spec = make_spec(c, a, p, q)
    lam, mu = tuple(int(x) % p for x in lam), tuple(int(x) % p for x in mu)
    check_preconditions(spec, lam, mu)
    _, m, _, bm = _counterexample_data(spec, lam, mu)
    v_m = support_variety(m, workers=workers)
    v_bm = support_variety(bm, workers=workers)
    pred_m = line_of(F_map(ProjPoint(lam, p), a))
    pred_bm = line_of(F_map(ProjPoint(twisted_point(lam, mu, p), p), a))
    return CounterexampleReport(
        params={"c": c, "a": a, "p": p, "q": spec.q, "a_bar": spec.field.a_bar,
                "lambda": list(lam), "mu": list(mu)},
        V_M=v_m,
        V_BM=v_bm,
        predicted_V_M=pred_m,
        predicted_V_BM=pred_bm,
        containment_holds=is_subset(v_bm, v_m),
        iso_verified=verify_isomorphism(spec, lam, mu),
        dims={"M": m.dim, "B": spec.dim, "B_tensor_M": bm.dim},
    )


def corollary_sides(spec: AlgebraSpec, lam, mu) -> dict:
    """V^b(B) := V(B (x)_A k), V^b(B) & V(M) and V(B (x)_A M), no preconditions."""
    psi, m, b, bm = _counterexample_data(spec, lam, mu)
    k = simple_module(spec)
    v_b = support_variety(tensor_bimodule_module(b, k))
    v_m = support_variety(m)
    v_bm = support_variety(bm)
    return {"V_b_B": v_b, "V_M": v_m, "intersection": intersect(v_b, v_m), "V_BM": v_bm,
            "V_k": support_variety(k)}


def run_corollary_demo(c: int, a: int, p: int, lam, mu, q: int | None = None) -> dict:
    spec = make_spec(c, a, p, q)
    lam, mu = tuple(int(x) % p for x in lam), tuple(int(x) % p for x in mu)
    check_preconditions(spec, lam, mu)
    sides = corollary_sides(spec, lam, mu)
    unequal = sides["intersection"] != sides["V_BM"]
    # control: with M = k the formula reads V(B (x) k) = V^b(B) & V(k), both sides full
    control_equal = intersect(sides["V_b_B"], sides["V_k"]) == sides["V_b_B"]
    return {
        "params": {"c": c, "a": a, "p": p, "q": spec.q, "lambda": list(lam), "mu": list(mu)},
        "V_b_B": sides["V_b_B"].to_dict(),
        "V_M": sides["V_M"].to_dict(),
        "V_b_B_cap_V_M": sides["intersection"].to_dict(),
        "V_B_tensor_M": sides["V_BM"].to_dict(),
        "tensor_formula_fails": unequal,
        "control_M_equals_k_formula_holds": control_equal,
        "verdict": "PASS" if unequal and control_equal else "FAIL",
        "note": FIDELITY_NOTE,
    }


@dataclass
class SharpnessRow:
    lam: tuple[int, ...]
    mu: tuple[int, ...]
    powers_differ: bool
    noncontainment: bool
    scans_match: bool


def sharpness_scan(c: int, a: int, p: int, q: int | None = None) -> list[SharpnessRow]:
    """All lambda in P^{c-1}(F_p) against all mu in (F_p^*)^c.

    Non-containment is decided by scanned varieties; ``scans_match`` records
    whether both scans equal the predicted lines.
    """
    from .variety import projective_points

    spec = make_spec(c, a, p, q)
    rows = []
    units = range(1, p)
    for lam_pt in projective_points(c, p):
        lam = lam_pt.coords
        m = cyclic_u_module(spec, lam)
        v_m = support_variety(m)
        pred_m = line_of(F_map(lam_pt, a))
        for mu in itertools.product(units, repeat=c):
            b = twisted_bimodule(DiagonalAutomorphism(mu, p), spec)
            v_bm = support_variety(tensor_bimodule_module(b, m))
            pred_bm = line_of(F_map(ProjPoint(twisted_point(lam, mu, p), p), a))
            rows.append(SharpnessRow(
                lam=lam,
                mu=tuple(mu),
                powers_differ=len({pow(x, a, p) for x in mu}) > 1,
                noncontainment=not is_subset(v_bm, v_m),
                scans_match=(v_m == pred_m and v_bm == pred_bm),
            ))
    return rows
