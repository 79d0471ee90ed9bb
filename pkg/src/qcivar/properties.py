"""Randomized and exhaustive structural checks, aggregated into one report."""
from __future__ import annotations

import itertools
from typing import Callable

import numpy as np

from . import linalg
from .algebra import AlgebraElement, AlgebraSpec, DiagonalAutomorphism, apply_automorphism, u_lambda
from .exactfield import FieldElement, find_primitive_root, multiplicative_order
from .homology import complexity_estimate, ext_dims_via_hom, is_projective, resolve, syzygy
from .modules import (
    ModuleRep,
    canonical_twist_map,
    check_isomorphism_via_map,
    cyclic_u_module,
    direct_sum,
    free_module,
    proof_isomorphism,
    random_module,
    simple_module,
    socle_acts,
    tensor_bimodule_module,
    tensor_bimodules,
    twist,
    twisted_bimodule,
    unit_map,
)
from .variety import (
    F_map,
    ProjPoint,
    jordan_oracle_in_variety,
    line_of,
    point_in_rank_variety,
    projective_points,
    support_variety,
    union,
)

CONFIGS = [(2, 2, 5), (2, 3, 7), (3, 2, 5)]
MAX_DIM = 12


def _specs():
    return [AlgebraSpec.create(c, a, p) for c, a, p in CONFIGS]


def _random_element(spec: AlgebraSpec, rng: np.random.Generator) -> AlgebraElement:
    return AlgebraElement.from_vector(spec, rng.integers(0, spec.p, size=spec.dim))


def _random_units(spec: AlgebraSpec, rng) -> tuple[int, ...]:
    return tuple(int(x) for x in rng.integers(1, spec.p, size=spec.c))


def _random_point(spec: AlgebraSpec, rng) -> ProjPoint:
    pts = projective_points(spec.c, spec.p)
    return pts[int(rng.integers(len(pts)))]


def _random_module(spec, rng) -> ModuleRep:
    return random_module(spec, MAX_DIM, int(rng.integers(2**31)))


def buggy_rank_criterion(m: ModuleRep, lam) -> bool:
    """Rank threshold off by one; used to check that the suite notices."""
    from .variety import restriction_operator

    u = restriction_operator(m, lam)
    a = m.spec.a
    r = linalg.rank(linalg.matpow(u, a - 1, m.p), m.p)
    return not (a * r >= m.dim - 1)


# Each property gets (rng, n) and returns (cases, failures).

def prop_field_inverse(rng, n, ctx):
    fails = 0
    for _ in range(n):
        p = int(rng.choice([5, 7, 11, 13, 101, 2**31 - 1]))
        x = FieldElement(int(rng.integers(1, p)), p)
        fails += (x * x.inv()).value != 1
    return n, fails


def prop_primitive_root(rng, n, ctx):
    cases = fails = 0
    for p in [3, 5, 7, 11, 13, 31, 37]:
        for d in range(1, p):
            if (p - 1) % d:
                continue
            q = find_primitive_root(d, p).value
            cases += 1
            fails += multiplicative_order(q, p) != d or any(
                multiplicative_order(x, p) == d for x in range(1, q))
    return cases, fails


def prop_associativity(rng, n, ctx):
    fails = 0
    for i in range(n):
        spec = ctx["specs"][i % len(ctx["specs"])]
        x, y, z = (_random_element(spec, rng) for _ in range(3))
        fails += (x * y) * z != x * (y * z)
    return n, fails


def prop_q_commutation(rng, n, ctx):
    cases = fails = 0
    for spec in ctx["specs"]:
        for i in range(1, spec.c + 1):
            for j in range(i + 1, spec.c + 1):
                xi, xj = AlgebraElement.gen(spec, i), AlgebraElement.gen(spec, j)
                cases += 1
                fails += xi * xj != (xj * xi).scale(spec.q)
    return cases, fails


def prop_u_lambda_nilpotent(rng, n, ctx):
    fails = 0
    for i in range(n):
        spec = ctx["specs"][i % len(ctx["specs"])]
        lam = rng.integers(0, spec.p, size=spec.c)
        fails += not (u_lambda(spec, lam) ** spec.a).is_zero()
    return n, fails


def prop_automorphism_multiplicative(rng, n, ctx):
    fails = 0
    for i in range(n):
        spec = ctx["specs"][i % len(ctx["specs"])]
        psi = DiagonalAutomorphism(_random_units(spec, rng), spec.p)
        x, y = _random_element(spec, rng), _random_element(spec, rng)
        fails += apply_automorphism(psi, x * y) != apply_automorphism(psi, x) * apply_automorphism(psi, y)
    return n, fails


def prop_automorphism_composition(rng, n, ctx):
    fails = 0
    for i in range(n):
        spec = ctx["specs"][i % len(ctx["specs"])]
        psi = DiagonalAutomorphism(_random_units(spec, rng), spec.p)
        phi = DiagonalAutomorphism(_random_units(spec, rng), spec.p)
        x = _random_element(spec, rng)
        fails += psi(phi(x)) != psi.compose(phi)(x)
    return n, fails


def prop_module_relations(rng, n, ctx):
    fails = 0
    for i in range(n):
        spec = ctx["specs"][i % len(ctx["specs"])]
        m = _random_module(spec, rng)
        try:
            ModuleRep(spec, m.actions)
        except ValueError:
            fails += 1
    return n, fails


def prop_unit_law(rng, n, ctx):
    fails = 0
    for i in range(n):
        spec = ctx["specs"][i % len(ctx["specs"])]
        m = _random_module(spec, rng)
        fails += not check_isomorphism_via_map(unit_map(m))
    return n, fails


def prop_twist_tensor(rng, n, ctx):
    fails = 0
    for i in range(n):
        spec = ctx["specs"][i % len(ctx["specs"])]
        m = _random_module(spec, rng)
        psi = DiagonalAutomorphism(_random_units(spec, rng), spec.p)
        f = canonical_twist_map(psi, m)
        fails += not (f.target == twist(psi, m) and check_isomorphism_via_map(f))
    return n, fails


def prop_tensor_associativity_dims(rng, n, ctx):
    fails = 0
    for i in range(n):
        spec = ctx["specs"][i % len(ctx["specs"])]
        b1 = twisted_bimodule(DiagonalAutomorphism(_random_units(spec, rng), spec.p), spec)
        b2 = twisted_bimodule(DiagonalAutomorphism(_random_units(spec, rng), spec.p), spec)
        m = _random_module(spec, rng)
        lhs = tensor_bimodule_module(tensor_bimodules(b1, b2), m)
        rhs = tensor_bimodule_module(b1, tensor_bimodule_module(b2, m))
        fails += lhs.dim != rhs.dim or support_variety(lhs) != support_variety(rhs)
    return n, fails


def prop_proof_isomorphism(rng, n, ctx):
    spec = AlgebraSpec.create(2, 2, 5)
    cases = fails = 0
    for lam in projective_points(2, 5):
        for mu in itertools.product(range(1, 5), repeat=2):
            cases += 1
            fails += not check_isomorphism_via_map(proof_isomorphism(spec, lam.coords, mu))
    return cases, fails


def prop_betti_matches_ext(rng, n, ctx):
    cases = fails = 0
    for (c, a, p), depth in [((2, 2, 5), 5), ((2, 3, 7), 4), ((3, 2, 5), 3)]:
        spec = AlgebraSpec.create(c, a, p)
        k = simple_module(spec)
        cases += 1
        fails += resolve(k, depth).betti != ext_dims_via_hom(k, depth)
    return cases, fails


def prop_resolution_minimal(rng, n, ctx):
    fails = 0
    for i in range(n):
        spec = ctx["specs"][i % len(ctx["specs"])]
        fails += not resolve(_random_module(spec, rng), 3).minimal
    return n, fails


def prop_complexity_coherence(rng, n, ctx):
    cases = fails = 0
    for spec in ctx["specs"]:
        cases += 2
        fails += complexity_estimate(resolve(simple_module(spec), 8).betti) != spec.c
        lam = (1,) * spec.c
        fails += complexity_estimate(resolve(cyclic_u_module(spec, lam), 8).betti) != 1
    return cases, fails


def prop_projectivity_detection(rng, n, ctx):
    fails = cases = 0
    for spec in ctx["specs"]:
        fixed = [free_module(spec, 1), free_module(spec, 2), simple_module(spec),
                 cyclic_u_module(spec, (1,) * spec.c)]
        for m in fixed:
            cases += 1
            fails += support_variety(m, criterion=ctx["criterion"]).trivial != is_projective(m)
    for i in range(n):
        spec = ctx["specs"][i % len(ctx["specs"])]
        m = _random_module(spec, rng)
        cases += 1
        fails += support_variety(m, criterion=ctx["criterion"]).trivial != is_projective(m)
    return cases, fails


def prop_direct_sum_union(rng, n, ctx):
    fails = 0
    for i in range(n):
        spec = ctx["specs"][i % len(ctx["specs"])]
        m, k = _random_module(spec, rng), _random_module(spec, rng)
        crit = ctx["criterion"]
        lhs = support_variety(direct_sum(m, k), criterion=crit)
        fails += lhs != union(support_variety(m, criterion=crit), support_variety(k, criterion=crit))
    return n, fails


def prop_syzygy_invariance(rng, n, ctx):
    cases = fails = 0
    attempts = 0
    while cases < n and attempts < 20 * n:
        attempts += 1
        spec = ctx["specs"][attempts % len(ctx["specs"])]
        m = _random_module(spec, rng)
        if socle_acts(m) or is_projective(m):
            continue
        cases += 1
        crit = ctx["criterion"]
        fails += support_variety(syzygy(m), criterion=crit) != support_variety(m, criterion=crit)
    return cases, fails + (cases < n)


def prop_twist_transport(rng, n, ctx):
    spec = AlgebraSpec.create(2, 3, 7)
    p = spec.p
    cases = fails = 0
    for lam in projective_points(2, p):
        m = cyclic_u_module(spec, lam.coords)
        for mu in itertools.product(range(1, p), repeat=2):
            cases += 1
            moved = ProjPoint(tuple(l * pow(x, -1, p) for l, x in zip(lam.coords, mu)), p)
            v = support_variety(twist(DiagonalAutomorphism(mu, p), m), criterion=ctx["criterion"])
            fails += v != line_of(F_map(moved, spec.a))
    return cases, fails


def prop_rank_criterion_soundness(rng, n, ctx):
    fails = 0
    total = max(n, 200)
    for i in range(total):
        spec = ctx["specs"][i % len(ctx["specs"])]
        m = _random_module(spec, rng)
        lam = _random_point(spec, rng)
        fails += ctx["criterion"](m, lam) != jordan_oracle_in_variety(m, lam)
    return total, fails


PROPERTIES: list[tuple[str, Callable]] = [
    ("field-inverse", prop_field_inverse),
    ("primitive-root-order", prop_primitive_root),
    ("algebra-associativity", prop_associativity),
    ("q-commutation", prop_q_commutation),
    ("u-lambda-nilpotent", prop_u_lambda_nilpotent),
    ("automorphism-multiplicative", prop_automorphism_multiplicative),
    ("automorphism-composition", prop_automorphism_composition),
    ("module-relations", prop_module_relations),
    ("unit-law", prop_unit_law),
    ("twist-tensor", prop_twist_tensor),
    ("tensor-associativity", prop_tensor_associativity_dims),
    ("proof-isomorphism", prop_proof_isomorphism),
    ("betti-vs-ext", prop_betti_matches_ext),
    ("resolution-minimal", prop_resolution_minimal),
    ("complexity-coherence", prop_complexity_coherence),
    ("projectivity-detection", prop_projectivity_detection),
    ("direct-sum-union", prop_direct_sum_union),
    ("syzygy-invariance", prop_syzygy_invariance),
    ("twist-transport", prop_twist_transport),
    ("criterion-soundness", prop_rank_criterion_soundness),
]


def run_property_suite(seed: int = 0, cases: int = 50, only: list[str] | None = None,
                       fault: str | None = None) -> dict:
    """Run every property; ``fault="rank-threshold"`` swaps in a broken freeness test."""
    if fault not in (None, "rank-threshold"):
        raise ValueError(f"unknown fault {fault!r}")
    ctx = {
        "specs": _specs(),
        "criterion": buggy_rank_criterion if fault else point_in_rank_variety,
    }
    results = []
    for idx, (name, fn) in enumerate(PROPERTIES):
        if only and name not in only:
            continue
        rng = np.random.default_rng([seed, idx])
        n, failed = fn(rng, cases, ctx)
        results.append({"property": name, "cases": int(n), "failures": int(failed),
                        "status": "PASS" if failed == 0 else "FAIL"})
    return {
        "seed": seed,
        "cases_per_property": cases,
        "fault": fault,
        "properties_run": len(results),
        "total_cases": sum(r["cases"] for r in results),
        "results": results,
        "passed": all(r["status"] == "PASS" for r in results),
    }
