import itertools

import pytest

from qcivar.algebra import AlgebraSpec
from qcivar.properties import run_property_suite
from qcivar.variety import F_map, ProjPoint, is_subset, line_of, projective_points
from qcivar.verify import (
    FieldUnsuitable,
    PreconditionViolated,
    corollary_sides,
    run_corollary_demo,
    run_counterexample,
    sharpness_scan,
)


def test_counterexample_default():
    r = run_counterexample(2, 3, 7, (1, 1), (1, 3))
    assert r.V_M.coords() == [[1, 1]]
    assert r.V_BM.coords() == [[1, 6]]
    # F(mu^-1 lam) = (1, (3^-1)^3) = (1, 5^3 mod 7)
    assert pow(5, 3, 7) == 6
    assert r.predicted_V_M == r.V_M and r.predicted_V_BM == r.V_BM
    assert not r.containment_holds and r.iso_verified and r.passed
    assert r.to_dict()["verdict"] == "PASS"


def test_counterexample_a2_p5():
    r = run_counterexample(2, 2, 5, (1, 1), (1, 2))
    assert r.V_M.coords() == [[1, 1]] and r.V_BM.coords() == [[1, 4]]
    assert not r.containment_holds and r.passed


@pytest.mark.parametrize("lam,mu,clause", [
    ((1, 1), (1, 1), "mu-generic"),
    ((1, 1), (1, 2), "mu-generic"),
    ((0, 0), (1, 3), "lambda-nonzero"),
    ((1, 1), (0, 3), "mu-units"),
    ((1, 1, 1), (1, 3), "lambda-length"),
])
def test_counterexample_preconditions(lam, mu, clause):
    with pytest.raises(PreconditionViolated) as exc:
        run_counterexample(2, 3, 7, lam, mu)
    assert exc.value.clause == clause


def test_field_unsuitable():
    with pytest.raises(FieldUnsuitable):
        run_counterexample(2, 3, 11, (1, 1), (1, 3))


def test_corollary_demo():
    rep = run_corollary_demo(2, 3, 7, (1, 1), (1, 3))
    assert rep["V_b_B_cap_V_M"]["points"] == [[1, 1]]
    assert rep["V_B_tensor_M"]["points"] == [[1, 6]]
    assert rep["V_b_B"]["points"] == [[0, 1], [1, 0], [1, 1], [1, 6]]
    assert rep["tensor_formula_fails"] and rep["control_M_equals_k_formula_holds"]
    assert rep["verdict"] == "PASS"


def test_corollary_sanity_identity_twist():
    spec = AlgebraSpec.create(2, 3, 7)
    sides = corollary_sides(spec, (1, 2), (1, 1))
    assert sides["V_BM"] == sides["V_M"] == sides["intersection"]


def test_identity_twist_gives_equal_lines_both_ways():
    for lam in projective_points(2, 7):
        for mu in itertools.product(range(1, 7), repeat=2):
            if pow(mu[0], 3, 7) != pow(mu[1], 3, 7):
                continue
            moved = ProjPoint(tuple(l * pow(x, -1, 7) for l, x in zip(lam.coords, mu)), 7)
            a, b = line_of(F_map(lam, 3)), line_of(F_map(moved, 3))
            assert is_subset(a, b) and is_subset(b, a)


@pytest.mark.parametrize("a,p", [(2, 3), (2, 5), (3, 7)])
def test_sharpness_on_full_support_lambda(a, p):
    rows = sharpness_scan(2, a, p)
    assert all(r.scans_match for r in rows)
    for r in rows:
        if all(r.lam):
            assert r.noncontainment == r.powers_differ, r
        else:
            # a coordinate axis is fixed by every diagonal twist
            assert not r.noncontainment


def test_precondition_pairs_with_full_support_give_counterexamples():
    for a, p in [(2, 5), (3, 7)]:
        for lam in projective_points(2, p):
            if not all(lam.coords):
                continue
            for mu in itertools.product(range(1, p), repeat=2):
                if pow(mu[0], a, p) == pow(mu[1], a, p):
                    continue
                r = run_counterexample(2, a, p, lam.coords, mu)
                assert r.passed, (lam, mu)


def test_axis_lambda_is_not_a_counterexample():
    r = run_counterexample(2, 3, 7, (1, 0), (1, 3))
    assert r.containment_holds and r.iso_verified and not r.passed


def test_property_suite_default_passes():
    rep = run_property_suite(seed=0, cases=50)
    assert rep["passed"], [r for r in rep["results"] if r["status"] != "PASS"]
    assert rep["properties_run"] == len(rep["results"]) == 20
    assert all(r["cases"] >= 1 for r in rep["results"])
    assert rep["total_cases"] == sum(r["cases"] for r in rep["results"])


def test_property_suite_detects_injected_fault():
    rep = run_property_suite(seed=0, cases=50, fault="rank-threshold")
    status = {r["property"]: r["status"] for r in rep["results"]}
    assert not rep["passed"]
    assert status["criterion-soundness"] == "FAIL"
    assert status["algebra-associativity"] == "PASS"
