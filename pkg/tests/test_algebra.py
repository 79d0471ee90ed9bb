import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from qcivar.algebra import (
    AlgebraElement,
    AlgebraSpec,
    DiagonalAutomorphism,
    GeneralAutomorphism,
    SpecMismatch,
    apply_automorphism,
    format_element,
    left_mult_matrix,
    multiply,
    parse_element,
    radical_basis,
    right_mult_matrix,
    u_lambda,
)

SPECS = [AlgebraSpec.create(2, 2, 5), AlgebraSpec.create(2, 3, 7), AlgebraSpec.create(3, 2, 5),
         AlgebraSpec.create(3, 3, 7), AlgebraSpec.create(2, 6, 3)]


def element(spec, data):
    return AlgebraElement.from_vector(spec, np.array(data[: spec.dim]) % spec.p)


def elements(spec):
    return st.lists(st.integers(0, spec.p - 1), min_size=spec.dim, max_size=spec.dim).map(
        lambda v: element(spec, v))


spec_and_three = st.sampled_from(SPECS).flatmap(
    lambda s: st.tuples(st.just(s), elements(s), elements(s), elements(s)))


def test_multiply_examples(spec237):
    x1, x2 = AlgebraElement.gen(spec237, 1), AlgebraElement.gen(spec237, 2)
    q_inv = pow(spec237.q, -1, 7)
    assert multiply(x1, x2) == AlgebraElement.monomial(spec237, (1, 1))
    assert multiply(x2, x1) == AlgebraElement.monomial(spec237, (1, 1), q_inv)
    assert multiply(x1**2, x1).is_zero()


def test_multiply_spec_mismatch(spec237, spec225):
    with pytest.raises(SpecMismatch):
        multiply(AlgebraElement.gen(spec237, 1), AlgebraElement.gen(spec225, 1))


def test_dimension_and_radical():
    assert [len(radical_basis(AlgebraSpec.create(c, a, p))) for c, a, p in [(2, 2, 5), (2, 3, 7), (3, 2, 5)]] == [3, 8, 7]
    assert radical_basis(AlgebraSpec.create(2, 2, 5)) == [(0, 1), (1, 0), (1, 1)]
    for s in SPECS:
        assert len(s.monomials) == s.a**s.c == s.dim


def test_u_lambda_examples(spec237):
    assert u_lambda(spec237, (1, 0)) == AlgebraElement.gen(spec237, 1)
    assert u_lambda(spec237, (1, 1)) == AlgebraElement.gen(spec237, 1) + AlgebraElement.gen(spec237, 2)
    assert u_lambda(spec237, (0, 0)).is_zero()


@settings(max_examples=200, deadline=None)
@given(spec_and_three)
def test_associativity(args):
    spec, x, y, z = args
    assert (x * y) * z == x * (y * z)


@pytest.mark.parametrize("spec", SPECS)
def test_q_commutation(spec):
    for i in range(1, spec.c + 1):
        for j in range(i + 1, spec.c + 1):
            xi, xj = AlgebraElement.gen(spec, i), AlgebraElement.gen(spec, j)
            assert xi * xj == (xj * xi).scale(spec.q)


@settings(max_examples=100, deadline=None)
@given(st.sampled_from(SPECS).flatmap(
    lambda s: st.tuples(st.just(s), st.lists(st.integers(0, s.p - 1), min_size=s.c, max_size=s.c))))
def test_u_lambda_nilpotent(args):
    spec, lam = args
    assert (u_lambda(spec, lam) ** spec.a).is_zero()


def test_apply_automorphism_examples(spec237):
    x1 = AlgebraElement.gen(spec237, 1)
    assert apply_automorphism(DiagonalAutomorphism((2, 1), 7), x1) == x1.scale(2)
    ident = DiagonalAutomorphism.identity(spec237)
    z = u_lambda(spec237, (3, 5)) * u_lambda(spec237, (1, 2)) + AlgebraElement.one(spec237)
    assert ident(z) == z
    mu, lam = (3, 5), (2, 6)
    # expand psi(u) term by term
    expected = AlgebraElement.gen(spec237, 1).scale(3 * 2) + AlgebraElement.gen(spec237, 2).scale(5 * 6)
    assert apply_automorphism(DiagonalAutomorphism(mu, 7), u_lambda(spec237, lam)) == expected
    assert expected == u_lambda(spec237, (6, 30))


@settings(max_examples=100, deadline=None)
@given(spec_and_three, st.data())
def test_automorphism_multiplicative_and_composition(args, data):
    spec, x, y, _ = args
    units = st.lists(st.integers(1, spec.p - 1), min_size=spec.c, max_size=spec.c)
    psi = DiagonalAutomorphism(tuple(data.draw(units)), spec.p)
    phi = DiagonalAutomorphism(tuple(data.draw(units)), spec.p)
    assert psi(x * y) == psi(x) * psi(y)
    assert psi(phi(x)) == psi.compose(phi)(x)
    assert psi.inverse()(psi(x)) == x


def test_general_automorphism(spec237):
    psi = DiagonalAutomorphism((3, 5), 7)
    g = GeneralAutomorphism.from_diagonal(spec237, psi)
    z = u_lambda(spec237, (1, 1)) ** 2 + AlgebraElement.gen(spec237, 2)
    assert g(z) == psi(z)
    x1, x2 = AlgebraElement.gen(spec237, 1), AlgebraElement.gen(spec237, 2)
    with pytest.raises(ValueError):
        GeneralAutomorphism([x2, x1])  # swapping breaks q-commutation when q != q^-1
    with pytest.raises(ValueError):
        GeneralAutomorphism([x1, x1 * x2])  # not a bijection


def test_mult_matrices_match_multiply(spec237):
    z = u_lambda(spec237, (2, 3)) + AlgebraElement.monomial(spec237, (0, 2), 4)
    for m in spec237.monomials:
        w = AlgebraElement.monomial(spec237, m)
        col = spec237.index(m)
        assert np.array_equal(left_mult_matrix(z)[:, col], (z * w).to_vector())
        assert np.array_equal(right_mult_matrix(z)[:, col], (w * z).to_vector())


def test_text_form(spec237):
    z = AlgebraElement.gen(spec237, 2) * AlgebraElement.gen(spec237, 1) + AlgebraElement.gen(spec237, 1).scale(3)
    assert format_element(z) == "3*x1^1x2^0 + 4*x1^1x2^1"
    assert parse_element(spec237, format_element(z)) == z
    assert format_element(AlgebraElement.zero(spec237)) == "0"
    assert str(AlgebraElement.one(spec237)) == "1*x1^0x2^0"
