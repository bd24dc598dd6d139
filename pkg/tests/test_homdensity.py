from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from graphon_calculus.errors import BasisError
from graphon_calculus.homdensity import (T, T_FROM_TINJ, T_INJ, TINJ_FROM_T, DensityCoefficients,
                                         density, graphon_density_consistency, t, t_bruteforce,
                                         t_inj, t_inj_bruteforce, t_to_tinj, transform_matrix)
from graphon_calculus.multigraph import EMPTY, disjoint_union, enumerate_up_to, from_edges
from graphon_calculus.weighted_graph import make, permute, random_matrix

import oracles

EDGE = from_edges((0, 1))
DOUBLE = from_edges((0, 1), (0, 1))
PATH = from_edges((0, 1), (1, 2))
TWO = from_edges((0, 1), (2, 3))
TRIANGLE = from_edges((0, 1), (1, 2), (0, 2))
K2 = make([[0, 1], [1, 0]])


def rows(a):
    return [list(r) for r in a.entries]


def test_hand_values():
    assert t(EDGE, K2) == F(1, 2)
    assert t(PATH, K2) == F(1, 4)
    assert t_inj(PATH, K2) == 0
    assert t(EMPTY, K2) == 1
    assert t(TRIANGLE, K2) == 0
    half = make([[0, F(1, 2)], [F(1, 2), 0]])
    assert t(DOUBLE, half) == F(1, 8)


@pytest.mark.parametrize("seed", range(6))
def test_engines_match_oracle(seed):
    n = 2 + seed % 4
    a = random_matrix(n, seed)
    for h in enumerate_up_to(3):
        ref = oracles.hom_density(h.edges, h.vertex_count, rows(a))
        assert t(h, a) == ref == t_bruteforce(h, a)
        ref_inj = oracles.hom_density(h.edges, h.vertex_count, rows(a), injective=True)
        assert t_inj(h, a) == ref_inj == t_inj_bruteforce(h, a)


def test_float_input_close_to_exact():
    a = random_matrix(5, 2)
    for h in enumerate_up_to(3):
        assert t(h, a.to_float()) == pytest.approx(float(t(h, a)), rel=1e-12, abs=1e-15)
        assert t_inj(h, a.to_float()) == pytest.approx(float(t_inj(h, a)), rel=1e-10, abs=1e-14)


def test_tinj_zero_when_too_many_vertices():
    a = random_matrix(3, 1)
    assert t_inj(TWO, a) == 0


@given(st.integers(2, 5), st.integers(0, 10 ** 6), st.permutations(range(5)))
def test_permutation_invariance(n, seed, perm):
    sigma = [p for p in perm if p < n]
    a = random_matrix(n, seed)
    b = permute(a, sigma)
    for h in enumerate_up_to(2):
        assert t(h, a) == t(h, b)
        assert t_inj(h, a) == t_inj(h, b)


@given(st.integers(2, 4), st.integers(0, 10 ** 6))
def test_multiplicative_over_disjoint_union(n, seed):
    a = random_matrix(n, seed)
    hs = enumerate_up_to(2)
    for h1 in hs:
        for h2 in hs:
            assert t(disjoint_union(h1, h2), a) == t(h1, a) * t(h2, a)


def test_step_graphon_consistency():
    for seed in range(3):
        a = random_matrix(3, seed)
        for h in enumerate_up_to(2):
            assert graphon_density_consistency(h, a) == t(h, a)


def test_t_to_tinj_path():
    c = t_to_tinj(PATH, 2)
    assert c.basis == T_INJ
    assert c.coeffs == {PATH: 1, DOUBLE: F(1, 2)}
    a = K2
    assert c.evaluate(a) == t(PATH, a)


def test_transform_matrix_unit_lower_triangular_and_inverse():
    basis = enumerate_up_to(2)
    fwd = transform_matrix(basis, 4, T_FROM_TINJ)
    inv = transform_matrix(basis, 4, TINJ_FROM_T)
    m = len(basis)
    for i in range(m):
        assert fwd.entries[i][i] == 1
        assert all(fwd.entries[i][j] == 0 for j in range(i + 1, m))
    prod = [[sum(fwd.entries[i][k] * inv.entries[k][j] for k in range(m)) for j in range(m)] for i in range(m)]
    assert prod == [[int(i == j) for j in range(m)] for i in range(m)]
    assert fwd.entries[fwd.index(PATH)][fwd.index(DOUBLE)] == F(1, 4)
    assert fwd.entries[fwd.index(TWO)][fwd.index(DOUBLE)] == F(1, 8)
    a = random_matrix(4, 9)
    tinj_vals = [t_inj(h, a) for h in basis]
    assert fwd.apply(tinj_vals) == [t(h, a) for h in basis]
    assert inv.apply([t(h, a) for h in basis]) == tinj_vals


def test_transform_matrix_rejects_bad_basis():
    with pytest.raises(BasisError):
        transform_matrix([EMPTY, PATH], 4, T_FROM_TINJ)
    with pytest.raises(BasisError):
        transform_matrix([EMPTY, PATH, DOUBLE], 4, T_FROM_TINJ)
    with pytest.raises(BasisError):
        transform_matrix([EMPTY, EDGE, DOUBLE, PATH, TWO], 3, TINJ_FROM_T)


def test_density_coefficients():
    c = DensityCoefficients(T, 4, {EDGE: 2, PATH: 0})
    assert c.coeffs == {EDGE: F(2)}
    assert c[PATH] == 0 and c.max_edges == 1
    a = random_matrix(4, 0)
    assert c.evaluate(a) == 2 * t(EDGE, a)
    assert density(EDGE, a, T_INJ) == t_inj(EDGE, a)
