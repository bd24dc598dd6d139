from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import given, strategies as st

from graphon_calculus.classpoly import (EdgePolynomial, build, class_function_violation,
                                        decompose_t, decompose_tinj, density_polynomial, evaluate,
                                        independence_rank, is_class_function, orbit_monomials,
                                        pullback_blow_up, symmetrize)
from graphon_calculus.errors import GraphonError, NotClassFunctionError
from graphon_calculus.homdensity import T, T_INJ, DensityCoefficients, t, t_inj
from graphon_calculus.multigraph import (EMPTY, automorphism_count, enumerate_classes,
                                         enumerate_up_to, from_edges, orbit_size)
from graphon_calculus.weighted_graph import blow_up, random_matrix

import oracles

EDGE = from_edges((0, 1))
DOUBLE = from_edges((0, 1), (0, 1))
PATH = from_edges((0, 1), (1, 2))
TWO = from_edges((0, 1), (2, 3))


def x(n, i, j):
    return EdgePolynomial.variable(n, i, j)


def as_dict(f):
    return dict(f.terms)


def test_polynomial_arithmetic():
    n = 3
    f = x(n, 0, 1) * x(n, 0, 1) + x(n, 1, 2).scale(3)
    assert f.degree == 2 and not f.is_homogeneous(2)
    assert set(f.homogeneous_parts()) == {1, 2}
    assert (f - f).is_zero() and (f - f).degree == -1
    assert f.partial(0, 1) == x(n, 0, 1).scale(2)
    a = random_matrix(3, 1)
    assert evaluate(f, a) == a[0, 1] ** 2 + 3 * a[1, 2]
    assert evaluate(f, a.to_float()) == pytest.approx(float(evaluate(f, a)))
    with pytest.raises(GraphonError):
        EdgePolynomial(3, {(((1, 1), 1),): 1})
    with pytest.raises(GraphonError):
        f + x(4, 0, 1)


def test_density_polynomials_match_oracle_expansion():
    n = 4
    for h in enumerate_up_to(3):
        for kind, inj in ((T, False), (T_INJ, True)):
            ref = oracles.density_expansion(h.edges, h.vertex_count, n, injective=inj)
            assert as_dict(density_polynomial(h, kind, n)) == ref


def test_density_polynomial_evaluates_to_density():
    a = random_matrix(5, 4)
    for h in enumerate_up_to(3):
        assert evaluate(density_polynomial(h, T, 5), a) == t(h, a)
        assert evaluate(density_polynomial(h, T_INJ, 5), a) == t_inj(h, a)


def test_orbit_sizes():
    for n in (3, 4, 5):
        for h in enumerate_up_to(3):
            if h.vertex_count <= n:
                assert len(orbit_monomials(h, n)) == orbit_size(h, n)


def test_class_function_detection():
    n = 3
    assert is_class_function(density_polynomial(PATH, T, n))
    f = x(n, 0, 1)
    msg = class_function_violation(f)
    assert msg is not None and "a1,2" in msg and "but 0" in msg
    g = x(n, 0, 1) + x(n, 0, 2) + x(n, 1, 2).scale(2)
    assert "but 2" in class_function_violation(g)
    with pytest.raises(NotClassFunctionError):
        decompose_tinj(f, 1)


def _random_poly(n, seed, terms=5, max_deg=3):
    rng = np.random.default_rng(seed)
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    acc = {}
    for _ in range(terms):
        deg = int(rng.integers(0, max_deg + 1))
        mono = {}
        for _ in range(deg):
            e = pairs[int(rng.integers(len(pairs)))]
            mono[e] = mono.get(e, 0) + 1
        acc[tuple(sorted(mono.items()))] = F(int(rng.integers(-5, 6)), int(rng.integers(1, 4)))
    return EdgePolynomial(n, acc)


@given(st.integers(2, 4), st.integers(0, 10 ** 6))
def test_symmetrize_matches_bruteforce_and_is_idempotent(n, seed):
    f = _random_poly(n, seed)
    s = symmetrize(f)
    assert as_dict(s) == oracles.symmetrize_bruteforce(f.terms, n)
    assert is_class_function(s)
    assert symmetrize(s) == s


def test_decompose_tinj_round_trip():
    n = 5
    for d in (1, 2, 3):
        hs = enumerate_classes(d, n)
        c = DensityCoefficients(T_INJ, n, {h: F(k + 1, 3) for k, h in enumerate(hs)})
        f = build(c)
        assert decompose_tinj(f, d) == c


def test_decompose_tinj_formula_on_edge():
    # t_inj(edge) on n=3: each pair gets 2/9; coefficient = (2/9) * 9 / 2 = 1
    f = density_polynomial(EDGE, T_INJ, 3)
    assert decompose_tinj(f, 1).coeffs == {EDGE: 1}
    assert automorphism_count(EDGE) == 2


def test_decompose_t_round_trip():
    for n in (4, 5):
        c = DensityCoefficients(T, n, {EMPTY: 2, EDGE: F(-1, 2), DOUBLE: 3, PATH: F(5, 7), TWO: -1})
        assert decompose_t(build(c), 2) == c


def test_decompose_t_requires_2N():
    f = density_polynomial(EDGE, T, 3)
    with pytest.raises(GraphonError, match="2N"):
        decompose_t(f, 2)
    with pytest.raises(GraphonError, match="degree"):
        decompose_t(density_polynomial(PATH, T, 4), 1)


def test_pullback_blow_up_matches_evaluation():
    n, k = 3, 2
    for h in enumerate_up_to(2):
        f = density_polynomial(h, T, n * k)
        g = pullback_blow_up(f, n, k)
        for seed in range(3):
            a = random_matrix(n, seed)
            assert evaluate(g, a) == evaluate(f, blow_up(a, k))
        # density is blow-up invariant
        assert g == density_polynomial(h, T, n)


def test_independence_rank():
    assert independence_rank(enumerate_up_to(2), 4, 12, 0) == 5
    with pytest.raises(GraphonError):
        independence_rank(enumerate_up_to(2), 4, 3, 0)
