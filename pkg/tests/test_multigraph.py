import math

import pytest
from hypothesis import given, strategies as st

from graphon_calculus.errors import SelfLoopError
from graphon_calculus.multigraph import (EMPTY, automorphism_count, canonicalize, collapse_simple,
                                         enumerate_classes, enumerate_up_to, from_edges,
                                         loopless_quotients, set_partitions)

import oracles

EDGE = from_edges((0, 1))
DOUBLE = from_edges((0, 1), (0, 1))
PATH = from_edges((0, 1), (1, 2))
TWO = from_edges((0, 1), (2, 3))
TRIANGLE = from_edges((0, 1), (1, 2), (0, 2))


def test_canonicalize_drops_isolated_vertices():
    h = canonicalize(6, [(2, 5)])
    assert h == EDGE
    assert h.vertex_count == 2


def test_isomorphic_inputs_share_form():
    a = canonicalize(3, [(0, 1), (1, 2)])
    b = canonicalize(3, [(0, 2), (2, 1)])
    assert a.canonical_form == b.canonical_form


def test_double_edge_distinct_from_single():
    assert DOUBLE != EDGE
    assert not oracles.isomorphic([(0, 1, 2)], [(0, 1, 1)])
    assert DOUBLE.edge_count == 2 and DOUBLE.vertex_count == 2


def test_self_loop_rejected():
    with pytest.raises(SelfLoopError, match="vertex 1"):
        canonicalize(3, [(0, 1), (1, 1)])


def test_triple_and_pair_forms_agree():
    assert canonicalize(2, [(0, 1, 2)]) == canonicalize(2, [(0, 1), (1, 0)])


@st.composite
def raw_multigraphs(draw, max_v=6, max_e=6):
    n = draw(st.integers(2, max_v))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    edges = draw(st.lists(st.sampled_from(pairs), min_size=0, max_size=max_e))
    return n, edges


@given(raw_multigraphs(), st.randoms(use_true_random=False))
def test_canonicalize_label_invariant(g, rnd):
    n, edges = g
    perm = list(range(n))
    rnd.shuffle(perm)
    h = canonicalize(n, edges)
    assert canonicalize(n, [(perm[u], perm[v]) for u, v in edges]) == h
    # idempotent on its own edge list
    assert canonicalize(h.vertex_count, h.edges) == h
    assert h.edges == canonicalize(h.vertex_count, h.edges).edges


@given(raw_multigraphs(max_v=5, max_e=5), raw_multigraphs(max_v=5, max_e=5))
def test_canonical_equality_matches_bruteforce_isomorphism(g1, g2):
    h1, h2 = canonicalize(*g1), canonicalize(*g2)
    assert (h1 == h2) == oracles.isomorphic(g1[1], g2[1])


@pytest.mark.parametrize("d,count", [(0, 1), (1, 1), (2, 3), (3, 8)])
def test_enumerate_sizes_match_bruteforce(d, count):
    hs = enumerate_classes(d)
    assert len(hs) == count
    if d >= 1:
        assert len(oracles.brute_classes(d)) == count
        brute = {canonicalize(2 * d, ms) for ms in oracles.brute_classes(d)}
        assert brute == set(hs)


def test_enumerate_d2_members():
    assert set(enumerate_classes(2)) == {DOUBLE, PATH, TWO}
    assert enumerate_classes(0) == (EMPTY,)
    assert enumerate_classes(1) == (EDGE,)


def test_enumerate_networkx_crosscheck():
    assert len(oracles.iso_classes_networkx(3)) == len(enumerate_classes(3))


def test_enumerate_order_and_up_to():
    hs = enumerate_classes(3)
    assert list(hs) == sorted(hs, key=lambda h: (h.vertex_count, h.canonical_form))
    assert enumerate_up_to(0) == (EMPTY,)
    assert enumerate_up_to(1) == (EMPTY, EDGE)
    assert len(enumerate_up_to(2)) == 5


@pytest.mark.parametrize("d", [1, 2, 3, 4])
def test_restricted_counts_monotone_and_stabilize(d):
    counts = [len(enumerate_classes(d, n)) for n in range(0, 2 * d + 3)]
    assert counts == sorted(counts)
    assert counts[2 * d] == len(enumerate_classes(d))
    assert all(c == counts[2 * d] for c in counts[2 * d:])


@pytest.mark.parametrize("h,aut", [(EDGE, 2), (TRIANGLE, 6), (PATH, 2), (DOUBLE, 2), (TWO, 8)])
def test_automorphism_examples(h, aut):
    assert automorphism_count(h) == aut


def test_automorphism_count_matches_bruteforce_and_divides():
    for h in enumerate_up_to(3):
        if h.vertex_count <= 6:
            assert automorphism_count(h) == oracles.aut_bruteforce(h.edges) if h.edges else True
            assert math.factorial(h.vertex_count) % automorphism_count(h) == 0


def test_set_partitions_bell_numbers():
    assert [sum(1 for _ in set_partitions(range(k))) for k in range(7)] == [1, 1, 2, 5, 15, 52, 203]


def test_quotients_single_edge():
    qs = loopless_quotients(EDGE)
    assert len(qs) == 1 and qs[0][0].is_identity and qs[0][1] == EDGE


def test_quotients_path():
    qs = loopless_quotients(PATH)
    assert sorted(q for _, q in qs) == sorted([PATH, DOUBLE])


def test_quotients_two_disjoint_edges():
    qs = loopless_quotients(TWO)
    assert len(qs) == 7
    got = [q for _, q in qs]
    assert PATH in got and DOUBLE in got and TWO in got


def test_quotient_properties():
    for h in enumerate_up_to(3):
        qs = loopless_quotients(h)
        assert any(p.is_identity for p, _ in qs)
        for p, q in qs:
            assert q.edge_count == h.edge_count
            assert q.vertex_count == len(p.blocks)
            touched = {x for u, v, _ in q.edges for x in (u, v)}
            assert touched == set(range(q.vertex_count))


def test_collapse_simple():
    assert collapse_simple(DOUBLE) == EDGE
    assert collapse_simple(TRIANGLE) == TRIANGLE
    assert collapse_simple(from_edges((0, 1), (0, 1), (1, 2), (0, 2))) == TRIANGLE
    for h in enumerate_up_to(3):
        c = collapse_simple(h)
        assert c.is_simple
        assert collapse_simple(c) == c
        assert c.vertex_count == h.vertex_count
