"""Loopless multigraphs without isolated vertices, up to isomorphism.

Vertices are 0-based throughout the library; the text format is 1-based.
Canonical labelings are found by exhaustive search over the labelings that
respect a vertex-invariant ordering, which is fine for the small graphs used
here (up to roughly 10 vertices).
"""
from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import GraphonError, SelfLoopError

_CHUNK = 50_000


@dataclass(frozen=True, eq=False)
class Multigraph:
    """Canonical representative of an isomorphism class.

    ``edges`` holds ``(u, v, m)`` triples with ``u < v`` under the canonical
    labeling. Equality and hashing go through ``canonical_form`` only.
    """

    vertex_count: int
    edges: tuple[tuple[int, int, int], ...]
    canonical_form: bytes

    def __eq__(self, other):
        if not isinstance(other, Multigraph):
            return NotImplemented
        return self.canonical_form == other.canonical_form

    def __hash__(self):
        return hash(self.canonical_form)

    def __lt__(self, other: Multigraph) -> bool:
        return self.sort_key < other.sort_key

    @property
    def sort_key(self) -> tuple[int, bytes]:
        return (self.vertex_count, self.canonical_form)

    @property
    def edge_count(self) -> int:
        """Number of edges counted with multiplicity, i.e. |E(H)|."""
        return sum(m for _, _, m in self.edges)

    @property
    def is_simple(self) -> bool:
        return all(m == 1 for _, _, m in self.edges)

    @property
    def hex(self) -> str:
        return self.canonical_form.hex()

    def adjacency(self) -> np.ndarray:
        return _adjacency(self.vertex_count, self.edges)

    def __repr__(self) -> str:
        es = " ".join(f"{u}-{v}" + (f"x{m}" if m > 1 else "") for u, v, m in self.edges)
        return f"Multigraph(V={self.vertex_count}, [{es}])"


@dataclass(frozen=True)
class VertexPartition:
    blocks: tuple[tuple[int, ...], ...]

    def block_of(self) -> dict[int, int]:
        return {v: b for b, block in enumerate(self.blocks) for v in block}

    @property
    def is_identity(self) -> bool:
        return all(len(b) == 1 for b in self.blocks)


@lru_cache(maxsize=None)
def _triu(n: int) -> tuple[np.ndarray, np.ndarray]:
    return np.triu_indices(n, 1)


def _adjacency(n: int, edges: Iterable[tuple[int, int, int]]) -> np.ndarray:
    adj = np.zeros((n, n), dtype=np.int64)
    for u, v, m in edges:
        adj[u, v] += m
        adj[v, u] += m
    return adj


def _normalize_edges(vertex_count: int, raw_edges) -> Counter:
    counts: Counter = Counter()
    for e in raw_edges:
        if len(e) == 2:
            u, v = e
            m = 1
        elif len(e) == 3:
            u, v, m = e
        else:
            raise GraphonError(f"edge {e!r} must be (u, v) or (u, v, multiplicity)")
        if u == v:
            raise SelfLoopError(f"self-loop at vertex {u} in edge {tuple(e)!r}")
        if not (0 <= u < vertex_count and 0 <= v < vertex_count):
            raise GraphonError(f"edge {tuple(e)!r} has a label outside 0..{vertex_count - 1}")
        if m < 1:
            raise GraphonError(f"edge {tuple(e)!r} has non-positive multiplicity")
        counts[(min(u, v), max(u, v))] += m
    return counts


def _vertex_invariant(adj: np.ndarray, v: int) -> tuple:
    row = adj[v]
    mults = tuple(sorted((int(m) for m in row if m), reverse=True))
    # neighbour degree profile gives a cheap extra refinement round
    nbr = tuple(sorted((int(adj[u].sum()) for u in np.nonzero(row)[0]), reverse=True))
    return (int(row.sum()), len(mults), mults, nbr)


def _cells(adj: np.ndarray) -> list[list[int]]:
    n = adj.shape[0]
    inv = {v: _vertex_invariant(adj, v) for v in range(n)}
    keys = sorted(set(inv.values()), reverse=True)
    return [[v for v in range(n) if inv[v] == k] for k in keys]


def _cell_labelings(cells: list[list[int]]) -> Iterator[np.ndarray]:
    """Yield chunks of labelings; row ``p`` maps new label k to old vertex p[k]."""
    if not cells:
        yield np.zeros((1, 0), dtype=np.int64)
        return
    prod = itertools.product(*(itertools.permutations(c) for c in cells))
    while True:
        chunk = [sum(p, ()) for p in itertools.islice(prod, _CHUNK)]
        if not chunk:
            return
        yield np.asarray(chunk, dtype=np.int64)


def _canonical_vector(adj: np.ndarray) -> tuple[np.ndarray, int]:
    """Lexicographically largest upper-triangle vector over invariant-respecting
    labelings, together with the number of labelings attaining it."""
    n = adj.shape[0]
    iu, ju = _triu(n)
    best = None
    hits = 0
    for perms in _cell_labelings(_cells(adj)):
        vecs = adj[perms[:, iu], perms[:, ju]]
        if vecs.shape[1] == 0:
            best, hits = vecs[0], hits + len(vecs)
            continue
        order = np.lexsort(vecs.T[::-1])
        top = vecs[order[-1]]
        if best is None or tuple(top) > tuple(best):
            best, hits = top, 0
        if tuple(top) == tuple(best):
            hits += int(np.all(vecs == best, axis=1).sum())
    return best, hits


def _encode(n: int, vec: np.ndarray) -> bytes:
    if n > 255 or (len(vec) and int(vec.max()) > 0xFFFF):
        raise GraphonError("multigraph too large for the canonical encoding")
    return bytes([n]) + b"".join(int(x).to_bytes(2, "big") for x in vec)


def _from_vector(n: int, vec: np.ndarray) -> Multigraph:
    iu, ju = _triu(n)
    edges = tuple((int(i), int(j), int(m)) for i, j, m in zip(iu, ju, vec) if m)
    return Multigraph(n, edges, _encode(n, vec))


def canonicalize(vertex_count: int, raw_edges) -> Multigraph:
    """Isomorphism-class representative of a multigraph given by edges.

    ``raw_edges`` may contain ``(u, v)`` pairs (repeats add multiplicity) or
    ``(u, v, m)`` triples. Isolated vertices are dropped.
    """
    counts = _normalize_edges(vertex_count, raw_edges)
    used = sorted({x for e in counts for x in e})
    relabel = {v: i for i, v in enumerate(used)}
    n = len(used)
    adj = _adjacency(n, ((relabel[u], relabel[v], m) for (u, v), m in counts.items()))
    vec, _ = _canonical_vector(adj)
    return _from_vector(n, vec)


def from_edges(*edges) -> Multigraph:
    """Shorthand: ``from_edges((0, 1), (1, 2))`` with vertex count inferred."""
    n = 1 + max((max(e[0], e[1]) for e in edges), default=-1)
    return canonicalize(n, edges)


EMPTY = canonicalize(0, ())


@lru_cache(maxsize=None)
def automorphism_count(h: Multigraph) -> int:
    """Number of vertex bijections preserving every edge multiplicity."""
    adj = h.adjacency()
    n = h.vertex_count
    iu, ju = np.triu_indices(n, 1)
    target = adj[iu, ju]
    count = 0
    # automorphisms preserve the invariant cells, so restrict to them
    cells = _cells(adj)
    order = [v for c in cells for v in c]
    for perms in _cell_labelings(cells):
        # perms maps position k (a vertex of `order`) to an image vertex
        images = np.empty_like(perms)
        images[:, order] = perms
        count += int(np.all(adj[images[:, iu], images[:, ju]] == target, axis=1).sum())
    return count


def set_partitions(items: Sequence[int]) -> Iterator[tuple[tuple[int, ...], ...]]:
    """All set partitions of ``items`` via restricted growth strings."""
    items = list(items)
    if not items:
        yield ()
        return

    def grow(i: int, labels: list[int], top: int):
        if i == len(items):
            blocks: list[list[int]] = [[] for _ in range(top + 1)]
            for x, b in zip(items, labels):
                blocks[b].append(x)
            yield tuple(tuple(b) for b in blocks)
            return
        for b in range(top + 2):
            labels.append(b)
            yield from grow(i + 1, labels, max(top, b))
            labels.pop()

    yield from grow(1, [0], 0)


def quotient(h: Multigraph, partition: VertexPartition) -> Multigraph:
    """H/P with multiplicities summed; raises if a block contains an edge."""
    block = partition.block_of()
    edges = [(block[u], block[v], m) for u, v, m in h.edges]
    return canonicalize(len(partition.blocks), edges)


@lru_cache(maxsize=None)
def loopless_quotients(h: Multigraph) -> tuple[tuple[VertexPartition, Multigraph], ...]:
    """Every vertex partition with no edge inside a block, paired with H/P."""
    adj = h.adjacency()
    out = []
    for blocks in set_partitions(range(h.vertex_count)):
        if any(adj[u, v] for b in blocks for u, v in itertools.combinations(b, 2)):
            continue
        p = VertexPartition(blocks)
        out.append((p, quotient(h, p)))
    return tuple(out)


def collapse_simple(h: Multigraph) -> Multigraph:
    return canonicalize(h.vertex_count, [(u, v) for u, v, _ in h.edges])


def disjoint_union(g: Multigraph, h: Multigraph) -> Multigraph:
    k = g.vertex_count
    edges = list(g.edges) + [(u + k, v + k, m) for u, v, m in h.edges]
    return canonicalize(k + h.vertex_count, edges)


@lru_cache(maxsize=None)
def _classes(d: int) -> tuple[Multigraph, ...]:
    if d == 0:
        return (EMPTY,)
    found = set()
    for g in _classes(d - 1):
        n = g.vertex_count
        base = list(g.edges)
        # the new edge touches 0, 1 or 2 existing vertices
        candidates = list(itertools.combinations(range(n), 2))
        candidates += [(u, n) for u in range(n)]
        candidates.append((n, n + 1))
        for u, v in candidates:
            found.add(canonicalize(n + 2, base + [(u, v, 1)]))
    return tuple(sorted(found))


def enumerate_classes(d: int, max_vertices: int | None = None) -> tuple[Multigraph, ...]:
    """The classes with exactly ``d`` edges (optionally at most ``max_vertices``
    vertices), ordered by vertex count then canonical form."""
    if d < 0:
        raise GraphonError("edge count must be non-negative")
    hs = _classes(d)
    if max_vertices is not None:
        hs = tuple(h for h in hs if h.vertex_count <= max_vertices)
    return hs


def enumerate_up_to(n_edges: int, max_vertices: int | None = None) -> tuple[Multigraph, ...]:
    """Classes with at most ``n_edges`` edges, grouped by edge count."""
    return tuple(h for d in range(n_edges + 1) for h in enumerate_classes(d, max_vertices))


def orbit_size(h: Multigraph, n: int) -> int:
    """Number of distinct copies of H on the vertex set of size n."""
    v = h.vertex_count
    if v > n:
        return 0
    return math.perm(n, v) // automorphism_count(h)
