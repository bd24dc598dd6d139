"""Homomorphism densities t(H, a), injective densities t_inj(H, a), and the
unit-triangular change of basis between them."""
from __future__ import annotations

import itertools
import math
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .errors import BasisError, GraphonError
from .multigraph import Multigraph, loopless_quotients
from .weighted_graph import WeightedMatrix, step_graphon_eval

T = "t"
T_INJ = "tinj"
BASES = (T, T_INJ)

T_FROM_TINJ = "t_from_tinj"
TINJ_FROM_T = "tinj_from_t"


@dataclass
class DensityCoefficients:
    """Finite linear combination of t(H, .) or t_inj(H, .) on matrices of size ``ambient_n``."""

    basis: str
    ambient_n: int
    coeffs: dict[Multigraph, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        if self.basis not in BASES:
            raise GraphonError(f"unknown basis {self.basis!r}")
        self.coeffs = {h: Fraction(c) for h, c in self.coeffs.items() if c != 0}

    def __getitem__(self, h: Multigraph) -> Fraction:
        return self.coeffs.get(h, Fraction(0))

    def items(self):
        return sorted(self.coeffs.items(), key=lambda kv: (kv[0].edge_count, kv[0].sort_key))

    def __eq__(self, other):
        if not isinstance(other, DensityCoefficients):
            return NotImplemented
        return (self.basis, self.ambient_n, self.coeffs) == (other.basis, other.ambient_n, other.coeffs)

    @property
    def max_edges(self) -> int:
        return max((h.edge_count for h in self.coeffs), default=0)

    def evaluate(self, a):
        f = t if self.basis == T else t_inj
        return sum((c * f(h, a) for h, c in self.coeffs.items()), Fraction(0))


@dataclass(frozen=True)
class TransformMatrix:
    basis: tuple[Multigraph, ...]
    entries: tuple[tuple[Fraction, ...], ...]
    ambient_n: int
    direction: str

    def index(self, h: Multigraph) -> int:
        return self.basis.index(h)

    def apply(self, values: Sequence) -> list:
        """Row-vector map: out[i] = sum_j entries[i][j] * values[j]."""
        return [sum((m * v for m, v in zip(row, values)), Fraction(0)) for row in self.entries]


def _operand(a):
    if isinstance(a, WeightedMatrix):
        return a.array(), True
    arr = np.asarray(a)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise GraphonError("density input must be a square matrix")
    return arr, arr.dtype == object


def t_bruteforce(h: Multigraph, a) -> Fraction | float:
    """Reference semantics: the defining sum over all vertex tuples."""
    arr, exact = _operand(a)
    n = arr.shape[0]
    total = Fraction(0) if exact else 0.0
    for tup in itertools.product(range(n), repeat=h.vertex_count):
        prod = Fraction(1) if exact else 1.0
        for u, v, m in h.edges:
            prod *= arr[tup[u], tup[v]] ** m
        total += prod
    return total / Fraction(n) ** h.vertex_count if exact else total / n ** h.vertex_count


def t_inj_bruteforce(h: Multigraph, a) -> Fraction | float:
    """Defining sum restricted to tuples of pairwise distinct vertices."""
    arr, exact = _operand(a)
    n = arr.shape[0]
    total = Fraction(0) if exact else 0.0
    for tup in itertools.permutations(range(n), h.vertex_count):
        prod = Fraction(1) if exact else 1.0
        for u, v, m in h.edges:
            prod *= arr[tup[u], tup[v]] ** m
        total += prod
    return total / Fraction(n) ** h.vertex_count if exact else total / n ** h.vertex_count


def elimination_order(h: Multigraph) -> list[int]:
    """Greedy minimum degree on the simple underlying graph; ties by index."""
    nbrs = {v: set() for v in range(h.vertex_count)}
    for u, v, _ in h.edges:
        nbrs[u].add(v)
        nbrs[v].add(u)
    order = []
    while nbrs:
        x = min(nbrs, key=lambda v: (len(nbrs[v]), v))
        order.append(x)
        for u in nbrs[x]:
            nbrs[u] |= nbrs[x] - {u}
            nbrs[u].discard(x)
        del nbrs[x]
    return order


def _expand(scope_in: tuple[int, ...], arr: np.ndarray, scope: list[int]) -> np.ndarray:
    perm = sorted(range(len(scope_in)), key=lambda i: scope.index(scope_in[i]))
    arr = arr.transpose(perm)
    n = arr.shape[0] if arr.ndim else 1
    return arr.reshape([n if s in scope_in else 1 for s in scope])


def t(h: Multigraph, a) -> Fraction | float:
    """t(H, a) by variable elimination over H's vertices.

    Exact for WeightedMatrix or object arrays of Fractions, floating point for
    float arrays.
    """
    arr, exact = _operand(a)
    n = arr.shape[0]
    one = Fraction(1) if exact else 1.0
    if h.vertex_count == 0:
        return one
    factors: list[tuple[tuple[int, ...], np.ndarray]] = [
        ((u, v), arr ** m if m > 1 else arr) for u, v, m in h.edges
    ]
    result = one
    for x in elimination_order(h):
        touching = [f for f in factors if x in f[0]]
        factors = [f for f in factors if x not in f[0]]
        scope = sorted({v for vs, _ in touching for v in vs})
        prod = None
        for vs, arr_f in touching:
            e = _expand(vs, arr_f, scope)
            prod = e if prod is None else prod * e
        summed = prod.sum(axis=scope.index(x))
        rest = tuple(v for v in scope if v != x)
        if rest:
            factors.append((rest, summed))
        else:
            result = result * summed
    if exact:
        return Fraction(result) / Fraction(n) ** h.vertex_count
    return float(result) / n ** h.vertex_count


def _mobius_zero(blocks) -> int:
    return math.prod((-1) ** (len(b) - 1) * math.factorial(len(b) - 1) for b in blocks)


def t_inj(h: Multigraph, a) -> Fraction | float:
    """t_inj(H, a) by inclusion-exclusion over the partition lattice.

    Partitions merging adjacent vertices vanish on zero-diagonal input, so only
    loopless quotients contribute.
    """
    arr, exact = _operand(a)
    n = arr.shape[0]
    if h.vertex_count > n:
        return Fraction(0) if exact else 0.0
    total = Fraction(0) if exact else 0.0
    for p, q in loopless_quotients(h):
        scale = Fraction(n) ** (q.vertex_count - h.vertex_count)
        term = t(q, a)
        total += _mobius_zero(p.blocks) * (scale if exact else float(scale)) * term
    return total


def density(h: Multigraph, a, kind: str = T):
    if kind == T:
        return t(h, a)
    if kind == T_INJ:
        return t_inj(h, a)
    raise GraphonError(f"unknown density kind {kind!r}")


def t_to_tinj(h: Multigraph, ambient_n: int) -> DensityCoefficients:
    """Expansion t(H, .) = sum over loopless quotients of n^(|V(H/P)| - |V(H)|) t_inj(H/P, .)."""
    if ambient_n < 1:
        raise GraphonError("ambient size must be positive")
    acc: dict[Multigraph, Fraction] = defaultdict(Fraction)
    for _, q in loopless_quotients(h):
        acc[q] += Fraction(ambient_n) ** (q.vertex_count - h.vertex_count)
    return DensityCoefficients(T_INJ, ambient_n, dict(acc))


def transform_matrix(basis: Sequence[Multigraph], ambient_n: int, direction: str) -> TransformMatrix:
    """Change-of-basis matrix between (t(H, .)) and (t_inj(H, .)) over ``basis``.

    Every loopless quotient of a basis element must occur earlier in the basis;
    sorting by vertex count within each edge count guarantees this.
    """
    basis = tuple(basis)
    if len(set(basis)) != len(basis):
        raise BasisError("basis contains duplicates")
    pos = {h: i for i, h in enumerate(basis)}
    size = len(basis)
    rows = [[Fraction(0)] * size for _ in range(size)]
    for i, h in enumerate(basis):
        for q, c in t_to_tinj(h, ambient_n).coeffs.items():
            if q not in pos:
                raise BasisError(f"basis not closed under loopless quotients: {h!r} needs {q!r}")
            if pos[q] > i:
                raise BasisError(f"quotient {q!r} of {h!r} must precede it in the basis")
            rows[i][pos[q]] = c
    if direction == T_FROM_TINJ:
        return TransformMatrix(basis, tuple(map(tuple, rows)), ambient_n, direction)
    if direction != TINJ_FROM_T:
        raise GraphonError(f"unknown transform direction {direction!r}")
    too_big = [h for h in basis if h.vertex_count > ambient_n]
    if too_big:
        raise BasisError(f"{too_big[0]!r} has more than {ambient_n} vertices; t_inj vanishes")
    # forward substitution on the unit lower-triangular system
    inv = [[Fraction(0)] * size for _ in range(size)]
    for i in range(size):
        inv[i][i] = Fraction(1)
        for j in range(i):
            inv[i][j] = -sum((rows[i][k] * inv[k][j] for k in range(j, i)), Fraction(0))
    return TransformMatrix(basis, tuple(map(tuple, inv)), ambient_n, direction)


def graphon_density_consistency(h: Multigraph, a: WeightedMatrix) -> Fraction:
    """t(H, f_a) for the step graphon f_a, integrated cell by cell.

    Each vertex ranges over the n cells of measure 1/n; f_a is read at cell
    midpoints, where it equals its constant value on the open cell.
    """
    n = a.size
    mids = [Fraction(2 * b + 1, 2 * n) for b in range(n)]
    total = Fraction(0)
    for cells in itertools.product(range(n), repeat=h.vertex_count):
        prod = Fraction(1)
        for u, v, m in h.edges:
            prod *= step_graphon_eval(a, mids[cells[u]], mids[cells[v]]) ** m
        total += prod
    return total * Fraction(1, n) ** h.vertex_count
