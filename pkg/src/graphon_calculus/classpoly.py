"""Exact polynomials in the edge variables of an n-vertex weighted graph, and
their decomposition into homomorphism-density bases."""
from __future__ import annotations

import itertools
from collections import defaultdict
from fractions import Fraction
from functools import lru_cache
from typing import Mapping

import numpy as np

from .errors import GraphonError, NotClassFunctionError
from .homdensity import (T, T_INJ, TINJ_FROM_T, DensityCoefficients, t, t_to_tinj,
                         transform_matrix)
from .linalg import rank
from .multigraph import Multigraph, automorphism_count, canonicalize, enumerate_up_to, orbit_size
from .rational import as_fraction, fmt
from .weighted_graph import WeightedMatrix, random_matrix

# A monomial is a sorted tuple of ((i, j), multiplicity) with i < j.
Monomial = tuple[tuple[tuple[int, int], int], ...]
ONE: Monomial = ()


def mono_mul(x: Monomial, y: Monomial) -> Monomial:
    acc = dict(x)
    for e, m in y:
        acc[e] = acc.get(e, 0) + m
    return tuple(sorted(acc.items()))


def mono_degree(x: Monomial) -> int:
    return sum(m for _, m in x)


def mono_str(x: Monomial) -> str:
    if not x:
        return "1"
    return "*".join(f"a{i + 1},{j + 1}" + (f"^{m}" if m > 1 else "") for (i, j), m in x)


class EdgePolynomial:
    """Polynomial in the variables a_ij (i < j) of the size-``ambient_n`` matrix space."""

    __slots__ = ("ambient_n", "terms")

    def __init__(self, ambient_n: int, terms: Mapping[Monomial, object] | None = None):
        if ambient_n < 1:
            raise GraphonError("ambient size must be positive")
        self.ambient_n = ambient_n
        clean: dict[Monomial, Fraction] = {}
        for mono, c in (terms or {}).items():
            c = as_fraction(c)
            if c == 0:
                continue
            for (i, j), m in mono:
                if not (0 <= i < j < ambient_n) or m < 1:
                    raise GraphonError(f"invalid variable a({i},{j})^{m} for n={ambient_n}")
            clean[mono] = c
        self.terms = clean

    @classmethod
    def constant(cls, n: int, c) -> EdgePolynomial:
        return cls(n, {ONE: c})

    @classmethod
    def variable(cls, n: int, i: int, j: int) -> EdgePolynomial:
        if i == j:
            raise GraphonError("diagonal entries are not variables")
        return cls(n, {(((min(i, j), max(i, j)), 1),): 1})

    def __eq__(self, other):
        if not isinstance(other, EdgePolynomial):
            return NotImplemented
        return self.ambient_n == other.ambient_n and self.terms == other.terms

    def __repr__(self):
        if not self.terms:
            return f"EdgePolynomial(n={self.ambient_n}, 0)"
        body = " + ".join(f"{fmt(c)}*{mono_str(m)}" for m, c in sorted(self.terms.items()))
        return f"EdgePolynomial(n={self.ambient_n}, {body})"

    def _check(self, other: EdgePolynomial):
        if self.ambient_n != other.ambient_n:
            raise GraphonError(f"ambient size mismatch: {self.ambient_n} vs {other.ambient_n}")

    def __add__(self, other: EdgePolynomial) -> EdgePolynomial:
        self._check(other)
        acc = dict(self.terms)
        for m, c in other.terms.items():
            acc[m] = acc.get(m, 0) + c
        return EdgePolynomial(self.ambient_n, acc)

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other: EdgePolynomial) -> EdgePolynomial:
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, EdgePolynomial):
            return self.scale(other)
        self._check(other)
        acc: dict[Monomial, Fraction] = defaultdict(Fraction)
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                acc[mono_mul(m1, m2)] += c1 * c2
        return EdgePolynomial(self.ambient_n, acc)

    __rmul__ = __mul__

    def scale(self, c) -> EdgePolynomial:
        c = as_fraction(c)
        return EdgePolynomial(self.ambient_n, {m: c * x for m, x in self.terms.items()})

    def is_zero(self) -> bool:
        return not self.terms

    @property
    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((mono_degree(m) for m in self.terms), default=-1)

    def homogeneous_parts(self) -> dict[int, EdgePolynomial]:
        parts: dict[int, dict] = defaultdict(dict)
        for m, c in self.terms.items():
            parts[mono_degree(m)][m] = c
        return {d: EdgePolynomial(self.ambient_n, p) for d, p in sorted(parts.items())}

    def is_homogeneous(self, d: int) -> bool:
        return all(mono_degree(m) == d for m in self.terms)

    def partial(self, i: int, j: int) -> EdgePolynomial:
        e = (min(i, j), max(i, j))
        acc = {}
        for mono, c in self.terms.items():
            d = dict(mono)
            k = d.get(e, 0)
            if not k:
                continue
            if k == 1:
                del d[e]
            else:
                d[e] = k - 1
            key = tuple(sorted(d.items()))
            acc[key] = acc.get(key, 0) + c * k
        return EdgePolynomial(self.ambient_n, acc)

    def directional(self, g: WeightedMatrix) -> EdgePolynomial:
        """sum_{i<j} g_ij * dF/da_ij."""
        if g.size != self.ambient_n:
            raise GraphonError(f"direction has size {g.size}, polynomial lives on n={self.ambient_n}")
        out = EdgePolynomial(self.ambient_n)
        for i, j in g.pairs():
            if g[i, j] != 0:
                out = out + self.partial(i, j).scale(g[i, j])
        return out


def evaluate(f: EdgePolynomial, a) -> Fraction | float:
    """Substitute a matrix. Exact for WeightedMatrix, float for float arrays."""
    if isinstance(a, WeightedMatrix):
        if a.size != f.ambient_n:
            raise GraphonError(f"matrix size {a.size} does not match n={f.ambient_n}")
        total = Fraction(0)
        for mono, c in f.terms.items():
            prod = c
            for (i, j), m in mono:
                prod *= a[i, j] ** m
            total += prod
        return total
    arr = np.asarray(a, dtype=float)
    if arr.shape != (f.ambient_n, f.ambient_n):
        raise GraphonError(f"matrix shape {arr.shape} does not match n={f.ambient_n}")
    total = 0.0
    for mono, c in f.terms.items():
        prod = float(c)
        for (i, j), m in mono:
            prod *= arr[i, j] ** m
        total += prod
    return total


def monomial_graph(mono: Monomial, n: int) -> Multigraph:
    """The multigraph whose edge multiset is the monomial's variable multiset."""
    return canonicalize(n, [(i, j, m) for (i, j), m in mono])


@lru_cache(maxsize=None)
def _injective_counts(h: Multigraph, n: int) -> tuple[tuple[Monomial, int], ...]:
    acc: dict[Monomial, int] = defaultdict(int)
    for phi in itertools.permutations(range(n), h.vertex_count):
        mono = tuple(sorted(((min(phi[u], phi[v]), max(phi[u], phi[v])), m) for u, v, m in h.edges))
        acc[mono] += 1
    return tuple(sorted(acc.items()))


def orbit_monomials(h: Multigraph, n: int) -> tuple[Monomial, ...]:
    """All monomials in the S_n-orbit attached to H, sorted."""
    return tuple(m for m, _ in _injective_counts(h, n))


def _group_by_orbit(f: EdgePolynomial) -> dict[Multigraph, dict[Monomial, Fraction]]:
    groups: dict[Multigraph, dict[Monomial, Fraction]] = defaultdict(dict)
    for mono, c in f.terms.items():
        groups[monomial_graph(mono, f.ambient_n)][mono] = c
    return groups


def class_function_violation(f: EdgePolynomial) -> str | None:
    """Describe one orbit on which the coefficients are not constant, or None."""
    n = f.ambient_n
    for h, terms in sorted(_group_by_orbit(f).items(), key=lambda kv: kv[0].sort_key):
        mono0, c0 = min(terms.items())
        for mono, c in sorted(terms.items()):
            if c != c0:
                return (f"orbit of {h!r}: coefficient {fmt(c0)} on {mono_str(mono0)} "
                        f"but {fmt(c)} on {mono_str(mono)}")
        if len(terms) != orbit_size(h, n):
            missing = next(m for m in orbit_monomials(h, n) if m not in terms)
            return (f"orbit of {h!r}: coefficient {fmt(c0)} on {mono_str(mono0)} "
                    f"but 0 on {mono_str(missing)}")
    return None


def is_class_function(f: EdgePolynomial) -> bool:
    """True iff coefficients are constant on S_n-orbits of monomials."""
    return class_function_violation(f) is None


def symmetrize(f: EdgePolynomial) -> EdgePolynomial:
    """Average of F over all vertex relabelings.

    Each sigma sends a monomial to every member of its orbit equally often, so
    the average spreads a coefficient uniformly over the orbit.
    """
    n = f.ambient_n
    acc: dict[Monomial, Fraction] = defaultdict(Fraction)
    for mono, c in f.terms.items():
        orbit = orbit_monomials(monomial_graph(mono, n), n)
        share = c / len(orbit)
        for m in orbit:
            acc[m] += share
    return EdgePolynomial(n, acc)


@lru_cache(maxsize=None)
def density_polynomial(h: Multigraph, kind: str, n: int) -> EdgePolynomial:
    """Expansion of t(H, .) or t_inj(H, .) on the size-n matrix space."""
    if n < 1:
        raise GraphonError("ambient size must be positive")
    if kind == T_INJ:
        scale = Fraction(1, n ** h.vertex_count)
        return EdgePolynomial(n, {m: k * scale for m, k in _injective_counts(h, n)})
    if kind == T:
        out = EdgePolynomial(n)
        for q, lam in t_to_tinj(h, n).coeffs.items():
            out = out + density_polynomial(q, T_INJ, n).scale(lam)
        return out
    raise GraphonError(f"unknown density kind {kind!r}")


def build(coeffs: DensityCoefficients) -> EdgePolynomial:
    """sum_H c_H * (t or t_inj)(H, .) as an explicit polynomial."""
    out = EdgePolynomial(coeffs.ambient_n)
    for h, c in coeffs.items():
        out = out + density_polynomial(h, coeffs.basis, coeffs.ambient_n).scale(c)
    return out


def decompose_tinj(f: EdgePolynomial, d: int) -> DensityCoefficients:
    """Coefficients c_H over H with d edges and at most n vertices such that
    F = sum c_H t_inj(H, .). Requires a homogeneous class function."""
    n = f.ambient_n
    if not f.is_homogeneous(d):
        raise GraphonError(f"polynomial is not homogeneous of degree {d}")
    bad = class_function_violation(f)
    if bad is not None:
        raise NotClassFunctionError(f"not a class function: {bad}")
    coeffs = {}
    for h, terms in _group_by_orbit(f).items():
        rep = min(terms)
        coeffs[h] = terms[rep] * Fraction(n) ** h.vertex_count / automorphism_count(h)
    return DensityCoefficients(T_INJ, n, coeffs)


def decompose_t(f: EdgePolynomial, n_edges: int) -> DensityCoefficients:
    """The unique c_H over graphs with at most ``n_edges`` edges with
    F = sum c_H t(H, .) on the size-n matrix space; needs n >= 2 * n_edges."""
    n = f.ambient_n
    if n < 2 * n_edges:
        raise GraphonError(
            f"ambient size n={n} < 2N={2 * n_edges}: coefficients are not unique below 2N")
    if f.degree > n_edges:
        raise GraphonError(f"polynomial has degree {f.degree} > N={n_edges}")
    bad = class_function_violation(f)
    if bad is not None:
        raise NotClassFunctionError(f"not a class function: {bad}")
    b: dict[Multigraph, Fraction] = {}
    for d, part in f.homogeneous_parts().items():
        b.update(decompose_tinj(part, d).coeffs)
    basis = enumerate_up_to(n_edges)
    inv = transform_matrix(basis, n, TINJ_FROM_T)
    coeffs = {}
    for k, h in enumerate(basis):
        coeffs[h] = sum((b.get(hp, 0) * inv.entries[i][k] for i, hp in enumerate(basis)), Fraction(0))
    return DensityCoefficients(T, n, coeffs)


def pullback_blow_up(f: EdgePolynomial, n: int, k: int) -> EdgePolynomial:
    """F(blow_up(a, k)) as a polynomial in the entries of the size-n matrix a."""
    if f.ambient_n != n * k:
        raise GraphonError(f"polynomial lives on n={f.ambient_n}, expected {n * k}")
    acc: dict[Monomial, Fraction] = defaultdict(Fraction)
    for mono, c in f.terms.items():
        vs: dict[tuple[int, int], int] = defaultdict(int)
        for (p, q), m in mono:
            i, j = p // k, q // k
            if i == j:
                break
            vs[(min(i, j), max(i, j))] += m
        else:
            acc[tuple(sorted(vs.items()))] += c
    return EdgePolynomial(n, acc)


def independence_rank(basis, n: int, sample_count: int, seed: int) -> int:
    """Exact rank of [t(H, a_k)] over seeded random a_k with entries in [0, 1].

    Full rank certifies linear independence; a smaller value is only a lower bound.
    """
    basis = list(basis)
    if sample_count < len(basis):
        raise GraphonError("need at least as many samples as basis elements")
    rows = []
    for k in range(sample_count):
        a = random_matrix(n, (seed, k))
        rows.append([t(h, a) for h in basis])
    return rank(rows)
