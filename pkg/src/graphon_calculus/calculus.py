"""Gateaux derivatives on the matrix spaces: exact on polynomials, finite
differences on black boxes, and the lambda-expansion of t(H, a + sum l_i g_i)."""
from __future__ import annotations

import itertools
import warnings
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Mapping, Sequence

import numpy as np

from .classpoly import EdgePolynomial, density_polynomial, evaluate
from .errors import GraphonError
from .homdensity import T
from .multigraph import Multigraph
from .rational import as_fraction, fmt
from .weighted_graph import (DirectionMatrix, WeightedMatrix, check_admissible, from_upper,
                             random_direction)

DEFAULT_STEP = 1e-3


class InadmissibleDirectionWarning(UserWarning):
    pass


class OneSidedDifferenceWarning(UserWarning):
    pass


@dataclass(frozen=True)
class DerivativeRequest:
    base_point: WeightedMatrix
    directions: tuple[DirectionMatrix, ...]

    def __post_init__(self):
        if not self.base_point.range_flag:
            raise GraphonError("base point must have entries in [0, 1]")
        object.__setattr__(self, "directions", tuple(self.directions))
        for g in self.directions:
            if g.size != self.base_point.size:
                raise GraphonError(f"direction of size {g.size} at a base point of size "
                                   f"{self.base_point.size}")

    @property
    def order(self) -> int:
        return len(self.directions)

    @property
    def admissible(self) -> bool:
        return all(check_admissible(self.base_point, g) for g in self.directions)


def gateaux_exact(f: EdgePolynomial, req: DerivativeRequest) -> Fraction:
    """d^k F(a; g_1, ..., g_k) = mixed partial in (l_1..l_k) of F(a + sum l_i g_i) at 0."""
    if f.ambient_n != req.base_point.size:
        raise GraphonError(f"polynomial on n={f.ambient_n}, base point of size {req.base_point.size}")
    if not req.admissible:
        warnings.warn("some direction is not admissible at the base point",
                      InadmissibleDirectionWarning, stacklevel=2)
    for g in req.directions:
        f = f.directional(g)
        if f.is_zero():
            return Fraction(0)
    return evaluate(f, req.base_point)


@dataclass(frozen=True)
class FDEstimate:
    value: float
    step: float
    scheme: str  # "central" or "forward"
    exact_value: Fraction | None = None  # set in exact mode


def _in_unit(x) -> bool:
    if isinstance(x, WeightedMatrix):
        return x.range_flag
    return bool(np.all(x >= 0.0) and np.all(x <= 1.0))


def gateaux_fd(func: Callable, req: DerivativeRequest, step=DEFAULT_STEP,
               exact: bool = False) -> FDEstimate:
    """Iterated central difference estimate of d^k F(a; g_1..g_k).

    By default ``func`` receives symmetric float arrays. With ``exact=True`` it
    receives WeightedMatrix points at the rational step ``Fraction(step)`` and
    the difference quotient is formed without rounding. Falls back to forward
    differences (first-order accurate, with a warning) when a central point
    leaves [0, 1].
    """
    if step <= 0:
        raise GraphonError("step must be positive")
    if exact:
        h = Fraction(step)
        a = req.base_point
        gs = [g.scale(h) for g in req.directions]

        def point(s):
            x = a
            for si, g in zip(s, gs):
                if si:
                    x = x + g.scale(si)
            return WeightedMatrix(x.entries)
    else:
        h = float(step)
        a = req.base_point.to_float()
        gs = [h * g.to_float() for g in req.directions]

        def point(s):
            return a + sum((si * g for si, g in zip(s, gs)), np.zeros_like(a))
    k = len(gs)

    central = [(int(np.prod(s)), point(s)) for s in itertools.product((1, -1), repeat=k)]
    if all(_in_unit(x) for _, x in central):
        scheme, pts, denom = "central", central, (2 * h) ** k
    else:
        forward = [((-1) ** (k - sum(s)), point(s)) for s in itertools.product((0, 1), repeat=k)]
        if not all(_in_unit(x) for _, x in forward):
            raise GraphonError(f"finite-difference points leave [0,1] at step {step}; "
                               "try a smaller step")
        warnings.warn("central points leave [0,1]; using one-sided differences",
                      OneSidedDifferenceWarning, stacklevel=2)
        scheme, pts, denom = "forward", forward, h ** k
    total = sum(w * func(x) for w, x in pts)
    value = total / denom
    return FDEstimate(float(value), float(step), scheme, value if exact else None)


def iterated_difference(f: EdgePolynomial, a: WeightedMatrix,
                        directions: Sequence[WeightedMatrix], step) -> Fraction:
    """Exact mixed forward difference Delta_{h g_1} ... Delta_{h g_k} F(a)."""
    h = as_fraction(step)
    k = len(directions)
    total = Fraction(0)
    for s in itertools.product((0, 1), repeat=k):
        x = a
        for si, g in zip(s, directions):
            if si:
                x = x + g.scale(h)
        total += (-1) ** (k - sum(s)) * evaluate(f, x)
    return total


class LambdaPolynomial:
    """Polynomial in l_1..l_k with rational coefficients, keyed by exponent tuples."""

    def __init__(self, k: int, terms: Mapping[tuple[int, ...], object] | None = None):
        self.k = k
        self.terms = {e: Fraction(c) for e, c in (terms or {}).items() if c != 0}

    @classmethod
    def linear(cls, k: int, const, coeffs: Sequence) -> LambdaPolynomial:
        terms = {(0,) * k: const}
        for i, c in enumerate(coeffs):
            e = [0] * k
            e[i] = 1
            terms[tuple(e)] = c
        return cls(k, terms)

    def __add__(self, other: LambdaPolynomial) -> LambdaPolynomial:
        acc = dict(self.terms)
        for e, c in other.terms.items():
            acc[e] = acc.get(e, 0) + c
        return LambdaPolynomial(self.k, acc)

    def __mul__(self, other: LambdaPolynomial) -> LambdaPolynomial:
        acc: dict = defaultdict(Fraction)
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                acc[tuple(x + y for x, y in zip(e1, e2))] += c1 * c2
        return LambdaPolynomial(self.k, acc)

    def __eq__(self, other):
        return isinstance(other, LambdaPolynomial) and (self.k, self.terms) == (other.k, other.terms)

    def __repr__(self):
        def mono(e):
            return "*".join(f"l{i + 1}" + (f"^{p}" if p > 1 else "") for i, p in enumerate(e) if p) or "1"
        body = " + ".join(f"{fmt(c)}*{mono(e)}" for e, c in sorted(self.terms.items()))
        return f"LambdaPolynomial({body or '0'})"

    @property
    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def coefficient(self, exponents: Sequence[int]) -> Fraction:
        return self.terms.get(tuple(exponents), Fraction(0))

    def __call__(self, *lams) -> Fraction:
        total = Fraction(0)
        for e, c in self.terms.items():
            prod = c
            for lam, p in zip(lams, e):
                prod *= as_fraction(lam) ** p
            total += prod
        return total


def lambda_expansion(h: Multigraph, a: WeightedMatrix,
                     directions: Sequence[WeightedMatrix]) -> LambdaPolynomial:
    """The polynomial l -> t(H, a + sum_i l_i g_i)."""
    n = a.size
    k = len(directions)
    for g in directions:
        if g.size != n:
            raise GraphonError(f"direction of size {g.size} for a matrix of size {n}")
    poly = density_polynomial(h, T, n)
    forms = {(i, j): LambdaPolynomial.linear(k, a[i, j], [g[i, j] for g in directions])
             for i, j in a.pairs()}
    out = LambdaPolynomial(k)
    for mono, c in poly.terms.items():
        term = LambdaPolynomial(k, {(0,) * k: c})
        for e, m in mono:
            for _ in range(m):
                term = term * forms[e]
        out = out + term
    return out


def interior_point(n: int, seed) -> WeightedMatrix:
    """Seeded matrix with entries in {1/8, ..., 7/8}; every direction is admissible there."""
    rng = np.random.default_rng(seed)
    vals = {(i, j): Fraction(int(rng.integers(1, 8)), 8) for i in range(n) for j in range(i + 1, n)}
    return from_upper(n, vals)


def derivative_witness(f: EdgePolynomial, order: int, seed: int = 0, tries: int = 32):
    """Seeded search for (base point, directions) with a nonzero order-k derivative."""
    n = f.ambient_n
    for t in range(tries):
        a = interior_point(n, (seed, t, 0))
        gs = tuple(random_direction(n, (seed, t, i + 1)) for i in range(order))
        val = gateaux_exact(f, DerivativeRequest(a, gs))
        if val != 0:
            return a, gs, val
    return None


def verify_vanishing(f: EdgePolynomial, order: int, seed: int = 0, spot_checks: int = 3) -> bool:
    """True iff every order-k mixed derivative of F vanishes identically.

    Decided by the degree; seeded exact evaluations are a redundant cross-check.
    """
    vanishes = f.degree < order
    if vanishes:
        n = f.ambient_n
        for t in range(spot_checks):
            a = interior_point(n, (seed, t, 0))
            gs = tuple(random_direction(n, (seed, t, i + 1)) for i in range(order))
            val = gateaux_exact(f, DerivativeRequest(a, gs))
            if val != 0:
                raise AssertionError(f"degree {f.degree} < {order} but derivative is {val}")
    return vanishes
