"""Edge-weighted complete graphs: symmetric zero-diagonal rational matrices.

A matrix ``a`` of size n stands for the step graphon
``f_a(x, y) = a[ceil(n x), ceil(n y)]`` (1-based cells, 0 on the axes).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .errors import GraphonError, MatrixValidationError
from .rational import as_fraction

VALUE_MODES = ("rational-grid", "zero-one", "signed-grid")
GRID = 8


@dataclass(frozen=True)
class WeightedMatrix:
    entries: tuple[tuple[Fraction, ...], ...]
    range_flag: bool = field(init=False)

    def __post_init__(self):
        n = len(self.entries)
        for i, row in enumerate(self.entries):
            if len(row) != n:
                raise MatrixValidationError(f"row {i} has length {len(row)}, expected {n}")
        for i in range(n):
            if self.entries[i][i] != 0:
                raise MatrixValidationError(f"nonzero diagonal entry at index {i}")
            for j in range(i + 1, n):
                if self.entries[i][j] != self.entries[j][i]:
                    raise MatrixValidationError(f"asymmetric entry pair at ({i}, {j})")
        flag = all(0 <= self.entries[i][j] <= 1 for i in range(n) for j in range(n))
        object.__setattr__(self, "range_flag", flag)

    @property
    def size(self) -> int:
        return len(self.entries)

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        i, j = ij
        return self.entries[i][j]

    def pairs(self):
        n = self.size
        return ((i, j) for i in range(n) for j in range(i + 1, n))

    def array(self) -> np.ndarray:
        """Object-dtype array of Fractions (exact)."""
        out = np.empty((self.size, self.size), dtype=object)
        for i, row in enumerate(self.entries):
            out[i, :] = row
        return out

    def to_float(self) -> np.ndarray:
        return np.array([[float(x) for x in row] for row in self.entries], dtype=float)

    def _combine(self, other: WeightedMatrix, op):
        if self.size != other.size:
            raise GraphonError(f"size mismatch: {self.size} vs {other.size}")
        rows = tuple(tuple(op(x, y) for x, y in zip(r, s))
                     for r, s in zip(self.entries, other.entries))
        return type(self)(rows)

    def __add__(self, other):
        return self._combine(other, lambda x, y: x + y)

    def __sub__(self, other):
        return self._combine(other, lambda x, y: x - y)

    def scale(self, c) -> WeightedMatrix:
        c = as_fraction(c)
        return type(self)(tuple(tuple(c * x for x in r) for r in self.entries))

    def is_zero_one(self) -> bool:
        return all(x in (0, 1) for r in self.entries for x in r)


class DirectionMatrix(WeightedMatrix):
    """A perturbation direction; same invariants, no range requirement."""


def _rows(entries) -> tuple[tuple[Fraction, ...], ...]:
    rows = [list(r) for r in entries]
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise MatrixValidationError("matrix must be square")
    return tuple(tuple(as_fraction(x) for x in r) for r in rows)


def make(entries) -> WeightedMatrix:
    return WeightedMatrix(_rows(entries))


def make_direction(entries) -> DirectionMatrix:
    return DirectionMatrix(_rows(entries))


def zeros(n: int) -> WeightedMatrix:
    return WeightedMatrix(tuple(tuple(Fraction(0) for _ in range(n)) for _ in range(n)))


def from_upper(n: int, values: dict[tuple[int, int], object], cls=WeightedMatrix):
    rows = [[Fraction(0)] * n for _ in range(n)]
    for (i, j), x in values.items():
        rows[i][j] = rows[j][i] = as_fraction(x)
    return cls(tuple(tuple(r) for r in rows))


def step_graphon_eval(a: WeightedMatrix, x, y) -> Fraction:
    """Value of the step graphon f_a at (x, y) in [0, 1]^2."""
    x, y = as_fraction(x), as_fraction(y)
    if not (0 <= x <= 1 and 0 <= y <= 1):
        raise GraphonError(f"point ({x}, {y}) outside [0,1]^2")
    if x == 0 or y == 0:
        return Fraction(0)
    n = a.size
    return a[math.ceil(n * x) - 1, math.ceil(n * y) - 1]


def blow_up(a: WeightedMatrix, k: int) -> WeightedMatrix:
    """Replace every vertex by k clones; within-clone entries copy a's zero diagonal."""
    if k < 1:
        raise GraphonError("blow-up factor must be positive")
    n = a.size
    rows = tuple(tuple(a[p // k, q // k] for q in range(n * k)) for p in range(n * k))
    return type(a)(rows)


def check_admissible(a: WeightedMatrix, g: WeightedMatrix) -> bool:
    """True iff a + eps*g stays entrywise in [0, 1] for some eps > 0."""
    if not a.range_flag:
        raise GraphonError("base point must have entries in [0, 1]")
    if a.size != g.size:
        raise GraphonError(f"size mismatch: {a.size} vs {g.size}")
    for i, j in a.pairs():
        if a[i, j] == 0 and g[i, j] < 0:
            return False
        if a[i, j] == 1 and g[i, j] > 0:
            return False
    return True


def permute(a: WeightedMatrix, sigma: Sequence[int]) -> WeightedMatrix:
    """Relabel vertices: b[sigma[i], sigma[j]] = a[i, j]."""
    n = a.size
    sigma = list(sigma)
    if sorted(sigma) != list(range(n)):
        raise GraphonError(f"{sigma!r} is not a permutation of 0..{n - 1}")
    inv = [0] * n
    for i, s in enumerate(sigma):
        inv[s] = i
    rows = tuple(tuple(a[inv[p], inv[q]] for q in range(n)) for p in range(n))
    return type(a)(rows)


def random_matrix(n: int, seed: int, value_mode: str = "rational-grid", cls=WeightedMatrix):
    """Deterministic pseudo-random matrix.

    ``rational-grid`` draws from {0, 1/8, ..., 1}, ``zero-one`` from {0, 1},
    ``signed-grid`` from {-1, -7/8, ..., 1}.
    """
    if n < 1:
        raise GraphonError("matrix size must be positive")
    rng = np.random.default_rng(seed)
    if value_mode == "rational-grid":
        draw = lambda: Fraction(int(rng.integers(0, GRID + 1)), GRID)
    elif value_mode == "zero-one":
        draw = lambda: Fraction(int(rng.integers(0, 2)))
    elif value_mode == "signed-grid":
        draw = lambda: Fraction(int(rng.integers(-GRID, GRID + 1)), GRID)
    else:
        raise GraphonError(f"unknown value mode {value_mode!r}; expected one of {VALUE_MODES}")
    vals = {(i, j): draw() for i in range(n) for j in range(i + 1, n)}
    return from_upper(n, vals, cls)


def random_direction(n: int, seed: int, base: WeightedMatrix | None = None) -> DirectionMatrix:
    """Seeded direction in {-1/2, ..., 1/2}; sign-corrected to be admissible at ``base``."""
    rng = np.random.default_rng(seed)
    vals = {}
    for i in range(n):
        for j in range(i + 1, n):
            x = Fraction(int(rng.integers(-4, 5)), 8)
            if base is not None and ((base[i, j] == 0 and x < 0) or (base[i, j] == 1 and x > 0)):
                x = -x
            vals[i, j] = x
    return from_upper(n, vals, DirectionMatrix)
