"""Cut norm, L1 distance and permutation cut distance of step graphons."""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .errors import GraphonError
from .homdensity import t
from .multigraph import Multigraph, collapse_simple
from .weighted_graph import WeightedMatrix, blow_up, permute

CUT_NORM_LIMIT = 16
CUT_DISTANCE_LIMIT = 8


@dataclass(frozen=True)
class CutNormResult:
    value: Fraction
    witness_S: tuple[int, ...]
    witness_T: tuple[int, ...]


def integer_scaled(a: WeightedMatrix) -> tuple[np.ndarray, int]:
    """(D * a as int64, D) for the common denominator D of a's entries."""
    den = math.lcm(*(x.denominator for row in a.entries for x in row)) if a.size else 1
    ints = [[int(x * den) for x in row] for row in a.entries]
    bound = max((abs(x) for row in ints for x in row), default=0) * max(a.size, 1) ** 2
    if bound >= 2 ** 62:
        raise GraphonError("matrix entries too large for the integer cut-norm engine")
    return np.array(ints, dtype=np.int64).reshape(a.size, a.size), den


@lru_cache(maxsize=None)
def _subsets_lex(n: int) -> tuple[np.ndarray, np.ndarray]:
    """All subsets of range(n) as 0/1 rows, ordered by their sorted index tuple."""
    subsets = sorted(itertools.chain.from_iterable(
        itertools.combinations(range(n), r) for r in range(n + 1)))
    rows = np.zeros((len(subsets), n), dtype=np.int64)
    for k, s in enumerate(subsets):
        rows[k, list(s)] = 1
    return rows, np.arange(len(subsets))


def cut_norm_exact(a: WeightedMatrix, limit: int = CUT_NORM_LIMIT) -> CutNormResult:
    """max over S, T of |sum_{i in S, j in T} a_ij| / n^2.

    For a fixed S the best T takes every column with positive (or every column
    with negative) S-column sum, so only the 2^n choices of S are scanned. Ties
    go to the lexicographically least S, positive sign first.
    """
    n = a.size
    if n > limit:
        raise GraphonError(f"cut norm engine limited to n <= {limit} (got {n}); raise the limit "
                           "explicitly if 2^n work is acceptable")
    ints, den = integer_scaled(a)
    subsets, _ = _subsets_lex(n)
    colsums = subsets @ ints
    pos = np.where(colsums > 0, colsums, 0).sum(axis=1)
    neg = -np.where(colsums < 0, colsums, 0).sum(axis=1)
    best = np.maximum(pos, neg)
    k = int(np.argmax(best))  # first maximum = lexicographically least S
    s_idx = tuple(int(i) for i in np.nonzero(subsets[k])[0])
    if pos[k] >= neg[k]:
        t_idx = tuple(int(j) for j in np.nonzero(colsums[k] > 0)[0])
    else:
        t_idx = tuple(int(j) for j in np.nonzero(colsums[k] < 0)[0])
    return CutNormResult(Fraction(int(best[k]), den * n * n), s_idx, t_idx)


def cut_objective(a: WeightedMatrix, s, t_) -> Fraction:
    n = a.size
    return abs(sum((a[i, j] for i in s for j in t_), Fraction(0))) / (n * n)


def l1_distance(a: WeightedMatrix, b: WeightedMatrix) -> Fraction:
    """Integral of |f_a - f_b| over [0,1]^2 on the lcm refinement grid."""
    m = math.lcm(a.size, b.size)
    x = blow_up(a, m // a.size).array()
    y = blow_up(b, m // b.size).array()
    return Fraction(sum(abs(v) for v in (x - y).ravel())) / (m * m)


def cut_distance_perm(a: WeightedMatrix, b: WeightedMatrix,
                      limit: int = CUT_DISTANCE_LIMIT) -> Fraction:
    """min over vertex permutations s of ||a - b^s||_cut.

    Only relabelings by permutations are tried, so this is an upper bound on
    the cut distance of the step graphons.
    """
    if a.size != b.size:
        raise GraphonError(f"size mismatch: {a.size} vs {b.size}")
    if a.size > limit:
        raise GraphonError(f"permutation cut distance limited to n <= {limit} (got {a.size})")
    best = None
    for sigma in itertools.permutations(range(a.size)):
        v = cut_norm_exact(a - permute(b, sigma)).value
        if best is None or v < best:
            best = v
            if best == 0:
                break
    return best


def simplify_identity_check(h: Multigraph, a: WeightedMatrix) -> bool:
    """t(H, a) == t(H^simple, a) for a 0/1-valued matrix."""
    if not a.is_zero_one():
        raise GraphonError("simplification identity needs a {0,1}-valued matrix")
    return t(h, a) == t(collapse_simple(h), a)
