"""Text formats for multigraphs, matrices, polynomials, coefficient vectors and
cut-norm results. Vertex labels are 1-based on disk."""
from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path

from .classpoly import EdgePolynomial
from .errors import GraphonError
from .homdensity import BASES, DensityCoefficients
from .multigraph import Multigraph, canonicalize
from .norms import CutNormResult
from .rational import as_fraction, fmt
from .weighted_graph import WeightedMatrix, make


class FormatError(GraphonError):
    pass


# -- multigraphs -------------------------------------------------------------

def multigraph_to_text(h: Multigraph) -> str:
    lines = [f"{h.vertex_count} {len(h.edges)}"]
    lines += [f"{u + 1} {v + 1} {m}" for u, v, m in h.edges]
    return "\n".join(lines) + "\n"


def multigraph_from_text(text: str, source: str = "<string>") -> Multigraph:
    rows = [(k + 1, ln.split()) for k, ln in enumerate(text.splitlines())]
    rows = [(k, r) for k, r in rows if r and not r[0].startswith("#")]
    if not rows:
        raise FormatError(f"{source}: empty multigraph description")
    lineno, head = rows[0]
    try:
        v_count, e_count = (int(x) for x in head)
    except ValueError:
        raise FormatError(f"{source}:{lineno}: expected 'V E', got {' '.join(head)!r}") from None
    if len(rows) - 1 != e_count:
        raise FormatError(f"{source}:{lineno}: header announces {e_count} edges, found {len(rows) - 1}")
    edges = []
    for lineno, r in rows[1:]:
        try:
            u, v, m = (int(x) for x in r)
        except ValueError:
            raise FormatError(f"{source}:{lineno}: expected 'u v m', got {' '.join(r)!r}") from None
        if not (1 <= u <= v_count and 1 <= v <= v_count) or m < 1:
            raise FormatError(f"{source}:{lineno}: edge {u} {v} {m} out of range")
        if u == v:
            raise FormatError(f"{source}:{lineno}: self-loop at vertex {u}")
        edges.append((u - 1, v - 1, m))
    return canonicalize(v_count, edges)


def multigraph_record(h: Multigraph) -> dict:
    return {
        "canonical_form": h.hex,
        "vertices": h.vertex_count,
        "edges": [[u + 1, v + 1, m] for u, v, m in h.edges],
    }


# -- json helpers ------------------------------------------------------------

def _load_json(text: str, source: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise FormatError(f"{source}:{e.lineno}: invalid JSON ({e.msg})") from None


def _field(obj, key, source):
    if not isinstance(obj, dict) or key not in obj:
        raise FormatError(f"{source}: missing field {key!r}")
    return obj[key]


def _rational(x, source, where) -> Fraction:
    try:
        if isinstance(x, float):
            raise TypeError
        return as_fraction(x)
    except (TypeError, ValueError, ZeroDivisionError):
        raise FormatError(f"{source}: {where}: {x!r} is not a rational string") from None


def dumps(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


# -- matrices ----------------------------------------------------------------

def matrix_to_obj(a: WeightedMatrix) -> dict:
    return {"n": a.size, "rows": [[fmt(x) for x in row] for row in a.entries]}


def matrix_from_obj(obj, source: str = "<matrix>") -> WeightedMatrix:
    n = _field(obj, "n", source)
    rows = _field(obj, "rows", source)
    if not isinstance(n, int) or n < 1 or not isinstance(rows, list) or len(rows) != n:
        raise FormatError(f"{source}: 'rows' must hold n={n} rows")
    parsed = []
    for i, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != n:
            raise FormatError(f"{source}: row {i + 1} must have {n} entries")
        parsed.append([_rational(x, source, f"row {i + 1}") for x in row])
    try:
        return make(parsed)
    except GraphonError as e:
        raise FormatError(f"{source}: {e}") from None


def matrix_from_text(text: str, source: str = "<matrix>") -> WeightedMatrix:
    return matrix_from_obj(_load_json(text, source), source)


# -- polynomials -------------------------------------------------------------

def poly_to_obj(f: EdgePolynomial) -> dict:
    terms = [[[[i + 1, j + 1, m] for (i, j), m in mono], fmt(c)]
             for mono, c in sorted(f.terms.items())]
    return {"n": f.ambient_n, "terms": terms}


def poly_from_obj(obj, source: str = "<poly>") -> EdgePolynomial:
    n = _field(obj, "n", source)
    terms = _field(obj, "terms", source)
    if not isinstance(n, int) or n < 1:
        raise FormatError(f"{source}: 'n' must be a positive integer")
    acc: dict = {}
    for k, term in enumerate(terms):
        where = f"term {k + 1}"
        if not isinstance(term, list) or len(term) != 2:
            raise FormatError(f"{source}: {where} must be [triples, coefficient]")
        triples, coeff = term
        mono: dict = {}
        for tr in triples:
            if not (isinstance(tr, list) and len(tr) == 3 and all(isinstance(x, int) for x in tr)):
                raise FormatError(f"{source}: {where}: bad variable {tr!r}")
            i, j, m = tr
            if i == j or not (1 <= i <= n and 1 <= j <= n) or m < 1:
                raise FormatError(f"{source}: {where}: invalid variable a{i},{j}^{m}")
            e = (min(i, j) - 1, max(i, j) - 1)
            mono[e] = mono.get(e, 0) + m
        key = tuple(sorted(mono.items()))
        acc[key] = acc.get(key, 0) + _rational(coeff, source, where)
    return EdgePolynomial(n, acc)


def poly_from_text(text: str, source: str = "<poly>") -> EdgePolynomial:
    return poly_from_obj(_load_json(text, source), source)


# -- density coefficients ----------------------------------------------------

def coeffs_to_obj(c: DensityCoefficients) -> dict:
    return {
        "basis": c.basis,
        "n": c.ambient_n,
        "coeffs": [[multigraph_to_text(h), fmt(x)] for h, x in c.items()],
    }


def coeffs_from_obj(obj, source: str = "<coeffs>") -> DensityCoefficients:
    basis = _field(obj, "basis", source)
    n = _field(obj, "n", source)
    if basis not in BASES:
        raise FormatError(f"{source}: basis must be one of {BASES}")
    if not isinstance(n, int) or n < 1:
        raise FormatError(f"{source}: 'n' must be a positive integer")
    acc: dict = {}
    for k, pair in enumerate(_field(obj, "coeffs", source)):
        if not isinstance(pair, list) or len(pair) != 2:
            raise FormatError(f"{source}: entry {k + 1} must be [multigraph, coefficient]")
        h = multigraph_from_text(pair[0], f"{source} entry {k + 1}")
        acc[h] = acc.get(h, 0) + _rational(pair[1], source, f"entry {k + 1}")
    return DensityCoefficients(basis, n, acc)


def coeffs_from_text(text: str, source: str = "<coeffs>") -> DensityCoefficients:
    return coeffs_from_obj(_load_json(text, source), source)


# -- cut norm ----------------------------------------------------------------

def cutnorm_to_obj(r: CutNormResult) -> dict:
    return {"value": fmt(r.value), "S": [i + 1 for i in r.witness_S], "T": [j + 1 for j in r.witness_T]}


def read_text(path: str | Path) -> str:
    try:
        return Path(path).read_text()
    except OSError as e:
        raise FormatError(f"{path}: cannot read ({e.strerror})") from None
