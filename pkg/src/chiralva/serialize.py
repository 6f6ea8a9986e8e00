"""Canonical JSON spec files for the two algebra kinds.

Rationals serialize as lowest-terms "p/q" strings, polynomials as
coefficient lists low degree first, structure entries as sorted lists, and
documents with sorted keys and a trailing newline, so serialization is
byte-deterministic and parse . serialize is the identity on canonical form.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .chiral import ChiralData
from .errors import ParseError
from .exact import Poly, Q, format_q
from .vertex import VAData, Vector


def rational_to_str(c: Fraction) -> str:
    return format_q(c)


def str_to_rational(s: str) -> Fraction:
    try:
        if "/" in s:
            p, q = s.split("/")
            return Q(int(p), int(q))
        return Q(int(s))
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"bad rational literal {s!r}: {exc}") from None


def poly_to_list(p: Poly) -> list[str]:
    return [rational_to_str(c) for c in p.coeffs]


def list_to_poly(items) -> Poly:
    if not isinstance(items, list):
        raise ParseError(f"polynomial must be a coefficient list, got {type(items).__name__}")
    return Poly(tuple(str_to_rational(str(c)) for c in items))


def vector_to_list(v: Vector) -> list[list[str]]:
    return [poly_to_list(c) for c in v]


def list_to_vector(items, rank: int) -> Vector:
    if not isinstance(items, list) or len(items) != rank:
        raise ParseError(f"vector must be a list of {rank} polynomials")
    return tuple(list_to_poly(c) for c in items)


def _matrix_to_obj(cols: tuple[Vector, ...]) -> list[list[list[str]]]:
    # row-major: obj[i][j] is the coefficient of e_i in D(e_j)
    rank = len(cols)
    return [[poly_to_list(cols[j][i]) for j in range(rank)] for i in range(rank)]


def _obj_to_matrix(obj, rank: int) -> tuple[Vector, ...]:
    if not isinstance(obj, list) or len(obj) != rank:
        raise ParseError(f"D must be a {rank}x{rank} matrix of polynomials")
    rows = []
    for row in obj:
        if not isinstance(row, list) or len(row) != rank:
            raise ParseError(f"D must be a {rank}x{rank} matrix of polynomials")
        rows.append([list_to_poly(entry) for entry in row])
    return tuple(tuple(rows[i][j] for i in range(rank)) for j in range(rank))


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


# ---------------------------------------------------------------------------
# vertex algebra files


def va_to_obj(V: VAData) -> dict:
    structure = [
        {
            "i": i,
            "n": n,
            "j": j,
            "value": vector_to_list(V.structure[(i, n, j)]),
        }
        for (i, n, j) in sorted(V.structure)
    ]
    support = [
        {"i": i, "j": j, "n_min": lo, "n_max": hi}
        for (i, j), (lo, hi) in sorted(V.support.items())
    ]
    return {
        "kind": "vertex-algebra",
        "rank": V.rank,
        "coeff_ring": V.coeff_ring,
        "basis_names": list(V.basis_names),
        "D": _matrix_to_obj(V.d_cols),
        "structure": structure,
        "support_bounds": support,
    }


def obj_to_va(obj) -> VAData:
    try:
        rank = int(obj["rank"])
        ring = obj["coeff_ring"]
        names = tuple(str(x) for x in obj["basis_names"])
        d_cols = _obj_to_matrix(obj["D"], rank)
        structure = {}
        for entry in obj["structure"]:
            key = (int(entry["i"]), int(entry["n"]), int(entry["j"]))
            structure[key] = list_to_vector(entry["value"], rank)
        support = {}
        for entry in obj.get("support_bounds", []):
            support[(int(entry["i"]), int(entry["j"]))] = (
                int(entry["n_min"]),
                int(entry["n_max"]),
            )
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"malformed vertex-algebra document: {exc}") from None
    return VAData(rank, ring, names, structure, d_cols, support)


# ---------------------------------------------------------------------------
# chiral algebra files


def chiral_to_obj(A: ChiralData) -> dict:
    entries = [
        {"i": i, "j": j, "n": n, "m": 0, "value": vector_to_list(A.m0[(i, n, j)])}
        for (i, n, j) in sorted(A.m0)
    ]
    for (i, n, j, m) in sorted(A.overrides):
        entries.append(
            {"i": i, "j": j, "n": n, "m": m, "value": vector_to_list(A.overrides[(i, n, j, m)])}
        )
    return {
        "kind": "chiral-algebra",
        "rank": A.rank,
        "basis_names": list(A.basis_names),
        "D": _matrix_to_obj(A.d_cols),
        "B": entries,
        "recursion_determined": not A.overrides,
    }


def obj_to_chiral(obj) -> ChiralData:
    try:
        rank = int(obj["rank"])
        names = tuple(str(x) for x in obj["basis_names"])
        d_cols = _obj_to_matrix(obj["D"], rank)
        m0 = {}
        overrides = {}
        for entry in obj["B"]:
            i, j, n, m = int(entry["i"]), int(entry["j"]), int(entry["n"]), int(entry["m"])
            value = list_to_vector(entry["value"], rank)
            if m == 0:
                m0[(i, n, j)] = value
            else:
                overrides[(i, n, j, m)] = value
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"malformed chiral-algebra document: {exc}") from None
    return ChiralData(rank, names, m0, d_cols, overrides)


# ---------------------------------------------------------------------------
# file-level entry points


def dumps(x) -> str:
    if isinstance(x, VAData):
        return canonical_json(va_to_obj(x))
    if isinstance(x, ChiralData):
        return canonical_json(chiral_to_obj(x))
    raise ParseError(f"cannot serialize {type(x).__name__}")


def loads(text: str):
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno, exc.colno) from None
    if not isinstance(obj, dict) or "kind" not in obj:
        raise ParseError("document must be an object with a 'kind' field")
    kind = obj["kind"]
    if kind == "vertex-algebra":
        return obj_to_va(obj)
    if kind == "chiral-algebra":
        return obj_to_chiral(obj)
    raise ParseError(f"unknown document kind {kind!r}")


def load_path(path) -> VAData | ChiralData:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from None
    return loads(text)
