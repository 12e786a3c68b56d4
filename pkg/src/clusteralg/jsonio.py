"""JSON wire formats shared by the command line tool and the HTTP service.

Seeds are serialized as the initial exchange matrix plus the mutation
history; the loader replays the history so cluster variables never have
to be transmitted (they are included in output payloads for display
only).  Coefficients travel as exact rational strings, never floats.
"""

from __future__ import annotations

from typing import Any, Dict, Mapping, Sequence

from .errors import ClusterAlgError, MalformedInputError
from .exchange import ExchangeMatrix, IceQuiver, mutate_matrix
from .fields import CoefficientSpec
from .laurent import LaurentPoly
from .seeds import Seed, initial_seed, mutate_seed_path

__all__ = [
    "matrix_to_json",
    "matrix_from_json",
    "quiver_to_json",
    "poly_to_json",
    "seed_to_json",
    "seed_from_json",
    "field_from_obj",
    "error_to_json",
]


def matrix_to_json(matrix: ExchangeMatrix) -> Dict[str, Any]:
    return {"n": matrix.n, "m": matrix.m, "B": [list(row) for row in matrix.rows]}


def _as_int(value: Any, what: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise MalformedInputError(f"{what} must be an integer, got {value!r}")
    return value


def matrix_from_json(obj: Any) -> ExchangeMatrix:
    if not isinstance(obj, Mapping):
        raise MalformedInputError("expected an object with a 'B' matrix")
    rows = obj.get("B")
    if not isinstance(rows, Sequence) or isinstance(rows, (str, bytes)) or not rows:
        raise MalformedInputError("'B' must be a non-empty array of integer rows")
    first = rows[0]
    if not isinstance(first, Sequence) or isinstance(first, (str, bytes)):
        raise MalformedInputError("'B' must be an array of integer rows")
    n = len(first)
    clean = []
    for row in rows:
        if not isinstance(row, Sequence) or isinstance(row, (str, bytes)):
            raise MalformedInputError("'B' must be an array of integer rows")
        clean.append([_as_int(v, "matrix entry") for v in row])
    m = len(clean) - n
    if "n" in obj and _as_int(obj["n"], "'n'") != n:
        raise MalformedInputError(
            f"'n' is {obj['n']} but the matrix has {n} columns"
        )
    if "m" in obj and _as_int(obj["m"], "'m'") != m:
        raise MalformedInputError(
            f"'m' is {obj['m']} but the matrix has {len(clean)} rows and {n} columns"
        )
    if m < 0:
        raise MalformedInputError(
            f"matrix has {len(clean)} rows but {n} columns; need at least {n} rows"
        )
    return ExchangeMatrix(n, m, clean)


def quiver_to_json(quiver: IceQuiver) -> Dict[str, Any]:
    return {
        "n": quiver.n,
        "m": quiver.m,
        "arrows": [[s, t, mult] for (s, t, mult) in quiver.arrows],
    }


def poly_to_json(u: LaurentPoly, names: Sequence[str] | None = None) -> Dict[str, Any]:
    return {
        "text": u.text(names),
        "terms": [
            {"exponents": list(e), "coefficient": str(c)} for e, c in u.terms()
        ],
    }


def initial_matrix_of(seed: Seed) -> ExchangeMatrix:
    """Undo the seed's recorded history; mutation is an involution."""
    matrix = seed.matrix
    for i in reversed(seed.history):
        matrix = mutate_matrix(matrix, i)
    return matrix


def seed_to_json(seed: Seed) -> Dict[str, Any]:
    names = seed.variable_names()
    payload = matrix_to_json(initial_matrix_of(seed))
    payload["names"] = list(seed.frozen_names)
    payload["history"] = list(seed.history)
    payload["cluster"] = [u.text(names) for u in seed.cluster]
    payload["currentB"] = [list(row) for row in seed.matrix.rows]
    return payload


def seed_from_json(obj: Any) -> Seed:
    matrix = matrix_from_json(obj)
    names: Sequence[str] = ()
    if isinstance(obj, Mapping) and "names" in obj and obj["names"] is not None:
        raw = obj["names"]
        if not isinstance(raw, Sequence) or isinstance(raw, (str, bytes)):
            raise MalformedInputError("'names' must be an array of strings")
        if not all(isinstance(s, str) for s in raw):
            raise MalformedInputError("'names' must be an array of strings")
        names = tuple(raw)
    seed = initial_seed(matrix, names)
    history: Sequence[int] = ()
    if isinstance(obj, Mapping) and "history" in obj and obj["history"] is not None:
        raw = obj["history"]
        if not isinstance(raw, Sequence) or isinstance(raw, (str, bytes)):
            raise MalformedInputError("'history' must be an array of directions")
        history = [_as_int(i, "history entry") for i in raw]
    if history:
        seed = mutate_seed_path(seed, history)
    return seed


def field_from_obj(obj: Any) -> CoefficientSpec:
    """Accept either the compact string form or the object form."""
    if obj is None:
        return CoefficientSpec.integers()
    if isinstance(obj, str):
        return CoefficientSpec.parse(obj)
    if isinstance(obj, Mapping):
        return CoefficientSpec.from_json(obj)
    raise MalformedInputError(f"cannot read a coefficient ring from {obj!r}")


def error_to_json(exc: ClusterAlgError) -> Dict[str, str]:
    return {"error": exc.code, "message": str(exc)}
