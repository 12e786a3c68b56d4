"""HTTP service exposing seed sessions.

A session holds a stack of seeds (for undo) and a coefficient ring.
All computation happens server side; clients exchange JSON only.

Status codes: 404 for unknown sessions, 422 for malformed input
(bad JSON shapes, unknown variables or fields, out-of-range indices),
409 for well-formed requests the mathematics refuses (starfish not
established, isolated directions, elements outside the upper algebra).
"""

from __future__ import annotations

import itertools
import threading
from dataclasses import dataclass, field as dataclass_field
from typing import Any, Dict, List

from fastapi import Body, FastAPI, HTTPException, Query, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from .classgroup import class_group, is_ufd
from .errors import (
    AmbientMismatchError,
    ClusterAlgError,
    ExprSyntaxError,
    InvalidIndexError,
    InvalidPrimeError,
    InvalidQuiverError,
    IsolatedIndexError,
    MalformedInputError,
    NotSkewSymmetricError,
    NotSkewSymmetrizableError,
    UnknownFieldError,
)
from .exchange import matrix_to_quiver
from .factors import count_irreducible_factors, share_common_factor
from .fields import PRESET_FIELDS, CoefficientSpec
from .jsonio import (
    error_to_json,
    field_from_obj,
    quiver_to_json,
    seed_from_json,
    seed_to_json,
)
from .laurent import LaurentPoly
from .membership import (
    is_laurent_in_seed,
    is_member_star,
    local_factorization,
    valuation_pairing_fast,
    valuation_pairing_iterative,
)
from .parser import name_table, parse_element
from .seeds import Seed, exchange_polynomial, mutate_seed

__all__ = ["create_app"]

_INPUT_ERRORS = (
    MalformedInputError,
    AmbientMismatchError,
    InvalidIndexError,
    InvalidPrimeError,
    InvalidQuiverError,
    ExprSyntaxError,
    UnknownFieldError,
    NotSkewSymmetrizableError,
    NotSkewSymmetricError,
)


@dataclass
class _Session:
    field: CoefficientSpec
    stack: List[Seed]
    lock: threading.Lock = dataclass_field(default_factory=threading.Lock)

    @property
    def seed(self) -> Seed:
        return self.stack[-1]


def _status_for(exc: ClusterAlgError) -> int:
    return 422 if isinstance(exc, _INPUT_ERRORS) else 409


def _parse_expr(seed: Seed, text: Any) -> LaurentPoly:
    if not isinstance(text, str):
        raise MalformedInputError("'expr' must be a string")
    names = name_table(seed.n, seed.m, seed.frozen_names)
    return parse_element(text, seed.ambient, names)


def _state_payload(sid: str, session: _Session, field: CoefficientSpec) -> Dict[str, Any]:
    seed = session.seed
    names = seed.variable_names()
    polys = []
    for i in range(1, seed.n + 1):
        f = exchange_polynomial(seed.matrix, i)
        entry: Dict[str, Any] = {"direction": i, "text": f.text(names)}
        try:
            entry["factorCount"] = count_irreducible_factors(seed, i, field)
        except IsolatedIndexError:
            entry["factorCount"] = None
            entry["isolated"] = True
        polys.append(entry)
    sharing = [
        [a, b]
        for a in range(1, seed.n + 1)
        for b in range(a + 1, seed.n + 1)
        if share_common_factor(seed, a, b)
    ]
    quiver = None
    if seed.matrix.is_skew_symmetric():
        quiver = quiver_to_json(matrix_to_quiver(seed.matrix))

    def guarded(fn) -> Dict[str, Any]:
        try:
            return {"status": "ok", "result": fn().to_json()}
        except ClusterAlgError as exc:
            return {"status": exc.code, "message": str(exc)}

    return {
        "id": sid,
        "n": seed.n,
        "m": seed.m,
        "field": str(field),
        "names": list(names),
        "seed": seed_to_json(seed),
        "quiver": quiver,
        "exchangePolys": polys,
        "sharing": sharing,
        "classGroup": guarded(lambda: class_group(seed, field)),
        "ufd": guarded(lambda: is_ufd(seed, field)),
        "canUndo": len(session.stack) > 1,
    }


def create_app() -> FastAPI:
    app = FastAPI(title="clusteralg", version="0.1.0")
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )
    sessions: Dict[str, _Session] = {}
    ids = itertools.count(1)
    registry_lock = threading.Lock()

    @app.exception_handler(ClusterAlgError)
    def _domain_error(request: Request, exc: ClusterAlgError) -> JSONResponse:
        return JSONResponse(status_code=_status_for(exc), content=error_to_json(exc))

    def get_session(sid: str) -> _Session:
        session = sessions.get(sid)
        if session is None:
            raise HTTPException(status_code=404, detail=f"unknown session {sid!r}")
        return session

    def field_or_default(session: _Session, override: str | None) -> CoefficientSpec:
        if override is None:
            return session.field
        return CoefficientSpec.parse(override)

    @app.get("/api/fields")
    def list_fields() -> Dict[str, Any]:
        return {"fields": [str(f) for f in PRESET_FIELDS]}

    @app.post("/api/session")
    def create_session(payload: Dict[str, Any] = Body(...)) -> Dict[str, Any]:
        if "seed" not in payload:
            raise MalformedInputError("request body needs a 'seed' object")
        seed = seed_from_json(payload["seed"])
        ring = field_from_obj(payload.get("field"))
        with registry_lock:
            sid = f"s{next(ids)}"
            session = _Session(field=ring, stack=[seed])
            sessions[sid] = session
        with session.lock:
            return _state_payload(sid, session, ring)

    @app.get("/api/session/{sid}")
    def read_session(sid: str, field: str | None = Query(default=None)) -> Dict[str, Any]:
        session = get_session(sid)
        with session.lock:
            return _state_payload(sid, session, field_or_default(session, field))

    @app.post("/api/session/{sid}/field")
    def set_field(sid: str, payload: Dict[str, Any] = Body(...)) -> Dict[str, Any]:
        session = get_session(sid)
        ring = field_from_obj(payload.get("field"))
        with session.lock:
            session.field = ring
            return _state_payload(sid, session, ring)

    @app.post("/api/session/{sid}/mutate")
    def mutate(sid: str, payload: Dict[str, Any] = Body(...)) -> Dict[str, Any]:
        session = get_session(sid)
        k = payload.get("k")
        if isinstance(k, bool) or not isinstance(k, int):
            raise MalformedInputError("'k' must be an integer direction")
        with session.lock:
            session.stack.append(mutate_seed(session.seed, k))
            return _state_payload(sid, session, session.field)

    @app.post("/api/session/{sid}/undo")
    def undo(sid: str) -> Dict[str, Any]:
        session = get_session(sid)
        with session.lock:
            if len(session.stack) <= 1:
                return JSONResponse(
                    status_code=409,
                    content={"error": "nothing-to-undo", "message": "already at the initial seed"},
                )
            session.stack.pop()
            return _state_payload(sid, session, session.field)

    @app.post("/api/session/{sid}/member")
    def member(sid: str, payload: Dict[str, Any] = Body(...)) -> Dict[str, Any]:
        session = get_session(sid)
        with session.lock:
            seed = session.seed
            u = _parse_expr(seed, payload.get("expr"))
            path = payload.get("path")
            if path is not None:
                if not isinstance(path, list) or not all(
                    isinstance(i, int) and not isinstance(i, bool) for i in path
                ):
                    raise MalformedInputError("'path' must be an array of directions")
                return {"laurent_in_seed": is_laurent_in_seed(u, seed, path)}
            return is_member_star(u, seed).to_json()

    @app.post("/api/session/{sid}/pairing")
    def pairing(sid: str, payload: Dict[str, Any] = Body(...)) -> Dict[str, Any]:
        session = get_session(sid)
        with session.lock:
            seed = session.seed
            u = _parse_expr(seed, payload.get("expr"))
            direction = payload.get("direction")
            if isinstance(direction, bool) or not isinstance(direction, int):
                raise MalformedInputError("'direction' must be an integer")
            method = payload.get("method", "fast")
            if method not in ("fast", "iterative"):
                raise MalformedInputError("'method' must be 'fast' or 'iterative'")
            assert_starfish = bool(payload.get("assertStarfish", False))
            fn = valuation_pairing_iterative if method == "iterative" else valuation_pairing_fast
            value = fn(u, seed, direction, assert_starfish=assert_starfish)
            return {"direction": direction, "method": method, "value": value}

    @app.post("/api/session/{sid}/local-factor")
    def local_factor(sid: str, payload: Dict[str, Any] = Body(...)) -> Dict[str, Any]:
        session = get_session(sid)
        with session.lock:
            seed = session.seed
            u = _parse_expr(seed, payload.get("expr"))
            assert_starfish = bool(payload.get("assertStarfish", False))
            return local_factorization(u, seed, assert_starfish=assert_starfish).to_json()

    @app.get("/api/session/{sid}/class-group")
    def class_group_endpoint(sid: str, field: str | None = Query(default=None)) -> Dict[str, Any]:
        session = get_session(sid)
        with session.lock:
            ring = field_or_default(session, field)
            return class_group(session.seed, ring).to_json()

    return app
