"""HTTP/JSON service over the same core as the CLI.

Sessions are flat JSON files ({id}.json: initial matrix + history) in a
data directory; state is always reconstructed by replay, so a restarted
service continues exactly where it stopped.  All responses are canonical
JSON, byte-identical to the CLI for identical inputs.
"""

from __future__ import annotations

import json
import os
import tempfile
import uuid
from pathlib import Path

from fastapi import FastAPI, Request, Response

from . import catalog as cat
from .dilog import verify_identity
from .periodicity import (
    NuPeriodSpec,
    enumerate_matrix_period_nus,
    period_check_payload,
)
from .seeds import ExchangeMatrix, PrincipalSeed, Quiver, apply_sequence
from .serialize import canon_json
from .tysystems import build_schedule, gen_t_system, gen_y_system


class ServiceError(ValueError):
    def __init__(self, message: str, status: int = 400):
        super().__init__(message)
        self.status = status


def _json_response(payload, status: int = 200) -> Response:
    return Response(
        content=canon_json(payload), media_type="application/json", status_code=status
    )


class SessionStore:
    def __init__(self, data_dir: str):
        self.root = Path(data_dir)
        self.root.mkdir(parents=True, exist_ok=True)

    def _path(self, sid: str) -> Path:
        if not sid.replace("-", "").isalnum():
            raise ServiceError("malformed session id", 400)
        return self.root / f"{sid}.json"

    def create(self, payload: dict) -> str:
        catalog_name = payload.get("catalog")
        if catalog_name:
            entry = cat.get_entry(catalog_name)
            b_rows = entry.matrix.to_json()
        elif "matrix" in payload:
            b_rows = ExchangeMatrix.from_rows(payload["matrix"]).to_json()
            catalog_name = None
        elif "arrows" in payload:
            b_rows = Quiver.from_json(payload).to_matrix().to_json()
            catalog_name = None
        else:
            raise ServiceError("give 'catalog', 'matrix', or quiver 'arrows'")
        sid = uuid.uuid4().hex
        self._path(sid).write_text(
            canon_json({"catalog": catalog_name, "B0": b_rows, "history": []})
        )
        return sid

    def load(self, sid: str) -> dict:
        path = self._path(sid)
        if not path.exists():
            raise ServiceError(f"no session {sid}", 404)
        return json.loads(path.read_text())

    def save(self, sid: str, data: dict) -> None:
        self._path(sid).write_text(canon_json(data))


def _replay(data: dict) -> PrincipalSeed:
    B = ExchangeMatrix.from_rows(data["B0"])
    return apply_sequence(PrincipalSeed.initial(B), [k - 1 for k in data["history"]])


def _state_payload(sid: str, data: dict, seed: PrincipalSeed, delta=None) -> dict:
    n = seed.n
    entry = cat.get_entry(data["catalog"]) if data.get("catalog") else None
    signs = [seed.tropical_sign(i) for i in range(n)]
    c_is_identity = all(
        seed.c[i][j] == (1 if i == j else 0) for i in range(n) for j in range(n)
    )
    arrows = []
    if seed.b.is_skew_symmetric():
        arrows = Quiver.from_matrix(seed.b).to_json()["arrows"]
    payload = {
        "id": sid,
        "catalog": data.get("catalog"),
        "labels": list(entry.labels) if entry else [str(i + 1) for i in range(n)],
        "layout": [list(p) for p in entry.layout] if entry else [],
        "seed": seed.to_json(),
        "arrows": arrows,
        "tropical_signs": signs,
        "c_is_identity": c_is_identity,
        "period_detected": c_is_identity and bool(data["history"]),
    }
    if delta is not None:
        payload["delta"] = delta
    return payload


def create_app(data_dir=None) -> FastAPI:
    data_dir = data_dir or os.environ.get("PERIODICA_DATA") or os.path.join(
        tempfile.gettempdir(), "periodica-sessions"
    )
    store = SessionStore(data_dir)
    app = FastAPI(title="periodica", docs_url=None, redoc_url=None)

    @app.exception_handler(ServiceError)
    async def _service_error(_req, exc: ServiceError):  # pragma: no cover
        return _json_response({"error": str(exc)}, exc.status)

    @app.exception_handler(Exception)
    async def _any_error(_req, exc: Exception):
        if isinstance(exc, ServiceError):
            return _json_response({"error": str(exc)}, exc.status)
        return _json_response({"error": str(exc)}, 400)

    async def _body(request: Request) -> dict:
        raw = await request.body()
        if not raw:
            return {}
        try:
            data = json.loads(raw)
        except json.JSONDecodeError as exc:
            raise ServiceError(f"malformed JSON body: {exc}")
        if not isinstance(data, dict):
            raise ServiceError("request body must be a JSON object")
        return data

    @app.get("/catalog")
    async def catalog_index():
        rows = []
        for name in cat.entry_names():
            e = cat.get_entry(name)
            rows.append(
                {
                    "name": e.name,
                    "n": e.n,
                    "description": e.description,
                    "has_seed_period": e.has_seed_period(),
                }
            )
        return _json_response(rows)

    @app.get("/catalog/{name}")
    async def catalog_show(name: str):
        try:
            return _json_response(cat.get_entry(name).to_json())
        except KeyError as exc:
            raise ServiceError(str(exc), 404)

    @app.post("/sessions")
    async def create_session(request: Request):
        payload = await _body(request)
        sid = store.create(payload)
        data = store.load(sid)
        return _json_response(_state_payload(sid, data, _replay(data)))

    @app.get("/sessions/{sid}")
    async def get_session(sid: str):
        data = store.load(sid)
        return _json_response(_state_payload(sid, data, _replay(data)))

    @app.post("/sessions/{sid}/mutate")
    async def mutate(sid: str, request: Request):
        payload = await _body(request)
        data = store.load(sid)
        seed = _replay(data)
        k = payload.get("k")
        if not isinstance(k, int) or not 1 <= k <= seed.n:
            raise ServiceError(f"'k' must be an integer in 1..{seed.n}")
        seed = seed.mutate(k - 1)
        data["history"].append(k)
        store.save(sid, data)
        delta = {
            "k": k,
            "c_column": list(seed.c_column(k - 1)),
            "g_column": list(seed.g_column(k - 1)),
            "f": seed.f[k - 1].to_json(),
            "tropical_sign": seed.tropical_sign(k - 1),
        }
        return _json_response(_state_payload(sid, data, seed, delta))

    @app.post("/sessions/{sid}/undo")
    async def undo(sid: str):
        data = store.load(sid)
        if not data["history"]:
            raise ServiceError("history is empty")
        data["history"].pop()
        store.save(sid, data)
        return _json_response(_state_payload(sid, data, _replay(data)))

    @app.post("/sessions/{sid}/check-period")
    async def check_period(sid: str, request: Request):
        payload = await _body(request)
        data = store.load(sid)
        if not data["history"]:
            raise ServiceError("history is empty")
        B = ExchangeMatrix.from_rows(data["B0"])
        seq = tuple(k - 1 for k in data["history"])
        nu = payload.get("nu")
        nu = tuple(range(B.n)) if nu in (None, "id") else tuple(v - 1 for v in nu)
        spec = NuPeriodSpec(seq, nu)
        method = payload.get("method", "tropical")
        body, _ = period_check_payload(B, spec, method)
        return _json_response(body)

    @app.get("/sessions/{sid}/nu-candidates")
    async def nu_candidates(sid: str):
        data = store.load(sid)
        if not data["history"]:
            raise ServiceError("history is empty")
        B = ExchangeMatrix.from_rows(data["B0"])
        nus = enumerate_matrix_period_nus(B, [k - 1 for k in data["history"]])
        return _json_response([[v + 1 for v in nu] for nu in nus])

    @app.post("/sessions/{sid}/ty")
    async def ty(sid: str, request: Request):
        payload = await _body(request)
        data = store.load(sid)
        if not data["history"]:
            raise ServiceError("history is empty")
        B = ExchangeMatrix.from_rows(data["B0"])
        seq = tuple(k - 1 for k in data["history"])
        nu = payload.get("nu")
        nu = tuple(range(B.n)) if nu in (None, "id") else tuple(v - 1 for v in nu)
        schedule = build_schedule(B, NuPeriodSpec(seq, nu))
        kind = payload.get("kind", "Y")
        if kind == "Y":
            rels = gen_y_system(schedule)
        elif kind == "T":
            rels = gen_t_system(
                schedule, with_coefficients=payload.get("with_coefficients", True)
            )
        else:
            raise ServiceError("'kind' must be 'Y' or 'T'")
        return _json_response(
            {"schedule": schedule.to_json(), "relations": [r.to_json() for r in rels]}
        )

    @app.post("/sessions/{sid}/dilog")
    async def dilog(sid: str, request: Request):
        payload = await _body(request)
        data = store.load(sid)
        if not data["history"]:
            raise ServiceError("history is empty")
        B = ExchangeMatrix.from_rows(data["B0"])
        seq = tuple(k - 1 for k in data["history"])
        schedule = build_schedule(B, NuPeriodSpec.identity(seq, B.n))
        report = verify_identity(
            schedule,
            trials=int(payload.get("trials", 5)),
            tolerance=float(payload.get("tolerance", 1e-9)),
            rng_seed=int(payload.get("rng_seed", 2026)),
        )
        return _json_response(report.to_json())

    return app
