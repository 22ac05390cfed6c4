"""FastAPI application exposing the exact-algebra endpoints.

Run with:  uvicorn curveaut.service.app:app
"""

from __future__ import annotations

from fastapi import FastAPI, HTTPException

from . import handlers, schemas
from .handlers import CapError, InputError

app = FastAPI(
    title="curveaut",
    description=(
        "Exact construction, verification and classification of automorphism "
        "groups of smooth plane curves"
    ),
    version="0.1.0",
)


def _translate(exc: Exception) -> HTTPException:
    if isinstance(exc, InputError):
        return HTTPException(status_code=400, detail={"error": "input", "message": str(exc)})
    if isinstance(exc, CapError):
        return HTTPException(status_code=409, detail={"error": "cap", "message": str(exc)})
    raise exc


@app.get("/healthz")
def healthz() -> dict:
    return {"status": "ok"}


@app.post("/curve", response_model=schemas.CurveResponse)
def curve(request: schemas.CurveRequest):
    try:
        return handlers.curve(request)
    except Exception as exc:  # noqa: BLE001 - translated below
        raise _translate(exc) from exc


@app.post("/closure", response_model=schemas.ClosureResponse)
def closure(request: schemas.ClosureRequest):
    try:
        return handlers.closure_handler(request)
    except Exception as exc:  # noqa: BLE001
        raise _translate(exc) from exc


@app.post("/classify", response_model=schemas.ClassifyResponse)
def classify(request: schemas.ClassifyRequest):
    try:
        return handlers.classify_handler(request)
    except Exception as exc:  # noqa: BLE001
        raise _translate(exc) from exc


@app.post("/smooth", response_model=schemas.SmoothResponse)
def smooth(request: schemas.SmoothRequest):
    try:
        return handlers.smooth_handler(request)
    except Exception as exc:  # noqa: BLE001
        raise _translate(exc) from exc


@app.post("/bounds", response_model=schemas.BoundsResponse)
def bounds(request: schemas.BoundsRequest):
    try:
        return handlers.bounds_handler(request)
    except Exception as exc:  # noqa: BLE001
        raise _translate(exc) from exc


@app.post("/verify", response_model=schemas.VerifyResponse)
def verify(request: schemas.VerifyRequest):
    try:
        return handlers.verify_handler(request)
    except Exception as exc:  # noqa: BLE001
        raise _translate(exc) from exc
