"""FastAPI front end over the sweep layer.

Run with: uvicorn zzqec.webapp:app
"""

from __future__ import annotations

from fastapi import FastAPI, HTTPException, Query
from fastapi.responses import Response

from . import sweep
from .errors import NonPositiveDistance, ScaleExceeded
from .schemas import (
    CurveRequest,
    CurveResponse,
    DeltaEstimateResponse,
    ThresholdResponse,
    ValidateRequest,
    ValidationReport,
)

app = FastAPI(
    title="zzqec",
    description="Failure probabilities of distance-3 codes under nearest-neighbor ZZ crosstalk",
    version="0.1.0",
)


@app.post("/curve", response_model=CurveResponse)
def curve(req: CurveRequest) -> CurveResponse:
    try:
        return sweep.curve_response(req)
    except ScaleExceeded as exc:
        raise HTTPException(status_code=422, detail=str(exc)) from exc


@app.post("/curve.csv", response_class=Response)
def curve_csv(req: CurveRequest) -> Response:
    try:
        text = sweep.curve_csv(sweep.run_curve(req))
    except ScaleExceeded as exc:
        raise HTTPException(status_code=422, detail=str(exc)) from exc
    return Response(content=text, media_type="text/csv")


@app.post("/validate", response_model=ValidationReport)
def validate(req: ValidateRequest) -> ValidationReport:
    return sweep.run_validation(req.grid, req.tolerance)


@app.get("/threshold", response_model=ThresholdResponse)
def threshold() -> ThresholdResponse:
    return sweep.threshold_response()


@app.get("/estimate-delta", response_model=DeltaEstimateResponse)
def estimate_delta(distance: float = Query(gt=0.0)) -> DeltaEstimateResponse:
    try:
        return sweep.delta_estimate_response(distance)
    except NonPositiveDistance as exc:  # pragma: no cover - Query(gt=0) screens first
        raise HTTPException(status_code=422, detail=str(exc)) from exc
