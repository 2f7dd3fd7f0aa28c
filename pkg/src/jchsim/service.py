"""HTTP service wrapping the experiment runner.

POST /run       -- execute an experiment config, returns columns + rows
POST /validate  -- semantic diagnostics for a config
GET  /health    -- liveness and version

Config errors map to 422 with the offending fields listed; numerical
failures (norm drift) map to 500 with type "numerical-failure".
"""
from __future__ import annotations

from fastapi import FastAPI
from fastapi.responses import JSONResponse
from pydantic import BaseModel

from . import __version__
from .config import ExperimentConfig, validate
from .experiments import COLUMNS, ConfigError, run_experiment
from .sim import NumericalError

app = FastAPI(title="jchsim", version=__version__)


class RunResponse(BaseModel):
    columns: list[str]
    rows: list[dict]
    extras: dict = {}


class ValidateResponse(BaseModel):
    diagnostics: list[str]


@app.exception_handler(ConfigError)
async def _config_error(request, exc: ConfigError):
    return JSONResponse(status_code=422, content={
        "detail": {"type": "config-error", "diagnostics": exc.diagnostics}})


@app.exception_handler(NumericalError)
async def _numerical_error(request, exc: NumericalError):
    return JSONResponse(status_code=500, content={
        "detail": {"type": "numerical-failure", "message": str(exc)}})


@app.get("/health")
def health() -> dict:
    return {"status": "ok", "version": __version__}


@app.post("/validate", response_model=ValidateResponse)
def validate_config(config: ExperimentConfig) -> ValidateResponse:
    return ValidateResponse(diagnostics=validate(config))


@app.post("/run", response_model=RunResponse)
def run(config: ExperimentConfig) -> RunResponse:
    result = run_experiment(config)
    return RunResponse(columns=list(COLUMNS), rows=result.rows,
                       extras=result.extras)
