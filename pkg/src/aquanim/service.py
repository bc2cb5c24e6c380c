"""Stateless HTTP facade over the planner/renderer pipeline.

Responses depend only on request bodies, and the frame documents are the
exact bytes the CLI would write, because both call the same pure pipeline.
"""

from __future__ import annotations

from enum import Enum
from pathlib import Path
from typing import Literal, Optional

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse, Response
from pydantic import BaseModel, ConfigDict
from starlette.exceptions import HTTPException as StarletteHTTPException
from starlette.staticfiles import StaticFiles

from . import __version__
from .easing import Easing
from .errors import (
    AquanimError,
    ConservationError,
    InvariantError,
    SceneSyntaxError,
    SchemaError,
)
from .kernel import check_conservation
from .planner import plan_align, plan_rebin, sample_frames
from .render import export_frames_json
from .scene import Scene, read_csv_values, scene_spec_from_obj

MAX_BODY_BYTES = 10 * 1024 * 1024
MAX_POINTS = 1_000_000
MAX_FRAMES = 10_000


class ApiCode(str, Enum):
    BAD_REQUEST = "BadRequest"
    UNPROCESSABLE_SCENE = "UnprocessableScene"
    CONSERVATION_VIOLATION = "ConservationViolation"
    INTERNAL = "Internal"


_STATUS = {
    ApiCode.BAD_REQUEST: 400,
    ApiCode.UNPROCESSABLE_SCENE: 422,
    ApiCode.CONSERVATION_VIOLATION: 422,
    ApiCode.INTERNAL: 500,
}


class ApiException(Exception):
    def __init__(self, code: ApiCode, message: str, detail: str | None = None):
        self.code = code
        self.message = message
        self.detail = detail
        super().__init__(message)


def _error_body(code: ApiCode, message: str, detail: str | None = None) -> dict:
    return {"code": code.value, "message": message, "detail": detail}


def _error_response(code: ApiCode, message: str, detail: str | None = None,
                    status: int | None = None) -> JSONResponse:
    return JSONResponse(
        status_code=status if status is not None else _STATUS[code],
        content=_error_body(code, message, detail),
    )


class RebinRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    data: Optional[list[float]] = None
    csv: Optional[str] = None
    from_bins: int
    to_bins: int
    frames: int = 60
    ease: Literal["linear", "smoothstep"] = "smoothstep"


class AlignRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    scene: dict
    select: list[str]
    frames: int = 60


class _WrappedStaticFiles(StaticFiles):
    # Route missing-file responses through the app's exception handlers so
    # even static 404 bodies keep the ApiError shape.
    async def get_response(self, path, scope):
        try:
            return await super().get_response(path, scope)
        except StarletteHTTPException:
            raise
        except Exception as exc:  # pragma: no cover - defensive
            raise StarletteHTTPException(status_code=500, detail=str(exc)) from exc


def _conservation_gate(frames) -> None:
    report = check_conservation((1.0,), [(f.total_area(),) for f in frames])
    if not report.passed:
        raise ApiException(
            ApiCode.CONSERVATION_VIOLATION,
            "sampled frames do not conserve area",
            detail=f"max deviation {report.max_total_deviation:.3g}",
        )


def create_app(assets_dir: str | Path | None = None) -> FastAPI:
    app = FastAPI(
        title="aquanim transit service",
        docs_url=None,
        redoc_url=None,
        openapi_url=None,
    )

    @app.exception_handler(ApiException)
    async def _api_exception(request: Request, exc: ApiException):
        return _error_response(exc.code, exc.message, exc.detail)

    @app.exception_handler(RequestValidationError)
    async def _validation(request: Request, exc: RequestValidationError):
        errors = exc.errors()
        detail = None
        if errors:
            loc = ".".join(str(p) for p in errors[0].get("loc", ()))
            detail = f"{loc}: {errors[0].get('msg', 'invalid')}"
        return _error_response(ApiCode.BAD_REQUEST, "invalid request body", detail)

    @app.exception_handler(StarletteHTTPException)
    async def _http_exception(request: Request, exc: StarletteHTTPException):
        code = ApiCode.INTERNAL if exc.status_code >= 500 else ApiCode.BAD_REQUEST
        return _error_response(code, str(exc.detail), None, status=exc.status_code)

    @app.exception_handler(Exception)
    async def _fallback(request: Request, exc: Exception):
        return _error_response(ApiCode.INTERNAL, "internal error", type(exc).__name__)

    @app.middleware("http")
    async def _body_cap(request: Request, call_next):
        length = request.headers.get("content-length")
        if length is not None and length.isdigit() and int(length) > MAX_BODY_BYTES:
            return _error_response(
                ApiCode.BAD_REQUEST, f"request body exceeds {MAX_BODY_BYTES} bytes"
            )
        return await call_next(request)

    @app.get("/api/health")
    async def health():
        return {"status": "ok", "version": __version__}

    @app.post("/api/rebin")
    async def rebin(body: RebinRequest):
        if (body.data is None) == (body.csv is None):
            raise ApiException(
                ApiCode.BAD_REQUEST, "provide exactly one of 'data' or 'csv'"
            )
        if body.frames > MAX_FRAMES:
            raise ApiException(ApiCode.BAD_REQUEST, f"frames capped at {MAX_FRAMES}")
        try:
            values = list(body.data) if body.data is not None else read_csv_values(body.csv)
            if len(values) > MAX_POINTS:
                raise ApiException(
                    ApiCode.BAD_REQUEST, f"data capped at {MAX_POINTS} points"
                )
            plan = plan_rebin(values, body.from_bins, body.to_bins, easing=Easing(body.ease))
            frames = sample_frames(plan, body.frames)
        except ConservationError as exc:
            raise ApiException(ApiCode.CONSERVATION_VIOLATION, str(exc)) from exc
        except AquanimError as exc:
            raise ApiException(ApiCode.BAD_REQUEST, str(exc)) from exc
        _conservation_gate(frames)
        return Response(content=export_frames_json(frames), media_type="application/json")

    @app.post("/api/align")
    async def align(body: AlignRequest):
        if body.frames > MAX_FRAMES:
            raise ApiException(ApiCode.BAD_REQUEST, f"frames capped at {MAX_FRAMES}")
        try:
            spec = scene_spec_from_obj(body.scene)
        except (SceneSyntaxError, SchemaError, InvariantError) as exc:
            raise ApiException(
                ApiCode.UNPROCESSABLE_SCENE,
                str(exc),
                detail=getattr(exc, "path", None),
            ) from exc
        if not isinstance(spec, Scene):
            raise ApiException(
                ApiCode.UNPROCESSABLE_SCENE,
                "embedded transition requests are not accepted here",
            )
        try:
            plan = plan_align(spec, body.select)
            frames = sample_frames(plan, body.frames)
        except ConservationError as exc:
            raise ApiException(ApiCode.CONSERVATION_VIOLATION, str(exc)) from exc
        except AquanimError as exc:
            raise ApiException(ApiCode.UNPROCESSABLE_SCENE, str(exc)) from exc
        _conservation_gate(frames)
        return Response(content=export_frames_json(frames), media_type="application/json")

    ui_dir = Path(assets_dir) if assets_dir is not None else None
    if ui_dir is not None and ui_dir.is_dir():
        app.mount("/", _WrappedStaticFiles(directory=ui_dir, html=True), name="ui")
    else:

        @app.get("/")
        async def no_ui():
            return _error_response(
                ApiCode.BAD_REQUEST, "UI assets are not built", "/", status=404
            )

    return app
