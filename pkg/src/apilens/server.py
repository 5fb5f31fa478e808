"""HTTP surface for the engine. All bodies are UTF-8 JSON.

Protocol errors carry a machine-readable ``error`` code and a human
``message``; stack traces never leave the process.
"""

from __future__ import annotations

from pathlib import Path

from fastapi import FastAPI, Query, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse
from pydantic import BaseModel, Field
from typing import Literal

from .docs import DocNotFound
from .engine import Engine, SourceTooLarge
from .examples import EmptyQuery
from .intent import InvalidPosition


class ResolveRequest(BaseModel):
    source: str
    line: int
    col: int
    mode: Literal["reading", "writing"]


class SearchRequest(BaseModel):
    query: str
    limit: int | None = Field(default=None, ge=1)


def _error(status: int, code: str, message: str) -> JSONResponse:
    return JSONResponse(status_code=status, content={"error": code, "message": message})


def create_app(engine: Engine, static_dir: str | Path | None = None) -> FastAPI:
    app = FastAPI(title="apilens", docs_url=None, redoc_url=None)

    @app.exception_handler(RequestValidationError)
    async def on_bad_request(request: Request, exc: RequestValidationError):
        return _error(400, "invalid_request", str(exc.errors()[:1]))

    @app.exception_handler(InvalidPosition)
    async def on_invalid_position(request: Request, exc: InvalidPosition):
        return _error(400, "invalid_position", str(exc))

    @app.exception_handler(SourceTooLarge)
    async def on_source_too_large(request: Request, exc: SourceTooLarge):
        return _error(413, "source_too_large", str(exc))

    @app.exception_handler(DocNotFound)
    async def on_doc_not_found(request: Request, exc: DocNotFound):
        return _error(404, "not_found", str(exc))

    @app.exception_handler(EmptyQuery)
    async def on_empty_query(request: Request, exc: EmptyQuery):
        return _error(400, "empty_query", str(exc))

    @app.exception_handler(ValueError)
    async def on_value_error(request: Request, exc: ValueError):
        return _error(400, "invalid_request", str(exc))

    @app.post("/api/resolve")
    def api_resolve(req: ResolveRequest) -> JSONResponse:
        result = engine.resolve_query(req.source, req.line, req.col, req.mode)
        return JSONResponse(result.as_dict())

    @app.post("/api/search")
    def api_search(req: SearchRequest) -> JSONResponse:
        ranked = engine.task_search(req.query, req.limit)
        return JSONResponse({"examples": [r.as_dict() for r in ranked]})

    @app.get("/api/doc/{name}")
    def api_doc(name: str) -> JSONResponse:
        return JSONResponse(engine.doc(name).as_dict())

    @app.get("/api/examples/{name}")
    def api_examples(name: str, limit: int | None = Query(default=None, ge=1)) -> JSONResponse:
        ranked = engine.examples_for(name, limit)
        return JSONResponse({"examples": [r.as_dict() for r in ranked]})

    @app.get("/api/health")
    def api_health() -> JSONResponse:
        stats = engine.stats()
        return JSONResponse({"status": "ok", **stats})

    if static_dir is not None and Path(static_dir).is_dir():
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=str(static_dir), html=True), name="ui")

    return app
