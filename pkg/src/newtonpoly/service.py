"""FastAPI service exposing every analysis as a stateless JSON endpoint.

All computations are pure and exact, so requests are independent and the
service needs no state or coordination; run it with
``uvicorn newtonpoly.service:app``.
"""

from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from . import __version__, handlers
from .errors import NewtonPolyError
from .schemas import (
    CertificateOut,
    FixturesOut,
    IndexDivisorOut,
    MergeOut,
    MergeRequest,
    NpRequest,
    PolyPrimeRequest,
    PolygonOut,
    PredictOut,
    PredictRequest,
    PurityOut,
    ResidualOut,
    ResidualRequest,
    SchurOut,
    SchurRequest,
    SearchOut,
    SearchRequest,
    SplitOut,
    VerifyOut,
    VerifyRequest,
)


def create_app() -> FastAPI:
    app = FastAPI(
        title="newtonpoly",
        version=__version__,
        description=(
            "Exact Newton-polygon analysis of rational polynomials: polygons, "
            "composition certificates, brute-force verification, factor bounds, "
            "prime-splitting shapes and index-divisor tests."
        ),
    )

    @app.exception_handler(NewtonPolyError)
    async def domain_error(request: Request, exc: NewtonPolyError) -> JSONResponse:
        return JSONResponse(
            status_code=422, content={"error": type(exc).__name__, "detail": str(exc)}
        )

    @app.exception_handler(ValueError)
    async def value_error(request: Request, exc: ValueError) -> JSONResponse:
        return JSONResponse(status_code=422, content={"error": "ValueError", "detail": str(exc)})

    @app.get("/healthz")
    def healthz() -> dict:
        return {"status": "ok", "version": __version__}

    @app.post("/np", response_model=PolygonOut)
    def np(req: NpRequest):
        return handlers.handle_np(req)

    @app.post("/merge", response_model=MergeOut)
    def merge(req: MergeRequest):
        return handlers.handle_merge(req)

    @app.post("/predict", response_model=PredictOut)
    def predict(req: PredictRequest):
        return handlers.handle_predict(req)

    @app.post("/verify", response_model=VerifyOut)
    def verify(req: VerifyRequest):
        return handlers.handle_verify(req)

    @app.post("/stability", response_model=CertificateOut)
    def stability(req: PolyPrimeRequest):
        return handlers.handle_stability(req)

    @app.post("/purity", response_model=PurityOut)
    def purity(req: PolyPrimeRequest):
        return handlers.handle_purity(req)

    @app.post("/residual", response_model=ResidualOut)
    def residual(req: ResidualRequest):
        return handlers.handle_residual(req)

    @app.post("/split", response_model=SplitOut)
    def split(req: PolyPrimeRequest):
        return handlers.handle_split(req)

    @app.post("/index-divisor", response_model=IndexDivisorOut)
    def index_divisor(req: PolyPrimeRequest):
        return handlers.handle_index_divisor(req)

    @app.post("/schur", response_model=SchurOut)
    def schur(req: SchurRequest):
        return handlers.handle_schur(req)

    @app.post("/paper-examples", response_model=FixturesOut)
    def paper_examples():
        return handlers.handle_paper_examples()

    @app.post("/search", response_model=SearchOut)
    def search(req: SearchRequest):
        return handlers.handle_search(req)

    return app


app = create_app()
