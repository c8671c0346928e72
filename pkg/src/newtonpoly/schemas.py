"""Pydantic request/response models for the HTTP service and the CLI.

Response models mirror the JSON produced by the core dataclasses'
``as_dict`` methods, so a handler can return the dict and FastAPI validates
it against the declared schema.
"""

from __future__ import annotations

from typing import Any, Optional

from pydantic import BaseModel, Field


# -- shared fragments -------------------------------------------------------


class SlopeOut(BaseModel):
    num: int
    den: int


class EdgeOut(BaseModel):
    slope: SlopeOut
    length: int
    lattice_points: int


class PolygonOut(BaseModel):
    prime: int
    origin: list[int]
    vertices: list[list[int]]
    edges: list[EdgeOut]


class ViolationOut(BaseModel):
    name: str
    detail: str


class FactorBoundOut(BaseModel):
    max_factor_count: int
    admissible_degree_summands: list[int]
    per_edge_degree_divisor: list[int]


class CertificateOut(BaseModel):
    theorem: str
    verdict: str
    violations: list[ViolationOut]
    parameters: dict[str, Any] = Field(default_factory=dict)
    predicted_polygon: Optional[PolygonOut] = None
    factor_bound: Optional[FactorBoundOut] = None
    notes: Optional[list[str]] = None
    hypotheses: Optional[dict[str, Any]] = None


# -- requests ---------------------------------------------------------------


class NpRequest(BaseModel):
    polynomial: str = Field(description="polynomial text, e.g. 'x^3+2x+4' or '(1/2)x^2-3'")
    prime: int
    phi: Optional[str] = Field(default=None, description="monic base for a phi-adic polygon")
    strip_zero_root: bool = False


class MergeRequest(BaseModel):
    f: str
    g: str
    prime: int
    check: bool = Field(default=True, description="also recompute the polygon of f*g and compare")


class PredictRequest(BaseModel):
    f: str
    g: Optional[str] = Field(default=None, description="omit to certify the iterates of f alone")
    prime: int
    n: int = 1
    theorem: str = Field(default="auto", description="auto | composition | steep | pure | iterate")


class VerifyRequest(BaseModel):
    g: str
    f: str
    prime: int
    n: int = 1
    degree_cap: Optional[int] = None


class PolyPrimeRequest(BaseModel):
    polynomial: str
    prime: int


class ResidualRequest(BaseModel):
    polynomial: str
    prime: int
    phi: str = "x"


class SchurRequest(BaseModel):
    m: int
    prime: int
    b: Optional[list[int]] = Field(default=None, description="m+1 coefficients; default all ones")
    f: Optional[str] = Field(
        default=None, description="inner polynomial for a dynamical-irreducibility certificate"
    )


class SearchRequest(BaseModel):
    seed: int = 0
    count: int = 50
    primes: list[int] = Field(default_factory=lambda: [2, 3, 5])


# -- responses ---------------------------------------------------------------


class MergeOut(BaseModel):
    merged: PolygonOut
    translates: list[list[int]]
    product_polygon: Optional[PolygonOut] = None
    equal: Optional[bool] = None


class PredictOut(BaseModel):
    certificate: CertificateOut
    n: int
    prediction: Optional[PolygonOut] = None


class VertexEqualityOut(BaseModel):
    k: int
    expected: int
    actual: int | str
    ok: bool


class VerifyOut(BaseModel):
    prime: int
    n: int
    match: bool
    first_mismatch: Optional[dict[str, Any]] = None
    composed_degree: int
    predicted: PolygonOut
    oracle: PolygonOut
    vertex_equalities: list[VertexEqualityOut]
    vertex_equalities_ok: bool
    coefficient_bounds_ok: bool
    coefficient_bound_violation: Optional[dict[str, Any]] = None


class PurityOut(BaseModel):
    kind: str
    prime: int
    r: Optional[int] = None


class ResidualDatumOut(BaseModel):
    edge_index: int
    slope: SlopeOut
    t: int
    residual_poly: str
    squarefree: bool
    degree_profile: Optional[list[list[int]]] = None


class ResidualOut(BaseModel):
    prime: int
    phi: str
    polygon: PolygonOut
    data: list[ResidualDatumOut]


class SplitEntryOut(BaseModel):
    ramification: int
    residual_degree: int
    count: int


class SplitOut(BaseModel):
    prime: int
    p_regular: bool
    entries: list[SplitEntryOut]
    degree_sum: int
    display: str
    assumed_irreducible: bool


class IndexDivisorOut(BaseModel):
    prime: int
    P_counts: dict[str, int]
    N_counts: dict[str, int]
    common_index_divisor: bool
    witness_h: Optional[int] = None
    splitting: SplitOut


class SchurOut(BaseModel):
    m: int
    prime: int
    polynomial: str
    polygon: PolygonOut
    formula_slopes: list[SlopeOut]
    certificate: Optional[CertificateOut] = None


class FixtureResultOut(BaseModel):
    name: str
    passed: bool
    checks: dict[str, bool]


class FixturesOut(BaseModel):
    fixtures: list[FixtureResultOut]
    all_passed: bool


class SearchOut(BaseModel):
    seed: int
    count: int
    primes: list[int]
    found: list[dict[str, Any]]
    found_count: int


class ErrorOut(BaseModel):
    error: str
    detail: str
