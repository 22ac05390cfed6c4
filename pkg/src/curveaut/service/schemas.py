"""Pydantic request/response models for the service and the CLI client."""

from __future__ import annotations

from typing import Optional

from pydantic import BaseModel, Field, model_validator


class CurveRequest(BaseModel):
    family: str
    d: int = Field(ge=1)
    lam: Optional[str] = None  # scalar expression; `z` denotes zeta_d
    conductor: Optional[int] = Field(default=None, ge=1)  # embed output


class CurveResponse(BaseModel):
    family: str
    degree: int
    lam: Optional[str]
    expected_order: Optional[int]
    generators_are_full_group: bool
    polynomial: str  # polynomial file text
    generators: str  # generator file text, empty when none exist


class ClosureRequest(BaseModel):
    generators: str  # generator file text
    cap: Optional[int] = Field(default=None, ge=1)


class ClosureResponse(BaseModel):
    order: int
    conductor: int
    element_orders: list[tuple[int, int]]  # (order, count), ascending


class ClassifyRequest(BaseModel):
    curve: str  # polynomial file text
    generators: str
    cap: Optional[int] = Field(default=None, ge=1)


class ClassifyResponse(BaseModel):
    degree: int
    order: int
    cases: list[str]
    primary: str
    witnesses: dict
    bounds: list[dict]
    flags: list[str]


class SmoothRequest(BaseModel):
    curve: str


class SmoothResponse(BaseModel):
    smooth: bool
    constructive: bool
    witness: Optional[dict] = None  # {"zeta": n, "coords": [...]}


class BoundsRequest(BaseModel):
    genus: int = Field(ge=2)
    oikawa: Optional[int] = None
    arakawa: Optional[list[int]] = None
    hurwitz: bool = False

    @model_validator(mode="after")
    def _exactly_one_mode(self):
        modes = sum(
            (self.oikawa is not None, self.arakawa is not None, bool(self.hurwitz))
        )
        if modes != 1:
            raise ValueError("choose exactly one of oikawa, arakawa, hurwitz")
        if self.arakawa is not None and len(self.arakawa) != 3:
            raise ValueError("arakawa needs exactly three set sizes")
        return self


class BoundsResponse(BaseModel):
    name: str
    inputs: dict
    value: int
    ratios: Optional[list[str]] = None


class VerifyRequest(BaseModel):
    suite: str
    cap: Optional[int] = Field(default=None, ge=1)


class SuiteCheck(BaseModel):
    name: str
    passed: bool
    detail: str = ""


class SuiteOutcome(BaseModel):
    suite: str
    passed: bool
    checks: list[SuiteCheck]


class VerifyResponse(BaseModel):
    passed: bool
    suites: list[SuiteOutcome]


class ErrorBody(BaseModel):
    error: str  # input | cap | verification | internal
    message: str
