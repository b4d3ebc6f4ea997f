"""Pydantic request/response models shared by the service and the CLI client."""

from __future__ import annotations

from typing import Literal, Optional

from pydantic import BaseModel, Field, model_validator

from .phasespace import Params, PhasePoint

PlaneName = Literal["q1q2", "p1p2", "q1p1", "q2p2", "q1p2", "q2p1"]
SuiteName = Literal[
    "algebra", "eigen", "projection", "normalization", "symmetry", "gauge", "identities"
]


class ParamsModel(BaseModel):
    m: float = Field(default=1.0, gt=0)
    omega: float = Field(default=2.0, gt=0)
    hbar: float = Field(default=1.0, gt=0)

    def to_params(self) -> Params:
        return Params(m=self.m, omega=self.omega, hbar=self.hbar)


class PointModel(BaseModel):
    q1: float = 0.0
    q2: float = 0.0
    p1: float = 0.0
    p2: float = 0.0

    def to_point(self) -> PhasePoint:
        return PhasePoint(self.q1, self.q2, self.p1, self.p2)


class IndexModel(BaseModel):
    """Wigner index; give (n, l) for a diagonal state or all four numbers."""

    n1: int = Field(ge=0)
    n2: int = Field(ge=0)
    l1: int = Field(ge=0)
    l2: int = Field(ge=0)

    @classmethod
    def diagonal(cls, n: int, l: int) -> "IndexModel":
        return cls(n1=n, n2=n, l1=l, l2=l)

    @property
    def is_diagonal(self) -> bool:
        return self.n1 == self.n2 and self.l1 == self.l2


class ComplexValue(BaseModel):
    re: float
    im: float = 0.0


class EvalRequest(BaseModel):
    index: IndexModel
    point: PointModel = PointModel()
    params: ParamsModel = ParamsModel()


class EvalResponse(BaseModel):
    value: ComplexValue
    diagonal: bool


class GridWindow(BaseModel):
    x_min: float = -4.0
    x_max: float = 4.0
    y_min: float = -4.0
    y_max: float = 4.0
    nx: int = Field(default=201, ge=2)
    ny: int = Field(default=201, ge=2)

    @model_validator(mode="after")
    def _ranges_increase(self):
        if not (self.x_min < self.x_max and self.y_min < self.y_max):
            raise ValueError("grid ranges must be increasing")
        return self


class GridRequest(BaseModel):
    n: int = Field(default=0, ge=0)
    l: int = Field(default=0, ge=0)
    plane: PlaneName = "q1q2"
    window: GridWindow = GridWindow()
    fixed: dict[str, float] = Field(default_factory=dict)
    reduced: bool = False
    params: ParamsModel = ParamsModel()


class GridResponse(BaseModel):
    meta: dict[str, float | int | str]
    xs: list[float]
    ys: list[float]
    values: list[list[float]]


class MarginalRequest(BaseModel):
    n: int = Field(default=0, ge=0)
    l: int = Field(default=0, ge=0)
    plane: PlaneName = "q1q2"
    window: GridWindow = GridWindow(nx=101, ny=101)
    method: Literal["auto", "analytic", "quadrature"] = "auto"
    order: int = Field(default=40, ge=4)
    normalized: bool = False
    reduced: bool = False
    params: ParamsModel = ParamsModel()


class VerifyRequest(BaseModel):
    suite: SuiteName
    max_index: Optional[int] = Field(default=None, ge=0)
    params: ParamsModel = ParamsModel()
    tolerances: dict[str, float] = Field(default_factory=dict)


class CheckModel(BaseModel):
    name: str
    passed: bool
    residual: Optional[float] = None
    detail: str = ""


class VerifyResponse(BaseModel):
    suite: str
    passed: bool
    checks: list[CheckModel]


class TransformRequest(BaseModel):
    chi: str = Field(description="gauge polynomial in q1, q2, e.g. '0.5*q1*q2'")
    coupling: float = 1.0
    n: int = Field(default=0, ge=0)
    l: int = Field(default=0, ge=0)
    params: ParamsModel = ParamsModel()


class TransformResponse(BaseModel):
    hamiltonian: str
    momentum_1: str
    momentum_2: str
    eigen_supported: bool
    eigen_exact: Optional[bool] = None
    eigen_residual: Optional[float] = None
    normalization: Optional[float] = None
    normalization_residual: Optional[float] = None
    reality_residual: Optional[float] = None
    detail: str = ""
