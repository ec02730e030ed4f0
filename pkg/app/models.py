from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from .errors import DomainError


@dataclass(frozen=True)
class PoleParam:
    """The pole p in (0, 1) together with P = p + 1/p."""

    p: float
    P: float

    def __post_init__(self) -> None:
        if not 0.0 < self.p < 1.0:
            raise DomainError(f"p must lie in (0, 1), got {self.p!r}")


@dataclass(frozen=True)
class NamedConstants:
    P_star: float
    p_star: float
    P_2: float
    p_2: float
    P_1: float
    p_1: float
    P_0: float
    p_0: float


@dataclass(frozen=True)
class QuadCoeffs:
    a: float
    b: float
    c: float

    def __post_init__(self) -> None:
        for name in ("a", "b", "c"):
            value = getattr(self, name)
            if isinstance(value, complex):
                raise DomainError(f"{name} must be real, got {value!r}")
            if not np.isfinite(value):
                raise DomainError(f"{name} must be finite, got {value!r}")

    def negated(self) -> "QuadCoeffs":
        return QuadCoeffs(-self.a, -self.b, -self.c)


class YBranch(str, Enum):
    sum_all = "SumAll"
    plus_parabola = "PlusParabola"
    minus_parabola = "MinusParabola"
    plus_parabola_neg = "PlusParabolaNeg"
    r1 = "R1"
    r2 = "R2"
    r3 = "R3"


@dataclass(frozen=True)
class DiskAutomorphism:
    """z -> T_a(rotation * z)."""

    a: complex
    rotation: complex = 1.0 + 0.0j


@dataclass(frozen=True)
class SchurPair:
    sigma0: complex
    sigma1: complex


@dataclass(frozen=True)
class CoeffPair:
    c0: complex
    c1: complex


class BoundaryClass(str, Enum):
    interior = "Interior"
    automorphism = "Automorphism"
    blaschke2 = "Blaschke2"


@dataclass(frozen=True)
class ConcaveCoeffs:
    a2: complex
    a3: complex
    higher: Optional[Tuple[complex, ...]] = None


@dataclass(frozen=True)
class Thresholds:
    P: float
    mu1: float
    mu1prime: float
    mu0minus: float
    mu0plus: float
    mu2: float
    mu4minus: float
    mu4plus: float
    muA: float
    muB: float
    muF: float
    muG: float
    P_star: float
    P_2: float
    p_star: float
    p_2: float
    mu3minus: Optional[float] = None
    mu3plus: Optional[float] = None

    @property
    def mu4(self) -> float:
        return self.mu4plus

    @property
    def has_mu3(self) -> bool:
        return self.mu3minus is not None


@dataclass(frozen=True)
class ThresholdRow:
    P: float
    mu1: float
    mu2: float
    mu3m: Optional[float]
    mu3p: Optional[float]
    mu4: float


class PhiBranch(str, Enum):
    linear_low = "LinearLow"
    rational_mid = "RationalMid"
    psi_linear = "PsiLinear"
    psi_sqrt = "PsiSqrt"
    linear_high = "LinearHigh"


class ProofRegion(str, Enum):
    d1 = "D1"
    d2 = "D2"
    d3 = "D3"
    outside = "outside"


class RegionTag(str, Enum):
    omega_boundary = "OmegaBoundary"
    wp_cloud = "WpCloud"
    cardioid = "Cardioid"
    unit_circle = "UnitCircle"


@dataclass(frozen=True)
class RegionSample:
    points: np.ndarray
    tag: RegionTag

    def __len__(self) -> int:
        return int(self.points.shape[0])


@dataclass(frozen=True)
class HQuad:
    """h(sigma) = 1 - t sigma + sigma^2 with t = P^2 - 2."""

    t: float

    def __post_init__(self) -> None:
        if not self.t > 2.0:
            raise DomainError(f"t must exceed 2, got {self.t!r}")

    def __call__(self, sigma):
        return 1.0 - self.t * sigma + sigma * sigma


@dataclass
class SuiteReport:
    name: str
    samples: int
    max_deviation: float
    tolerance: float
    passed: bool
    details: dict = field(default_factory=dict)


# Query schemas shared by the CLI and the HTTP surface


class RegionSet(str, Enum):
    omega = "omega"
    wp = "wp"
    cardioid = "cardioid"
    circle = "circle"


class VerifySuite(str, Enum):
    quadmax = "quadmax"
    phi = "phi"
    rep = "rep"
    bodies = "bodies"
    regions = "regions"
    all = "all"


class PoleQuery(BaseModel):
    """Exactly one of ``P`` (> 2) or ``p`` (in (0, 1)) selects the pole."""

    model_config = ConfigDict(extra="forbid", populate_by_name=True)

    P: Optional[float] = Field(default=None, gt=2.0)
    p: Optional[float] = Field(default=None, gt=0.0, lt=1.0)

    @model_validator(mode="after")
    def _exactly_one_pole(self):
        if (self.P is None) == (self.p is None):
            raise ValueError("exactly one of --P / --p is required")
        return self

    def pole(self) -> PoleParam:
        from .numeric_core import p_from_P, pole_from_p

        return pole_from_p(self.p) if self.p is not None else p_from_P(self.P)


class ThresholdsQuery(PoleQuery):
    pass


class PhiQuery(PoleQuery):
    model_config = ConfigDict(json_schema_extra={"example": {"p": 0.5, "mu": 1.0}})

    mu: float
    oracle: bool = False
    grid: int = Field(default=401, ge=101)


class ScanQuery(BaseModel):
    model_config = ConfigDict(extra="forbid")

    P_min: float = Field(gt=2.0)
    P_max: float
    step: float = Field(gt=0.0)
    out: Optional[str] = None

    @model_validator(mode="after")
    def _ordered(self):
        if not self.P_max > self.P_min:
            raise ValueError("--P-max must exceed --P-min")
        return self


class RegionQuery(BaseModel):
    model_config = ConfigDict(extra="forbid", populate_by_name=True)

    p: Optional[float] = Field(default=None, gt=0.0, lt=1.0)
    kind: RegionSet = Field(alias="set")
    samples: int = Field(default=512, ge=16)
    out: Optional[str] = None
    svg: Optional[str] = None

    @model_validator(mode="after")
    def _pole_needed(self):
        if self.kind in (RegionSet.omega, RegionSet.wp) and self.p is None:
            raise ValueError(f"--p is required for --set {self.kind.value}")
        return self


class ExtremalQuery(BaseModel):
    model_config = ConfigDict(extra="forbid")

    p: float = Field(gt=0.0, lt=1.0)
    zeta_re: float = 0.0
    zeta_im: float = 0.0
    order: int = Field(default=8, ge=3, le=512)

    @model_validator(mode="after")
    def _closed_disk(self):
        if abs(self.zeta) > 1.0 + 1e-12:
            raise ValueError("--zeta must lie in the closed unit disk")
        return self

    @property
    def zeta(self) -> complex:
        return complex(self.zeta_re, self.zeta_im)


class VerifyQuery(BaseModel):
    model_config = ConfigDict(extra="forbid")

    suite: VerifySuite
    samples: int = Field(default=1000, ge=1)
    seed: int = Field(default=42, ge=0, lt=2**64)
    json_output: bool = False
