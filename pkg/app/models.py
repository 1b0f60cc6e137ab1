from enum import Enum
from typing import Literal, Optional, List, Tuple

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

POSITIVITY_TOLERANCE = 1e-12
FACTOR_TOLERANCE = 1e-9

SweepParameter = Literal["lambda", "D", "N", "gamma", "delta_coupling", "g"]


class _Frozen(BaseModel):
    model_config = ConfigDict(frozen=True, allow_inf_nan=False, populate_by_name=True, extra="forbid")


# ============================================
# Environment (spin chain)
# ============================================

class AngleConvention(str, Enum):
    PAPER_LITERAL = "PaperLiteral"
    QUADRANT_AWARE = "QuadrantAware"


class ChainParams(_Frozen):
    """XY chain with DM interaction and its coupling to the two qubits.

    Defaults: lambda=1, gamma=1, delta=0, g=0.05, N=600, D=0 (critical field, weak coupling).
    """
    N: int = Field(600, ge=3)
    gamma: float = 1.0
    lambda_: float = Field(1.0, alias="lambda")
    D: float = 0.0
    g: float = 0.05
    delta_coupling: float = 0.0
    angle_convention: AngleConvention = AngleConvention.PAPER_LITERAL

    def with_value(self, parameter: str, value: float) -> "ChainParams":
        """Copy with one sweep parameter replaced, re-validated."""
        data = self.model_dump(by_alias=True)
        data[parameter] = value
        return ChainParams.model_validate(data)


class EffectiveFields(_Frozen):
    lambda_mu: Tuple[float, float, float, float]

    def of(self, mu: int) -> float:
        """lambda_mu for mu in 1..4"""
        return self.lambda_mu[mu - 1]


class DecoherencePair(_Frozen):
    t: float = Field(ge=0.0)
    f14: float
    f23: float

    @field_validator("f14", "f23")
    @classmethod
    def _modulus_range(cls, v: float) -> float:
        if v < 0.0 or v > 1.0 + FACTOR_TOLERANCE:
            raise ValueError(f"decoherence factor {v!r} outside [0, 1]")
        return v


# ============================================
# Two-qubit states
# ============================================

class BellDiagonalState(_Frozen):
    r1: float = 1.0
    r2: float = -1.0
    r3: float = 1.0

    def positivity_margins(self) -> Tuple[float, float, float, float]:
        r1, r2, r3 = self.r1, self.r2, self.r3
        return (
            1 - r1 - r2 - r3,
            1 - r1 + r2 + r3,
            1 + r1 - r2 + r3,
            1 + r1 + r2 - r3,
        )

    def is_physical(self) -> bool:
        return min(self.positivity_margins()) >= -POSITIVITY_TOLERANCE

    @model_validator(mode="after")
    def _positive(self) -> "BellDiagonalState":
        if not self.is_physical():
            raise ValueError(
                f"(r1, r2, r3)=({self.r1}, {self.r2}, {self.r3}) is not a density matrix"
            )
        return self


class XState(_Frozen):
    """rho_AB(t) in the basis |00>, |01>, |10>, |11>; coherences carry the 1/4 prefactor."""
    d1: float
    d2: float
    d3: float
    d4: float
    gamma_c: float
    omega_c: float

    @property
    def r3(self) -> float:
        return 4.0 * self.d1 - 1.0

    @model_validator(mode="after")
    def _density_matrix(self) -> "XState":
        tol = POSITIVITY_TOLERANCE
        if abs(self.d1 + self.d2 + self.d3 + self.d4 - 1.0) > tol:
            raise ValueError("X-state trace differs from 1")
        if min(self.d1, self.d2, self.d3, self.d4) < -tol:
            raise ValueError("X-state has a negative population")
        if abs(self.gamma_c) / 4 > max(self.d1 * self.d4, 0.0) ** 0.5 + tol:
            raise ValueError("outer coherence |Gamma| exceeds the populations")
        if abs(self.omega_c) / 4 > max(self.d2 * self.d3, 0.0) ** 0.5 + tol:
            raise ValueError("inner coherence |Omega| exceeds the populations")
        return self


# ============================================
# Measurements and bounds
# ============================================

class MeasurementSetting(_Frozen):
    """Alice's two observables, each a Bloch axis n with observable n . sigma.

    The complementarity c is derived from the eigenvectors, see
    information_service.complementarity.
    """
    q_label: str = "sigma_x"
    q_axis: Tuple[float, float, float] = (1.0, 0.0, 0.0)
    r_label: str = "sigma_z"
    r_axis: Tuple[float, float, float] = (0.0, 0.0, 1.0)

    @field_validator("q_axis", "r_axis")
    @classmethod
    def _nonzero(cls, v: Tuple[float, float, float]) -> Tuple[float, float, float]:
        if sum(c * c for c in v) == 0.0:
            raise ValueError("observable axis must be nonzero")
        return v


class UncertaintyReport(_Frozen):
    t: float
    s_cond: float
    holevo_gap: float
    eub_adabi: float
    eub_berta: float
    lhs: float


# ============================================
# Verification
# ============================================

class OracleReport(_Frozen):
    case_id: str
    quantity: str
    closed_form: float
    oracle: float
    abs_diff: float
    tolerance: float
    passed: bool = Field(alias="pass")


class VerificationReport(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    seed: int
    cases: int
    tolerance: float
    identity_tolerance: float
    passed: bool = Field(alias="pass")
    failures: int
    entries: List[OracleReport] = []


# ============================================
# Scenarios (CLI requests / responses)
# ============================================

class SweepSpec(_Frozen):
    parameter: SweepParameter
    values: List[float] = Field(min_length=1)

    @field_validator("values")
    @classmethod
    def _distinct(cls, v: List[float]) -> List[float]:
        if len(set(v)) != len(v):
            raise ValueError("sweep values must be distinct")
        return v


class ScenarioConfig(_Frozen):
    chain: ChainParams = ChainParams()
    state: BellDiagonalState = BellDiagonalState()
    t_start: float = Field(0.0, ge=0.0)
    t_end: float = Field(30.0, ge=0.0)
    t_steps: int = Field(600, ge=2)
    sweep: Optional[SweepSpec] = None

    @model_validator(mode="after")
    def _grid_and_sweep(self) -> "ScenarioConfig":
        if not self.t_start < self.t_end:
            raise ValueError("t_start must be smaller than t_end")
        if self.sweep is not None:
            for value in self.sweep.values:
                if self.sweep.parameter == "N" and not float(value).is_integer():
                    raise ValueError(f"sweep value {value!r} for N is not an integer")
                # raises on N < 3 and friends
                self.chain.with_value(self.sweep.parameter, value)
        return self

    def chain_for(self, value: float) -> ChainParams:
        if self.sweep is None:
            return self.chain
        if self.sweep.parameter == "N":
            value = int(value)
        return self.chain.with_value(self.sweep.parameter, value)


class TraceRow(_Frozen):
    t: float
    f14: float
    f23: float
    gamma_c: float
    omega_c: float
    s_cond: float
    holevo_gap: float
    eub_adabi: float
    eub_berta: float
    lhs: float


class SweepSummary(BaseModel):
    parameter: SweepParameter
    values: List[float]
    mean_eub_adabi: List[float]
