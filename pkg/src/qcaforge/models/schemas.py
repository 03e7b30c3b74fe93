from typing import Dict, List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from ..core.constants import CELL_SIZE_NM, DOT_OFFSET_NM, GRID_PITCH_NM


class SimConfig(BaseModel):
    """Physical and numerical settings of the bistable engine."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    epsilon_r: float = Field(12.9, gt=0)
    gamma_high: float = Field(9.8e-22, gt=0)  # J
    gamma_low: float = Field(3.8e-23, gt=0)  # J
    radius_of_effect: float = 65.0  # nm
    convergence_tolerance: float = Field(1e-3, gt=0)
    max_iterations_per_sample: int = Field(100, gt=0)
    samples_per_cycle: int = 128
    cell_size: float = Field(CELL_SIZE_NM, gt=0)  # nm
    dot_offset: float = Field(DOT_OFFSET_NM, gt=0)  # nm

    @field_validator("samples_per_cycle")
    @classmethod
    def _check_samples(cls, value: int) -> int:
        if value < 8 or value % 4:
            raise ValueError("must be at least 8 and divisible by 4")
        return value

    @field_validator("radius_of_effect")
    @classmethod
    def _check_radius(cls, value: float) -> float:
        if value < GRID_PITCH_NM:
            raise ValueError(f"must be at least the {GRID_PITCH_NM} nm grid pitch")
        return value

    @model_validator(mode="after")
    def _check_gammas(self):
        if self.gamma_low >= self.gamma_high:
            raise ValueError("gamma_low must be below gamma_high")
        if 2 * self.dot_offset >= self.cell_size:
            raise ValueError("dots must lie inside the cell")
        return self

    @property
    def quarter(self) -> int:
        return self.samples_per_cycle // 4


class MetricsReport(BaseModel):
    """Static complexity figures of a layout, in the shape of the comparison tables."""

    model_config = ConfigDict(frozen=True)

    cell_count: int = Field(ge=0)
    area_um2: float = Field(ge=0)
    area_um2_rounded: float = Field(ge=0)
    clock_phases: Optional[int] = Field(default=None, gt=0)
    has_set_reset: bool = False
    # "in->out" -> phases, None when disconnected
    latencies: Dict[str, Optional[int]] = Field(default_factory=dict)

    @model_validator(mode="after")
    def _check_area(self):
        if (self.area_um2 > 0) != (self.cell_count > 0):
            raise ValueError("area must be positive exactly when cells exist")
        return self

    @property
    def disconnected(self) -> List[str]:
        return [pair for pair, phases in self.latencies.items() if phases is None]

    def differences(self, other: "MetricsReport") -> List[Tuple[str, object, object]]:
        """(column, this value, other value) for every table column where two reports differ."""
        columns = (
            ("cell_count", self.cell_count, other.cell_count),
            ("area_um2", self.area_um2_rounded, other.area_um2_rounded),
            ("clock_phases", self.clock_phases, other.clock_phases),
            ("has_set_reset", self.has_set_reset, other.has_set_reset),
        )
        return [column for column in columns if column[1] != column[2]]


class CliConfig(BaseModel):
    """Validated view of one CLI invocation: subcommand plus SimConfig overrides."""

    model_config = ConfigDict(extra="forbid")

    subcommand: str
    overrides: Dict[str, Optional[float]] = Field(default_factory=dict)
    threads: Optional[int] = Field(default=None, ge=0)
    config_path: Optional[str] = None
    log_level: Optional[str] = None

    @field_validator("overrides")
    @classmethod
    def _known_fields(cls, value: Dict[str, Optional[float]]):
        unknown = sorted(set(value) - set(SimConfig.model_fields))
        if unknown:
            raise ValueError(f"unknown simulation settings: {', '.join(unknown)}")
        return value
