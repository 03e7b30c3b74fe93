from dataclasses import dataclass
from enum import Enum

import numpy as np

from ..core.constants import NUM_CLOCK_ZONES
from ..models.schemas import SimConfig


class ClockPhase(str, Enum):
    SWITCH = "switch"
    HOLD = "hold"
    RELEASE = "release"
    RELAX = "relax"


_PHASES = (ClockPhase.SWITCH, ClockPhase.HOLD, ClockPhase.RELEASE, ClockPhase.RELAX)


@dataclass(frozen=True)
class ClockSchedule:
    """
    Trapezoidal four-phase clock.

    Zone 0 ramps gamma_high -> gamma_low (switch), stays low (hold), ramps back
    (release) and stays high (relax), one quarter cycle each. Zone z lags zone 0 by
    z quarters.
    """
    samples_per_cycle: int

    def __post_init__(self):
        if self.samples_per_cycle < 8 or self.samples_per_cycle % 4:
            raise ValueError("samples_per_cycle must be at least 8 and divisible by 4")

    @property
    def quarter(self) -> int:
        return self.samples_per_cycle // 4

    def _position(self, zone: int, sample: int):
        local = (sample - zone * self.quarter) % self.samples_per_cycle
        return divmod(local, self.quarter)

    def phase(self, zone: int, sample: int) -> ClockPhase:
        return _PHASES[self._position(zone, sample)[0]]

    def gamma(self, zone: int, sample: int, config: SimConfig) -> float:
        k, step = self._position(zone, sample)
        fraction = step / self.quarter
        high, low = config.gamma_high, config.gamma_low
        if k == 0:
            return high + (low - high) * fraction
        if k == 1:
            return low
        if k == 2:
            return low + (high - low) * fraction
        return high

    def gammas(self, sample: int, config: SimConfig) -> np.ndarray:
        return np.array([self.gamma(z, sample, config) for z in range(NUM_CLOCK_ZONES)])

    def hold_sample(self, zone: int) -> int:
        """Last sample of the zone's hold quarter, as an offset into the cycle."""
        return (zone * self.quarter + 2 * self.quarter - 1) % self.samples_per_cycle


def clock_gamma(zone: int, sample: int, schedule: ClockSchedule, config: SimConfig) -> float:
    return schedule.gamma(zone, sample, config)
