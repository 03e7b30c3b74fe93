from dataclasses import dataclass
from pathlib import Path
from typing import Dict, List, Union

import numpy as np
import pandas as pd

from ..core.constants import NUM_CLOCK_ZONES
from ..models.layout import Layout
from .clocking import ClockSchedule

CLOCK_COLUMNS = [f"clock{z}" for z in range(NUM_CLOCK_ZONES)]
FLOAT_FORMAT = "%.6g"


@dataclass
class Trace:
    """Per-sample record of a simulation run."""
    layout: Layout
    samples_per_cycle: int
    hold_cycles: int
    vector_index: np.ndarray  # (S,) logical vector driving each sample
    gammas: np.ndarray  # (S, 4)
    polarizations: np.ndarray  # (S, N)
    converged: np.ndarray  # (S,) bool
    iterations: np.ndarray  # (S,) sweeps used

    @property
    def sample_count(self) -> int:
        return len(self.vector_index)

    @property
    def vector_count(self) -> int:
        return self.sample_count // (self.samples_per_cycle * self.hold_cycles) if self.sample_count else 0

    @property
    def nonconverged_count(self) -> int:
        return int(np.count_nonzero(~self.converged))

    def column(self, label: str) -> np.ndarray:
        return self.polarizations[:, self.layout.index_of(label)]

    def polarizations_at(self, sample: int) -> Dict[str, float]:
        names = self.layout.column_names()
        return dict(zip(names, self.polarizations[sample].tolist()))

    def decision_sample(self, vector: int, zone: int) -> int:
        """Final hold sample of `zone` inside the last cycle that holds `vector`."""
        offset = ClockSchedule(self.samples_per_cycle).hold_sample(zone)
        last_cycle = vector * self.hold_cycles + self.hold_cycles - 1
        return last_cycle * self.samples_per_cycle + offset

    def to_frame(self) -> pd.DataFrame:
        frame = pd.DataFrame({
            "sample": np.arange(self.sample_count),
            "vector": self.vector_index,
        })
        for z, name in enumerate(CLOCK_COLUMNS):
            frame[name] = self.gammas[:, z]
        for i, name in enumerate(self.layout.column_names()):
            frame[name] = self.polarizations[:, i]
        return frame

    def to_csv(self) -> str:
        return self.to_frame().to_csv(index=False, float_format=FLOAT_FORMAT, lineterminator="\n")

    def write_csv(self, path: Union[str, Path]) -> None:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w", newline="") as f:
            f.write(self.to_csv())


def read_trace(path: Union[str, Path]) -> pd.DataFrame:
    return pd.read_csv(path)


def sample_polarizations(frame: pd.DataFrame, sample: int, layout: Layout) -> List[float]:
    """Per-cell polarizations of one recorded sample, in layout order."""
    rows = frame.loc[frame["sample"] == sample]
    if rows.empty:
        raise IndexError(sample)
    row = rows.iloc[0]
    return [float(row[name]) for name in layout.column_names()]
