import logging
import os
from dataclasses import replace
from pathlib import Path
from typing import List, Mapping, Optional, Tuple, Union

from ..core.constants import DEFAULT_CIRCUITS_DIR, DEFAULT_CONFIG_PATH, LAYOUT_SUFFIX
from ..core.errors import LayoutError, SimulationError, TruthTableError
from ..core.settings import ConfigLoader, build_sim_config, get_config, resolve_threads
from ..engine.simulator import DEFAULT_PARALLEL_MIN_CELLS, Simulator
from ..engine.trace import Trace, read_trace
from ..geometry.metrics import compute_metrics
from ..models.layout import Layout
from ..models.schemas import MetricsReport, SimConfig
from ..persistence.layout_file import load_layout
from ..persistence.vector_file import exhaustive_vectors, load_vectors
from ..reporting.svg import render, render_sample, write_svg
from ..stdcells.catalog import bundled_circuits, circuit_names, get_circuit
from ..stdcells.circuit import CircuitHandle
from ..verify.checker import DEFAULT_WARMUP_VECTORS, CircuitVerifier, VerificationReport
from ..verify.comparison import ComparisonReport, comparison_report
from ..verify.decode import DEFAULT_THRESHOLD
from ..verify.truth_table import load_table

logger = logging.getLogger(__name__)

# Project root = 3 levels above this file (src/qcaforge/orchestration/service.py)
_PROJECT_ROOT = Path(__file__).resolve().parents[3]

DEFAULT_HOLD_CYCLES = 2

PathLike = Union[str, Path]


class QcaForgeService:
    """Runs the CLI operations against one resolved configuration."""

    def __init__(
        self,
        config_path: Optional[PathLike] = None,
        overrides: Optional[Mapping[str, Optional[float]]] = None,
        threads: Optional[int] = None,
    ):
        self.logger = logging.getLogger(__name__)
        self.config = self._config_loader(config_path)

        self.sim_config: SimConfig = build_sim_config(self.config.section("simulation"), overrides)
        engine = self.config.section("engine")
        if threads is not None:
            self.workers = threads or os.cpu_count() or 1
        else:
            self.workers = resolve_threads(engine.get("threads", 0))
        self.parallel_min_cells = int(engine.get("parallel_min_cells", DEFAULT_PARALLEL_MIN_CELLS))

        verification = self.config.section("verification")
        self.threshold = float(verification.get("decode_threshold", DEFAULT_THRESHOLD))
        self.warmup_vectors = int(verification.get("warmup_vectors", DEFAULT_WARMUP_VECTORS))

        paths = self.config.section("paths")
        self.circuits_dir = Path(paths.get("circuits_dir", DEFAULT_CIRCUITS_DIR))
        self.logger.debug(
            f"Engine: {self.workers} worker(s), samples_per_cycle={self.sim_config.samples_per_cycle}"
        )

    def _config_loader(self, config_path: Optional[PathLike]) -> ConfigLoader:
        """An explicit path must exist; otherwise the default path, then the project copy, then built-in defaults."""
        if config_path is not None:
            loader = ConfigLoader(config_path)
            loader.load()
            return loader
        for loader in (get_config(), ConfigLoader(_PROJECT_ROOT / DEFAULT_CONFIG_PATH)):
            try:
                loader.config
                return loader
            except FileNotFoundError:
                continue
        logger.info("No config file found; using built-in defaults")
        return ConfigLoader.from_mapping({})

    def _circuit_for(self, layout: Layout, hold_cycles: Optional[int]) -> CircuitHandle:
        """Wrap a loaded layout; a bundled circuit of the same name lends its hold cycles."""
        default_hold = DEFAULT_HOLD_CYCLES
        if layout.name in circuit_names():
            default_hold = get_circuit(layout.name).hold_cycles
        return CircuitHandle(name=layout.name, layout=layout, hold_cycles=hold_cycles or default_hold)

    def _verifier(self, circuit: CircuitHandle, hold_cycles: Optional[int] = None) -> CircuitVerifier:
        return CircuitVerifier(
            circuit,
            self.sim_config,
            workers=self.workers,
            hold_cycles=hold_cycles,
            warmup_vectors=self.warmup_vectors,
            threshold=self.threshold,
            parallel_min_cells=self.parallel_min_cells,
        )

    # ── simulate ────────────────────────────────────────────────────────────

    def simulate_file(
        self,
        layout_path: PathLike,
        out_csv: PathLike,
        vectors_path: Optional[PathLike] = None,
        exhaustive: bool = False,
        hold_cycles: int = 1,
    ) -> Trace:
        layout = load_layout(layout_path)
        if exhaustive:
            vectors = exhaustive_vectors(layout.inputs)
        elif vectors_path is not None:
            _, vectors = load_vectors(vectors_path, layout.inputs)
        else:
            raise SimulationError("give a vector file or ask for exhaustive vectors")
        if not vectors:
            raise SimulationError("no vectors to simulate")

        simulator = Simulator(layout, self.sim_config, self.workers, self.parallel_min_cells)
        trace = simulator.run(vectors, hold_cycles)
        trace.write_csv(out_csv)
        self.logger.info(f"Wrote {trace.sample_count} samples for {len(vectors)} vectors to {out_csv}")
        return trace

    # ── verify ──────────────────────────────────────────────────────────────

    def verify_files(
        self,
        layout_path: PathLike,
        table_path: PathLike,
        hold_cycles: Optional[int] = None,
    ) -> VerificationReport:
        layout = load_layout(layout_path)
        table = load_table(table_path)
        circuit = self._circuit_for(layout, hold_cycles)
        return self._verifier(circuit).check_table(table)

    # ── metrics ─────────────────────────────────────────────────────────────

    def metrics(self, layout_path: PathLike) -> Tuple[Layout, MetricsReport]:
        layout = load_layout(layout_path)
        report = compute_metrics(layout, self.sim_config)
        for pair in report.disconnected:
            self.logger.warning(f"{layout.name}: {pair} is disconnected")
        return layout, report

    # ── render ──────────────────────────────────────────────────────────────

    def render(
        self,
        layout_path: PathLike,
        out_svg: PathLike,
        trace_path: Optional[PathLike] = None,
        sample: Optional[int] = None,
    ) -> str:
        layout = load_layout(layout_path)
        if trace_path is not None:
            svg = render_sample(layout, read_trace(trace_path), sample or 0, config=self.sim_config)
        else:
            svg = render(layout, config=self.sim_config)
        write_svg(svg, out_svg)
        self.logger.info(f"Rendered {len(layout)} cells of '{layout.name}' to {out_svg}")
        return svg

    # ── compare ─────────────────────────────────────────────────────────────

    def _resolve_circuits_dir(self, circuits_dir: Optional[PathLike]) -> Optional[Path]:
        if circuits_dir is not None:
            return Path(circuits_dir)
        if self.circuits_dir.is_dir():
            return self.circuits_dir
        fallback = _PROJECT_ROOT / DEFAULT_CIRCUITS_DIR
        return fallback if fallback.is_dir() else None

    def compare(self, circuits_dir: Optional[PathLike] = None) -> ComparisonReport:
        """
        Metrics of the bundled circuits as stored on disk, against their baselines.

        A circuit whose file is missing falls back to its generator; a file that no
        longer forms a valid circuit is reported as a deviation.
        """
        directory = self._resolve_circuits_dir(circuits_dir)
        circuits: List[CircuitHandle] = []
        broken: List[str] = []

        for circuit in bundled_circuits():
            path = directory / f"{circuit.name}{LAYOUT_SUFFIX}" if directory else None
            if path is None or not path.exists():
                self.logger.debug(f"{circuit.name}: no stored layout, using the generator")
                circuits.append(circuit)
                continue
            layout = load_layout(path)
            try:
                circuits.append(replace(circuit, layout=replace(layout, name=circuit.layout.name)))
            except (LayoutError, TruthTableError) as e:
                broken.append(f"{circuit.name}: {e}")

        report = comparison_report(circuits, config=self.sim_config)
        for line in broken:
            self.logger.warning(f"Metric deviation: {line}")
        report.deviations = broken + report.deviations
        return report
