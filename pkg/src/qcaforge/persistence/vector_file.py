"""Input vector files (`qcaforge-vectors v1`) and exhaustive vector generation."""
import itertools
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple, Union

from ..core.constants import MAX_EXHAUSTIVE_INPUTS, VECTORS_HEADER
from ..core.errors import SimulationError, VectorParseError

Vector = Dict[str, int]


def parse_vectors(text: str, source: str = "<text>",
                  known_labels: Optional[Sequence[str]] = None) -> Tuple[Tuple[str, ...], List[Vector]]:
    labels: Optional[Tuple[str, ...]] = None
    vectors: List[Vector] = []
    seen_header = False

    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if not seen_header:
            if line != VECTORS_HEADER:
                raise VectorParseError(f"expected header '{VECTORS_HEADER}'", source, line_no)
            seen_header = True
            continue
        tokens = line.split()
        if tokens[0] == "inputs":
            labels = tuple(tokens[1:])
            if known_labels is not None:
                unknown = [label for label in labels if label not in known_labels]
                if unknown:
                    raise VectorParseError(f"unknown input label(s) {', '.join(unknown)}", source, line_no)
            continue
        if labels is None:
            raise VectorParseError("vector rows must follow an inputs line", source, line_no)
        if len(tokens) != len(labels):
            raise VectorParseError(f"row has {len(tokens)} values for {len(labels)} inputs", source, line_no)
        if any(t not in ("0", "1") for t in tokens):
            raise VectorParseError("vector values must be 0 or 1", source, line_no)
        vectors.append({label: int(t) for label, t in zip(labels, tokens)})

    if not seen_header:
        raise VectorParseError(f"empty file, expected header '{VECTORS_HEADER}'", source, 1)
    return labels or (), vectors


def load_vectors(path: Union[str, Path], known_labels: Optional[Sequence[str]] = None):
    path = Path(path)
    with open(path, "r") as f:
        return parse_vectors(f.read(), str(path), known_labels)


def exhaustive_vectors(labels: Sequence[str], limit: int = MAX_EXHAUSTIVE_INPUTS) -> List[Vector]:
    """All 2^n assignments, first label as the most significant bit."""
    if len(labels) > limit:
        raise SimulationError(f"too many inputs for --exhaustive: {len(labels)} > {limit}")
    return [dict(zip(labels, bits)) for bits in itertools.product((0, 1), repeat=len(labels))]
