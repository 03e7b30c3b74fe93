"""Pure software models used as oracles for random-stream verification."""
from typing import Callable, Dict, List, Mapping, Optional, Sequence

Vector = Mapping[str, int]
Model = Callable[[Sequence[Vector]], List[Optional[int]]]


def combinational(function: Callable[[Vector], int]) -> Model:
    def model(vectors: Sequence[Vector]) -> List[Optional[int]]:
        return [int(function(v)) for v in vectors]
    return model


def latch_model(data: str = "D", enable: str = "Clk") -> Model:
    """Transparent while enable = 1; None until the first transparent vector."""
    def model(vectors: Sequence[Vector]) -> List[Optional[int]]:
        state: Optional[int] = None
        outputs = []
        for v in vectors:
            if v[enable]:
                state = v[data]
            outputs.append(state)
        return outputs
    return model


def _edge_states(vectors: Sequence[Vector], edge: str, data: str, clock: str) -> List[Optional[int]]:
    rising = edge == "positive"
    state: Optional[int] = None
    previous: Optional[int] = None
    states = []
    for v in vectors:
        clk = v[clock]
        if previous is not None and previous != clk and clk == int(rising):
            state = v[data]
        states.append(state)
        previous = clk
    return states


def flipflop_model(edge: str = "positive", data: str = "D", clock: str = "Clk") -> Model:
    """Captures D on the chosen clock transition between consecutive vectors."""
    def model(vectors: Sequence[Vector]) -> List[Optional[int]]:
        return _edge_states(vectors, edge, data, clock)
    return model


def set_reset_flipflop_model(edge: str = "positive") -> Model:
    """MAJ(P, S, Q) over an edge-triggered flip-flop."""
    def model(vectors: Sequence[Vector]) -> List[Optional[int]]:
        outputs = []
        for v, q in zip(vectors, _edge_states(vectors, edge, "D", "Clk")):
            outputs.append(v["P"] if v["P"] == v["S"] else q)
        return outputs
    return model


MODELS: Dict[str, Model] = {
    "majority": combinational(lambda v: v["A"] + v["B"] + v["C"] >= 2),
    "and": combinational(lambda v: v["A"] and v["B"]),
    "or": combinational(lambda v: v["A"] or v["B"]),
    "not": combinational(lambda v: 1 - v["In"]),
    "identity": combinational(lambda v: v["In"]),
    "mux": combinational(lambda v: v["B"] if v["S"] else v["A"]),
    "latch": latch_model(),
    "dff_positive": flipflop_model("positive"),
    "dff_negative": flipflop_model("negative"),
    "dff_sr": set_reset_flipflop_model(),
    "dff_sr_negative": set_reset_flipflop_model("negative"),
}


def get_model(name: str) -> Model:
    try:
        return MODELS[name]
    except KeyError:
        raise KeyError(f"no reference model named '{name}'") from None
