"""Fleet comparison with Min-Max normalised capability indexes."""
from __future__ import annotations

import json
from dataclasses import asdict, dataclass, fields

import numpy as np

# published footprint reduction, kept for side-by-side reporting
REPORTED_FOOTPRINT_REDUCTION = 79.0

FLIGHT_METRICS = ("t_f", "p", "v_f")
GROUND_METRICS = ("m_d", "h_o", "v_d")
DURATION_METRICS = ("m_d", "t_f")
RADAR_CSV_HEADER = ("name", "f_e", "g_e", "d_e", "t_s_norm")


@dataclass(frozen=True)
class FleetRecord:
    name: str
    t_f: float  # min, hover duration
    p: float  # kg, payload
    v_f: float  # m/s
    m_d: float  # km, driving mileage
    h_o: float  # mm, surmountable obstacle height
    v_d: float  # m/s
    S_land: float  # m^2, projected area in flight configuration
    S_air: float  # m^2, projected area in drive configuration
    T_s: float  # s, mode switch time
    G: float  # kg, weight

    def __post_init__(self):
        for f in fields(self)[1:]:
            if getattr(self, f.name) < 0:
                raise ValueError(f"{self.name}: {f.name} must be >= 0")

    @classmethod
    def from_dict(cls, d: dict) -> "FleetRecord":
        names = [f.name for f in fields(cls)]
        missing = [n for n in names if n not in d]
        if missing:
            raise ValueError(f"fleet record missing fields {missing}")
        return cls(str(d["name"]), *(float(d[n]) for n in names[1:]))


@dataclass(frozen=True)
class WeightSet:
    t_f: float = 1.0
    p: float = 1.0
    v_f: float = 1.0
    m_d: float = 1.0
    h_o: float = 1.0
    v_d: float = 1.0
    w_s: float = 1.0  # area penalty
    w_G: float = 1.0  # mass penalty

    def __post_init__(self):
        if any(getattr(self, f.name) < 0 for f in fields(self)):
            raise ValueError("weights must be >= 0")


def normalize(x: float, x_min: float, x_max: float) -> float:
    """Min-Max normalisation to [0, 1]; a constant metric maps to 0.5."""
    if not x_min <= x <= x_max:
        raise ValueError(f"{x} outside [{x_min}, {x_max}]")
    if x_max == x_min:
        return 0.5
    return (x - x_min) / (x_max - x_min)


def _column(fleet, metric) -> np.ndarray:
    if len(fleet) < 2:
        raise ValueError("normalisation needs at least 2 fleet records")
    vals = [float(getattr(r, metric)) for r in fleet]
    lo, hi = min(vals), max(vals)
    return np.array([normalize(v, lo, hi) for v in vals])


def _index(fleet, weights: WeightSet, metrics, penalty_metric, penalty_weight) -> np.ndarray:
    total = sum(getattr(weights, m) * _column(fleet, m) for m in metrics)
    return total - penalty_weight * _column(fleet, penalty_metric)


def flight_index(fleet, weights: WeightSet = WeightSet()) -> np.ndarray:
    return _index(fleet, weights, FLIGHT_METRICS, "S_land", weights.w_s)


def ground_index(fleet, weights: WeightSet = WeightSet()) -> np.ndarray:
    return _index(fleet, weights, GROUND_METRICS, "S_air", weights.w_s)


def duration_index(fleet, weights: WeightSet = WeightSet()) -> np.ndarray:
    return _index(fleet, weights, DURATION_METRICS, "G", weights.w_G)


def footprint_reduction(unfolded, folded) -> float:
    """Percent reduction of the rectangular plan-view area after folding."""
    (uw, ud), (fw, fd) = unfolded, folded
    if min(uw, ud, fw, fd) <= 0:
        raise ValueError("dimensions must be positive")
    return 100.0 * (1.0 - (fw * fd) / (uw * ud))


def energy_saving(drive_power: float, fly_power: float) -> float:
    """Percent power saved by driving instead of flying."""
    if not fly_power > 0:
        raise ValueError("fly_power must be positive")
    return 100.0 * (fly_power - drive_power) / fly_power


@dataclass
class FleetRow:
    name: str
    f_e: float
    g_e: float
    d_e: float
    t_s: float
    t_s_norm: float


@dataclass
class FleetReport:
    rows: list[FleetRow]
    rankings: dict[str, list[str]]
    weights: WeightSet

    def radar_rows(self) -> list[tuple]:
        return [(r.name, r.f_e, r.g_e, r.d_e, r.t_s_norm) for r in self.rows]

    def to_dict(self) -> dict:
        return {"rows": [asdict(r) for r in self.rows], "rankings": self.rankings,
                "weights": asdict(self.weights)}


def _ranking(names, values) -> list[str]:
    order = sorted(range(len(names)), key=lambda i: (-values[i], i))
    return [names[i] for i in order]


def evaluate_fleet(fleet, weights: WeightSet = WeightSet()) -> FleetReport:
    """Per-robot F_e, G_e, D_e and switch time, plus a descending ranking per index.

    Switch time is reported raw and normalised but is not folded into any
    composite index.
    """
    fleet = list(fleet)
    f, g, d = flight_index(fleet, weights), ground_index(fleet, weights), duration_index(fleet, weights)
    ts = _column(fleet, "T_s")
    names = [r.name for r in fleet]
    rows = [FleetRow(r.name, float(f[i]), float(g[i]), float(d[i]), float(r.T_s), float(ts[i]))
            for i, r in enumerate(fleet)]
    rankings = {"f_e": _ranking(names, f), "g_e": _ranking(names, g), "d_e": _ranking(names, d)}
    return FleetReport(rows, rankings, weights)


def load_fleet(text: str) -> list[FleetRecord]:
    data = json.loads(text)
    if not isinstance(data, list):
        raise ValueError("fleet document must be a JSON array of records")
    return [FleetRecord.from_dict(d) for d in data]
