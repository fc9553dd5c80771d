"""Battery and motor/propeller curve fitting.

Battery capacity is modelled as linear in pack mass. Motor current and
propulsion efficiency are least-squares polynomials in per-rotor thrust and
are only defined over the thrust range they were fitted on.
"""
from __future__ import annotations

import csv
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .errors import InsufficientDataError, OutOfRangeError

# relative slack on range checks so closed-form boundary values survive rounding
_RANGE_RTOL = 1e-12

BATTERY_CSV_HEADER = ("mass_kg", "capacity_wh")
MOTOR_CSV_HEADER = ("thrust_n", "current_a", "efficiency_g_per_w")


@dataclass(frozen=True)
class BatteryModel:
    slope: float  # Wh/kg
    intercept: float  # Wh
    nominal_voltage: float = 48.0
    residual_rms: float = 0.0
    mass_range: tuple[float, float] | None = None

    def __post_init__(self):
        if not self.slope > 0:
            raise ValueError(f"battery fit slope must be positive, got {self.slope}")
        if not self.nominal_voltage > 0:
            raise ValueError("nominal_voltage must be positive")

    @property
    def energy_density(self) -> float:
        """Marginal energy density in Wh/kg (the fitted slope)."""
        return self.slope

    @property
    def linear_fit(self) -> tuple[float, float]:
        return (self.slope, self.intercept)

    def capacity(self, mass: float) -> float:
        """Pack energy in Wh for a pack of ``mass`` kg, floored at zero."""
        return max(0.0, self.slope * mass + self.intercept)


def fit_linear(points: Iterable[Sequence[float]], nominal_voltage: float = 48.0) -> BatteryModel:
    """Least-squares line through (mass kg, capacity Wh) pairs."""
    pts = np.asarray(list(points), dtype=float)
    if pts.ndim != 2 or len(pts) < 2:
        raise InsufficientDataError("need at least 2 (mass, capacity) points")
    m, c = pts[:, 0], pts[:, 1]
    if np.ptp(m) == 0:
        raise InsufficientDataError("all battery masses identical; slope undetermined")
    A = np.column_stack([m, np.ones_like(m)])
    (slope, intercept), *_ = np.linalg.lstsq(A, c, rcond=None)
    rms = float(np.sqrt(np.mean((A @ [slope, intercept] - c) ** 2)))
    return BatteryModel(float(slope), float(intercept), nominal_voltage, rms,
                        (float(m.min()), float(m.max())))


@dataclass(frozen=True)
class ThrustCurve:
    kind: str  # "current" (A) or "efficiency" (g/W)
    coefficients: tuple[float, ...]  # ascending powers of thrust
    valid_range: tuple[float, float]
    residual_rms: float = 0.0
    monotonic: bool | None = None

    def __post_init__(self):
        if self.kind not in ("current", "efficiency"):
            raise ValueError(f"unknown curve kind {self.kind!r}")
        lo, hi = self.valid_range
        if not lo <= hi:
            raise ValueError("valid_range must be ordered")

    @property
    def max_thrust(self) -> float:
        return self.valid_range[1]

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def contains(self, thrust: float) -> bool:
        lo, hi = self.valid_range
        slack = _RANGE_RTOL * max(abs(lo), abs(hi), 1.0)
        return lo - slack <= thrust <= hi + slack

    def __call__(self, thrust: float) -> float:
        return eval_curve(self, thrust)


def is_non_decreasing(coefficients: Sequence[float], lo: float, hi: float) -> bool:
    """True if the polynomial has non-negative slope everywhere on [lo, hi]."""
    deriv = np.polynomial.Polynomial(coefficients).deriv()
    candidates = [lo, hi]
    if deriv.degree() >= 2:
        for r in deriv.deriv().roots():
            if abs(r.imag) < 1e-12 and lo < r.real < hi:
                candidates.append(r.real)
    scale = max(np.abs(deriv.coef).max(), 1.0)
    return all(deriv(x) >= -1e-12 * scale for x in candidates)


def fit_poly(points: Iterable[Sequence[float]], degree: int = 2, kind: str = "current") -> ThrustCurve:
    """Least-squares polynomial of ``degree`` (1-3) through (thrust N, y) pairs.

    The monotonicity of a current curve is checked and stored on the result
    but not enforced.
    """
    if degree not in (1, 2, 3):
        raise ValueError(f"degree must be 1, 2 or 3, got {degree}")
    pts = np.asarray(list(points), dtype=float)
    if pts.ndim != 2 or len(pts) < degree + 1:
        raise InsufficientDataError(f"degree {degree} fit needs at least {degree + 1} points")
    T, y = pts[:, 0], pts[:, 1]
    V = np.vander(T, degree + 1, increasing=True)
    # column equilibration keeps the Vandermonde solve well conditioned
    scale = np.linalg.norm(V, axis=0)
    scale[scale == 0] = 1.0
    coef, _, rank, _ = np.linalg.lstsq(V / scale, y, rcond=None)
    coef = coef / scale
    if rank < degree + 1:
        raise InsufficientDataError("rank-deficient fit: too few distinct thrust values")
    rms = float(np.sqrt(np.mean((V @ coef - y) ** 2)))
    lo, hi = float(T.min()), float(T.max())
    mono = is_non_decreasing(coef, lo, hi) if kind == "current" else None
    return ThrustCurve(kind, tuple(float(c) for c in coef), (lo, hi), rms, mono)


def eval_curve(curve: ThrustCurve, thrust: float) -> float:
    if not curve.contains(thrust):
        raise OutOfRangeError(
            f"thrust {thrust:.6g} N outside fitted range "
            f"[{curve.valid_range[0]:.6g}, {curve.valid_range[1]:.6g}] N")
    x = min(max(thrust, curve.valid_range[0]), curve.valid_range[1])
    # Horner, highest power first
    y = 0.0
    for c in reversed(curve.coefficients):
        y = y * x + c
    return y


@dataclass(frozen=True)
class PowerTrainModel:
    motor_name: str
    kv: float
    current_curve: ThrustCurve
    efficiency_curve: ThrustCurve
    propeller_diameter: float  # inch

    def __post_init__(self):
        if not self.kv > 0:
            raise ValueError("kv must be positive")
        if self.current_curve.valid_range != self.efficiency_curve.valid_range:
            raise ValueError("current and efficiency curves must share valid_range")

    @property
    def max_thrust(self) -> float:
        return self.current_curve.max_thrust

    @property
    def valid_range(self) -> tuple[float, float]:
        return self.current_curve.valid_range


@dataclass
class Selection:
    feasible: list[PowerTrainModel] = field(default_factory=list)
    infeasible: list[tuple[PowerTrainModel, str]] = field(default_factory=list)


def select_powertrain(candidates: Sequence[PowerTrainModel], required_hover_thrust: float,
                      margin: float = 1.0) -> Selection:
    """Filter candidates by thrust headroom and rank by hover efficiency.

    A candidate is feasible when its maximum tabulated thrust is at least
    ``margin * required_hover_thrust`` and its efficiency curve covers the
    hover point. Feasible candidates are sorted by efficiency at hover,
    best first; ties keep input order.
    """
    if not candidates:
        raise ValueError("no powertrain candidates given")
    if margin < 1:
        raise ValueError("margin must be >= 1")
    out = Selection()
    scored = []
    need = margin * required_hover_thrust
    for pt in candidates:
        if pt.max_thrust < need:
            out.infeasible.append(
                (pt, f"max thrust {pt.max_thrust:.4g} N < required {need:.4g} N"))
            continue
        if not pt.efficiency_curve.contains(required_hover_thrust):
            out.infeasible.append(
                (pt, f"hover thrust {required_hover_thrust:.4g} N below tabulated range"))
            continue
        scored.append((eval_curve(pt.efficiency_curve, required_hover_thrust), pt))
    scored.sort(key=lambda s: -s[0])
    out.feasible = [pt for _, pt in scored]
    return out


def _read_rows(path: str | Path, header: tuple[str, ...]) -> np.ndarray:
    with open(path, newline="", encoding="utf-8") as fh:
        rows = [r for r in csv.reader(fh) if r and not r[0].lstrip().startswith("#")]
    if not rows or tuple(h.strip() for h in rows[0]) != header:
        raise ValueError(f"{path}: expected header {','.join(header)}")
    try:
        return np.array([[float(v) for v in r] for r in rows[1:]], dtype=float).reshape(-1, len(header))
    except ValueError as exc:
        raise ValueError(f"{path}: {exc}") from None


def load_battery_csv(path: str | Path, nominal_voltage: float = 48.0) -> BatteryModel:
    """Fit a BatteryModel to a ``mass_kg,capacity_wh`` table. ``#`` lines are comments."""
    return fit_linear(_read_rows(path, BATTERY_CSV_HEADER), nominal_voltage)


def load_motor_csv(path: str | Path, motor_name: str, kv: float, propeller_diameter: float,
                   degree: int = 2) -> PowerTrainModel:
    data = _read_rows(path, MOTOR_CSV_HEADER)
    current = fit_poly(data[:, [0, 1]], degree, "current")
    eff = fit_poly(data[:, [0, 2]], degree, "efficiency")
    return PowerTrainModel(motor_name, kv, current, eff, propeller_diameter)
