"""Hover endurance model and battery sizing.

Flight time is pack energy over electrical power draw,

    t = w*m / (k*V*I + P)

with ``k`` rotors at voltage ``V`` each drawing ``I`` amps, plus a fixed
onboard load ``P``. ``I`` is read off the fitted current curve at the actual
per-rotor hover thrust, so adding battery mass raises both numerator and
denominator and the endurance curve has an interior optimum for
superlinear current curves.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import NoFlyError, OutOfRangeError
from .powertrain import BatteryModel, PowerTrainModel, eval_curve

GRAVITY = 9.81


@dataclass(frozen=True)
class WeightBreakdown:
    frame: float = 0.0
    battery: float = 0.0
    deform_module: float = 0.0
    avionics: float = 0.0
    payload: float = 0.0

    def __post_init__(self):
        for name in ("frame", "battery", "deform_module", "avionics", "payload"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} mass must be >= 0")


def total_weight(w: WeightBreakdown) -> float:
    return math.fsum([w.frame, w.battery, w.deform_module, w.avionics, w.payload])


@dataclass(frozen=True)
class PowerBudget:
    avionics: float = 0.0
    perception: float = 0.0
    deform: float = 0.0

    def __post_init__(self):
        for name in ("avionics", "perception", "deform"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} power must be >= 0")

    @property
    def total(self) -> float:
        return self.avionics + self.perception + self.deform


@dataclass(frozen=True)
class EnduranceConfig:
    rotor_count: int
    nominal_voltage: float
    battery_model: BatteryModel
    powertrain: PowerTrainModel
    fixed_mass: float  # kg, everything except the battery
    power_budget: PowerBudget = PowerBudget()
    gravity: float = GRAVITY

    def __post_init__(self):
        if self.rotor_count < 1:
            raise ValueError("rotor_count must be >= 1")
        if not self.nominal_voltage > 0:
            raise ValueError("nominal_voltage must be positive")
        if self.fixed_mass < 0:
            raise ValueError("fixed_mass must be >= 0")
        if not self.gravity > 0:
            raise ValueError("gravity must be positive")


def flight_duration(energy: float, rotor_count: int, voltage: float, current: float,
                    power: float) -> float:
    """Hover time in minutes for ``energy`` Wh at the given electrical load."""
    if energy < 0:
        raise ValueError("energy must be >= 0")
    load = rotor_count * voltage * current + power
    if not load > 0:
        raise ValueError(f"non-positive power draw {load} W")
    return 60.0 * energy / load


def per_rotor_thrust(config: EnduranceConfig, battery_mass: float) -> float:
    return (config.fixed_mass + battery_mass) * config.gravity / config.rotor_count


def hover_current(config: EnduranceConfig, battery_mass: float) -> float:
    """Per-motor current (A) needed to hover with a ``battery_mass`` kg pack.

    Raises NoFlyError when the required thrust is beyond the powertrain's
    tabulated maximum.
    """
    if battery_mass < 0:
        raise ValueError("battery_mass must be >= 0")
    thrust = per_rotor_thrust(config, battery_mass)
    curve = config.powertrain.current_curve
    if thrust > curve.max_thrust and not curve.contains(thrust):
        raise NoFlyError(
            f"hover needs {thrust:.4f} N per rotor, powertrain max is {curve.max_thrust:.4f} N "
            f"(no-fly boundary {no_fly_boundary_mass(config):.4f} kg battery)")
    return eval_curve(curve, thrust)


def duration_at(config: EnduranceConfig, battery_mass: float) -> float:
    """Hover time (min) for one battery mass; raises on infeasible masses."""
    current = hover_current(config, battery_mass)
    return flight_duration(config.battery_model.capacity(battery_mass), config.rotor_count,
                           config.nominal_voltage, current, config.power_budget.total)


class DurationPoint(NamedTuple):
    battery_mass: float
    duration_min: float  # nan when infeasible
    feasible: bool


def _mass_grid(mass_range, step) -> np.ndarray:
    lo, hi = map(float, mass_range)
    if not step > 0:
        raise ValueError("step must be positive")
    if lo < 0 or hi < lo:
        raise ValueError(f"invalid mass range [{lo}, {hi}]")
    n = int(math.floor((hi - lo) / step + 1e-9))
    return lo + step * np.arange(n + 1)


def duration_curve(config: EnduranceConfig, mass_range, step: float) -> list[DurationPoint]:
    """Endurance over a battery-mass grid. Infeasible masses are kept and flagged."""
    out = []
    for m in _mass_grid(mass_range, step):
        m = float(m)
        try:
            out.append(DurationPoint(m, duration_at(config, m), True))
        except OutOfRangeError:
            out.append(DurationPoint(m, math.nan, False))
    return out


def no_fly_boundary_mass(config: EnduranceConfig) -> float:
    return config.rotor_count * config.powertrain.max_thrust / config.gravity - config.fixed_mass


def no_fly_boundary(config: EnduranceConfig) -> float:
    """Largest battery mass (kg) the powertrain can still lift."""
    m = no_fly_boundary_mass(config)
    if m < 0:
        raise NoFlyError(
            f"fixed mass {config.fixed_mass} kg alone exceeds lift capacity "
            f"{config.rotor_count * config.powertrain.max_thrust / config.gravity:.4f} kg")
    return max(m, 0.0)


_INVPHI = (math.sqrt(5) - 1) / 2


def _golden_max(f, a: float, b: float, tol: float) -> tuple[float, float]:
    c, d = b - _INVPHI * (b - a), a + _INVPHI * (b - a)
    fc, fd = f(c), f(d)
    while b - a >= tol:
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - _INVPHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INVPHI * (b - a)
            fd = f(d)
    return (c, fc) if fc >= fd else (d, fd)


def optimize_battery_mass(config: EnduranceConfig, mass_range, coarse_step: float = 0.1,
                          refine_tol: float = 0.01) -> tuple[float, float]:
    """Battery mass (kg) maximising hover time, and that time (min).

    Coarse grid scan over the feasible part of ``mass_range`` followed by a
    golden-section refinement on the bracket around the best grid point.
    The no-fly boundary itself is always a candidate, so monotone
    endurance curves return it exactly.
    """
    if not refine_tol > 0:
        raise ValueError("refine_tol must be positive")
    lo, hi = map(float, mass_range)
    grid = _mass_grid((lo, hi), coarse_step)
    boundary = no_fly_boundary_mass(config)
    upper = min(hi, boundary)

    def f(m):
        try:
            return duration_at(config, m)
        except OutOfRangeError:
            return -math.inf

    cands = [(float(m), f(float(m))) for m in grid if m <= upper]
    if lo <= boundary <= hi:
        cands.append((boundary, f(boundary)))
    cands = [c for c in cands if c[1] > -math.inf]
    if not cands:
        raise NoFlyError(
            f"no feasible battery mass in [{lo}, {hi}] kg; no-fly boundary is {boundary:.4f} kg")
    best_m, best_t = max(cands, key=lambda c: c[1])
    a, b = max(lo, best_m - coarse_step), min(upper, best_m + coarse_step)
    if b - a > refine_tol:
        for m, t in (_golden_max(f, a, b, refine_tol), (a, f(a)), (b, f(b))):
            if t > best_t:
                best_m, best_t = m, t
    return best_m, best_t
