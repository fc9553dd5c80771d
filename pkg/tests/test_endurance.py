import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from helpers import brute_force_optimum, linear_config, superlinear_config
from landair.endurance import (EnduranceConfig, PowerBudget, WeightBreakdown, duration_at,
                               duration_curve, flight_duration, hover_current, no_fly_boundary,
                               no_fly_boundary_mass, optimize_battery_mass, per_rotor_thrust,
                               total_weight)
from landair.errors import NoFlyError
from landair.powertrain import BatteryModel, PowerTrainModel, ThrustCurve


def test_total_weight(robot_spec):
    assert total_weight(robot_spec.weights) == 24.62
    assert total_weight(WeightBreakdown()) == 0
    assert total_weight(WeightBreakdown(1, 1, 1, 1, 1)) == 5
    with pytest.raises(ValueError):
        WeightBreakdown(frame=-1)


def test_flight_duration_examples():
    assert flight_duration(400, 4, 48, 0, 400) == pytest.approx(60.0)
    assert flight_duration(1440, 4, 48, 18, 543) == pytest.approx(1440 / 3999 * 60)
    assert flight_duration(1440, 4, 48, 18, 543) == pytest.approx(21.61, abs=0.005)
    with pytest.raises(ValueError):
        flight_duration(100, 4, 48, 0, 0)


@given(st.floats(1, 5000), st.floats(0.1, 50), st.floats(0, 1000))
def test_flight_duration_homogeneous(energy, current, power):
    t = flight_duration(energy, 4, 48, current, power)
    assert flight_duration(2 * energy, 4, 48, current, power) == pytest.approx(2 * t, rel=1e-12)
    assert flight_duration(energy, 4, 48, 2 * current, 2 * power) == pytest.approx(t / 2, rel=1e-12)


def test_hover_thrust_table_robot(endurance_config):
    assert per_rotor_thrust(endurance_config, 5.74) == pytest.approx(55.77, abs=0.005)
    assert hover_current(endurance_config, 5.74) > 0


def test_hover_current_zero_mass():
    cur = ThrustCurve("current", (1.5, 0.2), (0.0, 50.0))
    pt = PowerTrainModel("m", 100, cur, ThrustCurve("efficiency", (5.0,), (0.0, 50.0)), 10)
    cfg = EnduranceConfig(4, 24, BatteryModel(200, 0), pt, 0.0)
    assert hover_current(cfg, 0.0) == 1.5


def _boundary_config(max_thrust, fixed):
    cur = ThrustCurve("current", (1.0, 0.1), (0.0, max_thrust))
    pt = PowerTrainModel("m", 100, cur, ThrustCurve("efficiency", (5.0,), (0.0, max_thrust)), 10)
    return EnduranceConfig(4, 48, BatteryModel(250, 0), pt, fixed)


def test_no_fly_boundary_closed_form():
    cfg = _boundary_config(100.0, 17.0)
    assert no_fly_boundary(cfg) == pytest.approx(400 / 9.81 - 17)
    assert no_fly_boundary(cfg) == pytest.approx(23.77, abs=0.005)
    m = no_fly_boundary(cfg)
    hover_current(cfg, m)
    with pytest.raises(NoFlyError):
        hover_current(cfg, m + 1e-6)
    exact = _boundary_config(17.0 * 9.81 / 4, 17.0)
    assert no_fly_boundary(exact) == pytest.approx(0.0, abs=1e-12)
    with pytest.raises(NoFlyError):
        no_fly_boundary(_boundary_config(10.0, 17.0))


def test_duration_curve_single_point_and_tail():
    cfg = _boundary_config(100.0, 17.0)
    assert len(duration_curve(cfg, (1, 1), 0.5)) == 1
    series = duration_curve(cfg, (20, 30), 0.5)
    b = no_fly_boundary(cfg)
    assert all(p.feasible == (p.battery_mass <= b) for p in series)
    assert not series[-1].feasible and math.isnan(series[-1].duration_min)
    with pytest.raises(ValueError):
        duration_curve(cfg, (3, 1), 0.1)
    with pytest.raises(ValueError):
        duration_curve(cfg, (1, 3), 0)


def test_duration_curve_interior_maximum():
    cfg = superlinear_config()
    series = duration_curve(cfg, (0.5, 12.0), 0.01)
    t = [p.duration_min for p in series]
    k = int(np.argmax(t))
    assert 0 < k < len(t) - 1
    assert t[k] > t[0] and t[k] > t[-1]


def test_duration_curve_matches_pointwise_formula(endurance_config):
    cfg = endurance_config
    for p in duration_curve(cfg, (0.5, 25.0), 0.25):
        if not p.feasible:
            continue
        current = hover_current(cfg, p.battery_mass)
        expected = flight_duration(cfg.battery_model.capacity(p.battery_mass), cfg.rotor_count,
                                   cfg.nominal_voltage, current, cfg.power_budget.total)
        assert p.duration_min == expected


def test_duration_curve_lipschitz(endurance_config):
    cfg = endurance_config
    lo, hi, step = 0.5, no_fly_boundary_mass(cfg), 0.05
    series = [p for p in duration_curve(cfg, (lo, hi), step) if p.feasible]
    curve = cfg.powertrain.current_curve
    dI = np.polynomial.Polynomial(curve.coefficients).deriv()
    T = np.linspace(*curve.valid_range, 2001)
    max_slope = np.abs(dI(T)).max()
    V, k, P = cfg.nominal_voltage, cfg.rotor_count, cfg.power_budget.total
    I = np.polynomial.Polynomial(curve.coefficients)(T)
    d_min, d_max = k * V * I.min() + P, k * V * I.max() + P
    w, e_max = cfg.battery_model.slope, cfg.battery_model.capacity(hi)
    # |dt/dm| <= 60 (w D + E |D'|) / D^2 with D' = V g dI/dT
    bound = 60 * (w * d_max + e_max * V * cfg.gravity * max_slope) / d_min ** 2
    for a, b in zip(series, series[1:]):
        assert abs(b.duration_min - a.duration_min) <= bound * step


def test_optimizer_matches_brute_force():
    cfg = superlinear_config()
    m_ref, t_ref = brute_force_optimum(cfg, 0.5, 12.0)
    m, t = optimize_battery_mass(cfg, (0.5, 12.0), 0.1, 0.01)
    assert abs(m - m_ref) <= 0.01
    assert t >= t_ref - 1e-6


def test_optimizer_linear_current_returns_boundary():
    cfg = linear_config()
    m, t = optimize_battery_mass(cfg, (0.5, 30.0))
    assert m == no_fly_boundary_mass(cfg)
    assert t == duration_at(cfg, m)


def test_optimizer_all_infeasible():
    cfg = linear_config()
    with pytest.raises(NoFlyError, match="no-fly boundary"):
        optimize_battery_mass(cfg, (25.0, 30.0))


@given(st.floats(0.5, 8.0), st.floats(8.5, 20.0))
def test_optimizer_result_feasible(lo, hi):
    cfg = superlinear_config()
    m, t = optimize_battery_mass(cfg, (lo, hi), 0.25, 0.01)
    assert lo <= m <= min(hi, no_fly_boundary_mass(cfg))
    assert t == duration_at(cfg, m)


def test_calibrated_fixture_optimum(endurance_config):
    m, t = optimize_battery_mass(endurance_config, (0.5, 12.0))
    assert abs(m - 5.7) <= 1.0
    assert 15 < t < 30
