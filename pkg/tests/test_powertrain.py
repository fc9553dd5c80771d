import numpy as np
import pytest
from hypothesis import given, strategies as st

from landair.errors import InsufficientDataError, OutOfRangeError
from landair.powertrain import (PowerTrainModel, ThrustCurve, eval_curve, fit_linear, fit_poly,
                                load_battery_csv, load_motor_csv, select_powertrain)
from landair.config import data_path


def normal_equations(points):
    x = np.array([p[0] for p in points], float)
    y = np.array([p[1] for p in points], float)
    n = len(x)
    slope = (n * (x * y).sum() - x.sum() * y.sum()) / (n * (x * x).sum() - x.sum() ** 2)
    return slope, (y.sum() - slope * x.sum()) / n


def test_fit_linear_through_origin():
    b = fit_linear([(1, 200), (2, 400)])
    assert b.slope == pytest.approx(200)
    assert b.intercept == pytest.approx(0, abs=1e-9)
    assert b.energy_density == pytest.approx(200)


def test_fit_linear_offset_matches_normal_equations():
    pts = [(1, 210), (2, 400), (3, 590)]
    slope, intercept = normal_equations(pts)
    assert (slope, intercept) == pytest.approx((190, 20))
    b = fit_linear(pts)
    assert b.slope == pytest.approx(slope, rel=1e-12)
    assert b.intercept == pytest.approx(intercept, rel=1e-12)
    assert b.residual_rms == pytest.approx(0, abs=1e-9)


def test_fit_linear_noisy_matches_normal_equations():
    rng = np.random.default_rng(3)
    pts = [(m, 250 * m + rng.normal(0, 5)) for m in np.linspace(1, 8, 12)]
    b = fit_linear(pts)
    assert (b.slope, b.intercept) == pytest.approx(normal_equations(pts), rel=1e-10)


def test_fit_linear_errors():
    with pytest.raises(InsufficientDataError):
        fit_linear([(5.74, 1440)])
    with pytest.raises(InsufficientDataError):
        fit_linear([(2, 400), (2, 410), (2, 420)])


@given(st.floats(1, 500), st.floats(0, 100),
       st.lists(st.floats(0.1, 20), min_size=2, max_size=10, unique=True))
def test_fit_linear_collinear_reproduces_inputs(slope, intercept, masses):
    pts = [(m, slope * m + intercept) for m in masses]
    b = fit_linear(pts)
    for m, c in pts:
        assert b.capacity(m) == pytest.approx(c, rel=1e-7, abs=1e-6)
    assert b.residual_rms <= 1e-7 * max(c for _, c in pts)


def test_fit_poly_exact_line():
    c = fit_poly([(0, 0), (10, 1), (20, 2)], 1)
    assert c.coefficients == pytest.approx((0, 0.1), abs=1e-12)
    assert c.valid_range == (0, 20)
    assert c.monotonic is True


def test_fit_poly_exact_quadratic_matches_vandermonde():
    pts = [(0, 0), (10, 2), (20, 8)]
    V = np.array([[1, t, t * t] for t, _ in pts], float)
    expected = np.linalg.solve(V, [y for _, y in pts])
    assert expected == pytest.approx([0, 0, 0.02], abs=1e-15)
    c = fit_poly(pts, 2)
    assert c.coefficients == pytest.approx(expected, abs=1e-12)


def test_fit_poly_errors():
    with pytest.raises(InsufficientDataError):
        fit_poly([(0, 0), (10, 1)], 2)
    with pytest.raises(ValueError):
        fit_poly([(0, 0), (10, 1), (20, 3), (30, 4), (40, 6)], 4)
    with pytest.raises(InsufficientDataError):
        fit_poly([(10, 0), (10, 1), (10, 2), (20, 3)], 2)


@given(st.lists(st.floats(0, 100), min_size=4, max_size=4, unique=True).filter(
           lambda xs: min(abs(a - b) for i, a in enumerate(xs) for b in xs[i + 1:]) > 1.0),
       st.lists(st.floats(-5, 5), min_size=4, max_size=4))
def test_fit_poly_interpolates_with_full_degree(xs, ys):
    c = fit_poly(list(zip(xs, ys)), 3)
    for x, y in zip(xs, ys):
        assert eval_curve(c, x) == pytest.approx(y, abs=1e-9 * max(1.0, max(map(abs, ys))))


def test_monotonicity_flag_reports_decreasing_fit():
    c = fit_poly([(0, 5), (10, 1), (20, 5)], 2)
    assert c.monotonic is False
    assert fit_poly([(0, 5), (10, 1), (20, 5)], 2, kind="efficiency").monotonic is None


def test_eval_curve():
    c = fit_poly([(0, 0), (10, 1), (100, 10)], 1)
    assert eval_curve(c, 60.4) == pytest.approx(6.04)
    assert np.isfinite(eval_curve(c, c.valid_range[0]))
    with pytest.raises(OutOfRangeError):
        eval_curve(c, 100.5)
    assert eval_curve(c, 37.0) == eval_curve(c, 37.0)


def _pt(name, max_thrust, eff_at_50):
    cur = ThrustCurve("current", (0.0, 0.3), (0.0, max_thrust))
    eff = ThrustCurve("efficiency", (eff_at_50,), (0.0, max_thrust))
    return PowerTrainModel(name, 150, cur, eff, 26)


def test_select_single_infeasible():
    sel = select_powertrain([_pt("a", 40, 3.0)], 50.0, 1.0)
    assert sel.feasible == []
    assert [p.motor_name for p, _ in sel.infeasible] == ["a"]


def test_select_efficiency_order():
    sel = select_powertrain([_pt("lo", 100, 2.5), _pt("hi", 100, 3.0)], 50.0, 1.2)
    assert [p.motor_name for p in sel.feasible] == ["hi", "lo"]


def test_select_mixed_matches_pairwise_oracle():
    cands = [_pt("a", 120, 2.0), _pt("b", 60, 9.0), _pt("c", 100, 2.8), _pt("d", 90, 2.8)]
    need, margin = 50.0, 1.5
    sel = select_powertrain(cands, need, margin)
    feas = [c for c in cands if c.max_thrust >= margin * need]
    # brute force: c ranks above d iff eff(c) > eff(d), or equal and c came first
    for i, x in enumerate(sel.feasible):
        for y in sel.feasible[i + 1:]:
            ex, ey = x.efficiency_curve(need), y.efficiency_curve(need)
            assert ex > ey or (ex == ey and cands.index(x) < cands.index(y))
    assert sorted(p.motor_name for p in sel.feasible) == sorted(p.motor_name for p in feas)
    names = {p.motor_name for p in sel.feasible} | {p.motor_name for p, _ in sel.infeasible}
    assert names == {c.motor_name for c in cands}
    with pytest.raises(ValueError):
        select_powertrain([], 50.0)


def test_csv_ingestion(tmp_path):
    f = tmp_path / "m.csv"
    f.write_text("thrust_n,current_a,efficiency_g_per_w\n0,0,5\n10,1,4\n20,2,3\n30,3,2\n",
                 encoding="utf-8")
    pt = load_motor_csv(f, "m", 170, 26, degree=1)
    assert pt.current_curve.coefficients == pytest.approx((0, 0.1), abs=1e-12)
    bad = tmp_path / "bad.csv"
    bad.write_text("thrust,current\n1,2\n", encoding="utf-8")
    with pytest.raises(ValueError):
        load_motor_csv(bad, "m", 170, 26)


def test_bundled_fixture_tables():
    b = load_battery_csv(data_path("battery_synthetic.csv"))
    assert b.capacity(5.74) == pytest.approx(1440, rel=0.01)
    pt = load_motor_csv(data_path("motor_mn805s_170kv_synthetic.csv"), "MN805S-170KV", 170, 26)
    assert pt.current_curve.monotonic
