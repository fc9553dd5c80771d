"""Command-line front end.

Exit codes: 0 success, 1 domain error (no-fly, no path, too few records),
2 usage or input-file error. Diagnostics go to stderr; data goes to the
``--out`` files or stdout.
"""
from __future__ import annotations

import argparse
import logging
import math
import sys
from dataclasses import asdict, fields
from pathlib import Path

from . import dynamics, endurance, evaluation, planner, powertrain
from .config import RobotSpec, apply_overrides
from .errors import LandAirError
from .report import emit_json, emit_plot_data

log = logging.getLogger("landair")

FORMATS = """\
file formats:
  robot spec (JSON)   keys: weights{frame,battery,deform_module,avionics,payload} kg,
                      dimensions{unfolded_m,folded_m}, battery{csv,nominal_voltage},
                      powertrain{csv,motor_name,kv,propeller_diameter,degree},
                      endurance{rotor_count,nominal_voltage,fixed_mass,gravity,
                      power_budget{avionics,perception,deform}}, dynamics{arms[...],
                      hub_radius,thrust_coefficient,drag_coefficient,max_speed_rpm,
                      total_mass,body_inertia,rotor_inertia,damping}, planner{CostModel fields}
                      (default: bundled robot_default.json; --set a.b=value overrides keys)
  motor CSV           thrust_n,current_a,efficiency_g_per_w   ('#' lines are comments)
  battery CSV         mass_kg,capacity_wh
  map file            line 1: width height resolution_m n_air_layers alt_1..alt_K
                      then height rows of 0/1 (ground blocked), height rows of elevation (m),
                      then height rows of 0/1 per air layer
  fleet JSON          array of {name,t_f,p,v_f,m_d,h_o,v_d,S_land,S_air,T_s,G}
outputs:
  endurance CSV       battery_mass_kg,duration_min,feasible
  simulate-arm CSV    t_s,arm_id,torque_nmm
  plan CSV            x,y,layer,mode,t_s,e_j
  evaluate radar CSV  name,f_e,g_e,d_e,t_s_norm
"""


def _pair(text: str) -> tuple[float, float]:
    try:
        a, b = (float(v) for v in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected lo,hi got {text!r}") from None
    return a, b


def _state(text: str) -> planner.HybridState:
    try:
        return planner.parse_state(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _robot(args) -> RobotSpec:
    return RobotSpec.load(args.robot, args.set)


def cmd_fit(args) -> int:
    spec = _robot(args)
    p = spec.doc["powertrain"]
    motor_csv = args.motor_csv or spec._file(p["csv"])
    battery_csv = args.battery_csv or spec._file(spec.doc["battery"]["csv"])
    degree = args.degree or p.get("degree", 2)
    pt = powertrain.load_motor_csv(motor_csv, p["motor_name"], p["kv"], p["propeller_diameter"], degree)
    bat = powertrain.load_battery_csv(battery_csv, spec.doc["battery"].get("nominal_voltage", 48.0))
    if pt.current_curve.monotonic is False:
        log.warning("fitted current curve is not monotone over its range")
    cfg = spec.endurance_config()
    hover = endurance.per_rotor_thrust(cfg, spec.weights.battery)
    cands = [powertrain.load_motor_csv(spec._file(c["csv"]), c["motor_name"], c["kv"],
                                       c["propeller_diameter"], degree)
             for c in spec.doc.get("candidates", [])]
    out = {"battery": asdict(bat) | {"energy_density_wh_per_kg": bat.energy_density},
           "powertrain": {"motor_name": pt.motor_name, "kv": pt.kv,
                          "current": asdict(pt.current_curve),
                          "efficiency": asdict(pt.efficiency_curve)}}
    if cands:
        sel = powertrain.select_powertrain(cands, hover, args.margin)
        out["selection"] = {
            "hover_thrust_n": hover, "margin": args.margin,
            "feasible": [{"motor_name": c.motor_name,
                          "efficiency_at_hover": powertrain.eval_curve(c.efficiency_curve, hover)}
                         for c in sel.feasible],
            "infeasible": [{"motor_name": c.motor_name, "reason": r} for c, r in sel.infeasible]}
    emit_json(out, args.out)
    return 0


def _mass_range(args, spec):
    e = spec.doc["endurance"]
    return args.range or tuple(e.get("mass_range", (0.5, 12.0))), getattr(args, "step", None) or e.get("step", 0.05)


def cmd_endurance(args) -> int:
    spec = _robot(args)
    cfg = spec.endurance_config()
    rng, step = _mass_range(args, spec)
    series = endurance.duration_curve(cfg, rng, step)
    emit_plot_data(("battery_mass_kg", "duration_min", "feasible"), series, args.out)
    if args.report:
        feasible = [p for p in series if p.feasible]
        best = max(feasible, key=lambda p: p.duration_min) if feasible else None
        bm = spec.weights.battery
        rep = {
            "robot": spec.name,
            "mass_range_kg": list(rng), "step_kg": step,
            "no_fly_boundary_kg": endurance.no_fly_boundary_mass(cfg),
            "grid_best": None if best is None else {"battery_mass_kg": best.battery_mass,
                                                   "duration_min": best.duration_min},
            "carried_battery_kg": bm,
            "carried_battery_duration_min": endurance.duration_at(cfg, bm)
            if bm <= endurance.no_fly_boundary_mass(cfg) else None,
            "power_budget_w": cfg.power_budget.total,
        }
        emit_json(rep, args.report)
    return 0


def cmd_optimize(args) -> int:
    spec = _robot(args)
    cfg = spec.endurance_config()
    rng, _ = _mass_range(args, spec)
    m, t = endurance.optimize_battery_mass(cfg, rng, args.coarse_step, args.refine_tol)
    emit_json({"battery_mass_kg": m, "duration_min": t, "mass_range_kg": list(rng),
               "no_fly_boundary_kg": endurance.no_fly_boundary_mass(cfg),
               "refine_tol_kg": args.refine_tol}, args.out)
    return 0


def cmd_simulate(args) -> int:
    spec = _robot(args)
    series = dynamics.simulate_profile(args.profile, spec.dynamics_params(), args.duration, args.dt)
    emit_plot_data(("t_s", "arm_id", "torque_nmm"), series.rows(), args.out)
    peaks = ", ".join(f"{a}={series.peak(a):.0f}" for a in series.arm_ids)
    log.info("peak servo torque (N*mm): %s", peaks)
    return 0


def cmd_plan(args) -> int:
    spec = _robot(args)
    cost = spec.cost_model()
    world = planner.read_grid(args.map)
    radius = spec.inflate_radius if args.inflate is None else args.inflate
    if radius:
        world = planner.inflate(world, radius)
    path = planner.plan(world, args.start, args.goal, cost, allow_flight=not args.drive_only)
    if not args.no_smooth:
        path = planner.smooth(path, world, cost)
    emit_plot_data(planner.PATH_CSV_HEADER, planner.path_rows(path), args.out)
    log.info("path: %d states, %.1f J, %.2f s, %d mode switches", len(path.states),
             path.total_energy, path.total_time, path.switch_count)
    return 0


def cmd_evaluate(args) -> int:
    fleet = evaluation.load_fleet(Path(args.fleet).read_text(encoding="utf-8"))
    wdoc = apply_overrides({f.name: 1.0 for f in fields(evaluation.WeightSet)}, args.set)
    weights = evaluation.WeightSet(**{k: float(v) for k, v in wdoc.items()})
    rep = evaluation.evaluate_fleet(fleet, weights)
    spec = RobotSpec.load(args.robot)
    fp = evaluation.footprint_reduction(spec.unfolded, spec.folded)
    out = rep.to_dict()
    out["footprint"] = {
        "unfolded_m": list(spec.unfolded), "folded_m": list(spec.folded),
        "rectangular_reduction_percent": fp,
        "reported_reduction_percent": evaluation.REPORTED_FOOTPRINT_REDUCTION,
        "note": "rectangular width x depth boxes; the outline behind the reported figure is unknown",
    }
    pl = spec.cost_model()
    out["energy_saving_percent"] = evaluation.energy_saving(pl.drive_power, pl.fly_power)
    emit_json(out, args.out)
    if args.radar:
        emit_plot_data(evaluation.RADAR_CSV_HEADER, rep.radar_rows(), args.radar)
    log.info("footprint reduction %.1f%% (rectangular) vs %.0f%% reported", fp,
             evaluation.REPORTED_FOOTPRINT_REDUCTION)
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="landair", description=__doc__.splitlines()[0],
                                 epilog=FORMATS, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True, metavar="command")

    def add(name, fn, help_):
        p = sub.add_parser(name, help=help_, epilog=FORMATS,
                           formatter_class=argparse.RawDescriptionHelpFormatter)
        p.set_defaults(func=fn)
        p.add_argument("--robot", type=Path, default=None, help="robot spec JSON (default: bundled)")
        p.add_argument("--set", action="append", default=[], metavar="KEY=VALUE",
                       help="override a spec key (dotted path), repeatable")
        p.add_argument("--out", default=None, help="output file (default stdout)")
        p.add_argument("-v", "--verbose", action="store_true", default=argparse.SUPPRESS)
        return p

    p = add("fit", cmd_fit, "fit battery and motor curves, rank candidate powertrains")
    p.add_argument("--motor-csv", type=Path)
    p.add_argument("--battery-csv", type=Path)
    p.add_argument("--degree", type=int, choices=(1, 2, 3))
    p.add_argument("--margin", type=float, default=1.5)

    p = add("endurance", cmd_endurance, "hover duration vs battery mass (CSV)")
    p.add_argument("--range", type=_pair, help="battery mass range lo,hi in kg")
    p.add_argument("--step", type=float)
    p.add_argument("--report", default=None, help="also write a JSON summary here")

    p = add("optimize-battery", cmd_optimize, "battery mass with the longest hover")
    p.add_argument("--range", type=_pair)
    p.add_argument("--coarse-step", type=float, default=0.1)
    p.add_argument("--refine-tol", type=float, default=0.01)

    p = add("simulate-arm", cmd_simulate, "fold-servo torque traces (CSV)")
    p.add_argument("--profile", choices=dynamics.PROFILES, default="speed_sweep")
    p.add_argument("--duration", type=float, default=10.0)
    p.add_argument("--dt", type=float, default=0.01)

    p = add("plan", cmd_plan, "minimum-energy hybrid path (CSV)")
    p.add_argument("--map", type=Path, required=True)
    p.add_argument("--start", type=_state, required=True, help="x,y,ground|airK")
    p.add_argument("--goal", type=_state, required=True)
    p.add_argument("--inflate", type=float, default=None, help="obstacle inflation radius, m")
    p.add_argument("--no-smooth", action="store_true")
    p.add_argument("--drive-only", action="store_true")

    p = add("evaluate", cmd_evaluate, "fleet indexes report (JSON); --set applies to index weights")
    p.add_argument("--fleet", type=Path, required=True)
    p.add_argument("--radar", default=None, help="radar rows CSV output")
    return ap


def run(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="landair: %(message)s", stream=sys.stderr, force=True)
    try:
        return args.func(args)
    except (FileNotFoundError, IsADirectoryError, PermissionError) as exc:
        print(f"landair: {exc}", file=sys.stderr)
        return 2
    except (LandAirError, ValueError, KeyError) as exc:
        print(f"landair: error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
