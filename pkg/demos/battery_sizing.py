"""Sizing the battery for the bundled land-air robot.

Fits the synthetic battery and motor tables, sweeps battery mass, and finds
the pack that hovers longest before the motors run out of thrust.
"""
from landair.config import RobotSpec
from landair.endurance import (duration_curve, hover_current, no_fly_boundary,
                               optimize_battery_mass, per_rotor_thrust, total_weight)
from landair.powertrain import load_motor_csv, select_powertrain

spec = RobotSpec.load()
cfg = spec.endurance_config()
w = spec.weights
print(f"robot mass {total_weight(w):.2f} kg, of which battery {w.battery} kg")

bat = cfg.battery_model
print(f"battery fit: {bat.slope:.1f} Wh/kg, intercept {bat.intercept:.1f} Wh "
      f"(rms {bat.residual_rms:.2f} Wh)")

# hover point for the pack the robot actually carries
T = per_rotor_thrust(cfg, w.battery)
print(f"hover thrust {T:.2f} N per rotor, current {hover_current(cfg, w.battery):.2f} A")

# which motor would we pick for that hover point, with 50% thrust headroom?
cands = [load_motor_csv(spec._file(c["csv"]), c["motor_name"], c["kv"], c["propeller_diameter"])
         for c in spec.doc["candidates"]]
sel = select_powertrain(cands, T, margin=1.5)
for pt in sel.feasible:
    print(f"  feasible: {pt.motor_name} at {pt.efficiency_curve(T):.2f} g/W")
for pt, why in sel.infeasible:
    print(f"  rejected: {pt.motor_name} ({why})")

print("\nbattery kg   hover min")
for p in duration_curve(cfg, (1.0, 24.0), 1.0):
    label = f"{p.duration_min:7.2f}" if p.feasible else "  no-fly"
    print(f"{p.battery_mass:9.1f}  {label}")

m, t = optimize_battery_mass(cfg, (0.5, 12.0))
print(f"\nbest pack {m:.3f} kg -> {t:.2f} min; heaviest liftable pack {no_fly_boundary(cfg):.2f} kg")
