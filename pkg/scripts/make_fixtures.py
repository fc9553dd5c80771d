"""Regenerate the bundled fixture pack in src/landair/data/.

Every table written here is synthetic: no manufacturer motor tables or
battery datasheets are reproduced. Only the robot-level figures
(dimensions, masses, speeds, pack rating) are measured values.
"""
import json
import math
from pathlib import Path

import numpy as np

OUT = Path(__file__).resolve().parents[1] / "src" / "landair" / "data"
G = 9.81

# (name, kv, thrust grid lo/hi/step in N, idle current A, curvature, knee N)
# current = idle + curvature * (T - knee)^2; the 170 KV set is tuned so the
# 17 kg + battery hover optimum sits near 5.7 kg with a 48 V / ~250 Wh/kg pack
MOTORS = [
    ("MN805S-170KV", 170, (36.0, 96.0, 4.0), 2.0, 0.03413, 34.1),
    ("MN805S-150KV", 150, (36.0, 88.0, 4.0), 2.2, 0.03700, 34.1),
    ("MN801S-160KV", 160, (36.0, 80.0, 4.0), 2.4, 0.03900, 33.0),
    ("MN705S-135KV", 135, (28.0, 72.0, 4.0), 1.6, 0.04200, 26.0),
]


def motor_csv(name, kv, grid, idle, curv, knee, voltage=48.0):
    lo, hi, step = grid
    T = np.arange(lo, hi + step / 2, step)
    # deterministic +-0.4% ripple stands in for bench noise
    ripple = 1.0 + 0.004 * np.sin(1.7 * np.arange(len(T)))
    I = (idle + curv * (T - knee) ** 2) * ripple
    eff = (T / G * 1000.0) / (voltage * I)
    lines = [f"# SYNTHETIC motor/propeller table for {name} ({kv} KV, 26 inch), not measured data",
             "thrust_n,current_a,efficiency_g_per_w"]
    lines += [f"{t:.1f},{i:.4f},{e:.4f}" for t, i, e in zip(T, I, eff)]
    return "\n".join(lines) + "\n"


def battery_csv():
    # three synthetic brands around 250 Wh/kg; the 5.74 kg pack stores ~1440 Wh
    rows = []
    for brand, density, offset in (("A", 252.0, -3.0), ("B", 249.0, 4.0), ("C", 250.5, 0.0)):
        for m in (1.5, 2.5, 3.5, 4.5, 5.5, 6.5, 7.5):
            rows.append((m, density * m + offset))
    lines = ["# SYNTHETIC battery mass/capacity pairs from three brands (A, B, C)",
             "mass_kg,capacity_wh"]
    lines += [f"{m:.2f},{c:.2f}" for m, c in sorted(rows)]
    return "\n".join(lines) + "\n"


def robot_json():
    arm_mass, arm_len = 0.66, 0.24
    arms = [
        {"arm_id": "fl", "mass": arm_mass, "length": arm_len, "tilt_deg": 20.0, "yaw_deg": 45.0},
        {"arm_id": "fr", "mass": arm_mass, "length": arm_len, "tilt_deg": 20.0, "yaw_deg": -45.0},
        {"arm_id": "rl", "mass": arm_mass, "length": arm_len, "tilt_deg": 0.0, "yaw_deg": 135.0},
        {"arm_id": "rr", "mass": arm_mass, "length": arm_len, "tilt_deg": 0.0, "yaw_deg": -135.0},
    ]
    for a in arms:
        a["fold_angle_deg"] = 135.0
    w_max = 8000 * 2 * math.pi / 60
    return {
        "name": "deformable land-air robot",
        "notes": [
            "dimensions, weights, speeds, KV, propeller size and pack rating are the measured robot figures",
            "SYNTHETIC: battery/motor CSVs, power_budget split, all dynamics coefficients and inertias",
            "dynamics calibrated so 4 rotors at 8000 rpm lift the robot with ~9% margin",
        ],
        "dimensions": {"unfolded_m": [1.25, 1.25], "folded_m": [0.585, 0.67], "body_height_m": 0.552},
        "weights": {"frame": 7.07, "battery": 5.74, "deform_module": 7.61, "avionics": 0.0,
                    "payload": 4.2},
        "speeds": {"max_flying": 7.47, "max_driving": 10.06},
        "battery": {"csv": "battery_synthetic.csv", "nominal_voltage": 48.0, "capacity_ah": 30.0},
        "powertrain": {"csv": "motor_mn805s_170kv_synthetic.csv", "motor_name": "MN805S-170KV",
                       "kv": 170, "propeller_diameter": 26, "degree": 2},
        "candidates": [
            {"csv": f"motor_{n.lower().replace('-', '_')}_synthetic.csv", "motor_name": n,
             "kv": kv, "propeller_diameter": 26}
            for n, kv, *_ in MOTORS
        ],
        "endurance": {"rotor_count": 4, "nominal_voltage": 48.0, "fixed_mass": 17.0, "gravity": G,
                      "power_budget": {"avionics": 150.0, "perception": 250.0, "deform": 143.0},
                      "mass_range": [0.5, 12.0], "step": 0.05},
        "dynamics": {
            "arms": arms,
            "hub_radius": 0.18,
            "thrust_coefficient": round(66.0 / w_max ** 2, 10),
            "drag_coefficient": 1.33e-06,
            "max_speed_rpm": 8000,
            "total_mass": 24.62,
            "body_inertia": [0.9, 0.9, 1.6],
            "rotor_inertia": [0.002, 0.002, 0.004],
            "damping": [0.05, 0.05, 0.08],
            "gravity": G,
        },
        "planner": {"drive_power": 2840.0, "fly_power": 6276.0, "drive_speed": 10.06,
                    "fly_speed": 7.47, "switch_time": 5.0, "switch_power": 2840.0,
                    "max_step_height": 0.1, "max_slope": 30.0, "inflate_radius": 0.0},
    }


def fleet_json():
    return [
        {"name": "deformable", "t_f": 21.6, "p": 4.2, "v_f": 7.47, "m_d": 20.0, "h_o": 100.0,
         "v_d": 10.06, "S_land": 1.5625, "S_air": 0.39195, "T_s": 5.0, "G": 24.62},
        {"name": "synthetic_cage", "t_f": 8.0, "p": 0.3, "v_f": 5.0, "m_d": 3.0, "h_o": 20.0,
         "v_d": 2.0, "S_land": 0.25, "S_air": 0.25, "T_s": 0.5, "G": 1.2},
        {"name": "synthetic_wheeled_quad", "t_f": 12.0, "p": 1.0, "v_f": 10.0, "m_d": 6.0,
         "h_o": 50.0, "v_d": 3.0, "S_land": 0.6, "S_air": 0.5, "T_s": 2.0, "G": 3.5},
        {"name": "synthetic_large_hybrid", "t_f": 15.0, "p": 2.0, "v_f": 8.0, "m_d": 10.0,
         "h_o": 80.0, "v_d": 5.0, "S_land": 1.0, "S_air": 0.8, "T_s": 3.0, "G": 8.0},
    ]


def factory_grid():
    """40 x 40 synthetic factory yard at 2 m/cell, air layers at 6 m and 15 m."""
    W = H = 40
    ground = np.zeros((H, W), bool)
    elev = np.zeros((H, W))
    air1 = np.zeros((H, W), bool)
    air2 = np.zeros((H, W), bool)

    def block(x0, x1, y0, y1, tall=False):
        ground[y0:y1, x0:x1] = True
        if tall:
            air1[y0:y1, x0:x1] = True

    # workshop halls (tall) and low sheds
    block(4, 14, 4, 12, tall=True)
    block(26, 36, 4, 10, tall=True)
    block(6, 12, 26, 34)
    # perimeter fence around the north-east storage yard: only reachable by air
    block(28, 40, 28, 29)
    block(28, 29, 28, 40)
    # long wall with a single gap far to the west
    block(3, 38, 20, 21)
    ground[20, 3:5] = False
    # loading dock: 0.5 m step, not drivable
    elev[14:18, 30:38] = 0.5
    # chimney reaching into the upper layer
    block(18, 20, 30, 32, tall=True)
    air2[30:32, 18:20] = True

    lines = [f"# SYNTHETIC factory yard map; start (20,16,ground); goals (34,34), (8,37), (37,2)",
             f"{W} {H} 2.0 2 6.0 15.0"]
    lines += [" ".join("1" if v else "0" for v in r) for r in ground]
    lines += [" ".join(repr(float(v)) for v in r) for r in elev]
    for layer in (air1, air2):
        lines += [" ".join("1" if v else "0" for v in r) for r in layer]
    return "\n".join(lines) + "\n"


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    for name, kv, grid, idle, curv, knee in MOTORS:
        fn = f"motor_{name.lower().replace('-', '_')}_synthetic.csv"
        (OUT / fn).write_text(motor_csv(name, kv, grid, idle, curv, knee), encoding="utf-8")
    (OUT / "battery_synthetic.csv").write_text(battery_csv(), encoding="utf-8")
    (OUT / "robot_default.json").write_text(json.dumps(robot_json(), indent=2) + "\n", encoding="utf-8")
    (OUT / "fleet_synthetic.json").write_text(json.dumps(fleet_json(), indent=2) + "\n",
                                              encoding="utf-8")
    (OUT / "factory.grid").write_text(factory_grid(), encoding="utf-8")


if __name__ == "__main__":
    main()
