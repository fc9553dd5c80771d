"""Robot spec documents (JSON) and the bundled fixture pack."""
from __future__ import annotations

import copy
import json
import math
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from .dynamics import ArmGeometry, DynamicsParams, InertiaSet, RPM_TO_RAD_S
from .endurance import EnduranceConfig, PowerBudget, WeightBreakdown
from .planner import CostModel
from .powertrain import load_battery_csv, load_motor_csv


def data_path(name: str) -> Path:
    """Path of a file in the bundled fixture pack."""
    return Path(str(resources.files("landair") / "data" / name))


DEFAULT_ROBOT = "robot_default.json"


def _coerce(value: str):
    try:
        return json.loads(value)
    except json.JSONDecodeError:
        return value


def apply_overrides(doc: dict, overrides) -> dict:
    """Return a copy of ``doc`` with dotted ``key=value`` overrides applied.

    Values are parsed as JSON when possible (``3``, ``[1, 2]``, ``true``),
    otherwise kept as strings.
    """
    doc = copy.deepcopy(doc)
    for item in overrides or ():
        key, sep, value = item.partition("=")
        if not sep or not key:
            raise ValueError(f"override {item!r} is not key=value")
        node = doc
        parts = key.strip().split(".")
        for p in parts[:-1]:
            node = node.setdefault(p, {})
            if not isinstance(node, dict):
                raise ValueError(f"override {key!r} walks into a non-object")
        node[parts[-1]] = _coerce(value.strip())
    return doc


@dataclass
class RobotSpec:
    doc: dict
    base_dir: Path

    @classmethod
    def load(cls, path: str | Path | None = None, overrides=()) -> "RobotSpec":
        path = data_path(DEFAULT_ROBOT) if path is None else Path(path)
        doc = json.loads(path.read_text(encoding="utf-8"))
        return cls(apply_overrides(doc, overrides), path.parent)

    @property
    def name(self) -> str:
        return self.doc.get("name", "robot")

    def _file(self, name: str) -> Path:
        p = Path(name)
        return p if p.is_absolute() else self.base_dir / p

    @property
    def weights(self) -> WeightBreakdown:
        return WeightBreakdown(**self.doc["weights"])

    @property
    def unfolded(self) -> tuple[float, float]:
        return tuple(self.doc["dimensions"]["unfolded_m"])

    @property
    def folded(self) -> tuple[float, float]:
        return tuple(self.doc["dimensions"]["folded_m"])

    def battery_model(self):
        b = self.doc["battery"]
        return load_battery_csv(self._file(b["csv"]), b.get("nominal_voltage", 48.0))

    def powertrain(self):
        p = self.doc["powertrain"]
        return load_motor_csv(self._file(p["csv"]), p["motor_name"], p["kv"],
                              p["propeller_diameter"], p.get("degree", 2))

    def endurance_config(self) -> EnduranceConfig:
        e = self.doc["endurance"]
        return EnduranceConfig(
            rotor_count=int(e["rotor_count"]),
            nominal_voltage=float(e["nominal_voltage"]),
            battery_model=self.battery_model(),
            powertrain=self.powertrain(),
            fixed_mass=float(e["fixed_mass"]),
            power_budget=PowerBudget(**e.get("power_budget", {})),
            gravity=float(e.get("gravity", 9.81)),
        )

    def dynamics_params(self) -> DynamicsParams:
        d = self.doc["dynamics"]
        arms = tuple(
            ArmGeometry(a["arm_id"], float(a["mass"]), float(a["length"]),
                        math.radians(a.get("tilt_deg", 0.0)),
                        math.radians(a.get("fold_angle_deg", 135.0)),
                        math.radians(a["yaw_deg"]))
            for a in d["arms"])
        return DynamicsParams(
            arms=arms,
            inertia=InertiaSet(tuple(d["body_inertia"]), tuple(d["rotor_inertia"]),
                               tuple(d.get("damping", (0.0, 0.0, 0.0)))),
            thrust_coefficient=float(d["thrust_coefficient"]),
            drag_coefficient=float(d["drag_coefficient"]),
            total_mass=float(d["total_mass"]),
            hub_radius=float(d["hub_radius"]),
            max_speed=float(d.get("max_speed_rpm", 8000)) * RPM_TO_RAD_S,
            gravity=float(d.get("gravity", 9.81)),
        )

    def cost_model(self) -> CostModel:
        p = dict(self.doc.get("planner", {}))
        p.pop("inflate_radius", None)
        return CostModel(**p)

    @property
    def inflate_radius(self) -> float:
        return float(self.doc.get("planner", {}).get("inflate_radius", 0.0))
