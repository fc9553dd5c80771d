"""Rigid-body torque stack for the quadrotor and servo loads on folding arms.

Frames: body x forward, y left, z up. Each arm has its own frame obtained by
rotating the body frame about z by the arm's deployed yaw, so arm-frame x
points radially outward along the arm.

The servo load model (``servo_torque``) is an additive envelope of four
non-negative contributions at the fold hinge:

* gravity/specific force: arm weight acting at L/2. The droop lever is
  scaled by cos(tilt) and a tilted fold axis picks up an extra sin(tilt)
  share, so tilted arms carry a static load even with rotors idle.
* rotor thrust k_T*W^2 acting at the tip; only a tilted arm has a component
  about the fold axis (lever L*sin(tilt)).
* rotor drag torque k_Q*W^2 projected on the fold axis (cos(tilt)).
* inertial: lateral d'Alembert load m*a_perp*L/2 plus arm inertia times the
  body yaw acceleration.

Terms are summed as magnitudes (no cancellation credit), so for a level,
unaccelerated body the load is exactly static + c*W^2.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

GRAVITY = 9.81
FRONT_TILT = math.radians(20.0)
DEPLOYED_FOLD = math.radians(135.0)
ARM_IDS = ("fl", "fr", "rl", "rr")
# rotor index order i=1..4 walking around the body; spin sign (-1)**(i+1)
ROTOR_ORDER = ("fl", "fr", "rr", "rl")
DEFAULT_YAWS = {"fl": math.radians(45), "fr": math.radians(-45),
                "rl": math.radians(135), "rr": math.radians(-135)}
RPM_TO_RAD_S = 2 * math.pi / 60


def _mat3(J) -> np.ndarray:
    J = np.asarray(J, dtype=float)
    return np.diag(J) if J.shape == (3,) else J


def spin_signs(n: int = 4) -> np.ndarray:
    return np.array([(-1.0) ** (i + 1) for i in range(1, n + 1)])


def gyroscopic_torque(omega_b, J_r, speeds) -> np.ndarray:
    """Sum over rotors of omega_b x (J_r @ [0, 0, (-1)^(i+1) W_i])."""
    omega_b = np.asarray(omega_b, dtype=float)
    speeds = np.asarray(speeds, dtype=float)
    Jr = _mat3(J_r)
    out = np.zeros(3)
    for s, w in zip(spin_signs(len(speeds)), speeds):
        out += np.cross(omega_b, Jr @ np.array([0.0, 0.0, s * w]))
    return out


def friction_torque(damping, euler_rates) -> np.ndarray:
    return np.asarray(damping, dtype=float) * np.asarray(euler_rates, dtype=float)


def body_torque(J_b, omega_dot, omega, M_g, M_d) -> np.ndarray:
    """M_b = J_b w_dot + w x J_b w + M_g + M_d."""
    Jb = _mat3(J_b)
    omega = np.asarray(omega, dtype=float)
    return (Jb @ np.asarray(omega_dot, dtype=float) + np.cross(omega, Jb @ omega)
            + np.asarray(M_g, dtype=float) + np.asarray(M_d, dtype=float))


def arm_inertia(mass: float, length: float, tilt: float = 0.0, is_front: bool = False) -> float:
    """Slender-rod inertia about the steering-gear axis (kg m^2)."""
    if not (mass > 0 and length > 0):
        raise ValueError("arm mass and length must be positive")
    J = mass / 12.0 * length ** 2
    return J * math.cos(tilt) if is_front else J


def rotz(theta: float) -> np.ndarray:
    c, s = math.cos(theta), math.sin(theta)
    return np.array([[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]])


def rotate_inertia(J_arm, theta: float) -> np.ndarray:
    R = rotz(theta)
    return R @ _mat3(J_arm) @ R.T


def arm_forces(masses, accel, yaws) -> np.ndarray:
    """Per-arm force m_i * accel expressed in each arm frame, shape (n, 3)."""
    masses = np.atleast_1d(np.asarray(masses, dtype=float))
    if np.any(masses <= 0):
        raise ValueError("arm masses must be positive")
    accel = np.asarray(accel, dtype=float)
    yaws = np.broadcast_to(np.atleast_1d(np.asarray(yaws, dtype=float)), masses.shape)
    return np.array([rotz(th).T @ (m * accel) for m, th in zip(masses, yaws)])


@dataclass(frozen=True)
class ArmGeometry:
    arm_id: str
    mass: float
    length: float
    tilt: float = 0.0
    fold_angle: float = DEPLOYED_FOLD
    yaw: float = 0.0

    def __post_init__(self):
        if self.arm_id not in ARM_IDS:
            raise ValueError(f"arm_id must be one of {ARM_IDS}")
        if not (self.mass > 0 and self.length > 0):
            raise ValueError("arm mass and length must be positive")
        if not 0 <= self.tilt < math.pi / 2:
            raise ValueError("tilt must be in [0, pi/2)")
        if not 0 <= self.fold_angle <= DEPLOYED_FOLD + 1e-12:
            raise ValueError("fold_angle must be in [0, 3pi/4]")

    @property
    def is_front(self) -> bool:
        return self.arm_id.startswith("f")

    @property
    def deployed(self) -> bool:
        return abs(self.fold_angle - DEPLOYED_FOLD) < 1e-9

    @property
    def inertia(self) -> float:
        return arm_inertia(self.mass, self.length, self.tilt, self.is_front)


@dataclass(frozen=True)
class RotorCommand:
    speeds: tuple[float, ...]
    thrust_coefficient: float
    drag_coefficient: float

    def __post_init__(self):
        if any(w < 0 for w in self.speeds):
            raise ValueError("rotor speeds must be >= 0")
        if not (self.thrust_coefficient > 0 and self.drag_coefficient > 0):
            raise ValueError("rotor coefficients must be positive")


@dataclass(frozen=True)
class InertiaSet:
    body: tuple[float, float, float]
    rotor: tuple[float, float, float]
    damping: tuple[float, float, float] = (0.0, 0.0, 0.0)

    def __post_init__(self):
        if min(self.body) <= 0 or min(self.rotor) <= 0:
            raise ValueError("inertia diagonals must be positive")
        if min(self.damping) < 0:
            raise ValueError("damping must be >= 0")


def servo_torque_terms(arm: ArmGeometry, rotor: RotorCommand, speed: float, accel=(0.0, 0.0, 0.0),
                       g: float = GRAVITY, *, gravity_body=None, angular_accel=None) -> dict:
    """Individual hinge-load contributions in N*m (see module docstring)."""
    if not arm.deployed:
        raise ValueError(f"arm {arm.arm_id} not deployed; servo torque model undefined mid-fold")
    if speed < 0:
        raise ValueError("rotor speed must be >= 0")
    gvec = np.array([0.0, 0.0, -g]) if gravity_body is None else np.asarray(gravity_body, float)
    specific = np.asarray(accel, dtype=float) - gvec
    F = arm_forces([arm.mass], specific, [arm.yaw])[0]
    half = arm.length / 2
    ct, st = math.cos(arm.tilt), math.sin(arm.tilt)
    w2 = speed * speed
    alpha_z = 0.0 if angular_accel is None else float(np.asarray(angular_accel, float)[2])
    return {
        "gravity": half * abs(F[2]) * (ct + st),
        "thrust": rotor.thrust_coefficient * w2 * arm.length * st,
        "drag": rotor.drag_coefficient * w2 * ct,
        "inertial": half * abs(F[1]) + arm.inertia * abs(alpha_z),
    }


def servo_torque(arm: ArmGeometry, rotor: RotorCommand, speed: float, accel=(0.0, 0.0, 0.0),
                 g: float = GRAVITY, *, gravity_body=None, angular_accel=None) -> float:
    """Fold-servo load in N*mm for one deployed arm.

    ``accel`` is the body-frame linear acceleration; ``gravity_body`` (if
    given) overrides the level-body gravity vector (0, 0, -g).
    """
    terms = servo_torque_terms(arm, rotor, speed, accel, g, gravity_body=gravity_body,
                               angular_accel=angular_accel)
    return 1000.0 * sum(terms.values())


# --- simulation --------------------------------------------------------------

@dataclass(frozen=True)
class DynamicsParams:
    arms: tuple[ArmGeometry, ...]
    inertia: InertiaSet
    thrust_coefficient: float
    drag_coefficient: float
    total_mass: float
    hub_radius: float  # body centre to hinge, m
    max_speed: float = 8000 * RPM_TO_RAD_S  # rad/s
    gravity: float = GRAVITY

    def arm(self, arm_id: str) -> ArmGeometry:
        for a in self.arms:
            if a.arm_id == arm_id:
                return a
        raise KeyError(arm_id)

    def rotor(self, speeds=(0.0, 0.0, 0.0, 0.0)) -> RotorCommand:
        return RotorCommand(tuple(float(s) for s in speeds), self.thrust_coefficient,
                            self.drag_coefficient)


@dataclass
class TorqueSeries:
    profile: str
    t: np.ndarray  # (N,)
    arm_ids: tuple[str, ...]
    torque_nmm: np.ndarray  # (N, n_arms)
    speeds: np.ndarray = field(default=None)  # (N, n_arms) rad/s

    def arm(self, arm_id: str) -> np.ndarray:
        return self.torque_nmm[:, self.arm_ids.index(arm_id)]

    def peak(self, arm_id: str) -> float:
        return float(self.arm(arm_id).max())

    def rows(self):
        """(t, arm_id, torque) rows ordered by time then arm id."""
        order = sorted(range(len(self.arm_ids)), key=lambda k: self.arm_ids[k])
        for n, tn in enumerate(self.t):
            for k in order:
                yield float(tn), self.arm_ids[k], float(self.torque_nmm[n, k])


PROFILES = ("hover", "accel_x_15deg", "accel_y_15deg", "sinusoid", "speed_sweep")


def _smooth_pulse(t: np.ndarray, duration: float, ramp: float) -> np.ndarray:
    def up(u):
        u = np.clip(u / ramp, 0.0, 1.0)
        return 0.5 * (1 - np.cos(np.pi * u))
    return np.minimum(up(t), up(duration - t))


def _attitude_from_thrust(f_world: np.ndarray, yaw: float = 0.0) -> np.ndarray:
    zb = f_world / np.linalg.norm(f_world)
    xc = np.array([math.cos(yaw), math.sin(yaw), 0.0])
    yb = np.cross(zb, xc)
    yb /= np.linalg.norm(yb)
    xb = np.cross(yb, zb)
    return np.column_stack([xb, yb, zb])


def _euler_zyx(R: np.ndarray) -> np.ndarray:
    return np.array([math.atan2(R[2, 1], R[2, 2]), -math.asin(np.clip(R[2, 0], -1, 1)),
                     math.atan2(R[1, 0], R[0, 0])])


def _euler_rate_matrix(phi: float, theta: float) -> np.ndarray:
    sp, cp, st, ct = math.sin(phi), math.cos(phi), math.sin(theta), math.cos(theta)
    return np.array([[1, 0, -st], [0, cp, sp * ct], [0, -sp, cp * ct]])


def _mixer(params: DynamicsParams) -> np.ndarray:
    """Map per-rotor thrusts (ROTOR_ORDER) to [total thrust, Mx, My, Mz]."""
    kq_over_kt = params.drag_coefficient / params.thrust_coefficient
    A = np.zeros((4, 4))
    for i, (aid, s) in enumerate(zip(ROTOR_ORDER, spin_signs())):
        arm = params.arm(aid)
        r = params.hub_radius + arm.length * math.cos(arm.tilt)
        x, y = r * math.cos(arm.yaw), r * math.sin(arm.yaw)
        A[:, i] = [1.0, y, -x, -s * kq_over_kt]
    return A


def _reference(profile: str, t: np.ndarray, duration: float, g: float):
    """World-frame acceleration (N, 3) and yaw (N,) for a kinematic profile."""
    a = np.zeros((len(t), 3))
    if profile in ("accel_x_15deg", "accel_y_15deg"):
        tilt = math.radians(15.0) * _smooth_pulse(t, duration, min(1.0, duration / 2))
        a[:, 0 if profile == "accel_x_15deg" else 1] = g * np.tan(tilt)
    elif profile == "sinusoid":
        amp, w = SINUSOID_AMPLITUDE, 2 * math.pi / SINUSOID_PERIOD
        a[:, 1] = -amp * w * w * np.sin(w * t)
    return a, np.zeros(len(t))


SINUSOID_AMPLITUDE = 1.0  # m, lateral
SINUSOID_PERIOD = 5.0  # s
SINUSOID_FORWARD_SPEED = 2.0  # m/s; constant, so it does not enter the loads


def simulate_profile(profile: str, params: DynamicsParams, duration: float,
                     dt: float) -> TorqueSeries:
    """Open-loop torque traces for the four fold servos.

    The kinematic reference fixes the acceleration; attitude follows from
    the thrust direction, body rates and accelerations are finite
    differences, the rigid-body stack gives the required body moment and a
    quad-X mixer turns that into rotor speeds (capped at ``max_speed``).
    """
    if profile not in PROFILES:
        raise ValueError(f"unknown profile {profile!r}; choose from {PROFILES}")
    if not dt > 0:
        raise ValueError("dt must be positive")
    if dt >= duration:
        raise ValueError("dt must be smaller than duration")
    n = int(round(duration / dt)) + 1
    t = dt * np.arange(n)
    g = params.gravity
    ids = tuple(sorted(a.arm_id for a in params.arms))
    torque = np.zeros((n, len(ids)))
    speeds = np.zeros((n, len(ids)))

    if profile == "speed_sweep":
        sweep = np.linspace(0.0, params.max_speed, n)
        for k, aid in enumerate(ids):
            arm = params.arm(aid)
            rotor = params.rotor([0.0] * 4)
            for j, w in enumerate(sweep):
                torque[j, k] = servo_torque(arm, rotor, float(w), g=g)
            speeds[:, k] = sweep
        return TorqueSeries(profile, t, ids, torque, speeds)

    a_world, yaw = _reference(profile, t, duration, g)
    gw = np.array([0.0, 0.0, -g])
    Rs = [_attitude_from_thrust(a_world[j] - gw, yaw[j]) for j in range(n)]
    euler = np.unwrap(np.array([_euler_zyx(R) for R in Rs]), axis=0)
    euler_rates = np.gradient(euler, dt, axis=0, edge_order=2)
    omega = np.array([_euler_rate_matrix(e[0], e[1]) @ r for e, r in zip(euler, euler_rates)])
    omega_dot = np.gradient(omega, dt, axis=0, edge_order=2)

    A = _mixer(params)
    kT = params.thrust_coefficient
    inertia = params.inertia
    col = {aid: ROTOR_ORDER.index(aid) for aid in ids}
    for j in range(n):
        R = Rs[j]
        total = params.total_mass * float(np.linalg.norm(a_world[j] - gw))
        # gyroscopic term evaluated at the equal-split speeds, then one allocation pass
        w_eq = np.full(4, math.sqrt(total / 4 / kT))
        M_g = gyroscopic_torque(omega[j], inertia.rotor, w_eq)
        M_d = friction_torque(inertia.damping, euler_rates[j])
        M_b = body_torque(inertia.body, omega_dot[j], omega[j], M_g, M_d)
        thrusts = np.clip(np.linalg.solve(A, np.concatenate([[total], M_b])), 0.0, None)
        w = np.minimum(np.sqrt(thrusts / kT), params.max_speed)
        rotor = params.rotor(w)
        acc_b = R.T @ a_world[j]
        g_b = R.T @ gw
        for k, aid in enumerate(ids):
            wi = float(w[col[aid]])
            speeds[j, k] = wi
            torque[j, k] = servo_torque(params.arm(aid), rotor, wi, acc_b, g,
                                        gravity_body=g_b, angular_accel=omega_dot[j])
    return TorqueSeries(profile, t, ids, torque, speeds)
