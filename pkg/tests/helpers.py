"""Synthetic configurations shared by several test modules."""
import numpy as np

from landair.endurance import EnduranceConfig, PowerBudget
from landair.powertrain import BatteryModel, PowerTrainModel, ThrustCurve, fit_poly


def superlinear_config():
    """Light airframe whose per-motor current grows like thrust**1.5.

    The power law is sampled densely and fitted with a cubic on 1..40 N,
    which keeps the curve convex and increasing over the whole range.
    """
    T = np.linspace(1.0, 40.0, 80)
    cur = fit_poly(np.column_stack([T, 0.2 * T ** 1.5]), 3, "current")
    eff = fit_poly(np.column_stack([T, 10.0 - 0.1 * T]), 1, "efficiency")
    pt = PowerTrainModel("synthetic-1.5", 300, cur, eff, 15)
    return EnduranceConfig(4, 24.0, BatteryModel(250.0, 0.0, 24.0), pt, 2.0,
                           PowerBudget(20.0, 20.0, 10.0))


def linear_config():
    cur = ThrustCurve("current", (0.5, 0.3), (5.0, 60.0))
    eff = ThrustCurve("efficiency", (8.0,), (5.0, 60.0))
    pt = PowerTrainModel("synthetic-linear", 300, cur, eff, 15)
    return EnduranceConfig(4, 24.0, BatteryModel(250.0, 0.0, 24.0), pt, 2.0,
                           PowerBudget(20.0, 20.0, 10.0))


def brute_force_optimum(config, lo, hi, step=0.001):
    from landair.endurance import duration_at
    from landair.errors import OutOfRangeError
    best = (None, -np.inf)
    for m in np.arange(lo, hi + step / 2, step):
        try:
            t = duration_at(config, float(m))
        except OutOfRangeError:
            continue
        if t > best[1]:
            best = (float(m), t)
    return best


# --- planner oracles ----------------------------------------------------------

def random_world(rng, max_side=20):
    from landair.planner import GridWorld
    w, h = (int(v) for v in rng.integers(2, max_side + 1, size=2))
    k = int(rng.integers(1, 3))
    res = float(rng.choice([0.15, 1.0, 2.0]))
    ground = rng.random((h, w)) < rng.uniform(0.0, 0.35)
    elev = rng.choice([0.0, 0.0, 0.0, 0.08, 0.3], size=(h, w))
    air = rng.random((k, h, w)) < rng.uniform(0.0, 0.3)
    alts = tuple(sorted(rng.choice(np.arange(2.0, 20.0), size=k, replace=False)))
    return GridWorld(w, h, res, ground, elev, alts, air)


def free_cell(rng, world, layer=0):
    free = np.argwhere(~world.layer_blocked(layer))
    if len(free) == 0:
        return None
    y, x = free[rng.integers(len(free))]
    return (int(x), int(y), layer)


def oracle_graph(world, cost, allow_flight=True):
    """The hybrid search graph enumerated from the movement rules, as a networkx DiGraph.

    Written independently of the planner's neighbour generator; node keys are
    (x, y, layer) tuples and edge weights are energies in J.
    """
    import itertools
    import math
    import networkx as nx
    G = nx.DiGraph()
    W, H, K, r = world.width, world.height, world.n_air, world.resolution
    gb, el, ab = world.ground_blocked, world.elevation, world.air_blocked

    def free(x, y, layer):
        if not (0 <= x < W and 0 <= y < H):
            return False
        return not (gb[y, x] if layer == 0 else ab[layer - 1, y, x])

    for y in range(H):
        for x in range(W):
            for layer in range(K + 1):
                if free(x, y, layer):
                    G.add_node((x, y, layer))
    for (x, y, layer) in list(G.nodes):
        if layer == 0:
            for dx, dy in itertools.product((-1, 0, 1), repeat=2):
                if (dx, dy) == (0, 0) or not free(x + dx, y + dy, 0):
                    continue
                if dx and dy and not (free(x + dx, y, 0) and free(x, y + dy, 0)):
                    continue
                d = r * math.hypot(dx, dy)
                dh = abs(el[y + dy, x + dx] - el[y, x])
                if dh > 0 and (dh > cost.max_step_height
                               or math.degrees(math.atan(dh / d)) > cost.max_slope):
                    continue
                G.add_edge((x, y, 0), (x + dx, y + dy, 0), weight=cost.drive_power * d / cost.drive_speed)
            if allow_flight and K and free(x, y, 1):
                G.add_edge((x, y, 0), (x, y, 1), weight=cost.switch_power * cost.switch_time)
        else:
            if free(x, y, 0) and layer == 1:
                G.add_edge((x, y, 1), (x, y, 0), weight=cost.switch_power * cost.switch_time)
            for dx, dy, dl in itertools.product((-1, 0, 1), repeat=3):
                nl = layer + dl
                if (dx, dy, dl) == (0, 0, 0) or not 1 <= nl <= K:
                    continue
                box = [(xx, yy, ll) for xx in {x, x + dx} for yy in {y, y + dy} for ll in {layer, nl}]
                if not all(free(*c) for c in box):
                    continue
                dz = world.air_altitudes[nl - 1] - world.air_altitudes[layer - 1]
                d = math.sqrt((r * dx) ** 2 + (r * dy) ** 2 + dz * dz)
                G.add_edge((x, y, layer), (x + dx, y + dy, nl), weight=cost.fly_power * d / cost.fly_speed)
    return G


def wall_detour_world(gap_offset, side=20, resolution=40.0):
    """Open yard split by a ground wall at column side//2 with one gap ``gap_offset`` rows off the centre line."""
    from landair.planner import GridWorld
    ground = np.zeros((side, side), bool)
    ground[:, side // 2] = True
    ground[side // 2 + gap_offset, side // 2] = False
    return GridWorld(side, side, resolution, ground, np.zeros((side, side)), (10.0,),
                     np.zeros((1, side, side), bool))
