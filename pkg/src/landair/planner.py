"""Energy-aware hybrid drive/fly planning on rasterised 2.5D maps.

The search graph has one node per (cell, layer). Layer 0 is the ground
(drive mode); layers 1..K are the air layers (fly mode). Ground moves are
8-connected, air moves 26-connected across adjacent layers, and a mode
switch connects a ground cell with the first air layer above it. Edge cost
is energy: power * (distance / speed), or switch_power * switch_time for a
mode switch.

Map file format (UTF-8 text, ``#`` comment lines ignored)::

    width height resolution_m n_air_layers alt_1 ... alt_K
    <height rows of width 0/1 flags>        ground blocked
    <height rows of width floats>           ground elevation, m
    <height rows of width 0/1 flags>        air layer 1
    ...                                     air layers 2..K

Row ``y`` of each matrix is line ``y``; column ``x`` is token ``x``.
"""
from __future__ import annotations

import heapq
import itertools
import math
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Callable, Iterator, NamedTuple, Sequence

import numpy as np
from scipy import ndimage

from .errors import InconsistentPathError, MapFormatError, NoPathError

PATH_CSV_HEADER = ("x", "y", "layer", "mode", "t_s", "e_j")

_GROUND_MOVES = tuple((dx, dy) for dx in (-1, 0, 1) for dy in (-1, 0, 1) if dx or dy)
_AIR_MOVES = tuple(m for m in itertools.product((-1, 0, 1), repeat=3) if any(m))


@dataclass(frozen=True, eq=False)
class GridWorld:
    width: int
    height: int
    resolution: float
    ground_blocked: np.ndarray  # (height, width) bool
    elevation: np.ndarray  # (height, width) float, m
    air_altitudes: tuple[float, ...] = ()
    air_blocked: np.ndarray = None  # (K, height, width) bool

    def __post_init__(self):
        if self.width < 1 or self.height < 1:
            raise ValueError("grid dimensions must be >= 1")
        if not self.resolution > 0:
            raise ValueError("resolution must be positive")
        shape = (self.height, self.width)
        gb = np.asarray(self.ground_blocked, dtype=bool)
        el = np.asarray(self.elevation, dtype=float)
        K = len(self.air_altitudes)
        ab = (np.zeros((0, *shape), dtype=bool) if self.air_blocked is None
              else np.asarray(self.air_blocked, dtype=bool))
        if gb.shape != shape or el.shape != shape or ab.shape != (K, *shape):
            raise ValueError("layer arrays do not match grid dimensions")
        if any(b <= a for a, b in zip(self.air_altitudes, self.air_altitudes[1:])):
            raise ValueError("air layer altitudes must be strictly increasing")
        for name, arr in (("ground_blocked", gb), ("elevation", el), ("air_blocked", ab)):
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)
        object.__setattr__(self, "air_altitudes", tuple(float(a) for a in self.air_altitudes))

    @classmethod
    def empty(cls, width: int, height: int, resolution: float = 1.0,
              air_altitudes: Sequence[float] = ()) -> "GridWorld":
        return cls(width, height, resolution, np.zeros((height, width), bool),
                   np.zeros((height, width)), tuple(air_altitudes),
                   np.zeros((len(air_altitudes), height, width), bool))

    @property
    def n_air(self) -> int:
        return len(self.air_altitudes)

    @property
    def n_layers(self) -> int:
        return 1 + self.n_air

    def layer_blocked(self, layer: int) -> np.ndarray:
        return self.ground_blocked if layer == 0 else self.air_blocked[layer - 1]

    def in_bounds(self, x: int, y: int, layer: int = 0) -> bool:
        return 0 <= x < self.width and 0 <= y < self.height and 0 <= layer < self.n_layers

    def blocked(self, x: int, y: int, layer: int = 0) -> bool:
        return bool(self.layer_blocked(layer)[y, x])

    def __eq__(self, other):
        if not isinstance(other, GridWorld):
            return NotImplemented
        return (self.width == other.width and self.height == other.height
                and self.resolution == other.resolution
                and self.air_altitudes == other.air_altitudes
                and np.array_equal(self.ground_blocked, other.ground_blocked)
                and np.array_equal(self.elevation, other.elevation)
                and np.array_equal(self.air_blocked, other.air_blocked))


def _tokens(text: str) -> list[list[str]]:
    lines = []
    for raw in text.splitlines():
        s = raw.strip()
        if s and not s.startswith("#"):
            lines.append(s.split())
    return lines


def load_grid(document: str) -> GridWorld:
    """Parse a map document (the text, not a path)."""
    lines = _tokens(document)
    if not lines:
        raise MapFormatError("empty map document")
    head = lines[0]
    try:
        width, height, n_air = int(head[0]), int(head[1]), int(head[3])
        resolution = float(head[2])
        alts = tuple(float(a) for a in head[4:])
    except (IndexError, ValueError):
        raise MapFormatError(f"bad header line: {' '.join(head)}") from None
    if len(alts) != n_air:
        raise MapFormatError(f"header declares {n_air} air layers but lists {len(alts)} altitudes")
    if width < 1 or height < 1:
        raise MapFormatError("grid dimensions must be >= 1")
    body = lines[1:]
    expected = height * (2 + n_air)
    if len(body) != expected:
        raise MapFormatError(f"expected {expected} matrix rows, found {len(body)}")
    if any(len(row) != width for row in body):
        raise MapFormatError(f"every matrix row must have {width} values")

    def flags(rows):
        if any(v not in ("0", "1") for r in rows for v in r):
            raise MapFormatError("occupancy values must be 0 or 1")
        return np.array([[v == "1" for v in r] for r in rows], dtype=bool)

    try:
        elevation = np.array([[float(v) for v in r] for r in body[height:2 * height]])
    except ValueError as exc:
        raise MapFormatError(f"bad elevation value: {exc}") from None
    ground = flags(body[:height])
    air = [flags(body[(2 + k) * height:(3 + k) * height]) for k in range(n_air)]
    try:
        return GridWorld(width, height, resolution, ground, elevation, alts,
                         np.array(air, dtype=bool).reshape(n_air, height, width))
    except ValueError as exc:
        raise MapFormatError(str(exc)) from None


def save_grid(world: GridWorld) -> str:
    def num(v):
        return repr(float(v))

    out = [" ".join([str(world.width), str(world.height), num(world.resolution), str(world.n_air)]
                    + [num(a) for a in world.air_altitudes])]
    out += [" ".join("1" if v else "0" for v in row) for row in world.ground_blocked]
    out += [" ".join(num(v) for v in row) for row in world.elevation]
    for layer in world.air_blocked:
        out += [" ".join("1" if v else "0" for v in row) for row in layer]
    return "\n".join(out) + "\n"


def read_grid(path: str | Path) -> GridWorld:
    return load_grid(Path(path).read_text(encoding="utf-8"))


def write_grid(world: GridWorld, path: str | Path) -> None:
    Path(path).write_text(save_grid(world), encoding="utf-8")


def inflate(world: GridWorld, radius: float) -> GridWorld:
    """Block every cell whose centre lies within ``radius`` metres of a blocked cell.

    Layers are inflated independently.
    """
    if radius < 0:
        raise ValueError("radius must be >= 0")
    r_cells = radius / world.resolution

    def grow(mask):
        if r_cells == 0 or not mask.any():
            return mask.copy()
        dist = ndimage.distance_transform_edt(~mask)
        return dist <= r_cells + 1e-9

    air = np.array([grow(m) for m in world.air_blocked], dtype=bool).reshape(world.air_blocked.shape)
    return replace(world, ground_blocked=grow(world.ground_blocked), air_blocked=air)


@dataclass(frozen=True)
class CostModel:
    drive_power: float = 2840.0  # W
    fly_power: float = 6276.0  # W
    drive_speed: float = 10.06  # m/s
    fly_speed: float = 7.47  # m/s
    switch_time: float = 5.0  # s
    switch_power: float | None = None  # W, defaults to drive_power
    max_step_height: float = 0.1  # m
    max_slope: float = 30.0  # deg

    def __post_init__(self):
        if min(self.drive_power, self.fly_power, self.drive_speed, self.fly_speed) <= 0:
            raise ValueError("powers and speeds must be positive")
        if self.switch_time < 0:
            raise ValueError("switch_time must be >= 0")
        if self.switch_power is None:
            object.__setattr__(self, "switch_power", self.drive_power)

    @property
    def drive_rate(self) -> float:
        """Energy per metre driven, J/m."""
        return self.drive_power / self.drive_speed

    @property
    def fly_rate(self) -> float:
        return self.fly_power / self.fly_speed

    @property
    def min_rate(self) -> float:
        return min(self.drive_rate, self.fly_rate)

    @property
    def switch_energy(self) -> float:
        return self.switch_power * self.switch_time


class HybridState(NamedTuple):
    x: int
    y: int
    layer: int = 0  # 0 ground, k >= 1 air layer k

    @property
    def mode(self) -> str:
        return "drive" if self.layer == 0 else "fly"

    @property
    def layer_name(self) -> str:
        return "ground" if self.layer == 0 else f"air{self.layer}"


def parse_state(text: str) -> HybridState:
    """Parse ``x,y,layer`` where layer is ``ground``, ``airK`` or an integer."""
    try:
        xs, ys, ls = (p.strip() for p in text.split(","))
        if ls == "ground":
            layer = 0
        elif ls.startswith("air"):
            layer = int(ls[3:].lstrip("_"))
        else:
            layer = int(ls)
        return HybridState(int(xs), int(ys), layer)
    except ValueError:
        raise ValueError(f"cannot parse state {text!r}; expected x,y,ground|airK") from None


@dataclass
class HybridPath:
    states: list[HybridState]
    segment_times: list[float]
    segment_energies: list[float]
    resolution: float
    air_altitudes: tuple[float, ...] = ()
    total_energy: float = 0.0
    total_time: float = 0.0
    switch_count: int = 0

    @property
    def modes(self) -> list[str]:
        return [s.mode for s in self.states]


def _segment(a: HybridState, b: HybridState, resolution: float, alts: Sequence[float],
             cost: CostModel) -> tuple[float, float, bool]:
    """(time, energy, is_switch) for one path segment."""
    dx, dy, dl = b.x - a.x, b.y - a.y, b.layer - a.layer
    if dl == 0 and (dx or dy):
        d = resolution * math.hypot(dx, dy)
        power, speed = ((cost.drive_power, cost.drive_speed) if a.layer == 0
                        else (cost.fly_power, cost.fly_speed))
        t = d / speed
        return t, power * t, False
    if dx == 0 and dy == 0 and {a.layer, b.layer} == {0, 1}:
        return cost.switch_time, cost.switch_energy, True
    if a.layer >= 1 and b.layer >= 1 and abs(dl) == 1 and abs(dx) <= 1 and abs(dy) <= 1:
        dz = alts[b.layer - 1] - alts[a.layer - 1]
        d = math.sqrt((resolution * dx) ** 2 + (resolution * dy) ** 2 + dz * dz)
        t = d / cost.fly_speed
        return t, cost.fly_power * t, False
    raise InconsistentPathError(f"states {tuple(a)} -> {tuple(b)} are not connected")


def make_path(states: Sequence[HybridState], resolution: float, air_altitudes: Sequence[float],
              cost: CostModel) -> HybridPath:
    states = [HybridState(*s) for s in states]
    times, energies, switches = [], [], 0
    for a, b in zip(states, states[1:]):
        t, e, sw = _segment(a, b, resolution, air_altitudes, cost)
        times.append(t)
        energies.append(e)
        switches += sw
    return HybridPath(states, times, energies, resolution, tuple(air_altitudes),
                      math.fsum(energies), math.fsum(times), switches)


def path_energy(path: HybridPath, cost: CostModel) -> tuple[float, float]:
    """Recompute (energy J, time s) of ``path`` from its states."""
    p = make_path(path.states, path.resolution, path.air_altitudes, cost)
    return p.total_energy, p.total_time


def _ground_edge_ok(world: GridWorld, cost: CostModel, x, y, nx, ny) -> bool:
    dh = abs(float(world.elevation[ny, nx] - world.elevation[y, x]))
    if dh == 0:
        return True
    d = world.resolution * math.hypot(nx - x, ny - y)
    return dh <= cost.max_step_height and math.degrees(math.atan2(dh, d)) <= cost.max_slope


def neighbors(world: GridWorld, cost: CostModel, s: HybridState,
              allow_flight: bool = True) -> Iterator[HybridState]:
    """States reachable from ``s`` in one move."""
    x, y, k = s
    if k == 0:
        gb = world.ground_blocked
        for dx, dy in _GROUND_MOVES:
            nx, ny = x + dx, y + dy
            if not (0 <= nx < world.width and 0 <= ny < world.height) or gb[ny, nx]:
                continue
            if dx and dy and (gb[y, nx] or gb[ny, x]):
                continue
            if _ground_edge_ok(world, cost, x, y, nx, ny):
                yield HybridState(nx, ny, 0)
        if allow_flight and world.n_air and not world.air_blocked[0, y, x]:
            yield HybridState(x, y, 1)
        return
    ab = world.air_blocked
    for dx, dy, dl in _AIR_MOVES:
        nx, ny, nk = x + dx, y + dy, k + dl
        if not (0 <= nx < world.width and 0 <= ny < world.height and 1 <= nk <= world.n_air):
            continue
        # every cell of the move's bounding box must be free (no corner cutting)
        if any(ab[kk - 1, yy, xx] for xx in {x, nx} for yy in {y, ny} for kk in {k, nk}):
            continue
        yield HybridState(nx, ny, nk)
    if k == 1 and not world.ground_blocked[y, x]:
        yield HybridState(x, y, 0)


def heuristic(world: GridWorld, cost: CostModel, s: HybridState, goal: HybridState) -> float:
    """Planar distance to goal times the cheapest energy per metre."""
    return world.resolution * math.hypot(goal.x - s.x, goal.y - s.y) * cost.min_rate


def plan(world: GridWorld, start: HybridState, goal: HybridState, cost: CostModel = CostModel(),
         allow_flight: bool = True,
         on_expand: Callable[[HybridState, float, float], None] | None = None) -> HybridPath:
    """Minimum-energy hybrid path from ``start`` to ``goal`` (A*).

    Costs are compared lexicographically as (energy, switch count). Equal
    priorities are broken by lower layer (drive first), then by cell
    (x, y). ``on_expand(state, g, h)`` is called for every expanded state.
    """
    start, goal = HybridState(*start), HybridState(*goal)
    for name, s in (("start", start), ("goal", goal)):
        if not world.in_bounds(*s):
            raise ValueError(f"{name} {tuple(s)} outside the map")
        if world.blocked(*s):
            raise NoPathError(f"{name} {tuple(s)} is blocked")
    if not allow_flight and (start.layer or goal.layer):
        raise NoPathError("drive-only planning needs ground start and goal")
    res, alts = world.resolution, world.air_altitudes
    best = {start: (0.0, 0)}
    parent: dict[HybridState, HybridState] = {}
    h0 = heuristic(world, cost, start, goal)
    heap = [(h0, 0, start.layer, start.x, start.y, start)]
    closed = set()
    while heap:
        _, sw, _, _, _, s = heapq.heappop(heap)
        if s in closed:
            continue
        closed.add(s)
        g = best[s][0]
        if on_expand is not None:
            on_expand(s, g, heuristic(world, cost, s, goal))
        if s == goal:
            break
        for n in neighbors(world, cost, s, allow_flight):
            if n in closed:
                continue
            _, e, is_sw = _segment(s, n, res, alts, cost)
            cand = (g + e, sw + is_sw)
            if n not in best or cand < best[n]:
                best[n] = cand
                parent[n] = s
                f = cand[0] + heuristic(world, cost, n, goal)
                heapq.heappush(heap, (f, cand[1], n.layer, n.x, n.y, n))
    else:
        raise NoPathError(f"no path from {tuple(start)} to {tuple(goal)}")
    states = [goal]
    while states[-1] != start:
        states.append(parent[states[-1]])
    return make_path(states[::-1], res, alts, cost)


def _ray_cells(a: HybridState, b: HybridState, eps: float = 1e-6) -> list[tuple[int, int]]:
    """Cells touched by the straight segment between two cell centres, in order.

    The segment is supersampled at 1/10 cell; each sample also probes a
    tiny box around itself so grazing a cell corner counts as touching it.
    """
    n = int(math.ceil(10 * math.hypot(b.x - a.x, b.y - a.y))) + 1
    seen, out = set(), []
    for t in np.linspace(0.0, 1.0, n):
        px, py = a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)
        for ox in (-eps, eps):
            for oy in (-eps, eps):
                c = (int(math.floor(px + ox + 0.5)), int(math.floor(py + oy + 0.5)))
                if c not in seen:
                    seen.add(c)
                    out.append(c)
    return out


def line_of_sight(world: GridWorld, cost: CostModel, a: HybridState, b: HybridState) -> bool:
    """True if a straight move from ``a`` to ``b`` on their shared layer is collision-free."""
    if a.layer != b.layer:
        return False
    blocked = world.layer_blocked(a.layer)
    cells = _ray_cells(a, b)
    for cx, cy in cells:
        if not (0 <= cx < world.width and 0 <= cy < world.height) or blocked[cy, cx]:
            return False
    if a.layer == 0:
        for (x0, y0), (x1, y1) in zip(cells, cells[1:]):
            if not _ground_edge_ok(world, cost, x0, y0, x1, y1):
                return False
    return True


def smooth(path: HybridPath, world: GridWorld, cost: CostModel = CostModel()) -> HybridPath:
    """Greedy line-of-sight shortcutting.

    Shortcuts only join states on the same layer with no layer change in
    between, so mode switches and altitude changes are kept as planned.
    """
    states = path.states
    if len(states) < 3:
        return path
    out = [states[0]]
    i = 0
    while i < len(states) - 1:
        run_end = i
        while run_end + 1 < len(states) and states[run_end + 1].layer == states[i].layer:
            run_end += 1
        j = i + 1
        for cand in range(run_end, i + 1, -1):
            if line_of_sight(world, cost, states[i], states[cand]):
                j = cand
                break
        out.append(states[j])
        i = j
    smoothed = make_path(out, path.resolution, path.air_altitudes, cost)
    if smoothed.total_energy > path.total_energy:
        return path
    return smoothed


def path_rows(path: HybridPath) -> list[tuple]:
    """(x, y, layer, mode, cumulative t_s, cumulative e_j) per state."""
    rows, t, e = [], 0.0, 0.0
    for i, s in enumerate(path.states):
        if i:
            t += path.segment_times[i - 1]
            e += path.segment_energies[i - 1]
        rows.append((s.x, s.y, s.layer_name, s.mode, t, e))
    return rows
