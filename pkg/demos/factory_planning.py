"""Planning drive/fly routes across the synthetic factory yard.

The yard has a long wall with a single gap, tall halls, a loading dock
that is too high to drive onto, and a fenced storage area that can only be
reached by air. Each goal is planned once drive-only and once hybrid.
"""
from landair.config import RobotSpec, data_path
from landair.errors import NoPathError
from landair.evaluation import energy_saving
from landair.planner import HybridState, inflate, plan, read_grid, smooth

spec = RobotSpec.load()
cost = spec.cost_model()
world = inflate(read_grid(data_path("factory.grid")), 1.0)
start = HybridState(20, 16, 0)
print(f"driving draws {energy_saving(cost.drive_power, cost.fly_power):.2f}% less power than flying;"
      f" per metre that is {cost.drive_rate:.0f} vs {cost.fly_rate:.0f} J")

for goal in (HybridState(34, 34, 0), HybridState(8, 37, 0), HybridState(37, 2, 0)):
    print(f"\ngoal {tuple(goal)}")
    try:
        d = plan(world, start, goal, cost, allow_flight=False)
        print(f"  drive only: {d.total_energy / 1e3:8.1f} kJ  {d.total_time:6.1f} s")
    except NoPathError:
        print("  drive only: unreachable")
    h = smooth(plan(world, start, goal, cost), world, cost)
    flown = sum(1 for s in h.states if s.layer)
    print(f"  hybrid:     {h.total_energy / 1e3:8.1f} kJ  {h.total_time:6.1f} s  "
          f"{h.switch_count} switches, {flown} waypoints in the air")
