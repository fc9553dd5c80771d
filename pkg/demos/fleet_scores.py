"""Scoring the robot against a small synthetic fleet.

Every metric is Min-Max normalised across the fleet, so the scores only
mean something relative to the other robots in the comparison.
"""
from landair.config import RobotSpec, data_path
from landair.evaluation import WeightSet, evaluate_fleet, footprint_reduction, load_fleet

fleet = load_fleet(data_path("fleet_synthetic.json").read_text(encoding="utf-8"))

for label, weights in (("equal weights", WeightSet()),
                       ("payload matters x3", WeightSet(p=3.0)),
                       ("no mass penalty", WeightSet(w_G=0.0))):
    rep = evaluate_fleet(fleet, weights)
    print(f"\n{label}")
    print(f"  {'robot':24s}   F_e    G_e    D_e   switch")
    for r in rep.rows:
        print(f"  {r.name:24s} {r.f_e:5.2f}  {r.g_e:5.2f}  {r.d_e:5.2f}  {r.t_s:4.1f} s")
    print("  best flyer:", rep.rankings["f_e"][0], "| best driver:", rep.rankings["g_e"][0])

spec = RobotSpec.load()
fp = footprint_reduction(spec.unfolded, spec.folded)
print(f"\nfolding shrinks the plan-view bounding box by {fp:.1f}% "
      "(the reported 79% is not reproducible from width x depth rectangles)")
