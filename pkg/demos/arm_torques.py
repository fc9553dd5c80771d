"""Fold-servo loads on the four arms for each motion profile.

Front arms are tilted down, so they carry a static load even with the rotors
idle; spinning the rotors up adds a load that grows with speed squared.
"""
import numpy as np

from landair.config import RobotSpec
from landair.dynamics import PROFILES, simulate_profile

params = RobotSpec.load().dynamics_params()

print(f"{'profile':15s} " + " ".join(f"{a:>7s}" for a in ("fl", "fr", "rl", "rr")))
for profile in PROFILES:
    s = simulate_profile(profile, params, duration=10.0, dt=0.01)
    peaks = [s.peak(a) for a in ("fl", "fr", "rl", "rr")]
    print(f"{profile:15s} " + " ".join(f"{v:7.0f}" for v in peaks) + "   N*mm peak")

sweep = simulate_profile("speed_sweep", params, 10.0, 0.01)
fl = sweep.arm("fl")
rpm = sweep.speeds[:, 0] * 60 / (2 * np.pi)
print("\nfront-left arm during the speed sweep")
for i in range(0, len(fl) - 1, 200):
    print(f"  {rpm[i]:6.0f} rpm  {fl[i]:7.1f} N*mm")
print(f"  {rpm[-1]:6.0f} rpm  {fl[-1]:7.1f} N*mm")
