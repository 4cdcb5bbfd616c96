"""Success probabilities of the two competing strategies along delta.

For each fixed p, sweep delta and print both closed forms next to the
dispatched optimum.  Where the three-outcome formula wins it is only
*valid* inside its region (marked with '*'); outside, its value can
exceed the two-outcome one spuriously because the construction would
need a negative weight there.

Run:  python3 demos/success_curves.py
"""

import numpy as np

from trinedisc import (
    boundary_determinant,
    critical_delta,
    optimal_measurement,
    p_correct_three_element,
    p_correct_two_element,
    priors_from_p_delta,
)

for p in (0.35, 0.40, 0.45):
    dc = critical_delta(p)
    dc_text = f"{dc:.6f}" if dc is not None else "none (three-outcome everywhere)"
    print(f"p = {p}   critical delta = {dc_text}")
    print(f"  {'delta':>8} {'P_2el':>12} {'P_3el':>12} {'chosen':>14} {'optimum':>12}")
    for delta in np.linspace(0.0, 3 * p - 1, 9):
        pr = priors_from_p_delta(p, float(delta))
        p2 = p_correct_two_element(pr)
        p3 = p_correct_three_element(pr) if pr.p2 > 0 else float("nan")
        valid = "*" if boundary_determinant(pr) < 0 else " "
        res = optimal_measurement(pr)
        print(
            f"  {delta:8.4f} {p2:12.8f} {p3:11.8f}{valid} "
            f"{res.strategy:>14} {res.p_correct:12.8f}"
        )
    print()

print("The curves meet at the critical delta (continuity of the optimum):")
for p in (0.40, 0.42, 0.45):
    pr = priors_from_p_delta(p, critical_delta(p))
    gap = abs(p_correct_two_element(pr) - p_correct_three_element(pr))
    print(f"  p = {p}: |P_2el - P_3el| at delta_c = {gap:.2e}")
