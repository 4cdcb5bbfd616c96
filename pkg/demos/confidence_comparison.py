"""Maximum-confidence vs minimum-error measurements, with a Monte Carlo check.

Confidence is the Bayes posterior that an outcome correctly named the
prepared state.  The maximum-confidence POVM optimizes that posterior
per outcome, at the price of an inconclusive outcome; the minimum-error
measurement maximizes the overall success probability instead, and its
per-outcome confidence can only be lower or equal.

Run:  python3 demos/confidence_comparison.py
"""

from trinedisc import (
    canonicalize_priors,
    confidence_report,
    estimate_confidence,
    estimate_success,
    min_error_confidence,
    optimal_measurement,
)

for triple in ((1 / 3, 1 / 3, 1 / 3), (0.5, 0.3, 0.2), (0.45, 0.45, 0.1)):
    pr = canonicalize_priors(*triple)
    report = confidence_report(pr)
    me = min_error_confidence(pr)
    print(f"priors {tuple(round(q, 4) for q in pr.original)}")
    for i in range(3):
        me_text = f"{me[i]:.6f}" if me[i] is not None else "   (no outcome)"
        print(
            f"  state {i}: max confidence = {report.per_state_confidence[i]:.6f}   "
            f"min-error confidence = {me_text}"
        )
    print(f"  inconclusive probability (maximal-scale convention): "
          f"{report.inconclusive_probability:.6f}")
    print()

# Monte Carlo: sampled frequencies against the analytic values
pr = canonicalize_priors(0.5, 0.3, 0.2)
report = confidence_report(pr)
opt = optimal_measurement(pr)
shots = 400_000

print(f"Monte Carlo, {shots} shots, priors {pr.original}:")
succ = estimate_success(pr, opt.measurement, shots=shots, seed=7)
print(
    f"  success probability: estimate {succ.estimate:.6f} "
    f"vs analytic {opt.p_correct:.6f} "
    f"({abs(succ.estimate - opt.p_correct) / succ.standard_error:.2f} SE)"
)
for i in range(3):
    emp = estimate_confidence(pr, report.measurement, i, shots=shots, seed=7)
    ana = report.per_state_confidence[i]
    print(
        f"  confidence of outcome {i}: estimate {emp.estimate:.6f} "
        f"vs analytic {ana:.6f} "
        f"({abs(emp.estimate - ana) / emp.standard_error:.2f} SE, "
        f"{emp.shots} conditioning shots)"
    )
