"""Auditing a phase's declared growth class against measurements.

Every phase carries a declaration (alpha, t1, t2): how fast the
position gradient may grow and how fast the second derivatives may
grow in each variable. The verifier measures each claim over boxes of
doubling size and requires the measurements to stabilize. A correct
declaration passes; an optimistic one is caught by the box that is
finally large enough to see the true growth.
"""

from fiolab import check_phase, high_growth, mild_growth, verify_growth
from fiolab.phase import MINUS_INF, GrowthParams


def show(title, rows):
    print(f"\n{title}")
    print("  condition                      threshold  measured   status")
    for r in rows:
        print(
            f"  {r.condition:30s} {r.threshold:9.3f}  {r.measured:8.3f}"
            f"   {'pass' if r.passed else 'FAIL'}"
        )


ph = mild_growth(0.5)
show(f"{ph.describe()} with its own declaration", check_phase(ph))

show(
    f"{ph.describe()} claiming alpha = 0.9",
    verify_growth(ph, GrowthParams(alpha=0.9)),
)

ph = high_growth(0.0, 2.0)
show(
    f"{ph.describe()} claiming t2 = 0",
    verify_growth(ph, GrowthParams(alpha=MINUS_INF, t1=0.0, t2=0.0)),
)

print()
print("the gradient row compares growth ratios across boxes; Hessian")
print("rows track windowed second-derivative bounds. A claim that is")
print("too strong shows up as a measured factor above the threshold.")
