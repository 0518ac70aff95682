"""Two faces of stationary phase: dispersive spread and chirp spray.

First, the classical dispersive estimate: the inverse transform of a
bump times exp(i lam xi^2) has sup norm decaying like lam^(-1/2).
Second, the high-growth analogue: the transform of an annulus profile
at scale k chirped by exp(-i <xi>^(2+t)) keeps a flat normalized size
when t = 0 and decays like k^(-t/2) when t = 1, the same square root
in a different variable.
"""

import numpy as np

from fiolab import default_bump, dispersive_sup, high_growth_decay

print("dispersive sup for phi(xi) = xi^2")
print("  lambda       sup        lambda^(1/2) * sup")
lams = (10.0, 100.0, 1000.0)
vals = []
for lam in lams:
    v = dispersive_sup(lambda u: u * u, lambda u: 2.0 + 0.0 * u,
                       default_bump(1.0), lam)
    vals.append(v)
    print(f"  {lam:6.0f}  {v:10.6f}  {np.sqrt(lam) * v:10.6f}")
slope = np.polyfit(np.log(lams), np.log(vals), 1)[0]
print(f"fitted slope {slope:+.4f} (square-root decay is -0.5)")

print("\nchirped annulus at scale k, growth exponent t")
for t in (0.0, 1.0):
    ks = (8.0, 16.0, 32.0)
    vals = [high_growth_decay(k, t) for k in ks]
    slope = np.polyfit(np.log(ks), np.log(vals), 1)[0]
    row = "  ".join(f"{v:.5f}" for v in vals)
    print(f"  t={t:g}: values {row}, slope {slope:+.4f} "
          f"(expected {-t / 2:+.2f})")

print("\nthe t = 0 line is flat because a quadratic phase spreads the")
print("annulus uniformly; raising the growth to 2 + t focuses extra")
print("curvature there and buys the k^(-t/2) gain.")
