"""How modulation norms order functions that L2 cannot tell apart.

Three unit-energy signals share the same quadratic norm: a plain
gaussian, the same gaussian modulated to 3 Hz, and a chirped version
whose frequency slides across the band. Mixed norms with p different
from q separate them, and polynomial weights in the frequency slot
penalize the modulated copies further.
"""

import numpy as np

from fiolab import (
    Grid,
    INF,
    SampledFunction,
    SpaceSpec,
    Weight,
    modulation_norm,
)

grid = Grid(1, 512, 0.0625)
x = grid.axis()
base = np.exp(-np.pi * x * x).astype(complex)


def unit(samples):
    f = SampledFunction(grid, samples)
    return SampledFunction(grid, samples / f.norm2())


signals = {
    "gaussian": unit(base),
    "modulated": unit(base * np.exp(2j * np.pi * 3.0 * x)),
    "chirped": unit(base * np.exp(1j * np.pi * 0.8 * x * x)),
}

spaces = [
    ("M[2,2]", SpaceSpec(2.0, 2.0)),
    ("M[1,inf]", SpaceSpec(1.0, INF)),
    ("M[inf,1]", SpaceSpec(INF, 1.0)),
    ("M[2,2] t=1", SpaceSpec(2.0, 2.0, Weight(0.0, 1.0))),
]

header = "signal".ljust(12) + "".join(name.rjust(14) for name, _ in spaces)
print(header)
print("-" * len(header))
for label, f in signals.items():
    row = label.ljust(12)
    for _, spec in spaces:
        row += f"{modulation_norm(f, spec):14.4f}"
    print(row)

print()
print("all three have unit energy, so the M[2,2] column is constant;")
print("the weighted column grows with how far the energy sits from")
print("zero frequency, and the mixed columns grade time-frequency")
print("spread in the two possible orders.")
