"""A first look at the short-time transform and its exact identities.

A two-tone signal (a gaussian carrying a DC component and a 3 Hz
component) is analyzed with a normalized gaussian window. Two facts
hold exactly in the cyclic model, not just asymptotically: the energy
of the transform equals the product of signal and window energies, and
analyzing the Fourier transform of the signal with the Fourier
transform of the window gives the same surface, rotated a quarter turn
and twisted by a plane wave.
"""

import numpy as np

from fiolab import (
    Grid,
    SampledFunction,
    fundamental_identity_residual,
    make_window,
    stft,
)

grid = Grid(1, 256, 0.125)
x = grid.axis()
envelope = np.exp(-np.pi * x * x)
f = SampledFunction(grid, envelope * (1.0 + np.exp(2j * np.pi * 3.0 * x)))
g = make_window("gauss", grid)

V = stft(f, g)
print(f"signal:    {f.grid.describe()}, energy {f.norm2():.6f}")
print(f"window:    gaussian, energy {g.norm2():.6f}")
print(f"transform: {V.values.shape[0]} x {V.values.shape[1]} samples")

cell = grid.spacing * grid.dual().spacing
mass = np.sqrt((np.abs(V.values) ** 2).sum() * cell)
target = f.norm2() * g.norm2()
print(f"\ntransform energy  {mass:.12f}")
print(f"product of norms  {target:.12f}")
print(f"orthogonality defect {abs(mass - target):.3e}")

residual = fundamental_identity_residual(f, g)
print(f"transform-swap residual {residual:.3e}")

# the loudest time-frequency cells sit at the two carrier frequencies
mags = np.abs(V.values)
j, m = np.unravel_index(np.argmax(mags), mags.shape)
xi = grid.dual().axis()
print(f"\nloudest cell at x={x[j]:+.2f}, xi={xi[m]:+.2f}")
half = mags.copy()
half[:, np.abs(xi - xi[m]) < 1.0] = 0.0
j2, m2 = np.unravel_index(np.argmax(half), half.shape)
print(f"second ridge at x={x[j2]:+.2f}, xi={xi[m2]:+.2f}")
