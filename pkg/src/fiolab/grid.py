"""Uniform dyadic grids, sampled functions, and the Fourier transform.

Conventions, used everywhere downstream:

* a grid with ``n`` points and spacing ``dx`` covers ``[-L, L)`` with
  ``L = n*dx/2``; the point set is ``(j - n/2)*dx`` for ``j = 0..n-1``,
  so ``0`` is always a grid point and ``+L`` is identified with ``-L``
  (circular model);
* the Fourier transform is ``Fhat(xi) = sum_x f(x) exp(-2pi i x xi) dx``
  (Riemann sum over the grid), returning samples on the dual grid with
  spacing ``1/(n*dx)``;
* translations are circular and must land on the grid; modulation
  frequencies must land on the dual grid, otherwise the circular model
  is inconsistent at the wrap seam.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, StructuralError, ValidationError

__all__ = [
    "Grid",
    "SampledFunction",
    "SampledFunction2D",
    "fourier_transform",
    "inverse_fourier_transform",
    "translate_modulate",
    "dilate2",
    "inner",
    "sampled_to_csv",
    "sampled_from_csv",
]


def _is_pow2(n: int) -> bool:
    return n >= 2 and (n & (n - 1)) == 0


@dataclass(frozen=True)
class Grid:
    """Uniform symmetric grid in ``dim`` variables, same n/spacing per axis."""

    dim: int
    n: int
    spacing: float
    offset: float = 0.0

    def __post_init__(self):
        if self.dim not in (1, 2):
            raise DomainError(f"grid dim must be 1 or 2, got {self.dim}")
        if not _is_pow2(self.n):
            raise DomainError(f"grid n must be a power of two >= 2, got {self.n}")
        if not (np.isfinite(self.spacing) and self.spacing > 0):
            raise DomainError(f"grid spacing must be positive, got {self.spacing}")
        if self.offset != 0.0:
            raise DomainError("only origin-centered grids are supported (offset=0)")

    @property
    def half_length(self) -> float:
        """L such that each axis covers [-L, L)."""
        return self.n * self.spacing / 2.0

    def axis(self) -> np.ndarray:
        """The 1D point set shared by every axis."""
        return np.arange(-(self.n // 2), self.n // 2) * self.spacing

    def dual(self) -> "Grid":
        """Frequency grid of the Fourier transform."""
        return Grid(self.dim, self.n, 1.0 / (self.n * self.spacing))

    def shape(self) -> tuple:
        return (self.n,) * self.dim

    def cell_measure(self) -> float:
        return self.spacing**self.dim

    def describe(self) -> str:
        return f"d={self.dim} n={self.n} L={self.half_length:g}"


def default_grid(dim: int = 1, n: int = 512, half_length: float = 16.0) -> Grid:
    """The default desk grid: n=512 points on [-16, 16)."""
    return Grid(dim, n, 2.0 * half_length / n)


class SampledFunction:
    """Complex samples of a function on a :class:`Grid`.

    ``samples`` has shape ``(n,)*dim``, indexed so that ``samples[j]`` is
    the value at ``(j - n/2)*spacing`` along each axis.
    """

    def __init__(self, grid: Grid, samples: np.ndarray):
        samples = np.asarray(samples, dtype=complex)
        if samples.shape != grid.shape():
            raise StructuralError(
                f"samples shape {samples.shape} does not match grid shape {grid.shape()}"
            )
        if not np.all(np.isfinite(samples.view(float))):
            raise ValidationError("samples contain non-finite values")
        self.grid = grid
        self.samples = samples

    @property
    def dim(self) -> int:
        return self.grid.dim

    def copy(self) -> "SampledFunction":
        return type(self)(self.grid, self.samples.copy())

    def norm2(self) -> float:
        """L2 norm with the grid's Riemann measure."""
        return float(
            np.sqrt(np.sum(np.abs(self.samples) ** 2) * self.grid.cell_measure())
        )

    def value_at_zero(self) -> complex:
        idx = (self.grid.n // 2,) * self.dim
        return complex(self.samples[idx])

    def __repr__(self):
        return f"<SampledFunction {self.grid.describe()}>"


class SampledFunction2D(SampledFunction):
    """A sampled function of two variables (a time-frequency plane function)."""

    def __init__(self, grid: Grid, samples: np.ndarray):
        if grid.dim != 2:
            raise StructuralError("SampledFunction2D requires a dim-2 grid")
        super().__init__(grid, samples)


def _same_grid(a: SampledFunction, b: SampledFunction):
    if a.grid != b.grid:
        raise StructuralError(f"grids differ: {a.grid} vs {b.grid}")


def inner(f: SampledFunction, g: SampledFunction) -> complex:
    """<f, g> = sum f conj(g) * cell measure."""
    _same_grid(f, g)
    return complex(np.vdot(g.samples, f.samples) * f.grid.cell_measure())


def _shifted_fft(samples: np.ndarray, inverse: bool = False) -> np.ndarray:
    """DFT in grid order: exact exp(-2pi i x xi) sums on symmetric grids."""
    work = np.fft.ifftshift(samples)
    work = np.fft.ifftn(work) if inverse else np.fft.fftn(work)
    return np.fft.fftshift(work)


def fourier_transform(f: SampledFunction) -> SampledFunction:
    """Riemann-sum Fourier transform onto the dual grid.

    Uses the convention ``Fhat(xi) = integral f(x) exp(-2pi i x.xi) dx``;
    the discrete sum is exact for the cyclic model, so inversion and
    Parseval hold to round-off.
    """
    out = _shifted_fft(f.samples) * f.grid.cell_measure()
    return type(f)(f.grid.dual(), out)


def inverse_fourier_transform(f: SampledFunction) -> SampledFunction:
    dual = f.grid.dual()
    out = _shifted_fft(f.samples, inverse=True) * (f.grid.n**f.grid.dim) * f.grid.cell_measure()
    return type(f)(dual, out)


def _as_vector(v, dim: int, name: str) -> np.ndarray:
    arr = np.atleast_1d(np.asarray(v, dtype=float))
    if arr.shape != (dim,):
        raise StructuralError(f"{name} must have {dim} component(s), got shape {arr.shape}")
    return arr


def _lattice_index(value: float, spacing: float, name: str) -> int:
    r = value / spacing
    k = int(np.rint(r))
    if abs(r - k) > 1e-9 * max(1.0, abs(r)):
        raise ValidationError(
            f"{name}={value!r} is off-grid; nearest admissible value is {k * spacing!r}"
        )
    return k


def translate_modulate(f: SampledFunction, u, omega) -> SampledFunction:
    """Return ``M_omega T_u f``: circular shift by ``u`` then modulation.

    ``u`` must lie on the grid and ``omega`` on the dual grid; both are
    validated and the error names the nearest admissible value.
    """
    u = _as_vector(u, f.dim, "u")
    omega = _as_vector(omega, f.dim, "omega")
    shifts = [_lattice_index(ui, f.grid.spacing, "u") for ui in u]
    for wi in omega:
        _lattice_index(wi, f.grid.dual().spacing, "omega")
    out = np.roll(f.samples, shifts, axis=tuple(range(f.dim)))
    x = f.grid.axis()
    for ax, wi in enumerate(omega):
        phase = np.exp(2j * np.pi * x * wi)
        shape = [1] * f.dim
        shape[ax] = f.grid.n
        out = out * phase.reshape(shape)
    return type(f)(f.grid, out)


def _dilate_axis(values: np.ndarray, axis: int, lam: float, grid: Grid) -> np.ndarray:
    """Band-limited resample of one axis at the points lam * x_j."""
    n = grid.n
    coeff = np.fft.fft(np.fft.ifftshift(values, axes=axis), axis=axis)
    k = np.fft.fftfreq(n, d=1.0 / n)  # symmetric integer frequencies in cyclic order
    x = lam * grid.axis()
    # the trig interpolant uses frequencies k/(2L) = k/(n*dx)
    ev = np.exp(2j * np.pi * np.outer(x, k / (n * grid.spacing)))
    moved = np.moveaxis(coeff, axis, -1)
    res = moved @ ev.T / n
    return np.moveaxis(res, -1, axis)


def dilate2(F: SampledFunction2D, lam1: float, lam2: float) -> SampledFunction2D:
    """Sample ``F(lam1 * x, lam2 * xi)`` on F's own grid.

    Uses separable trigonometric (band-limited) interpolation; lambdas
    must lie in (0, 1] so no point leaves the box.
    """
    for lam in (lam1, lam2):
        if not (0.0 < lam <= 1.0):
            raise DomainError(f"dilation factor must be in (0, 1], got {lam}")
    vals = _dilate_axis(F.samples, 0, lam1, F.grid)
    vals = _dilate_axis(vals, 1, lam2, F.grid)
    return SampledFunction2D(F.grid, vals)


# ---------------------------------------------------------------------------
# CSV serialization (binary-free interchange format)

_FMT = "{:.17g}"


def sampled_to_csv(f: SampledFunction) -> str:
    lines = [f"# dim={f.dim} n={f.grid.n} spacing={_FMT.format(f.grid.spacing)}"]
    idx_cols = ",".join(f"i{k}" for k in range(f.dim))
    lines.append(f"{idx_cols},re,im")
    flat = f.samples.reshape(-1)
    for pos, val in enumerate(flat):
        idx = np.unravel_index(pos, f.samples.shape)
        head = ",".join(str(i) for i in idx)
        lines.append(f"{head},{_FMT.format(val.real)},{_FMT.format(val.imag)}")
    return "\n".join(lines) + "\n"


def sampled_from_csv(text: str) -> SampledFunction:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines or not lines[0].startswith("#"):
        raise ValidationError("missing grid header line")
    header = {}
    for tok in lines[0].lstrip("#").split():
        key, _, val = tok.partition("=")
        header[key] = val
    try:
        dim, n, spacing = int(header["dim"]), int(header["n"]), float(header["spacing"])
    except (KeyError, ValueError) as exc:
        raise ValidationError(f"bad grid header: {lines[0]!r}") from exc
    grid = Grid(dim, n, spacing)
    samples = np.zeros(grid.shape(), dtype=complex)
    for ln in lines[2:]:
        parts = ln.split(",")
        if len(parts) != dim + 2:
            raise ValidationError(f"bad row: {ln!r}")
        idx = tuple(int(p) for p in parts[:dim])
        samples[idx] = float(parts[dim]) + 1j * float(parts[dim + 1])
    cls = SampledFunction2D if dim == 2 else SampledFunction
    return cls(grid, samples)
