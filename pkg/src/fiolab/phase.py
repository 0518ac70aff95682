"""Phase functions and numerical verifiers for their growth geometry.

A phase is a real function of (x, xi) with analytic first and second
derivatives. The verifiers measure three things on nested boxes: how
fast the position gradient grows, whether weighted second derivatives
stay bounded, and whether lattice-separated points keep their phase
gradients apart. Declared growth parameters are checked by comparing
these measurements across boxes; a sound declaration gives box-stable
values, an understated one grows with the box.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .errors import DomainError
from .grid import Grid, SampledFunction2D

__all__ = [
    "MINUS_INF",
    "GrowthParams",
    "PhaseSpec",
    "PartitionSpec",
    "mollifier",
    "separable_phase",
    "bilinear",
    "mild_growth",
    "nonseparated_x",
    "nonseparated_xi",
    "high_growth",
    "make_phase",
    "BUILTIN_PHASES",
    "growth_ratio_x",
    "second_derivative_bounds",
    "separation_margin",
    "taylor_remainder",
    "k_alpha",
    "mu_gradient",
    "sep_deviation",
    "ConditionVerdict",
    "verify_growth",
    "verify_separation",
    "check_phase",
    "DEFAULT_BOXES",
    "STABILITY_FACTOR",
    "SEPARATION_THRESHOLD",
]

MINUS_INF = float("-inf")

DEFAULT_BOXES = (8.0, 16.0, 32.0)
# measured values may grow by at most this factor between consecutive boxes
STABILITY_FACTOR = 1.15
# "gradients stay apart" is operationalized as margin >= this value
SEPARATION_THRESHOLD = 0.5


def _bracket(x):
    x = np.asarray(x, dtype=float)
    return np.sqrt(1.0 + x * x)


@dataclass(frozen=True)
class GrowthParams:
    """Growth declaration (alpha, t1, t2).

    ``alpha`` controls first-order growth of the position gradient
    (exponent 1 - alpha); the sentinel -inf means that gradient growth
    is unconstrained and only the weighted second-derivative bounds
    (exponents t1 in position, t2 in frequency) are claimed.
    """

    alpha: float
    t1: float = 0.0
    t2: float = 0.0

    def __post_init__(self):
        if self.alpha != MINUS_INF and not (0.0 <= self.alpha <= 1.0):
            raise DomainError(
                f"alpha must lie in [0, 1] or be the -inf sentinel, got {self.alpha}"
            )
        for name, val in (("t1", self.t1), ("t2", self.t2)):
            if not (val >= 0):
                raise DomainError(f"{name} must be nonnegative, got {val}")

    @property
    def regime(self) -> str:
        if self.t1 == 0.0 and self.t2 == 0.0:
            if self.alpha == 1.0:
                return "low"
            if self.alpha == 0.0 or self.alpha == MINUS_INF:
                return "critical"
            return "mild"
        if self.alpha == MINUS_INF:
            return "high"
        raise DomainError(
            "second-order growth exponents require the -inf sentinel for alpha"
        )


@dataclass(frozen=True)
class PhaseSpec:
    """A phase with analytic derivatives and a declared growth class.

    All callables are vectorized over numpy arrays and broadcast their
    two arguments. When the phase splits as mu_x(x) + mu_xi(xi) +
    coupling * x * xi the three split fields are set and operator
    application may use the split directly; ``coupling`` is None for
    phases without that structure.
    """

    name: str
    eval: Callable
    grad_x: Callable
    grad_xi: Callable
    hess_xx: Callable
    hess_xxi: Callable
    hess_xixi: Callable
    declared: GrowthParams
    mu_x: Optional[Callable] = None
    mu_xi: Optional[Callable] = None
    coupling: Optional[float] = None

    @property
    def separable(self) -> bool:
        return self.coupling is not None

    def describe(self) -> str:
        return self.name


def _zero_triple():
    zero = lambda u: np.zeros_like(np.asarray(u, dtype=float))
    return zero, zero, zero


def bracket_power(beta: float, scale: float = 1.0):
    """(f, f', f'') for f(u) = scale * <u>^beta."""

    def f(u):
        return scale * _bracket(u) ** beta

    def df(u):
        u = np.asarray(u, dtype=float)
        return scale * beta * u * _bracket(u) ** (beta - 2.0)

    def d2f(u):
        u = np.asarray(u, dtype=float)
        b = _bracket(u)
        return scale * (beta * b ** (beta - 2.0)
                        + beta * (beta - 2.0) * u * u * b ** (beta - 4.0))

    return f, df, d2f


def separable_phase(
    name: str,
    declared: GrowthParams,
    mu_x_triple=None,
    mu_xi_triple=None,
    coupling: float = 0.0,
) -> PhaseSpec:
    """Phase mu_x(x) + mu_xi(xi) + coupling * x * xi with derived calculus."""
    mx, dmx, d2mx = mu_x_triple if mu_x_triple is not None else _zero_triple()
    mxi, dmxi, d2mxi = mu_xi_triple if mu_xi_triple is not None else _zero_triple()
    c = float(coupling)

    def evaluate(x, xi):
        x = np.asarray(x, dtype=float)
        xi = np.asarray(xi, dtype=float)
        return mx(x) + mxi(xi) + c * x * xi

    def grad_x(x, xi):
        x = np.asarray(x, dtype=float)
        xi = np.asarray(xi, dtype=float)
        return dmx(x) + c * xi + 0.0 * x

    def grad_xi(x, xi):
        x = np.asarray(x, dtype=float)
        xi = np.asarray(xi, dtype=float)
        return dmxi(xi) + c * x + 0.0 * xi

    def hess_xx(x, xi):
        x = np.asarray(x, dtype=float)
        return d2mx(x) + 0.0 * np.asarray(xi, dtype=float)

    def hess_xxi(x, xi):
        x = np.asarray(x, dtype=float)
        xi = np.asarray(xi, dtype=float)
        return c + 0.0 * x + 0.0 * xi

    def hess_xixi(x, xi):
        xi = np.asarray(xi, dtype=float)
        return d2mxi(xi) + 0.0 * np.asarray(x, dtype=float)

    return PhaseSpec(
        name=name,
        eval=evaluate,
        grad_x=grad_x,
        grad_xi=grad_xi,
        hess_xx=hess_xx,
        hess_xxi=hess_xxi,
        hess_xixi=hess_xixi,
        declared=declared,
        mu_x=mx,
        mu_xi=mxi,
        coupling=c,
    )


def bilinear() -> PhaseSpec:
    """Phase x * xi; the operator it induces is the identity."""
    return separable_phase("bilinear", GrowthParams(alpha=1.0), coupling=1.0)


def mild_growth(alpha: float) -> PhaseSpec:
    """Phase <x>^(2-alpha) + x*xi: sublinear gradient growth, separated."""
    if not (0.0 <= alpha < 1.0):
        raise DomainError(f"mild growth needs alpha in [0, 1), got {alpha}")
    return separable_phase(
        f"mild_growth[alpha={alpha:g}]",
        GrowthParams(alpha=alpha),
        mu_x_triple=bracket_power(2.0 - alpha),
        coupling=1.0,
    )


def nonseparated_x(alpha: float) -> PhaseSpec:
    """Phase <x>^(2-alpha) alone: the frequency gradient forgets x."""
    if not (0.0 <= alpha < 1.0):
        raise DomainError(f"nonseparated_x needs alpha in [0, 1), got {alpha}")
    return separable_phase(
        f"nonseparated_x[alpha={alpha:g}]",
        GrowthParams(alpha=alpha),
        mu_x_triple=bracket_power(2.0 - alpha),
        coupling=0.0,
    )


def nonseparated_xi(radius: float = 1.0) -> PhaseSpec:
    """Phase phi(xi) with phi a compactly supported bump of the given radius."""
    if not (radius > 0):
        raise DomainError(f"bump radius must be positive, got {radius}")

    def f(u):
        return mollifier(u, radius)

    def df(u):
        u = np.asarray(u, dtype=float)
        v = u / radius
        out = np.zeros_like(v)
        inside = np.abs(v) < 1.0
        vi = v[inside]
        w = 1.0 - vi * vi
        out[inside] = np.exp(1.0 - 1.0 / w) * (-2.0 * vi / (w * w)) / radius
        return out

    def d2f(u):
        u = np.asarray(u, dtype=float)
        v = u / radius
        out = np.zeros_like(v)
        inside = np.abs(v) < 1.0
        vi = v[inside]
        w = 1.0 - vi * vi
        core = np.exp(1.0 - 1.0 / w)
        # d/dv of -2v/w^2 plus the chain term from the exponent
        out[inside] = core * (
            (-2.0 / (w * w) - 8.0 * vi * vi / (w**3))
            + (4.0 * vi * vi / (w**4))
        ) / (radius * radius)
        return out

    return separable_phase(
        f"nonseparated_xi[radius={radius:g}]",
        GrowthParams(alpha=1.0),
        mu_xi_triple=(f, df, d2f),
        coupling=0.0,
    )


def high_growth(t1: float, t2: float) -> PhaseSpec:
    """Phase (<x>^(2+t1) + <xi>^(2+t2))/(2 pi) + x*xi."""
    if not (t1 >= 0 and t2 >= 0):
        raise DomainError(f"growth exponents must be nonnegative, got {t1}, {t2}")
    scale = 1.0 / (2.0 * np.pi)
    return separable_phase(
        f"high_growth[t1={t1:g},t2={t2:g}]",
        GrowthParams(alpha=MINUS_INF, t1=t1, t2=t2),
        mu_x_triple=bracket_power(2.0 + t1, scale),
        mu_xi_triple=bracket_power(2.0 + t2, scale),
        coupling=1.0,
    )


BUILTIN_PHASES = {
    "bilinear": bilinear,
    "mild_growth": mild_growth,
    "nonseparated_x": nonseparated_x,
    "nonseparated_xi": nonseparated_xi,
    "high_growth": high_growth,
}


def make_phase(kind: str, **params) -> PhaseSpec:
    """Look up a built-in phase by name and build it with ``params``."""
    try:
        factory = BUILTIN_PHASES[kind]
    except KeyError:
        raise DomainError(
            f"unknown phase kind {kind!r}; choose from {sorted(BUILTIN_PHASES)}"
        ) from None
    return factory(**params)


# ---------------------------------------------------------------------------
# Partition of unity


def mollifier(x, radius: float = 1.0):
    """Smooth bump supported on |x| < radius with value 1 at the origin."""
    v = np.asarray(x, dtype=float) / radius
    out = np.zeros_like(v)
    inside = np.abs(v) < 1.0
    w = 1.0 - v[inside] * v[inside]
    out[inside] = np.exp(1.0 - 1.0 / w)
    return out


@dataclass(frozen=True)
class PartitionSpec:
    """Uniform partition of unity from one bump on the integer lattice.

    The base bump has support radius < spacing, so only adjacent cells
    overlap and the star function eta_star sums three neighbors.
    """

    radius: float = 0.75
    spacing: float = 1.0
    star_radius: int = 1

    def __post_init__(self):
        if not (0 < self.radius < self.spacing):
            raise DomainError("bump radius must lie in (0, spacing)")

    def _raw(self, x):
        return mollifier(x, self.radius)

    def lattice_sum(self, x):
        x = np.asarray(x, dtype=float)
        lo = int(np.floor(x.min() / self.spacing)) - 1
        hi = int(np.ceil(x.max() / self.spacing)) + 1
        total = np.zeros_like(x)
        for k in range(lo, hi + 1):
            total += self._raw(x - k * self.spacing)
        return total

    def eta(self, x, k: int = 0):
        """Partition piece centered at lattice point k; all pieces sum to 1."""
        x = np.asarray(x, dtype=float)
        return self._raw(x - k * self.spacing) / self.lattice_sum(x)

    def eta_star(self, x, k: int = 0):
        """Neighborhood sum that equals 1 on the support of eta_k."""
        x = np.asarray(x, dtype=float)
        out = np.zeros_like(x)
        for l in range(k - self.star_radius, k + self.star_radius + 1):
            out += self.eta(x, l)
        return out


# ---------------------------------------------------------------------------
# Condition measurements


def growth_ratio_x(phase: PhaseSpec, alpha: float, box: float,
                   samples_per_unit: int = 8) -> float:
    """sup of |grad_x Phi(x, xi) - grad_x Phi(0, xi)| / <x>^(1-alpha) on the box.

    Finite for boxes of any size exactly when the position gradient
    grows no faster than <x>^(1-alpha); the sentinel alpha has no
    first-order claim to check and is rejected.
    """
    if alpha == MINUS_INF:
        raise DomainError("gradient growth is unconstrained at the -inf sentinel")
    if not (0.0 <= alpha <= 1.0):
        raise DomainError(f"alpha must lie in [0, 1], got {alpha}")
    L = float(box)
    if not (L > 0):
        raise DomainError(f"box must be positive, got {box}")
    x = np.linspace(-L, L, 2 * int(L * samples_per_unit) + 1)
    xi = np.array([-L, -L / 2.0, 0.0, L / 2.0, L])
    X = x[:, None]
    G = np.asarray(phase.grad_x(X, xi[None, :]), dtype=float)
    G0 = np.asarray(phase.grad_x(np.zeros_like(X), xi[None, :]), dtype=float)
    diff = np.abs(G - G0)
    ratio = diff / _bracket(X) ** (1.0 - alpha)
    return float(ratio.max())


_PARTITION = PartitionSpec()


def second_derivative_bounds(
    phase: PhaseSpec,
    t1: float,
    t2: float,
    eps: float,
    box: float,
    cell_points: int = 32,
    chunk: int = 2048,
):
    """Weighted second-derivative bounds (A, B, C) over the box.

    A bounds <x>^(-t1) times the xx-block, B bounds <xi>^(-t2) times
    the xixi-block, C the unweighted mixed block. Each is the maximum
    over unit cells of the frequency-weighted sup of the local spectrum
    of the partition-localized block, the sampled stand-in for a sup of
    windowed norms over the plane.
    """
    if not (eps >= 0):
        raise DomainError(f"eps must be nonnegative, got {eps}")
    for name, val in (("t1", t1), ("t2", t2)):
        if not (val >= 0):
            raise DomainError(f"{name} must be nonnegative, got {val}")
    L = int(round(float(box)))
    if L < 1:
        raise DomainError(f"box must be at least 1, got {box}")
    m = int(cell_points)
    h = 2.0 / m
    off = (np.arange(m) - m // 2) * h
    eta1d = _PARTITION.eta(off, 0)
    eta2d = eta1d[:, None] * eta1d[None, :]
    zeta = (np.arange(m) - m // 2) / (m * h)
    w1d = _bracket(zeta) ** (1.0 + eps)
    w2d = w1d[:, None] * w1d[None, :]

    centers = np.arange(-L, L + 1, dtype=float)
    KX, KXI = np.meshgrid(centers, centers, indexing="ij")
    kx = KX.ravel()
    kxi = KXI.ravel()

    def weighted_block(block, x, xi):
        if block == "xx":
            return np.asarray(phase.hess_xx(x, xi), dtype=float) * _bracket(x) ** (-t1)
        if block == "xixi":
            return np.asarray(phase.hess_xixi(x, xi), dtype=float) * _bracket(xi) ** (-t2)
        return np.asarray(phase.hess_xxi(x, xi), dtype=float) + 0.0 * x + 0.0 * xi

    results = {}
    for block in ("xx", "xixi", "xxi"):
        best = 0.0
        for start in range(0, kx.size, chunk):
            sl = slice(start, start + chunk)
            X = kx[sl][:, None, None] + off[None, :, None]
            XI = kxi[sl][:, None, None] + off[None, None, :]
            piece = weighted_block(block, X, XI) * eta2d[None, :, :]
            piece = np.broadcast_to(piece, (piece.shape[0], m, m))
            spec = np.fft.fftshift(
                np.fft.fft2(np.fft.ifftshift(piece, axes=(-2, -1)), axes=(-2, -1)),
                axes=(-2, -1),
            ) * (h * h)
            vals = np.abs(spec) * w2d[None, :, :]
            best = max(best, float(vals.max()))
        results[block] = best
    return results["xx"], results["xixi"], results["xxi"]


def separation_margin(phase: PhaseSpec, kind: str, box: float) -> float:
    """Smallest gradient gap over lattice pairs at least one unit apart.

    x-type separation compares the frequency gradient at two positions
    sharing one xi; xi-type swaps the roles. A phase whose relevant
    gradient forgets the moving variable scores 0.
    """
    if kind not in ("x", "xi"):
        raise DomainError(f"separation type must be 'x' or 'xi', got {kind!r}")
    L = float(box)
    if not (L >= 1):
        raise DomainError(f"box must be at least 1, got {box}")
    pts = np.arange(-int(L), int(L) + 1, dtype=float)
    shared = np.array([-L / 2.0, 0.0, L / 2.0])
    margin = np.inf
    for v in shared:
        if kind == "x":
            g = phase.grad_xi(pts, np.full_like(pts, v))
        else:
            g = phase.grad_x(np.full_like(pts, v), pts)
        g = np.sort(np.asarray(g, dtype=float))
        if g.size > 1:
            margin = min(margin, float(np.min(np.diff(g))))
    return max(float(margin), 0.0)


def taylor_remainder(phase: PhaseSpec, k: float, l: float,
                     cell_points: int = 32) -> SampledFunction2D:
    """Second-order remainder of the phase at lattice point (k, l).

    Returns Phi(k+y, l+eta) minus its first-order expansion, sampled on
    the cell [-1, 1)^2; the remainder and its gradient vanish at the
    cell center.
    """
    m = int(cell_points)
    grid = Grid(2, m, 2.0 / m)
    y = grid.axis()
    Y = y[:, None]
    H = y[None, :]
    base = np.asarray(phase.eval(k + Y, l + H), dtype=float)
    base = np.broadcast_to(base, (m, m))
    phi0 = float(np.asarray(phase.eval(k, l), dtype=float))
    gx = float(np.asarray(phase.grad_x(k, l), dtype=float))
    gxi = float(np.asarray(phase.grad_xi(k, l), dtype=float))
    vals = base - phi0 - gx * Y - gxi * H
    return SampledFunction2D(grid, vals.astype(complex))


# ---------------------------------------------------------------------------
# Lattice geometry of the separation construction


def k_alpha(k, alpha: float):
    """Stretched lattice point <k>^(alpha/(1-alpha)) * k."""
    if not (0.0 <= alpha < 1.0):
        raise DomainError(f"alpha must lie in [0, 1), got {alpha}")
    k = np.asarray(k, dtype=float)
    out = _bracket(k) ** (alpha / (1.0 - alpha)) * k
    return float(out) if out.ndim == 0 else out


def mu_gradient(x, alpha: float):
    """Gradient of <x>^(2-alpha): (2 - alpha) <x>^(-alpha) x."""
    if not (0.0 <= alpha < 1.0):
        raise DomainError(f"alpha must lie in [0, 1), got {alpha}")
    x = np.asarray(x, dtype=float)
    out = (2.0 - alpha) * _bracket(x) ** (-alpha) * x
    return float(out) if out.ndim == 0 else out


def sep_deviation(k, alpha: float):
    """|grad mu at k_alpha minus (2 - alpha) k|; decays like 1/|k|."""
    k = np.asarray(k, dtype=float)
    if np.any(k == 0):
        raise DomainError("the deviation bound is asymptotic; k must be nonzero")
    out = np.abs(mu_gradient(k_alpha(k, alpha), alpha) - (2.0 - alpha) * k)
    return float(out) if out.ndim == 0 else out


# ---------------------------------------------------------------------------
# Declared-versus-measured verification


@dataclass(frozen=True)
class ConditionVerdict:
    condition: str
    threshold: float
    measured: float
    passed: bool

    def csv_row(self) -> str:
        status = "pass" if self.passed else "fail"
        return f"{self.condition},{self.threshold:.6g},{self.measured:.6g},{status}"


def _stability_factor(values) -> float:
    """Largest growth factor between consecutive box measurements."""
    vals = np.maximum(np.asarray(values, dtype=float), 1e-12)
    return float(np.max(vals[1:] / vals[:-1]))


def verify_growth(
    phase: PhaseSpec,
    params: Optional[GrowthParams] = None,
    boxes=DEFAULT_BOXES,
    eps: float = 0.5,
) -> list:
    """Box-stability verdicts for the declared (alpha, t1, t2).

    Each measured condition must grow by less than STABILITY_FACTOR
    between consecutive boxes. The first-order row is omitted for the
    sentinel alpha, whose gradient growth is unconstrained.
    """
    params = params if params is not None else phase.declared
    rows = []
    if params.alpha != MINUS_INF:
        ratios = [growth_ratio_x(phase, params.alpha, L) for L in boxes]
        rows.append(
            ConditionVerdict(
                f"gradient-growth[alpha={params.alpha:g}]",
                STABILITY_FACTOR,
                _stability_factor(ratios),
                _stability_factor(ratios) < STABILITY_FACTOR,
            )
        )
    triples = [
        second_derivative_bounds(phase, params.t1, params.t2, eps, L) for L in boxes
    ]
    labels = (
        (0, f"hessian-xx[t1={params.t1:g}]"),
        (1, f"hessian-xixi[t2={params.t2:g}]"),
        (2, "hessian-xxi"),
    )
    for idx, label in labels:
        factor = _stability_factor([t[idx] for t in triples])
        rows.append(
            ConditionVerdict(label, STABILITY_FACTOR, factor, factor < STABILITY_FACTOR)
        )
    return rows


def verify_separation(
    phase: PhaseSpec,
    kind: str,
    box: float = 16.0,
    threshold: float = SEPARATION_THRESHOLD,
) -> ConditionVerdict:
    margin = separation_margin(phase, kind, box)
    return ConditionVerdict(
        f"separation-{kind}", threshold, margin, margin >= threshold
    )


def check_phase(
    phase: PhaseSpec,
    params: Optional[GrowthParams] = None,
    boxes=DEFAULT_BOXES,
    eps: float = 0.5,
    separation_box: float = 16.0,
    separation_threshold: float = SEPARATION_THRESHOLD,
) -> list:
    """All condition verdicts for one phase: growth, Hessian, separation."""
    rows = verify_growth(phase, params, boxes, eps)
    rows.append(verify_separation(phase, "x", separation_box, separation_threshold))
    rows.append(verify_separation(phase, "xi", separation_box, separation_threshold))
    return rows
