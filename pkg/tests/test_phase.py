"""Phase calculus, partition geometry, and condition verification."""

import numpy as np
import pytest

from fiolab import (
    ConditionVerdict,
    DomainError,
    GrowthParams,
    PartitionSpec,
    bilinear,
    bracket_power,
    check_phase,
    high_growth,
    k_alpha,
    make_phase,
    mild_growth,
    mollifier,
    mu_gradient,
    nonseparated_x,
    nonseparated_xi,
    sep_deviation,
    separable_phase,
    separation_margin,
    taylor_remainder,
    verify_growth,
    verify_separation,
)
from fiolab.phase import (
    DEFAULT_BOXES,
    MINUS_INF,
    STABILITY_FACTOR,
    growth_ratio_x,
    second_derivative_bounds,
)

FAST_BOXES = (4.0, 8.0, 16.0)


def test_growth_params_regimes():
    assert GrowthParams(alpha=1.0).regime == "low"
    assert GrowthParams(alpha=0.0).regime == "critical"
    assert GrowthParams(alpha=MINUS_INF).regime == "critical"
    assert GrowthParams(alpha=0.5).regime == "mild"
    assert GrowthParams(alpha=MINUS_INF, t1=1.0, t2=0.5).regime == "high"


def test_growth_params_validation():
    with pytest.raises(DomainError):
        GrowthParams(alpha=1.5)
    with pytest.raises(DomainError):
        GrowthParams(alpha=-0.2)
    with pytest.raises(DomainError):
        GrowthParams(alpha=0.5, t1=-1.0)
    with pytest.raises(DomainError):
        GrowthParams(alpha=0.5, t1=1.0).regime


def test_bracket_power_exact_quadratic():
    f, df, d2f = bracket_power(2.0)
    x = np.linspace(-3, 3, 13)
    assert np.allclose(f(x), 1.0 + x * x)
    assert np.allclose(df(x), 2.0 * x)
    assert np.allclose(d2f(x), 2.0 + 0.0 * x)


def test_bracket_power_finite_differences():
    f, df, d2f = bracket_power(1.5, scale=0.7)
    h = 1e-5
    for x0 in (-2.3, 0.0, 0.4, 5.1):
        fd1 = (f(x0 + h) - f(x0 - h)) / (2 * h)
        fd2 = (f(x0 + h) - 2 * f(x0) + f(x0 - h)) / (h * h)
        assert df(x0) == pytest.approx(fd1, rel=1e-8, abs=1e-8)
        assert d2f(x0) == pytest.approx(fd2, rel=1e-4, abs=1e-4)


def test_lattice_geometry_values():
    assert k_alpha(3.0, 0.0) == pytest.approx(3.0)
    assert k_alpha(3.0, 0.5) == pytest.approx(np.sqrt(10.0) * 3.0)
    assert mu_gradient(0.0, 0.5) == 0.0
    assert mu_gradient(3.0, 0.0) == pytest.approx(6.0)
    x = k_alpha(4.0, 0.5)
    expected = 1.5 * (1.0 + x * x) ** (-0.25) * x
    assert mu_gradient(x, 0.5) == pytest.approx(expected)
    with pytest.raises(DomainError):
        k_alpha(2.0, 1.0)
    with pytest.raises(DomainError):
        mu_gradient(1.0, -0.1)


def test_sep_deviation_decays():
    with pytest.raises(DomainError):
        sep_deviation(0, 0.5)
    d_small = sep_deviation(2.0, 0.5)
    d_big = sep_deviation(20.0, 0.5)
    assert 0 < d_big < d_small
    # the deviation is the defect of the stretched lattice against the
    # linearized gradient, so it matches its own definition exactly
    k = 5.0
    direct = abs(mu_gradient(k_alpha(k, 0.3), 0.3) - 1.7 * k)
    assert sep_deviation(k, 0.3) == pytest.approx(direct)


def test_mollifier_shape():
    assert mollifier(0.0) == pytest.approx(1.0)
    assert mollifier(np.array([1.0, -1.5, 2.0]), radius=1.0).max() == 0.0
    x = np.linspace(-0.9, 0.9, 19)
    vals = mollifier(x)
    assert np.allclose(vals, vals[::-1])
    assert np.all(vals > 0)


def test_partition_sums_to_one():
    part = PartitionSpec()
    x = np.linspace(-5.3, 5.3, 401)
    total = np.zeros_like(x)
    for k in range(-8, 9):
        total += part.eta(x, k)
    assert np.allclose(total, 1.0, atol=1e-12)
    # the star function covers the central piece completely
    inside = np.abs(x) < part.radius
    star = part.eta_star(x, 0)
    assert np.all(star[inside] >= part.eta(x, 0)[inside])
    assert np.allclose(star[np.abs(x) < 0.2], 1.0, atol=1e-12)
    with pytest.raises(DomainError):
        PartitionSpec(radius=1.0, spacing=1.0)


def test_make_phase_and_builtin_names():
    ph = make_phase("mild_growth", alpha=0.5)
    assert "mild_growth" in ph.describe()
    assert ph.separable and ph.coupling == 1.0
    assert make_phase("bilinear").declared.regime == "low"
    with pytest.raises(DomainError):
        make_phase("cubic")
    with pytest.raises(DomainError):
        mild_growth(1.0)
    with pytest.raises(DomainError):
        nonseparated_xi(radius=0.0)
    with pytest.raises(DomainError):
        high_growth(-1.0, 0.0)


def test_separable_phase_derivative_consistency():
    ph = mild_growth(0.3)
    h = 1e-5
    pts = [(-1.7, 0.4), (0.0, 0.0), (2.2, -3.1)]
    for x0, xi0 in pts:
        gx = (ph.eval(x0 + h, xi0) - ph.eval(x0 - h, xi0)) / (2 * h)
        gxi = (ph.eval(x0, xi0 + h) - ph.eval(x0, xi0 - h)) / (2 * h)
        assert ph.grad_x(x0, xi0) == pytest.approx(gx, rel=1e-7, abs=1e-7)
        assert ph.grad_xi(x0, xi0) == pytest.approx(gxi, rel=1e-7, abs=1e-7)
        hxx = (ph.grad_x(x0 + h, xi0) - ph.grad_x(x0 - h, xi0)) / (2 * h)
        assert ph.hess_xx(x0, xi0) == pytest.approx(hxx, rel=1e-5, abs=1e-5)
        assert ph.hess_xxi(x0, xi0) == pytest.approx(1.0)


def test_nonseparated_xi_bump_derivatives():
    ph = nonseparated_xi(radius=2.0)
    h = 1e-6
    for u in (-1.3, 0.2, 0.9, 1.7):
        fd1 = (ph.eval(0.0, u + h) - ph.eval(0.0, u - h)) / (2 * h)
        assert ph.grad_xi(0.0, u) == pytest.approx(fd1, rel=1e-5, abs=1e-7)
        fd2 = (ph.grad_xi(0.0, u + h) - ph.grad_xi(0.0, u - h)) / (2 * h)
        assert ph.hess_xixi(0.0, u) == pytest.approx(fd2, rel=1e-4, abs=1e-6)
    assert ph.grad_xi(0.0, 5.0) == 0.0


def test_taylor_remainder_bilinear_is_pure_cross_term():
    rem = taylor_remainder(bilinear(), 3.0, -2.0, cell_points=16)
    y = rem.grid.axis()
    expected = np.multiply.outer(y, y)
    assert np.allclose(rem.samples.real, expected, atol=1e-12)
    center = np.argwhere(np.isclose(y, 0.0)).item()
    assert abs(rem.samples[center, center]) < 1e-12


def test_growth_ratio_x_cases():
    assert growth_ratio_x(bilinear(), 1.0, 8.0) == 0.0
    # ratio saturates at the top-order coefficient for a matching alpha
    r = growth_ratio_x(mild_growth(0.5), 0.5, 32.0)
    assert r == pytest.approx(1.5, rel=1e-2)
    with pytest.raises(DomainError):
        growth_ratio_x(high_growth(0.0, 0.0), MINUS_INF, 8.0)
    with pytest.raises(DomainError):
        growth_ratio_x(bilinear(), 2.0, 8.0)
    with pytest.raises(DomainError):
        growth_ratio_x(bilinear(), 1.0, 0.0)


def test_second_derivative_bounds_validation():
    ph = bilinear()
    with pytest.raises(DomainError):
        second_derivative_bounds(ph, 0.0, 0.0, -0.5, 8.0)
    with pytest.raises(DomainError):
        second_derivative_bounds(ph, -1.0, 0.0, 0.5, 8.0)
    with pytest.raises(DomainError):
        second_derivative_bounds(ph, 0.0, 0.0, 0.5, 0.0)


def test_verify_growth_accepts_builtins():
    cases = [
        bilinear(),
        mild_growth(0.0),
        mild_growth(0.5),
        nonseparated_x(0.5),
        nonseparated_xi(1.0),
        high_growth(0.0, 0.0),
        high_growth(1.0, 1.0),
    ]
    for ph in cases:
        rows = verify_growth(ph, boxes=FAST_BOXES)
        assert all(r.passed for r in rows), (ph.name, rows)
        want = 3 if ph.declared.alpha == MINUS_INF else 4
        assert len(rows) == want


def test_verify_growth_rejects_mismatched_declarations():
    # alpha declared larger than the true growth lets the ratio climb
    rows = verify_growth(mild_growth(0.5), GrowthParams(alpha=0.9), boxes=FAST_BOXES)
    assert any(not r.passed for r in rows)
    # a frequency Hessian growing like <xi>^2 cannot pass with t2 = 0
    rows = verify_growth(
        high_growth(0.0, 2.0), GrowthParams(alpha=MINUS_INF, t1=0.0, t2=0.0),
        boxes=FAST_BOXES,
    )
    bad = [r for r in rows if not r.passed]
    assert any("xixi" in r.condition for r in bad)


def test_separation_verdicts():
    for ph in (bilinear(), mild_growth(0.5)):
        for kind in ("x", "xi"):
            v = verify_separation(ph, kind)
            assert v.passed and v.measured >= 0.5
    assert not verify_separation(nonseparated_x(0.5), "x").passed
    assert not verify_separation(nonseparated_xi(1.0), "xi").passed
    with pytest.raises(DomainError):
        separation_margin(bilinear(), "both", 8.0)
    with pytest.raises(DomainError):
        separation_margin(bilinear(), "x", 0.5)


def test_check_phase_row_counts():
    rows = check_phase(mild_growth(0.25), boxes=FAST_BOXES)
    assert len(rows) == 6
    rows = check_phase(high_growth(0.0, 1.0), boxes=FAST_BOXES)
    assert len(rows) == 5


def test_condition_verdict_csv_row():
    v = ConditionVerdict("hessian-xx[t1=0]", 1.15, 1.0321, True)
    assert v.csv_row() == "hessian-xx[t1=0],1.15,1.0321,pass"
    v = ConditionVerdict("separation-x", 0.5, 0.0, False)
    assert v.csv_row() == "separation-x,0.5,0,fail"


def test_default_boxes_and_factor_constants():
    assert DEFAULT_BOXES == (8.0, 16.0, 32.0)
    assert 1.0 < STABILITY_FACTOR < 1.5
