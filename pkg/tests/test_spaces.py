"""Weighted mixed norms, sequence spaces, embeddings, and predicates."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fiolab import (
    DomainError,
    Grid,
    INF,
    MixedSpec,
    SampledFunction,
    SampledFunction2D,
    SpaceSpec,
    StructuralError,
    Weight,
    amalgam_norm,
    embedding_holds,
    embedding_witness,
    fourier_transform,
    make_window,
    mixed_modulation_norm,
    mixed_norm,
    modulation_norm,
    sequence_norm,
    special_amalgam_norm,
    stft,
    stft_norms,
    thm1_predicate,
    thm2_predicate,
    thm3_predicate,
    translate_modulate,
)

from conftest import bandlimited


def _reference_nested(mags, p, q, dx, dxi):
    """Independent two-level reduction: position inner, frequency outer."""
    if p == INF:
        inner = mags.max(axis=0)
    else:
        inner = ((mags**p).sum(axis=0) * dx) ** (1.0 / p)
    if q == INF:
        return float(inner.max())
    return float(((inner**q).sum() * dxi) ** (1.0 / q))


@pytest.fixture(scope="module")
def sample_pair():
    g = Grid(1, 128, 0.25)
    rng = np.random.default_rng(7)
    return g, bandlimited(g, rng)


def test_weight_evaluation():
    w = Weight(1.0, 0.0)
    assert w(0.0, 5.0) == pytest.approx(1.0)
    assert w(1.0, 5.0) == pytest.approx(np.sqrt(2.0))
    assert Weight().trivial
    assert not Weight(0.0, 0.1).trivial


@pytest.mark.parametrize(
    "p,q",
    [(1.0, 1.0), (2.0, 2.0), (1.0, INF), (INF, 1.0), (2.0, INF), (INF, INF)],
)
def test_mixed_norm_against_reference(sample_pair, p, q):
    g, f = sample_pair
    w = make_window("gauss", g)
    V = stft(f, w)
    weight = Weight(0.5, 1.0)
    x = g.axis()
    xi = g.dual().axis()
    mags = np.abs(V.values) * weight(x[:, None], xi[None, :])
    ref = _reference_nested(mags, p, q, g.spacing, g.dual().spacing)
    assert mixed_norm(V, p, q, weight) == pytest.approx(ref, rel=1e-12)


def test_modulation_norm_m22_is_l2(sample_pair):
    g, f = sample_pair
    spec = SpaceSpec(2.0, 2.0)
    assert modulation_norm(f, spec) == pytest.approx(f.norm2(), rel=1e-10)


def test_modulation_norm_invariant_under_lattice_shifts(sample_pair):
    g, f = sample_pair
    spec = SpaceSpec(1.0, INF, Weight(), "gauss:0.5")
    base = modulation_norm(f, spec)
    moved = translate_modulate(f, 2.0 * g.spacing, 3.0 * g.dual().spacing)
    assert modulation_norm(moved, spec) == pytest.approx(base, rel=1e-10)


def test_modulation_norm_measure_normalized_monotonicity(sample_pair):
    g, f = sample_pair
    dx, dxi = g.spacing, g.dual().spacing

    def normalized(p, q):
        v = modulation_norm(f, SpaceSpec(p, q))
        ip = 0.0 if p == INF else 1.0 / p
        iq = 0.0 if q == INF else 1.0 / q
        return v / (dx**ip * dxi**iq)

    chain = [(1.0, 1.0), (2.0, 2.0), (4.0, 4.0), (INF, INF)]
    vals = [normalized(p, q) for p, q in chain]
    assert all(a >= b - 1e-12 for a, b in zip(vals, vals[1:]))
    assert normalized(1.0, INF) >= normalized(2.0, INF) - 1e-12
    assert normalized(INF, 1.0) >= normalized(INF, 2.0) - 1e-12


def test_stft_norms_batches_match_single_calls(sample_pair):
    g, f = sample_pair
    specs = [
        SpaceSpec(1.0, INF),
        SpaceSpec(INF, 1.0, Weight(0.5, 0.5)),
        SpaceSpec(2.0, 2.0),
    ]
    kinds = ["modulation", "modulation", "amalgam"]
    batch = stft_norms(f, specs, kinds)
    assert batch[0] == pytest.approx(modulation_norm(f, specs[0]), rel=1e-12)
    assert batch[1] == pytest.approx(modulation_norm(f, specs[1]), rel=1e-12)
    assert batch[2] == pytest.approx(amalgam_norm(f, specs[2]), rel=1e-12)


def test_strided_norms_approximate_full_ones(sample_pair):
    g, f = sample_pair
    spec = SpaceSpec(2.0, 2.0)
    full = modulation_norm(f, spec)
    coarse = modulation_norm(f, spec, x_stride=2, active_only=True)
    assert coarse == pytest.approx(full, rel=2e-2)


def test_amalgam_is_fourier_image_of_modulation():
    # |V_g f(x, xi)| = |V_ghat fhat(xi, -x)| pointwise, so the modulation
    # norm of f equals the swapped-exponent amalgam norm of fhat when the
    # window is its own transform; the dual grid must leave the window
    # room to decay, hence the fine spacing
    g = Grid(1, 512, 0.0625)
    rng = np.random.default_rng(7)
    f = bandlimited(g, rng)
    fhat = fourier_transform(f)
    for p, q in [(1.0, INF), (2.0, 1.0), (INF, 2.0)]:
        m = modulation_norm(f, SpaceSpec(p, q, Weight(), "gauss"))
        a = amalgam_norm(fhat, SpaceSpec(q, p, Weight(), "gauss"))
        assert a == pytest.approx(m, rel=1e-9)
    mw = modulation_norm(f, SpaceSpec(1.0, 2.0, Weight(0.7, 0.7), "gauss"))
    aw = amalgam_norm(fhat, SpaceSpec(2.0, 1.0, Weight(0.7, 0.7), "gauss"))
    assert aw == pytest.approx(mw, rel=1e-9)


def test_plane_modulation_norm_m22_is_l2():
    g2 = Grid(2, 16, 0.5)
    x = g2.axis()
    vals = np.multiply.outer(
        np.exp(-np.pi * x**2), np.exp(-np.pi * (x - 1.0) ** 2)
    )
    F = SampledFunction2D(g2, vals.astype(complex))
    got = modulation_norm(F, SpaceSpec(2.0, 2.0))
    # cyclic STFT orthogonality: the exact identity carries the discrete
    # window norm, which differs from 1 at this coarse spacing
    wnorm = make_window("gauss", g2).norm2()
    assert got == pytest.approx(F.norm2() * wnorm, rel=1e-9)


def test_mixed_modulation_norm_permutations_agree_on_invariant_exponents():
    # with all four exponents equal the nested norm is permutation blind
    g2 = Grid(2, 8, 0.5)
    rng = np.random.default_rng(9)
    F = SampledFunction2D(
        g2, rng.standard_normal((8, 8)) + 1j * rng.standard_normal((8, 8))
    )
    vals = {}
    for perm in ("id", "c1", "c2", "c3", "c4"):
        mspec = MixedSpec(exponents=(2.0, 2.0, 2.0, 2.0), perm=perm)
        vals[perm] = mixed_modulation_norm(F, mspec)
    ref = vals["id"]
    wnorm = make_window("gauss", g2).norm2()
    assert ref == pytest.approx(F.norm2() * wnorm, rel=1e-9)
    for perm, v in vals.items():
        assert v == pytest.approx(ref, rel=1e-9)


def test_mixed_modulation_norm_validation():
    g2 = Grid(2, 8, 0.5)
    F = SampledFunction2D(g2, np.ones((8, 8), dtype=complex))
    with pytest.raises(StructuralError):
        mixed_modulation_norm(F, MixedSpec(exponents=(1.0, 2.0)))
    with pytest.raises(DomainError):
        mixed_modulation_norm(F, MixedSpec(exponents=(1.0,) * 4, perm="c9"))


def test_special_amalgam_norm_requires_nonnegative_eps():
    g2 = Grid(2, 8, 0.5)
    F = SampledFunction2D(g2, np.ones((8, 8), dtype=complex))
    assert special_amalgam_norm(F, 0.5) > 0
    with pytest.raises(DomainError):
        special_amalgam_norm(F, -0.1)


def test_sequence_norm_closed_forms():
    assert sequence_norm([0.0], [0], 1.0) == 0.0
    assert sequence_norm([1.0], [0], 2.0, s=3.0) == pytest.approx(1.0)
    assert sequence_norm([1, 1, 1, 1], [0, 1, 2, 3], 1.0) == pytest.approx(4.0)
    vals = [3.0, 4.0]
    assert sequence_norm(vals, [1, -2], INF, s=0.0) == pytest.approx(4.0)
    got = sequence_norm(vals, [1, -2], 2.0, s=1.0)
    want = np.sqrt((3.0 * np.sqrt(2.0)) ** 2 + (4.0 * np.sqrt(5.0)) ** 2)
    assert got == pytest.approx(want, rel=1e-12)


def test_embedding_holds_paper_cases():
    assert embedding_holds(INF, 2.0, 1.0, 0.0, d=1) is True
    assert embedding_holds(INF, 1.0, 1.0, 0.0, d=1) is False
    assert embedding_holds(1.0, 0.0, INF, 0.0, d=1) is True


def test_embedding_witness_reports():
    rep = embedding_witness(INF, 2.0, 1.0, 0.0)
    assert rep.embedded is True
    assert rep.best_ratio < 10.0
    rep = embedding_witness(2.0, 0.0, 2.0, 1.0)
    assert rep.embedded is False
    assert rep.support == (64,) or rep.support == (-64,)
    with pytest.raises(DomainError):
        embedding_witness(2.0, 0.0, 2.0, 0.0, d=2)


@given(
    s1=st.floats(0.0, 4.0),
    s2=st.floats(0.0, 4.0),
    q1=st.sampled_from([1.0, 1.5, 2.0, 3.0, INF]),
    q2=st.sampled_from([1.0, 1.5, 2.0, 3.0, INF]),
)
@settings(max_examples=200, deadline=None)
def test_embedding_monotone_in_source_weight(s1, s2, q1, q2):
    # raising the source weight can only help the embedding
    if embedding_holds(q1, s1, q2, s2):
        assert embedding_holds(q1, s1 + 0.5, q2, s2)


def test_thm1_predicate_paper_cases():
    for p in (1.0, 2.0, INF):
        for alpha in (0.0, 0.5, 1.0):
            assert thm1_predicate(p, p, 0.0, 0.0, alpha) is True
    assert thm1_predicate(INF, 1.0, 0.5, 0.0, 0.5) is False
    assert thm1_predicate(1.0, INF, 0.6, 0.5, 0.0) is True
    # alpha = 1 removes every threshold
    assert thm1_predicate(1.0, INF, 0.0, 0.0, 1.0) is True
    assert thm1_predicate(2.0, 1.0, -0.1, 0.0, 1.0) is False


def test_thm2_predicate_paper_cases():
    # at (inf, 1) the first two thresholds vanish; the third is
    # alpha*d/p' + (1-alpha)*d/q' = 1 - alpha, strict since q < inf,
    # so s1 + s2 = 0 only clears it at alpha = 1
    assert thm2_predicate(INF, 1.0, 0.0, 0.0, 1.0) is True
    assert thm2_predicate(INF, 1.0, 0.0, 0.0, 0.5) is False
    assert thm2_predicate(INF, 1.0, 0.0, 0.0, 0.0) is False
    assert thm2_predicate(2.0, 2.0, 0.5, 0.5, 0.0) is False
    assert thm2_predicate(2.0, 2.0, 0.75, 0.75, 0.0) is True


def test_thm3_predicate_paper_cases():
    for t in (0.0, 1.0, 2.0):
        assert thm3_predicate(2.0, 0.0, 0.0, t, t) is True
    assert thm3_predicate(1.0, 1.0, 0.0, 2.0, 0.0) is True
    assert thm3_predicate(1.0, 0.9, 0.0, 2.0, 0.0) is False
    with pytest.raises(DomainError):
        thm3_predicate(2.0, 0.0, 0.0, -1.0, 0.0)


@given(
    p=st.sampled_from([1.0, 4.0 / 3.0, 2.0, 4.0, INF]),
    q=st.sampled_from([1.0, 4.0 / 3.0, 2.0, 4.0, INF]),
    s1=st.floats(0.0, 2.0),
    s2=st.floats(0.0, 2.0),
    alpha=st.sampled_from([0.0, 0.25, 0.5, 0.75, 1.0]),
)
@settings(max_examples=300, deadline=None)
def test_predicates_monotone_in_decay(p, q, s1, s2, alpha):
    # more symbol decay never breaks boundedness
    if thm1_predicate(p, q, s1, s2, alpha):
        assert thm1_predicate(p, q, s1 + 0.3, s2 + 0.3, alpha)
    if thm2_predicate(p, q, s1, s2, alpha):
        assert thm2_predicate(p, q, s1 + 0.3, s2 + 0.3, alpha)
    if thm3_predicate(p, s1, s2, 1.0, 1.0):
        assert thm3_predicate(p, s1 + 0.3, s2 + 0.3, 1.0, 1.0)


def test_predicates_validate_inputs():
    with pytest.raises(DomainError):
        thm1_predicate(0.5, 1.0, 0.0, 0.0, 0.0)
    with pytest.raises(DomainError):
        thm1_predicate(2.0, 2.0, 0.0, 0.0, 1.5)
    with pytest.raises(DomainError):
        thm2_predicate(2.0, 2.0, 0.0, 0.0, 0.0, d=0)
