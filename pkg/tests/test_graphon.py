import numpy as np
import pytest

from graphon_motifs import (
    Motif,
    StepGraphon,
    critical_edge_variance_share,
    critical_edge_variance_share_closed_form,
    degree_function,
    hom_density,
    is_motif_regular,
    mean_rooted_density,
    multipoint_density,
    named_graphon,
    named_motif,
    projection_variance,
    regularity_report,
    rooted_density,
)
from graphon_motifs.graphon import _join_class_multiplicities
from util import copies_on_labels, naive_hom_density, random_graphon, random_motif

K2 = named_motif("edge")
P3 = named_motif("path3")
K3 = named_motif("triangle")
W_SYM = named_graphon("W_sym")
W_ASYM = named_graphon("W_asym")


def test_graphon_validation():
    with pytest.raises(ValueError):
        StepGraphon((0.5, 0.4), ((0.5, 0.5), (0.5, 0.5)))  # widths not unit sum
    with pytest.raises(ValueError):
        StepGraphon((0.5, 0.5), ((0.5, 0.4), (0.5, 0.5)))  # asymmetric
    with pytest.raises(ValueError):
        StepGraphon((0.5, 0.5), ((1.5, 0.2), (0.2, 0.1)))  # out of range
    with pytest.raises(ValueError):
        StepGraphon((1.0,), ((0.0,),))  # degenerate edge density
    with pytest.raises(ValueError):
        StepGraphon((1.0, -0.0), ((0.5, 0.5), (0.5, 0.5)))


def test_named_graphons():
    assert named_graphon("const:0.25").values == ((0.25,),)
    with pytest.raises(ValueError):
        named_graphon("bogus")


def test_blocks_of():
    w = StepGraphon((0.25, 0.75), ((0.5, 0.5), (0.5, 0.5)))
    blocks = w.blocks_of([0.0, 0.2499, 0.25, 0.9, 0.999999])
    assert blocks.tolist() == [0, 0, 1, 1, 1]


# ---------------------------------------------------------------------------
# densities


def test_hom_density_constant_kernel():
    for m in [K2, P3, K3, named_motif("c4"), named_motif("fig1b")]:
        w = StepGraphon.constant(0.37)
        assert hom_density(m, w) == pytest.approx(0.37 ** m.edge_count, rel=1e-12)


def test_hom_density_fixtures():
    assert hom_density(K2, W_ASYM) == pytest.approx(0.4, abs=1e-12)
    assert hom_density(K3, W_SYM) == pytest.approx(0.152, abs=1e-12)
    assert hom_density(P3, W_ASYM) == pytest.approx(0.2, abs=1e-12)


def test_hom_density_against_naive_sum():
    rng = np.random.default_rng(12)
    for _ in range(25):
        w = random_graphon(rng)
        m = random_motif(rng, max_vertices=5)
        assert hom_density(m, w) == pytest.approx(naive_hom_density(m, w),
                                                  rel=1e-12)


def test_hom_density_in_unit_interval():
    rng = np.random.default_rng(13)
    for _ in range(25):
        w = random_graphon(rng)
        m = random_motif(rng, max_vertices=5)
        t = hom_density(m, w)
        assert 0.0 < t <= 1.0


def test_hom_density_cap():
    big = Motif(12, [(1, 2)])
    w = random_graphon(np.random.default_rng(0), blocks=4)
    with pytest.raises(ValueError):
        hom_density(big, w)  # 4^12 > cap


def test_rooted_density_fixtures():
    assert rooted_density(K2, 1, 0, W_ASYM) == pytest.approx(0.6, abs=1e-12)
    assert rooted_density(K3, 1, 0, W_SYM) == pytest.approx(0.152, abs=1e-12)


def test_rooted_density_total_probability():
    rng = np.random.default_rng(14)
    for _ in range(15):
        w = random_graphon(rng)
        m = random_motif(rng, max_vertices=4)
        t = hom_density(m, w)
        for a in range(1, m.vertex_count + 1):
            mix = sum(w.pi[b] * rooted_density(m, a, b, w)
                      for b in range(w.block_count))
            assert mix == pytest.approx(t, abs=1e-10)


def test_mean_rooted_density():
    assert mean_rooted_density(K2, 0, W_ASYM) == pytest.approx(0.6, abs=1e-12)
    assert mean_rooted_density(K3, 0, W_SYM) == pytest.approx(0.152, abs=1e-12)
    w = StepGraphon.constant(0.3)
    assert mean_rooted_density(K3, 0, w) == pytest.approx(0.027, rel=1e-12)


def test_degree_function():
    assert degree_function(W_ASYM).tolist() == pytest.approx([0.6, 0.2])
    assert degree_function(W_SYM).tolist() == pytest.approx([0.5, 0.5])
    assert degree_function(StepGraphon.constant(0.7)).tolist() == [0.7]


def test_degree_function_is_rooted_edge_density():
    rng = np.random.default_rng(15)
    for _ in range(10):
        w = random_graphon(rng)
        d = degree_function(w)
        for b in range(w.block_count):
            assert rooted_density(K2, 1, b, w) == pytest.approx(float(d[b]),
                                                                abs=1e-12)


def test_multipoint_density():
    assert multipoint_density(K2, {}, W_ASYM) == pytest.approx(0.4, abs=1e-12)
    assert multipoint_density(K2, {1: 0, 2: 1}, W_ASYM) == pytest.approx(0.3)
    # averaging pinned blocks with pi weights recovers the unpinned density
    rng = np.random.default_rng(16)
    for _ in range(10):
        w = random_graphon(rng)
        m = random_motif(rng, max_vertices=4)
        v = int(rng.integers(1, m.vertex_count + 1))
        mix = sum(w.pi[b] * multipoint_density(m, {v: b}, w)
                  for b in range(w.block_count))
        assert mix == pytest.approx(hom_density(m, w), abs=1e-10)
    with pytest.raises(ValueError):
        multipoint_density(K2, {3: 0}, W_ASYM)
    with pytest.raises(ValueError):
        multipoint_density(K2, {1: 2}, W_ASYM)


# ---------------------------------------------------------------------------
# regularity


def test_regularity_fixtures():
    rep = regularity_report(K2, W_SYM)
    assert rep.is_regular
    rep = regularity_report(K2, W_ASYM)
    assert not rep.is_regular
    assert rep.max_deviation == pytest.approx(0.2, abs=1e-12)
    assert is_motif_regular(K3, StepGraphon.constant(0.4))


def test_regularity_mixture_identity():
    rng = np.random.default_rng(17)
    for _ in range(10):
        w = random_graphon(rng)
        m = random_motif(rng, max_vertices=4)
        rep = regularity_report(m, w)
        mix = sum(p * v for p, v in zip(w.pi, rep.per_block_mean_rooted))
        assert mix == pytest.approx(rep.t, abs=1e-10)


def test_block_swap_symmetric_graphons_are_regular_for_everything():
    rng = np.random.default_rng(18)
    for _ in range(8):
        a, b = rng.uniform(0.1, 0.9, size=2)
        w = StepGraphon((0.5, 0.5), ((a, b), (b, a)))
        m = random_motif(rng, max_vertices=5)
        assert is_motif_regular(m, w)
        assert projection_variance(m, w) == pytest.approx(0.0, abs=1e-12)


# ---------------------------------------------------------------------------
# projection variance


def brute_projection_variance(m, w):
    """Enumerate pairs of copies on two label sets sharing one vertex."""
    k = m.vertex_count
    left = list(range(1, k + 1))
    right = list(range(k, 2 * k))
    t = hom_density(m, w)
    total = 0.0
    for e_left in copies_on_labels(m, tuple(left)):
        for e_right in copies_on_labels(m, tuple(right)):
            union = Motif(2 * k - 1, list(e_left | e_right))
            total += hom_density(union, w) - t * t
    return total


def test_projection_variance_fixture():
    assert projection_variance(K2, W_ASYM) == pytest.approx(0.04, abs=1e-12)
    assert projection_variance(K2, W_SYM) == pytest.approx(0.0, abs=1e-12)
    assert projection_variance(K3, StepGraphon.constant(0.5)) == pytest.approx(
        0.0, abs=1e-12)


def test_projection_variance_against_pair_enumeration():
    rng = np.random.default_rng(19)
    for _ in range(20):
        w = random_graphon(rng, blocks=2)
        m = random_motif(rng, max_vertices=4)
        assert projection_variance(m, w) == pytest.approx(
            brute_projection_variance(m, w), abs=1e-10)


def test_projection_variance_nonnegative():
    rng = np.random.default_rng(20)
    for _ in range(30):
        w = random_graphon(rng)
        m = random_motif(rng, max_vertices=4)
        assert projection_variance(m, w) >= -1e-12


def test_projection_variance_zero_iff_regular():
    rng = np.random.default_rng(21)
    graphons = [StepGraphon.constant(0.5), W_SYM,
                StepGraphon((0.5, 0.5), ((0.3, 0.7), (0.7, 0.3)))]
    graphons += [random_graphon(rng) for _ in range(12)]
    motifs = [K2, P3, K3, named_motif("c4"), named_motif("triangle_pendant")]
    for w in graphons:
        for m in motifs:
            regular = is_motif_regular(m, w)
            xi = projection_variance(m, w)
            assert regular == (xi <= 1e-10), (m, w.pi, xi)


def test_join_class_multiplicities_cover_all_pairs():
    rng = np.random.default_rng(22)
    for _ in range(10):
        m = random_motif(rng, max_vertices=5)
        classes = _join_class_multiplicities(m)
        assert sum(mult for _, mult in classes) == m.vertex_count ** 2


# ---------------------------------------------------------------------------
# critical share


def test_critical_share_fixture():
    assert critical_edge_variance_share(K2, W_ASYM, 1.0) == pytest.approx(5 / 6)
    assert critical_edge_variance_share(K2, W_ASYM, 5.0) == pytest.approx(0.5)
    assert critical_edge_variance_share_closed_form(K2, W_ASYM, 1.0) == \
        pytest.approx(5 / 6)


def test_critical_share_closed_form_agreement():
    for name in ("edge", "triangle", "c4", "c5", "k4"):
        m = named_motif(name)
        a = critical_edge_variance_share(m, W_ASYM, 1.3)
        b = critical_edge_variance_share_closed_form(m, W_ASYM, 1.3)
        assert a == pytest.approx(b, abs=1e-9)


def test_critical_share_monotone_and_bounded():
    rng = np.random.default_rng(23)
    for _ in range(8):
        w = random_graphon(rng, blocks=2)
        for m in (K2, K3, P3):
            if is_motif_regular(m, w):
                continue
            vals = [critical_edge_variance_share(m, w, c)
                    for c in (0.1, 1.0, 10.0)]
            assert all(0.0 < v < 1.0 for v in vals)
            assert vals[0] > vals[1] > vals[2]


def test_critical_share_regular_case_rejected():
    with pytest.raises(ValueError):
        critical_edge_variance_share(K2, W_SYM, 1.0)
    with pytest.raises(ValueError):
        critical_edge_variance_share(K2, W_ASYM, 0.0)


def test_closed_form_requires_strictly_strongly_balanced():
    with pytest.raises(ValueError):
        critical_edge_variance_share_closed_form(
            named_motif("triangle_pendant"), W_ASYM, 1.0)
