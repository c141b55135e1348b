import numpy as np
import pytest

from biso.models.binmath import binary_entropy
from biso.models.channel import (
    bec_with_capacity,
    bsc,
    bsc_with_capacity,
    capacity,
    from_pairs,
    random_channel,
)
from biso.models.lorenz import (
    biso_curve,
    common_refinement,
    dominates,
    dominates_dense,
    lorenz,
)


class TestBisoCurve:
    def test_bec_partition(self, bec_03):
        curve = biso_curve(bec_03)
        assert np.allclose(curve.breakpoints, [0.0, 0.7, 1.0])
        assert np.allclose(curve.values, [0.0, 1.0])

    def test_bsc_single_step(self, bsc_011):
        curve = biso_curve(bsc_011)
        assert np.allclose(curve.breakpoints, [0.0, 1.0])
        assert curve.values[0] == pytest.approx(binary_entropy(0.11))

    def test_step_values(self, bec_03):
        curve = biso_curve(bec_03)
        assert curve(0.0) == 0.0
        assert curve(0.5) == 0.0
        assert curve(0.8) == 1.0
        assert np.allclose(curve(np.array([0.7, 1.0])), [0.0, 1.0])

    def test_equal_entropies_merge(self):
        ch = from_pairs([(0.45, 0.05), (0.45, 0.05)])
        curve = biso_curve(ch)
        assert len(curve.values) == 1

    def test_counterexample_partitions(self, counterexample_raw):
        a, b = counterexample_raw
        assert np.allclose(biso_curve(a).breakpoints, [0.0, 0.61, 1.0])
        assert np.allclose(biso_curve(b).breakpoints, [0.0, 0.0634977, 1.0])


class TestLorenzCurve:
    def test_capacity_identity(self, ternary, bsc_011, bec_03):
        for ch in (ternary, bsc_011, bec_03):
            assert 1.0 - lorenz(ch).total == pytest.approx(capacity(ch), abs=1e-12)

    def test_convex_with_bounded_slopes(self, rng):
        for _ in range(20):
            curve = lorenz(random_channel(rng, n_pairs=4, zero=True))
            assert np.all(np.diff(curve.slopes) >= -1e-12)
            assert np.all((curve.slopes >= -1e-12) & (curve.slopes <= 1 + 1e-12))
            assert curve.cumulative[0] == 0.0

    def test_interpolates(self, bec_03):
        curve = lorenz(bec_03)
        assert curve(0.85) == pytest.approx(0.15)


def test_common_refinement_merges_close_points():
    points = common_refinement(np.array([0.0, 0.5, 1.0]), np.array([0.0, 0.5 + 1e-14, 1.0]))
    assert np.allclose(points, [0.0, 0.5, 1.0])


class TestDominates:
    def test_extremal_channels(self, ternary, ternary_partners):
        bec_c, bsc_c = ternary_partners
        assert dominates(lorenz(bec_c), lorenz(ternary))
        assert dominates(lorenz(ternary), lorenz(bsc_c))
        assert not dominates(lorenz(bsc_c), lorenz(ternary))

    def test_counterexample_curves_cross(self, counterexample):
        a, b = counterexample
        assert not dominates(lorenz(a), lorenz(b))
        assert not dominates(lorenz(b), lorenz(a))

    def test_strict(self, ternary, ternary_partners):
        bec_c, bsc_c = ternary_partners
        assert dominates(lorenz(bec_c), lorenz(bsc_c), strict=True)
        # the curves meet where both reach slope 1
        assert not dominates(lorenz(bec_c), lorenz(ternary), strict=True)
        assert not dominates(lorenz(ternary), lorenz(ternary), strict=True)

    def test_dense_agrees(self, rng):
        for _ in range(20):
            f = random_channel(rng, n_pairs=3)
            c = capacity(f)
            assert dominates_dense(lorenz(f), lorenz(bsc_with_capacity(c)))
            assert dominates_dense(lorenz(bec_with_capacity(c)), lorenz(f))
            assert dominates(lorenz(bec_with_capacity(c)), lorenz(f))


def test_bsc_is_a_line():
    curve = lorenz(bsc(0.2))
    assert curve(0.5) == pytest.approx(0.5 * binary_entropy(0.2))
