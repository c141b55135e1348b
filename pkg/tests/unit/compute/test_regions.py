import numpy as np
import pytest

from biso.compute.regions import (
    better_receiver_demo,
    dominant_receiver,
    equivalence_report,
    f_profile,
    ob_max_sum_rate,
    ob_region,
    rtd_max_sum_rate,
    rtd_region,
    sum_rates,
    superposition_region,
    td_region,
)
from biso.models.channel import (
    bec_with_capacity,
    bsc,
    capacity,
    degrade_erase,
)
from biso.models.errors import CapacityMismatch, PreconditionError

# the counterexample gaps are resolved on the full-size grid
GRID = 1025


def _is_frontier(region):
    r1, r2 = region.frontier[:, 0], region.frontier[:, 1]
    return bool(np.all(np.diff(r1) > 0) and np.all(np.diff(r2) < 0))


class TestProfile:
    def test_endpoints(self, ternary):
        prof = f_profile(ternary, 65)
        assert prof.values[0] == capacity(ternary)
        assert prof.values[-1] == 0.0
        assert prof.at(0.7) == pytest.approx(prof.at(0.3), abs=1e-15)


class TestTimeDivision:
    def test_segment(self):
        region = td_region(0.5, 0.3, 11)
        assert region.max_sum_rate == 0.5
        assert region.corners == ((0.5, 0.0), (0.0, 0.3))
        assert _is_frontier(region)


class TestSuperposition:
    def test_dominant(self):
        assert dominant_receiver(bsc(0.1), bsc(0.2)) == 1
        assert dominant_receiver(bsc(0.2), bsc(0.1)) == 2

    def test_degraded_bsc_pair(self):
        c1, c2 = capacity(bsc(0.1)), capacity(bsc(0.2))
        region = superposition_region(bsc(0.1), bsc(0.2), dominant=1)
        assert region.max_sum_rate == pytest.approx(c1, abs=1e-12)
        assert region.frontier[:, 1].max() == pytest.approx(c2, abs=1e-12)
        assert _is_frontier(region)
        assert {"s"} <= set(region.generators[0])

    def test_second_dominant(self):
        region = superposition_region(bsc(0.2), bsc(0.1), dominant=2)
        assert region.max_sum_rate == pytest.approx(capacity(bsc(0.1)), abs=1e-12)


class TestComparablePair:
    def test_all_sum_rates_equal_capacity(self, ternary, ternary_partners):
        for other in ternary_partners:
            rates = sum_rates(ternary, other)
            c = capacity(ternary)
            assert rates.td == pytest.approx(c, abs=1e-9)
            assert rates.rtd == pytest.approx(c, abs=1e-9)
            assert rates.ob == pytest.approx(c, abs=1e-8)

    def test_no_rtd_generator(self, ternary, ternary_partners):
        _, bsc_c = ternary_partners
        value, generator = rtd_max_sum_rate(f_profile(ternary), f_profile(bsc_c))
        assert generator is None

    def test_equivalence_all_false(self, ternary, ternary_partners):
        for other in ternary_partners:
            report = equivalence_report(ternary, other)
            assert not any(report.predicates.values())
            assert report.consistent

    def test_ob_without_time_sharing(self, ternary, ternary_partners):
        _, bsc_c = ternary_partners
        region = ob_region(f_profile(ternary), f_profile(bsc_c), time_sharing=False)
        assert region.max_sum_rate == pytest.approx(capacity(ternary), abs=1e-9)

    def test_same_channel_collapses_to_td(self, ternary):
        prof = f_profile(ternary)
        c = capacity(ternary)
        for region in (rtd_region(prof, prof), ob_region(prof, prof)):
            assert region.max_sum_rate == pytest.approx(c, abs=1e-9)
            assert np.allclose(region.frontier.sum(axis=1), c, atol=1e-8)

    def test_needs_equal_capacity(self):
        with pytest.raises(CapacityMismatch):
            ob_max_sum_rate(f_profile(bsc(0.1)), f_profile(bsc(0.2)))
        with pytest.raises(CapacityMismatch):
            equivalence_report(bsc(0.1), bsc(0.2))


class TestCounterexample:
    def test_strict_chain_of_sum_rates(self, counterexample):
        rates = sum_rates(*counterexample, grid_n=GRID)
        assert rates.td < rates.rtd - 1e-5
        assert rates.rtd < rates.ob - 1e-6

    def test_equivalence_all_true(self, counterexample):
        report = equivalence_report(*counterexample, grid_n=GRID)
        assert all(report.predicates.values())
        assert report.excess > 1e-6
        s1, s2 = report.witness
        assert 0.0 <= s1 <= 0.5 and 0.0 <= s2 <= 0.5

    def test_rtd_generator(self, counterexample):
        a, b = counterexample
        value, generator = rtd_max_sum_rate(f_profile(a, GRID), f_profile(b, GRID))
        assert value > capacity(a) + 1e-5
        assert 0.0 < generator["a"] < 1.0

    def test_regions_are_frontiers(self, counterexample):
        prof1, prof2 = (f_profile(ch) for ch in counterexample)
        for region in (rtd_region(prof1, prof2), ob_region(prof1, prof2)):
            assert _is_frontier(region)
            assert region.max_sum_rate >= capacity(counterexample[0]) - 1e-9

    def test_better_receiver(self, counterexample):
        report = better_receiver_demo(*counterexample, grid_n=GRID)
        assert report.shrinks
        assert report.original.rtd > report.capacity + 1e-5
        assert report.replaced.rtd == pytest.approx(report.capacity, abs=1e-8)


def test_better_receiver_needs_incomparable_pair(ternary, ternary_partners):
    with pytest.raises(PreconditionError):
        better_receiver_demo(ternary, ternary_partners[1])


def _support(region, w):
    return float((region.frontier @ np.array([w, 1.0 - w])).max())


class TestSuperpositionMeetsOuterBound:
    @pytest.mark.parametrize("partner", [0, 1])
    def test_comparable_pair(self, ternary, ternary_partners, partner):
        other = ternary_partners[partner]
        dominant = dominant_receiver(ternary, other)
        assert dominant == (2 if partner == 0 else 1)
        sup = superposition_region(ternary, other, dominant=dominant)
        ob = ob_region(f_profile(ternary), f_profile(other))
        assert sup.max_sum_rate == pytest.approx(ob.max_sum_rate, abs=1e-8)
        for w in (0.0, 0.25, 0.5, 0.75, 1.0):
            assert _support(sup, w) == pytest.approx(_support(ob, w), abs=1e-7)

    def test_undecided_pair_falls_back_to_capacity(self, ternary, caplog):
        c = capacity(ternary)
        weak = degrade_erase(bec_with_capacity(c), 5e-7 / c)
        assert dominant_receiver(weak, ternary) == 2
        assert dominant_receiver(ternary, weak) == 1
        assert "neither dominance nor a crossing" in caplog.text


class TestRandomEquivalence:
    @pytest.mark.parametrize("seed", [0, 1, 2, 3, 4, 5])
    def test_statements_agree(self, equalized_pair, seed):
        ch1, ch2 = equalized_pair(np.random.default_rng(seed))
        report = equivalence_report(ch1, ch2, strict=False)
        assert report.consistent or report.borderline
        assert report.td_sum <= report.rtd_sum + 1e-9
        assert report.rtd_sum <= report.ob_sum + 1e-8
        if report.consistent and report.incomparable:
            assert report.witness is not None
            assert report.excess > 1e-6
