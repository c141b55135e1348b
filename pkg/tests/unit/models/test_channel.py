import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from biso.models.binmath import binary_entropy, convolve
from biso.models.channel import (
    InputBias,
    bec,
    bec_with_capacity,
    bsc,
    bsc_with_capacity,
    capacity,
    degrade_erase,
    degrade_flip,
    equalize_capacity,
    f_value,
    from_pairs,
    from_rows,
    match_capacities,
    mutual_info,
    random_channel,
    raw_output_count,
    require_equal_capacity,
)
from biso.models.errors import CapacityMismatch, DomainError, NotStochastic, NotSymmetric
from biso.models.lorenz import dominates, lorenz

C_A = 0.32391268791053849
C_B = 0.32391267870336694


class TestCanonicalForm:
    def test_ternary_rows(self, ternary):
        assert ternary.pairs[0] == pytest.approx((0.6, 0.1))
        assert ternary.pairs[-1] == pytest.approx((0.15, 0.15))
        assert ternary.zero_mass == pytest.approx(0.3)
        assert raw_output_count(ternary) == 3

    def test_rows_in_any_output_order(self):
        ch = from_rows([0.3, 0.1, 0.6], [0.3, 0.6, 0.1])
        assert ch.pairs[0] == pytest.approx((0.1, 0.6))
        assert capacity(ch) == pytest.approx(
            1.0 - 0.7 * binary_entropy(1 / 7) - 0.3, abs=1e-12
        )

    def test_not_symmetric(self):
        with pytest.raises(NotSymmetric):
            from_rows([0.7, 0.2, 0.1], [0.1, 0.3, 0.6])

    def test_row_not_stochastic(self):
        with pytest.raises(NotStochastic):
            from_rows([0.7, 0.2], [0.2, 0.7])

    def test_negative_pair(self):
        with pytest.raises(NotStochastic):
            from_pairs([(0.6, 0.3), (-0.1, 0.2)])

    def test_pairs_not_summing_to_one(self):
        with pytest.raises(NotStochastic):
            from_pairs([(0.5, 0.3)])

    def test_zero_mass_is_split(self):
        ch = from_pairs([(0.5, 0.1)], zero=0.4)
        assert ch.pairs[-1] == pytest.approx((0.2, 0.2))
        assert raw_output_count(ch) == 3

    def test_to_rows(self, ternary):
        rows = ternary.to_rows()
        assert rows.shape == (2, 4)
        assert np.allclose(rows.sum(axis=1), 1.0)
        assert np.allclose(rows[0], rows[1][[2, 3, 0, 1]])

    def test_with_label(self, bsc_011):
        assert str(bsc_011.with_label("x")) == "x"
        assert bsc_011.with_label("x").pairs == bsc_011.pairs


class TestInputBias:
    def test_folds(self):
        assert InputBias(0.8).x == pytest.approx(0.2)

    def test_rejects(self):
        with pytest.raises(DomainError):
            InputBias(1.5)


class TestCapacity:
    @pytest.mark.parametrize("p", [0.0, 0.05, 0.11, 0.3, 0.5, 0.9])
    def test_bsc(self, p):
        assert capacity(bsc(p)) == pytest.approx(1.0 - binary_entropy(p), abs=1e-12)

    @pytest.mark.parametrize("e", [0.0, 0.3, 0.7, 1.0])
    def test_bec(self, e):
        assert capacity(bec(e)) == pytest.approx(1.0 - e, abs=1e-12)

    def test_counterexample(self, counterexample_raw):
        a, b = counterexample_raw
        assert capacity(a) == pytest.approx(C_A, abs=1e-12)
        assert capacity(b) == pytest.approx(C_B, abs=1e-12)

    @pytest.mark.parametrize("c", [0.0, 0.1, 0.5, 0.9, 1.0])
    def test_with_capacity(self, c):
        assert capacity(bsc_with_capacity(c)) == pytest.approx(c, abs=1e-10)
        assert capacity(bec_with_capacity(c)) == pytest.approx(c, abs=1e-12)

    def test_with_capacity_rejects(self):
        with pytest.raises(DomainError):
            bsc_with_capacity(1.2)


class TestMutualInfo:
    def test_uniform_input_is_capacity(self, ternary):
        assert mutual_info(ternary, 0.5) == pytest.approx(capacity(ternary), abs=1e-14)

    def test_deterministic_input(self, ternary):
        assert mutual_info(ternary, 0.0) == pytest.approx(0.0, abs=1e-15)

    def test_bias_symmetry(self, ternary):
        assert mutual_info(ternary, 0.2) == pytest.approx(
            mutual_info(ternary, 0.8), abs=1e-15
        )

    def test_vectorized(self, bec_03):
        x = np.array([0.1, 0.25, 0.5])
        # BEC: I = (1 - e) h(x)
        assert np.allclose(mutual_info(bec_03, x), 0.7 * binary_entropy(x))

    def test_rejects_bias(self, bsc_011):
        with pytest.raises(DomainError):
            mutual_info(bsc_011, 1.1)

    def test_f_value_endpoints(self, ternary):
        assert f_value(ternary, 0.0) == pytest.approx(capacity(ternary), abs=1e-14)
        assert f_value(ternary, 0.5) == pytest.approx(0.0, abs=1e-15)


class TestDegradation:
    def test_erase_scales_capacity(self, ternary):
        assert capacity(degrade_erase(ternary, 0.25)) == pytest.approx(
            0.75 * capacity(ternary), abs=1e-12
        )

    def test_flip_of_bsc(self):
        ch = degrade_flip(bsc(0.1), 0.2)
        assert ch.pairs[0][1] == pytest.approx(0.1 * 0.8 + 0.2 * 0.9)

    @pytest.mark.parametrize("method", ["erase", "flip"])
    def test_equalize(self, ternary, method):
        ch = equalize_capacity(ternary, 0.2, method)
        assert capacity(ch) == pytest.approx(0.2, abs=1e-9)

    def test_equalize_rejects_raise(self, ternary):
        with pytest.raises(DomainError):
            equalize_capacity(ternary, 0.9)

    def test_equalize_unknown_method(self, ternary):
        with pytest.raises(DomainError):
            equalize_capacity(ternary, 0.1, "shout")


class TestMatchCapacities:
    def test_require_equal(self):
        assert require_equal_capacity(0.3, 0.3 + 1e-12) == pytest.approx(0.3)
        with pytest.raises(CapacityMismatch):
            require_equal_capacity(0.3, 0.31)

    def test_counterexample_gap_is_absorbed(self, counterexample_raw):
        a, b, gap = match_capacities(*counterexample_raw)
        assert gap == pytest.approx(C_A - C_B, abs=1e-12)
        assert capacity(a) == pytest.approx(capacity(b), abs=1e-12)
        assert str(a) == "A"
        assert b is counterexample_raw[1]

    def test_large_gap_refused(self):
        with pytest.raises(CapacityMismatch):
            match_capacities(bsc(0.1), bsc(0.2))

    def test_equal_pair_untouched(self, ternary_partners):
        first, second = ternary_partners
        a, b, _ = match_capacities(first, second)
        assert a is first and b is second


def test_random_channel(rng):
    for _ in range(20):
        ch = random_channel(rng, n_pairs=3, zero=True)
        assert len(ch.pairs) == 4
        assert 0.0 <= capacity(ch) <= 1.0
        assert sum(ch.masses) == pytest.approx(1.0)


def _split(ch, k, w):
    """Replace pair k by two proportional sub-pairs of weights w and 1 - w."""
    a, b = ch.pairs[k]
    pairs = list(ch.pairs[:k]) + [(w * a, w * b), ((1 - w) * a, (1 - w) * b)]
    return from_pairs(pairs + list(ch.pairs[k + 1 :]))


class TestRefinement:
    @given(
        st.integers(0, 2**32 - 1),
        st.integers(1, 5),
        st.floats(min_value=0.05, max_value=0.95),
    )
    @settings(max_examples=50, deadline=None)
    def test_split_pair_keeps_mutual_info(self, seed, n_pairs, w):
        rng = np.random.default_rng(seed)
        ch = random_channel(rng, n_pairs=n_pairs)
        finer = _split(ch, int(rng.integers(0, n_pairs)), w)
        x = np.linspace(0.0, 0.5, 65)
        assert len(finer.pairs) == n_pairs + 1
        assert np.allclose(mutual_info(finer, x), mutual_info(ch, x), atol=1e-12)
        assert capacity(finer) == pytest.approx(capacity(ch), abs=1e-12)

    def test_split_pair_keeps_lorenz_curve(self, rng):
        t = np.linspace(0.0, 1.0, 101)
        for _ in range(20):
            ch = random_channel(rng, n_pairs=3)
            finer = _split(ch, 1, 0.5)
            assert np.allclose(lorenz(finer)(t), lorenz(ch)(t), atol=1e-12)
            assert dominates(lorenz(finer), lorenz(ch))
            assert dominates(lorenz(ch), lorenz(finer))


class TestShape:
    # 512 points over [0, 1/2]
    grid = np.linspace(0.0, 0.5, 512)

    def test_mutual_info_is_concave(self, rng):
        for _ in range(50):
            ch = random_channel(rng, n_pairs=int(rng.integers(1, 6)), zero=True)
            values = mutual_info(ch, self.grid)
            assert np.all(np.diff(values, 2) <= 1e-9)

    def test_f_value_is_convex(self, rng):
        for _ in range(50):
            ch = random_channel(rng, n_pairs=int(rng.integers(1, 6)))
            values = f_value(ch, self.grid)
            assert np.all(np.diff(values, 2) >= -1e-9)
            assert values[0] == pytest.approx(capacity(ch), abs=1e-14)
            assert values[-1] == pytest.approx(0.0, abs=1e-14)

    @pytest.mark.parametrize("p", [0.01, 0.11, 0.3])
    def test_bsc_closed_form(self, p):
        s = np.linspace(0.0, 0.5, 33)
        h_p = binary_entropy(p)
        h_sp = binary_entropy(convolve(s, p))
        assert np.allclose(mutual_info(bsc(p), s), h_sp - h_p, atol=1e-12)
        # I(U;Y) = H(Y) - H(Y|U) with a BSC(s * p) from U to Y
        assert np.allclose(f_value(bsc(p), s), 1.0 - h_sp, atol=1e-12)

    @pytest.mark.parametrize("e", [0.0, 0.3, 0.9])
    def test_bec_closed_form(self, e):
        s = np.linspace(0.0, 0.5, 33)
        expected = (1 - e) * (1 - binary_entropy(s))
        assert np.allclose(f_value(bec(e), s), expected, atol=1e-12)


class TestUselessChannel:
    def test_identical_rows(self):
        ch = from_rows([1.0, 0.0], [1.0, 0.0])
        assert ch.pairs == ((0.5, 0.5),)
        assert ch.zero_mass == 1.0
        assert raw_output_count(ch) == 1
        assert capacity(ch) == 0.0

    def test_nothing_gets_through(self):
        ch = from_rows([1.0, 0.0], [1.0, 0.0])
        x = np.linspace(0.0, 1.0, 11)
        assert np.allclose(mutual_info(ch, x), 0.0, atol=1e-15)
        assert np.all(f_value(ch, x) == 0.0)
        assert dominates(lorenz(bsc(0.5)), lorenz(ch))
