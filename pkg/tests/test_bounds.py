import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from projconst.bounds import (
    Cubic,
    bohnenblust_upper,
    cubic_root_upper,
    kadets_snobar,
    kll_upper,
    lift_upper,
    pair_sum_cubic,
)
from projconst.errors import ArgumentError, PreconditionError

GOLDEN = (1 + math.sqrt(5)) / 2


class TestClosedForms:
    def test_kadets_snobar(self):
        assert kadets_snobar(1) == 1
        assert kadets_snobar(2) == pytest.approx(math.sqrt(2))
        assert 4 / 3 <= kadets_snobar(2)
        assert kadets_snobar(4) == 2 and 5 / 3 <= kadets_snobar(4)
        with pytest.raises(ArgumentError):
            kadets_snobar(0)

    def test_kll(self):
        assert kll_upper(3, 6) == pytest.approx(GOLDEN, abs=1e-12)
        assert kll_upper(2, 3) == pytest.approx(4 / 3, abs=1e-15)
        for n in range(1, 8):
            assert kll_upper(n, n) == 1
        with pytest.raises(ArgumentError):
            kll_upper(4, 3)

    @pytest.mark.parametrize("n,d", [(n, d) for d in range(1, 12) for n in range(1, d + 1)])
    def test_kll_below_ks(self, n, d):
        assert kll_upper(n, d) <= kadets_snobar(n) + 1e-12

    def test_bohnenblust(self):
        assert bohnenblust_upper(2) == 1
        assert bohnenblust_upper(3) == pytest.approx(4 / 3)
        assert bohnenblust_upper(6) == pytest.approx(5 / 3)
        with pytest.raises(ArgumentError):
            bohnenblust_upper(1)

    def test_lift(self):
        for d in range(2, 9):
            assert lift_upper(2, d, 4 / 3) == pytest.approx(7 / 3)
        assert lift_upper(1, 5, 1) == 2 > bohnenblust_upper(5)
        assert lift_upper(4, 6, kadets_snobar(4)) == 3
        with pytest.raises(ArgumentError):
            lift_upper(5, 4, 1.0)


class TestCubic:
    def test_from_roots_and_eval(self):
        p = Cubic.from_roots(1, 2, 3)
        assert (p.b, p.c, p.e) == (-6, 11, -6)
        assert [p(x) for x in (1, 2, 3)] == [0, 0, 0]
        assert np.allclose(p.roots(), [3, 2, 1])

    def test_discriminant(self):
        assert Cubic.from_roots(1, 2, 3).discriminant() == pytest.approx(4)
        assert not Cubic(0, 1, 0).has_three_real_roots()  # x^3 + x
        assert Cubic(0, 0, 0).has_three_real_roots()

    def test_root_upper_exact_at_symmetric_roots(self):
        assert cubic_root_upper(Cubic.from_roots(1, 2, 3)) == pytest.approx(3, abs=1e-12)

    def test_triple_root(self):
        assert cubic_root_upper(Cubic(0, 0, 0)) == 0
        assert cubic_root_upper(Cubic.from_roots(2, 2, 2)) == pytest.approx(2)

    def test_complex_roots_rejected(self):
        with pytest.raises(PreconditionError):
            cubic_root_upper(Cubic(0, 1, 0))

    @settings(max_examples=300, deadline=None)
    @given(st.lists(st.floats(-50, 50, allow_nan=False), min_size=3, max_size=3))
    def test_root_upper_dominates_largest_root(self, roots):
        p = Cubic.from_roots(*roots)
        # near-triple roots are determined by the rounded coefficients only to
        # about eps**(1/3) relative accuracy, hence the loose tolerance
        assert cubic_root_upper(p) >= max(roots) - 1e-5 * max(1.0, max(map(abs, roots)))

    def test_root_upper_against_companion_oracle(self):
        rng = np.random.default_rng(0)
        for _ in range(1000):
            p = Cubic.from_roots(*rng.uniform(-5, 5, size=3))
            assert cubic_root_upper(p) >= p.roots()[0] - 1e-9

    def test_clamp_near_triple_root(self):
        # coefficients of three nearly equal roots: the raw formula is rounding noise
        r = [-19.606339929118665, -19.606339980564876, -19.606346008410533]
        assert cubic_root_upper(Cubic.from_roots(*r)) >= max(r) - 1e-4

    def test_pair_sum(self):
        q = pair_sum_cubic(Cubic.from_roots(1, 2, 3))
        assert (q.b, q.c, q.e) == (-12, 47, -60)
        assert pair_sum_cubic(Cubic(0, 0, 0)) == Cubic(0, 0, 0)

    @pytest.mark.parametrize("s,t", [(0.2, 0.3), (0.5, 0.1), (0.1, 0.8)])
    def test_pair_sum_symbolic_instance(self, s, t):
        w = 1 - s - t
        q = Cubic(-t, -s * (1 - s), s * t * w)
        h = pair_sum_cubic(q)
        assert (h.b, h.c, h.e) == pytest.approx((-2 * t, t * t - s * (1 - s), s * t * t), abs=1e-15)

    @settings(max_examples=100, deadline=None)
    @given(st.lists(st.floats(-10, 10, allow_nan=False), min_size=3, max_size=3))
    def test_pair_sum_roots(self, r):
        q = pair_sum_cubic(Cubic.from_roots(*r))
        expected = sorted([r[0] + r[1], r[0] + r[2], r[1] + r[2]], reverse=True)
        for x in expected:
            assert abs(q(x)) <= 1e-8 * max(1.0, max(map(abs, r))) ** 3
