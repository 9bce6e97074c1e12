import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from lcpkit import new_problem, residuals, x_to_zw, zw_to_x

finite = st.floats(min_value=-1e12, max_value=1e12, allow_nan=False)


class TestNewProblem:
    def test_example_1_is_valid(self, ex1):
        assert ex1.n == 4
        np.testing.assert_array_equal(ex1.q, [-4, 3, -4, 2])

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError, match="dimension mismatch"):
            new_problem(np.eye(3), np.ones(4))

    def test_non_square(self):
        with pytest.raises(ValueError, match="square"):
            new_problem(np.ones((2, 3)), np.ones(2))

    @pytest.mark.parametrize("bad", [np.nan, np.inf, -np.inf])
    def test_non_finite(self, bad):
        M = np.eye(3)
        M[1, 2] = bad
        with pytest.raises(ValueError, match="finite"):
            new_problem(M, np.ones(3))

    def test_data_is_read_only(self, ex1):
        with pytest.raises(ValueError):
            ex1.M[0, 0] = 1.0
        np.testing.assert_array_equal(ex1.A - ex1.B, 2 * np.eye(4))


class TestTransform:
    def test_table_1_solution(self):
        z, w = x_to_zw([0.5, -0.5, 0.5, -0.5])
        np.testing.assert_array_equal(z, [1, 0, 1, 0])
        np.testing.assert_array_equal(w, [0, 1, 0, 1])

    def test_zero(self):
        z, w = x_to_zw(np.zeros(3))
        assert not z.any() and not w.any()

    def test_nonnegative_x(self):
        z, w = x_to_zw([2.0, 3.0])
        np.testing.assert_array_equal(z, [4, 6])
        np.testing.assert_array_equal(w, [0, 0])

    def test_inverse(self):
        np.testing.assert_array_equal(zw_to_x([1, 0, 1, 0], [0, 1, 0, 1]), [0.5, -0.5, 0.5, -0.5])
        np.testing.assert_array_equal(zw_to_x([4, 6], [0, 0]), [2, 3])
        np.testing.assert_array_equal(zw_to_x([1.5, -2], [1.5, -2]), [0, 0])

    def test_length_mismatch(self):
        with pytest.raises(ValueError):
            zw_to_x([1, 2], [1, 2, 3])

    @given(arrays(float, st.integers(1, 12), elements=finite))
    def test_round_trip_exact(self, x):
        z, w = x_to_zw(x)
        np.testing.assert_array_equal(zw_to_x(z, w), x)

    @given(arrays(float, st.integers(1, 12), elements=finite))
    def test_pair_is_complementary(self, x):
        z, w = x_to_zw(x)
        assert (z >= 0).all() and (w >= 0).all()
        assert not (z * w).any()


class TestResiduals:
    def test_example_1_solution(self, ex1):
        r = residuals(ex1, [1, 0, 1, 0])
        assert r.gap == 0 and r.natural_residual == 0
        assert r.min_z == 0 and r.min_w == 0
        assert r.is_solution()

    def test_example_2_solution(self, ex2):
        r = residuals(ex2, [0, 15 / 29, 17 / 29, 0])
        assert abs(r.gap) < 1e-14
        assert r.is_solution(1e-12)

    def test_trivial_solution_for_nonnegative_q(self):
        p = new_problem([[1, 2], [-3, 1]], [0.5, 2.0])
        r = residuals(p, [0, 0])
        assert r.gap == 0 and r.min_w >= 0 and r.is_solution()

    def test_reports_violations(self, ex1):
        r = residuals(ex1, [-1, 0, 0, 0])
        assert r.min_z == -1
        assert not r.is_solution()

    def test_length_mismatch(self, ex1):
        with pytest.raises(ValueError):
            residuals(ex1, [1, 2])

    @given(st.integers(1, 10), st.integers(0, 2**32 - 1))
    def test_gap_matches_compensated_sum(self, n, seed):
        rng = np.random.default_rng(seed)
        p = new_problem(rng.standard_normal((n, n)) * 100, rng.standard_normal(n))
        z = rng.standard_normal(n)
        terms = z * (p.M @ z + p.q)
        ref = math.fsum(terms)
        assert abs(residuals(p, z).gap - ref) <= 4 * n * np.finfo(float).eps * np.abs(terms).sum()
