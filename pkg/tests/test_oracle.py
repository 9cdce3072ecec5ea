"""
Tests for the exhaustive interleaving search.
"""

import pytest

from domain.barcodes import min_interleaving_eps, point_module
from domain.errors import CapExceeded, ShapeMismatch
from domain.oracle import (
    OracleCaps,
    brute_force_interleaving_check,
    least_interleaving_eps,
)
from tests.base_test import infinite, module

SMALL_PAIRS = [
    (module(1, (0, 1)), module(1)),
    (module(2, (0, 2)), module(2)),
    (module(3, (0, 3)), module(3)),
    (point_module(1, 0, 2), point_module(2, 0, 2)),
    (module(2, (0, 1), infinite(0)), module(2, infinite(0))),
    (module(2, infinite(0)), module(2, infinite(0))),
]


class TestBruteForceCheck:
    """Test cases for brute_force_interleaving_check."""

    def test_short_bar_against_zero(self):
        """Test [0, 1) is 1-interleaved with zero but not 0-interleaved."""
        M, N = module(1, (0, 1)), module(1)
        assert not brute_force_interleaving_check(M, N, 0)
        assert brute_force_interleaving_check(M, N, 1)

    def test_isomorphic_modules(self):
        """Test a module is 0-interleaved with itself."""
        M = module(2, (0, 2), infinite(1))
        assert brute_force_interleaving_check(M, M, 0)

    def test_infinite_bar_against_zero(self):
        """Test an infinite bar is never interleaved with zero."""
        M, N = module(1, infinite(0)), module(1)
        assert not brute_force_interleaving_check(M, N, 2)

    def test_monotone_in_eps(self):
        """Test acceptance persists as eps grows."""
        M, N = module(3, (0, 3)), module(3)
        accepted = [brute_force_interleaving_check(M, N, e) for e in range(4)]
        assert accepted == [False, False, True, True]


class TestCaps:
    """Test cases for the oracle size caps."""

    def test_dimension_cap(self):
        """Test large modules are refused."""
        M = module(2, infinite(0), infinite(0), infinite(0))
        with pytest.raises(CapExceeded):
            brute_force_interleaving_check(M, M, 0)

    def test_index_cap(self):
        """Test a long stabilization index is refused."""
        M = module(6, (0, 1))
        with pytest.raises(CapExceeded):
            brute_force_interleaving_check(M, M, 0)

    def test_search_cap(self):
        """Test the candidate count is capped."""
        M = module(1, infinite(0))
        with pytest.raises(CapExceeded):
            brute_force_interleaving_check(
                M, M, 0, caps=OracleCaps(search_cap=1)
            )

    def test_field_mismatch(self):
        """Test the requested field must match both modules."""
        M = module(1, (0, 1))
        with pytest.raises(ShapeMismatch):
            brute_force_interleaving_check(M, M, 0, p=3)


class TestAgreement:
    """Test cases comparing the search with the barcode formula."""

    @pytest.mark.parametrize("M, N", SMALL_PAIRS)
    def test_least_eps_matches_formula(self, M, N):
        """Test the least accepted eps equals the barcode distance."""
        assert least_interleaving_eps(M, N) == min_interleaving_eps(M, N)

    def test_symmetric(self):
        """Test swapping the modules does not change the answer."""
        M, N = module(2, (0, 2)), module(2, (1, 2))
        assert least_interleaving_eps(M, N) == least_interleaving_eps(N, M)

    def test_overlapping_bars(self):
        """Test {[0,5)} and {[2,7)} at T = 7 are 2- but not 1-interleaved."""
        caps = OracleCaps(dim_cap=6, max_t=7)
        M, N = module(7, (0, 5)), module(7, (2, 7))
        assert not brute_force_interleaving_check(M, N, 1, caps=caps)
        assert brute_force_interleaving_check(M, N, 2, caps=caps)
        assert least_interleaving_eps(M, N, caps=caps) == 2
