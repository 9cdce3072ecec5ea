"""
Tests for barcodes, the rank invariant and interleaving distances.
"""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from domain.barcodes import (
    Barcode,
    Interval,
    acyclicity_measure,
    bottleneck_distance,
    deletion_cost,
    interval_decomposition,
    min_interleaving_eps,
    module_distances,
    module_from_barcode,
    point_module,
    rank_invariant,
)
from domain.errors import ShapeMismatch
from domain.homology import PersistenceModule, validate_persistence_module
from domain.persistence import INF
from domain.poset import FinitePoset
from tests.base_test import (
    bars,
    circle,
    constant,
    inclusions,
    infinite,
    merge_diagram,
    module,
    poset,
)

T_MAX = 4


@st.composite
def barcodes(draw, T=T_MAX):
    count = draw(st.integers(min_value=0, max_value=4))
    intervals = []
    for _ in range(count):
        b = draw(st.integers(min_value=0, max_value=T))
        d = draw(st.integers(min_value=b + 1, max_value=T + 1))
        intervals.append(Interval(b, INF if d > T else d))
    return Barcode.of(T, intervals)


class TestInterval:
    """Test cases for intervals."""

    def test_rejects_empty_interval(self):
        """Test death must come after birth."""
        with pytest.raises(ValueError):
            Interval(2, 2)

    def test_contains_and_str(self):
        """Test membership and rendering."""
        bar = Interval(1, INF)
        assert bar.contains(10)
        assert not bar.contains(0)
        assert str(bar) == "[1,inf)"
        assert str(Interval(0, 3)) == "[0,3)"

    def test_barcode_rejects_late_death(self):
        """Test finite deaths must not pass the stabilization index."""
        with pytest.raises(ValueError):
            Barcode.of(2, [Interval(0, 3)])


class TestRankInvariant:
    """Test cases for the rank invariant."""

    def test_zero_step(self):
        """Test a zero step has rank 0."""
        M = validate_persistence_module(2, [1, 1], [[[0]]])
        assert rank_invariant(M, 0, 1) == 0

    def test_composite(self):
        """Test rank of a two-step composite."""
        M = validate_persistence_module(2, [1, 2, 1], [[[1], [0]], [[1, 1]]])
        assert rank_invariant(M, 0, 2) == 1
        assert rank_invariant(M, 1, 1) == 2


class TestIntervalDecomposition:
    """Test cases for interval decomposition."""

    def test_identity_steps(self):
        """Test a constant line is a single infinite bar."""
        M = validate_persistence_module(2, [1, 1, 1], [[[1]], [[1]]])
        assert interval_decomposition(M).same_bars(bars(2, infinite(0)))

    def test_single_finite_bar(self):
        """Test dims (0, 1, 0) give [1, 2)."""
        M = validate_persistence_module(2, [0, 1, 0], [[[]], []])
        assert interval_decomposition(M).same_bars(bars(2, (1, 2)))

    def test_mixed(self):
        """Test dims (1, 2, 1) with merging steps."""
        M = validate_persistence_module(2, [1, 2, 1], [[[1], [0]], [[1, 1]]])
        assert interval_decomposition(M).same_bars(
            bars(2, infinite(0), (1, 2))
        )

    @settings(max_examples=60)
    @given(barcodes())
    def test_reconstruction(self, barcode):
        """Test decomposing a direct sum of intervals recovers them."""
        M = module_from_barcode(barcode, 3)
        assert interval_decomposition(M).same_bars(barcode)


class TestPointModule:
    """Test cases for point modules."""

    def test_from_start(self):
        """Test *^0 in degree 0 is constant."""
        M = point_module(0, 0, 2)
        assert M.dims == (1, 1, 1)
        assert all(step.tolist() == [[1]] for step in M.steps)

    def test_late_point(self):
        """Test *^2 in degree 0 with T = 3."""
        assert point_module(2, 0, 3).dims == (0, 0, 1, 1)

    def test_higher_degrees_vanish(self):
        """Test *^i has no homology in positive degrees."""
        assert point_module(1, 1, 3).total_dimension == 0


class TestBottleneck:
    """Test cases for bottleneck distance."""

    def test_equal(self):
        """Test equal barcodes are at distance 0."""
        A = bars(5, (0, 3), infinite(1))
        assert bottleneck_distance(A, A) == 0

    def test_match_beats_deletion(self):
        """Test {[0,5)} vs {[2,7)} is 2."""
        assert bottleneck_distance(bars(7, (0, 5)), bars(7, (2, 7))) == 2

    def test_deletion(self):
        """Test {[0,1)} vs the empty barcode is 1."""
        assert bottleneck_distance(bars(1, (0, 1)), bars(1)) == 1
        assert deletion_cost(Interval(0, 4)) == 2

    def test_infinite_mismatch(self):
        """Test different numbers of infinite bars are infinitely apart."""
        assert bottleneck_distance(bars(2, infinite(0)), bars(2)) == INF

    @settings(max_examples=40)
    @given(barcodes(), barcodes())
    def test_symmetric(self, A, B):
        """Test the distance is symmetric."""
        assert bottleneck_distance(A, B) == bottleneck_distance(B, A)

    @settings(max_examples=40)
    @given(barcodes(), barcodes(), barcodes())
    def test_triangle_inequality(self, A, B, C):
        """Test the triangle inequality."""
        assert bottleneck_distance(A, C) <= bottleneck_distance(
            A, B
        ) + bottleneck_distance(B, C)


class TestInterleavingDistance:
    """Test cases for module distances."""

    def test_isomorphic(self):
        """Test isomorphic modules are 0 apart."""
        M = module(3, (0, 2), infinite(1))
        N = validate_persistence_module(
            2, M.dims, [step.tolist() for step in M.steps]
        )
        assert min_interleaving_eps(M, N) == 0

    def test_interval_against_zero(self):
        """Test [0, 3) against the zero module is 2."""
        assert min_interleaving_eps(module(3, (0, 3)), module(3)) == 2

    def test_shifted_points(self):
        """Test *^1 against *^3 in degree 0 is 2."""
        first, second = point_module(1, 0, 3), point_module(3, 0, 3)
        assert min_interleaving_eps(first, second) == 2

    def test_pads_to_common_index(self):
        """Test modules with different T are compared after padding."""
        short, long = module(1, infinite(0)), module(4, infinite(0))
        assert min_interleaving_eps(short, long) == 0

    def test_prime_mismatch(self):
        """Test modules over different fields are rejected."""
        with pytest.raises(ShapeMismatch):
            min_interleaving_eps(module(1, (0, 1)), module(1, (0, 1), p=3))

    def test_module_distances(self):
        """Test degree-wise distances."""
        first = [module(3, infinite(0)), module(3, (0, 3))]
        second = [module(3, infinite(0)), PersistenceModule.zero(3)]
        assert module_distances(first, second) == (0, 2)


class TestAcyclicity:
    """Test cases for eps-acyclicity."""

    def test_late_point(self):
        """Test a single point appearing at index 1 is 0-acyclic."""
        X = inclusions(FinitePoset.empty(), poset("a"))
        result = acyclicity_measure(X, 2, 2)
        assert result.eps == 0
        assert result.per_degree == (0, 0, 0)

    def test_earlier_start(self):
        """Test measuring the same point from index 0 costs the gap."""
        X = inclusions(FinitePoset.empty(), poset("a"))
        assert acyclicity_measure(X, 2, 2, start=0).per_degree == (1, 0, 0)

    def test_merging_points(self):
        """Test two points merging one step late are 1-acyclic."""
        X = inclusions(poset("ab"), poset("abc", ["ac", "bc"]))
        assert acyclicity_measure(X, 2, 1).eps == 1

    def test_strict_lower_set_merge(self):
        """Test the strict lower set of the merge example."""
        lower = merge_diagram().subdiagram([("b", "c"), ("b", "c")])
        assert acyclicity_measure(lower, 2, 1).eps == 1

    def test_circle_is_not_acyclic(self):
        """Test a persistent loop is never acyclic."""
        result = acyclicity_measure(constant(circle()), 2, 1)
        assert result.eps == INF
        assert not result.empty_input

    def test_empty(self):
        """Test the empty diagram is flagged."""
        result = acyclicity_measure(constant(FinitePoset.empty()), 2, 1)
        assert result.eps == INF
        assert result.empty_input
