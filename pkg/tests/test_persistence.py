"""
Tests for persistence posets, persistence points, fibers and cylinders.
"""

import random

import pytest

from domain.errors import (
    ArityMismatch,
    NonCommutingSquare,
    NonMonotoneStep,
    NotAFiltration,
    NotAPersistencePoint,
)
from domain.persistence import (
    INF,
    PersistencePoset,
    PersistencePosetMap,
    cardinality,
    enumerate_persistence_points,
    is_filtration,
    persistence_fiber,
    persistence_mapping_cylinder,
    persistence_point,
    principal_subposet,
    remove_persistence_point,
    threshold,
    validate_persistence_map,
    validate_persistence_poset,
)
from domain.poset import FinitePoset, Side
from use_cases.generators import random_filtration
from tests.base_test import (
    chain,
    collapsing_map,
    constant,
    inclusions,
    merge_map,
    names,
    poset,
)

EMPTY = FinitePoset.empty()


def collapse_diagram() -> PersistencePoset:
    """a < b at index 0 collapsed onto the single point c at index 1."""
    return validate_persistence_poset(
        [chain("ab"), poset("c")], [{"a": "c", "b": "c"}]
    )


class TestValidatePersistencePoset:
    """Test cases for building persistence posets."""

    def test_single_poset(self):
        """Test T = 0 gives a constant diagram."""
        X = validate_persistence_poset([poset("a")], [])
        assert X.T == 0
        assert X.at(5) == poset("a")

    def test_filtration(self):
        """Test growing inclusions form a filtration."""
        X = inclusions(EMPTY, poset("a"), chain("ab"))
        assert X.T == 2
        assert is_filtration(X)

    def test_collapsing_step(self):
        """Test a collapse is valid but not a filtration."""
        X = collapse_diagram()
        assert not X.is_filtration()

    def test_non_monotone_step(self):
        """Test an order reversing step is rejected with its index."""
        with pytest.raises(NonMonotoneStep) as exc_info:
            validate_persistence_poset(
                [chain("ab"), chain("xy")], [{"a": "y", "b": "x"}]
            )
        assert exc_info.value.index == 0

    def test_step_count(self):
        """Test the number of steps must be one less than posets."""
        with pytest.raises(ArityMismatch):
            validate_persistence_poset([poset("a"), poset("a")], [])
        with pytest.raises(ArityMismatch):
            validate_persistence_poset([], [])

    def test_steps_beyond_stabilization_are_identities(self):
        """Test indices past T repeat P_T."""
        X = inclusions(poset("a"), chain("ab"))
        assert X.step(7).is_identity()
        assert X.extended(4).sizes() == (1, 2, 2, 2, 2)

    def test_structure_maps_compose_steps(self):
        """Test memoized composites agree with folding the steps."""
        X = inclusions(EMPTY, poset("a"), chain("ab"), chain("abc"))
        for i in range(4):
            for j in range(i, 5):
                assert X.structure_map(i, j) == X.fold_steps(i, j)


class TestThresholdAndCardinality:
    """Test cases for thresholds and cardinality."""

    def test_threshold(self):
        """Test thresholds of nonempty, late and empty diagrams."""
        assert threshold(constant(poset("a"))) == 0
        assert threshold(inclusions(EMPTY, EMPTY, poset("a"))) == 2
        assert threshold(inclusions(EMPTY, EMPTY)) == INF

    def test_cardinality(self):
        """Test cardinality is the largest index size."""
        assert cardinality(constant(poset("abc"))) == 3
        X = inclusions(poset("a"), poset("ab"), poset("abcd"))
        assert cardinality(X) == 4
        shrinking = validate_persistence_poset(
            [poset("abcde"), poset("xyz"), poset("uv")],
            [
                {"a": "x", "b": "x", "c": "y", "d": "z", "e": "z"},
                {"x": "u", "y": "u", "z": "v"},
            ],
        )
        assert shrinking.cardinality() == 5

    def test_summary(self):
        """Test the summary collects the basic invariants."""
        summary = inclusions(EMPTY, poset("a")).summary()
        assert summary.stabilization == 1
        assert summary.threshold == 1
        assert summary.sizes == (0, 1)
        assert summary.is_filtration


class TestPersistencePoints:
    """Test cases for persistence points."""

    def test_constant_poset(self):
        """Test two points with threshold 0 on a constant antichain."""
        points = enumerate_persistence_points(constant(poset("ab")))
        assert names(points) == ["a", "b"]
        assert [v.threshold for v in points] == [0, 0]

    def test_thresholds_of_filtration(self):
        """Test thresholds follow the index where elements appear."""
        X = inclusions(EMPTY, poset("a"), poset("ab"))
        points = enumerate_persistence_points(X)
        assert [(v.anchor, v.threshold) for v in points] == [
            ("a", 1),
            ("b", 2),
        ]
        assert points[1].at(0) is None
        assert points[1].at(2) == "b"

    def test_single_index(self):
        """Test T = 0 gives one point per element."""
        assert len(enumerate_persistence_points(constant(poset("abcd")))) == 4

    def test_collapsed_elements_are_not_points(self):
        """Test a point needs single-element preimages."""
        with pytest.raises(NotAPersistencePoint):
            persistence_point(collapse_diagram(), "c")

    def test_enumeration_needs_filtration(self):
        """Test points are enumerated on filtrations only."""
        with pytest.raises(NotAFiltration):
            enumerate_persistence_points(collapse_diagram())

    def test_threshold_must_match(self):
        """Test a wrong threshold is rejected."""
        X = inclusions(EMPTY, poset("a"))
        with pytest.raises(NotAPersistencePoint):
            persistence_point(X, "a", threshold=0)

    @pytest.mark.parametrize("seed", range(8))
    def test_tracks_partition_every_index(self, seed):
        """Test each Q_i is covered once by the tracks alive at i."""
        Q = random_filtration(random.Random(seed), 5, 3)
        points = enumerate_persistence_points(Q)
        for i in range(Q.T + 1):
            alive = [v.at(i) for v in points if v.at(i) is not None]
            assert len(alive) == len(set(alive))
            assert set(alive) == set(Q.at(i))
            assert all(v.threshold <= i for v in points if v.at(i) is not None)


class TestRemovePersistencePoint:
    """Test cases for removing persistence points."""

    def test_remove_top_of_chain(self):
        """Test removing b from the constant chain a < b."""
        X = constant(chain("ab"))
        Y = remove_persistence_point(X, persistence_point(X, "b"))
        assert Y.agrees_with(constant(poset("a")))

    def test_remove_only_element(self):
        """Test removing the only element leaves an empty diagram."""
        X = constant(poset("a"))
        Y = remove_persistence_point(X, persistence_point(X, "a"))
        assert Y.is_empty()

    def test_remove_late_point(self):
        """Test removal is index-wise set difference."""
        X = inclusions(EMPTY, poset("a"), poset("ab"))
        Y = remove_persistence_point(X, persistence_point(X, "b"))
        assert Y.sizes() == (0, 1, 1)

    @pytest.mark.parametrize("seed", range(8))
    def test_removal_drops_one_element_from_threshold(self, seed):
        """Test |(X \\ v)_i| = |X_i| - 1 exactly when i >= trh(v)."""
        X = random_filtration(random.Random(seed), 5, 3)
        for v in enumerate_persistence_points(X):
            reduced = remove_persistence_point(X, v)
            expected = tuple(
                size - (1 if i >= v.threshold else 0)
                for i, size in enumerate(X.sizes())
            )
            assert reduced.sizes() == expected


class TestPrincipalSubposet:
    """Test cases for persistence principal subposets."""

    def test_lower_set(self):
        """Test L_c in a growing chain."""
        X = inclusions(poset("c"), chain("bc"), chain("abc"))
        v = persistence_point(X, "c")
        L = principal_subposet(X, v, Side.LOWER)
        assert L.sizes() == (1, 2, 3)
        strict = principal_subposet(X, v, Side.LOWER, strict=True)
        assert strict.sizes() == (0, 1, 2)

    def test_empty_before_threshold(self):
        """Test the principal subposet is empty before the threshold."""
        X = inclusions(poset("a"), chain("ab"))
        v = persistence_point(X, "b")
        assert principal_subposet(X, v, Side.UPPER).sizes() == (0, 1)

    def test_empty_element_name(self):
        """Test an element named by the empty string keeps its lower set."""
        X = inclusions(poset([""]), chain(["", "a"]))
        v = persistence_point(X, "")
        assert principal_subposet(X, v, Side.LOWER).sizes() == (1, 1)
        assert principal_subposet(X, v, Side.UPPER).sizes() == (1, 2)


class TestPersistenceMaps:
    """Test cases for persistence poset maps."""

    def test_identity(self):
        """Test identity maps validate."""
        X = inclusions(poset("a"), chain("ab"))
        f = PersistencePosetMap.identity(X)
        assignments = [c.assignment for c in f.components]
        g = validate_persistence_map(X, X, assignments)
        assert g == f

    def test_non_commuting_square(self):
        """Test a failing square is named by index and element."""
        source = constant(poset("a"), 1)
        target = constant(poset(["q1", "q2"]), 1)
        with pytest.raises(NonCommutingSquare) as exc_info:
            validate_persistence_map(
                source, target, [{"a": "q1"}, {"a": "q2"}]
            )
        assert exc_info.value.index == 0
        assert exc_info.value.element == "a"

    def test_short_component_list_is_extended(self):
        """Test the last component repeats."""
        source = constant(poset("a"), 2)
        target = constant(poset("q"), 2)
        f = validate_persistence_map(source, target, [{"a": "q"}])
        assert f.N == 2
        assert f.component(2).assignment == {"a": "q"}

    def test_too_many_components(self):
        """Test at most max(T_P, T_Q) + 1 components are accepted."""
        X = constant(poset("a"))
        with pytest.raises(ArityMismatch):
            validate_persistence_map(X, X, [{"a": "a"}, {"a": "a"}])


class TestPersistenceFiber:
    """Test cases for fibers over persistence points."""

    def test_identity_fiber_is_lower_set(self):
        """Test the fiber of the identity is L_v itself."""
        X = inclusions(poset("c"), chain("bc"), chain("abc"))
        f = PersistencePosetMap.identity(X)
        v = persistence_point(X, "c")
        fiber = persistence_fiber(f, v, Side.LOWER)
        assert fiber.agrees_with(principal_subposet(X, v, Side.LOWER))

    def test_merge_fibers(self):
        """Test the fibers of the merge example."""
        f = merge_map()
        points = enumerate_persistence_points(f.target)
        lower = [persistence_fiber(f, v).sizes() for v in points]
        assert lower == [(1, 1), (2, 2)]
        upper = [persistence_fiber(f, v, Side.UPPER).sizes() for v in points]
        assert upper == [(2, 2), (1, 1)]


class TestPersistenceMappingCylinder:
    """Test cases for the persistence mapping cylinder."""

    def test_one_point(self):
        """Test the cylinder of {p} -> {q} is the chain p < q'."""
        f = collapsing_map(
            constant(poset("p")), constant(poset("q")), {"p": "q"}
        )
        cyl = persistence_mapping_cylinder(f)
        assert cyl.diagram.at(0).elements == ("p", "q'")
        assert cyl.diagram.at(0).lt("p", "q'")

    def test_identity_on_constant_chain(self):
        """Test every index holds the four-element cylinder."""
        X = constant(chain("ab"), 2)
        cyl = persistence_mapping_cylinder(PersistencePosetMap.identity(X))
        assert cyl.diagram.sizes() == (4, 4, 4)
        assert cyl.diagram.at(1).lt("a", "b'")
        assert all(step.is_identity() for step in cyl.diagram.steps)

    def test_empty_source(self):
        """Test the cylinder of an empty source is a copy of the target."""
        f = collapsing_map(constant(EMPTY), constant(chain("ab")), {})
        cyl = persistence_mapping_cylinder(f)
        assert cyl.diagram.at(0).elements == ("a'", "b'")
        assert cyl.diagram.at(0).lt("a'", "b'")

    def test_retraction_and_inclusions(self):
        """Test the structure maps of the cylinder."""
        f = merge_map()
        cyl = persistence_mapping_cylinder(f)
        assert cyl.retraction.component(1)("b") == "q2"
        assert cyl.cod_inclusion.component(0)("q1") == cyl.tag("q1")
        assert cyl.diagram.sizes() == (4, 4)
