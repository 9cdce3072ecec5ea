"""
Tests for finite posets, monotone maps and mapping cylinders.
"""

import pytest
from hypothesis import given
from hypothesis import strategies as st

from domain.errors import (
    CycleDetected,
    DuplicateElement,
    NonMonotoneMap,
    UnknownElement,
)
from domain.poset import (
    Extremity,
    FinitePoset,
    Side,
    compose,
    identity_map,
    mapping_cylinder,
    tagging_suffix,
    validate_monotone_map,
    validate_poset,
)
from tests.base_test import chain, diamond, poset


def strict_pairs(P: FinitePoset):
    return {(x, y) for x, y in P.leq if x != y}


@st.composite
def dags(draw):
    n = draw(st.integers(min_value=1, max_value=6))
    elements = [f"x{k}" for k in range(n)]
    pairs = [
        (elements[i], elements[j])
        for i in range(n)
        for j in range(i + 1, n)
        if draw(st.booleans())
    ]
    return elements, pairs


class TestValidatePoset:
    """Test cases for validate_poset."""

    def test_singleton(self):
        """Test a single element is related only to itself."""
        P = validate_poset(["a"])
        assert P.leq == frozenset({("a", "a")})

    def test_transitive_closure(self):
        """Test generating pairs are closed transitively."""
        P = validate_poset(["a", "b", "c"], [("a", "b"), ("b", "c")])
        assert P.le("a", "c")
        assert not P.le("c", "a")

    def test_cycle_detected(self):
        """Test a two-element cycle is rejected and reported."""
        with pytest.raises(CycleDetected) as exc_info:
            validate_poset(["a", "b"], [("a", "b"), ("b", "a")])
        assert set(exc_info.value.cycle) == {"a", "b"}
        assert "cycle" in str(exc_info.value)

    def test_duplicate_element(self):
        """Test repeated identifiers are rejected."""
        with pytest.raises(DuplicateElement):
            validate_poset(["a", "a"])

    def test_unknown_element_in_relation(self):
        """Test relations must mention known elements."""
        with pytest.raises(UnknownElement) as exc_info:
            validate_poset(["a"], [("a", "z")])
        assert exc_info.value.element == "z"

    @given(dags())
    def test_closure_is_idempotent(self, dag):
        """Test closing an already closed relation changes nothing."""
        elements, pairs = dag
        P = validate_poset(elements, pairs)
        assert validate_poset(P.elements, P.leq) == P

    @given(dags())
    def test_covers_generate_the_order(self, dag):
        """Test the Hasse diagram closes back to the same order."""
        elements, pairs = dag
        P = validate_poset(elements, pairs)
        assert validate_poset(P.elements, P.covers()) == P


class TestPrincipalSets:
    """Test cases for principal sets and extremal elements."""

    def test_lower_set_on_chain(self):
        """Test L_b on a < b < c."""
        assert chain("abc").principal_set("b", Side.LOWER) == ("a", "b")

    def test_strict_lower_set_of_minimal(self):
        """Test the strict lower set of a minimal element is empty."""
        assert poset("ab").principal_set("a", Side.LOWER, strict=True) == ()

    def test_strict_lower_set_of_diamond_top(self):
        """Test the strict lower set of the diamond top."""
        lower = diamond().principal_set("d", Side.LOWER, strict=True)
        assert lower == ("a", "b", "c")

    def test_upper_set(self):
        """Test U_a on the diamond."""
        assert diamond().principal_set("a", Side.UPPER) == tuple("abcd")

    def test_unknown_element(self):
        """Test principal sets need a known element."""
        with pytest.raises(UnknownElement):
            chain("ab").principal_set("z")

    def test_extremal_elements(self):
        """Test minimal and maximal elements."""
        assert chain("abc").extremal_elements(Extremity.MINIMAL) == ("a",)
        assert poset("abc").extremal_elements() == ("a", "b", "c")
        assert diamond().extremal_elements(Extremity.MAXIMAL) == ("d",)


class TestInducedSubposet:
    """Test cases for induced subposets."""

    def test_all_elements(self):
        """Test inducing on every element gives P back."""
        P = diamond()
        assert P.induced_subposet(P.elements) == P

    def test_chain_endpoints(self):
        """Test {a, c} in a < b < c keeps a < c."""
        Q = chain("abc").induced_subposet(["a", "c"])
        assert Q.elements == ("a", "c")
        assert Q.le("a", "c")

    def test_diamond_middles(self):
        """Test {b, c} in the diamond is an antichain."""
        Q = diamond().induced_subposet(["b", "c"])
        assert strict_pairs(Q) == set()

    def test_dual_reverses_order(self):
        """Test the dual poset reverses every relation."""
        assert chain("ab").dual().le("b", "a")


class TestMonotoneMaps:
    """Test cases for monotone maps."""

    def test_validate_monotone(self):
        """Test a collapse of a chain onto a point is monotone."""
        collapse = {"a": "q", "b": "q"}
        f = validate_monotone_map(chain("ab"), poset("q"), collapse)
        assert f.image() == ("q",)
        assert not f.is_injective()

    def test_order_reversal_rejected(self):
        """Test an order reversing assignment is rejected."""
        with pytest.raises(NonMonotoneMap) as exc_info:
            validate_monotone_map(
                chain("ab"), chain("xy"), {"a": "y", "b": "x"}
            )
        assert exc_info.value.element == "a"

    def test_missing_element(self):
        """Test the assignment must be total."""
        with pytest.raises(UnknownElement):
            validate_monotone_map(chain("ab"), poset("q"), {"a": "q"})

    def test_image_outside_codomain(self):
        """Test images must be codomain elements."""
        with pytest.raises(UnknownElement):
            validate_monotone_map(poset("a"), poset("q"), {"a": "z"})

    def test_compose_and_preimage(self):
        """Test composition and preimages."""
        f = validate_monotone_map(
            poset("ab"), chain("xy"), {"a": "x", "b": "y"}
        )
        g = validate_monotone_map(
            chain("xy"), poset("q"), {"x": "q", "y": "q"}
        )
        h = compose(g, f)
        assert h.assignment == {"a": "q", "b": "q"}
        assert f.preimage(["y"]) == ("b",)

    def test_identity(self):
        """Test identity maps."""
        assert identity_map(diamond()).is_identity()


class TestMappingCylinder:
    """Test cases for mapping cylinders."""

    def test_one_point(self):
        """Test the cylinder of {p} -> {q} is the chain p < q'."""
        f = validate_monotone_map(poset("p"), poset("q"), {"p": "q"})
        cyl = mapping_cylinder(f)
        assert cyl.poset.elements == ("p", "q'")
        assert cyl.poset.lt("p", "q'")
        assert cyl.retraction("p") == "q"
        assert cyl.retraction("q'") == "q"

    def test_identity_on_chain(self):
        """Test the cylinder of the identity on a < b."""
        cyl = mapping_cylinder(identity_map(chain("ab")))
        assert len(cyl.poset) == 4
        assert strict_pairs(cyl.poset) == {
            ("a", "b"),
            ("a'", "b'"),
            ("a", "a'"),
            ("a", "b'"),
            ("b", "b'"),
        }

    def test_antichain_onto_point(self):
        """Test two incomparable points over a single point."""
        collapse = {"a": "q", "b": "q"}
        f = validate_monotone_map(poset("ab"), poset("q"), collapse)
        cyl = mapping_cylinder(f)
        assert strict_pairs(cyl.poset) == {("a", "q'"), ("b", "q'")}

    def test_upper_side(self):
        """Test the upper cylinder puts the codomain below."""
        f = validate_monotone_map(poset("p"), poset("q"), {"p": "q"})
        cyl = mapping_cylinder(f, Side.UPPER)
        assert cyl.poset.lt("q'", "p")
        assert cyl.side is Side.UPPER

    def test_suffix_avoids_collisions(self):
        """Test tagging repeats the suffix until names are fresh."""
        assert tagging_suffix({"q'"}, ["q"]) == "''"
        f = validate_monotone_map(poset(["q'"]), poset("q"), {"q'": "q"})
        assert mapping_cylinder(f).poset.elements == ("q'", "q''")

    def test_inclusions(self):
        """Test the inclusions land on the right elements."""
        f = validate_monotone_map(poset("p"), poset("q"), {"p": "q"})
        cyl = mapping_cylinder(f)
        assert cyl.dom_inclusion("p") == "p"
        assert cyl.cod_inclusion("q") == "q'"
        assert cyl.tag("q") == "q'"
