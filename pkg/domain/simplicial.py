"""
Abstract simplicial complexes built from posets.

Simplices are frozensets of vertex identifiers; the empty simplex is never
stored. Canonical order of simplices follows the vertex order of the
complex, so boundary matrices and homology bases come out the same on
every run.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Dict, FrozenSet, Iterable, List, Optional, Tuple

from .errors import DomainMismatch, NonSimplicialMap, UnknownVertex
from .poset import FinitePoset, MonotoneMap, Side, tagging_suffix

Simplex = FrozenSet[str]


@dataclass(frozen=True)
class SimplicialComplex:
    vertices: Tuple[str, ...]
    simplices: FrozenSet[Simplex]

    @cached_property
    def _position(self) -> Dict[str, int]:
        return {v: i for i, v in enumerate(self.vertices)}

    @cached_property
    def _by_dim(self) -> Dict[int, Tuple[Tuple[str, ...], ...]]:
        grouped: Dict[int, List[Tuple[str, ...]]] = {}
        for simplex in self.simplices:
            ordered = self.ordered(simplex)
            grouped.setdefault(len(ordered) - 1, []).append(ordered)
        return {
            dim: tuple(sorted(group, key=self._key))
            for dim, group in grouped.items()
        }

    def _key(self, ordered: Tuple[str, ...]) -> Tuple[int, ...]:
        return tuple(self._position[v] for v in ordered)

    def ordered(self, simplex: Iterable[str]) -> Tuple[str, ...]:
        return tuple(sorted(simplex, key=self._position.__getitem__))

    @property
    def dimension(self) -> int:
        return max(self._by_dim, default=-1)

    def simplices_of_dim(self, j: int) -> Tuple[Tuple[str, ...], ...]:
        return self._by_dim.get(j, ())

    def f_vector(self) -> Tuple[int, ...]:
        return tuple(
            len(self.simplices_of_dim(j)) for j in range(self.dimension + 1)
        )

    def euler_characteristic(self) -> int:
        return sum((-1) ** j * n for j, n in enumerate(self.f_vector()))

    def __contains__(self, simplex: object) -> bool:
        return frozenset(simplex) in self.simplices  # type: ignore

    def __len__(self) -> int:
        return len(self.simplices)

    @classmethod
    def from_faces(
        cls, vertices: Iterable[str], faces: Iterable[Iterable[str]]
    ) -> SimplicialComplex:
        """Downward closure of the given faces plus every vertex."""
        vertices = tuple(vertices)
        known = set(vertices)
        closed = {frozenset([v]) for v in vertices}
        for face in faces:
            face = tuple(face)
            for v in face:
                if v not in known:
                    raise UnknownVertex(
                        "face mentions unknown vertex", element=v
                    )
            closed.update(_nonempty_subsets(face))
        return cls(vertices, frozenset(closed))

    @classmethod
    def empty(cls) -> SimplicialComplex:
        return cls((), frozenset())


def _nonempty_subsets(face: Tuple[str, ...]) -> List[Simplex]:
    n = len(face)
    return [
        frozenset(face[k] for k in range(n) if mask >> k & 1)
        for mask in range(1, 1 << n)
    ]


def order_complex(
    P: FinitePoset, max_dim: Optional[int] = None
) -> SimplicialComplex:
    """K(P): chains of P, optionally truncated to dimension max_dim."""
    limit = len(P) if max_dim is None else max_dim + 1
    chains: List[Simplex] = []

    def extend(chain: Tuple[str, ...]) -> None:
        chains.append(frozenset(chain))
        if len(chain) == limit:
            return
        for y in P.principal_set(chain[-1], Side.UPPER, strict=True):
            extend(chain + (y,))

    for x in P:
        extend((x,))
    return SimplicialComplex(P.elements, frozenset(chains))


@dataclass(frozen=True)
class SimplicialMap:
    dom: SimplicialComplex
    cod: SimplicialComplex
    assignment: Dict[str, str]

    def __call__(self, v: str) -> str:
        return self.assignment[v]

    def image(self, simplex: Iterable[str]) -> Simplex:
        return frozenset(self.assignment[v] for v in simplex)


def validate_simplicial_map(
    dom: SimplicialComplex,
    cod: SimplicialComplex,
    assignment: Dict[str, str],
) -> SimplicialMap:
    for v in dom.vertices:
        if v not in assignment:
            raise UnknownVertex("vertex map is missing a vertex", element=v)
        if assignment[v] not in cod._position:
            raise UnknownVertex(
                f"image of {v!r} is not a vertex", element=assignment[v]
            )
    phi = SimplicialMap(dom, cod, {v: assignment[v] for v in dom.vertices})
    for simplex in dom.simplices:
        if phi.image(simplex) not in cod.simplices:
            raise NonSimplicialMap(
                f"image of {sorted(simplex)} is not a simplex",
                element=dom.ordered(simplex)[0],
            )
    return phi


def induced_simplicial_map(
    f: MonotoneMap,
    dom: Optional[SimplicialComplex] = None,
    cod: Optional[SimplicialComplex] = None,
    max_dim: Optional[int] = None,
) -> SimplicialMap:
    """K(f): the vertex map f between order complexes.

    Chains map to chains, so no simplex check is needed.
    """
    if dom is None:
        dom = order_complex(f.dom, max_dim)
    if cod is None:
        cod = order_complex(f.cod, max_dim)
    return SimplicialMap(dom, cod, dict(f.assignment))


def compose_simplicial(
    psi: SimplicialMap, phi: SimplicialMap
) -> SimplicialMap:
    """psi after phi."""
    return SimplicialMap(
        phi.dom, psi.cod, {v: psi(phi(v)) for v in phi.dom.vertices}
    )


def join(K: SimplicialComplex, L: SimplicialComplex) -> SimplicialComplex:
    """K ⋆ L; L's vertices are tagged when the vertex names collide."""
    if set(K.vertices) & set(L.vertices):
        suffix = tagging_suffix(K.vertices, L.vertices)
    else:
        suffix = ""
    renamed = {v: v + suffix for v in L.vertices}
    L_simplices = [frozenset(renamed[v] for v in t) for t in L.simplices]
    simplices = set(K.simplices) | set(L_simplices)
    simplices.update(s | t for s in K.simplices for t in L_simplices)
    vertices = K.vertices + tuple(renamed[v] for v in L.vertices)
    return SimplicialComplex(vertices, frozenset(simplices))


def star_link(
    K: SimplicialComplex, v: str
) -> Tuple[SimplicialComplex, SimplicialComplex]:
    """(st(v), lk(v)) as subcomplexes of K."""
    if v not in K._position:
        raise UnknownVertex("vertex not in complex", element=v)
    star = [s for s in K.simplices if s | {v} in K.simplices]
    link = [s for s in star if v not in s]
    return _subcomplex(K, star), _subcomplex(K, link)


def _subcomplex(
    K: SimplicialComplex, simplices: List[Simplex]
) -> SimplicialComplex:
    used = set().union(*simplices) if simplices else set()
    vertices = tuple(u for u in K.vertices if u in used)
    return SimplicialComplex(vertices, frozenset(simplices))


def is_contiguous(phi: SimplicialMap, psi: SimplicialMap) -> bool:
    if phi.dom != psi.dom or phi.cod != psi.cod:
        raise DomainMismatch("contiguity needs maps with equal dom and cod")
    return all(
        phi.image(s) | psi.image(s) in phi.cod.simplices
        for s in phi.dom.simplices
    )
