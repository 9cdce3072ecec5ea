"""
Codec between JSON instance documents and domain objects.

Reading closes relation pairs and validates everything through the domain
constructors; failures carry the document position (posets[i], component
i, ...) in their message. Writing emits covering relations only and dumps
with sorted keys, so equal objects give byte-identical files.
"""

import json
import logging
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple, Union

import numpy as np
from pydantic import ValidationError

from domain.errors import (
    InstanceValidationError,
    ParseError,
    PersistenceQMError,
)
from domain.homology import PersistenceModule, validate_persistence_module
from domain.persistence import (
    PersistencePoset,
    PersistencePosetMap,
    validate_persistence_map,
    validate_persistence_poset,
)
from domain.poset import FinitePoset, validate_poset

from .schemas import (
    FORMAT_VERSION,
    DiagramBody,
    DiagramDocument,
    MapDocument,
    ModuleBody,
    ModuleDocument,
    ModulePairDocument,
    PosetBody,
    instance_adapter,
)

logger = logging.getLogger(__name__)

Instance = Union[
    PersistencePoset,
    PersistencePosetMap,
    PersistenceModule,
    Tuple[PersistenceModule, PersistenceModule],
]

Document = Union[
    DiagramDocument, MapDocument, ModuleDocument, ModulePairDocument
]


def _reraise(where: str, error: PersistenceQMError):
    raise InstanceValidationError(
        f"{where}: {error}", index=error.index, element=error.element
    ) from error


def load_document(text: str) -> Document:
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(
            f"invalid JSON at line {e.lineno}, column {e.colno}: {e.msg}"
        ) from e
    try:
        return instance_adapter.validate_python(raw)
    except ValidationError as e:
        first = e.errors()[0]
        location = ".".join(str(part) for part in first["loc"])
        raise InstanceValidationError(
            f"{location}: {first['msg']} ({e.error_count()} error(s))"
        ) from e


def _diagram_from_body(body: DiagramBody, where: str) -> PersistencePoset:
    posets: List[FinitePoset] = []
    for i, poset in enumerate(body.posets):
        try:
            posets.append(validate_poset(poset.elements, poset.relations))
        except PersistenceQMError as e:
            _reraise(f"{where}posets[{i}]", e)
    try:
        return validate_persistence_poset(posets, body.structure_maps)
    except PersistenceQMError as e:
        _reraise(f"{where}structure_maps", e)


def _module_from_body(body: ModuleBody, where: str) -> PersistenceModule:
    try:
        return validate_persistence_module(body.prime, body.dims, body.steps)
    except PersistenceQMError as e:
        _reraise(f"{where}steps", e)


def from_document(document: Document) -> Instance:
    if isinstance(document, DiagramDocument):
        return _diagram_from_body(document, "")
    if isinstance(document, MapDocument):
        source = _diagram_from_body(document.source, "source.")
        target = _diagram_from_body(document.target, "target.")
        try:
            return validate_persistence_map(
                source, target, document.components
            )
        except PersistenceQMError as e:
            _reraise("components", e)
    if isinstance(document, ModuleDocument):
        return _module_from_body(document, "")
    return (
        _module_from_body(document.first, "first."),
        _module_from_body(document.second, "second."),
    )


def parse_instance(source: Union[str, Path]) -> Instance:
    """Parse a file path or JSON text into a validated domain object.

    Raises:
        ParseError: unreadable file or malformed JSON.
        InstanceValidationError: schema or domain validation failed.
    """
    if isinstance(source, Path) or not source.lstrip().startswith("{"):
        path = Path(source)
        try:
            text = path.read_text(encoding="utf-8")
        except OSError as e:
            raise ParseError(f"cannot read {path}: {e.strerror}") from e
        logger.debug(f"parsing instance file {path}")
    else:
        text = source
    return from_document(load_document(text))


def _poset_body(poset: FinitePoset) -> PosetBody:
    return PosetBody(
        elements=list(poset.elements),
        relations=[list(pair) for pair in poset.covers()],
    )


def _diagram_body(X: PersistencePoset) -> Dict[str, Any]:
    return {
        "T": X.T,
        "posets": [_poset_body(poset) for poset in X.posets],
        "structure_maps": [dict(step.assignment) for step in X.steps],
    }


def _module_body(M: PersistenceModule) -> Dict[str, Any]:
    return {
        "prime": M.p,
        "dims": list(M.dims),
        "steps": [np.asarray(step).tolist() for step in M.steps],
    }


def to_document(
    instance: Instance, meta: Optional[Dict[str, Any]] = None
) -> Document:
    header = {"version": FORMAT_VERSION, "meta": meta}
    if isinstance(instance, PersistencePoset):
        return DiagramDocument(
            kind="poset-diagram", **header, **_diagram_body(instance)
        )
    if isinstance(instance, PersistencePosetMap):
        return MapDocument(
            kind="map",
            **header,
            source=DiagramBody(**_diagram_body(instance.source)),
            target=DiagramBody(**_diagram_body(instance.target)),
            components=[dict(c.assignment) for c in instance.components],
        )
    if isinstance(instance, PersistenceModule):
        return ModuleDocument(
            kind="module", **header, **_module_body(instance)
        )
    first, second = instance
    return ModulePairDocument(
        kind="module-pair",
        **header,
        first=ModuleBody(**_module_body(first)),
        second=ModuleBody(**_module_body(second)),
    )


def dumps(payload: Any) -> str:
    """Stable JSON text: sorted keys, two-space indent, trailing newline."""
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def emit(instance: Instance, meta: Optional[Dict[str, Any]] = None) -> str:
    document = to_document(instance, meta)
    return dumps(document.model_dump(mode="json", exclude_none=True))
