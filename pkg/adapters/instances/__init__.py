"""
Instance file adapters.

JSON documents for persistence posets, persistence poset maps and
persistence modules: pydantic schemas plus a codec to and from the domain.
"""

from .codec import (
    Instance,
    dumps,
    emit,
    from_document,
    load_document,
    parse_instance,
    to_document,
)
from .schemas import (
    DiagramDocument,
    MapDocument,
    ModuleDocument,
    ModulePairDocument,
)

__all__ = [
    "Instance",
    "dumps",
    "emit",
    "from_document",
    "load_document",
    "parse_instance",
    "to_document",
    "DiagramDocument",
    "MapDocument",
    "ModuleDocument",
    "ModulePairDocument",
]
