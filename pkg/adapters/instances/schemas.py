"""
Pydantic models for instance documents.
"""

from typing import (
    Annotated,
    Any,
    Dict,
    List,
    Literal,
    Optional,
    Tuple,
    Union,
)

from pydantic import (
    BaseModel,
    Field,
    TypeAdapter,
    field_validator,
    model_validator,
)

FORMAT_VERSION = 1


class PosetBody(BaseModel):
    """One poset: element identifiers plus generating relation pairs."""

    elements: List[str] = Field(
        default_factory=list, description="Element identifiers in order"
    )
    relations: List[Tuple[str, str]] = Field(
        default_factory=list,
        description="Pairs [x, y] meaning x <= y; the reader closes them",
    )


class DiagramBody(BaseModel):
    """Persistence poset P_0 -> ... -> P_T."""

    T: int = Field(..., ge=0, description="Stabilization index")
    posets: List[PosetBody] = Field(..., description="P_0, ..., P_T")
    structure_maps: List[Dict[str, str]] = Field(
        default_factory=list, description="Step P_i -> P_{i+1} per i < T"
    )

    @model_validator(mode="after")
    def check_lengths(self):
        """Validate T against the number of posets."""
        if len(self.posets) != self.T + 1:
            raise ValueError(
                f"T = {self.T} needs {self.T + 1} posets, "
                f"got {len(self.posets)}"
            )
        return self


class ModuleBody(BaseModel):
    """Persistence module over F_prime with dims and step matrices."""

    prime: int = Field(default=2, ge=2, description="Field characteristic")
    dims: List[int] = Field(..., min_length=1, description="d_0, ..., d_T")
    steps: List[List[List[int]]] = Field(
        default_factory=list,
        description="Matrix of M_i -> M_{i+1} (d_{i+1} rows) per i < T",
    )

    @field_validator("dims")
    @classmethod
    def validate_dims(cls, v):
        """Validate dimensions are natural numbers."""
        if any(d < 0 for d in v):
            raise ValueError("dimensions must be non-negative")
        return v


class _Document(BaseModel):
    version: Literal[1] = Field(..., description="Document format version")
    meta: Optional[Dict[str, Any]] = Field(
        None, description="Generator provenance (kind, seed, parameters)"
    )


class DiagramDocument(_Document, DiagramBody):
    kind: Literal["poset-diagram"]


class MapDocument(_Document):
    kind: Literal["map"]
    source: DiagramBody
    target: DiagramBody
    components: List[Dict[str, str]] = Field(
        ..., min_length=1, description="f_i: P_i -> Q_i per index"
    )


class ModuleDocument(_Document, ModuleBody):
    kind: Literal["module"]


class ModulePairDocument(_Document):
    kind: Literal["module-pair"]
    first: ModuleBody
    second: ModuleBody


InstanceDocument = Annotated[
    Union[DiagramDocument, MapDocument, ModuleDocument, ModulePairDocument],
    Field(discriminator="kind"),
]

instance_adapter: TypeAdapter = TypeAdapter(InstanceDocument)
