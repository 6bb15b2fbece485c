"""
Pydantic schemas for closed-form bound reports.
"""

from fractions import Fraction
from typing import Any, Dict, List, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, InstanceOf, field_serializer

from app.schemas.common import serialize_quantity

BoundValue = Union[bool, int, InstanceOf[Fraction]]


class BoundEntry(BaseModel):
    """
    One evaluated bound.

    value is None when the bound is not applicable to the inputs. marginal is
    set for guard-banded spectral bounds whose floor/ceil moves inside the
    guard band; such entries must not be asserted.
    """
    model_config = ConfigDict(arbitrary_types_allowed=True)

    name: str
    value: Optional[BoundValue] = None
    applicable: bool = True
    hypothesis: Optional[str] = Field(None, description="Condition under which the bound holds")
    source: str = Field(..., description="Formula the bound evaluates")
    marginal: bool = False

    @field_serializer("value")
    def _serialize_value(self, value, _info):
        return serialize_quantity(value)


class BoundReport(BaseModel):
    """A family of bounds evaluated from one snapshot of graph invariants."""
    model_config = ConfigDict(arbitrary_types_allowed=True)

    family: str = Field(..., description="defensive | global | cut | spectral")
    inputs: Dict[str, Any] = Field(default_factory=dict)
    entries: List[BoundEntry] = Field(default_factory=list)

    @field_serializer("inputs")
    def _serialize_inputs(self, inputs, _info):
        return {name: serialize_quantity(value) for name, value in inputs.items()}

    def entry(self, name: str) -> BoundEntry:
        for entry in self.entries:
            if entry.name == name:
                return entry
        raise KeyError(name)

    def value(self, name: str) -> Optional[Union[bool, int, Fraction]]:
        """Value of an applicable entry, else None."""
        entry = self.entry(name)
        return entry.value if entry.applicable else None
