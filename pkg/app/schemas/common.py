"""
Serialization helpers shared by the result and report schemas.
"""

from fractions import Fraction
from typing import Any

from app.models.graph import Partition, VertexSet
from app.utils.exact import format_rational


def serialize_quantity(value: Any) -> Any:
    """JSON-friendly form of a bound value, witness or count."""
    if isinstance(value, bool) or value is None:
        return value
    if isinstance(value, Fraction):
        return format_rational(value)
    if isinstance(value, VertexSet):
        return value.to_list()
    if isinstance(value, Partition):
        return value.to_lists()
    if isinstance(value, (list, tuple)):
        return [serialize_quantity(item) for item in value]
    return value
