"""Graph value types"""

from app.models.graph import Graph, Partition, VertexSet

__all__ = ["Graph", "VertexSet", "Partition"]
