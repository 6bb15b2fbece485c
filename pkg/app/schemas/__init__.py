"""Pydantic schemas"""

from app.schemas.bounds import BoundEntry, BoundReport
from app.schemas.results import CutSummary, IsoResult, SolveResult, SpectralResult
from app.schemas.verification import CorpusReport, GraphVerification, PublishedClaim, TheoremVerdict

__all__ = [
    "BoundEntry",
    "BoundReport",
    "CutSummary",
    "IsoResult",
    "SolveResult",
    "SpectralResult",
    "CorpusReport",
    "GraphVerification",
    "PublishedClaim",
    "TheoremVerdict",
]
