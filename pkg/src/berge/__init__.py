"""Certified Berge paths of length r+1 in r-uniform hypergraphs."""

from berge.certificates import BergeCycle, BergePath, verify, verify_cycle, verify_path
from berge.extractor import ExtractionResult, extract, extract_theorem2, replay
from berge.hypergraph import Hypergraph, PreconditionError

__all__ = [
    "BergeCycle",
    "BergePath",
    "ExtractionResult",
    "Hypergraph",
    "PreconditionError",
    "extract",
    "extract_theorem2",
    "replay",
    "verify",
    "verify_cycle",
    "verify_path",
]
