"""Semantic quality scoring for value generalization hierarchies."""
from __future__ import annotations

from .gsl import GslConfig, GslReport, evaluate_vgh
from .ontology import Ontology, load_ontology, load_ontology_file
from .report import compare, lint
from .resolver import NominalizationMap
from .similarity import wup_similarity
from .vgh import Vgh, balance, load_vgh_file, parse_vgh

__version__ = "0.1.0"

__all__ = [
    "GslConfig",
    "GslReport",
    "NominalizationMap",
    "Ontology",
    "Vgh",
    "balance",
    "compare",
    "evaluate_vgh",
    "lint",
    "load_ontology",
    "load_ontology_file",
    "load_vgh_file",
    "parse_vgh",
    "wup_similarity",
]
