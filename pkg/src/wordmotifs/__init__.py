"""Word co-occurrence networks and directed subgraph motif analysis.

Build a directed word-adjacency network from text, enumerate its connected
3- or 4-vertex induced subgraphs, compare the class counts against a
degree-preserving randomized ensemble, and derive z-scores, p-values,
normalized significance profiles and motif / anti-motif labels.
"""

from .census import (CensusResult, SubgraphClass, SubgraphClassTable,
                     build_class_table, canonical_class, enumerate_full,
                     enumerate_sampled)
from .graph import (DirectedGraph, EdgeListError, degrees, load_edgelist,
                    neighbors_exclusive, read_edgelist, save_edgelist)
from .ingest import (IngestConfig, IngestError, Token, Vocabulary,
                     build_network, tokenize)
from .nullmodel import RandomizeConfig, SwapReport, generate_ensemble, randomize
from .pipeline import AnalysisResult, run_analysis
from .significance import (EnsembleAccumulator, EnsembleStats,
                           SignificanceProfile, build_profile, classify_motifs,
                           compare_profiles, pvalues, significance_profile,
                           zscores)

__version__ = "0.1.0"

__all__ = [
    "AnalysisResult", "CensusResult", "DirectedGraph", "EdgeListError",
    "EnsembleAccumulator", "EnsembleStats", "IngestConfig", "IngestError",
    "RandomizeConfig", "SignificanceProfile", "SubgraphClass",
    "SubgraphClassTable", "SwapReport", "Token", "Vocabulary",
    "build_class_table", "build_network", "build_profile", "canonical_class",
    "classify_motifs", "compare_profiles", "degrees", "enumerate_full",
    "enumerate_sampled", "generate_ensemble", "load_edgelist",
    "neighbors_exclusive", "pvalues", "randomize", "read_edgelist",
    "run_analysis", "save_edgelist", "significance_profile", "tokenize",
    "zscores",
]
