"""Comer relation algebras C(p, n): spectra, prime searches, embeddings."""

from .atoms import AtomStructure, IndexPermutation, automorphisms, make_An
from .embed import AtomEmbedding, catalog_lookup, scheme_for, verify_embedding
from .numtheory import CosetPartition, build_partition, coset, find_primitive_root, is_prime
from .search import ForbiddenScheme, SearchCheckpoint, SearchOutcome, reproduce_table, search_scheme
from .spectrum import CycleClass, SumSpectrum, brute_force_spectrum, compute_spectrum, forbidden_classes

__all__ = [
    "AtomEmbedding", "AtomStructure", "CosetPartition", "CycleClass", "ForbiddenScheme",
    "IndexPermutation", "SearchCheckpoint", "SearchOutcome", "SumSpectrum", "automorphisms",
    "brute_force_spectrum", "build_partition", "catalog_lookup", "compute_spectrum", "coset",
    "find_primitive_root", "forbidden_classes", "is_prime", "make_An", "reproduce_table",
    "scheme_for", "search_scheme", "verify_embedding",
]
