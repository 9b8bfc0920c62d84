"""Clique minor embedding into grid-of-K_{c,c} annealer fabrics with hard faults."""
from .embed_clique import CliqueEmbedding, embed_clique_perfect, extend_embedding
from .embed_faulty import (
    fallback_embed,
    greedy_embed,
    half_chain_status,
    orchestrate,
    single_cell_best,
)
from .fabric import (
    Fabric,
    apply_faults,
    build_fabric,
    flip,
    index_to_label,
    label_to_index,
    subgrid,
)
from .graph import ProblemGraph
from .treewidth import build_tree_decomposition, screen_problem, treewidth_bounds
from .verify import is_minor_bruteforce, verify_minor_embedding, verify_tree_decomposition

__version__ = "0.1.0"
