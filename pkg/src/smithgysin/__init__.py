"""Exact homological algebra over Q for Gysin and Smith-Gysin sequences."""

from .braid import (
    Braid,
    DoubleSesDiagram,
    braid_from_double_ses,
    splice,
    validate_braid,
    validate_double_ses,
)
from .cochain import (
    ChainMap,
    CochainComplex,
    GradedSpace,
    cohomology,
    direct_sum,
    induced_map,
    shift,
    validate_chain_map,
    validate_complex,
)
from .exactness import (
    LongSequence,
    Node,
    ShortExactSequence,
    TransferDiagram,
    acyclicity_transfer,
    betti_feasible,
    check_exact,
    connecting_map,
    les_of_ses,
    validate_ses,
)
from .instances import (
    ActionInstance,
    SequenceKind,
    build_sequence,
    catalog,
    gysin_transfer,
    verify_instance,
)
from .linalg import Matrix, Subspace, eigenspace, image_basis, kernel_basis, rank, solve
from .simplicial import (
    SimplicialComplex,
    SimplicialInvolution,
    anti_invariants,
    relative_pair,
    simplicial_cochain_complex,
)

__version__ = "0.1.0"

__all__ = [
    "ActionInstance", "Braid", "ChainMap", "CochainComplex", "DoubleSesDiagram", "GradedSpace",
    "LongSequence", "Matrix", "Node", "SequenceKind", "ShortExactSequence", "SimplicialComplex",
    "SimplicialInvolution", "Subspace", "TransferDiagram", "acyclicity_transfer", "anti_invariants",
    "betti_feasible", "braid_from_double_ses", "build_sequence", "catalog", "check_exact",
    "cohomology", "connecting_map", "direct_sum", "eigenspace", "gysin_transfer", "image_basis",
    "induced_map", "kernel_basis", "les_of_ses", "rank", "relative_pair", "shift",
    "simplicial_cochain_complex", "solve", "splice", "validate_braid", "validate_chain_map",
    "validate_complex", "validate_double_ses", "validate_ses", "verify_instance",
]
