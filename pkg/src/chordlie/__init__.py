"""Exact computations with the Lie algebras of oriented and linear chord diagrams."""

from .diagrams import (
    CapExceeded,
    CyclicClass,
    DiagramError,
    LinearDiagram,
    SignedStandard,
    StandardDiagram,
    canonical_cyclic,
    d_ab,
    enumerate_cyclic_basis,
    enumerate_linear,
    identity_diagram,
    index_of,
    omega_diagram,
    rotate,
    standardize,
)
from .lie import (
    E0,
    CVector,
    LCVector,
    PolyVectorField,
    ad_matrix,
    bracket_cyclic,
    bracket_linear,
    kappa,
    linear_amalgamate,
    n_map,
    t_amalgamate,
    to_linear,
)
from .linalg import SparseRationalMatrix, kernel_basis, rank
from .tensors import (
    Derivation,
    SymplecticSpace,
    Tensor,
    a_cyclic,
    a_lc,
    a_linear,
    bracket_formula,
    derivation_apply,
    derivation_commutator,
    kernel_of_n,
    n_tensor,
)

__version__ = "0.1.0"
