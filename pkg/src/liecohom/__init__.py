"""Exact relative Lie algebra cohomology over the rationals."""

from .linalg import (
    RationalMatrix,
    Subspace,
    complement_basis,
    image_basis,
    kernel_basis,
    rank,
    solve,
)
from .lie import (
    LieAlgebra,
    QuotientData,
    Subalgebra,
    ValidationReport,
    bracket,
    is_reductive,
    quotient_data,
    verify_jacobi,
    zero_subalgebra,
)
from .modules import (
    GModule,
    adjoint_module,
    invariants,
    restrict,
    trivial_module,
    verify_representation,
)
from .cochain import (
    CochainSpace,
    CohomologyResult,
    RelativeCochainComplex,
    betti_numbers,
    coboundary_matrix,
    coboundary_witness_deg1,
    equivariant_cochain_space,
    exterior_basis,
    is_cocycle_deg1,
    reduced_betti_numbers,
)

__version__ = "0.1.0"
