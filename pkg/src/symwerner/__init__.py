"""Symmetric multiqubit states as polynomials in x, y, z, and symmetric Werner states."""
from .errors import (
    CapacityError,
    NormalizationError,
    NotHermitianError,
    NotSymmetricError,
    NumericalDegeneracyError,
    WernerDisagreementError,
)
from .pauli import (
    PauliDecomposition,
    decompose,
    partial_trace,
    permute_qubits,
    reconstruct,
    sigma,
    sigma_tensor,
    symmetrize,
    tensor,
)
from .polynomial import (
    TriPolynomial,
    angular_generator,
    casimir_spectrum,
    fn_inverse,
    fn_map,
    invariant_dimension,
    poly_add,
    poly_mul,
    poly_scale,
    radial_extract,
    rotate_poly,
)
from .rotation import haar_random_su2, local_unitary_action, phi, tg_action
from .states import WernerCoefficients, named_state, werner_from_b, werner_rho_a
from .werner import (
    WernerReport,
    elementary_symmetric_invariants,
    is_werner,
    lu_invariant_compare,
    positivity_check,
    positivity_scan_2q,
    spectrum,
)

__version__ = "0.1.0"
