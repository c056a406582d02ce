"""Pauli algebra, stabilizer codes, and a stabilizer tableau simulator."""

from .code import (
    CodeConstructionError,
    LookupDecoder,
    StabilizerCode,
    SyndromeCollisionError,
    UncorrectableError,
    build_code,
    check_pure_errors,
    code_distance,
    compute_pure_errors,
    css_code,
    css_logicals,
    lookup_decoder,
    qrm,
    qrm_rm,
    single_error_decoder,
    steane,
    syndrome,
    syndrome_bits,
)
from .pauli import (
    PauliError,
    PauliOperator,
    commutation_matrix,
    from_symplectic,
    single_qubit_paulis,
    symplectic_matrix,
    symplectic_product,
)
from .tableau import ResidualEntanglementError, Tableau, TableauError, tableau_apply_clifford, tableau_measure

__all__ = [
    "CodeConstructionError",
    "LookupDecoder",
    "PauliError",
    "PauliOperator",
    "ResidualEntanglementError",
    "StabilizerCode",
    "SyndromeCollisionError",
    "Tableau",
    "TableauError",
    "UncorrectableError",
    "build_code",
    "check_pure_errors",
    "code_distance",
    "commutation_matrix",
    "compute_pure_errors",
    "css_code",
    "css_logicals",
    "from_symplectic",
    "lookup_decoder",
    "qrm",
    "qrm_rm",
    "single_error_decoder",
    "single_qubit_paulis",
    "steane",
    "symplectic_matrix",
    "symplectic_product",
    "syndrome",
    "syndrome_bits",
    "tableau_apply_clifford",
    "tableau_measure",
]
