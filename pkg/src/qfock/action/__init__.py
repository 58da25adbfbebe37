"""The operator side: exact parameters, matrix coefficients, verification."""

from qfock.action.params import (
    ParamSpec,
    SEED_SETS,
    RESONANT_SEED_SETS,
    custom_params,
    g_params,
    generic_params,
    pp_params,
    shift_params,
    w_params,
)
from qfock.action.ratfunc import PoleError, RationalFunction
from qfock.action.spaces import (
    AdmissibleModule,
    ClosureViolation,
    TensorModule,
    Transition,
    apply_e,
    apply_f,
    classify_2point,
    fock_module,
    fock_tensor,
    gap_module,
    gap_module_swapped,
    graded_character,
    m_space,
    psi_eigenvalue,
    psi_mode,
    vector_module,
    vector_tensor,
)

__all__ = [
    "AdmissibleModule",
    "ClosureViolation",
    "ParamSpec",
    "PoleError",
    "RESONANT_SEED_SETS",
    "RationalFunction",
    "SEED_SETS",
    "TensorModule",
    "Transition",
    "apply_e",
    "apply_f",
    "classify_2point",
    "custom_params",
    "fock_module",
    "fock_tensor",
    "g_params",
    "gap_module",
    "gap_module_swapped",
    "generic_params",
    "graded_character",
    "m_space",
    "pp_params",
    "psi_eigenvalue",
    "psi_mode",
    "shift_params",
    "vector_module",
    "vector_tensor",
    "w_params",
]
