"""Toric generalized Kahler structures of symplectic type."""

from ._toricgk import (
    DelzantPolytope,
    Error,
    build_structures,
    canonical_hessian,
    check_identities,
    f_admissibility_interval,
    guillemin_tau,
    matrix_fact_suite,
    oracle_tensors,
    run_command,
    sample_interior,
    symmetric_spinor_identity,
)

__all__ = [
    "DelzantPolytope",
    "Error",
    "build_structures",
    "canonical_hessian",
    "check_identities",
    "f_admissibility_interval",
    "guillemin_tau",
    "matrix_fact_suite",
    "oracle_tensors",
    "run_command",
    "sample_interior",
    "symmetric_spinor_identity",
]
