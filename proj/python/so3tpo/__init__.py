"""SO(3)-equivariant tensor-product operations (C++ core)."""

from so3tpo._core import (
    cg_table,
    cgtp,
    count_ops,
    expressivity_count,
    expressivity_rank,
    gtp,
    interactable,
    irreps_dim,
    mtp,
    mtp_path_weights,
    rotate,
    single_copies,
    verify,
    verify_suites,
    wigner_d,
)

__all__ = [
    "cg_table",
    "cgtp",
    "count_ops",
    "expressivity_count",
    "expressivity_rank",
    "gtp",
    "interactable",
    "irreps_dim",
    "mtp",
    "mtp_path_weights",
    "rotate",
    "single_copies",
    "verify",
    "verify_suites",
    "wigner_d",
]
