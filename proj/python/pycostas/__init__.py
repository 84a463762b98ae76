"""Costas hypercube constructions and checks (bindings to the C++ core)."""

from ._core import (
    DotSet,
    check_applicability,
    classify,
    golomb_g2,
    greedy_pack,
    reshape_even,
    reshape_odd,
    scan_solutions,
    slice_candidates,
    toeplitz_hypercube,
    verify_costas,
    welch_cube,
    welch_perm,
    welch_rect,
    welch_w1,
)

__all__ = [
    "DotSet",
    "check_applicability",
    "classify",
    "golomb_g2",
    "greedy_pack",
    "reshape_even",
    "reshape_odd",
    "scan_solutions",
    "slice_candidates",
    "toeplitz_hypercube",
    "verify_costas",
    "welch_cube",
    "welch_perm",
    "welch_rect",
    "welch_w1",
]
