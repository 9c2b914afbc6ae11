"""Checks of the length bounds, report assembly and batch execution."""

from .checks import (
    CheckReport,
    corollary2_check,
    corollary3_bound,
    corollary3_check,
    focal_check,
    kernel_lemma_check,
    prop22_check,
    theorem1_check,
)
from .xsets import XSet, l_parameter, x_set

__all__ = [
    "CheckReport",
    "XSet",
    "corollary2_check",
    "corollary3_bound",
    "corollary3_check",
    "focal_check",
    "kernel_lemma_check",
    "l_parameter",
    "prop22_check",
    "theorem1_check",
    "x_set",
]
