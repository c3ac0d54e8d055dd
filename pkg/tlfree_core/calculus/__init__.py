"""Free differential calculus on Gr_1."""
from .free_calc import (
    ConjugateVariable,
    DerivationResult,
    box_left_trace,
    box_right_trace,
    close_up,
    conjugate_variable,
    cyclic_gradient,
    derive,
    diff_quotient,
    dot_op,
    fisher,
    fisher_profile,
    hash_op,
    held_out_residuals,
    jw2_box,
    number_op,
    partial_prime,
    partial_star,
    projection,
    sigma_op,
    symmetrizer,
)

__all__ = [
    "ConjugateVariable", "DerivationResult", "box_left_trace", "box_right_trace", "close_up",
    "conjugate_variable", "cyclic_gradient", "derive", "diff_quotient", "dot_op", "fisher", "fisher_profile",
    "hash_op", "held_out_residuals", "jw2_box", "number_op", "partial_prime", "partial_star",
    "projection", "sigma_op", "symmetrizer",
]
