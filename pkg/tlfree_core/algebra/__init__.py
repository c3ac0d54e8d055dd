"""Exact scalars, gluing, Temperley-Lieb algebra and exact linear algebra."""
from .gluing import count_cycles, glue
from .linalg import invert_exact, is_psd_exact, min_eigenvalue, rank, solve_exact
from .scalars import (
    DELTA,
    ONE,
    ZERO,
    LaurentScalar,
    RationalFunctionScalar,
    Scalar,
    scalar_from_json,
    scalar_to_json,
    specialize,
    to_fraction,
)
from .tl_algebra import (
    TLDiagram,
    TLElement,
    all_diagrams,
    cable2,
    cap_generator,
    close_pair,
    compose,
    dagger_element,
    fatten,
    identity_diagram,
    jones_wenzl,
    meander_gram,
    meander_gram_inverse,
    quantum_integer,
    reflect,
    rotate,
    rotate_element,
    tensor_identity,
)

__all__ = [
    "DELTA", "ONE", "ZERO", "LaurentScalar", "RationalFunctionScalar", "Scalar",
    "scalar_from_json", "scalar_to_json", "specialize", "to_fraction",
    "glue", "count_cycles", "solve_exact", "rank", "is_psd_exact", "min_eigenvalue",
    "TLDiagram", "TLElement", "all_diagrams", "cable2", "cap_generator", "close_pair",
    "compose", "dagger_element", "fatten", "identity_diagram", "jones_wenzl",
    "quantum_integer", "reflect", "rotate", "rotate_element", "tensor_identity",
    "meander_gram", "meander_gram_inverse", "invert_exact",
]
