"""Graded algebras Gr_k, boxes and planar algebra traces."""
from .elements import (
    BoxElement,
    PAElement,
    box_dagger,
    box_identity,
    box_product,
    close_box_sides,
    close_sides,
    cup,
    dagger,
    diagram_basis,
    include_up,
    tensor_op,
    unit,
    wedge,
    wedge_power,
    x_variable,
)
from .pa_trace import (
    PairingFunctional,
    TSeries,
    box_inner,
    build_T,
    cond_exp,
    cup_moments,
    ev_Y,
    eval_distribution,
    gram_matrix,
    gram_psd,
    insert_block_list,
    insert_blocks,
    joint_pairing,
    mixed_cumulant,
    pa_cumulants,
    pa_inner,
    pair_with,
    product_formula,
    reassemble,
    tau_box,
    tau_k,
)

__all__ = [
    "BoxElement", "PAElement", "box_dagger", "box_identity", "box_product", "close_box_sides",
    "close_sides", "cup", "dagger", "diagram_basis", "include_up", "tensor_op", "unit", "wedge",
    "wedge_power", "x_variable", "PairingFunctional", "TSeries", "box_inner", "build_T",
    "cond_exp", "cup_moments", "ev_Y", "eval_distribution", "gram_matrix", "gram_psd",
    "insert_block_list", "insert_blocks", "joint_pairing", "mixed_cumulant", "pa_cumulants", "pa_inner", "pair_with",
    "product_formula", "reassemble", "tau_box", "tau_k",
]
