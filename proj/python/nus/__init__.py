"""Optimal nonuniform sampling of one-dimensional signals.

Thin Python front end over the C++ core: segmentation by cube-root
derivative energy, reconstruction from boundaries and extrema, the
descriptor bitstream codec, and the tree-structured baseline.
"""

from ._nus import (
    Descriptor,
    NusError,
    bennett_mse,
    choose_b_diff,
    decode,
    decode_monotone,
    derivative,
    describe,
    design_quantizer,
    empirical_mse,
    encode,
    encode_monotone,
    generate,
    hexagon_inertia,
    mse_lower_bound_kd,
    optimal_density,
    optimal_samples,
    panter_dite_mse,
    reconstruct,
    segment,
    threshold,
    tree_sweep,
)

__all__ = [
    "Descriptor",
    "NusError",
    "bennett_mse",
    "choose_b_diff",
    "decode",
    "decode_monotone",
    "derivative",
    "describe",
    "design_quantizer",
    "empirical_mse",
    "encode",
    "encode_monotone",
    "generate",
    "hexagon_inertia",
    "mse_lower_bound_kd",
    "optimal_density",
    "optimal_samples",
    "panter_dite_mse",
    "reconstruct",
    "segment",
    "threshold",
    "tree_sweep",
]
