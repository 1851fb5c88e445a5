"""Competitive erosion on Z: simulation, constants and limit-law samples."""

from ._erosim import (
    C,
    State,
    alpha,
    hitting_functional,
    killed,
    ks_statistic,
    oracle,
    variant_line,
    w_table,
    zd,
)

__all__ = [
    "C",
    "State",
    "alpha",
    "hitting_functional",
    "killed",
    "ks_statistic",
    "oracle",
    "variant_line",
    "w_table",
    "zd",
]
