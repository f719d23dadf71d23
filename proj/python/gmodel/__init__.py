"""Python bindings for the gmodel toolchain."""

from pathlib import Path

from ._gmodel import (
    AsymmetricMatrix,
    BreakdownDetected,
    CapacityExceeded,
    Error,
    MatrixMarketError,
    Model,
    ModelError,
    ParseError,
    load_matrix_market,
    partition,
    poisson_2d,
    run_cg,
    spmv,
)

__all__ = [
    "AsymmetricMatrix",
    "BreakdownDetected",
    "CapacityExceeded",
    "Error",
    "MatrixMarketError",
    "Model",
    "ModelError",
    "ParseError",
    "load_model",
    "load_matrix_market",
    "partition",
    "poisson_2d",
    "run_cg",
    "spmv",
]


def load_model(path):
    """Parse a .gmodel file."""
    return Model(Path(path).read_text())
