"""Numerical laboratory for a nonlocal quasilinear Dirichlet problem.

The heavy lifting lives in the compiled extension; this package just re-exports
the operations and the error types.
"""

from ._core import (
    GradientBoundError,
    InfeasibleError,
    NoConvergenceError,
    OrderingError,
    app1,
    app2,
    eigenpair,
    poisson,
    probe,
)

__all__ = [
    "GradientBoundError",
    "InfeasibleError",
    "NoConvergenceError",
    "OrderingError",
    "app1",
    "app2",
    "eigenpair",
    "poisson",
    "probe",
]

__version__ = "0.1.0"
