"""Decay-rate analysis of two-dimensional QBD-type substochastic operators.

Thin wrapper over the native module: models go in as dicts (or JSON
strings), reports come back as dicts.
"""

import json

from . import _core
from ._core import (
    ConvergenceError,
    DomainError,
    InfeasibleError,
    ModelParseError,
)

__version__ = _core.__version__

__all__ = [
    "ConvergenceError",
    "DomainError",
    "InfeasibleError",
    "ModelParseError",
    "decay",
    "model_hash",
    "oracle",
    "reference_model",
    "regions",
    "validate",
    "verify",
]


def _text(model):
    if isinstance(model, str):
        return model
    return json.dumps(model)


def validate(model):
    """Validation issues for a model; an empty list means valid."""
    return json.loads(_core.validate(_text(model)))


def model_hash(model):
    """Canonical content hash of a model."""
    return _core.model_hash(_text(model))


def regions(model, tol=1e-10):
    """Region extremes and axis convergence intervals."""
    return json.loads(_core.regions(_text(model), tol))


def decay(model, directions=(), tol=1e-10):
    """Optimal exponents, directional rates and decay-function forms."""
    return json.loads(_core.decay(_text(model), list(directions), tol))


def oracle(model, N=100, kind="occupation", tol=1e-12, rays=()):
    """Truncated-lattice measure summary and least-squares ray fits."""
    return json.loads(_core.oracle(_text(model), N, kind, tol, list(rays)))


def verify(model, N=200, tol=1e-12):
    """Cross-check the analytic rates against the truncated-lattice oracle."""
    return json.loads(_core.verify(_text(model), N, tol))


def reference_model(name="m1"):
    """Built-in reference model document as a dict."""
    return json.loads(_core.reference_model(name))
