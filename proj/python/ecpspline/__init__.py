"""Suitability-for-design checks for piecewise Chebyshevian spline spaces.

Specs are the same documents the CLI reads: a dict, a JSON string, or a
path to a JSON file.
"""

import json
import os

import numpy as np

from . import _core

__all__ = [
    "EcpError",
    "load",
    "check",
    "basis",
    "weights",
    "positivity",
    "curve",
    "sweep",
    "bisect",
]


class EcpError(ValueError):
    """Raised for invalid specs and failed constructions; `code` names the cause."""

    def __init__(self, code, message):
        super().__init__(f"[{code}] {message}")
        self.code = code
        self.message = message


def load(path):
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


def _text(spec):
    if isinstance(spec, dict):
        return json.dumps(spec)
    if isinstance(spec, (str, os.PathLike)) and os.path.isfile(spec):
        with open(spec, encoding="utf-8") as fh:
            return fh.read()
    if isinstance(spec, str):
        return spec
    raise TypeError("spec must be a dict, JSON text or a file path")


def _call(fn, *args, **kwargs):
    try:
        return fn(*args, **kwargs)
    except _core.NativeError as e:
        code, message = e.args if len(e.args) == 2 else ("Unknown", str(e))
        raise EcpError(code, message) from None


def check(spec, tol=1.0, trace=False):
    """Suitability report as a dict (same shape as `ecpspline check`)."""
    return json.loads(_call(_core.check, _text(spec), tol, trace))


def basis(spec, samples=50):
    """B_1..B_m on a per-interval grid; `values` has one column per function."""
    return _call(_core.basis, _text(spec), samples)


def weights(spec, samples=50):
    """List of {level, x, side, interval, values} for w_1..w_{m-1}."""
    return _call(_core.weights, _text(spec), samples)


def positivity(spec, samples=200):
    """Grid scan of the weights: positive flag and the global minimum."""
    return _call(_core.positivity, _text(spec), samples)


def curve(spec, points, samples=50):
    pts = np.asarray(points, dtype=float)
    if pts.ndim != 2:
        raise ValueError("points must be an (m, d) array")
    return _call(_core.curve, _text(spec), pts, samples)


def sweep(spec, tol=1.0):
    """[(value, suitable), ...] over the spec's sweep block."""
    return _call(_core.sweep, _text(spec), tol)


def bisect(spec, lo, hi, iterations=40, tol=1e-9):
    """Locate the verdict flip of the swept entry inside [lo, hi]."""
    return _call(_core.bisect, _text(spec), lo, hi, iterations, tol)
