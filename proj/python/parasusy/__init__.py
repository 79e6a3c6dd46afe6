"""Order-p parabose/parafermi oscillator toolkit.

Matrices come from a truncated Green-ansatz representation; report-style
results are returned as plain dicts and lists.
"""

import json as _json

from ._core import (
    ConventionError,
    NumericalError,
    Rep,
    TruncationError,
    closed_form_basis,
    discover_convention,
    expected_degeneracy,
    monomial_norm_squared,
    operator_names,
    transition_coeff,
    validate_reduction,
)
from . import _core

__all__ = [
    "ConventionError",
    "NumericalError",
    "Rep",
    "TruncationError",
    "closed_form_basis",
    "convention_search",
    "discover_convention",
    "expected_degeneracy",
    "monomial_norm_squared",
    "operator_names",
    "reduce",
    "sectors",
    "spectrum",
    "transition_coeff",
    "validate_reduction",
    "verify",
]


def convention_search(p, cutoff=3, tolerance=1e-10, probes=8, seed=42):
    """Score every Klein dressing against the defining relations."""
    return _json.loads(_core._convention_search(p, cutoff, tolerance, probes, seed))


def verify(rep, probes=8, seed=42, tolerance=1e-10):
    """Run the relation suite; one dict per identity."""
    return _json.loads(_core._verify(rep, probes, seed, tolerance))


def sectors(rep, level_cap=None):
    return _json.loads(_core._sectors(rep, rep.level_cap if level_cap is None else level_cap))


def spectrum(rep, level_cap=None):
    """Levels with degeneracies and state labels, plus the Witten sums."""
    return _json.loads(_core._spectrum(rep, rep.level_cap if level_cap is None else level_cap))


def reduce(word, p=1):
    """Normal form of a word such as "a+ f+ a+"; p only affects the flags."""
    out = _json.loads(_core._reduce(word, p))
    for key in ("alpha", "beta"):
        out[key] = int(out[key])
    return out
