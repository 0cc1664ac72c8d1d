"""JSON schemas shared by the CLI: states, functionals, reports.

States come in three forms::

    {"type": "dense",    "d1": int, "d2": int, "re": [[...]], "im": [[...]]}
    {"type": "schmidt",  "coefficients": [real, ...]}
    {"type": "coherent", "family": 1..4, "alpha": real, "cutoff": int | "auto"}

Schmidt-form inputs live on the computational bases of r x r; coherent-form
inputs are truncated to Fock space but represent an infinite-dimensional
family, so their reported dimensions are the infinite marker.
"""

from __future__ import annotations

import json
import math

import numpy as np

from .bell import BellFunctional, OutcomeSet, chsh_functional
from .bounds import INFINITE
from .coherent import CoherentFamily, fock_state, fock_truncation
from .errors import ValidationError
from .qstate import PureState


def sig12(x: float) -> float:
    """Round to 12 significant digits (the CLI's number format)."""
    return float(f"{x:.12g}")


def round_tree(obj):
    """Recursively round every float in a JSON-ready structure to 12 digits."""
    if isinstance(obj, bool):
        return obj
    if isinstance(obj, float):
        if math.isinf(obj):
            return "infinite"
        return sig12(obj)
    if isinstance(obj, dict):
        return {k: round_tree(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [round_tree(v) for v in obj]
    return obj


def render_json(obj) -> str:
    """Deterministic JSON text for a report (12 significant digits)."""
    return json.dumps(round_tree(obj), indent=2) + "\n"


def complex_matrix_json(m: np.ndarray) -> dict:
    return {"re": m.real.tolist(), "im": m.imag.tolist()}


def _require(obj: dict, key: str, context: str):
    if key not in obj:
        raise ValidationError(f"{context} JSON is missing key {key!r}")
    return obj[key]


def state_from_json(obj: dict) -> tuple[PureState, float, float]:
    """Parse a state description; returns (state, d1 extent, d2 extent).

    Extents are the ambient Hilbert-space dimensions: the matrix dimensions
    for dense/schmidt inputs and the infinite marker for coherent families.
    """
    if not isinstance(obj, dict):
        raise ValidationError(f"state JSON must be an object, got {type(obj).__name__}")
    kind = _require(obj, "type", "state")
    if kind == "dense":
        d1 = int(_require(obj, "d1", "dense state"))
        d2 = int(_require(obj, "d2", "dense state"))
        re = np.array(_require(obj, "re", "dense state"), dtype=float)
        im = np.array(_require(obj, "im", "dense state"), dtype=float)
        if re.shape != (d1, d2) or im.shape != (d1, d2):
            raise ValidationError(
                f"dense state arrays must have shape ({d1}, {d2}), got "
                f"{re.shape} and {im.shape}"
            )
        return PureState(re + 1j * im), float(d1), float(d2)
    if kind == "schmidt":
        coeffs = np.array(_require(obj, "coefficients", "schmidt state"), dtype=float)
        if coeffs.ndim != 1 or len(coeffs) < 1:
            raise ValidationError("schmidt coefficients must be a nonempty list")
        if np.any(coeffs < 0):
            raise ValidationError("schmidt coefficients must be nonnegative")
        r = len(coeffs)
        return PureState(np.diag(coeffs.astype(complex))), float(r), float(r)
    if kind == "coherent":
        family = _require(obj, "family", "coherent state")
        alpha = _require(obj, "alpha", "coherent state")
        cutoff = obj.get("cutoff", "auto")
        if cutoff != "auto":
            cutoff = int(cutoff)
        fam = CoherentFamily(int(family), float(alpha))
        trunc = fock_truncation(fam.alpha, cutoff=cutoff)
        return fock_state(fam, trunc), INFINITE, INFINITE
    raise ValidationError(f"unknown state type {kind!r}")


def state_to_json(state: PureState) -> dict:
    """Dense-form JSON of a pure state."""
    out: dict = {"type": "dense", "d1": state.d1, "d2": state.d2}
    out.update(complex_matrix_json(state.amplitudes))
    return out


def functional_from_json(obj: dict) -> BellFunctional:
    """Parse ``{"s1", "s2", "outcomes1", "outcomes2", "phi"}``."""
    if not isinstance(obj, dict):
        raise ValidationError(
            f"functional JSON must be an object, got {type(obj).__name__}"
        )
    s1 = int(_require(obj, "s1", "functional"))
    s2 = int(_require(obj, "s2", "functional"))
    out1 = OutcomeSet(tuple(_require(obj, "outcomes1", "functional")))
    out2 = OutcomeSet(tuple(_require(obj, "outcomes2", "functional")))
    phi = np.array(_require(obj, "phi", "functional"), dtype=float)
    expected = (s1, s2, out1.size, out2.size)
    if phi.shape != expected:
        raise ValidationError(
            f"functional phi has shape {phi.shape}, expected {expected}"
        )
    return BellFunctional(out1, out2, phi)


def functional_to_json(f: BellFunctional) -> dict:
    return {
        "s1": f.s1,
        "s2": f.s2,
        "outcomes1": list(f.outcomes1.labels),
        "outcomes2": list(f.outcomes2.labels),
        "phi": f.phi.tolist(),
    }


def resolve_functional(spec: str) -> BellFunctional:
    """Builtin functional name or path to a functional JSON file."""
    if spec == "chsh":
        return chsh_functional()
    with open(spec, encoding="utf-8") as fh:
        return functional_from_json(json.load(fh))
