"""Multi-copy source operators for pure bipartite states.

A source operator on ``H1^(x)s1 (x) H2^(x)s2`` reproduces every two-site
correlation of a pure state when one observable acts on any single copy of
each factor and identity acts elsewhere.  The construction here is explicit:
off-diagonal Schmidt blocks are carried by tensor powers of the four
unnormalized projectors onto ``e_k ± e_k1`` and ``e_k ± i e_k1``, combined so
that a single-copy polarization identity recovers ``|e_k><e_k1|``.  The
resulting operator is Hermitian and unit-trace but in general *not* positive.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from functools import reduce

import numpy as np

from .errors import CapacityError, ValidationError
from .qstate import PureState, SchmidtData

#: Default cap on the total dimension d1^s1 * d2^s2 of a source operator.
DEFAULT_MAX_DIM = 4096

#: Environment variable overriding the size guard.
MAX_DIM_ENV = "BELLBOUND_MAX_DIM"


def max_tensor_dim() -> int:
    """Active size guard: BELLBOUND_MAX_DIM if set, else 4096."""
    raw = os.environ.get(MAX_DIM_ENV)
    if raw is None:
        return DEFAULT_MAX_DIM
    try:
        value = int(raw)
    except ValueError as exc:
        raise ValueError(f"{MAX_DIM_ENV} must be an integer, got {raw!r}") from exc
    if value < 1:
        raise ValueError(f"{MAX_DIM_ENV} must be positive, got {value}")
    return value


def _guard_dim(total: int, what: str) -> None:
    cap = max_tensor_dim()
    if total > cap:
        raise CapacityError(
            f"{what} needs total dimension {total}, above the size guard {cap} "
            f"(override via {MAX_DIM_ENV})"
        )


@dataclass(frozen=True)
class SourceOperator:
    """Hermitian unit-trace operator on ``H1^(x)s1 (x) H2^(x)s2``.

    Its trace norm is >= 1 automatically (trace norm >= |trace|); positivity
    is not asserted and genuinely fails for entangled states with several
    copies on one side.
    """

    s1: int
    s2: int
    d1: int
    d2: int
    matrix: np.ndarray

    def __post_init__(self) -> None:
        if min(self.s1, self.s2, self.d1, self.d2) < 1:
            raise ValueError("setting counts and dimensions must be >= 1")
        m = np.array(self.matrix, dtype=complex)
        expected = self.d1**self.s1 * self.d2**self.s2
        if m.shape != (expected, expected):
            raise ValidationError(
                f"matrix shape {m.shape} does not match d1^s1*d2^s2 = {expected}"
            )
        herm = float(np.max(np.abs(m - m.conj().T)))
        if herm > 1e-10:
            raise ValidationError(
                f"source operator is not Hermitian (max asymmetry {herm:.3e})"
            )
        tr_err = abs(complex(np.trace(m)) - 1.0)
        if tr_err > 1e-10:
            raise ValidationError(
                f"source operator trace deviates from 1 by {tr_err:.3e}"
            )
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)


def _kron_power(m: np.ndarray, s: int) -> np.ndarray:
    return reduce(np.kron, [m] * s)


def build_w_block(e_k: np.ndarray, e_k1: np.ndarray, s: int) -> np.ndarray:
    """Block carrying ``|e_k><e_k1|`` across ``s`` copies of one factor.

    For ``e_k == e_k1`` this is the s-fold tensor power of the projector onto
    ``e_k``.  For orthonormal ``e_k != e_k1`` it is

        [P+^(x)s - P-^(x)s + i P+i^(x)s - i P-i^(x)s] / 2^(s+1)

    with unnormalized projectors onto ``e_k ± e_k1`` and ``e_k ± i e_k1``;
    at ``s = 1`` the combination collapses to ``|e_k><e_k1|`` exactly, and a
    partial trace over all but any one copy does the same for every ``s``.
    """
    if s < 1:
        raise ValueError(f"copy count s must be >= 1, got {s}")
    a = np.asarray(e_k, dtype=complex).reshape(-1)
    b = np.asarray(e_k1, dtype=complex).reshape(-1)
    if a.shape != b.shape:
        raise ValueError(f"basis vectors differ in length: {a.shape} vs {b.shape}")
    d = len(a)
    _guard_dim(d**s, f"w block with d={d}, s={s}")
    if np.allclose(a, b, atol=1e-14):
        return _kron_power(np.outer(a, a.conj()), s)
    terms = []
    for vec, weight in (
        (a + b, 1.0),
        (a - b, -1.0),
        (a + 1j * b, 1.0j),
        (a - 1j * b, -1.0j),
    ):
        terms.append(weight * _kron_power(np.outer(vec, vec.conj()), s))
    return sum(terms) / 2 ** (s + 1)


def _build_source(schmidt: SchmidtData, s1: int, s2: int) -> SourceOperator:
    # Exactly one of s1, s2 is allowed to exceed 1 in the public builders.
    coeffs = schmidt.coefficients
    left = schmidt.left_basis
    right = schmidt.right_basis
    d1 = left.shape[1]
    d2 = right.shape[1]
    dim1 = d1**s1
    dim2 = d2**s2
    _guard_dim(dim1 * dim2, f"source operator with d1={d1}, s1={s1}, d2={d2}, s2={s2}")
    total = np.zeros((dim1 * dim2, dim1 * dim2), dtype=complex)
    for k in range(schmidt.rank):
        for k1 in range(schmidt.rank):
            w1 = build_w_block(left[k], left[k1], s1)
            w2 = build_w_block(right[k], right[k1], s2)
            total += coeffs[k] * coeffs[k1] * np.kron(w1, w2)
    total = (total + total.conj().T) / 2.0
    return SourceOperator(s1=s1, s2=s2, d1=d1, d2=d2, matrix=total)


def build_source_1xs(schmidt: SchmidtData, s2: int) -> SourceOperator:
    """Source operator on ``H1 (x) H2^(x)s2`` (single copy on site 1).

    With ``s2 = 1`` this is exactly the state's density operator.
    """
    if s2 < 1:
        raise ValueError(f"s2 must be >= 1, got {s2}")
    return _build_source(schmidt, 1, s2)


def build_source_sx1(schmidt: SchmidtData, s1: int) -> SourceOperator:
    """Source operator on ``H1^(x)s1 (x) H2`` (single copy on site 2)."""
    if s1 < 1:
        raise ValueError(f"s1 must be >= 1, got {s1}")
    return _build_source(schmidt, s1, 1)


def trace_norm(matrix: np.ndarray) -> float:
    """Trace norm (sum of absolute eigenvalues) of a Hermitian matrix."""
    m = np.asarray(matrix, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"matrix must be square, got shape {m.shape}")
    herm = float(np.max(np.abs(m - m.conj().T)))
    if herm > 1e-8:
        raise ValidationError(
            f"trace norm expects a Hermitian matrix (max asymmetry {herm:.3e})"
        )
    return float(np.sum(np.abs(np.linalg.eigvalsh((m + m.conj().T) / 2.0))))


def _embed_single(x: np.ndarray, d: int, s: int, slot: int) -> np.ndarray:
    """``x`` acting on copy ``slot`` of ``s`` copies, identity elsewhere."""
    out = np.eye(d**slot, dtype=complex)
    out = np.kron(out, x)
    return np.kron(out, np.eye(d ** (s - 1 - slot), dtype=complex))


def _random_unit_hermitian(rng: np.random.Generator, d: int) -> np.ndarray:
    g = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    h = (g + g.conj().T) / 2.0
    scale = float(np.max(np.abs(np.linalg.eigvalsh(h))))
    if scale < 1e-12:  # probability zero; keep the check total
        return np.eye(d, dtype=complex)
    return h / scale


def verify_dilation(
    T: SourceOperator, state: PureState, n_samples: int = 20, seed: int = 0
) -> float:
    """Worst-case dilation residual of a source operator for a state.

    Draws ``n_samples`` pairs of unit-operator-norm Hermitian observables
    (GUE-style) and, for every pair of copy slots, compares the source
    expectation tr[T (X1 on one copy) (x) (X2 on one copy)] against the state
    expectation <psi| X1 (x) X2 |psi>.  Returns the largest absolute
    difference; the construction makes this float noise.
    """
    if n_samples < 1:
        raise ValueError(f"n_samples must be >= 1, got {n_samples}")
    if (T.d1, T.d2) != (state.d1, state.d2):
        raise ValueError(
            f"dimension mismatch: source operator has (d1, d2) = ({T.d1}, {T.d2}), "
            f"state has ({state.d1}, {state.d2})"
        )
    amp = state.amplitudes
    dim1 = T.d1**T.s1
    dim2 = T.d2**T.s2
    t4 = T.matrix.reshape(dim1, dim2, dim1, dim2)
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(n_samples):
        x1 = _random_unit_hermitian(rng, T.d1)
        x2 = _random_unit_hermitian(rng, T.d2)
        want = complex(np.trace(x1 @ amp @ x2.T @ amp.conj().T))
        for slot1 in range(T.s1):
            e1 = _embed_single(x1, T.d1, T.s1, slot1)
            for slot2 in range(T.s2):
                e2 = _embed_single(x2, T.d2, T.s2, slot2)
                got = complex(np.einsum("abcd,ca,db->", t4, e1, e2))
                worst = max(worst, abs(got - want))
    return worst


def source_operator_to_json(T: SourceOperator) -> dict:
    """Plain-JSON form of a source operator (real and imaginary parts)."""
    return {
        "s1": T.s1,
        "s2": T.s2,
        "d1": T.d1,
        "d2": T.d2,
        "re": T.matrix.real.tolist(),
        "im": T.matrix.imag.tolist(),
    }


def source_operator_from_json(obj: dict) -> SourceOperator:
    """Inverse of :func:`source_operator_to_json`."""
    try:
        matrix = np.array(obj["re"], dtype=float) + 1j * np.array(obj["im"], dtype=float)
        return SourceOperator(
            s1=int(obj["s1"]),
            s2=int(obj["s2"]),
            d1=int(obj["d1"]),
            d2=int(obj["d2"]),
            matrix=matrix,
        )
    except KeyError as exc:
        raise ValidationError(f"source operator JSON is missing key {exc}") from exc
