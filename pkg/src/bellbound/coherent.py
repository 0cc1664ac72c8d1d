"""Entangled two-mode superpositions of opposite-amplitude coherent states.

Four one-parameter families are covered, indexed 1..4 with real amplitude
``alpha > 0`` and overlap ``x = <alpha|-alpha> = exp(-2 alpha^2)``:

    1:  |a>|a> + |-a>|-a>     3:  |a>|a> - |-a>|-a>
    2:  |a>|-a> + |-a>|a>     4:  |a>|-a> - |-a>|a>

Plus-sign families normalize by sqrt(2 (1 + x^2)), minus-sign families by
sqrt(2 (1 - x^2)).  Everything has closed forms in the orthonormal two-mode
basis; Fock-space truncations exist to cross-check those forms numerically.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import CapacityError, DegeneracyError
from .qstate import PureState

#: Default bound on the coherent-state mass left above an automatic cutoff.
DEFAULT_TAIL_TOL = 1e-14

#: Automatic cutoffs never go below this photon number.
MIN_AUTO_CUTOFF = 16

_PLUS_FAMILIES = (1, 2)
_MINUS_FAMILIES = (3, 4)


@dataclass(frozen=True)
class CoherentFamily:
    """One member of the four two-mode coherent superposition families."""

    family: int
    alpha: float

    def __post_init__(self) -> None:
        if self.family not in (1, 2, 3, 4):
            raise ValueError(f"family must be 1, 2, 3 or 4, got {self.family!r}")
        if not (isinstance(self.alpha, (int, float)) and self.alpha > 0.0):
            raise ValueError(f"alpha must be a positive real, got {self.alpha!r}")
        if not math.isfinite(self.alpha):
            raise ValueError("alpha must be finite")
        object.__setattr__(self, "alpha", float(self.alpha))

    @property
    def overlap_x(self) -> float:
        """Coherent overlap x = exp(-2 alpha^2)."""
        return math.exp(-2.0 * self.alpha**2)


@dataclass(frozen=True)
class FockTruncation:
    """Photon-number cutoff together with its realized and declared tail bounds."""

    cutoff: int
    tail_bound: float
    tail_tol: float = DEFAULT_TAIL_TOL

    def __post_init__(self) -> None:
        if not isinstance(self.cutoff, int) or self.cutoff < 1:
            raise ValueError(f"cutoff must be a positive integer, got {self.cutoff!r}")
        if self.tail_bound > self.tail_tol:
            raise CapacityError(
                f"cutoff {self.cutoff} leaves tail mass {self.tail_bound:.3e}, "
                f"above the requested tolerance {self.tail_tol:.0e}"
            )


def _poisson_tail(alpha: float, cutoff: int) -> float:
    """Mass of the Poisson(alpha^2) distribution strictly above ``cutoff``.

    Summed termwise from below (terms stay bounded, no factorial overflow).
    """
    lam = alpha * alpha
    term = math.exp(-lam)
    for m in range(1, cutoff + 2):
        term *= lam / m
    # term now equals e^-lam * lam^(cutoff+1) / (cutoff+1)!
    total = 0.0
    m = cutoff + 1
    while term > 1e-300 and m < cutoff + 2000:
        total += term
        m += 1
        term *= lam / m
    return total


def fock_truncation(
    alpha: float, cutoff: int | str = "auto", tail_tol: float = DEFAULT_TAIL_TOL
) -> FockTruncation:
    """Truncation for ``|±alpha>`` leaving at most ``tail_tol`` mass above it.

    ``cutoff="auto"`` picks the smallest cutoff (at least 16) meeting the
    tolerance; an explicit integer cutoff that misses the tolerance raises a
    capacity error.
    """
    if not (isinstance(alpha, (int, float)) and alpha > 0 and math.isfinite(alpha)):
        raise ValueError(f"alpha must be a positive finite real, got {alpha!r}")
    if not (0.0 < tail_tol < 1.0):
        raise ValueError(f"tail_tol must lie in (0, 1), got {tail_tol!r}")
    if cutoff == "auto":
        n = MIN_AUTO_CUTOFF
        while _poisson_tail(alpha, n) >= tail_tol:
            n += 1
        return FockTruncation(cutoff=n, tail_bound=_poisson_tail(alpha, n), tail_tol=tail_tol)
    if not isinstance(cutoff, int) or isinstance(cutoff, bool):
        raise ValueError(f'cutoff must be a positive integer or "auto", got {cutoff!r}')
    return FockTruncation(
        cutoff=cutoff, tail_bound=_poisson_tail(alpha, cutoff), tail_tol=tail_tol
    )


def coherent_fock_vector(sign: int, alpha: float, trunc: FockTruncation) -> np.ndarray:
    """Truncated, renormalized Fock expansion of ``|sign * alpha>``.

    Entry m is proportional to (sign*alpha)^m exp(-alpha^2/2) / sqrt(m!) for
    m = 0..cutoff; the renormalization factor differs from 1 by less than the
    truncation's tail tolerance, else a capacity error is raised.
    """
    if sign not in (1, -1):
        raise ValueError(f"sign must be +1 or -1, got {sign!r}")
    if not (isinstance(alpha, (int, float)) and alpha > 0 and math.isfinite(alpha)):
        raise ValueError(f"alpha must be a positive finite real, got {alpha!r}")
    n = trunc.cutoff
    vec = np.empty(n + 1, dtype=float)
    amp = math.exp(-(alpha**2) / 2.0)
    for m in range(n + 1):
        vec[m] = amp
        amp *= sign * alpha / math.sqrt(m + 1)
    norm = float(np.linalg.norm(vec))
    if abs(1.0 / norm - 1.0) >= trunc.tail_tol:
        raise CapacityError(
            f"cutoff {n} is too small for alpha={alpha}: renormalization factor "
            f"deviates from 1 by {abs(1.0 / norm - 1.0):.3e} "
            f"(tail tolerance {trunc.tail_tol:.0e})"
        )
    out = (vec / norm).astype(complex)
    out.setflags(write=False)
    return out


def gram_schmidt_basis(alpha: float, trunc: FockTruncation) -> tuple[np.ndarray, np.ndarray]:
    """Orthonormal pair (u1, u2) spanning {|alpha>, |-alpha>} in Fock space.

    u1 = |alpha> and u2 = (|-alpha> - x |alpha>) / sqrt(1 - x^2) with
    x = exp(-2 alpha^2), so that |-alpha> = x u1 + sqrt(1 - x^2) u2.
    """
    x = math.exp(-2.0 * alpha * alpha)
    if 1.0 - x * x < 1e-14:
        raise DegeneracyError(
            f"|alpha> and |-alpha> are numerically parallel at alpha={alpha!r} "
            f"(1 - x^2 = {1.0 - x * x:.3e})"
        )
    u1 = coherent_fock_vector(1, alpha, trunc)
    minus = coherent_fock_vector(-1, alpha, trunc)
    u2 = (minus - x * u1) / math.sqrt(1.0 - x * x)
    u2 = np.asarray(u2)
    u2.setflags(write=False)
    return u1, u2


@dataclass(frozen=True)
class TwoModeAmplitudes:
    """Exact 2x2 amplitude matrix of a family state in the (u1, u2) basis."""

    matrix: np.ndarray
    overlap_x: float

    def __post_init__(self) -> None:
        m = np.array(self.matrix, dtype=complex)
        if m.shape != (2, 2):
            raise ValueError(f"two-mode amplitude matrix must be 2x2, got {m.shape}")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)


def two_mode_amplitudes(fam: CoherentFamily) -> TwoModeAmplitudes:
    """Closed-form amplitudes of a family state in the orthonormal basis."""
    x = fam.overlap_x
    c = math.sqrt(1.0 - x * x)
    if fam.family == 1:
        m = np.array([[1.0 + x * x, x * c], [x * c, 1.0 - x * x]])
        denom = math.sqrt(2.0 * (1.0 + x * x))
    elif fam.family == 2:
        m = np.array([[2.0 * x, c], [c, 0.0]])
        denom = math.sqrt(2.0 * (1.0 + x * x))
    elif fam.family == 3:
        y = 1.0 - x * x
        m = np.array([[y, -x * c], [-x * c, -y]])
        denom = math.sqrt(2.0 * y)
    else:
        m = np.array([[0.0, 1.0], [-1.0, 0.0]])
        denom = math.sqrt(2.0)
    return TwoModeAmplitudes(matrix=m / denom, overlap_x=x)


def reduced_eigenvalues(fam: CoherentFamily) -> tuple[float, float]:
    """Closed-form eigenvalue pair of either reduced state, summing to 1.

    Families 1 and 2: (1 ± x)^2 / (2 (1 + x^2)) with x = exp(-2 alpha^2);
    families 3 and 4: exactly (1/2, 1/2).
    """
    if fam.family in _MINUS_FAMILIES:
        return (0.5, 0.5)
    x = fam.overlap_x
    denom = 2.0 * (1.0 + x * x)
    return ((1.0 + x) ** 2 / denom, (1.0 - x) ** 2 / denom)


def coherent_violation_bound(fam: CoherentFamily) -> float:
    """Largest violation ratio attainable by a family state, any scenario.

    (3 - x^2) / (1 + x^2) for families 1 and 2 (x = exp(-2 alpha^2)), and
    exactly 3 for families 3 and 4; climbs from 1 to 3 as alpha grows.
    """
    if fam.family in _MINUS_FAMILIES:
        return 3.0
    x2 = fam.overlap_x ** 2
    return (3.0 - x2) / (1.0 + x2)


def fock_state(fam: CoherentFamily, trunc: FockTruncation) -> PureState:
    """Family state as a truncated two-mode Fock amplitude matrix.

    Built from the truncated coherent vectors with the family's closed-form
    normalization, then renormalized exactly; the residual must stay below
    1e-6 or the cutoff is deemed insufficient.
    """
    alpha = fam.alpha
    p = coherent_fock_vector(1, alpha, trunc)
    m = coherent_fock_vector(-1, alpha, trunc)
    x2 = fam.overlap_x ** 2
    if fam.family == 1:
        raw = np.outer(p, p) + np.outer(m, m)
        denom = math.sqrt(2.0 * (1.0 + x2))
    elif fam.family == 2:
        raw = np.outer(p, m) + np.outer(m, p)
        denom = math.sqrt(2.0 * (1.0 + x2))
    elif fam.family == 3:
        raw = np.outer(p, p) - np.outer(m, m)
        denom = math.sqrt(2.0 * (1.0 - x2))
    else:
        raw = np.outer(p, m) - np.outer(m, p)
        denom = math.sqrt(2.0 * (1.0 - x2))
    amp = raw / denom
    residual = abs(float(np.linalg.norm(amp)) - 1.0)
    if residual > 1e-6:
        raise CapacityError(
            f"cutoff {trunc.cutoff} distorts the family normalization by "
            f"{residual:.3e}; increase the cutoff"
        )
    return PureState(amp / np.linalg.norm(amp))


def bell_limit_fidelity(fam: int, alpha: float, trunc: FockTruncation) -> float:
    """Squared overlap of a minus-sign family state with its single-photon Bell limit.

    Family 3 is compared against (|1,0> + |0,1>)/sqrt(2) and family 4 against
    (|1,0> - |0,1>)/sqrt(2), discarding the global sign; as alpha -> 0 the
    fidelity tends to 1 with closed form [2 alpha e^(-alpha^2) / sqrt(1 - e^(-4 alpha^2))]^2.
    """
    if fam not in _MINUS_FAMILIES:
        raise ValueError(f"Bell-limit fidelity applies to families 3 and 4 only, got {fam}")
    amp = fock_state(CoherentFamily(fam, alpha), trunc).amplitudes
    sign = 1.0 if fam == 3 else -1.0
    overlap = (amp[1, 0] + sign * amp[0, 1]) / math.sqrt(2.0)
    return float(abs(overlap) ** 2)


def bound_curve(
    fam_family: int, alpha_min: float, alpha_max: float, steps: int
) -> list[tuple[float, float]]:
    """Violation-bound samples (alpha, bound) on a uniform alpha grid."""
    if steps < 2:
        raise ValueError(f"steps must be >= 2, got {steps!r}")
    if not (0.0 < alpha_min < alpha_max):
        raise ValueError(
            f"need 0 < alpha_min < alpha_max, got {alpha_min!r}, {alpha_max!r}"
        )
    grid = np.linspace(alpha_min, alpha_max, steps)
    return [
        (float(a), coherent_violation_bound(CoherentFamily(fam_family, float(a))))
        for a in grid
    ]
