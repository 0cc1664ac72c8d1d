"""Finite Bell scenarios: classical extrema, quantum values, see-saw search.

A functional assigns a real weight to every (setting pair, outcome pair)
event; its classical extrema are exact maxima over deterministic strategies
(the extreme points of the local-hidden-variable polytope), quantum values
come from the Born rule with product POVMs, and a see-saw maximizer searches
for large quantum values of binary-outcome functionals.  Every found value
can be certified against the closed-form bounds.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .bounds import dimension_settings_bound, quantum_band, schmidt_settings_bound
from .errors import (
    CapacityError,
    DegeneracyError,
    UnsupportedFunctionalError,
    ValidationError,
)
from .qstate import PureState, schmidt_decompose

#: Maximum number of deterministic strategy pairs enumerated exactly.
ENUMERATION_GUARD = 10**7

#: Chunk size for vectorized strategy enumeration.
_CHUNK = 1 << 14

#: Certification slack on the violation ratio.
CERTIFY_ATOL = 1e-6


@dataclass(frozen=True)
class OutcomeSet:
    """Ordered distinct real outcome labels of one site's measurements."""

    labels: tuple[float, ...]

    def __post_init__(self) -> None:
        labels = tuple(float(v) for v in self.labels)
        if len(labels) < 2:
            raise ValueError(f"need at least 2 outcome labels, got {len(labels)}")
        if len(set(labels)) != len(labels):
            raise ValueError(f"outcome labels must be distinct, got {labels}")
        if not all(math.isfinite(v) for v in labels):
            raise ValueError("outcome labels must be finite")
        object.__setattr__(self, "labels", labels)

    @property
    def size(self) -> int:
        return len(self.labels)


@dataclass(frozen=True)
class BellFunctional:
    """Real weight tensor over (setting1, setting2, outcome1, outcome2)."""

    outcomes1: OutcomeSet
    outcomes2: OutcomeSet
    phi: np.ndarray

    def __post_init__(self) -> None:
        phi = np.array(self.phi, dtype=float)
        if phi.ndim != 4:
            raise ValueError(f"phi must have 4 axes, got {phi.ndim}")
        if phi.shape[0] < 1 or phi.shape[1] < 1:
            raise ValueError(f"phi must cover at least one setting pair, got {phi.shape}")
        if phi.shape[2] != self.outcomes1.size or phi.shape[3] != self.outcomes2.size:
            raise ValueError(
                f"phi outcome axes {phi.shape[2:]}, expected "
                f"({self.outcomes1.size}, {self.outcomes2.size})"
            )
        if not np.all(np.isfinite(phi)):
            raise ValueError("phi entries must be finite")
        phi.setflags(write=False)
        object.__setattr__(self, "phi", phi)

    @property
    def s1(self) -> int:
        return self.phi.shape[0]

    @property
    def s2(self) -> int:
        return self.phi.shape[1]


def chsh_functional() -> BellFunctional:
    """CHSH in correlation form: weights [[1,1],[1,-1]] over ±1 outcomes."""
    labels = (1.0, -1.0)
    signs = np.array(labels)
    c = np.array([[1.0, 1.0], [1.0, -1.0]])
    phi = np.einsum("st,a,b->stab", c, signs, signs)
    return BellFunctional(OutcomeSet(labels), OutcomeSet(labels), phi)


@dataclass(frozen=True)
class Assemblage:
    """Per-site, per-setting POVMs compatible with a (d1, d2) state."""

    site1: tuple[tuple[np.ndarray, ...], ...]
    site2: tuple[tuple[np.ndarray, ...], ...]

    def __post_init__(self) -> None:
        frozen = []
        for site_no, povms in ((1, self.site1), (2, self.site2)):
            if len(povms) < 1:
                raise ValidationError(f"site {site_no} needs at least one POVM")
            dim = None
            site_out = []
            for s, povm in enumerate(povms):
                if len(povm) < 2:
                    raise ValidationError(
                        f"site {site_no} setting {s}: POVM needs >= 2 elements"
                    )
                elements = []
                for a, element in enumerate(povm):
                    m = np.array(element, dtype=complex)
                    if m.ndim != 2 or m.shape[0] != m.shape[1]:
                        raise ValidationError(
                            f"site {site_no} setting {s} element {a}: not square"
                        )
                    if dim is None:
                        dim = m.shape[0]
                    elif m.shape[0] != dim:
                        raise ValidationError(
                            f"site {site_no} setting {s} element {a}: dimension "
                            f"{m.shape[0]} differs from {dim}"
                        )
                    herm = float(np.max(np.abs(m - m.conj().T)))
                    if herm > 1e-10:
                        raise ValidationError(
                            f"site {site_no} setting {s} element {a}: not Hermitian "
                            f"(max asymmetry {herm:.3e})"
                        )
                    lo = float(np.linalg.eigvalsh((m + m.conj().T) / 2.0)[0])
                    if lo < -1e-10:
                        raise ValidationError(
                            f"site {site_no} setting {s} element {a}: not positive "
                            f"semidefinite (min eigenvalue {lo:.3e})"
                        )
                    m.setflags(write=False)
                    elements.append(m)
                total = sum(elements)
                dev = float(np.max(np.abs(total - np.eye(dim))))
                if dev > 1e-10:
                    raise ValidationError(
                        f"site {site_no} setting {s}: POVM elements do not sum to "
                        f"identity (max deviation {dev:.3e})"
                    )
                site_out.append(tuple(elements))
            frozen.append(tuple(site_out))
        object.__setattr__(self, "site1", frozen[0])
        object.__setattr__(self, "site2", frozen[1])

    @property
    def dim1(self) -> int:
        return self.site1[0][0].shape[0]

    @property
    def dim2(self) -> int:
        return self.site2[0][0].shape[0]


@dataclass(frozen=True)
class LhvExtrema:
    """Exact classical extrema of a functional with witness strategies."""

    b_sup: float
    b_inf: float
    b_lhv: float
    argmax_strategy: tuple[tuple[int, ...], tuple[int, ...]]
    argmin_strategy: tuple[tuple[int, ...], tuple[int, ...]]

    def __post_init__(self) -> None:
        if self.b_inf > self.b_sup:
            raise ValidationError(f"b_inf {self.b_inf!r} exceeds b_sup {self.b_sup!r}")
        if self.b_lhv != max(abs(self.b_sup), abs(self.b_inf)):
            raise ValidationError("b_lhv must equal max(|b_sup|, |b_inf|)")


@dataclass(frozen=True)
class ViolationReport:
    """Certification of one claimed quantum value against the closed bounds."""

    quantum_value: float
    b_lhv: float
    ratio: float
    bound_schmidt_settings: float
    bound_dimension_settings: float
    certified: bool
    band: tuple[float, float]
    value_in_band: bool


def strategy_value(
    f: BellFunctional, a: tuple[int, ...], b: tuple[int, ...]
) -> float:
    """Classical value of one deterministic strategy pair."""
    if len(a) != f.s1 or len(b) != f.s2:
        raise ValueError(
            f"strategy lengths ({len(a)}, {len(b)}) do not match settings "
            f"({f.s1}, {f.s2})"
        )
    total = 0.0
    for s in range(f.s1):
        for t in range(f.s2):
            total += f.phi[s, t, a[s], b[t]]
    return total


def _enumerate_extrema(phi: np.ndarray):
    """Extrema over deterministic strategies of a (s_out, m_out, s_in, m_in) tensor.

    Enumerates assignments of the *last* two axes (the "inner" site) in
    chunks; for each, the outer site's best responses are independent per
    setting.  Returns (sup, sup_inner, sup_outer, inf, inf_inner, inf_outer).
    """
    s_out, m_out, s_in, m_in = phi.shape
    # phi indexed [outer setting, outer outcome, inner setting, inner outcome]
    per_inner = phi.transpose(2, 3, 0, 1)  # [s_in, m_in, s_out, m_out]
    best_sup = -math.inf
    best_inf = math.inf
    sup_inner = inf_inner = None
    sup_outer = inf_outer = None
    assignments = itertools.product(range(m_in), repeat=s_in)
    while True:
        chunk = list(itertools.islice(assignments, _CHUNK))
        if not chunk:
            break
        idx = np.array(chunk, dtype=np.intp)  # (n, s_in)
        # Sum the inner site's chosen slices: (n, s_out, m_out)
        tables = per_inner[0, idx[:, 0]]
        for t in range(1, s_in):
            tables = tables + per_inner[t, idx[:, t]]
        sups = tables.max(axis=2).sum(axis=1)
        infs = tables.min(axis=2).sum(axis=1)
        k = int(np.argmax(sups))
        if sups[k] > best_sup:
            best_sup = float(sups[k])
            sup_inner = tuple(int(v) for v in chunk[k])
            sup_outer = tuple(int(v) for v in tables[k].argmax(axis=1))
        k = int(np.argmin(infs))
        if infs[k] < best_inf:
            best_inf = float(infs[k])
            inf_inner = tuple(int(v) for v in chunk[k])
            inf_outer = tuple(int(v) for v in tables[k].argmin(axis=1))
    return best_sup, sup_inner, sup_outer, best_inf, inf_inner, inf_outer


def lhv_extrema(f: BellFunctional) -> LhvExtrema:
    """Exact classical extrema by exhaustive deterministic-strategy enumeration.

    Deterministic strategies are the extreme points of the local-hidden-
    variable polytope, so the sup/inf over them equal the sup/inf over all
    local models.  The cheaper site is enumerated; the other site's optimal
    response decomposes per setting.  Ties resolve to the first strategy in
    lexicographic enumeration order.
    """
    m1, m2 = f.outcomes1.size, f.outcomes2.size
    n1 = m1**f.s1
    n2 = m2**f.s2
    if n1 * n2 > ENUMERATION_GUARD:
        raise CapacityError(
            f"scenario has {n1 * n2} deterministic strategy pairs, above the "
            f"enumeration guard {ENUMERATION_GUARD}; reduce settings or outcomes"
        )
    if n2 <= n1:
        # enumerate site 2, best-respond site 1: [s1, m1, s2, m2]
        sup, sup_b, sup_a, inf, inf_b, inf_a = _enumerate_extrema(
            f.phi.transpose(0, 2, 1, 3)
        )
    else:
        sup, sup_a, sup_b, inf, inf_a, inf_b = _enumerate_extrema(
            f.phi.transpose(1, 3, 0, 2)
        )
    return LhvExtrema(
        b_sup=sup,
        b_inf=inf,
        b_lhv=max(abs(sup), abs(inf)),
        argmax_strategy=(sup_a, sup_b),
        argmin_strategy=(inf_a, inf_b),
    )


def _pair_expectation(amp: np.ndarray, m1: np.ndarray, m2: np.ndarray) -> float:
    """tr[rho (M1 (x) M2)] for rho = |amp><amp| without forming the kron."""
    return float(np.trace(m1 @ amp @ m2.T @ amp.conj().T).real)


def quantum_probabilities(
    state: PureState, asm: Assemblage, s1: int, s2: int
) -> np.ndarray:
    """Born-rule outcome table for one setting pair, shape (m1, m2)."""
    if (asm.dim1, asm.dim2) != (state.d1, state.d2):
        raise ValueError(
            f"assemblage dimensions ({asm.dim1}, {asm.dim2}) do not match state "
            f"({state.d1}, {state.d2})"
        )
    if not 0 <= s1 < len(asm.site1):
        raise ValueError(f"setting s1={s1} out of range for {len(asm.site1)} settings")
    if not 0 <= s2 < len(asm.site2):
        raise ValueError(f"setting s2={s2} out of range for {len(asm.site2)} settings")
    amp = state.amplitudes
    povm1 = asm.site1[s1]
    povm2 = asm.site2[s2]
    table = np.empty((len(povm1), len(povm2)), dtype=float)
    for a, e1 in enumerate(povm1):
        for b, e2 in enumerate(povm2):
            table[a, b] = _pair_expectation(amp, e1, e2)
    return table


def bell_value(f: BellFunctional, state: PureState, asm: Assemblage) -> float:
    """Quantum value sum_{s,t,a,b} phi[s,t,a,b] * p(a,b | s,t)."""
    if len(asm.site1) != f.s1 or len(asm.site2) != f.s2:
        raise ValueError(
            f"assemblage setting counts ({len(asm.site1)}, {len(asm.site2)}) do not "
            f"match functional ({f.s1}, {f.s2})"
        )
    for s, povm in enumerate(asm.site1):
        if len(povm) != f.outcomes1.size:
            raise ValueError(
                f"site 1 setting {s} has {len(povm)} outcomes, functional expects "
                f"{f.outcomes1.size}"
            )
    for t, povm in enumerate(asm.site2):
        if len(povm) != f.outcomes2.size:
            raise ValueError(
                f"site 2 setting {t} has {len(povm)} outcomes, functional expects "
                f"{f.outcomes2.size}"
            )
    total = 0.0
    for s in range(f.s1):
        for t in range(f.s2):
            table = quantum_probabilities(state, asm, s, t)
            total += float(np.sum(f.phi[s, t] * table))
    return total


def _sign_observable(h: np.ndarray) -> np.ndarray:
    """±1 observable maximizing tr[O h]: +1 on the nonnegative eigenspace."""
    sym = (h + h.conj().T) / 2.0
    w, v = np.linalg.eigh(sym)
    signs = np.where(w >= 0.0, 1.0, -1.0)
    o = (v * signs) @ v.conj().T
    return (o + o.conj().T) / 2.0


def _multilinear_coefficients(f: BellFunctional):
    """Split phi over ±1 outcomes into constant/marginal/correlation parts."""
    l1 = np.array(f.outcomes1.labels)
    l2 = np.array(f.outcomes2.labels)
    c0 = np.einsum("stab->st", f.phi) / 4.0
    c1 = np.einsum("stab,a->st", f.phi, l1) / 4.0
    c2 = np.einsum("stab,b->st", f.phi, l2) / 4.0
    c3 = np.einsum("stab,a,b->st", f.phi, l1, l2) / 4.0
    return c0, c1, c2, c3


def seesaw_maximize(
    f: BellFunctional,
    state: PureState,
    restarts: int = 10,
    max_iters: int = 200,
    tol: float = 1e-12,
    seed: int = 0,
) -> tuple[float, Assemblage]:
    """Alternating best-response search for a large quantum value.

    Supports ±1 outcomes on both sites.  Site-2 observables start as
    sign-split seeded Gaussian Hermitian samples; each sweep replaces every
    site-1 observable with the sign of its partial Bell operator (outcome +1
    on the nonnegative eigenspace), then symmetrically for site 2, until the
    value improves by less than ``tol`` or ``max_iters`` sweeps pass.  The
    best restart wins and the returned value is re-evaluated from the
    returned assemblage.

    Returns:
        (value, assemblage) for the best run over ``restarts`` restarts.
    """
    for name, out in (("site 1", f.outcomes1), ("site 2", f.outcomes2)):
        if sorted(out.labels) != [-1.0, 1.0]:
            raise UnsupportedFunctionalError(
                f"see-saw requires ±1 outcomes; {name} has labels {out.labels}"
            )
    if restarts < 1 or max_iters < 1:
        raise ValueError("restarts and max_iters must be >= 1")
    if not tol >= 0.0:
        raise ValueError(f"tol must be nonnegative, got {tol!r}")
    amp = state.amplitudes
    d1, d2 = state.d1, state.d2
    rho1 = amp @ amp.conj().T
    rho2 = amp.T @ amp.conj()
    _, c1, c2, c3 = _multilinear_coefficients(f)
    c0_total = float(np.einsum("stab->", f.phi)) / 4.0
    row1 = c1.sum(axis=1)  # site-1 marginal weights per setting
    row2 = c2.sum(axis=0)
    eye1 = np.eye(d1, dtype=complex)
    eye2 = np.eye(d2, dtype=complex)

    def objective(ops1, ops2):
        val = c0_total
        val += sum(row1[s] * float(np.trace(ops1[s] @ rho1).real) for s in range(f.s1))
        val += sum(row2[t] * float(np.trace(ops2[t] @ rho2).real) for t in range(f.s2))
        for s in range(f.s1):
            for t in range(f.s2):
                if c3[s, t] != 0.0:
                    val += c3[s, t] * _pair_expectation(amp, ops1[s], ops2[t])
        return val

    def respond_site1(ops2):
        out = []
        for s in range(f.s1):
            k = row1[s] * eye2 + sum(c3[s, t] * ops2[t] for t in range(f.s2))
            partial = amp @ k.T @ amp.conj().T
            out.append(_sign_observable(partial))
        return out

    def respond_site2(ops1):
        out = []
        for t in range(f.s2):
            k = row2[t] * eye1 + sum(c3[s, t] * ops1[s] for s in range(f.s1))
            partial = (amp.conj().T @ k @ amp).conj()
            out.append(_sign_observable(partial))
        return out

    best_val = -math.inf
    best_ops = None
    for r in range(restarts):
        rng = np.random.default_rng([seed, r])
        ops2 = []
        for _ in range(f.s2):
            g = rng.standard_normal((d2, d2)) + 1j * rng.standard_normal((d2, d2))
            ops2.append(_sign_observable(g))
        ops1 = respond_site1(ops2)
        value = objective(ops1, ops2)
        for _ in range(max_iters):
            ops2 = respond_site2(ops1)
            mid = objective(ops1, ops2)
            ops1 = respond_site1(ops2)
            new = objective(ops1, ops2)
            if mid < value - 1e-9 or new < mid - 1e-9:
                raise RuntimeError(
                    "see-saw objective decreased; best-response update is broken"
                )
            gained = new - value
            value = new
            if gained < tol:
                break
        if value > best_val:
            best_val = value
            best_ops = (ops1, ops2)

    ops1, ops2 = best_ops
    l1 = f.outcomes1.labels
    l2 = f.outcomes2.labels
    asm = Assemblage(
        site1=tuple(
            tuple((eye1 + lab * o) / 2.0 for lab in l1) for o in ops1
        ),
        site2=tuple(
            tuple((eye2 + lab * o) / 2.0 for lab in l2) for o in ops2
        ),
    )
    return bell_value(f, state, asm), asm


def certify(f: BellFunctional, state: PureState, value: float) -> ViolationReport:
    """Certify a claimed quantum value against the closed-form bounds.

    Recomputes the classical extrema, forms ratio = |value| / b_lhv, and
    checks it against the lesser of the Schmidt-coefficient bound and the
    dimension bound (slack 1e-6).  Also reports the interval that must
    contain every quantum value of the functional and whether ``value`` lies
    inside it (1e-9 float slack).
    """
    ext = lhv_extrema(f)
    if abs(ext.b_lhv) < 1e-12:
        raise DegeneracyError(
            "classical bound is zero (all deterministic strategies vanish); "
            "violation ratio is undefined"
        )
    sd = schmidt_decompose(state)
    b_schmidt = schmidt_settings_bound(sd, f.s1, f.s2)
    b_dim = dimension_settings_bound(state.d1, state.d2, f.s1, f.s2)
    ratio = abs(value) / ext.b_lhv
    lo, hi = quantum_band(ext.b_sup, ext.b_inf, b_schmidt)
    return ViolationReport(
        quantum_value=float(value),
        b_lhv=ext.b_lhv,
        ratio=ratio,
        bound_schmidt_settings=b_schmidt,
        bound_dimension_settings=b_dim,
        certified=bool(ratio <= min(b_schmidt, b_dim) + CERTIFY_ATOL),
        band=(lo, hi),
        value_in_band=bool(lo - 1e-9 <= value <= hi + 1e-9),
    )
