"""Coherent states: displaced vacua and their ladder algebra.

Two independent constructions of the same state live here. The closed
form writes the amplitudes directly,

    amp(n, m) = exp(-|b|^2/2) conj(b0)^(n-m) conj(b1)^m / sqrt((n-m)! m!),

and the operator form applies the exponential of the displacement
generator to the vacuum. Tests pit one against the other; nothing in
this module assumes they agree.
"""

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .errors import TruncationOverflowError, TruncationTailWarning
from .fock import (
    Bidegree,
    HoloPoly,
    _sqrt_fact,
    apply_annihilation,
    apply_creation,
    inner_product,
    norm,
    poly_add,
    poly_scale,
    top_grade,
)

__all__ = [
    "DisplacementParam",
    "coherent_coeffs",
    "displacement_apply",
    "annihilation_eigen_residual",
    "ladder_map",
    "norm_tail_bound",
]


@dataclass(frozen=True)
class DisplacementParam:
    """Displacement label b = (b0, b1); the state it produces satisfies
    a^alpha Psi(b) = conj(b_alpha) Psi(b)."""

    b0: complex
    b1: complex

    @property
    def norm2(self) -> float:
        return abs(self.b0) ** 2 + abs(self.b1) ** 2


def coherent_coeffs(b: DisplacementParam, nmax: int = 32) -> HoloPoly:
    """Closed-form coherent amplitudes, truncated at grade nmax."""
    if nmax < 0:
        raise ValueError("nmax must be non-negative")
    pref = math.exp(-0.5 * b.norm2)
    c0 = b.b0.conjugate()
    c1 = b.b1.conjugate()
    amps = {}
    # Row by row: pow0[k] = c0^k etc., built incrementally to avoid
    # recomputing powers inside the double loop.
    pow0 = [1.0 + 0.0j]
    pow1 = [1.0 + 0.0j]
    for _ in range(nmax):
        pow0.append(pow0[-1] * c0)
        pow1.append(pow1[-1] * c1)
    for n in range(nmax + 1):
        for m in range(n + 1):
            a = pref * pow0[n - m] * pow1[m] / (_sqrt_fact(n - m) * _sqrt_fact(m))
            if a != 0:
                amps[Bidegree(n, m)] = a
    return HoloPoly(amps, nmax=nmax)


def ladder_map(direction: str, slot: int, p: HoloPoly) -> HoloPoly:
    """Geometric ladder maps: "lower" is the slot derivative, "raise" is
    minus the adjoint shift (the sign the connection puts on the raising
    direction).  The displacement generator is built from exactly these."""
    if direction == "lower":
        return apply_annihilation(slot, p)
    if direction == "raise":
        return poly_scale(-1.0, apply_creation(slot, p))
    raise ValueError(f"direction must be 'raise' or 'lower', got {direction!r}")


# Displacement internals work on a dense (nmax+1) x (nmax+1) array A with
# A[n, m] the amplitude at bidegree (n, m) and the m > n triangle held at
# zero; ladder shifts are whole-array moves, which keeps the exponential
# series cheap at nmax = 40 and beyond.


def _to_array(p: HoloPoly) -> np.ndarray:
    a = np.zeros((p.nmax + 1, p.nmax + 1), dtype=np.complex128)
    for (n, m), v in p.coeffs.items():
        a[n, m] = v
    return a


def _from_array(a: np.ndarray, nmax: int) -> HoloPoly:
    amps = {}
    nz = np.argwhere(a != 0)
    for n, m in nz:
        amps[Bidegree(int(n), int(m))] = complex(a[n, m])
    return HoloPoly(amps, nmax=nmax)


def _shift_tables(nmax: int):
    n_idx, m_idx = np.meshgrid(
        np.arange(nmax + 1), np.arange(nmax + 1), indexing="ij"
    )
    low0 = np.sqrt(np.maximum(n_idx - m_idx, 0))   # factor leaving (n, m) downward, slot 0
    low1 = np.sqrt(np.maximum(m_idx, 0))           # slot 1
    return low0, low1


def _generator_apply_array(
    b: DisplacementParam, a: np.ndarray, scale: float, low0, low1
) -> np.ndarray:
    # One application of -grad(b)/steps: raising weighted by conj(b_alpha),
    # lowering weighted by -b_alpha.  The raising shift writes row n+1 from
    # row n and silently loses the top row: the series grazes the cutoff
    # even when the final state does not, and the caller watches the tail.
    out = np.zeros_like(a)
    if b.b0 != 0:
        out[1:, :] += (scale * b.b0.conjugate()) * (a[:-1, :] * low0[1:, :])
        out[:-1, :] += (-scale * b.b0) * (a[1:, :] * low0[1:, :])
    if b.b1 != 0:
        out[1:, 1:] += (scale * b.b1.conjugate()) * (a[:-1, :-1] * low1[1:, 1:])
        out[:-1, :-1] += (-scale * b.b1) * (a[1:, 1:] * low1[1:, 1:])
    return out


def displacement_apply(b: DisplacementParam, p: HoloPoly) -> HoloPoly:
    """exp(-grad(b)) applied to p by scaling and squaring.

    The generator grad(b) combines lowering with weight b and raising
    with weight -conj(b) (see ladder_map); its exponential displaces the
    vacuum onto the coherent state with label b.  The generator norm
    grows like |b|*sqrt(nmax), so the step count adapts: split into 2^s
    steps with scaled norm <= 1/2, run the Taylor series per step to
    rounding level, apply the step 2^s times.

    The input must stay clear of the truncation grade (that error is
    strict); series intermediates that graze it are truncated silently,
    and a TruncationTailWarning reports when the result carries weight
    near the cutoff, in which case nmax was too small for this b.
    """
    if top_grade(p) >= p.nmax:
        raise TruncationOverflowError(
            "input occupies the truncation grade; displacement cannot act faithfully"
        )
    bnorm = math.sqrt(b.norm2)
    if bnorm == 0:
        return p
    nmax = p.nmax
    low0, low1 = _shift_tables(nmax)
    # Crude but safe operator-norm estimate on the truncated space.
    est = 2.0 * bnorm * math.sqrt(nmax + 1.0)
    s = max(0, math.ceil(math.log2(max(est / 0.5, 1.0))))
    steps = 1 << s
    scale = 1.0 / steps
    result = _to_array(p)
    for _ in range(steps):
        acc = result.copy()
        term = result
        for k in range(1, 81):
            term = _generator_apply_array(b, term, scale, low0, low1) / k
            acc += term
            tn = float(np.linalg.norm(term))
            if tn == 0.0 or tn <= 1e-18 * max(float(np.linalg.norm(acc)), 1e-300):
                break
        result = acc
    lo = max(nmax - 3, 0)
    tail = float(np.sum(np.abs(result[lo:, :]) ** 2))
    total = float(np.sum(np.abs(result) ** 2))
    if total > 0 and tail > 1e-12 * total:
        warnings.warn(
            TruncationTailWarning(
                f"displaced state holds {tail / total:.3e} of its weight within "
                f"3 grades of nmax={nmax}; raise nmax for a faithful state",
                tail_mass=tail / total,
            )
        )
    return _from_array(result, nmax)


def annihilation_eigen_residual(b: DisplacementParam, p: HoloPoly) -> float:
    """max_alpha |a^alpha p - conj(b_alpha) p| / |p|.

    Zero, up to truncation tail, exactly when p is the coherent state
    with label b.
    """
    pn = norm(p)
    if pn == 0:
        raise ValueError("residual undefined for the zero state")
    worst = 0.0
    for slot, lam in ((0, b.b0.conjugate()), (1, b.b1.conjugate())):
        diff = poly_add(apply_annihilation(slot, p), poly_scale(-lam, p))
        worst = max(worst, norm(diff) / pn)
    return worst


def norm_tail_bound(b: DisplacementParam, nmax: int) -> float:
    """Upper bound on |1 - |Psi_truncated|^2| from the dropped grades.

    Valid when |b|^2 <= (nmax+2)/2: the grade weights are Poisson(|b|^2)
    and the tail past nmax is bounded by twice its first term.
    """
    lam = b.norm2
    if lam > 0.5 * (nmax + 2):
        raise ValueError("bound needs |b|^2 <= (nmax+2)/2")
    if lam == 0:
        return 0.0
    # 2 * lam^(nmax+1)/(nmax+1)! in log space to dodge overflow.
    logterm = (nmax + 1) * math.log(lam) - math.lgamma(nmax + 2)
    return 2.0 * math.exp(logterm)
