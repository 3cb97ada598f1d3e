"""Truncated two-mode Bargmann space.

States live in the span of the orthonormal monomials

    psi_nm(z) = z0^(n-m) * z1^m / sqrt((n-m)! * m!),    0 <= m <= n <= nmax,

holomorphic in z = (z0, z1) in C^2.  Amplitudes are measured by the
Gaussian pairing

    <p, q> = (1/pi^2) * integral conj(p(z)) q(z) exp(-|z|^2) d^2z,

under which the psi_nm are orthonormal, so the closed-form inner product
is plain coefficient algebra.  A full physical section multiplies the
polynomial by the vacuum factor (1/pi) exp(-|z|^2/2) exp(i*theta); that
factor lives in `section_eval` only and is never folded into amplitudes.
(The vacuum's own 1/pi and the pairing's 1/pi^2 are two independent
conventions; this module keeps both verbatim and documents the split
rather than merging them.)

Total degree n is the grade; the grading is preserved or shifted by one
by every operator here (ladders, number, Hamiltonian), which is what
makes evolution diagonal and everything exactly testable.
"""

import math
from dataclasses import dataclass, field
from typing import Dict, Iterable, Mapping, NamedTuple, Tuple

import numpy as np

from . import backend
from .errors import TruncationOverflowError

__all__ = [
    "Bidegree",
    "HoloPoly",
    "PhasePoint",
    "PhysicalConstants",
    "SectionState",
    "monomial_eval",
    "poly_eval",
    "section_eval",
    "inner_product",
    "norm",
    "mc_inner_product",
    "apply_annihilation",
    "apply_creation",
    "number_apply",
    "hamiltonian_apply",
    "grade_project",
    "grades",
    "top_grade",
    "poly_add",
    "poly_scale",
]

# Direct sqrt-factorial values are exact-precision doubles well past this
# bound, but monomial evaluation switches to log-space once grades exceed
# it so magnitude products cannot saturate the double range.
_DIRECT_GRADE_LIMIT = 150
_MC_CHUNK = 4096


class Bidegree(NamedTuple):
    """Index (n, m) of the basis monomial psi_nm: grade n, second-slot degree m."""

    n: int
    m: int


def _check_bidegree(deg: Tuple[int, int]) -> Bidegree:
    n, m = int(deg[0]), int(deg[1])
    if not 0 <= m <= n:
        raise ValueError(f"bidegree needs 0 <= m <= n, got (n={n}, m={m})")
    return Bidegree(n, m)


_SQRT_FACT = [1.0]


def _sqrt_fact(k: int) -> float:
    """sqrt(k!) as a double, built incrementally (finite up to k ~ 300)."""
    while len(_SQRT_FACT) <= k:
        j = len(_SQRT_FACT)
        _SQRT_FACT.append(_SQRT_FACT[-1] * math.sqrt(j))
    return _SQRT_FACT[k]


def _log_sqrt_fact(k: int) -> float:
    return 0.5 * math.lgamma(k + 1)


@dataclass(frozen=True)
class PhasePoint:
    """A point of C^2 in the dimensionless oscillator coordinates."""

    z0: complex
    z1: complex

    @property
    def rho2(self) -> float:
        return abs(self.z0) ** 2 + abs(self.z1) ** 2

    @property
    def rho(self) -> float:
        return math.sqrt(self.rho2)


@dataclass(frozen=True)
class PhysicalConstants:
    """hbar and omega; both strictly positive."""

    hbar: float = 1.0
    omega: float = 1.0

    def __post_init__(self):
        if not (self.hbar > 0 and self.omega > 0):
            raise ValueError("hbar and omega must be positive")


@dataclass(frozen=True)
class HoloPoly:
    """Finite amplitude map over bidegrees, truncated at grade nmax.

    ``coeffs`` maps Bidegree -> complex amplitude in the psi_nm basis;
    absent keys mean zero, exact zeros are pruned at construction.  The
    instance should be treated as immutable.
    """

    coeffs: Dict[Bidegree, complex] = field(default_factory=dict)
    nmax: int = 32

    def __post_init__(self):
        if self.nmax < 0:
            raise ValueError("nmax must be non-negative")
        clean: Dict[Bidegree, complex] = {}
        for deg, amp in self.coeffs.items():
            bd = _check_bidegree(deg)
            if bd.n > self.nmax:
                raise ValueError(f"bidegree {bd} exceeds nmax={self.nmax}")
            a = complex(amp)
            if a != 0:
                clean[bd] = a
        object.__setattr__(self, "coeffs", clean)

    @classmethod
    def basis(cls, n: int, m: int, nmax: int | None = None) -> "HoloPoly":
        """Unit-amplitude psi_nm (nmax defaults to n)."""
        bd = _check_bidegree((n, m))
        return cls({bd: 1.0 + 0.0j}, nmax=bd.n if nmax is None else nmax)

    @classmethod
    def zero(cls, nmax: int = 32) -> "HoloPoly":
        return cls({}, nmax=nmax)

    def amplitude(self, n: int, m: int) -> complex:
        return self.coeffs.get(Bidegree(n, m), 0.0 + 0.0j)


@dataclass(frozen=True)
class SectionState:
    """A section: polynomial part, vacuum phase theta, and constants.

    The section's value at z is poly(z) * (1/pi) e^{-|z|^2/2} e^{i theta};
    theta is stored normalized to [0, 2*pi).
    """

    poly: HoloPoly
    theta: float = 0.0
    consts: PhysicalConstants = field(default_factory=PhysicalConstants)

    def __post_init__(self):
        object.__setattr__(self, "theta", float(self.theta) % (2.0 * math.pi))


def monomial_eval(deg: Tuple[int, int], z: PhasePoint) -> complex:
    """Value of the orthonormal monomial psi_nm at z (0^0 = 1)."""
    n, m = _check_bidegree(deg)
    e0, e1 = n - m, m
    if n <= _DIRECT_GRADE_LIMIT:
        return (z.z0**e0) * (z.z1**e1) / (_sqrt_fact(e0) * _sqrt_fact(e1))
    # Log-space path for very high grades: split magnitude and phase so the
    # intermediate products stay representable.
    if (e0 > 0 and z.z0 == 0) or (e1 > 0 and z.z1 == 0):
        return 0.0 + 0.0j
    logmag = -_log_sqrt_fact(e0) - _log_sqrt_fact(e1)
    ang = 0.0
    if e0 > 0:
        logmag += e0 * math.log(abs(z.z0))
        ang += e0 * math.atan2(z.z0.imag, z.z0.real)
    if e1 > 0:
        logmag += e1 * math.log(abs(z.z1))
        ang += e1 * math.atan2(z.z1.imag, z.z1.real)
    return math.exp(logmag) * complex(math.cos(ang), math.sin(ang))


def poly_eval(p: HoloPoly, z: PhasePoint) -> complex:
    """Sum of amplitude * psi_nm(z) over the stored bidegrees."""
    return sum(
        (a * monomial_eval(deg, z) for deg, a in p.coeffs.items()),
        0.0 + 0.0j,
    )


def section_eval(s: SectionState, z: PhasePoint) -> complex:
    """Full section value: polynomial times the vacuum Gaussian factor."""
    vac = (1.0 / math.pi) * math.exp(-0.5 * z.rho2)
    return poly_eval(s.poly, z) * vac * complex(math.cos(s.theta), math.sin(s.theta))


def inner_product(p: HoloPoly, q: HoloPoly) -> complex:
    """Closed-form pairing: sum of conj(p)·q amplitudes over shared bidegrees.

    Conjugate-linear in the first argument.
    """
    small, big, swap = (p.coeffs, q.coeffs, False)
    if len(q.coeffs) < len(p.coeffs):
        small, big, swap = (q.coeffs, p.coeffs, True)
    acc = 0.0 + 0.0j
    for deg, a in small.items():
        other = big.get(deg)
        if other is not None:
            acc += (a.conjugate() * other) if not swap else (other.conjugate() * a)
    return acc


def norm(p: HoloPoly) -> float:
    return math.sqrt(max(inner_product(p, p).real, 0.0))


def _term_arrays(p: HoloPoly):
    k = len(p.coeffs)
    e0 = np.empty(k, dtype=np.int64)
    e1 = np.empty(k, dtype=np.int64)
    c = np.empty(k, dtype=np.complex128)
    for i, (deg, a) in enumerate(sorted(p.coeffs.items())):
        e0[i] = deg.n - deg.m
        e1[i] = deg.m
        c[i] = a / (_sqrt_fact(deg.n - deg.m) * _sqrt_fact(deg.m))
    return e0, e1, c


def eval_batch(p: HoloPoly, z0: np.ndarray, z1: np.ndarray) -> np.ndarray:
    """Vectorized poly_eval over arrays of points (kernel-backed)."""
    if top_grade(p) > _DIRECT_GRADE_LIMIT:
        out = np.zeros(np.shape(z0), dtype=np.complex128)
        for i in range(len(out)):
            out[i] = poly_eval(p, PhasePoint(complex(z0[i]), complex(z1[i])))
        return out
    e0, e1, c = _term_arrays(p)
    return backend.eval_terms(e0, e1, c, z0, z1)


def mc_inner_product(
    p: HoloPoly, q: HoloPoly, samples: int, seed: int = 0
) -> Tuple[complex, float]:
    """Monte-Carlo oracle for the Gaussian pairing.

    Draws z from the complex Gaussian whose density matches the weight
    exp(-|z|^2)/pi^2 (every real component independent N(0, 1/2)) and
    averages conj(p(z)) q(z).  Sampling is chunked (4096 points) with a
    counter-based generator keyed per chunk, so the estimate is
    bit-identical for a fixed seed no matter how chunks would be
    scheduled.  Returns (estimate, standard error of the mean); the
    standard error combines both real and imaginary scatter.
    """
    samples = int(samples)
    if samples < 1:
        raise ValueError("samples must be >= 1")
    sum_f = 0.0 + 0.0j
    sum_abs2 = 0.0
    done = 0
    chunk_index = 0
    key = int(seed) % (1 << 128)
    while done < samples:
        count = min(_MC_CHUNK, samples - done)
        bitgen = np.random.Philox(key=key, counter=chunk_index << 64)
        rng = np.random.Generator(bitgen)
        xy = rng.normal(0.0, math.sqrt(0.5), size=(count, 4))
        z0 = xy[:, 0] + 1j * xy[:, 1]
        z1 = xy[:, 2] + 1j * xy[:, 3]
        vals = np.conj(eval_batch(p, z0, z1)) * eval_batch(q, z0, z1)
        sum_f += complex(vals.sum())
        sum_abs2 += float(np.abs(vals).__pow__(2).sum())
        done += count
        chunk_index += 1
    mean = sum_f / samples
    if samples == 1:
        return mean, 0.0
    var = max(sum_abs2 - samples * abs(mean) ** 2, 0.0) / (samples - 1)
    return mean, math.sqrt(var / samples)


def apply_annihilation(slot: int, p: HoloPoly) -> HoloPoly:
    """Lowering operator a^slot (the derivative d/dz_slot in the psi basis).

    a^0 sends (n, m) -> (n-1, m) with factor sqrt(n-m);
    a^1 sends (n, m) -> (n-1, m-1) with factor sqrt(m).
    """
    if slot not in (0, 1):
        raise ValueError("slot must be 0 or 1")
    out: Dict[Bidegree, complex] = {}
    for (n, m), a in p.coeffs.items():
        if slot == 0:
            if n - m >= 1:
                _accumulate(out, Bidegree(n - 1, m), a * _sqrt_fact_ratio(n - m))
        else:
            if m >= 1:
                _accumulate(out, Bidegree(n - 1, m - 1), a * _sqrt_fact_ratio(m))
    return HoloPoly(out, nmax=p.nmax)


def apply_creation(slot: int, p: HoloPoly) -> HoloPoly:
    """Raising operator a†_slot (multiplication by z_slot in the psi basis).

    Refuses to push amplitude past the truncation grade: raising a state
    with support at grade nmax raises TruncationOverflowError instead of
    silently dropping weight.
    """
    if slot not in (0, 1):
        raise ValueError("slot must be 0 or 1")
    top = top_grade(p)
    if top >= p.nmax:
        raise TruncationOverflowError(
            f"creation on grade {top} would exceed nmax={p.nmax}"
        )
    out: Dict[Bidegree, complex] = {}
    for (n, m), a in p.coeffs.items():
        if slot == 0:
            _accumulate(out, Bidegree(n + 1, m), a * _sqrt_fact_ratio(n - m + 1))
        else:
            _accumulate(out, Bidegree(n + 1, m + 1), a * _sqrt_fact_ratio(m + 1))
    return HoloPoly(out, nmax=p.nmax)


def _sqrt_fact_ratio(k: int) -> float:
    # sqrt(k) as used by the ladder factors; kept as a helper so the
    # factor convention is defined in exactly one place.
    return math.sqrt(k)


def _accumulate(d: Dict[Bidegree, complex], key: Bidegree, val: complex) -> None:
    d[key] = d.get(key, 0.0 + 0.0j) + val


def number_apply(p: HoloPoly) -> HoloPoly:
    """Number operator: scales every grade-n amplitude by n."""
    return HoloPoly(
        {deg: a * deg.n for deg, a in p.coeffs.items()},
        nmax=p.nmax,
    )


def hamiltonian_apply(s: SectionState) -> SectionState:
    """Energy operator on sections: grade-n amplitude scaled by hbar*omega*(n+1)."""
    hw = s.consts.hbar * s.consts.omega
    scaled = HoloPoly(
        {deg: a * (hw * (deg.n + 1)) for deg, a in s.poly.coeffs.items()},
        nmax=s.poly.nmax,
    )
    return SectionState(scaled, theta=s.theta, consts=s.consts)


def grade_project(p: HoloPoly, n: int) -> HoloPoly:
    """Keep only the grade-n amplitudes."""
    if n < 0:
        raise ValueError("grade must be non-negative")
    return HoloPoly(
        {deg: a for deg, a in p.coeffs.items() if deg.n == n},
        nmax=p.nmax,
    )


def grades(p: HoloPoly) -> Tuple[int, ...]:
    """Sorted tuple of occupied grades."""
    return tuple(sorted({deg.n for deg in p.coeffs}))


def top_grade(p: HoloPoly) -> int:
    """Highest occupied grade, or -1 for the zero polynomial."""
    return max((deg.n for deg in p.coeffs), default=-1)


def poly_add(p: HoloPoly, q: HoloPoly) -> HoloPoly:
    out = dict(p.coeffs)
    for deg, a in q.coeffs.items():
        _accumulate(out, deg, a)
    return HoloPoly(out, nmax=max(p.nmax, q.nmax))


def poly_scale(c: complex, p: HoloPoly) -> HoloPoly:
    return HoloPoly({deg: c * a for deg, a in p.coeffs.items()}, nmax=p.nmax)
