"""Star divisors of single-grade states.

A grade-n polynomial restricted to chart 0 (set z0 = 1, coordinate
u = z1/z0) is an ordinary polynomial of degree <= n; its roots, plus
(n - degree) points at u = infinity, form the state's divisor: n points
of the projective line counted with multiplicity.  The basis state
psi_nm factors exactly, giving m stars at the chart-0 origin and n - m
at the opposite pole, and that pattern is what `equivariant_divisor`
writes down directly.

Root finding is simultaneous-iteration (Aberth) on the structurally
reduced polynomial: exact zero leading coefficients are factored out
first (roots exactly at 0) and trailing coefficients at rounding level
relative to the largest are treated as absent (roots exactly at
infinity), so the solver only ever sees a polynomial with a well-scaled
nonzero constant term and leading coefficient.

Multiplicities above one are recovered by clustering in the chordal
metric.  A genuinely multiple root of a generic polynomial scatters
numerically at radius ~eps_machine^(1/k), far above the default
cluster radius; callers that expect k-fold stars away from the poles
should pass a RootConfig with cluster_eps sized to that scatter.
"""

import math
from dataclasses import dataclass
from typing import List, Sequence, Tuple

import numpy as np

from . import backend
from .errors import MixedGradeError, NonConvergenceError, ZeroSectionError
from .fock import HoloPoly, _sqrt_fact
from .geometry import ChartPoint

__all__ = [
    "RootConfig",
    "Divisor",
    "local_coeffs",
    "from_local_coeffs",
    "majorana_stars",
    "divisor_degree",
    "equivariant_divisor",
    "divisor_match",
    "chordal_distance",
    "sphere_coords",
]

_STRIP_REL = 1e-14


@dataclass(frozen=True)
class RootConfig:
    """Solver knobs: iteration cap, step tolerance, and cluster radius."""

    max_iters: int = 200
    tol: float = 1e-12
    cluster_eps: float = 1e-7


@dataclass(frozen=True)
class Divisor:
    """Weighted points on the projective line; degree counts multiplicity."""

    points: Tuple[Tuple[ChartPoint, int], ...]
    grade: int


def local_coeffs(p: HoloPoly) -> List[complex]:
    """Chart-0 polynomial coefficients [c_0, ..., c_n] of a single-grade state.

    c_m = amplitude(n, m) / sqrt((n-m)! m!), so sum_m c_m u^m is the
    restriction of the grade-n polynomial to z0 = 1, z1 = u.
    """
    if not p.coeffs:
        raise ZeroSectionError("zero state has no divisor data")
    ns = {deg.n for deg in p.coeffs}
    if len(ns) != 1:
        raise MixedGradeError(f"state occupies grades {sorted(ns)}, need exactly one")
    n = ns.pop()
    out = [0.0 + 0.0j] * (n + 1)
    for (_, m), a in p.coeffs.items():
        out[m] = a / (_sqrt_fact(n - m) * _sqrt_fact(m))
    return out


def from_local_coeffs(coeffs: Sequence[complex], nmax: int | None = None) -> HoloPoly:
    """Inverse of local_coeffs: chart-0 coefficients back to amplitudes."""
    if len(coeffs) == 0:
        raise ValueError("need at least the constant coefficient")
    n = len(coeffs) - 1
    amps = {}
    for m, c in enumerate(coeffs):
        if c != 0:
            amps[(n, m)] = complex(c) * _sqrt_fact(n - m) * _sqrt_fact(m)
    return HoloPoly(amps, nmax=n if nmax is None else nmax)


def _canonical_point(u: complex) -> ChartPoint:
    if abs(u) <= 1.0:
        return ChartPoint(0, u)
    return ChartPoint(1, 1.0 / u)


def _homogeneous(cp: ChartPoint) -> Tuple[complex, complex]:
    if cp.chart == 0:
        h0, h1 = 1.0 + 0.0j, cp.coord
    else:
        h0, h1 = cp.coord, 1.0 + 0.0j
    s = math.sqrt(abs(h0) ** 2 + abs(h1) ** 2)
    return h0 / s, h1 / s


def chordal_distance(a: ChartPoint, b: ChartPoint) -> float:
    """Chordal metric on the projective line, range [0, 2] (unit-sphere chord)."""
    a0, a1 = _homogeneous(a)
    b0, b1 = _homogeneous(b)
    return 2.0 * abs(a0 * b1 - a1 * b0)


def sphere_coords(cp: ChartPoint) -> Tuple[float, float, float]:
    """Unit-sphere image of a projective point: chart-0 origin at the north pole."""
    h0, h1 = _homogeneous(cp)
    cross = h0.conjugate() * h1
    return (
        2.0 * cross.real,
        2.0 * cross.imag,
        abs(h0) ** 2 - abs(h1) ** 2,
    )


def _aberth_roots(coeffs: Sequence[complex], config: RootConfig) -> np.ndarray:
    c = np.asarray(coeffs, dtype=np.complex128)
    d = len(c) - 1
    if d < 1:
        return np.empty(0, dtype=np.complex128)
    if d == 1:
        return np.array([-c[0] / c[1]], dtype=np.complex128)
    # Initial guesses on a circle of the geometric-mean root radius, with a
    # fixed angular offset so symmetric configurations don't trap the
    # iteration on their symmetry axes.  The constant term is nonzero here
    # (zero roots were factored out), so the radius is well-defined.
    r = (abs(c[0]) / abs(c[d])) ** (1.0 / d)
    ang = 2.0 * np.pi * np.arange(d) / d + 0.4
    x = r * np.exp(1j * ang)
    x = np.ascontiguousarray(x, dtype=np.complex128)
    iters = backend.aberth(c, x, config.max_iters, config.tol)
    if iters < 0:
        raise NonConvergenceError(
            f"root iteration failed to settle within {config.max_iters} sweeps",
            iterations=config.max_iters,
        )
    return x


def majorana_stars(p: HoloPoly, config: RootConfig = RootConfig()) -> Divisor:
    """Divisor of a single-grade state: n points with multiplicity.

    Exact structure first (zero roots from vanishing low coefficients,
    infinity roots from the degree deficit), then Aberth for the rest,
    then chordal clustering at config.cluster_eps to merge near-coincident
    roots into one weighted star.
    """
    c = local_coeffs(p)
    n = len(c) - 1
    scale = max(abs(a) for a in c)
    d_eff = 0
    for k in range(n, -1, -1):
        if abs(c[k]) > _STRIP_REL * scale:
            d_eff = k
            break
    inf_count = n - d_eff
    k0 = 0
    while k0 < d_eff and c[k0] == 0:
        k0 += 1
    zero_count = k0
    roots = _aberth_roots(c[k0 : d_eff + 1], config)

    clusters: List[Tuple[ChartPoint, int]] = []
    order = sorted(range(len(roots)), key=lambda i: (roots[i].real, roots[i].imag))
    for i in order:
        cp = _canonical_point(complex(roots[i]))
        for j, (center, mult) in enumerate(clusters):
            if chordal_distance(cp, center) <= config.cluster_eps:
                clusters[j] = (center, mult + 1)
                break
        else:
            clusters.append((cp, 1))
    if zero_count:
        origin = ChartPoint(0, 0.0 + 0.0j)
        for j, (center, mult) in enumerate(clusters):
            if chordal_distance(origin, center) <= config.cluster_eps:
                clusters[j] = (origin, mult + zero_count)
                break
        else:
            clusters.append((origin, zero_count))
    if inf_count:
        pole = ChartPoint(1, 0.0 + 0.0j)
        for j, (center, mult) in enumerate(clusters):
            if chordal_distance(pole, center) <= config.cluster_eps:
                clusters[j] = (pole, mult + inf_count)
                break
        else:
            clusters.append((pole, inf_count))
    clusters.sort(key=lambda cm: (cm[0].chart, cm[0].coord.real, cm[0].coord.imag))
    return Divisor(points=tuple(clusters), grade=n)


def divisor_degree(d: Divisor) -> int:
    """Total multiplicity; equals the grade for any well-formed divisor."""
    return sum(mult for _, mult in d.points)


def equivariant_divisor(n: int, m: int) -> Divisor:
    """Divisor of psi_nm written down exactly: m at the chart-0 origin, n-m opposite."""
    if not 0 <= m <= n:
        raise ValueError(f"need 0 <= m <= n, got (n={n}, m={m})")
    pts: List[Tuple[ChartPoint, int]] = []
    if m > 0:
        pts.append((ChartPoint(0, 0.0 + 0.0j), m))
    if n - m > 0:
        pts.append((ChartPoint(1, 0.0 + 0.0j), n - m))
    return Divisor(points=tuple(pts), grade=n)


def divisor_match(a: Divisor, b: Divisor, tol: float = 1e-8) -> bool:
    """Whether two divisors agree as weighted point sets within chordal tol.

    Multiplicities are expanded and matched bipartitely (edge = distance
    within tol), so a star of multiplicity 2 on one side can match two
    nearby simple stars on the other.
    """
    left: List[ChartPoint] = []
    for cp, mult in a.points:
        left.extend([cp] * mult)
    right: List[ChartPoint] = []
    for cp, mult in b.points:
        right.extend([cp] * mult)
    if len(left) != len(right):
        return False
    k = len(left)
    if k == 0:
        return True
    adj = [
        [j for j in range(k) if chordal_distance(left[i], right[j]) <= tol]
        for i in range(k)
    ]
    match_of_right = [-1] * k

    def try_assign(i: int, seen: List[bool]) -> bool:
        for j in adj[i]:
            if not seen[j]:
                seen[j] = True
                if match_of_right[j] == -1 or try_assign(match_of_right[j], seen):
                    match_of_right[j] = i
                    return True
        return False

    for i in range(k):
        if not try_assign(i, [False] * k):
            return False
    return True
