"""Chart geometry for the oscillator's phase sphere and its quotients.

C^2 minus the origin fibers over the projective line through the Hopf
map; U0 = {z0 != 0} and U1 = {z1 != 0} are the two affine charts, and a
point is always reported in the chart whose defining component is the
larger one, so the coordinate has modulus <= 1.

The cyclic group Z_n acts by the diagonal phase zeta = exp(2*pi*i/n).
Quotient data comes in two flavors here:

  * LensPoint: base chart coordinate plus one fiber phase, the unit-level
    quotient (a lens space; `orientation` picks the sign convention of the
    fiber twist).
  * OrbifoldRep: a canonical point of C^2 representing a class of the flat
    quotient C^2/Z_n, produced by absorbing a nonzero grade-n section
    value into the coordinates and then rotating into a fixed phase
    sector.

The canonical sector is keyed to the argument of the chart-defining
component, which every group element shifts by exactly 2*pi/n, so each
orbit hits the sector once.  (Symmetric combinations such as the average
of the two angles do not shift uniformly when one angle wraps; that rule
would leave some orbits with no representative and others with two.)
"""

import cmath
import math
from dataclasses import dataclass
from typing import Tuple

from .errors import ChartPoleError, NearOriginError, ZeroSectionError
from .fock import PhasePoint

__all__ = [
    "ChartPoint",
    "Angles",
    "LensPoint",
    "OrbifoldRep",
    "BlowupPoint",
    "hopf_project",
    "chart_transition",
    "angles",
    "zn_element",
    "zn_apply",
    "zn_canonicalize",
    "gauge_fix_fiber",
    "cocycle_residual",
    "lens_point",
    "to_orbifold",
    "from_orbifold",
    "on_point_equal",
    "blowup_lift",
    "blowdown",
]

_TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class ChartPoint:
    """Affine coordinate on the projective line: chart 0 holds z1/z0, chart 1 holds z0/z1."""

    chart: int
    coord: complex

    def __post_init__(self):
        if self.chart not in (0, 1):
            raise ValueError("chart must be 0 or 1")


@dataclass(frozen=True)
class Angles:
    """Component phases phi_alpha = arg(z_alpha) in [0, 2*pi).

    A vanishing component has no phase; its slot reads 0.0 and the
    matching defined flag is False.
    """

    phi0: float
    phi1: float
    defined0: bool = True
    defined1: bool = True


@dataclass(frozen=True)
class LensPoint:
    """Base chart coordinate plus fiber phase on the Z_n quotient of the unit level."""

    base: ChartPoint
    fiber_phase: float
    n: int
    orientation: int = 1


@dataclass(frozen=True)
class OrbifoldRep:
    """Canonical C^2 representative of a Z_n orbit (phase-sector gauge)."""

    ztilde: PhasePoint
    n: int


@dataclass(frozen=True)
class BlowupPoint:
    """Point of the blown-up plane: a direction plus a scale along it."""

    direction: ChartPoint
    scale: complex


def _near_origin(z: PhasePoint) -> bool:
    r = z.rho
    return r <= max(1e-300, 1e-12 * (1.0 + r))


def _chart_of(z: PhasePoint) -> int:
    return 0 if abs(z.z0) >= abs(z.z1) else 1


def hopf_project(z: PhasePoint) -> ChartPoint:
    """Projective point below z, in the chart of the larger component."""
    if _near_origin(z):
        raise NearOriginError("no projective point under the origin")
    if _chart_of(z) == 0:
        return ChartPoint(0, z.z1 / z.z0)
    return ChartPoint(1, z.z0 / z.z1)


def chart_transition(cp: ChartPoint) -> ChartPoint:
    """Same projective point in the other chart (coordinate inverts)."""
    if cp.coord == 0:
        raise ChartPoleError("coordinate 0 has no image in the other chart")
    return ChartPoint(1 - cp.chart, 1.0 / cp.coord)


def angles(z: PhasePoint) -> Angles:
    d0 = z.z0 != 0
    d1 = z.z1 != 0
    return Angles(
        phi0=(cmath.phase(z.z0) % _TWO_PI) if d0 else 0.0,
        phi1=(cmath.phase(z.z1) % _TWO_PI) if d1 else 0.0,
        defined0=d0,
        defined1=d1,
    )


def zn_element(n: int, l: int) -> complex:
    """zeta^l for zeta = exp(2*pi*i/n); l is reduced mod n."""
    if n < 1:
        raise ValueError("n must be >= 1")
    k = l % n
    ang = _TWO_PI * k / n
    return complex(math.cos(ang), math.sin(ang))


def zn_apply(n: int, l: int, z: PhasePoint) -> PhasePoint:
    g = zn_element(n, l)
    return PhasePoint(g * z.z0, g * z.z1)


def zn_canonicalize(z: PhasePoint, n: int) -> Tuple[PhasePoint, int]:
    """Rotate z into the canonical phase sector; returns (representative, l).

    The sector is [0, 2*pi/n) for the argument of the chart-defining
    component (z0 on ties).  That argument shifts by exactly 2*pi*l/n
    under zeta^l, and the component choice is orbit-invariant, so l is
    unique.  The origin is a fixed point and comes back unchanged with
    l = 0.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if z.z0 == 0 and z.z1 == 0:
        return z, 0
    comp = z.z0 if abs(z.z0) >= abs(z.z1) else z.z1
    phi = cmath.phase(comp) % _TWO_PI
    # Want (phi + 2*pi*l/n) mod 2*pi in [0, 2*pi/n): with s = phi*n/(2*pi)
    # that reads (s + l) mod n in [0, 1), so l = -floor(s) mod n.
    s = phi * n / _TWO_PI
    l = (-math.floor(s)) % n
    return zn_apply(n, l, z), int(l)


def gauge_fix_fiber(
    z: PhasePoint,
    psi_n: complex,
    n: int,
    mode: str = "holomorphic",
    chart: int | None = None,
) -> complex:
    """Trivialized fiber coordinate of a grade-n value over the given chart.

    mode "holomorphic": psi_n / z_c^n with z_c the chart component; the
    chart-to-chart mismatch is the transition cocycle (z_other/z_c)^n.
    mode "unitary": psi_n / rho^n times exp(-i*n*phi_c); modulus is then
    chart-independent and only the phase carries the cocycle.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    c = _chart_of(z) if chart is None else chart
    if c not in (0, 1):
        raise ValueError("chart must be 0 or 1")
    comp = z.z0 if c == 0 else z.z1
    if comp == 0:
        raise ChartPoleError(f"chart {c} is singular where its component vanishes")
    if mode == "holomorphic":
        return psi_n / comp**n
    if mode == "unitary":
        if _near_origin(z):
            raise NearOriginError("unitary gauge needs rho > 0")
        phase = cmath.phase(comp)
        return psi_n / z.rho**n * cmath.exp(-1j * n * phase)
    raise ValueError(f"unknown gauge mode {mode!r}")


def cocycle_residual(z: PhasePoint, psi_n: complex, n: int, mode: str = "holomorphic") -> float:
    """Relative mismatch of the two chart trivializations after the transition.

    Both components must be nonzero (the charts only overlap there).  For
    exact arithmetic the residual is zero; in floats it sits at rounding
    level, and that scale-free number is what comes back.
    """
    if z.z0 == 0 or z.z1 == 0:
        raise ChartPoleError("cocycle comparison needs both components nonzero")
    w0 = gauge_fix_fiber(z, psi_n, n, mode=mode, chart=0)
    w1 = gauge_fix_fiber(z, psi_n, n, mode=mode, chart=1)
    if mode == "holomorphic":
        t01 = (z.z1 / z.z0) ** n
    else:
        a = angles(z)
        t01 = cmath.exp(1j * n * (a.phi1 - a.phi0))
    num = abs(w0 - t01 * w1)
    den = max(abs(w0), abs(w1), 1e-300)
    return num / den


def lens_point(z: PhasePoint, psi_n: complex, n: int, orientation: int = 1) -> LensPoint:
    """Quotient datum (base point, single fiber phase) for a nonzero grade-n value.

    The fiber phase is arg(psi_n) minus orientation * n times the chart
    angle, wrapped to [0, 2*pi).  It is unchanged under the diagonal Z_n
    phase action, so equal orbits give equal LensPoints up to rounding.
    """
    if orientation not in (1, -1):
        raise ValueError("orientation must be +1 or -1")
    if psi_n == 0:
        raise ZeroSectionError("fiber phase undefined on a zero value")
    base = hopf_project(z)
    comp = z.z0 if base.chart == 0 else z.z1
    phase = cmath.phase(psi_n) - orientation * n * cmath.phase(comp)
    return LensPoint(base=base, fiber_phase=phase % _TWO_PI, n=n, orientation=orientation)


def to_orbifold(z: PhasePoint, psi_n: complex, n: int) -> OrbifoldRep:
    """Canonical flat-quotient representative of the pair (z, psi_n).

    The n-th root w = exp(-log(psi_n)/n) (principal branch) rescales z so
    the section value becomes exactly 1; the rescaled point is then
    rotated into the canonical phase sector.  Requires psi_n != 0 and a
    point away from the origin.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if psi_n == 0:
        raise ZeroSectionError("cannot absorb a zero value")
    if _near_origin(z):
        raise NearOriginError("orbifold representative needs rho > 0")
    w = cmath.exp(-cmath.log(psi_n) / n)
    ztilde, _ = zn_canonicalize(PhasePoint(w * z.z0, w * z.z1), n)
    return OrbifoldRep(ztilde=ztilde, n=n)


def from_orbifold(rep: OrbifoldRep) -> Tuple[PhasePoint, complex]:
    """The pair (point, grade-n value) encoded by a representative: value 1."""
    return rep.ztilde, 1.0 + 0.0j


def on_point_equal(
    a: Tuple[PhasePoint, complex],
    b: Tuple[PhasePoint, complex],
    n: int,
    tol: float = 1e-10,
) -> bool:
    """Whether two (point, grade-n value) pairs give the same quotient point.

    Compares the projective coordinate (in a's chart) and the holomorphic
    gauge fiber, both to relative tolerance; each is invariant under
    z -> mu z, psi -> mu^n psi, so the test is scale and gauge blind.
    """
    za, pa = a
    zb, pb = b
    ca = hopf_project(za)
    if _near_origin(zb):
        raise NearOriginError("no projective point under the origin")
    comp_b = zb.z0 if ca.chart == 0 else zb.z1
    if comp_b == 0:
        return False
    coord_b = (zb.z1 / zb.z0) if ca.chart == 0 else (zb.z0 / zb.z1)
    if abs(ca.coord - coord_b) > tol * max(1.0, abs(ca.coord)):
        return False
    wa = gauge_fix_fiber(za, pa, n, mode="holomorphic", chart=ca.chart)
    wb = gauge_fix_fiber(zb, pb, n, mode="holomorphic", chart=ca.chart)
    return abs(wa - wb) <= tol * max(abs(wa), abs(wb), 1.0)


def blowup_lift(z: PhasePoint) -> BlowupPoint:
    """Lift to the blown-up plane: remembered direction plus scale along it."""
    direction = hopf_project(z)
    scale = z.z0 if direction.chart == 0 else z.z1
    return BlowupPoint(direction=direction, scale=scale)


def blowdown(bp: BlowupPoint) -> PhasePoint:
    """Collapse a blowup point back to C^2 (the whole exceptional set hits 0)."""
    s = bp.scale
    if bp.direction.chart == 0:
        return PhasePoint(s, s * bp.direction.coord)
    return PhasePoint(s * bp.direction.coord, s)
