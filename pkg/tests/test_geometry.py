import cmath
import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

import fockbundle as fb
from conftest import cnormal, random_point

TWO_PI = 2.0 * math.pi

finite = st.floats(min_value=-3, max_value=3, allow_nan=False)


def test_hopf_chart_selection():
    cp = fb.hopf_project(fb.PhasePoint(2.0, 1.0))
    assert cp.chart == 0
    assert abs(cp.coord - 0.5) < 1e-15
    cp = fb.hopf_project(fb.PhasePoint(1.0j, -2.0))
    assert cp.chart == 1
    assert abs(cp.coord - (-0.5j)) < 1e-15
    # Equal moduli break the tie toward chart 0.
    assert fb.hopf_project(fb.PhasePoint(1.0, 1.0j)).chart == 0


def test_hopf_near_origin_error():
    with pytest.raises(fb.NearOriginError):
        fb.hopf_project(fb.PhasePoint(0.0, 0.0))
    with pytest.raises(fb.NearOriginError):
        fb.hopf_project(fb.PhasePoint(1e-15, -1e-16j))


def test_chart_transition_inversion_and_pole():
    cp = fb.ChartPoint(0, 0.25 - 0.5j)
    other = fb.chart_transition(cp)
    assert other.chart == 1
    assert abs(other.coord - 1.0 / (0.25 - 0.5j)) < 1e-15
    back = fb.chart_transition(other)
    assert back.chart == 0
    assert abs(back.coord - cp.coord) < 1e-15
    with pytest.raises(fb.ChartPoleError):
        fb.chart_transition(fb.ChartPoint(1, 0.0))


def test_angles_ranges_and_flags():
    a = fb.angles(fb.PhasePoint(-1.0, 1.0j))
    assert abs(a.phi0 - math.pi) < 1e-15
    assert abs(a.phi1 - math.pi / 2) < 1e-15
    assert a.defined0 and a.defined1
    b = fb.angles(fb.PhasePoint(0.0, -2.0j))
    assert not b.defined0
    assert b.phi0 == 0.0
    assert abs(b.phi1 - 1.5 * math.pi) < 1e-15


def test_zn_element_values():
    assert abs(fb.zn_element(4, 1) - 1.0j) < 1e-15
    assert abs(fb.zn_element(4, 5) - 1.0j) < 1e-15
    assert abs(fb.zn_element(2, 1) + 1.0) < 1e-15
    assert fb.zn_element(1, 0) == 1.0
    with pytest.raises(ValueError):
        fb.zn_element(0, 1)


def test_zn_canonicalize_worked_example():
    # Both components at angle 3*pi/2, n = 2: one rotation by pi lands the
    # leading angle at pi/2, inside [0, pi).
    w = cmath.exp(1.5j * math.pi)
    zc, l = fb.zn_canonicalize(fb.PhasePoint(w, w), 2)
    assert l == 1
    assert abs((cmath.phase(zc.z0) % TWO_PI) - math.pi / 2) < 1e-12


def test_zn_canonicalize_sector_and_uniqueness(rng):
    for _ in range(300):
        z = random_point(rng)
        if z.rho < 1e-3:
            continue
        n = int(rng.integers(1, 9))
        zc, l = fb.zn_canonicalize(z, n)
        comp = zc.z0 if abs(zc.z0) >= abs(zc.z1) else zc.z1
        phi = cmath.phase(comp) % TWO_PI
        assert phi < TWO_PI / n + 1e-12
        # Orbit invariance: every group translate canonicalizes to the
        # same representative.
        for k in range(n):
            zk = fb.zn_apply(n, k, z)
            zck, _ = fb.zn_canonicalize(zk, n)
            assert abs(zck.z0 - zc.z0) <= 1e-12 * max(1.0, z.rho)
            assert abs(zck.z1 - zc.z1) <= 1e-12 * max(1.0, z.rho)


def test_zn_canonicalize_origin_fixed():
    z, l = fb.zn_canonicalize(fb.PhasePoint(0.0, 0.0), 5)
    assert l == 0
    assert z.z0 == 0 and z.z1 == 0


def test_gauge_fiber_holomorphic_values():
    z = fb.PhasePoint(2.0, 1.0j)
    psi = 3.0 + 1.0j
    w0 = fb.gauge_fix_fiber(z, psi, 2, mode="holomorphic", chart=0)
    assert abs(w0 - psi / 4.0) < 1e-15
    w1 = fb.gauge_fix_fiber(z, psi, 2, mode="holomorphic", chart=1)
    assert abs(w1 - psi / (1.0j) ** 2) < 1e-15
    with pytest.raises(fb.ChartPoleError):
        fb.gauge_fix_fiber(fb.PhasePoint(0.0, 1.0), psi, 2, chart=0)


def test_gauge_fiber_unitary_modulus_chart_free(rng):
    for _ in range(50):
        z = random_point(rng)
        if abs(z.z0) < 1e-3 or abs(z.z1) < 1e-3:
            continue
        psi = complex(cnormal(rng))
        n = int(rng.integers(0, 8))
        w0 = fb.gauge_fix_fiber(z, psi, n, mode="unitary", chart=0)
        w1 = fb.gauge_fix_fiber(z, psi, n, mode="unitary", chart=1)
        assert abs(abs(w0) - abs(w1)) <= 1e-12 * max(abs(w0), 1e-30)


def test_cocycle_residual_rounding_level(rng):
    for _ in range(200):
        z = random_point(rng)
        if abs(z.z0) < 1e-3 or abs(z.z1) < 1e-3:
            continue
        psi = complex(cnormal(rng))
        n = int(rng.integers(0, 11))
        assert fb.cocycle_residual(z, psi, n, mode="holomorphic") <= 1e-12
        assert fb.cocycle_residual(z, psi, n, mode="unitary") <= 1e-12


def test_cocycle_residual_scale_free():
    z = fb.PhasePoint(1.3 - 0.2j, 0.4 + 0.9j)
    r_small = fb.cocycle_residual(z, 1e-18, 6)
    r_big = fb.cocycle_residual(z, 1e18, 6)
    assert r_small <= 1e-12 and r_big <= 1e-12
    with pytest.raises(fb.ChartPoleError):
        fb.cocycle_residual(fb.PhasePoint(0.0, 1.0), 1.0, 3)


def test_lens_point_invariance_under_group(rng):
    for _ in range(100):
        z = random_point(rng)
        if z.rho < 1e-3:
            continue
        psi = complex(cnormal(rng))
        if psi == 0:
            continue
        n = int(rng.integers(1, 9))
        lp = fb.lens_point(z, psi, n)
        for k in range(1, n):
            lp2 = fb.lens_point(fb.zn_apply(n, k, z), psi, n)
            assert lp2.base.chart == lp.base.chart
            assert abs(lp2.base.coord - lp.base.coord) <= 1e-12 * (1 + abs(lp.base.coord))
            d = abs(lp2.fiber_phase - lp.fiber_phase) % TWO_PI
            assert min(d, TWO_PI - d) <= 1e-10


def test_lens_point_orientation_and_errors():
    z = fb.PhasePoint(1.0, 0.5j)
    lp_plus = fb.lens_point(z, 2.0j, 3, orientation=1)
    lp_minus = fb.lens_point(z, 2.0j, 3, orientation=-1)
    assert lp_plus.orientation == 1 and lp_minus.orientation == -1
    # Opposite twist: the two phases sum to 2*arg(psi) mod 2*pi.
    target = (2.0 * cmath.phase(2.0j)) % TWO_PI
    got = (lp_plus.fiber_phase + lp_minus.fiber_phase) % TWO_PI
    d = abs(got - target) % TWO_PI
    assert min(d, TWO_PI - d) <= 1e-12
    with pytest.raises(fb.ZeroSectionError):
        fb.lens_point(z, 0.0, 3)
    with pytest.raises(ValueError):
        fb.lens_point(z, 1.0, 3, orientation=2)


def test_orbifold_round_trip_and_gauge_invariance(rng):
    for _ in range(200):
        z = random_point(rng)
        psi = complex(cnormal(rng))
        if z.rho < 1e-3 or abs(psi) < 1e-6:
            continue
        n = int(rng.integers(1, 7))
        rep = fb.to_orbifold(z, psi, n)
        assert rep.n == n
        back = fb.from_orbifold(rep)
        assert back[1] == 1.0
        assert fb.on_point_equal((z, psi), back, n, tol=1e-10)
        lam = 10.0 ** float(rng.uniform(-3, 3)) * cmath.exp(1j * float(rng.uniform(0, TWO_PI)))
        rep2 = fb.to_orbifold(fb.PhasePoint(lam * z.z0, lam * z.z1), (lam**n) * psi, n)
        scale = max(rep.ztilde.rho, 1e-30)
        assert abs(rep.ztilde.z0 - rep2.ztilde.z0) <= 1e-10 * scale
        assert abs(rep.ztilde.z1 - rep2.ztilde.z1) <= 1e-10 * scale


def test_orbifold_rep_is_canonical_and_unit_value(rng):
    z = fb.PhasePoint(0.8 - 0.1j, 1.1 + 0.4j)
    psi = -2.5 + 1.25j
    rep = fb.to_orbifold(z, psi, 4)
    # The representative itself canonicalizes to itself.
    zc, l = fb.zn_canonicalize(rep.ztilde, 4)
    assert l == 0
    assert abs(zc.z0 - rep.ztilde.z0) < 1e-15


def test_orbifold_errors():
    with pytest.raises(fb.ZeroSectionError):
        fb.to_orbifold(fb.PhasePoint(1.0, 1.0), 0.0, 3)
    with pytest.raises(fb.NearOriginError):
        fb.to_orbifold(fb.PhasePoint(0.0, 0.0), 1.0, 3)
    with pytest.raises(ValueError):
        fb.to_orbifold(fb.PhasePoint(1.0, 1.0), 1.0, 0)


def test_on_point_equal_detects_mismatch():
    z = fb.PhasePoint(1.0, 0.3j)
    psi = 0.7 + 0.1j
    assert not fb.on_point_equal((z, psi), (z, 2.0 * psi), 3)
    other = fb.PhasePoint(1.0, 0.31j)
    assert not fb.on_point_equal((z, psi), (other, psi), 3)
    # Same orbit data scaled consistently stays equal.
    lam = 2.0 * cmath.exp(0.3j)
    assert fb.on_point_equal((z, psi), (fb.PhasePoint(lam, lam * 0.3j), lam**3 * psi), 3)


@given(x0=finite, y0=finite, x1=finite, y1=finite)
def test_blowup_round_trip_property(x0, y0, x1, y1):
    z = fb.PhasePoint(complex(x0, y0), complex(x1, y1))
    if z.rho < 1e-6:
        return
    back = fb.blowdown(fb.blowup_lift(z))
    assert abs(back.z0 - z.z0) <= 1e-12 * max(1.0, z.rho)
    assert abs(back.z1 - z.z1) <= 1e-12 * max(1.0, z.rho)


def test_blowdown_collapses_zero_scale():
    for coord in (0.0, 0.5 + 0.25j, -1.0j):
        for chart in (0, 1):
            z = fb.blowdown(fb.BlowupPoint(fb.ChartPoint(chart, coord), 0.0))
            assert z.z0 == 0.0 and z.z1 == 0.0


def test_blowup_lift_needs_direction():
    with pytest.raises(fb.NearOriginError):
        fb.blowup_lift(fb.PhasePoint(0.0, 0.0))
