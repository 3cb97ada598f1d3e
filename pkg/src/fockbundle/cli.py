"""Command line front end.

Subcommands: eval, orbit, stars, coherent, check, integrate.  Output is
CSV (header row always present) or JSON ({meta, data}); floats are
serialized with round-trip precision, and identical invocations produce
byte-identical output.

Exit codes: 0 success, 2 usage or parse errors, 3 domain errors
(near-origin, zero section, chart pole, truncation overflow), 4
numerical non-convergence.  A failed check run exits 1.

State specs: terms "nm:<n>,<m>[,re,im]" joined by "+", amplitude
defaulting to 1, or "grade:<n>:c0,c1,...,cn" giving the chart-0 local
coefficients (python complex literals) of a single grade-n state.
Time grids: "start:stop:count" (inclusive, evenly spaced) or a comma
list. Points and displacement labels: "re0,im0,re1,im1".
"""

import argparse
import cmath
import io
import json
import math
import sys
from typing import List, Optional, Sequence

from . import checks
from . import coherent as coh
from . import divisor as dv
from . import dynamics as dyn
from . import fock
from .errors import (
    ChartPoleError,
    FockBundleError,
    InvalidGridError,
    MixedGradeError,
    NearOriginError,
    NonConvergenceError,
    TruncationOverflowError,
    ZeroSectionError,
)

__all__ = ["main"]

_TWO_PI = 2.0 * math.pi


class SpecError(ValueError):
    """A state/point/grid spec failed to parse; message says where."""


def parse_state_spec(spec: str, nmax: int) -> fock.HoloPoly:
    spec = spec.strip()
    if not spec:
        raise SpecError("empty state spec")
    if spec.startswith("grade:"):
        parts = spec.split(":", 2)
        if len(parts) != 3:
            raise SpecError("grade spec needs the form grade:<n>:c0,c1,...,cn")
        try:
            n = int(parts[1])
        except ValueError:
            raise SpecError(f"grade spec: bad grade {parts[1]!r}") from None
        toks = parts[2].split(",")
        coeffs = []
        for i, tok in enumerate(toks):
            try:
                coeffs.append(complex(tok.strip()))
            except ValueError:
                raise SpecError(f"grade spec: coefficient {i} ({tok!r}) is not a complex literal") from None
        if len(coeffs) != n + 1:
            raise SpecError(f"grade spec: grade {n} needs {n + 1} coefficients, got {len(coeffs)}")
        if all(c == 0 for c in coeffs):
            raise SpecError("grade spec: all coefficients zero")
        return dv.from_local_coeffs(coeffs, nmax=max(nmax, n))
    amps = {}
    top = 0
    for i, term in enumerate(spec.split("+")):
        term = term.strip()
        if not term.startswith("nm:"):
            raise SpecError(f"term {i} ({term!r}): expected nm:<n>,<m>[,re,im]")
        fields = term[3:].split(",")
        if len(fields) not in (2, 4):
            raise SpecError(f"term {i} ({term!r}): needs 2 or 4 comma fields")
        try:
            n, m = int(fields[0]), int(fields[1])
            a = complex(float(fields[2]), float(fields[3])) if len(fields) == 4 else 1.0 + 0.0j
        except ValueError:
            raise SpecError(f"term {i} ({term!r}): bad numeric field") from None
        if not 0 <= m <= n:
            raise SpecError(f"term {i}: bidegree needs 0 <= m <= n, got ({n}, {m})")
        amps[(n, m)] = amps.get((n, m), 0.0 + 0.0j) + a
        top = max(top, n)
    return fock.HoloPoly(amps, nmax=max(nmax, top))


def parse_point(spec: str) -> fock.PhasePoint:
    toks = spec.split(",")
    if len(toks) != 4:
        raise SpecError(f"point {spec!r}: needs re0,im0,re1,im1")
    try:
        vals = [float(t) for t in toks]
    except ValueError:
        raise SpecError(f"point {spec!r}: bad float") from None
    return fock.PhasePoint(complex(vals[0], vals[1]), complex(vals[2], vals[3]))


def parse_times(spec: str) -> List[float]:
    spec = spec.strip()
    if ":" in spec:
        toks = spec.split(":")
        if len(toks) != 3:
            raise SpecError(f"time grid {spec!r}: needs start:stop:count")
        try:
            a, b, k = float(toks[0]), float(toks[1]), int(toks[2])
        except ValueError:
            raise SpecError(f"time grid {spec!r}: bad field") from None
        if k < 1:
            raise SpecError("time grid: count must be >= 1")
        if k == 1:
            return [a]
        step = (b - a) / (k - 1)
        return [a + i * step for i in range(k)]
    try:
        return [float(t) for t in spec.split(",")] if spec else []
    except ValueError:
        raise SpecError(f"time grid {spec!r}: bad float") from None


def _chart_phi(z: fock.PhasePoint) -> float:
    comp = z.z0 if abs(z.z0) >= abs(z.z1) else z.z1
    if comp == 0:
        return 0.0
    return cmath.phase(comp) % _TWO_PI


def _emit(args, meta: dict, header: Sequence[str], rows: Sequence[Sequence]) -> None:
    fmt = getattr(args, "format", "csv")
    if fmt == "json":
        obj = {"meta": meta, "data": [dict(zip(header, row)) for row in rows]}
        text = json.dumps(obj, indent=2) + "\n"
    else:
        buf = io.StringIO()
        buf.write(",".join(header) + "\n")
        for row in rows:
            buf.write(",".join(repr(v) if isinstance(v, float) else str(v) for v in row) + "\n")
        text = buf.getvalue()
    _write(args.out, text)


def _write(out: Optional[str], text: str) -> None:
    if out:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _consts(args) -> fock.PhysicalConstants:
    return fock.PhysicalConstants(hbar=args.hbar, omega=args.omega)


def cmd_eval(args) -> int:
    poly = parse_state_spec(args.state, args.nmax)
    state = fock.SectionState(poly, theta=0.0, consts=_consts(args))
    rows = []
    for spec in args.z:
        z = parse_point(spec)
        v = fock.section_eval(state, z)
        rows.append(
            [z.z0.real, z.z0.imag, z.z1.real, z.z1.imag, v.real, v.imag, abs(v) ** 2]
        )
    meta = {
        "command": "eval",
        "state": args.state,
        "omega": args.omega,
        "hbar": args.hbar,
        "nmax": args.nmax,
        "format": args.format,
    }
    header = ["re_z0", "im_z0", "re_z1", "im_z1", "re_psi", "im_psi", "abs_psi2"]
    _emit(args, meta, header, rows)
    return 0


def cmd_orbit(args) -> int:
    z = parse_point(args.z)
    times = parse_times(args.times)
    traj = dyn.sample_trajectory(
        args.kind, times, z=z, theta0=0.0, n=args.n, consts=_consts(args)
    )
    with_theta = args.kind in ("fiber", "extended")
    header = ["t", "re_z0", "im_z0", "re_z1", "im_z1", "phi"]
    if with_theta:
        header.append("theta")
    rows = []
    for smp in traj.samples:
        zt = smp.z if smp.z is not None else z
        row = [smp.t, zt.z0.real, zt.z0.imag, zt.z1.real, zt.z1.imag, _chart_phi(zt)]
        if with_theta:
            row.append(smp.theta)
        rows.append(row)
    meta = {
        "command": "orbit",
        "kind": args.kind,
        "z": args.z,
        "n": args.n,
        "times": args.times,
        "omega": args.omega,
        "hbar": args.hbar,
        "format": args.format,
    }
    _emit(args, meta, header, rows)
    return 0


def cmd_stars(args) -> int:
    poly = parse_state_spec(args.state, args.nmax)
    div = dv.majorana_stars(poly)
    rows = []
    for cp, mult in div.points:
        x, y, zc = dv.sphere_coords(cp)
        rows.append([cp.chart, cp.coord.real, cp.coord.imag, mult, x, y, zc])
    meta = {
        "command": "stars",
        "state": args.state,
        "nmax": args.nmax,
        "format": args.format,
    }
    header = ["chart", "re_coord", "im_coord", "multiplicity", "x", "y", "z"]
    _emit(args, meta, header, rows)
    return 0


def cmd_coherent(args) -> int:
    bpt = parse_point(args.b)
    b = coh.DisplacementParam(bpt.z0, bpt.z1)
    times = parse_times(args.times)
    consts = _consts(args)
    poly = coh.coherent_coeffs(b, nmax=args.nmax)
    state = fock.SectionState(poly, theta=0.0, consts=consts)
    header = ["t"] + [f"occ_{n}" for n in range(args.nmax + 1)] + ["eigen_residual"]
    rows = []
    for t in times:
        st = dyn.evolve_state(state, t)
        occ = []
        for n in range(args.nmax + 1):
            g = fock.grade_project(st.poly, n)
            occ.append(fock.inner_product(g, g).real)
        rot = cmath.exp(1j * consts.omega * t)
        b_t = coh.DisplacementParam(rot * b.b0, rot * b.b1)
        res = coh.annihilation_eigen_residual(b_t, st.poly)
        rows.append([t] + occ + [res])
    meta = {
        "command": "coherent",
        "b": args.b,
        "nmax": args.nmax,
        "times": args.times,
        "omega": args.omega,
        "hbar": args.hbar,
        "format": args.format,
    }
    _emit(args, meta, header, rows)
    return 0


def cmd_check(args) -> int:
    rep = checks.report(seed=args.seed, name_filter=args.suite)
    text = json.dumps(rep, indent=2) + "\n"
    _write(args.out, text)
    return 0 if all(row["pass"] for row in rep["data"]) else 1


def cmd_integrate(args) -> int:
    p = parse_state_spec(args.state_p, args.nmax)
    q = parse_state_spec(args.state_q, args.nmax)
    if args.samples < 1:
        raise SpecError("--samples must be >= 1")
    est, stderr = fock.mc_inner_product(p, q, samples=args.samples, seed=args.seed)
    meta = {
        "command": "integrate",
        "state_p": args.state_p,
        "state_q": args.state_q,
        "samples": args.samples,
        "seed": args.seed,
        "nmax": args.nmax,
        "format": args.format,
    }
    header = ["re_estimate", "im_estimate", "stderr"]
    _emit(args, meta, header, [[est.real, est.imag, stderr]])
    return 0


def _add_common(sp, fmt=True):
    sp.add_argument("--omega", type=float, default=1.0, help="angular frequency (default 1)")
    sp.add_argument("--hbar", type=float, default=1.0, help="action scale (default 1)")
    sp.add_argument("--nmax", type=int, default=32, help="truncation grade (default 32; grown to fit the state)")
    sp.add_argument("--seed", type=int, default=0, help="random seed (default 0)")
    sp.add_argument("--out", default=None, help="output path (default stdout)")
    if fmt:
        sp.add_argument("--format", choices=("csv", "json"), default="csv", help="output format")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="fockbundle",
        description="Two-mode oscillator sections: evaluation, orbits, star divisors, coherent states, self checks.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("eval", help="evaluate a section at points")
    sp.add_argument("state", help="state spec")
    sp.add_argument("z", nargs="*", help="points re0,im0,re1,im1 (none: header only)")
    _add_common(sp)
    sp.set_defaults(fn=cmd_eval)

    sp = sub.add_parser("orbit", help="sample an orbit on a time grid")
    sp.add_argument("kind", choices=("classical", "zn", "fiber", "extended"))
    sp.add_argument("--z", required=True, help="initial point re0,im0,re1,im1")
    sp.add_argument("--times", required=True, help="t grid: start:stop:count or comma list")
    sp.add_argument("--n", type=int, default=1, help="quotient order for kind zn")
    _add_common(sp)
    sp.set_defaults(fn=cmd_orbit)

    sp = sub.add_parser("stars", help="star divisor of a single-grade state")
    sp.add_argument("state", help="state spec (single grade)")
    _add_common(sp)
    sp.set_defaults(fn=cmd_stars)

    sp = sub.add_parser("coherent", help="coherent-state occupations along an orbit")
    sp.add_argument("--b", required=True, help="displacement label re0,im0,re1,im1")
    sp.add_argument("--times", default="0", help="t grid (default single t=0)")
    _add_common(sp)
    sp.set_defaults(fn=cmd_coherent)

    sp = sub.add_parser("check", help="run verification suites, emit JSON report")
    sp.add_argument("--suite", default=None, help="substring filter on suite names")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--out", default=None)
    sp.set_defaults(fn=cmd_check)

    sp = sub.add_parser("integrate", help="Monte-Carlo pairing of two states")
    sp.add_argument("state_p")
    sp.add_argument("state_q")
    sp.add_argument("--samples", type=int, default=100_000)
    _add_common(sp)
    sp.set_defaults(fn=cmd_integrate)

    return ap


def main(argv: Optional[Sequence[str]] = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.fn(args)
    except (SpecError, MixedGradeError, InvalidGridError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except NonConvergenceError as e:
        print(f"error: {e}", file=sys.stderr)
        return 4
    except (NearOriginError, ZeroSectionError, ChartPoleError, TruncationOverflowError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 3
    except FockBundleError as e:
        print(f"error: {e}", file=sys.stderr)
        return 3
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
