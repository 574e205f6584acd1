"""Command-line front end: tables, summaries, sweeps and verification.

Angles are radians by default; append ``deg`` for degrees (``--sep 90deg``).
Structured output is JSON; csv output carries a ``#``-prefixed header
block describing the columns.  Exit codes: 0 success, 1 usage error,
2 numeric failure, 3 verification failure.
"""

import argparse
import json
import math
import sys

import numpy as np

from . import brachistochrone as brach
from . import chord as chord_mod
from . import cycloid as cycloid_mod
from . import oracle as oracle_mod
from . import timing
from .core import PhysicalParams, latitude_to_polar, make_scaling
from .errors import DomainError, TunnelError

EARTH = PhysicalParams(radius_m=6.371e6, gravity_m_s2=9.80665)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_NUMERIC = 2
EXIT_VERIFY = 3


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _fmt(value):
    return format(float(value), ".12g")


def _parse_angle(text):
    text = str(text).strip()
    try:
        if text.lower().endswith("deg"):
            return math.radians(float(text[:-3]))
        return float(text)
    except ValueError:
        raise _UsageError(f"cannot parse angle {text!r}; use radians or e.g. 90deg")


def _endpoint_separation(args):
    has_sep = args.sep is not None
    has_lat = args.lat1 is not None or args.lat2 is not None
    if has_sep and has_lat:
        raise _UsageError("give either --sep or --lat1/--lat2, not both")
    if has_sep:
        delta = _parse_angle(args.sep)
    elif args.lat1 is not None and args.lat2 is not None:
        try:
            t1 = latitude_to_polar(_parse_angle(args.lat1))
            t2 = latitude_to_polar(_parse_angle(args.lat2))
        except DomainError as exc:
            raise _UsageError(str(exc))
        delta = abs(t1 - t2)
    else:
        raise _UsageError("an endpoint spec is required: --sep, or both "
                          "--lat1 and --lat2")
    if not (0.0 < delta <= math.pi):
        raise _UsageError(f"surface separation must lie in (0, pi]; got {delta!r}")
    return delta


def _resolve_scaling(args):
    if args.body is None:
        if args.radius is not None or args.gravity is not None:
            raise _UsageError("--radius/--gravity need --body custom")
        return None, None
    if args.body == "earth":
        return "earth", make_scaling(EARTH)
    if args.radius is None or args.gravity is None:
        raise _UsageError("--body custom needs --radius and --gravity")
    try:
        params = PhysicalParams(radius_m=args.radius, gravity_m_s2=args.gravity)
    except DomainError as exc:
        raise _UsageError(str(exc))
    return "custom", make_scaling(params)


def _open_out(spec):
    if spec is None or spec == "-":
        return sys.stdout, False
    return open(spec, "w", newline="\n"), True


def _emit_csv(stream, header_lines, columns, rows):
    for line in header_lines:
        stream.write(f"# {line}\n")
    stream.write(",".join(columns) + "\n")
    for row in rows:
        stream.write(",".join(row) + "\n")


def _emit_structured(stream, payload):
    stream.write(json.dumps(payload, sort_keys=True, indent=2) + "\n")


def _body_header(body, scaling):
    if scaling is None:
        return ["units: dimensionless (lengths in R, times in sqrt(R/g))"]
    return [f"body: {body} length_unit_m={_fmt(scaling.length_unit_m)} "
            f"time_unit_s={_fmt(scaling.time_unit_s)} "
            f"speed_unit_m_s={_fmt(scaling.speed_unit_m_s)}"]


def _body_payload(body, scaling):
    if scaling is None:
        return None
    return {"name": body,
            "length_unit_m": scaling.length_unit_m,
            "time_unit_s": scaling.time_unit_s,
            "speed_unit_m_s": scaling.speed_unit_m_s}


def _curve_rows(name, path, scaling):
    x, y = path.xy()
    arc = path.cumulative_arclength()
    tau = timing.cumulative_path_times(path)
    rows = []
    for i in range(len(path)):
        row = [name, _fmt(path.theta[i]), _fmt(path.rho[i]), _fmt(x[i]),
               _fmt(y[i]), _fmt(arc[i]), _fmt(tau[i])]
        if scaling is not None:
            row += [_fmt(arc[i] * scaling.length_unit_m),
                    _fmt(tau[i] * scaling.time_unit_s)]
        rows.append(row)
    return rows, arc, tau


def cmd_path(args):
    delta = _endpoint_separation(args)
    body, scaling = _resolve_scaling(args)
    family = brach.family_from_separation(delta)
    tunnel = brach.sample_path(family, args.samples)
    curves = [("tunnel", tunnel)]
    if args.include_chord:
        curves.append(("chord",
                       chord_mod.chord_path(chord_mod.chord_from_separation(delta),
                                            2 * args.samples - 1)))
    columns = ["curve", "theta", "rho", "x", "y", "arc", "tau"]
    if scaling is not None:
        columns += ["arc_m", "tau_s"]
    header = [
        "gravitunnel path table",
        f"separation_rad: {_fmt(delta)}",
        f"k: {_fmt(family.k)} rho_min: {_fmt(family.rho_min)}",
        *_body_header(body, scaling),
        "columns: theta,rho polar samples; x=rho*cos(theta), y=rho*sin(theta); "
        "arc and tau cumulative from the release point",
    ]
    out, close = _open_out(args.out)
    try:
        if args.format == "structured":
            payload = {"kind": "path", "separation_rad": delta,
                       "k": family.k, "rho_min": family.rho_min,
                       "body": _body_payload(body, scaling), "curves": {}}
            for name, path in curves:
                arc = path.cumulative_arclength()
                tau = timing.cumulative_path_times(path)
                payload["curves"][name] = {
                    "theta": path.theta.tolist(), "rho": path.rho.tolist(),
                    "arc": arc.tolist(), "tau": tau.tolist()}
            _emit_structured(out, payload)
        else:
            rows = []
            for name, path in curves:
                rows.extend(_curve_rows(name, path, scaling)[0])
            _emit_csv(out, header, columns, rows)
    finally:
        if close:
            out.close()
    return EXIT_OK


def cmd_time(args):
    delta = _endpoint_separation(args)
    body, scaling = _resolve_scaling(args)
    family = brach.family_from_separation(delta)
    tunnel_tau = timing.total_transit_time(family).tau
    chord_tau = chord_mod.chord_transit_time(chord_mod.chord_from_separation(delta))
    items = [
        ("separation_rad", delta),
        ("separation_deg", math.degrees(delta)),
        ("k", family.k),
        ("rho_min", family.rho_min),
        ("tunnel_tau", tunnel_tau),
        ("chord_tau", chord_tau),
        ("tau_ratio", tunnel_tau / chord_tau),
        ("tunnel_arc", brach.arc_length(family)),
        ("chord_length", 2.0 * math.sin(delta / 2.0)),
    ]
    if scaling is not None:
        items += [
            ("time_unit_s", scaling.time_unit_s),
            ("tunnel_s", tunnel_tau * scaling.time_unit_s),
            ("chord_s", chord_tau * scaling.time_unit_s),
            ("tunnel_min", tunnel_tau * scaling.time_unit_s / 60.0),
            ("chord_min", chord_tau * scaling.time_unit_s / 60.0),
        ]
    out, close = _open_out(args.out)
    try:
        if args.format == "structured":
            payload = {"kind": "time", "body": _body_payload(body, scaling)}
            payload.update({k: v for k, v in items})
            _emit_structured(out, payload)
        else:
            _emit_csv(out, ["gravitunnel time summary",
                            *_body_header(body, scaling)],
                      ["key", "value"],
                      [[k, _fmt(v)] for k, v in items])
    finally:
        if close:
            out.close()
    return EXIT_OK


def _parse_range(text, angle=False):
    parts = str(text).split(":")
    if len(parts) != 2:
        raise _UsageError(f"range must look like MIN:MAX; got {text!r}")
    if angle:
        lo, hi = (_parse_angle(p) for p in parts)
    else:
        try:
            lo, hi = (float(p) for p in parts)
        except ValueError:
            raise _UsageError(f"cannot parse range {text!r}")
    if not (lo <= hi):
        raise _UsageError(f"range must not be inverted; got {text!r}")
    return lo, hi


def cmd_sweep(args):
    body, scaling = _resolve_scaling(args)
    if (args.k_range is None) == (args.sep_range is None):
        raise _UsageError("give exactly one of --k-range or --sep-range")
    count = args.count
    if count < 1:
        raise _UsageError("--count must be at least 1")
    if args.k_range is not None:
        lo, hi = _parse_range(args.k_range)
        if lo < 0.0:
            raise _UsageError("k values must be >= 0")
        if args.spacing == "log":
            if lo <= 0.0:
                raise _UsageError("log spacing needs a positive lower bound")
            ks = np.geomspace(lo, hi, count)
        else:
            ks = np.linspace(lo, hi, count)
        families = [brach.BrachFamily.from_momentum(k) for k in ks]
    else:
        lo, hi = _parse_range(args.sep_range, angle=True)
        if not (0.0 < lo and hi <= math.pi):
            raise _UsageError("separations must lie in (0, pi]")
        if args.spacing == "log":
            seps = np.geomspace(lo, hi, count)
        else:
            seps = np.linspace(lo, hi, count)
        families = [brach.family_from_separation(s) for s in seps]
    columns = ["k", "rho_min", "separation_rad", "arc", "tau", "tau_over_chord"]
    if scaling is not None:
        columns.append("tau_s")
    rows = []
    for fam in families:
        tau = timing.total_transit_time(fam).tau
        row = [_fmt(fam.k), _fmt(fam.rho_min), _fmt(fam.separation_angle),
               _fmt(brach.arc_length(fam)), _fmt(tau), _fmt(tau / math.pi)]
        if scaling is not None:
            row.append(_fmt(tau * scaling.time_unit_s))
        rows.append(row)
    out, close = _open_out(args.out)
    try:
        if args.format == "structured":
            payload = {"kind": "sweep", "body": _body_payload(body, scaling),
                       "columns": columns,
                       "rows": [[float(v) for v in row] for row in rows]}
            _emit_structured(out, payload)
        else:
            _emit_csv(out, ["gravitunnel family sweep",
                            *_body_header(body, scaling)], columns, rows)
    finally:
        if close:
            out.close()
    return EXIT_OK


def cmd_compare_cycloid(args):
    delta = _endpoint_separation(args)
    try:
        report = cycloid_mod.compare_small_arc(delta)
    except DomainError as exc:
        raise _UsageError(str(exc))
    items = [
        ("separation_rad", report.delta_theta),
        ("max_geometry_deviation", report.max_geometry_deviation),
        ("sphere_time", report.sphere_time),
        ("cycloid_time", report.cycloid_time),
        ("relative_time_difference", report.relative_time_difference),
    ]
    out, close = _open_out(args.out)
    try:
        if args.format == "structured":
            payload = {"kind": "compare-cycloid"}
            payload.update({k: v for k, v in items})
            _emit_structured(out, payload)
        else:
            _emit_csv(out, ["gravitunnel small-arc comparison"],
                      ["key", "value"], [[k, _fmt(v)] for k, v in items])
    finally:
        if close:
            out.close()
    return EXIT_OK


# --- verification checks (reduced-scale acceptance run) -----------------

def _bisect_root(f, lo, hi, iterations=200):
    flo = f(lo)
    for _ in range(iterations):
        mid = 0.5 * (lo + hi)
        fmid = f(mid)
        if flo * fmid <= 0.0:
            hi = mid
        else:
            lo, flo = mid, fmid
    return 0.5 * (lo + hi)


def _alt_theta_of_rho(rho, k):
    """Antiderivative candidate with arcsine coefficient k: must misfit."""
    rm = brach.rho_min(k)
    u = np.sqrt((1.0 - rho) * (1.0 + rho))
    w = np.sqrt((k * k + 1.0) * (rho - rm) * (rho + rm)) / k
    return -np.arctan2(u, w) + k * np.arcsin(np.clip(math.sqrt(k * k + 1.0) * u,
                                                     -1.0, 1.0))


def _fd4(f, grid, h):
    return (-f(grid + 2 * h) + 8 * f(grid + h)
            - 8 * f(grid - h) + f(grid - 2 * h)) / (12.0 * h)


def _check_chord_time(scale):
    spec = chord_mod.chord_from_separation(2.0)
    res = timing.path_transit_time(chord_mod.chord_path(spec, 4001))
    measure = abs(res.tau - math.pi) / math.pi
    threshold = 1e-4 * scale
    return measure <= threshold, measure, threshold, \
        "straight-chord quadrature vs the exact half-period pi"


def _check_min_radius_root(scale):
    worst = 0.0
    for k in (0.5, 1.0, 2.0):
        root = _bisect_root(lambda r, k=k: (k * k + 1.0) * r * r - k * k, 0.0, 1.0)
        worst = max(worst, abs(root - brach.rho_min(k)))
    threshold = 1e-12 * scale
    return worst <= threshold, worst, threshold, \
        "bisection root of the slope denominator vs k/sqrt(k^2+1)"


def _check_alt_min_radius(scale):
    del scale
    gap = min(abs(_bisect_root(lambda r, k=k: (k * k + 1.0) * r * r - k * k,
                               0.0, 1.0) - k * k / (k * k + 1.0))
              for k in (0.5, 1.0, 2.0))
    return gap >= 1e-3, gap, 1e-3, \
        "squared-ratio alternative k^2/(k^2+1) must stay distinct from the root"


def _check_slope_antiderivative(scale):
    h = 2e-6
    worst = 0.0
    for k in (0.5, 1.0, 2.0):
        rm = brach.rho_min(k)
        grid = np.linspace(rm + 1e-4, 1.0 - 1e-4, 200)
        fd = _fd4(lambda r, k=k: np.asarray(brach.theta_of_rho(r, k)), grid, h)
        worst = max(worst, float(np.max(np.abs(fd - brach.theta_prime(grid, k))
                                        / np.abs(brach.theta_prime(grid, k)))))
    threshold = 1e-6 * scale
    return worst <= threshold, worst, threshold, \
        "finite differences of the antiderivative reproduce the slope field"


def _check_alt_coefficient(scale):
    del scale
    worst_ratio = math.inf
    for k in (0.5, 1.0, 2.0):
        rm = brach.rho_min(k)
        grid = np.linspace(rm + 1e-4, 1.0 - 1e-4, 200)
        fd = _fd4(lambda r, k=k: _alt_theta_of_rho(r, k), grid, 2e-6)
        misfit = float(np.max(np.abs(fd - brach.theta_prime(grid, k))
                              / np.abs(brach.theta_prime(grid, k))))
        required = math.sqrt(1.0 + 1.0 / (k * k)) - 1.0
        worst_ratio = min(worst_ratio, misfit / required)
    return worst_ratio >= 1.0, worst_ratio, 1.0, \
        "arcsine coefficient k misfits the slope by at least sqrt(1+1/k^2)-1"


def _check_separation_quadrature(scale):
    worst = 0.0
    cfg = timing.QuadratureConfig()
    for k in np.geomspace(0.05, 20.0, 7):
        rm = brach.rho_min(k)

        def integrand(u, k=k, rm=rm):
            rho = rm + u * u
            return (2.0 * k * np.sqrt((1.0 - rho) * (1.0 + rho))
                    / (rho * np.sqrt((k * k + 1.0) * (rho + rm))))

        swept, _, _ = timing._adaptive(integrand, 0.0, math.sqrt(1.0 - rm),
                                       cfg, "separation check")
        worst = max(worst, abs(2.0 * swept - brach.separation_angle(k)))
    threshold = 1e-8 * scale
    return worst <= threshold, worst, threshold, \
        "pi(1 - rho_min) vs direct quadrature of the slope field"


def _check_transit_closed_form(scale):
    worst = 0.0
    for k in np.geomspace(0.05, 20.0, 7):
        fam = brach.BrachFamily.from_momentum(k)
        tau = timing.total_transit_time(fam).tau
        worst = max(worst, abs(tau - math.pi * math.sqrt(1.0 - fam.rho_min ** 2)))
    worst = max(worst, abs(timing.total_transit_time(
        brach.BrachFamily.from_momentum(0.0)).tau - math.pi))
    threshold = 1e-7 * scale
    return worst <= threshold, worst, threshold, \
        "transit quadrature vs pi*sqrt(1 - rho_min^2), including k=0 -> pi"


def _check_oracle_triangle(scale):
    delta = math.pi / 2.0
    fam = brach.family_from_separation(delta)
    t_quad = timing.total_transit_time(fam).tau
    report = oracle_mod.optimize_path(delta, 24)
    t_bead = oracle_mod.simulate_bead(brach.sample_path(fam, 1500)).transit_time
    times = {"quadrature": t_quad, "optimizer": report.best_time, "bead": t_bead}
    worst = max(abs(a - b) / t_quad
                for a in times.values() for b in times.values())
    undercut = t_quad - report.best_time
    threshold = 5e-3 * scale
    passed = worst <= threshold and undercut <= 1e-6 * scale
    detail = ("pairwise agreement of quadrature/optimizer/bead; optimizer "
              f"undercut {undercut:.3e} (limit {1e-6 * scale:.3e})")
    return passed, worst, threshold, detail


def _check_stationarity(scale):
    fam = brach.BrachFamily.from_momentum(1.0)
    worst_delta = 0.0
    ratio_off = 0.0
    for mode in (1, 3):
        d1 = oracle_mod.perturbation_test(fam, 1e-3, mode)
        d2 = oracle_mod.perturbation_test(fam, 2e-3, mode)
        worst_delta = min(worst_delta, d1, d2)
        ratio_off = max(ratio_off, abs(d2 / d1 - 4.0))
    passed = worst_delta >= -1e-9 * scale and ratio_off <= 0.3
    detail = (f"most negative delta {worst_delta:.3e}; worst quadratic-ratio "
              f"offset {ratio_off:.3f} (limit 0.3)")
    return passed, -worst_delta, 1e-9 * scale, detail


def _check_energy_drift(scale):
    paths = [chord_mod.chord_path(chord_mod.chord_from_separation(2.0), 1001),
             brach.sample_path(brach.BrachFamily.from_momentum(1.0), 1001)]
    worst = max(oracle_mod.simulate_bead(p).max_energy_drift for p in paths)
    threshold = 1e-8 * scale
    return worst <= threshold, worst, threshold, \
        "bead energy drift on chord and tunnel paths"


def _check_small_arc(scale):
    r1 = cycloid_mod.compare_small_arc(0.1)
    r2 = cycloid_mod.compare_small_arc(0.05)
    threshold = 1e-2 * scale
    passed = (r1.relative_time_difference <= threshold
              and r2.relative_time_difference < r1.relative_time_difference
              and r2.max_geometry_deviation < r1.max_geometry_deviation)
    return passed, r1.relative_time_difference, threshold, \
        "cycloid agreement improves as the arc shrinks"


def _check_depth_span_ratio(scale):
    worst = max(abs((1.0 - brach.family_from_separation(d).rho_min) / d
                    - 1.0 / math.pi)
                for d in np.linspace(0.05, math.pi, 9))
    threshold = 1e-12 * scale
    return worst <= threshold, worst, threshold, \
        "(1 - rho_min)/separation equals 1/pi for every family member"


_VERIFY_CHECKS = [
    ("chord-time-quadrature", _check_chord_time),
    ("min-radius-root", _check_min_radius_root),
    ("alt-min-radius-rejected", _check_alt_min_radius),
    ("slope-antiderivative", _check_slope_antiderivative),
    ("alt-coefficient-misfit", _check_alt_coefficient),
    ("separation-quadrature", _check_separation_quadrature),
    ("transit-closed-form", _check_transit_closed_form),
    ("oracle-triangle", _check_oracle_triangle),
    ("stationarity", _check_stationarity),
    ("energy-drift", _check_energy_drift),
    ("small-arc-limit", _check_small_arc),
    ("depth-span-ratio", _check_depth_span_ratio),
]


def cmd_verify(args):
    scale = args.tol_scale
    if not (scale > 0.0):
        raise _UsageError("--tol-scale must be positive")
    results = []
    for name, check in _VERIFY_CHECKS:
        try:
            passed, measure, threshold, detail = check(scale)
        except TunnelError as exc:
            passed, measure, threshold = False, math.nan, math.nan
            detail = f"raised {type(exc).__name__}: {exc}"
        results.append({"name": name, "passed": bool(passed),
                        "measure": float(measure), "threshold": float(threshold),
                        "detail": detail})
    all_passed = all(r["passed"] for r in results)
    out, close = _open_out(args.out)
    try:
        if args.format == "structured":
            _emit_structured(out, {"kind": "verify", "tol_scale": scale,
                                   "all_passed": all_passed, "checks": results})
        else:
            rows = [[r["name"], "pass" if r["passed"] else "FAIL",
                     _fmt(r["measure"]), _fmt(r["threshold"]), r["detail"]]
                    for r in results]
            _emit_csv(out, [f"gravitunnel verification (tol scale {_fmt(scale)})"],
                      ["check", "status", "measure", "threshold", "detail"], rows)
    finally:
        if close:
            out.close()
    return EXIT_OK if all_passed else EXIT_VERIFY


def _add_endpoint_args(sub):
    sub.add_argument("--sep", help="surface separation angle (radians, or 90deg)")
    sub.add_argument("--lat1", help="first endpoint latitude")
    sub.add_argument("--lat2", help="second endpoint latitude")


def _add_body_args(sub):
    sub.add_argument("--body", choices=("earth", "custom"),
                     help="apply physical units for this body")
    sub.add_argument("--radius", type=float, help="body radius in m (custom)")
    sub.add_argument("--gravity", type=float,
                     help="surface gravity in m/s^2 (custom)")


def _add_output_args(sub):
    sub.add_argument("--format", choices=("csv", "structured"), default="csv")
    sub.add_argument("--out", default="-", help="output file, or - for stdout")


def build_parser():
    parser = _Parser(prog="gravitunnel",
                     description="Minimum-time tunnels through a uniform sphere")
    subs = parser.add_subparsers(dest="command", required=True,
                                 parser_class=_Parser)

    p = subs.add_parser("path", help="emit sampled tunnel (and chord) tables")
    _add_endpoint_args(p)
    _add_body_args(p)
    _add_output_args(p)
    p.add_argument("--samples", type=int, default=201,
                   help="samples per tunnel half")
    p.add_argument("--include-chord", action="store_true",
                   help="also emit the straight-chord samples")
    p.set_defaults(func=cmd_path)

    p = subs.add_parser("time", help="transit-time summary vs the chord")
    _add_endpoint_args(p)
    _add_body_args(p)
    _add_output_args(p)
    p.set_defaults(func=cmd_time)

    p = subs.add_parser("sweep", help="one row per family member over a range")
    p.add_argument("--k-range", help="momentum range MIN:MAX")
    p.add_argument("--sep-range", help="separation range MIN:MAX (angles)")
    p.add_argument("--count", type=int, default=20)
    p.add_argument("--spacing", choices=("log", "linear"), default="log")
    _add_body_args(p)
    _add_output_args(p)
    p.set_defaults(func=cmd_sweep)

    p = subs.add_parser("verify", help="run the reduced verification suite")
    p.add_argument("--tol-scale", type=float, default=1.0,
                   help="multiply every tolerance (tiny values force failure)")
    _add_output_args(p)
    p.set_defaults(func=cmd_verify)

    p = subs.add_parser("compare-cycloid",
                        help="small-arc comparison with the uniform-field curve")
    _add_endpoint_args(p)
    _add_output_args(p)
    p.set_defaults(func=cmd_compare_cycloid)
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except _UsageError as exc:
        print(f"gravitunnel: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DomainError as exc:
        print(f"gravitunnel: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except TunnelError as exc:
        print(f"gravitunnel: numeric failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
