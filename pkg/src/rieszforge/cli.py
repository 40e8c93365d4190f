"""Command-line front end.

Subcommands: construct, certify, select, partition, density, selftest.
Exit codes: 0 success / supported, 1 usage or input error, 2 refuted (or a
failed internal check), 3 inconclusive / target not met.

All JSON output carries {"schema": "riesz-forge/1"} and is byte-identical
for identical invocations (sorted keys, no timestamps).  Unless stated
otherwise, --window N means the symmetric integer window [-N, N]; the select
command instead uses frequencies {0, ..., N-1}.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass

import numpy as np

from . import gram as gramlib
from . import quasicrystal as qc
from .frames import BlockSystem, SelectorConfig, exponential_system, \
    predicted_bessel_bound, select_bessel, select_riesz, select_tight
from .lattice import BoxSet, LatticeWindow, covering_radius, cube_partition, \
    cycling_partition, section_gaps
from .torus import TWO_PI, MultibandSet, normalize_bands

SCHEMA = "riesz-forge/1"

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_REFUTED = 2
EXIT_INCONCLUSIVE = 3


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on usage errors; the interface reserves 2 for
    # refutations, so remap to 1
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


@dataclass
class RunSpec:
    """A parsed invocation: all knobs of one command, normalized."""

    command: str
    bands: str | None = None
    bands_file: str | None = None
    measure: float | None = None
    points: str | None = None
    points_file: str | None = None
    step: int | None = None
    window: int | None = None
    window_2d: str | None = None
    schedule: str = "16,32,64,128,256"
    threshold: float | None = None
    drop_ratio: float = gramlib.DEFAULT_DROP_RATIO
    r: int = 2
    dim: int = 2
    mode: str = "auto"
    seed: int = 0
    trials: int = 10000
    boxes: str | None = None
    cube_side: int | None = None
    out: str | None = None
    csv: str | None = None


def _spec_from_namespace(ns: argparse.Namespace) -> RunSpec:
    fields = RunSpec.__dataclass_fields__
    kwargs = {k: getattr(ns, k) for k in fields if hasattr(ns, k)}
    return RunSpec(**kwargs)


def _emit(obj: dict, out_path: str | None) -> None:
    text = json.dumps(obj, indent=2, sort_keys=True) + "\n"
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _load_spectrum(spec: RunSpec, required: bool = True) -> MultibandSet | None:
    given = [spec.bands is not None, spec.bands_file is not None,
             spec.measure is not None]
    if sum(given) == 0:
        if required:
            raise ValueError("a spectrum is required: pass --bands, --bands-file or --measure")
        return None
    if sum(given) > 1:
        raise ValueError("pass only one of --bands / --bands-file / --measure")
    if spec.measure is not None:
        if not 0.0 < spec.measure <= 1.0:
            raise ValueError("--measure is a fraction of 2*pi in (0, 1]")
        return normalize_bands([[0.0, spec.measure]], unit="2pi")
    if spec.bands is not None:
        raw = json.loads(spec.bands)
    else:
        with open(spec.bands_file) as fh:
            raw = json.load(fh)
    if isinstance(raw, dict):
        return MultibandSet.from_json(raw)
    # bare list of pairs is read in fractions of 2*pi
    return normalize_bands(raw, unit="2pi")


def _load_points(spec: RunSpec) -> qc.PointSet | None:
    given = [spec.points is not None, spec.points_file is not None,
             spec.step is not None]
    if sum(given) == 0:
        return None
    if sum(given) > 1:
        raise ValueError("pass only one of --points / --points-file / --step")
    if spec.step is not None:
        if spec.step < 1:
            raise ValueError("--step must be a positive integer")
        n = spec.window if spec.window is not None else 5000
        elems = tuple(range(-(n // spec.step) * spec.step, n + 1, spec.step))
        return qc.PointSet(elements=elems, window=(-n, n))
    if spec.points is not None:
        raw = json.loads(spec.points)
    else:
        with open(spec.points_file) as fh:
            raw = json.load(fh)
    if isinstance(raw, dict):
        return qc.PointSet.from_json(raw)
    elems = tuple(sorted(int(x) for x in raw))
    if not elems:
        raise ValueError("empty point list")
    return qc.PointSet(elements=elems, window=(elems[0], elems[-1]))


def _parse_schedule(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(part) for part in text.split(","))
    except ValueError:
        raise ValueError(f"bad schedule {text!r}; expected comma-separated integers") from None


# ---------------------------------------------------------------- commands --


def cmd_construct(spec: RunSpec) -> int:
    spectrum = _load_spectrum(spec)
    n = spec.window if spec.window is not None else 5000
    params, points = qc.construct_riesz_set(spectrum, (-n, n), mode=spec.mode)
    stats = qc.gap_stats(points)
    r_window = min(1000, points.span)
    dens = qc.density_stats(points, r_window)
    landau_ok = qc.landau_check(points, spectrum, window_r=r_window)
    payload = {
        "schema": SCHEMA,
        "command": "construct",
        "spectrum": spectrum.to_json(),
        "params": params.to_json(),
        "points": points.to_json(),
        "gap_stats": stats.to_json(),
        "density": dens.to_json(),
        "landau": "pass" if landau_ok else "fail",
    }
    if params.mode == "large":
        removed = points.complement_in_window()
        payload["removed_gap_stats"] = qc.gap_stats(removed).to_json()
        payload["removed_separation_bound"] = params.n
    _emit(payload, spec.out)
    return EXIT_OK if landau_ok else EXIT_REFUTED


def cmd_certify(spec: RunSpec) -> int:
    spectrum = _load_spectrum(spec)
    schedule = _parse_schedule(spec.schedule)
    threshold = spec.threshold if spec.threshold is not None else 1e-3 * TWO_PI
    explicit = _load_points(spec)
    if explicit is not None:
        points = explicit
        source = f"step({spec.step})" if spec.step is not None else \
            f"explicit({len(points)} points)"
        params = None
    else:
        params = qc.choose_params(spectrum.fraction_of_torus, spec.mode)
        points = qc.generate_centered(params.alpha, params.riesz_interval,
                                     max(schedule))
        source = f"constructed(mode={params.mode}, n={params.n})"
    cert = gramlib.certify(points, spectrum, threshold, schedule=schedule,
                           drop_ratio=spec.drop_ratio, source=source)
    payload = {
        "schema": SCHEMA,
        "command": "certify",
        "certificate": cert.to_json(),
    }
    if params is not None:
        payload["params"] = params.to_json()
    _emit(payload, spec.out)
    if spec.csv:
        with open(spec.csv, "w") as fh:
            fh.write(cert.csv_text())
    if cert.verdict == "supported":
        return EXIT_OK
    if cert.verdict == "refuted":
        return EXIT_REFUTED
    return EXIT_INCONCLUSIVE


def cmd_select(spec: RunSpec) -> int:
    spectrum = _load_spectrum(spec)
    n = spec.window if spec.window is not None else 64
    if n < spec.r:
        raise ValueError("--window must be at least --r")
    labels = range(n)
    system = exponential_system(labels, spectrum, normalized=True)
    blocks = BlockSystem.intervals(labels, spec.r)
    config = SelectorConfig(master_seed=spec.seed, max_trials=spec.trials)
    delta = spectrum.fraction_of_torus

    if spec.mode == "riesz":
        threshold = spec.threshold if spec.threshold is not None else 0.05
        result = select_riesz(system, blocks, threshold, config)
    elif spec.mode == "bessel":
        target = spec.threshold if spec.threshold is not None else \
            predicted_bessel_bound(spec.r, delta)
        result = select_bessel(system, blocks, target, config)
    elif spec.mode == "tight":
        eps = spec.threshold if spec.threshold is not None else 0.5
        result = select_tight(system, blocks, eps, config)
    else:
        raise ValueError(f"unknown selection mode {spec.mode!r}")

    theory = {
        "delta0": config.delta0,
        "eps0": config.eps0,
        "big_constant": config.big_constant,
        "vector_norm_squared": delta,
        "pair_bessel_bound": predicted_bessel_bound(2, delta, pairs=True)
        if delta < 0.25 else None,
        "block_bessel_bound": predicted_bessel_bound(spec.r, delta),
    }
    payload = {
        "schema": SCHEMA,
        "command": "select",
        "spectrum": spectrum.to_json(),
        "window": n,
        "r": spec.r,
        "mode": spec.mode,
        "result": result.to_json(),
        "theory": theory,
    }
    _emit(payload, spec.out)
    return EXIT_OK if result.met else EXIT_INCONCLUSIVE


def cmd_partition(spec: RunSpec) -> int:
    d = spec.dim
    r = spec.r
    if spec.window_2d is not None:
        parts = [int(x) for x in spec.window_2d.split(",")]
        if len(parts) != 2 * d:
            raise ValueError(f"--window-2d needs {2 * d} comma-separated integers for dim {d}")
        lo = tuple(parts[0::2])
        hi = tuple(parts[1::2])
    elif spec.window is not None:
        lo = (0,) * d
        hi = (spec.window - 1,) * d
    else:
        lo = (0,) * d
        hi = (6 * r - 1,) * d
    window = LatticeWindow(lo=lo, hi=hi)

    segments = cycling_partition(d, r, window)
    rng = np.random.default_rng(np.random.SeedSequence(spec.seed, spawn_key=(0,)))
    selector = [seg.cells[int(rng.integers(len(seg.cells)))] for seg in segments]

    gap_bound = 2 * d * r
    axis_report = []
    worst = 0
    for axis in range(1, d + 1):
        other_ranges = [range(window.lo[i], window.hi[i] + 1)
                        for i in range(d) if i != axis - 1]
        max_gap = 0
        thin_sections = 0
        import itertools as _it
        for fixed in _it.product(*other_ranges):
            stats = section_gaps(selector, axis, fixed, window)
            if not stats.gaps:
                thin_sections += 1
                continue
            max_gap = max(max_gap, int(stats.gamma))
        axis_report.append({"axis": axis, "max_section_gap": max_gap,
                            "sections_under_two_points": thin_sections})
        worst = max(worst, max_gap)

    s = spec.cube_side if spec.cube_side is not None else r
    cubes = cube_partition(d, s, window)
    rng2 = np.random.default_rng(np.random.SeedSequence(spec.seed, spawn_key=(1,)))
    cube_selector = [cube.cells[int(rng2.integers(len(cube.cells)))] for cube in cubes]
    radius = covering_radius(cube_selector, window)

    payload = {
        "schema": SCHEMA,
        "command": "partition",
        "dim": d,
        "r": r,
        "window": {"lo": list(window.lo), "hi": list(window.hi)},
        "segment_count": len(segments),
        "selector": [list(c) for c in selector],
        "section_gaps": axis_report,
        "section_gap_bound": gap_bound,
        "section_gap_ok": worst <= gap_bound,
        "cube_side": s,
        "cube_count": len(cubes),
        "covering_radius": radius,
        "covering_bound": s * math.sqrt(d),
        "covering_ok": radius <= s * math.sqrt(d),
    }

    if spec.boxes is not None:
        raw = json.loads(spec.boxes)
        box_set = BoxSet.from_json(raw) if isinstance(raw, dict) else \
            BoxSet.from_json({"boxes_2pi": raw})
        if box_set.dim != d:
            raise ValueError(f"--boxes dimension {box_set.dim} != --dim {d}")
        g = gramlib.build_gram(selector, box_set, normalized=True)
        be = gramlib.extreme_eigs(g)
        payload["quality"] = {"lambda_min": be.lambda_min, "lambda_max": be.lambda_max}

    _emit(payload, spec.out)
    ok = payload["section_gap_ok"] and payload["covering_ok"]
    return EXIT_OK if ok else EXIT_REFUTED


def cmd_density(spec: RunSpec) -> int:
    spectrum = _load_spectrum(spec, required=False)
    points = _load_points(spec)
    constructed = None
    if points is None:
        if spectrum is None:
            raise ValueError("give points (--points/--points-file/--step) "
                             "or a spectrum to construct from")
        n = spec.window if spec.window is not None else 5000
        constructed, points = qc.construct_riesz_set(spectrum, (-n, n), mode=spec.mode)
    r_window = min(1000, points.span)
    payload = {
        "schema": SCHEMA,
        "command": "density",
        "points": {"count": len(points), "window": list(points.window)},
        "gap_stats": qc.gap_stats(points).to_json(),
        "density": qc.density_stats(points, r_window).to_json(),
    }
    if constructed is not None:
        payload["params"] = constructed.to_json()
    if spectrum is not None:
        payload["spectrum"] = spectrum.to_json()
        payload["landau"] = "pass" if qc.landau_check(points, spectrum,
                                                     window_r=r_window) else "fail"
        if spec.step is not None and len(spectrum.arcs) == 1:
            payload["kahane"] = qc.kahane_classify(spec.step, spectrum)
    _emit(payload, spec.out)
    return EXIT_OK


def cmd_selftest(spec: RunSpec) -> int:
    checks: list[tuple[str, bool, str]] = []

    def run(name, fn):
        try:
            fn()
            checks.append((name, True, ""))
        except Exception as exc:  # noqa: BLE001 - report, don't crash
            checks.append((name, False, f"{type(exc).__name__}: {exc}"))

    def full_torus_identity():
        s = normalize_bands([[0.0, 1.0]], unit="2pi")
        g = gramlib.build_gram(range(-16, 17), s)
        if float(np.abs(g - TWO_PI * np.eye(33)).max()) > 1e-10:
            raise AssertionError("Gram of the full torus is not 2*pi*I")

    def frozen_regression():
        from fractions import Fraction
        from .quadfield import QuadNum
        alpha = QuadNum(Fraction(1, 2), Fraction(-1, 12), 6)
        interval = qc.UnitInterval(0, QuadNum(0, Fraction(1, 6), 6))
        got = qc.generate(alpha, interval, (0, 18)).elements
        if got != (0, 1, 4, 7, 8, 11, 14, 17, 18):
            raise AssertionError(f"regression vector changed: {got}")

    def small_mode_gaps():
        s = normalize_bands([[0.0, 0.45]], unit="2pi")
        params, points = qc.construct_riesz_set(s, (-500, 500))
        values = set(qc.gap_stats(points).gaps)
        if not values <= {1, params.n}:
            raise AssertionError(f"gap set {values} escapes {{1, {params.n}}}")
        if not qc.landau_check(points, s):
            raise AssertionError("Landau check failed")

    def selector_determinism():
        s = normalize_bands([[0.0, 0.9]], unit="2pi")
        system = exponential_system(range(16), s)
        blocks = BlockSystem.intervals(range(16), 2)
        a = select_riesz(system, blocks, 0.05, SelectorConfig(max_trials=50))
        b = select_riesz(system, blocks, 0.05, SelectorConfig(max_trials=50))
        if a != b:
            raise AssertionError("selection is not reproducible")

    def partition_counts():
        window = LatticeWindow(lo=(0, 0), hi=(17, 17))
        segments = cycling_partition(2, 3, window)
        cells = [c for seg in segments for c in seg.cells]
        if len(segments) != 108 or len(set(cells)) != 324:
            raise AssertionError("cycling partition is not an exact 108-segment cover")

    run("full_torus_identity", full_torus_identity)
    run("frozen_regression_vector", frozen_regression)
    run("small_mode_gap_law", small_mode_gaps)
    run("selector_determinism", selector_determinism)
    run("cycling_partition_cover", partition_counts)

    passed = sum(1 for _, ok, _ in checks if ok)
    for name, ok, detail in checks:
        line = f"{'PASS' if ok else 'FAIL'} {name}"
        if detail:
            line += f"  ({detail})"
        print(line)
    print(f"{passed}/{len(checks)} checks passed")
    if spec.out:
        _emit({
            "schema": SCHEMA,
            "command": "selftest",
            "results": [{"name": n, "passed": ok, "detail": d} for n, ok, d in checks],
            "all_passed": passed == len(checks),
        }, spec.out)
    return EXIT_OK if passed == len(checks) else EXIT_REFUTED


# ------------------------------------------------------------------ parser --


def _add_spectrum_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--bands", help="inline JSON: [[a,b],...] in fractions of 2*pi, "
                                   "or an object with bands_2pi / bands_rad")
    p.add_argument("--bands-file", help="path to a JSON file in the same format")
    p.add_argument("--measure", type=float,
                   help="single arc [0, x) as a fraction x of 2*pi")


def _add_points_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--points", help="inline JSON list of integers")
    p.add_argument("--points-file", help="path to a JSON list of integers")
    p.add_argument("--step", type=int,
                   help="arithmetic progression step*Z inside the window")


def build_parser() -> _Parser:
    parser = _Parser(prog="rieszforge", description=__doc__,
                     formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", help="build a syndetic Riesz candidate for a spectrum")
    _add_spectrum_flags(p)
    p.add_argument("--mode", choices=["auto", "small", "large"], default="auto")
    p.add_argument("--window", type=int, help="inclusive symmetric window [-N, N] (default 5000)")
    p.add_argument("--out")

    p = sub.add_parser("certify", help="finite-section certificate for a point set")
    _add_spectrum_flags(p)
    _add_points_flags(p)
    p.add_argument("--mode", choices=["auto", "small", "large"], default="auto",
                   help="construction mode when no explicit points are given")
    p.add_argument("--window", type=int, help="window for --step (default 5000)")
    p.add_argument("--schedule", default="16,32,64,128,256",
                   help="comma-separated section sizes")
    p.add_argument("--threshold", type=float,
                   help="supported needs final lambda_min >= this (default 1e-3*2*pi)")
    p.add_argument("--drop-ratio", type=float, default=gramlib.DEFAULT_DROP_RATIO)
    p.add_argument("--out")
    p.add_argument("--csv", help="also write window,lambda_min,lambda_max rows here")

    p = sub.add_parser("select", help="randomized one-per-block selection")
    _add_spectrum_flags(p)
    p.add_argument("--mode", choices=["riesz", "bessel", "tight"], default="riesz")
    p.add_argument("--window", type=int, help="use frequencies 0..N-1 (default 64)")
    p.add_argument("--r", type=int, default=2, help="block size")
    p.add_argument("--threshold", type=float,
                   help="target: lambda_min (riesz), lambda_max (bessel) or eps (tight)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=10000)
    p.add_argument("--out")

    p = sub.add_parser("partition", help="cycling/cube lattice partitions and their selectors")
    p.add_argument("--dim", type=int, default=2)
    p.add_argument("--r", type=int, default=3, help="segment length")
    p.add_argument("--window-2d", help="lo1,hi1,lo2,hi2,... (inclusive, aligned to r)")
    p.add_argument("--window", type=int, help="per-axis window [0, N-1]")
    p.add_argument("--cube-side", type=int, help="cube partition side (default r)")
    p.add_argument("--boxes", help="inline JSON box spectrum for a selection quality report")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")

    p = sub.add_parser("density", help="gap/density statistics and Landau/Kahane verdicts")
    _add_spectrum_flags(p)
    _add_points_flags(p)
    p.add_argument("--mode", choices=["auto", "small", "large"], default="auto")
    p.add_argument("--window", type=int, help="window for --step or construction (default 5000)")
    p.add_argument("--out")

    p = sub.add_parser("selftest", help="run the built-in quick checks")
    p.add_argument("--out", help="write a JSON summary here as well")

    return parser


_COMMANDS = {
    "construct": cmd_construct,
    "certify": cmd_certify,
    "select": cmd_select,
    "partition": cmd_partition,
    "density": cmd_density,
    "selftest": cmd_selftest,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:  # argparse signals usage errors (and --help)
        return int(exc.code or 0)
    spec = _spec_from_namespace(ns)
    try:
        return _COMMANDS[spec.command](spec)
    except (ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"rieszforge {spec.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
