"""
Command line front end: ``garcat <command> ...``.

Commands
--------
interval build --group e8 --cache PATH   build the rank-8 interval, save it
interval stats --cache PATH              size, rank sizes, self-duality
divided --p 2 --q 15 [--list-objects]    divided objects of the cached interval
orbits --p 2 --q 15                      twist orbits of the divided objects
g31 loops --object u1                    atomic loops and letters at one vertex
g31 present --object u1 [--out PATH]     derived presentation with certificates
g31 verify --object u1|all [--alg*-cap]  pipeline verification report
g31 witnesses|center|roots|maps          the per-fact check reports
series verify --kind g11n --n 6 --q 2    interval equality for one instance
series ncp --d 2 --q 2                   noncrossing-partition model report

The exhaustive poset comparisons behind ``series`` are Catalan-sized; the
intended ranges are n ≤ 10 for G(1,1,n)/G(m,1,n), e(n−1) ≤ 12 for
G(e,e,n) (that family materializes the whole group for its exact length
function), and dq ≤ 8 for the noncrossing model.

All commands accept ``--format machine`` for line-oriented key=value
output.  Exit status: 0 all checks pass, 1 a check failed, 2 a cap was
exceeded or a search left undecided.
"""

from __future__ import annotations

import argparse
import sys
import time

from . import g31 as g31mod
from . import series
from .exactalg import ResourceLimitError, build_e8, enumerate_reflections
from .g31 import Report, render_presentation, render_report
from .interval import (
    IntegrityError,
    divided_objects,
    enumerate_interval,
    load_cache,
    phi_orbits,
    save_cache,
)
from .presentation import DivergenceError

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_UNDECIDED = 2


def _emit(rep: Report, fmt: str) -> int:
    sys.stdout.write(render_report(rep, fmt))
    return EXIT_OK if rep.ok else EXIT_FAIL


def _rank_lines(rep: Report, lat) -> None:
    ranks = lat.rank_sizes()
    rep.add("interval size", lat.size == 25080, f"{lat.size} elements")
    rep.add(
        "rank sizes symmetric",
        ranks == ranks[::-1],
        " ".join(map(str, ranks)),
    )


# ---------------------------------------------------------------------------
# interval
# ---------------------------------------------------------------------------

def cmd_interval_build(args: argparse.Namespace) -> int:
    t0 = time.perf_counter()
    generators, c = build_e8()
    reflections = enumerate_reflections(generators)
    lat = enumerate_interval(c, reflections, tag=args.group)
    save_cache(lat, args.cache)
    rep = Report(f"interval build {args.group}")
    rep.add("reflections", len(reflections) == 120, f"{len(reflections)}")
    _rank_lines(rep, lat)
    rep.add("cache written", True, args.cache)
    rep.add("elapsed", True, f"{time.perf_counter() - t0:.1f}s")
    return _emit(rep, args.format)


def cmd_interval_stats(args: argparse.Namespace) -> int:
    lat = load_cache(args.cache)
    rep = Report(f"interval stats ({lat.group_tag})")
    _rank_lines(rep, lat)
    rep.add("top length", True, str(lat.c_length))
    return _emit(rep, args.format)


# ---------------------------------------------------------------------------
# divided / orbits
# ---------------------------------------------------------------------------

def cmd_divided(args: argparse.Namespace) -> int:
    lat = load_cache(args.cache)
    objs = divided_objects(lat, args.p, args.q)
    rep = Report(f"divided objects p={args.p} q={args.q}")
    want = lat.c_length // args.p
    rep.add(
        "object lengths",
        all(int(lat.lengths[u]) == want for u in objs),
        f"{len(objs)} objects of length {want}",
    )
    if args.list_objects:
        for u in objs:
            rep.add(f"object.{u}", True, f"length {int(lat.lengths[u])}")
    return _emit(rep, args.format)


def cmd_orbits(args: argparse.Namespace) -> int:
    lat = load_cache(args.cache)
    objs = divided_objects(lat, args.p, args.q)
    orbits = phi_orbits(lat, objs, args.p, args.q)
    rep = Report(f"twist orbits p={args.p} q={args.q}")
    sizes = sorted(len(o) for o in orbits)
    rep.add(
        "orbits partition the objects",
        sum(sizes) == len(objs),
        f"{len(orbits)} orbits, sizes {sizes}",
    )
    return _emit(rep, args.format)


# ---------------------------------------------------------------------------
# g31
# ---------------------------------------------------------------------------

def _load_c31(args: argparse.Namespace) -> g31mod.C31:
    return g31mod.build_c31(args.cache)


def cmd_g31_loops(args: argparse.Namespace) -> int:
    c31 = _load_c31(args)
    ls = g31mod.loop_system(c31, args.object, args.alg1_cap)
    rep = Report(f"atomic loops at {args.object}")
    golden = g31mod.GOLDEN[args.object]
    rep.add(
        "loop count",
        len(ls.labels) == len(golden.letters),
        f"{len(ls.labels)} loops",
    )
    rep.add("letters", True, ls.letters)
    for ch, lbl in zip(ls.letters, ls.labels):
        rep.add(f"loop.{ch}", True, f"atom ({lbl[0]},{lbl[1]})")
    return _emit(rep, args.format)


def cmd_g31_present(args: argparse.Namespace) -> int:
    c31 = _load_c31(args)
    vp = g31mod.presentation_pipeline(
        c31, args.object,
        alg1_cap=args.alg1_cap, alg4_cap=args.alg4_cap, alg5_cap=args.alg5_cap,
    )
    text = render_presentation(vp, args.format)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
        sys.stdout.write(f"wrote {args.out}\n")
    else:
        sys.stdout.write(text)
    if vp.failures:
        return EXIT_UNDECIDED
    return EXIT_OK


def cmd_g31_verify(args: argparse.Namespace) -> int:
    c31 = _load_c31(args)
    names = g31mod.OBJECT_NAMES if args.object == "all" else (args.object,)
    hurwitz = None
    anchors: dict[str, g31mod.LoopSystem] = {}
    merged = Report(f"pipeline verification: {', '.join(names)}")
    undecided = False
    for name in names:
        vp, rep = g31mod.verify_object(
            c31, name,
            alg1_cap=args.alg1_cap, alg4_cap=args.alg4_cap,
            alg5_cap=args.alg5_cap, hurwitz=hurwitz, anchors=anchors,
        )
        undecided = undecided or bool(vp.failures)
        merged.lines.extend(rep.lines)
    code = _emit(merged, args.format)
    if code == EXIT_FAIL and undecided:
        return EXIT_UNDECIDED
    return code


def _g31_systems(c31: g31mod.C31) -> dict[str, g31mod.LoopSystem]:
    return g31mod.loop_systems(c31)


def cmd_g31_witnesses(args: argparse.Namespace) -> int:
    c31 = _load_c31(args)
    return _emit(g31mod.check_witnesses(c31, _g31_systems(c31)), args.format)


def cmd_g31_center(args: argparse.Namespace) -> int:
    c31 = _load_c31(args)
    return _emit(g31mod.check_center(c31, _g31_systems(c31)), args.format)


def cmd_g31_roots(args: argparse.Namespace) -> int:
    c31 = _load_c31(args)
    return _emit(g31mod.check_fulltwist_roots(c31, _g31_systems(c31)), args.format)


def cmd_g31_maps(args: argparse.Namespace) -> int:
    c31 = _load_c31(args)
    return _emit(g31mod.check_cross_object_maps(c31, _g31_systems(c31)), args.format)


# ---------------------------------------------------------------------------
# series
# ---------------------------------------------------------------------------

def cmd_series_verify(args: argparse.Namespace) -> int:
    params: dict[str, object] = {}
    needed = {"g11n": ("n",), "gm1n": ("m", "n"), "geen": ("e", "n"), "e8": ()}
    for field in needed[args.kind]:
        value = getattr(args, field)
        if value is None:
            raise SystemExit(f"--{field} is required for kind {args.kind}")
        params[field] = value
    if args.kind == "e8":
        params["cache"] = args.cache
    rep = series.verify_interval_equality(args.kind, params, args.q)
    return _emit(rep, args.format)


def cmd_series_ncp(args: argparse.Namespace) -> int:
    rep = series.ncp_correspondence(args.d, args.q)
    return _emit(rep, args.format)


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def _add_format(p: argparse.ArgumentParser) -> None:
    p.add_argument(
        "--format", choices=("text", "machine"), default="text",
        help="output style: human-readable text or key=value lines",
    )


def _add_cache(p: argparse.ArgumentParser) -> None:
    p.add_argument(
        "--cache", default="e8.gars",
        help="interval cache file (built fresh when missing)",
    )


def _add_caps(p: argparse.ArgumentParser) -> None:
    p.add_argument("--alg1-cap", type=int, default=6,
                   help="complement search word-length cap")
    p.add_argument("--alg4-cap", type=int, default=10_000,
                   help="right-reversing step cap")
    p.add_argument("--alg5-cap", type=int, default=8,
                   help="trivializing-multiplier length cap")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="garcat",
        description="Garside categories over dual braid monoids: "
        "intervals, divided categories, vertex-group presentations, "
        "and the monomial-series interval identities.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_int = sub.add_parser("interval", help="interval lattice commands")
    int_sub = p_int.add_subparsers(dest="subcommand", required=True)
    p = int_sub.add_parser("build", help="enumerate [1, c] and save the cache")
    p.add_argument("--group", choices=("e8",), default="e8")
    _add_cache(p)
    _add_format(p)
    p.set_defaults(func=cmd_interval_build)
    p = int_sub.add_parser("stats", help="report cached interval statistics")
    _add_cache(p)
    _add_format(p)
    p.set_defaults(func=cmd_interval_stats)

    p = sub.add_parser("divided", help="objects of the divided category")
    p.add_argument("--p", type=int, default=2)
    p.add_argument("--q", type=int, default=15)
    p.add_argument("--list-objects", action="store_true")
    _add_cache(p)
    _add_format(p)
    p.set_defaults(func=cmd_divided)

    p = sub.add_parser("orbits", help="twist orbits of the divided objects")
    p.add_argument("--p", type=int, default=2)
    p.add_argument("--q", type=int, default=15)
    _add_cache(p)
    _add_format(p)
    p.set_defaults(func=cmd_orbits)

    p_g31 = sub.add_parser("g31", help="the rank-8 / (2,15) pipeline")
    g31_sub = p_g31.add_subparsers(dest="subcommand", required=True)
    p = g31_sub.add_parser("loops", help="atomic loops at one vertex")
    p.add_argument("--object", choices=g31mod.OBJECT_NAMES, required=True)
    p.add_argument("--alg1-cap", type=int, default=6)
    _add_cache(p)
    _add_format(p)
    p.set_defaults(func=cmd_g31_loops)
    p = g31_sub.add_parser("present", help="derive and serialize a presentation")
    p.add_argument("--object", choices=g31mod.OBJECT_NAMES, required=True)
    p.add_argument("--out", help="write the presentation to this file")
    _add_caps(p)
    _add_cache(p)
    _add_format(p)
    p.set_defaults(func=cmd_g31_present)
    p = g31_sub.add_parser("verify", help="full pipeline verification")
    p.add_argument(
        "--object", choices=g31mod.OBJECT_NAMES + ("all",), required=True
    )
    _add_caps(p)
    _add_cache(p)
    _add_format(p)
    p.set_defaults(func=cmd_g31_verify)
    for name, func in (
        ("witnesses", cmd_g31_witnesses),
        ("center", cmd_g31_center),
        ("roots", cmd_g31_roots),
        ("maps", cmd_g31_maps),
    ):
        p = g31_sub.add_parser(name, help=f"run the {name} checks")
        _add_cache(p)
        _add_format(p)
        p.set_defaults(func=func)

    p_ser = sub.add_parser("series", help="monomial-series interval identities")
    ser_sub = p_ser.add_subparsers(dest="subcommand", required=True)
    p = ser_sub.add_parser(
        "verify",
        help="interval equality for one instance "
        "(intended ranges: n ≤ 10; e(n−1) ≤ 12 for geen)",
    )
    p.add_argument("--kind", choices=("g11n", "gm1n", "geen", "e8"),
                   required=True)
    p.add_argument("--n", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--e", type=int)
    p.add_argument("--q", type=int, required=True)
    _add_cache(p)
    _add_format(p)
    p.set_defaults(func=cmd_series_verify)
    p = ser_sub.add_parser(
        "ncp", help="noncrossing-partition model (intended range dq ≤ 8)"
    )
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    _add_format(p)
    p.set_defaults(func=cmd_series_ncp)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ResourceLimitError, DivergenceError) as exc:
        fmt = getattr(args, "format", "text")
        if fmt == "machine":
            sys.stdout.write(f"undecided={exc}\n")
        else:
            sys.stdout.write(f"undecided: {exc}\n")
        return EXIT_UNDECIDED
    except IntegrityError as exc:
        fmt = getattr(args, "format", "text")
        if fmt == "machine":
            sys.stdout.write(f"integrity-error={exc}\n")
        else:
            sys.stdout.write(f"integrity error: {exc}\n")
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
