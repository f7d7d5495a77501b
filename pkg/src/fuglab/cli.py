"""Command-line interface.

Every command prints one JSON document on stdout and writes its artifacts
plus ``manifest.json`` into ``--out``. Exit status is 0 on success, 1 when
the requested check produced a refutation or FAIL verdict, 2 on bad input.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import acceptance, bessel, euclid, report
from .config import resolve_budget
from .groups import FiniteAbelianGroup, GroupSubset, canonical_form, dft, subset_stream
from .spectra import BudgetExceeded, find_spectra, fuglede_scan, verify_spectrum
from .tiling import find_tiling_complements, is_tile, verify_tiling


class UsageError(Exception):
    pass


def _load_json(text: str):
    if text.startswith("@"):
        text = Path(text[1:]).read_text(encoding="utf-8")
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise UsageError(f"bad JSON: {e}") from None


def _group(text: str) -> FiniteAbelianGroup:
    """``6`` or ``2,4`` (factors), or a JSON object ``{"factors": [...]}``."""
    text = text.strip()
    if text.startswith(("{", "@")):
        return FiniteAbelianGroup.from_json(_load_json(text))
    try:
        return FiniteAbelianGroup(tuple(int(x) for x in text.split(",")))
    except ValueError:
        raise UsageError(f"cannot parse group {text!r}") from None


def _elements(text: str) -> list:
    text = text.strip()
    if text.startswith(("[", "@")):
        return _load_json(text)
    return [int(x) for x in text.split(",") if x.strip()]


def _subset(args, which="set") -> GroupSubset:
    value = getattr(args, which)
    if value.strip().startswith(("{", "@")):
        return GroupSubset.from_json(_load_json(value))
    if args.group is None:
        raise UsageError(f"--{which} given as a list needs --group")
    return GroupSubset.from_elements(_group(args.group), _elements(value))


def _threads(args) -> int:
    if getattr(args, "threads", None):
        return args.threads
    return int(os.environ.get("FUGLAB_THREADS", "1"))


# group


def cmd_group(args, man):
    if args.action == "dft":
        A = _subset(args)
        man.add_input("set", A.to_json())
        return dft(A, args.backend).to_json(), True
    if args.action == "canonical":
        A = _subset(args)
        man.add_input("set", A.to_json())
        return canonical_form(A, args.automorphisms).to_json(), True
    G = _group(args.group)
    shard = tuple(int(x) for x in args.shard.split("/")) if args.shard else None
    out = [list(A.elements) for A in subset_stream(G, args.size, args.canonical, args.automorphisms, shard)]
    return {"group": G.to_json(), "size": args.size, "count": len(out), "subsets": out}, True


# tile


def cmd_tile(args, man):
    A = _subset(args)
    man.add_input("set", A.to_json())
    if args.action == "verify":
        T = _subset(args, "translates")
        res = verify_tiling(A, T, args.level)
        return {"certificate" if res else "refutation": res.to_json()}, bool(res)
    if args.action == "find":
        Ts = find_tiling_complements(A, args.level)
        return [{"complement": list(T.elements)} for T in Ts], bool(Ts)
    ok, cert = is_tile(A)
    return {"isTile": ok, "certificate": cert.to_json() if cert else None}, ok


# spec


def cmd_spec(args, man):
    if args.action == "scan":
        groups = [_group(args.group)] if args.group else [
            FiniteAbelianGroup.cyclic(n) for n in range(2, args.max_order + 1)
        ]
        out, ok = [], True
        for G in groups:
            rep = fuglede_scan(G, args.max_size, args.budget, _threads(args))
            ok &= rep.passed
            name = "scan_" + "x".join(map(str, G.factors)) + ".json"
            report.dump_json(rep.to_json(), Path(args.out) / name)
            man.artifacts.append(name)
            out.append({"group": G.to_json(), "counts": rep.counts, "discrepancies": rep.discrepancies,
                        "seconds": round(rep.seconds, 3)})
        return out, ok
    A = _subset(args)
    man.add_input("set", A.to_json())
    if args.action == "verify":
        res = verify_spectrum(A, _elements(args.freqs))
        return {"certificate" if res else "refutation": res.to_json()}, bool(res)
    spectra = find_spectra(A, args.backend, args.limit)
    return [{"spectrum": list(s)} for s in spectra], bool(spectra)


# euclid


def _polygon(args) -> euclid.Polygon:
    if not args.polygon:
        return euclid.Polygon.standard_triangle()
    return euclid.Polygon.from_json(_load_json(args.polygon))


def cmd_euclid(args, man):
    a = args.action
    if a == "ft":
        P = _polygon(args)
        man.add_input("polygon", P.to_json())
        v = complex(euclid.polygon_ft(P, args.xi, args.eta))
        return {"xi": args.xi, "eta": args.eta, "re": v.real, "im": v.imag, "abs": abs(v)}, True
    if a == "zeros":
        name = "zero_grid.csv"
        rows = list(report.zero_grid_rows(args.radius))
        report.write_csv(Path(args.out) / name, report.ZERO_GRID_COLUMNS, rows)
        man.artifacts.append(name)
        members = [r for r in rows if r[2]]
        others = [r for r in rows if not r[2]]
        return {
            "radius": args.radius,
            "points": len(rows),
            "zeros": len(members),
            "maxZeroModulus": max(r[3] for r in members) if members else None,
            "minNonzeroModulus": min(r[3] for r in others),
            "artifact": name,
        }, True
    if a == "strip":
        scan = euclid.zero_free_strip_scan(args.K, args.eps, args.step, args.step, keep_grid=args.csv)
        if args.csv:
            name = "strip.csv"
            report.write_csv(Path(args.out) / name, report.STRIP_COLUMNS, report.strip_rows(scan))
            man.artifacts.append(name)
        return scan.to_json(), scan.passed
    if a == "gradient":
        C = euclid.calibrate_gradient_constant()
        xi, eta = euclid.random_annulus(args.samples, 1.0, 100.0, args.seed)
        m = float(euclid.scaled_gradient(xi, eta).max())
        bound = (1 + args.slack) * C
        return {"calibratedC": C, "testMax": m, "bound": bound, "passed": m <= bound}, m <= bound
    if a == "density":
        fam = euclid.AntiDiagonal() if args.family == "antidiagonal" else euclid.Lattice.integer()
        rows = []
        for R in args.radii:
            n, d = euclid.density_counter(fam, R)
            rows.append({"R": R, "count": n, "density": d})
        return rows, True
    P = _polygon(args) if args.polygon else euclid.Polygon.box()
    L = euclid.Lattice(_load_json(args.lattice)) if args.lattice else euclid.Lattice.integer()
    rep = euclid.lattice_parseval_check(P, L, tuple(args.t), args.truncation)
    return rep.to_json(), rep.passed


# disk


def cmd_disk(args, man):
    if args.action == "zeros":
        T = bessel.zero_table(args.count)
        return T.to_json(), True
    if args.action == "orth":
        S = bessel.orth_search(args.radius, args.strategy)
        return {"radius": args.radius, "strategy": args.strategy, "size": len(S), **S.to_json(),
                "minDistance": S.min_distance if len(S) > 1 else None}, True
    S = bessel.FrequencySet.from_json(_load_json(args.input))
    man.add_input("input", S.to_json())
    rep = bessel.distance_gap_demo(S)
    name = "gaps.csv"
    report.write_csv(Path(args.out) / name, report.GAP_COLUMNS, report.gap_rows(rep))
    man.artifacts.append(name)
    return rep.to_json(), rep.passed


# repro


def cmd_repro(args, man):
    if args.which == "list":
        return [{"criterion": c.number, "title": c.title} for c in acceptance.CRITERIA], True
    numbers = None if args.which == "all" else [int(args.which)]
    if numbers and not 1 <= numbers[0] <= len(acceptance.CRITERIA):
        raise UsageError(f"no criterion {numbers[0]}")
    results = acceptance.run(numbers, args.budget)
    for r in results:
        print(r.line(), file=sys.stderr)
    out = [r.to_json() for r in results]
    report.dump_json(out, Path(args.out) / "acceptance.json")
    report.write_csv(Path(args.out) / "acceptance.csv", report.SUMMARY_COLUMNS,
                     ((r.number, r.title, r.passed, round(r.seconds, 3)) for r in results))
    man.artifacts += ["acceptance.json", "acceptance.csv"]
    return out, all(r.passed for r in results)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", default="./fuglab_out", help="artifact directory (default ./fuglab_out)")
    common.add_argument("--threads", type=int, default=None, help="worker processes (env FUGLAB_THREADS)")

    p = argparse.ArgumentParser(prog="fuglab", description="Tilings, spectra and Fourier zero sets.")
    sub = p.add_subparsers(dest="command", required=True)

    def with_set(sp, need_set=True):
        sp.add_argument("--group", help="factors, e.g. 12 or 2,4, or a JSON object")
        if need_set:
            sp.add_argument("--set", required=True, help="elements, e.g. 0,3, or a subset JSON object / @file")

    g = sub.add_parser("group", parents=[common], help="finite abelian groups")
    gs = g.add_subparsers(dest="action", required=True)
    sp = gs.add_parser("dft", parents=[common])
    with_set(sp)
    sp.add_argument("--backend", choices=["float", "exact"], default="float")
    sp = gs.add_parser("canonical", parents=[common])
    with_set(sp)
    sp.add_argument("--automorphisms", action="store_true")
    sp = gs.add_parser("stream", parents=[common])
    sp.add_argument("--group", required=True)
    sp.add_argument("--size", type=int, required=True)
    sp.add_argument("--canonical", action="store_true")
    sp.add_argument("--automorphisms", action="store_true")
    sp.add_argument("--shard", help="i/k")
    g.set_defaults(func=cmd_group)

    t = sub.add_parser("tile", parents=[common], help="tiling complements")
    ts = t.add_subparsers(dest="action", required=True)
    sp = ts.add_parser("verify", parents=[common])
    with_set(sp)
    sp.add_argument("--translates", required=True)
    sp.add_argument("--level", type=int, default=1)
    sp = ts.add_parser("find", parents=[common])
    with_set(sp)
    sp.add_argument("--level", type=int, default=1)
    sp = ts.add_parser("is-tile", parents=[common])
    with_set(sp)
    t.set_defaults(func=cmd_tile)

    s = sub.add_parser("spec", parents=[common], help="spectra and the Fuglede scan")
    ss = s.add_subparsers(dest="action", required=True)
    sp = ss.add_parser("verify", parents=[common])
    with_set(sp)
    sp.add_argument("--freqs", required=True)
    sp = ss.add_parser("find", parents=[common])
    with_set(sp)
    sp.add_argument("--backend", choices=["float", "exact"], default="float")
    sp.add_argument("--limit", type=int)
    sp = ss.add_parser("scan", parents=[common])
    sp.add_argument("--group")
    sp.add_argument("--max-order", type=int, default=12)
    sp.add_argument("--max-size", type=int)
    sp.add_argument("--budget", default="desk", help="desk, small, large or an integer")
    s.set_defaults(func=cmd_spec)

    e = sub.add_parser("euclid", parents=[common], help="triangle and polygon transforms")
    es = e.add_subparsers(dest="action", required=True)
    sp = es.add_parser("ft", parents=[common])
    sp.add_argument("xi", type=float)
    sp.add_argument("eta", type=float)
    sp.add_argument("--polygon", help="JSON {\"vertices\": ...} or @file")
    sp = es.add_parser("zeros", parents=[common])
    sp.add_argument("--radius", type=int, default=50)
    sp = es.add_parser("strip", parents=[common])
    sp.add_argument("--K", type=float)
    sp.add_argument("--eps", type=float)
    sp.add_argument("--step", type=float)
    sp.add_argument("--csv", action="store_true", help="write the scanned grid to strip.csv")
    sp = es.add_parser("gradient", parents=[common])
    sp.add_argument("--samples", type=int, default=1000)
    sp.add_argument("--seed", type=int, default=7)
    sp.add_argument("--slack", type=float, default=0.05)
    sp = es.add_parser("density", parents=[common])
    sp.add_argument("--family", choices=["antidiagonal", "integer"], default="antidiagonal")
    sp.add_argument("--radii", type=float, nargs="+", default=[10, 100, 1000])
    sp = es.add_parser("parseval", parents=[common])
    sp.add_argument("--polygon")
    sp.add_argument("--lattice", help="JSON basis matrix, columns are generators")
    sp.add_argument("--t", type=float, nargs=2, default=[0.0, 0.0])
    sp.add_argument("--truncation", type=float)
    e.set_defaults(func=cmd_euclid)

    d = sub.add_parser("disk", parents=[common], help="Bessel zeros and disk orthogonal sets")
    ds = d.add_subparsers(dest="action", required=True)
    sp = ds.add_parser("zeros", parents=[common])
    sp.add_argument("--count", type=int, default=100)
    sp = ds.add_parser("orth", parents=[common])
    sp.add_argument("--radius", type=float, required=True)
    sp.add_argument("--strategy", choices=["exact", "greedy"], default="exact")
    sp = ds.add_parser("gaps", parents=[common])
    sp.add_argument("--input", required=True, help="JSON {\"points\": ...} or @file")
    d.set_defaults(func=cmd_disk)

    r = sub.add_parser("repro", parents=[common], help="run acceptance criteria")
    r.add_argument("which", help="all, list, or a criterion number")
    r.add_argument("--budget", default="desk")
    r.set_defaults(func=cmd_repro)
    return p


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    man = report.RunManifest(["fuglab", *argv])
    try:
        if getattr(args, "budget", None) is not None:
            resolve_budget(args.budget)
        result, ok = args.func(args, man)
    except (UsageError, ValueError, KeyError, TypeError, FileNotFoundError) as e:
        print(f"fuglab: error: {e}", file=sys.stderr)
        return 2
    except BudgetExceeded as e:
        print(f"fuglab: budget exceeded: {e}", file=sys.stderr)
        return 2
    man.finish(ok=bool(ok))
    man.write(args.out)
    sys.stdout.write(report.dump_json(result))
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
