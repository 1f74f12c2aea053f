"""bmseq: build the triangle, run the inequality suites, conjecture checks and identities.

Exit status is 0 when everything checked holds, 1 when some property is
violated, and 2 on usage or domain errors.
"""

from __future__ import annotations

import argparse
import os
import sys
import time
from dataclasses import dataclass
from pathlib import Path

from bmseq import bounds, conjectures, identities, report
from bmseq.core import BMTable, CacheFormatError, DomainError, build_table, extend_table, read_table, write_table
from bmseq.logprops import LengthError

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE = 0, 1, 2

SUITES = {
    "ub-transposed": "UB_TRANSPOSED",
    "lb-transposed": "LB_TRANSPOSED",
    "cor-m2": "COR_M2",
    "prop-chain": "PROP_CHAIN",
    "w-lower": "W_LOWER",
    "chen-xia-ub": "CHEN_XIA_UB",
    "chen-gu-ub": "CHEN_GU_UB",
    "chen-gu-lb": "CHEN_GU_LB",
    "u-lower": "U_LOWER",
    "ineq-110": "INEQ_110",
    "bracket": "BRACKET",
}

CONJECTURE_IDS = ("c11", "c41", "c42", "c43", "c44", "c45")


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    max_m: int = 200
    ell_range: tuple[int, int] | None = None
    depth: int = 4
    fmt: str = "text"
    cache: str | None = None
    jobs: int = 1
    out: str | None = None
    timing: bool = True


# --------------------------------------------------------------------------
# table handling


def load_table(max_m: int, cache: str | None) -> BMTable:
    """Table covering ``max_m``, read from and written back to ``cache`` when given."""
    if not cache:
        return build_table(max_m)
    path = Path(cache)
    if path.exists():
        table = read_table(path)
        if table.covers(max_m):
            return table
        table = extend_table(table, max_m)
    else:
        table = build_table(max_m)
    write_table(table, path)
    return table


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _ms(t0: float) -> int:
    return round((time.perf_counter() - t0) * 1000)


# --------------------------------------------------------------------------
# subcommands


def cmd_table(cfg: RunConfig, args) -> int:
    if cfg.max_m < 0:
        raise UsageError("--max-m: must be nonnegative")
    t0 = time.perf_counter()
    table = load_table(cfg.max_m, cfg.cache)
    if cfg.fmt == "csv":
        _emit(report.table_csv(table), cfg.out)
    elif cfg.fmt == "json":
        d = {"max_m": table.max_m, "entries": (table.max_m + 1) * (table.max_m + 2) // 2}
        if args.show:
            d["rows"] = [[report.exact(x) for x in table.row(m)] for m in range(min(table.max_m, cfg.max_m) + 1)]
        if cfg.timing:
            d["runtime_ms"] = _ms(t0)
        _emit(report.to_json(d), cfg.out)
    else:
        lines = [f"table max_m={table.max_m} entries={(table.max_m + 1) * (table.max_m + 2) // 2}"]
        if args.show:
            for m in range(min(table.max_m, cfg.max_m) + 1):
                lines.append(f"m={m}: " + " ".join(report.exact(x) for x in table.row(m)))
        if cfg.timing:
            lines.append(f"runtime {_ms(t0)} ms")
        _emit("\n".join(lines) + "\n", cfg.out)
    return EXIT_OK


def cmd_export(cfg: RunConfig, args) -> int:
    if not cfg.out:
        raise UsageError("--out: export needs an output path")
    if args.from_cache:
        table = read_table(args.from_cache)
        if cfg.max_m is not None and table.covers(cfg.max_m) and table.max_m > cfg.max_m:
            table = BMTable(cfg.max_m, table.rows[: cfg.max_m + 1])
    else:
        table = build_table(cfg.max_m)
    if args.as_ == "csv":
        Path(cfg.out).write_text(report.table_csv(table))
    else:
        write_table(table, cfg.out)
    return EXIT_OK


def cmd_check(cfg: RunConfig, args) -> int:
    spec_id = SUITES[args.suite]
    t0 = time.perf_counter()
    if spec_id == "BRACKET":
        min_m, ahead, needs = 2, 0, True
    else:
        spec = bounds.BOUND_SPECS[spec_id]
        min_m, ahead, needs = spec.min_m, spec.rows_ahead, spec.needs_table
    # fail on an empty domain before building anything
    if cfg.max_m < min_m:
        raise DomainError(f"{spec_id}: no domain points with m <= {cfg.max_m}")
    table = load_table(cfg.max_m + ahead, cfg.cache) if needs else None
    rep = bounds.sweep(spec_id, cfg.max_m, table, jobs=cfg.jobs, keep_records=cfg.fmt == "csv")
    params = {"max_m": cfg.max_m}
    d = report.sweep_dict(rep, params, _ms(t0) if cfg.timing else None)
    if cfg.fmt == "json":
        _emit(report.to_json(d), cfg.out)
    elif cfg.fmt == "csv":
        _emit(report.sweep_csv(rep), cfg.out)
    else:
        statement = "" if spec_id == "BRACKET" else bounds.BOUND_SPECS[spec_id].statement
        _emit(report.sweep_text(d, statement), cfg.out)
    return EXIT_OK if rep.ok else EXIT_VIOLATION


def cmd_conjecture(cfg: RunConfig, args) -> int:
    cid = args.id.lower()
    t0 = time.perf_counter()
    rows = None
    if args.row is not None:
        if cid not in ("c11", "c44"):
            raise UsageError("--row: only meaningful for c11 and c44")
        rows = (args.row, args.row)
    m_need = args.row if args.row is not None else cfg.max_m
    table = load_table(m_need, cfg.cache)
    reports = conjectures.run_conjecture(
        cid, cfg.max_m, cfg.ell_range, cfg.depth, table, jobs=cfg.jobs, rows=rows, keep_values=rows is not None
    )
    params = {"max_m": cfg.max_m, "depth": cfg.depth}
    if cfg.ell_range:
        params["l_range"] = list(cfg.ell_range)
    if rows:
        params["row"] = args.row
    d = report.conjecture_dict(cid, reports, params, _ms(t0) if cfg.timing else None)
    if cfg.fmt == "json":
        _emit(report.to_json(d), cfg.out)
    elif cfg.fmt == "csv":
        _emit(report.conjecture_csv(reports), cfg.out)
    else:
        _emit(report.conjecture_text(d), cfg.out)
    return EXIT_OK if d["holds"] else EXIT_VIOLATION


def cmd_identities(cfg: RunConfig, args) -> int:
    t0 = time.perf_counter()
    if args.id:
        ids = [args.id]
        unknown = [i for i in ids if i not in identities.IDENTITIES and i not in identities.CLAIMS]
        if unknown:
            raise UsageError(f"--id: unknown identity {unknown[0]!r}")
    elif args.all:
        ids = list(identities.IDENTITIES) + list(identities.CLAIMS)
    else:
        ids = None
    if ids is None:
        lines = [f"{r.id:12s} {r.kind:15s} {r.description}" for r in identities.IDENTITIES.values()]
        lines += [f"{c.id:12s} {'sign claim':15s} {c.description}" for c in identities.CLAIMS.values()]
        _emit("\n".join(lines) + "\n", cfg.out)
        return EXIT_OK

    results = []
    for i in ids:
        if i in identities.IDENTITIES:
            rec = identities.IDENTITIES[i]
            if rec.kind == "polynomial":
                res = identities.certify_poly_identity(rec)
            else:
                res = identities.check_surd_identity(rec)
            results.append({"id": i, "kind": rec.kind, "method": res.method, "points": res.points,
                            "passed": res.passed, "witness": report.exact(res.witness)})
        else:
            rep = identities.positivity_scan(i)
            results.append({"id": i, "kind": "sign claim", "method": rep.label, "points": rep.examined,
                            "passed": rep.ok, "witness": report.exact(rep.violations[:1])})
    ok = all(r["passed"] for r in results)
    if cfg.fmt == "json":
        d = {"identities": results, "passed": ok}
        if cfg.timing:
            d["runtime_ms"] = _ms(t0)
        _emit(report.to_json(d), cfg.out)
    elif cfg.fmt == "csv":
        lines = ["id,kind,method,points,passed"]
        lines += [f"{r['id']},{r['kind']},{r['method']},{r['points']},{int(r['passed'])}" for r in results]
        _emit("\n".join(lines) + "\n", cfg.out)
    else:
        lines = [
            f"{'PASS' if r['passed'] else 'FAIL'} {r['id']:12s} {r['kind']:15s} {r['points']} points ({r['method']})"
            for r in results
        ]
        lines.append(f"{sum(r['passed'] for r in results)}/{len(results)} passed")
        _emit("\n".join(lines) + "\n", cfg.out)
    return EXIT_OK if ok else EXIT_VIOLATION


# --------------------------------------------------------------------------
# parser


def _ell_range(text: str) -> tuple[int, int]:
    try:
        if ".." in text:
            lo, hi = text.split("..")
        else:
            lo = hi = text
        return int(lo), int(hi)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected L or LO..HI, got {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--max-m", type=int, default=200, help="largest row index (default 200)")
    common.add_argument("--format", choices=["text", "json", "csv"], default="text")
    common.add_argument("--cache", default=os.environ.get("BMSEQ_CACHE"), help="BMTABLE cache file (env BMSEQ_CACHE)")
    common.add_argument("--jobs", type=int, default=1, help="worker processes")
    common.add_argument("--out", help="write output here instead of stdout")
    common.add_argument("--no-timing", action="store_true", help="omit wall time, for byte-stable output")

    p = argparse.ArgumentParser(prog="bmseq", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    t = sub.add_parser("table", parents=[common], help="build (or load) the triangle")
    t.add_argument("--show", action="store_true", help="print the rows")

    c = sub.add_parser("check", parents=[common], help="sweep one inequality suite")
    c.add_argument("--suite", required=True, choices=sorted(SUITES))

    k = sub.add_parser("conjecture", parents=[common], help="finite-depth conjecture check")
    k.add_argument("--id", required=True, type=str.lower, choices=CONJECTURE_IDS)
    k.add_argument("--depth", "--order", dest="depth", type=int, default=4, help="L depth or R order (default 4)")
    k.add_argument("--l", dest="ell", type=_ell_range, help="l or LO..HI for column conjectures")
    k.add_argument("--row", type=int, help="single row m for c11/c44 (c44 lists every r_l(m))")

    i = sub.add_parser("identities", parents=[common], help="certify registry identities and sign claims")
    g = i.add_mutually_exclusive_group()
    g.add_argument("--id")
    g.add_argument("--all", action="store_true")

    e = sub.add_parser("export", parents=[common], help="write the table as CSV or BMTABLE")
    e.add_argument("--as", dest="as_", choices=["csv", "bmtable"], default="bmtable")
    e.add_argument("--from-cache", help="export an existing BMTABLE file instead of rebuilding")
    return p


COMMANDS = {
    "table": cmd_table,
    "check": cmd_check,
    "conjecture": cmd_conjecture,
    "identities": cmd_identities,
    "export": cmd_export,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK
    cfg = RunConfig(
        command=args.command,
        max_m=args.max_m,
        ell_range=getattr(args, "ell", None),
        depth=getattr(args, "depth", 4),
        fmt=args.format,
        cache=args.cache,
        jobs=max(1, args.jobs),
        out=args.out,
        timing=not args.no_timing,
    )
    try:
        return COMMANDS[args.command](cfg, args)
    except UsageError as e:
        print(f"bmseq: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (DomainError, LengthError, CacheFormatError) as e:
        print(f"bmseq: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as e:
        print(f"bmseq: {e.strerror or e}: {e.filename}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
