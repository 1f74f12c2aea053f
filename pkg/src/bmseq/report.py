"""Plain-data views of the result types, plus text/JSON/CSV writers.

Rationals are written as "num/den" strings and surds via their canonical
``str``, so every report is exact and byte-stable for fixed inputs.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import asdict, is_dataclass
from fractions import Fraction

from bmseq.bounds import CheckRecord, SweepReport
from bmseq.conjectures import ConjectureReport
from bmseq.core import BMTable
from bmseq.surd import QuadraticSurd


def exact(x):
    """Recursively convert to JSON-safe values without losing exactness."""
    if isinstance(x, bool) or x is None:
        return x
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction):
        return f"{x.numerator}/{x.denominator}"
    if isinstance(x, QuadraticSurd):
        return str(x)
    if isinstance(x, dict):
        return {str(k): exact(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [exact(v) for v in x]
    if is_dataclass(x):
        return exact(asdict(x))
    if isinstance(x, str):
        return x
    raise TypeError(f"cannot serialize {type(x).__name__}")


def _record(r: CheckRecord) -> dict:
    out = {"l": r.ell, "m": r.m, "lhs": exact(r.lhs), "rhs": exact(r.rhs)}
    if r.extra is not None:
        out["extra"] = exact(r.extra)
    return out


def sweep_dict(rep: SweepReport, params: dict, runtime_ms: int | None) -> dict:
    out = {
        "suite": rep.spec_id,
        "params": exact(params),
        "examined": rep.examined,
        "violations": [_record(r) for r in rep.violations],
        "min_margin": None
        if rep.min_margin is None
        else {"l": rep.min_margin.ell, "m": rep.min_margin.m, "margin": exact(rep.min_margin.margin)},
    }
    if runtime_ms is not None:
        out["runtime_ms"] = runtime_ms
    return out


def conjecture_dict(cid: str, reports: list[ConjectureReport], params: dict, runtime_ms: int | None) -> dict:
    out = {
        "conjecture": cid,
        "params": exact(params),
        "holds": all(r.holds for r in reports),
        "reports": [
            {
                "id": r.conjecture,
                "params": exact(r.params),
                "holds": r.holds,
                "verified_window": exact(r.verified_window),
                "checks": [exact(c) for c in r.checks],
                "counterexamples": exact(r.counterexamples),
                "truncation": r.truncation,
                "assumptions": list(r.assumptions),
                "disclaimer": r.disclaimer,
                **({"values": exact(r.values)} if r.values else {}),
            }
            for r in reports
        ],
    }
    if runtime_ms is not None:
        out["runtime_ms"] = runtime_ms
    return out


def to_json(obj: dict) -> str:
    return json.dumps(obj, indent=2) + "\n"


# --------------------------------------------------------------------------
# text


def sweep_text(d: dict, statement: str = "") -> str:
    lines = [f"suite {d['suite']}  max_m={d['params'].get('max_m')}"]
    if statement:
        lines.append(f"  {statement}")
    lines.append(f"examined {d['examined']}  violations {len(d['violations'])}")
    for v in d["violations"][:20]:
        lines.append(f"  VIOLATION l={v['l']} m={v['m']}  lhs={v['lhs']}  rhs={v['rhs']}")
    if d["min_margin"]:
        mm = d["min_margin"]
        lines.append(f"min margin at l={mm['l']} m={mm['m']}: {mm['margin']}")
    lines.append("PASS" if not d["violations"] else "FAIL")
    if "runtime_ms" in d:
        lines.append(f"runtime {d['runtime_ms']} ms")
    return "\n".join(lines) + "\n"


def conjecture_text(d: dict) -> str:
    lines = [f"conjecture {d['conjecture']}  {json.dumps(d['params'])}"]
    for r in d["reports"]:
        status = "holds" if r["holds"] else "FAILS"
        lines.append(f"{r['id']} {json.dumps(r['params'])}: {status} on window {r['verified_window']}")
        for c in r["checks"]:
            if not c["holds"]:
                lines.append(f"  {c['name']}: violated, witness {c['witness']}")
        for k, v in r.get("values", {}).items():
            lines.append(f"  r_{k}({r['params'].get('m')}) = {v}")
        if r["counterexamples"]:
            lines.append(f"  counterexamples: {len(r['counterexamples'])} recorded")
    lines.append(f"truncation: {d['reports'][0]['truncation']}" if d["reports"] else "no reports")
    lines.append(f"note: {d['reports'][0]['disclaimer']}" if d["reports"] else "")
    lines.append("PASS" if d["holds"] else "FAIL")
    if "runtime_ms" in d:
        lines.append(f"runtime {d['runtime_ms']} ms")
    return "\n".join(lines) + "\n"


# --------------------------------------------------------------------------
# csv


def sweep_csv(rep: SweepReport) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["suite", "l", "m", "lhs", "rhs", "holds"])
    for r in rep.records or rep.violations:
        w.writerow([rep.spec_id, r.ell, r.m, exact(r.lhs), exact(r.rhs), int(r.holds)])
    return buf.getvalue()


def conjecture_csv(reports: list[ConjectureReport]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["id", "params", "check", "holds", "window_lo", "window_hi", "witness"])
    for r in reports:
        params = ";".join(f"{k}={v}" for k, v in r.params.items())
        for c in r.checks:
            lo, hi = c.window if c.window else ("", "")
            wit = "" if c.witness is None else json.dumps(exact(c.witness))
            w.writerow([r.conjecture, params, c.name, int(c.holds), lo, hi, wit])
    return buf.getvalue()


def table_csv(table: BMTable) -> str:
    """d_l(m) as ``m,l,numerator,denominator`` in (m, l) order."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["m", "l", "numerator", "denominator"])
    for m in range(table.max_m + 1):
        for ell in range(m + 1):
            d = table.d(ell, m)
            w.writerow([m, ell, d.numerator, d.denominator])
    return buf.getvalue()

