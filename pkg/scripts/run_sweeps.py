"""Run every inequality suite (and the bracket check) and write one JSON report each."""

import argparse
import json
import time
from dataclasses import asdict, dataclass
from pathlib import Path

from bmseq import report
from bmseq.bounds import BOUND_SPECS, sweep
from bmseq.core import build_table


@dataclass
class SweepConfig:
    max_m: int = 200
    bracket_max_m: int = 150
    jobs: int = 1
    out_dir: str = "results/sweeps"


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-m", type=int, default=SweepConfig.max_m)
    ap.add_argument("--bracket-max-m", type=int, default=SweepConfig.bracket_max_m)
    ap.add_argument("--jobs", type=int, default=SweepConfig.jobs)
    ap.add_argument("--out-dir", default=SweepConfig.out_dir)
    cfg = SweepConfig(**{k.replace("-", "_"): v for k, v in vars(ap.parse_args()).items()})

    out = Path(cfg.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    table = build_table(max(cfg.max_m, cfg.bracket_max_m) + 1)
    summary = {"config": asdict(cfg), "suites": {}}
    jobs = [(sid, cfg.max_m) for sid in BOUND_SPECS] + [("BRACKET", cfg.bracket_max_m)]
    for sid, max_m in jobs:
        t0 = time.perf_counter()
        rep = sweep(sid, max_m, table, jobs=cfg.jobs)
        ms = round((time.perf_counter() - t0) * 1000)
        d = report.sweep_dict(rep, {"max_m": max_m}, ms)
        (out / f"{sid.lower()}.json").write_text(report.to_json(d))
        summary["suites"][sid] = {"examined": rep.examined, "violations": len(rep.violations), "runtime_ms": ms}
        print(f"{sid:14s} examined {rep.examined:6d}  violations {len(rep.violations)}  {ms} ms")
    (out / "summary.json").write_text(json.dumps(summary, indent=2) + "\n")


if __name__ == "__main__":
    main()
