"""Time build_table at increasing sizes and check the cache round-trip."""

import argparse
import tempfile
import time
from pathlib import Path

from bmseq.core import build_table, read_table, write_table


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--sizes", type=int, nargs="+", default=[250, 500, 1000, 2000])
    ap.add_argument("--cache-m", type=int, default=300, help="size used for the round-trip check")
    args = ap.parse_args()

    for n in args.sizes:
        t0 = time.perf_counter()
        t = build_table(n)
        dt = time.perf_counter() - t0
        digits = len(str(t.N(n // 2, n)))
        print(f"max_m={n:5d}  entries={(n + 1) * (n + 2) // 2:8d}  {dt:7.2f}s  middle entry has {digits} digits")
        del t

    t = build_table(args.cache_m)
    with tempfile.TemporaryDirectory() as tmp:
        path = Path(tmp) / "table.bmt"
        t0 = time.perf_counter()
        write_table(t, path)
        back = read_table(path)
        dt = time.perf_counter() - t0
        size = path.stat().st_size
    print(f"cache round-trip at max_m={args.cache_m}: lossless={back == t}, {size / 1e6:.1f} MB, {dt:.2f}s")


if __name__ == "__main__":
    main()
