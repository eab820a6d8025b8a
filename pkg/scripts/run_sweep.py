"""Run the per-instance cross-checks over the parameter sweep and summarize."""

from __future__ import annotations

import argparse
import json
import time
from collections import Counter

from edgering.config import Bounds
from edgering.sweep import type1_classes, type2_classes, type3_classes
from edgering.verify import CHECK_GROUPS, verify_instance


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-len", type=int, default=2, help="cycles per hub group (type 1 uses twice this)")
    ap.add_argument("--max-entry", type=int, default=2, help="largest half-length of an odd cycle")
    ap.add_argument("--checks", default=",".join(CHECK_GROUPS))
    ap.add_argument("--types", default="1,2,3")
    ap.add_argument("--out", help="write per-instance results as JSON")
    args = ap.parse_args()

    kinds = {int(k) for k in args.types.split(",")}
    classes = []
    if 1 in kinds:
        classes += type1_classes(2 * args.max_len, args.max_entry)
    if 2 in kinds:
        classes += type2_classes(args.max_len, args.max_entry)
    if 3 in kinds:
        classes += type3_classes(args.max_len, args.max_entry)

    checks = tuple(args.checks.split(","))
    bounds = Bounds.from_env()
    tally = Counter()
    rows = []
    start = time.perf_counter()
    for c in classes:
        t0 = time.perf_counter()
        rep = verify_instance(c, checks, bounds)
        for ch in rep.checks:
            tally[ch.status] += 1
        failed = [ch.name for ch in rep.failed]
        rows.append({"class": str(c), "ok": rep.ok, "failed": failed, "seconds": round(time.perf_counter() - t0, 3)})
        if failed:
            print(f"FAIL {c}: {', '.join(failed)}")
    elapsed = time.perf_counter() - start
    bad = sum(not r["ok"] for r in rows)
    print(f"{len(classes)} classes, {bad} with failures; checks: {dict(sorted(tally.items()))}; {elapsed:.1f}s")
    if args.out:
        with open(args.out, "w") as fh:
            json.dump(rows, fh, indent=2)


if __name__ == "__main__":
    main()
