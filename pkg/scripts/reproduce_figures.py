"""Print invariants, Betti tables and canonical degrees for the bundled example graphs."""

from __future__ import annotations

import argparse
import json
import time
from pathlib import Path

from edgering.betti import graded_betti_recursion, pdim_and_type, regularity_closed_form
from edgering.classify import NotCompact, classify
from edgering.cone import canonical_generators, top_graded_betti
from edgering.graph import load_graph, matching_number, prune_leaves

DATA = Path(__file__).resolve().parent.parent / "data"


def report(path: Path) -> dict:
    start = time.perf_counter()
    g0, _ = prune_leaves(load_graph(path))
    c = classify(g0)
    if isinstance(c, NotCompact):
        return {"graph": path.name, "not_compact": c.to_json()}
    pt = pdim_and_type(c)
    table = graded_betti_recursion(c)
    return {
        "graph": path.name,
        "class": str(c),
        "t": c.t,
        "mat": matching_number(g0),
        "pdim": pt.pdim,
        "reg": regularity_closed_form(c)[1],
        "cm_type": pt.cm_type,
        "totals": table.totals(),
        "top_row": {j: b for (_, j), b in top_graded_betti(c).entries},
        "canonical_degrees": [v.degree for v in canonical_generators(c)],
        "table": table.render(),
        "seconds": round(time.perf_counter() - start, 3),
    }


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("graphs", nargs="*", type=Path, help="graph files (default: data/figure*.json)")
    ap.add_argument("--json", action="store_true", help="emit one JSON document instead of text")
    args = ap.parse_args()
    paths = args.graphs or sorted(DATA.glob("figure*.json"))
    reports = [report(p) for p in paths]
    if args.json:
        print(json.dumps(reports, indent=2, sort_keys=True))
        return
    for r in reports:
        print(f"== {r['graph']}: {r.get('class', 'not compact')}")
        if "not_compact" in r:
            print(f"   {r['not_compact']}")
            continue
        print(f"   t={r['t']} mat={r['mat']} pdim={r['pdim']} reg={r['reg']} type={r['cm_type']}  ({r['seconds']}s)")
        print(f"   total Betti numbers of the initial ideal: {r['totals']}")
        print(f"   top row of K[G] (j: beta): {r['top_row']}")
        print(f"   canonical generator degrees: {r['canonical_degrees']}")
        print("   " + r["table"].replace("\n", "\n   "))


if __name__ == "__main__":
    main()
