"""Recompute beta_sep for every row of the order <= 16 table, both directions.

    python scripts/reproduce_table.py [--only "(16,4)"] [--out results/table.json]
"""

import argparse
import json
import time
from pathlib import Path

from sepnoether import catalog, cli


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--only", nargs="*", default=None)
    ap.add_argument("--prime", default="auto")
    ap.add_argument("--out", type=Path, default=None)
    args = ap.parse_args()

    keys = [e.key for e in catalog.table_entries()]
    if args.only:
        keys = [catalog.get(k).key for k in args.only]
    rows = []
    print(f"{'id':10} {'name':14} {'beta':>4} {'want':>4} {'lower':>5} {'upper':>5}  status  secs")
    for k in keys:
        t = time.time()
        r = cli.check_table_row(k, args.prime)
        e = catalog.get(k)
        lower = "-" if r["lower_bound"] is None else r["lower_bound"]
        print(f"{k:10} {e.name:14} {e.beta:>4} {e.betasep:>4} {lower:>5} {r['betasep']:>5}  {r['status']:6}"
              f"  {time.time() - t:.1f}", flush=True)
        rows.append(r)
    if args.out:
        args.out.parent.mkdir(parents=True, exist_ok=True)
        args.out.write_text(json.dumps({"rows": rows}, sort_keys=True, indent=2) + "\n")


if __name__ == "__main__":
    main()
