"""Dicyclic, index-two-cyclic and D_2n x C_2 families beyond the catalogue defaults.

For each member: witness degree, beta and exact beta_sep of the witness module,
and (unless --module-only) the subset search over all irreducibles.

    python scripts/family_sweep.py --dic 2 3 4 5 --ic2 16 32 --d2n 4 6
"""

import argparse
import time

from sepnoether import cli


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--dic", nargs="*", type=int, default=[2, 3, 4, 5], help="values of m for Dic_4m")
    ap.add_argument("--ic2", nargs="*", type=int, default=[16], help="orders 2^n")
    ap.add_argument("--d2n", nargs="*", type=int, default=[4, 6], help="values of n for D_2n x C_2")
    ap.add_argument("--module-only", action="store_true")
    args = ap.parse_args()

    keys = [f"dic:{4 * m}" for m in args.dic]
    keys += [f"ic2:{k}:{o}" for o in args.ic2 for k in ("ab", "m", "sd", "d")]
    keys += [f"d2nxc2:{2 * n}" for n in args.d2n]
    print(f"{'id':12} {'want':>4} {'witness':>7} {'beta(V)':>7} {'bsep(V)':>7} {'bsep(G)':>7} {'D':>3}  status  secs")
    for k in keys:
        t = time.time()
        r = cli.check_family_member(k, group_level=not args.module_only)
        g = "-" if r["betasep"] is None else r["betasep"]
        d = r.get("davenport", "-")
        print(f"{k:12} {r['expected_betasep']:>4} {r['lower_bound']:>7} {r['beta_witness_module']:>7} "
              f"{r['betasep_witness_module']:>7} {g:>7} {d:>3}  {r['status']:6}  {time.time() - t:.1f}", flush=True)


if __name__ == "__main__":
    main()
