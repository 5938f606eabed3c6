"""beta and beta_sep of W1 + W2 + U over the characters U of Dic8 x C2 and C4 x| C4.

Shows beta_sep = 6 on every such module while beta reaches 7 for some of them.

    python scripts/sum_modules.py [--group "(16,12)"] [--no-betasep]
"""

import argparse

from sepnoether import catalog, invar, septool


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--group", nargs="*", default=["(16,12)", "(16,4)"])
    ap.add_argument("--no-betasep", action="store_true", help="skip the radical computation")
    args = ap.parse_args()
    for key in args.group:
        b = catalog.build(key)
        print(f"{b.entry.name} over F_{b.field.p}")
        for u in b.irreducibles:
            if u.size != 1 or all(M == ((1,),) for M in u.matrices):
                continue
            m = b.module(f"W1+W2+{u.label}")
            gs = invar.minimal_generators(m)
            line = f"  W1+W2+{u.label:14} beta={gs.beta} degrees={gs.degrees}"
            if not args.no_betasep:
                line += f" betasep={septool.betasep_via_radical(m, gs).value}"
            print(line, flush=True)


if __name__ == "__main__":
    main()
