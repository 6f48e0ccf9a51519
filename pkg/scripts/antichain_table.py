"""Maximum <=p antichain among co-trees of T_n with exactly N nodes."""

import argparse

from cotreelab.analysis import max_antichain, max_antichain_bruteforce
from cotreelab.cotree import cotrees_of_size, in_T
from cotreelab.morphism import leq_p_codes


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--classes", type=int, nargs="+", default=[2, 3])
    ap.add_argument("--max-nodes", type=int, default=8)
    args = ap.parse_args()

    leq = lambda a, b: leq_p_codes(a.code, b.code)  # noqa: E731
    print(f"{'n':>3} {'N':>3} {'items':>6} {'antichain':>10} {'subset scan':>12}")
    for n in args.classes:
        for N in range(1, args.max_nodes + 1):
            items = [T for T in cotrees_of_size(N) if in_T(T, n)]
            if not items:
                continue
            size = len(max_antichain(items, leq))
            cert = max_antichain_bruteforce(items, leq) if len(items) <= 15 else "-"
            print(f"{n:>3} {N:>3} {len(items):>6} {size:>10} {cert!s:>12}")


if __name__ == "__main__":
    main()
