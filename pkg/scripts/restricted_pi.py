"""Does the structure map reflect AND preserve order inside one comb stratum?

For each n, co-trees with comb number exactly n (so in T_{n+1} minus T_n)
are compared pairwise; we count pairs where <=p and the product order on
their decompositions disagree.
"""

import argparse
import itertools

from cotreelab.analysis import pair_leq, pi_map
from cotreelab.cotree import comb_number, enumerate_cotrees
from cotreelab.morphism import leq_p_codes


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--nodes", type=int, default=7)
    args = ap.parse_args()

    trees = [T for T in enumerate_cotrees(args.nodes) if T.n >= 2]
    strata: dict[int, list] = {}
    for T in trees:
        strata.setdefault(comb_number(T), []).append(T)

    print(f"{'stratum':>7} {'trees':>6} {'pairs':>7} {'leq':>6} {'not preserved':>14} {'not reflected':>14}")
    for n in sorted(strata):
        items = strata[n]
        images = {T.code: pi_map(T) for T in items}
        leq = lost = fake = 0
        example = None
        for X, Y in itertools.product(items, items):
            a = leq_p_codes(X.code, Y.code)
            b = pair_leq(images[X.code], images[Y.code])
            leq += a
            if a and not b:
                lost += 1
                example = example or (X.code, Y.code)
            if b and not a:
                fake += 1
        print(f"{n:>7} {len(items):>6} {len(items) ** 2:>7} {leq:>6} {lost:>14} {fake:>14}")
        if example:
            print(f"        first pair not preserved: {example[0]} <=p {example[1]}")


if __name__ == "__main__":
    main()
