"""Check that bi-p-morphic images never have a longer chain than the source."""

import argparse
import itertools

from cotreelab.cotree import enumerate_cotrees
from cotreelab.morphism import leq_p_codes


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--nodes", type=int, default=7)
    args = ap.parse_args()

    trees = list(enumerate_cotrees(args.nodes))
    pairs = bad = 0
    for X, Y in itertools.product(trees, trees):
        if leq_p_codes(X.code, Y.code):
            pairs += 1
            if X.poset.height() > Y.poset.height():
                bad += 1
                print(f"height grows: {Y.code} ->> {X.code}")
    print(f"{len(trees)} co-trees, {pairs} comparable pairs, {bad} with a taller image")


if __name__ == "__main__":
    main()
