"""Compare minimal_k with an elementwise brute force on random ball coverings."""

import argparse
import itertools
import random

from valifs.balls import ClopenSet, unit_ball
from valifs.dvr import EQUAL, MIXED, DvrContext
from valifs.maps import Ifs, apply_word
from valifs.verify import Covering, minimal_k, replay_sc, verify_sc


def random_covering(rng, ctx, max_radius):
    leaves, todo = [], [unit_ball(ctx)]
    while todo:
        b = todo.pop()
        if b.radius == 0 or (b.radius < max_radius and rng.random() < 0.6):
            todo.extend(b.children())
        else:
            leaves.append(b)
    rng.shuffle(leaves)
    groups = [[] for _ in range(rng.randint(2, len(leaves)))]
    for i, b in enumerate(leaves):
        groups[i if i < len(groups) else rng.randrange(len(groups))].append(b)
    return Covering(tuple(ClopenSet(tuple(g)) for g in groups), unit_ball(ctx))


def brute_minimal_k(F, cov):
    pts = list(F.ctx.elements())
    for k in itertools.count():
        if all(any(all(apply_word(F, w, x) in s for x in pts) for s in cov.sets)
               for w in F.words(k)):
            return k


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--p", type=int, default=2)
    ap.add_argument("--mode", choices=[EQUAL, MIXED], default=EQUAL)
    ap.add_argument("--precision", type=int, default=6)
    ap.add_argument("--max-radius", type=int, default=4)
    ap.add_argument("--trials", type=int, default=200)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    ctx = DvrContext(args.p, args.mode, args.precision)
    F = Ifs.digit_prepend(ctx)
    rng = random.Random(args.seed)
    mismatches = 0
    for t in range(args.trials):
        cov = random_covering(rng, ctx, args.max_radius)
        rep = verify_sc(F, cov)
        mk, bk = minimal_k(F, cov), brute_minimal_k(F, cov)
        ok = rep.holds and replay_sc(rep, F, cov) and mk == bk and mk <= rep.k
        mismatches += not ok
        if not ok:
            print(f"trial {t}: verify k={rep.k} minimal {mk} brute {bk}")
    print(f"{args.trials} trials, {mismatches} mismatches")
    return 1 if mismatches else 0


if __name__ == "__main__":
    raise SystemExit(main())
