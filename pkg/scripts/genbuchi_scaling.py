"""Time the generalized Büchi decision on generated hard instances by target count.

The tuple relation has arity 2k, so cost grows quickly with k; this shows
where the word and tree procedures stop being interactive.
"""
import argparse
import random
import statistics
import time
from dataclasses import dataclass

from ramsey_automata.reductions import gen_hard_genbuchi, genbuchi_truth, random_nta, random_word_nfa
from ramsey_automata.tree_apps import gen_buchi_rec_tree
from ramsey_automata.word_apps import gen_buchi_rec

SIGMA = ("a", "b")
TREE_RANKS = {"f": 2, "c": 0, "d": 0}


@dataclass
class ScalingConfig:
    max_targets: int = 3
    samples: int = 5
    states: int = 2
    tree: bool = False
    seed: int = 0


def sample(cfg: ScalingConfig, rng: random.Random, k: int):
    if cfg.tree:
        targets = [random_nta(rng, rng.randint(1, cfg.states), TREE_RANKS, 0.4) for _ in range(k)]
        return targets, gen_hard_genbuchi(targets, ("d", ())), gen_buchi_rec_tree
    targets = [random_word_nfa(rng, SIGMA, cfg.states) for _ in range(k)]
    c = tuple(rng.choice(SIGMA) for _ in range(rng.randint(0, 2)))
    return targets, gen_hard_genbuchi(targets, c), gen_buchi_rec


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-targets", type=int, default=3)
    ap.add_argument("--samples", type=int, default=5)
    ap.add_argument("--states", type=int, default=2)
    ap.add_argument("--tree", action="store_true")
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    cfg = ScalingConfig(args.max_targets, args.samples, args.states, args.tree, args.seed)
    rng = random.Random(cfg.seed)
    print(f"{'k':>2} {'median s':>9} {'max s':>8} {'agree':>6}")
    for k in range(1, cfg.max_targets + 1):
        times, agree = [], 0
        for _ in range(cfg.samples):
            targets, inst, decide = sample(cfg, rng, k)
            t = time.perf_counter()
            agree += decide(inst.query) == genbuchi_truth(targets)
            times.append(time.perf_counter() - t)
        print(f"{k:>2} {statistics.median(times):>9.2f} {max(times):>8.2f} {agree:>3}/{cfg.samples}")


if __name__ == "__main__":
    main()
