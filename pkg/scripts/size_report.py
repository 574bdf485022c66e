"""State counts of the clique constructions against their polynomial bounds.

Prints one row per (relation, construction) for the word and tree corpora
plus seeded random bottom-up deterministic relations.
"""
import argparse
import random
import time
from dataclasses import dataclass

from ramsey_automata import corpus
from ramsey_automata.tree_ramsey import check_transitive, comb_nbta, pick_strategy, size_bound_tree
from ramsey_automata.word_ramsey import build_comb_tracks, build_ramsey_buchi, size_bound


@dataclass
class SizeReportConfig:
    random_relations: int = 10
    max_states: int = 3
    seed: int = 0


def rows(cfg: SizeReportConfig):
    for inst in corpus.word_corpus():
        tracks, product = size_bound(inst.relation)
        t = time.perf_counter()
        n_tracks = len(build_comb_tracks(inst.relation).states)
        n_product = len(build_ramsey_buchi(inst.relation).states)
        yield inst.name, "word tracks", n_tracks, tracks, time.perf_counter() - t
        yield inst.name, "word product", n_product, product, None
    rng = random.Random(cfg.seed)
    trees = [(i.name, i.relation) for i in corpus.tree_corpus()]
    trees += [(f"random-dup-{k}", corpus.random_dup(rng, rng.randint(1, cfg.max_states)))
              for k in range(cfg.random_relations)]
    for name, R in trees:
        kinds = []
        if pick_strategy(R, "auto") == "det":
            kinds.append("det")
        if check_transitive(R):
            kinds.append("transitive")
        if check_transitive(R, complement=True):
            kinds.append("cotransitive")
        for s in kinds:
            t = time.perf_counter()
            size = len(comb_nbta(R, s, assume_checked=True).states)
            yield name, f"tree {s}", size, size_bound_tree(R, s), time.perf_counter() - t


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--random", type=int, default=10, help="random D-up relations to add")
    ap.add_argument("--max-states", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    cfg = SizeReportConfig(args.random, args.max_states, args.seed)
    print(f"{'relation':<24} {'construction':<18} {'states':>8} {'bound':>10} {'ratio':>7} {'secs':>6}")
    over = 0
    for name, kind, size, bound, secs in rows(cfg):
        over += size > bound
        s = f"{secs:6.2f}" if secs is not None else " " * 6
        print(f"{name:<24} {kind:<18} {size:>8} {bound:>10} {size / bound:>7.3f} {s}")
    print(f"{over} constructions over their bound")


if __name__ == "__main__":
    main()
