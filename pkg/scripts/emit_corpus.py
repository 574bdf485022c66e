"""Write the annotated regression corpus used by ``ramsey corpus``.

Curated relations with known answers plus seeded generator output.  Every
file starts with ``# command:`` and ``# expect:`` lines.
"""
import argparse
import os
import random

from ramsey_automata import corpus
from ramsey_automata.cli import generate
from ramsey_automata.fileformat import print_objects
from ramsey_automata.trees import make_tree_automaton
from ramsey_automata.words import make


def header(command, expect):
    return f"# command: {command}\n# expect: {'yes' if expect else 'no'}\n"


def textual(R):
    return all(isinstance(x, str) for _, a, _ in R.transitions for x in a)


def curated():
    for inst in corpus.word_corpus():
        if textual(inst.relation):
            yield f"word-{inst.name.replace('*', 'star')}.aut", header("eval", inst.clique), {"rel": inst.relation}
    for inst in corpus.tree_corpus():
        yield f"tree-{inst.name}.taut", header("eval-tree", inst.clique), {"rel": inst.relation}
    for inst in corpus.unranked_corpus():
        yield f"unranked-{inst.name}.uaut", header("eval-unranked", inst.clique), {"rel": inst.relation}
    yield "mondec-equality.aut", header("mondec", False), {"rel": corpus.equality()}
    yield "mondec-same-first.aut", header("mondec", True), {"rel": corpus.same_first_letter()}
    yield "mondec-tree-diagonal.taut", header("mondec-tree", False), {"rel": corpus.tree_diagonal(corpus.CHAIN)}
    pair = make_tree_automaton([(0, ("g", "c"), (1,)), (1, ("c", "_"), ())], [0], corpus.CHAIN, 2)
    yield "mondec-tree-pair.taut", header("mondec-tree", True), {"rel": pair}
    a_star = make({(0, ("a",), 0)}, 0, {0})
    objs = {"rel": corpus.strict_prefix(), "L": a_star}
    yield "recreach-prefix-from-a.aut", header("recreach --target @L --from a", True), objs
    yield "recreach-prefix-from-b.aut", header("recreach --target @L --from b", False), objs


GENERATED = [
    ("hard-clique", False, 3, 3, 4),
    ("hard-mondec", False, 2, 0, 3),
    ("hard-mondec", True, 2, 0, 3),
    ("hard-genbuchi", False, 2, 3, 3),
    ("hard-genbuchi", True, 2, 2, 2),
]


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default=os.path.join(os.path.dirname(__file__), "..", "tests", "corpus"))
    ap.add_argument("--seed", type=int, default=2024)
    args = ap.parse_args()
    os.makedirs(args.out, exist_ok=True)
    n = 0
    for name, head, objs in curated():
        with open(os.path.join(args.out, name), "w", encoding="utf-8") as fh:
            fh.write(head + print_objects(objs))
        n += 1
    rng = random.Random(args.seed)
    for kind, tree, states, targets, count in GENERATED:
        for i in range(count):
            if kind == "hard-genbuchi":
                # keep the tuple width small; wide tree queries take minutes
                ext, text, _ = generate(kind, rng, tree, states, targets)
            else:
                ext, text, _ = generate(kind, rng, tree, states, max(targets, 1))
            tag = "tree-" if tree else ""
            with open(os.path.join(args.out, f"gen-{kind}-{tag}{i:02d}.{ext}"), "w", encoding="utf-8") as fh:
                fh.write(text)
            n += 1
    print(f"wrote {n} files to {os.path.normpath(args.out)}")


if __name__ == "__main__":
    main()
