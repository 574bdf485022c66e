"""Acceptance gate.

Each check returns (ok, detail) and the test records a PASS/FAIL line for it;
conftest prints the collected lines at the end of the run.  Running this file
directly prints the same lines without pytest.
"""
import random
import time

import pytest

from ramsey_automata import corpus
from ramsey_automata.reductions import (
    clique_to_recreach, directed_to_undirected, finite_clique_search, gen_hard_genbuchi,
    gen_hard_mondec_tree_ddown, gen_hard_mondec_word, gen_hard_tree_clique, genbuchi_truth,
    has_clique, intersection_nonempty, random_hard_tree_clique, random_nta, random_word_nfa,
    recreach_to_clique, sampled_transitive, undirected_to_directed, verify_clique_certificate,
)
from ramsey_automata.tree_apps import TreeRecQuery, gen_buchi_rec_tree, mondec_tree, rec_member_tree
from ramsey_automata.tree_ramsey import (
    check_transitive, comb_nbta, has_infinite_clique_tree, pick_strategy, ramsey_eval_tree,
    size_bound_tree,
)
from ramsey_automata.trees import (
    is_bottom_up_deterministic, make_tree_automaton, nta_is_empty, nta_product, tree_convolve,
    tree_lift, tree_universal, trim_tree_automaton,
)
from ramsey_automata.unranked import (
    adapted_convolve, encoded_relation, fcns_decode, fcns_encode, fcns_prime, ramsey_eval_unranked,
    random_unranked,
)
from ramsey_automata.word_apps import RecQuery, gen_buchi_rec, mondec_word, rec_member
from ramsey_automata.word_ramsey import (
    build_comb_tracks, build_ramsey_buchi, extract_comb_witness, has_infinite_clique, size_bound,
)
from ramsey_automata.words import (
    intersect, is_deterministic, is_universal, lift, trim, universal,
)

try:
    from conftest import ACCEPTANCE
except ImportError:  # imported outside the test directory
    ACCEPTANCE = {}

SIGMA = ("a", "b")
CHAIN = corpus.CHAIN
TREE_RANKS = {"f": 2, "c": 0, "d": 0}
# element size bound for the brute-force clique search (the CLI default)
ORACLE_BOUND = 3


def record(n: int, ok: bool, detail: str) -> bool:
    line = f"criterion {n}: {'PASS' if ok else 'FAIL'} - {detail}"
    ACCEPTANCE[n] = line
    print(line)
    return ok


def _binary_words():
    return [i for i in corpus.word_corpus() if i.relation.arity == 2]


def check_word_corpus():
    insts = corpus.word_corpus()
    bad, certified, slowest = [], 0, 0.0
    for inst in insts:
        t = time.perf_counter()
        got = has_infinite_clique(inst.relation)
        ok = got == inst.clique
        if got:
            w = extract_comb_witness(inst.relation)
            ok = ok and w is not None and verify_clique_certificate(inst.relation, w, 8)
            certified += ok
        dt = time.perf_counter() - t
        slowest = max(slowest, dt)
        if not ok or dt >= 1.0:
            bad.append(inst.name)
    ok = len(insts) >= 12 and not bad
    return ok, (f"{len(insts)} relations, {certified} witnesses verified at N=8, "
                f"slowest {slowest:.2f} s, failures {bad}")


def check_tree_clique_hardness(count=100, seed=2):
    rng = random.Random(seed)
    yes = bad = 0
    for _ in range(count):
        A, targets = random_hard_tree_clique(rng, 3, 3)
        truth = intersection_nonempty(A, targets)
        yes += truth
        bad += has_clique(gen_hard_tree_clique(A, targets)) != truth
    return bad == 0, f"{count} instances ({yes} nonempty), {bad} mismatches"


def check_strategy_agreement(count=50, seed=3):
    rng = random.Random(seed)
    bad = transitive = 0
    for _ in range(count):
        R = corpus.random_dup(rng, rng.randint(1, 3))
        det = has_infinite_clique_tree(R, "det")
        answers = {det, has_infinite_clique_tree(R, "general")}
        if check_transitive(R):
            transitive += 1
            answers.add(has_infinite_clique_tree(R, "transitive", assume_checked=True))
        bad += len(answers) != 1
    return bad == 0, f"{count} D-up automata, {transitive} also transitive, {bad} disagreements"


def _round_trips(inst, tree: bool):
    q = clique_to_recreach(inst.relation)
    via_rec = (rec_member_tree if tree else rec_member)(q.relation, q.target, q.start)
    via_undirected = has_clique(undirected_to_directed(directed_to_undirected(inst.relation)))
    back = has_clique(recreach_to_clique(q.relation, q.target, q.start))
    return {via_rec, via_undirected, back} == {inst.clique}


def check_round_trips():
    bad = [i.name for i in _binary_words() if not _round_trips(i, False)]
    bad += [i.name for i in corpus.tree_corpus() if not _round_trips(i, True)]
    # closure properties of recreach_to_clique, by sampling
    for R in (corpus.strict_prefix(), corpus.length_less()):
        if not sampled_transitive(recreach_to_clique(R, universal(SIGMA), ("a",)), trials=60, bound=2):
            bad.append("transitivity")
    R = corpus.strict_prefix()
    if not is_deterministic(recreach_to_clique(R, universal(SIGMA), ("a",))):
        bad.append("word determinism")
    L = tree_universal(CHAIN)
    L = make_tree_automaton(L.transitions, L.initial, L.rank, 1, "dup")
    if not is_bottom_up_deterministic(recreach_to_clique(corpus.tree_grow_chain(), L, ("c", ()))):
        bad.append("tree determinism")
    n = len(_binary_words()) + len(corpus.tree_corpus())
    return not bad, f"{n} corpus relations through three round trips, failures {bad}"


def _word_product(L1, L2):
    return trim(intersect(lift(L1, [0], 2, SIGMA), lift(L2, [1], 2, SIGMA)))


def _tree_product(L1, L2):
    return trim_tree_automaton(nta_product(tree_lift(L1, [0], 2, CHAIN), tree_lift(L2, [1], 2, CHAIN)))


def check_mondec(count=100, seed=5):
    rng = random.Random(seed)
    bad, universal_count = [], 0
    for _ in range(count):
        L = random_word_nfa(rng, SIGMA, rng.randint(1, 3))
        truth = is_universal(L, SIGMA)
        universal_count += truth
        if mondec_word(gen_hard_mondec_word(L, SIGMA), SIGMA) != truth:
            bad.append("word R_L")
    empty_count = 0
    for _ in range(50):
        A = random_nta(rng, rng.randint(1, 3), CHAIN, deterministic_top_down=True)
        truth = nta_is_empty(A)[0]
        empty_count += truth
        if mondec_tree(gen_hard_mondec_tree_ddown(A)) != truth:
            bad.append("tree D-down")
    if mondec_word(corpus.equality(), SIGMA) or mondec_tree(corpus.tree_diagonal(CHAIN)):
        bad.append("equality")
    for _ in range(10):
        L1, L2 = (random_word_nfa(rng, SIGMA, rng.randint(1, 2)) for _ in range(2))
        if not mondec_word(_word_product(L1, L2), SIGMA):
            bad.append("word product")
        T1, T2 = (random_nta(rng, rng.randint(1, 2), CHAIN, 0.5) for _ in range(2))
        if not mondec_tree(_tree_product(T1, T2)):
            bad.append("tree product")
    return not bad, (f"{count} word instances ({universal_count} universal), 50 tree instances "
                     f"({empty_count} empty), equality and 20 products, failures {bad}")


def _chain(n):
    t = ("c", ())
    for _ in range(n):
        t = ("g", (t,))
    return t


def check_genbuchi(count=50, seed=6):
    rng = random.Random(seed)
    bad = []
    word_rels = [corpus.length_less, corpus.strict_prefix, corpus.inequality,
                 corpus.same_first_letter, corpus.equal_length]
    for _ in range(count):
        R = rng.choice(word_rels)()
        L = random_word_nfa(rng, SIGMA, rng.randint(1, 3))
        start = tuple(rng.choice(SIGMA) for _ in range(rng.randint(0, 2)))
        if gen_buchi_rec(RecQuery(R, [L], start)) != rec_member(R, L, start):
            bad.append("word k=1")
    for _ in range(count):
        R = rng.choice([corpus.tree_grow_chain, corpus.tree_shrink_chain])()
        L = random_nta(rng, rng.randint(1, 2), CHAIN, 0.5)
        start = _chain(rng.randint(0, 2))
        if gen_buchi_rec_tree(TreeRecQuery(R, [L], start, CHAIN)) != rec_member_tree(R, L, start):
            bad.append("tree k=1")
    yes = 0
    for _ in range(count):
        targets = [random_word_nfa(rng, SIGMA, 2) for _ in range(rng.randint(1, 3))]
        truth = genbuchi_truth(targets)
        yes += truth
        c = tuple(rng.choice(SIGMA) for _ in range(rng.randint(0, 2)))
        if gen_buchi_rec(gen_hard_genbuchi(targets, c).query) != truth:
            bad.append("word generator")
    for _ in range(count):
        # two targets and two states keep the staged tree construction small
        targets = [random_nta(rng, rng.randint(1, 2), TREE_RANKS, 0.4) for _ in range(rng.randint(1, 2))]
        truth = genbuchi_truth(targets)
        yes += truth
        if gen_buchi_rec_tree(gen_hard_genbuchi(targets, ("d", ())).query) != truth:
            bad.append("tree generator")
    return not bad, (f"{2 * count} single-target queries, {2 * count} generated instances "
                     f"({yes} intersecting), failures {bad}")


def check_unranked(pairs=10_000, seed=7):
    rng = random.Random(seed)
    broken = 0
    for _ in range(pairs):
        s = random_unranked(SIGMA, rng, 4, 3)
        t = random_unranked(SIGMA, rng, 4, 3)
        if fcns_prime(adapted_convolve(s, t)) != tree_convolve(fcns_encode(s), fcns_encode(t)):
            broken += 1
        elif fcns_decode(fcns_encode(s)) != s:
            broken += 1
    wrong = []
    for inst in corpus.unranked_corpus():
        got = ramsey_eval_unranked(inst.relation)
        if not got == inst.clique == ramsey_eval_tree(encoded_relation(inst.relation), "general"):
            wrong.append(inst.name)
    ok = broken == 0 and not wrong
    return ok, f"{pairs} pairs ({broken} broken), {len(corpus.unranked_corpus())} corpus relations, failures {wrong}"


def check_size_bounds(seed=8):
    worst = 0.0
    over = []
    for inst in corpus.word_corpus():
        tracks, product = size_bound(inst.relation)
        a = len(build_comb_tracks(inst.relation).states)
        b = len(build_ramsey_buchi(inst.relation).states)
        worst = max(worst, a / tracks, b / product)
        if a > tracks or b > product:
            over.append(inst.name)
    rng = random.Random(seed)
    trees = [(i.name, i.relation) for i in corpus.tree_corpus()]
    trees += [(f"random-dup-{k}", corpus.random_dup(rng, rng.randint(1, 3))) for k in range(20)]
    for name, R in trees:
        strategies = []
        if pick_strategy(R, "auto") == "det":
            strategies.append("det")
        if check_transitive(R):
            strategies.append("transitive")
        if check_transitive(R, complement=True):
            strategies.append("cotransitive")
        for s in strategies:
            size = len(comb_nbta(R, s, assume_checked=True).states)
            bound = size_bound_tree(R, s)
            worst = max(worst, size / bound)
            if size > bound:
                over.append(f"{name}/{s}")
    return not over, f"largest size/bound ratio {worst:.3f}, over bound {over}"


def check_oracle_consistency():
    found = []
    insts = [i for i in _binary_words() + corpus.tree_corpus() if not i.clique]
    for inst in insts:
        clique = finite_clique_search(inst.relation, 4, ORACLE_BOUND)
        if clique is not None:
            found.append(inst.name)
    # a finite 4-clique does not contradict "no infinite clique"; see the README
    return not found, (f"{len(insts)} 'no' relations searched at n=4, bound {ORACLE_BOUND}; "
                       f"finite 4-cliques in {found}")


def test_criterion_1_word_corpus():
    assert record(1, *check_word_corpus())


def test_criterion_2_tree_clique_hardness():
    assert record(2, *check_tree_clique_hardness())


def test_criterion_3_strategy_agreement():
    assert record(3, *check_strategy_agreement())


@pytest.mark.slow
def test_criterion_4_round_trips():
    assert record(4, *check_round_trips())


@pytest.mark.slow
def test_criterion_5_mondec():
    assert record(5, *check_mondec())


@pytest.mark.slow
def test_criterion_6_generalized_buchi():
    assert record(6, *check_genbuchi())


def test_criterion_7_unranked():
    assert record(7, *check_unranked())


def test_criterion_8_size_bounds():
    assert record(8, *check_size_bounds())


@pytest.mark.xfail(strict=True, reason="relations without infinite cliques can have finite 4-cliques")
def test_criterion_9_oracle_consistency():
    assert record(9, *check_oracle_consistency())


CHECKS = [check_word_corpus, check_tree_clique_hardness, check_strategy_agreement, check_round_trips,
          check_mondec, check_genbuchi, check_unranked, check_size_bounds, check_oracle_consistency]

if __name__ == "__main__":
    for n, check in enumerate(CHECKS, 1):
        t = time.perf_counter()
        record(n, *check())
        print(f"  ({time.perf_counter() - t:.1f} s)")
