import random

import pytest
from hypothesis import given, settings, strategies as st

from ramsey_automata import corpus
from ramsey_automata.trees import (
    enumerate_trees, make_tree_automaton, nbta_is_empty, nta_is_empty, nta_member,
    nta_product, run_graph_accepts, tree_convolve, tree_lift,
)
from ramsey_automata.tree_ramsey import (
    SEP, build_comb_nbta_det, build_comb_tracks, build_enc_nta, check_transitive, clique_members_nta,
    comb_nbta, extract_tree_witness, has_infinite_clique_tree, pick_strategy, ramsey_eval_tree,
    size_bound_tree, verify_tree_clique, witness_from_graph,
)
from ramsey_automata.words import BOT, AutomatonError

CHAIN = corpus.CHAIN
BINARY = corpus.BINARY


def chain(n):
    t = ("c", ())
    for _ in range(n):
        t = ("g", (t,))
    return t


def test_periodic_chain_encoding_is_valid():
    enc = build_enc_nta(CHAIN)
    # block: alpha = c, beta = g(hole); the hole is the separator
    edges = {0: (("c", "g"), (1,)), 1: (SEP, (0,))}
    assert run_graph_accepts(enc, 0, edges)
    assert run_graph_accepts(build_enc_nta(CHAIN, monadic=True), 0, edges)


def test_encoding_without_beta_node_is_rejected():
    enc = build_enc_nta(CHAIN)
    assert not run_graph_accepts(enc, 0, {0: (SEP, (0,))})
    # beta without a hole ends the comb after one block
    assert not run_graph_accepts(enc, 0, {0: (("c", "c"), ())})


def test_binary_beta_needs_monadic_for_cotransitive():
    # alpha = c, beta = f(hole, hole): two holes per block
    edges = {0: (("c", "f"), (1, 1)), 1: (SEP, (0,))}
    assert run_graph_accepts(build_enc_nta(BINARY), 0, edges)
    assert not run_graph_accepts(build_enc_nta(BINARY, monadic=True), 0, edges)


def test_certificate_encoding_is_valid():
    R = corpus.tree_grow_chain()
    empty, graph = nbta_is_empty(comb_nbta(R, "det"))
    assert not empty
    edges = {g: (a, kids) for g, (a, kids) in graph.edges.items()}
    assert run_graph_accepts(build_enc_nta(CHAIN), graph.root, edges)


@pytest.mark.parametrize("inst", corpus.tree_corpus(), ids=lambda i: i.name)
def test_corpus_general_strategy(inst):
    assert has_infinite_clique_tree(inst.relation, "general") == inst.clique


@pytest.mark.parametrize("inst", corpus.tree_corpus(), ids=lambda i: i.name)
def test_corpus_strategies_agree_where_applicable(inst):
    R = inst.relation
    answers = {}
    if pick_strategy(R, "auto") == "det":
        answers["det"] = has_infinite_clique_tree(R, "det")
    if check_transitive(R):
        answers["transitive"] = has_infinite_clique_tree(R, "transitive")
    if check_transitive(R, complement=True):
        answers["cotransitive"] = has_infinite_clique_tree(R, "cotransitive")
    assert set(answers.values()) <= {inst.clique}


@pytest.mark.parametrize("inst", corpus.tree_corpus(), ids=lambda i: i.name)
def test_size_bounds(inst):
    R = inst.relation
    if pick_strategy(R, "auto") == "det":
        assert len(comb_nbta(R, "det").states) <= size_bound_tree(R, "det")
    if check_transitive(R):
        assert len(comb_nbta(R, "transitive").states) <= size_bound_tree(R, "transitive")
    if check_transitive(R, complement=True):
        assert len(comb_nbta(R, "cotransitive").states) <= size_bound_tree(R, "cotransitive")


def different_root():
    syms = sorted(BINARY) + [BOT]
    t = []
    for x in syms:
        for y in syms:
            if (x, y) == (BOT, BOT):
                continue
            r = max(BINARY.get(x, 0), BINARY.get(y, 0))
            t.append(("any", (x, y), ("any",) * r))
            if BOT not in (x, y) and x != y:
                t.append(("root", (x, y), ("any",) * r))
    return make_tree_automaton(t, ["root"], BINARY, 2, "nta")


def test_transitive_strategy_refuses_non_transitive_input():
    R = different_root()
    with pytest.raises(AutomatonError):
        comb_nbta(R, "transitive")
    assert comb_nbta(R, "transitive", assume_checked=True)
    assert check_transitive(corpus.tree_same_root())


def test_det_strategy_needs_determinism():
    with pytest.raises(AutomatonError):
        build_comb_nbta_det(corpus.tree_grow_binary())


def test_growing_chain_witness():
    elems = extract_tree_witness(corpus.tree_grow_chain(), 6)
    assert len(elems) == 6
    sizes = [len(repr(e)) for e in elems]
    assert sizes == sorted(sizes)
    assert verify_tree_clique(corpus.tree_grow_chain(), elems)
    assert len(extract_tree_witness(corpus.tree_grow_chain(), 1)) == 1
    assert extract_tree_witness(corpus.tree_diagonal(), 3) is None


def test_verify_rejects_broken_cliques():
    R = corpus.tree_grow_chain()
    assert verify_tree_clique(R, [chain(0), chain(1), chain(3)])
    assert not verify_tree_clique(R, [chain(1), chain(0)])
    assert not verify_tree_clique(R, [chain(1), chain(1)])


def test_clique_members():
    full = clique_members_nta(corpus.tree_grow_binary(), "general")
    for t in enumerate_trees(BINARY, 3):
        assert nta_member(full, ((t[0],), tuple(_tup(c) for c in t[1])))
    assert nta_is_empty(clique_members_nta(corpus.tree_diagonal(), "det"))[0]
    # shrinking chains end at c, so no chain starts a clique
    assert nta_is_empty(clique_members_nta(corpus.tree_shrink_chain(), "det"))[0]


def _tup(t):
    return ((t[0],), tuple(_tup(c) for c in t[1]))


def test_lazy_and_literal_sink_agree():
    for inst in corpus.tree_corpus():
        if pick_strategy(inst.relation, "auto") != "det":
            continue
        lazy = build_comb_nbta_det(inst.relation)
        from ramsey_automata.trees import nbta_product
        literal = nbta_product(build_comb_tracks(inst.relation, lazy_sink=False),
                               build_enc_nta(CHAIN if "g" in inst.relation.rank else BINARY))
        assert nbta_is_empty(lazy)[0] == nbta_is_empty(literal)[0]


def test_ramsey_eval_tree_with_parameter():
    grow = corpus.tree_grow_chain()
    below = nta_product(tree_lift(grow, [0, 1], 3, CHAIN), tree_lift(grow, [2, 0], 3, CHAIN))
    out = ramsey_eval_tree(below, "general")
    for n in range(4):
        assert nta_member(out, _tup(chain(n)))
    diag = make_tree_automaton([(0, (x, x), (0,) * r) for x, r in CHAIN.items()], [0], CHAIN, 2)
    pinned = nta_product(tree_lift(grow, [0, 1], 3, CHAIN), tree_lift(diag, [2, 0], 3, CHAIN))
    assert nta_is_empty(ramsey_eval_tree(pinned, "general"))[0]
    assert ramsey_eval_tree(corpus.tree_grow_chain()) is True


@settings(max_examples=8)
@given(st.integers(0, 10**6))
def test_det_and_general_agree_on_random_dup(seed):
    rng = random.Random(seed)
    R = corpus.random_dup(rng, rng.randint(1, 2))
    det = has_infinite_clique_tree(R, "det")
    assert det == has_infinite_clique_tree(R, "general")
    if det:
        assert extract_tree_witness(R, 6, "det") is not None
