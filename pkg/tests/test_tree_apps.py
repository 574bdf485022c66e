import random

import pytest
from hypothesis import given, settings, strategies as st

from ramsey_automata import corpus
from ramsey_automata.reductions import gen_hard_mondec_tree_ddown, random_nta
from ramsey_automata.tree_apps import (
    NIL, TreeRecQuery, build_inequiv_tree, gen_buchi_rec_tree, inequiv_is_cotransitive,
    mondec_tree, path_decode, path_encode, rec_member_tree, rec_reach_tree,
)
from ramsey_automata.trees import (
    make_tree_automaton, nta_is_empty, nta_member, tree_singleton, tree_universal,
)
from ramsey_automata.words import BOT, AutomatonError

CHAIN = corpus.CHAIN
BINARY = corpus.BINARY
C = ("c", ())


def chain(n):
    t = C
    for _ in range(n):
        t = ("g", (t,))
    return t


def tup(t):
    return ((t[0],), tuple(tup(c) for c in t[1]))


def test_rec_reach_tree_growing_relation():
    out = rec_reach_tree(corpus.tree_grow_chain(), tree_universal(CHAIN))
    assert all(nta_member(out, tup(chain(n))) for n in range(5))


def test_rec_reach_tree_finite_target():
    out = rec_reach_tree(corpus.tree_grow_chain(), tree_singleton(chain(1), CHAIN))
    assert nta_is_empty(out)[0]


def test_rec_reach_tree_rewrite_closure():
    # reachability of the ground rule c -> f(c, c): grow any c leaves, possibly none
    G = corpus.tree_grow_binary()
    closure = make_tree_automaton(G.transitions, ["le"], BINARY, 2, "nta")
    assert rec_member_tree(closure, tree_universal(BINARY), C, strategy="transitive")
    assert rec_member_tree(closure, tree_universal(BINARY), C)


def test_rec_reach_tree_rejects_wrong_arity():
    with pytest.raises(AutomatonError):
        rec_reach_tree(tree_universal(CHAIN), tree_universal(CHAIN))


def test_path_encode_examples():
    assert path_encode([("a", ())]) == ("a", (("#0", ()),))
    assert path_encode([("a", ()), ("b", ())]) == ("a", (("b", (("#0", ()),)),))
    # (g(c), c): the root path reads g then c, its child reads c then padding
    got = path_encode([chain(1), C])
    leaf = ("c", ((NIL, (("#0", ()),)),))
    assert got == ("g", (("c", (("#1", (leaf,)),)),))
    assert path_decode(got, 2) == (chain(1), C)
    with pytest.raises(AutomatonError):
        path_encode([("f", (C, C))], max_rank=1)


@settings(max_examples=40)
@given(st.integers(0, 10**6))
def test_path_decode_inverts_encode(seed):
    from ramsey_automata.trees import random_tree
    rng = random.Random(seed)
    ts = tuple(random_tree(BINARY, rng, 3) for _ in range(rng.randint(1, 3)))
    assert path_decode(path_encode(ts), len(ts)) == ts


def test_gen_buchi_tree_examples():
    R = corpus.tree_grow_chain()
    full = tree_universal(CHAIN)
    assert gen_buchi_rec_tree(TreeRecQuery(R, [full, full], chain(1), CHAIN))
    finite = tree_singleton(chain(2), CHAIN)
    assert not gen_buchi_rec_tree(TreeRecQuery(R, [full, finite], chain(0), CHAIN))


def test_gen_buchi_tree_needs_targets():
    with pytest.raises(AutomatonError):
        TreeRecQuery(corpus.tree_grow_chain(), [], C)


@settings(max_examples=5)
@given(st.integers(0, 10**6))
def test_gen_buchi_single_target_matches_rec_reach(seed):
    rng = random.Random(seed)
    R = rng.choice([corpus.tree_grow_chain, corpus.tree_shrink_chain])()
    L = random_nta(rng, rng.randint(1, 2), CHAIN, 0.5)
    start = chain(rng.randint(0, 2))
    q = TreeRecQuery(R, [L], start, CHAIN)
    assert gen_buchi_rec_tree(q) == rec_member_tree(R, L, start)


def test_mondec_tree_padded_diagonal():
    nonempty = make_tree_automaton([(0, ("g",), (0,)), (0, ("c",), ())], [0], CHAIN, 1, "ddown")
    empty = make_tree_automaton([(0, ("g",), (0,))], [0], CHAIN, 1, "ddown")
    assert not mondec_tree(gen_hard_mondec_tree_ddown(nonempty))
    assert mondec_tree(gen_hard_mondec_tree_ddown(empty))


def test_mondec_tree_examples():
    pair = make_tree_automaton([(0, ("g", "c"), (1,)), (1, ("c", BOT), ())], [0], CHAIN, 2)
    assert mondec_tree(pair)
    assert not mondec_tree(corpus.tree_diagonal(CHAIN))
    assert mondec_tree(corpus.tree_empty())


@pytest.mark.parametrize("make_rel", [corpus.tree_grow_chain, corpus.tree_shrink_chain,
                                      lambda: corpus.tree_diagonal(CHAIN)])
def test_inequivalence_is_cotransitive(make_rel):
    assert inequiv_is_cotransitive(make_rel(), 1)


@settings(max_examples=6)
@given(st.integers(0, 10**6))
def test_mondec_strategies_agree(seed):
    rng = random.Random(seed)
    A = random_nta(rng, rng.randint(1, 2), CHAIN, 0.5, deterministic_top_down=True)
    R = gen_hard_mondec_tree_ddown(A)
    got = mondec_tree(R)
    assert got == nta_is_empty(A)[0]
    assert got == mondec_tree(R, "general")


def test_build_inequiv_range():
    with pytest.raises(AutomatonError):
        build_inequiv_tree(corpus.tree_grow_chain(), 3)
