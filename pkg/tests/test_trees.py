import random

from hypothesis import given, settings, strategies as st

from ramsey_automata.reductions import random_nta
from ramsey_automata.trees import (
    BUCHI, FALSE, FINITE, ata_intersect, ata_member, ata_to_nta_finite, atom, dealternate,
    determinize_bottom_up, enumerate_trees, f_and, f_or, is_bottom_up_deterministic, make_ata,
    make_tree_automaton, nbta_is_empty, nta_is_empty, nta_member, nta_product, nta_project,
    nta_to_ata, nta_union, random_tree, run_graph_accepts, tree_complement, tree_convolve,
    tree_deconvolve, tree_universal,
)
from ramsey_automata.words import BOT

RANKS = {"f": 2, "c": 0, "d": 0}
SMALL = enumerate_trees(RANKS, 3)
TUPLED = [None]


def tupled(t):
    return ((t[0],), tuple(tupled(c) for c in t[1]))


def all_small():
    if TUPLED[0] is None:
        TUPLED[0] = [tupled(t) for t in SMALL]
    return TUPLED[0]


def rand_nta(seed, n=3):
    rng = random.Random(seed)
    return random_nta(rng, n, RANKS, rng.uniform(0.2, 0.5))


def language(A):
    return {t for t in all_small() if nta_member(A, t)}


def test_convolve_examples():
    assert tree_convolve(("a", ()), ("b", ())) == (("a", "b"), ())
    t = ("f", (("c", ()), ("d", ())))
    assert tree_convolve(t, t) == (("f", "f"), ((("c", "c"), ()), (("d", "d"), ())))
    s = tree_convolve(("c", ()), t)
    assert s == (("c", "f"), (((BOT, "c"), ()), ((BOT, "d"), ())))
    assert tree_deconvolve(s) == (("c", ()), t)


@settings(max_examples=60)
@given(st.integers(0, 10**6))
def test_deconvolve_inverts_convolve(seed):
    rng = random.Random(seed)
    ts = tuple(random_tree(RANKS, rng, 4) for _ in range(rng.randint(1, 3)))
    assert tree_deconvolve(tree_convolve(*ts)) == ts


def test_product_with_full_language():
    A = rand_nta(7)
    full = tree_universal(RANKS)
    assert language(nta_product(A, full)) == language(A)


@settings(max_examples=15)
@given(st.integers(0, 10**6), st.integers(0, 10**6))
def test_product_and_union_semantics(s1, s2):
    A, B = rand_nta(s1), rand_nta(s2)
    assert language(nta_product(A, B)) == language(A) & language(B)
    assert language(nta_union(A, B)) == language(A) | language(B)


@settings(max_examples=15)
@given(st.integers(0, 10**6))
def test_double_complement(seed):
    A = rand_nta(seed, 4)
    letters = [(a,) for a in RANKS]
    C = tree_complement(A, letters)
    assert language(C) == set(all_small()) - language(A)
    assert language(tree_complement(C, letters)) == language(A)


@settings(max_examples=15)
@given(st.integers(0, 10**6))
def test_determinization_is_deterministic_and_equivalent(seed):
    A = rand_nta(seed)
    D = determinize_bottom_up(A, [(a,) for a in RANKS])
    assert D.kind == "dup" and is_bottom_up_deterministic(D)
    assert language(D) == language(A)


def test_projection_of_diagonal_is_full():
    diag = make_tree_automaton([(0, (x, x), (0,) * r) for x, r in RANKS.items()], [0], RANKS, 2)
    P = nta_project(diag, [0])
    assert language(P) == set(all_small())


def test_emptiness_examples():
    no_leaf = make_tree_automaton([(0, ("f",), (0, 0))], [0], RANKS)
    assert nta_is_empty(no_leaf) == (True, None)
    const = make_tree_automaton([(0, ("c",), ())], [0], RANKS)
    assert nta_is_empty(const) == (False, (("c",), ()))


@settings(max_examples=30)
@given(st.integers(0, 10**6))
def test_emptiness_matches_enumeration(seed):
    A = rand_nta(seed)
    empty, w = nta_is_empty(A)
    if empty:
        assert not language(A)
    else:
        assert nta_member(A, w)
        # the witness has minimal depth, so it is deep only when no small tree is accepted
        assert (_depth(w) <= 3) == bool(language(A))


def _depth(t):
    return 1 + max((_depth(c) for c in t[1]), default=0)


def test_buchi_emptiness_examples():
    ranks = {"g": 1}
    loop = make_tree_automaton([(0, ("g",), (0,))], [0], ranks, 1, "nbta", BUCHI, ())
    assert nbta_is_empty(loop)[0]
    good = make_tree_automaton([(0, ("g",), (0,))], [0], ranks, 1, "nbta", BUCHI, [0])
    empty, graph = nbta_is_empty(good)
    assert not empty
    assert run_graph_accepts(good, graph.root, graph.edges)


def test_buchi_mixed_paths():
    # f(c, f(c, ...)): the single infinite path visits 1 forever, leaves carry no obligation
    ranks = {"f": 2, "c": 0}
    A = make_tree_automaton([(1, ("f",), (0, 1)), (0, ("c",), ())], [1], ranks, 1, "nbta", BUCHI, [1])
    assert not nbta_is_empty(A)[0]
    B = make_tree_automaton([(1, ("f",), (0, 1)), (0, ("c",), ())], [1], ranks, 1, "nbta", BUCHI, [0])
    assert nbta_is_empty(B)[0]


def tree_graph(t):
    edges = {}

    def go(s, pos):
        edges[pos] = (s[0], tuple(pos + (i,) for i in range(len(s[1]))))
        for i, c in enumerate(s[1]):
            go(c, pos + (i,))

    go(t, ())
    return edges


def nbta_accepts_finite(A, t):
    return run_graph_accepts(A, (), tree_graph(t))


@settings(max_examples=12)
@given(st.integers(0, 10**6))
def test_dealternation_preserves_membership(seed):
    A = rand_nta(seed)
    N = dealternate(nta_to_ata(A))
    for t in all_small():
        assert nbta_accepts_finite(N, t) == nta_member(A, t)


@settings(max_examples=10)
@given(st.integers(0, 10**6), st.integers(0, 10**6))
def test_dealternated_conjunction_is_intersection(s1, s2):
    A, B = rand_nta(s1, 2), rand_nta(s2, 2)
    N = dealternate(ata_intersect(nta_to_ata(A), nta_to_ata(B)))
    for t in all_small():
        assert nbta_accepts_finite(N, t) == (nta_member(A, t) and nta_member(B, t))


def test_false_transitions_give_empty_language():
    A = make_ata({(0, ("c",)): FALSE, (0, ("f",)): FALSE}, 0, RANKS)
    assert nbta_is_empty(dealternate(A))[0]


def test_ata_member_examples():
    # diagonal check on pairs: every node carries equal coordinates
    letters = [(x, x) for x in RANKS]
    delta = {(0, a): f_and(*[atom(0, i) for i in range(1, RANKS[a[0]] + 1)]) if RANKS[a[0]] else ("true",)
             for a in letters}
    A = make_ata(delta, 0, RANKS, 2)
    t = ("f", (("c", ()), ("d", ())))
    assert ata_member(A, tree_convolve(t, t))
    assert not ata_member(A, tree_convolve(t, ("c", ())))
    full = nta_to_ata(tree_universal(RANKS))
    B = nta_to_ata(rand_nta(3))
    both = ata_intersect(B, full)
    assert all(ata_member(both, s) == ata_member(B, s) for s in all_small())


def test_alternation_with_disjunction():
    A = make_ata({(0, ("f",)): f_or(f_and(atom(1, 1), atom(2, 1)), atom(1, 2)),
                  (1, ("c",)): ("true",), (2, ("c",)): ("true",), (2, ("d",)): ("true",)},
                 0, RANKS)
    c, d = ("c",), ("d",)
    assert ata_member(A, (("f",), ((c, ()), (d, ()))))
    assert not ata_member(A, (("f",), ((d, ()), (d, ()))))
    N = ata_to_nta_finite(A)
    assert N.mode == FINITE
    assert all(nta_member(N, s) == ata_member(A, s) for s in all_small())
