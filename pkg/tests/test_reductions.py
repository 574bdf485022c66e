import random

import pytest
from hypothesis import given, settings, strategies as st

from ramsey_automata import corpus
from ramsey_automata.reductions import (
    EVIDENCE, INCONCLUSIVE, clique_to_recreach, decorated_chain, directed_to_undirected,
    finite_clique_search, gen_hard_genbuchi, gen_hard_mondec_word, gen_hard_tree_clique,
    genbuchi_truth, has_clique, intersection_nonempty, mondec_index_probe, random_hard_tree_clique,
    recreach_to_clique, related, sampled_transitive, undirected_to_directed,
    verify_clique_certificate,
)
from ramsey_automata.tree_apps import gen_buchi_rec_tree, rec_member_tree
from ramsey_automata.trees import is_bottom_up_deterministic, make_tree_automaton, tree_universal
from ramsey_automata.word_apps import gen_buchi_rec, mondec_word, rec_member
from ramsey_automata.words import AutomatonError, make, singleton, universal

SIGMA = ("a", "b")
TREE_RANKS = {"f": 2, "c": 0, "d": 0}


def lang(words):
    out = None
    from ramsey_automata.words import union
    for w in words:
        s = singleton(w)
        out = s if out is None else union(out, s)
    return out


def a_star():
    return make({(0, ("a",), 0)}, 0, {0})


def test_symmetric_relation_notions_coincide():
    R = corpus.inequality()
    assert has_clique(undirected_to_directed(R)) == has_clique(R) is True
    assert not has_clique(undirected_to_directed(corpus.equality()))


@pytest.mark.parametrize("make_rel,want", [(corpus.strict_prefix, True), (corpus.equality, False),
                                           (corpus.length_less, True)])
def test_directed_to_undirected_preserves_answer(make_rel, want):
    image = directed_to_undirected(make_rel())
    assert has_clique(undirected_to_directed(image)) == want


def test_directed_to_undirected_trees():
    for inst in (corpus.tree_grow_chain(), corpus.tree_shrink_chain()):
        image = directed_to_undirected(inst)
        assert has_clique(undirected_to_directed(image), "general") == has_clique(inst)


@pytest.mark.parametrize("inst", [i for i in corpus.word_corpus() if i.relation.arity == 2][:8],
                         ids=lambda i: i.name)
def test_word_clique_to_recreach(inst):
    q = clique_to_recreach(inst.relation)
    assert rec_member(q.relation, q.target, q.start) == inst.clique


@pytest.mark.parametrize("inst", corpus.tree_corpus(), ids=lambda i: i.name)
def test_tree_clique_to_recreach(inst):
    q = clique_to_recreach(inst.relation)
    assert rec_member_tree(q.relation, q.target, q.start) == inst.clique


def test_recreach_to_clique_words():
    R = corpus.strict_prefix()
    assert has_clique(recreach_to_clique(R, universal("ab"), ()))
    assert not has_clique(recreach_to_clique(R, lang(["a", "ab"]), ()))
    # every clique has to start above the start word
    assert not has_clique(recreach_to_clique(R, a_star(), ("b",)))
    assert has_clique(recreach_to_clique(R, a_star(), ("a",)))


def test_recreach_to_clique_preserves_transitivity():
    for R in (corpus.strict_prefix(), corpus.length_less()):
        assert sampled_transitive(R)
        out = recreach_to_clique(R, universal("ab"), ("a",))
        assert sampled_transitive(out, trials=60, bound=2)


def test_recreach_to_clique_preserves_determinism():
    R = corpus.tree_grow_chain()
    L = tree_universal(corpus.CHAIN)
    L = make_tree_automaton(L.transitions, L.initial, L.rank, 1, "dup")
    out = recreach_to_clique(R, L, ("c", ()))
    assert is_bottom_up_deterministic(out)
    assert has_clique(out, "det")


def test_hard_tree_clique_examples():
    const = make_tree_automaton([(0, ("c",), ())], [0], TREE_RANKS)
    assert has_clique(gen_hard_tree_clique(const, [0]))
    two = make_tree_automaton([(0, ("c",), ()), (1, ("d",), ())], [0, 1], TREE_RANKS)
    assert not intersection_nonempty(two, [0, 1])
    assert not has_clique(gen_hard_tree_clique(two, [0, 1]))
    with pytest.raises(AutomatonError):
        gen_hard_tree_clique(two, [5])


def test_decorated_chain_family_is_a_clique():
    const = make_tree_automaton([(0, ("c",), ())], [0], TREE_RANKS)
    R = gen_hard_tree_clique(const, [0, 0])
    family = [decorated_chain(("c", ()), i) for i in range(4)]
    assert verify_clique_certificate(R, family, 4)
    assert finite_clique_search(R, 3, 3) is not None


@settings(max_examples=10)
@given(st.integers(0, 10**6))
def test_hard_tree_clique_matches_intersection(seed):
    rng = random.Random(seed)
    A, targets = random_hard_tree_clique(rng, 2, 2)
    assert has_clique(gen_hard_tree_clique(A, targets)) == intersection_nonempty(A, targets)


def test_hard_mondec_word_examples():
    assert mondec_word(gen_hard_mondec_word(universal("ab"), SIGMA), SIGMA)
    # every word except "a"
    missing = make({(0, ("b",), 2), (0, ("a",), 1), (1, ("a",), 2), (1, ("b",), 2),
                    (2, ("a",), 2), (2, ("b",), 2)}, 0, {0, 2})
    assert not mondec_word(gen_hard_mondec_word(missing, SIGMA), SIGMA)


def test_hard_genbuchi_words():
    inst = gen_hard_genbuchi([a_star(), lang(["a", "b"])], ("b",))
    assert genbuchi_truth([a_star(), lang(["a", "b"])])
    assert gen_buchi_rec(inst.query)
    disjoint = [a_star(), lang(["b", "ab"])]
    assert not genbuchi_truth(disjoint)
    assert not gen_buchi_rec(gen_hard_genbuchi(disjoint, ("b",)).query)
    assert gen_buchi_rec(gen_hard_genbuchi([lang(["ab"])], ()).query)


def test_hard_genbuchi_trees():
    c_only = make_tree_automaton([(0, ("c",), ())], [0], TREE_RANKS)
    d_only = make_tree_automaton([(0, ("d",), ())], [0], TREE_RANKS)
    full = tree_universal(TREE_RANKS)
    yes = gen_hard_genbuchi([full, c_only], ("d", ()))
    assert gen_buchi_rec_tree(yes.query)
    no = gen_hard_genbuchi([c_only, d_only], ("d", ()))
    assert not gen_buchi_rec_tree(no.query)


def test_finite_clique_search_examples():
    assert finite_clique_search(corpus.strict_prefix(), 4, 5) == [
        ("a",), ("a", "a"), ("a", "a", "a"), ("a", "a", "a", "a")]
    assert finite_clique_search(corpus.equality(), 2, 3) is None
    with pytest.raises(AutomatonError):
        finite_clique_search(corpus.equality(), 0, 3)


def test_certificate_list_form():
    R = corpus.strict_prefix()
    assert verify_clique_certificate(R, [("a",), ("a", "b")], 2)
    assert not verify_clique_certificate(R, [("a", "b"), ("a",)], 2)
    with pytest.raises(AutomatonError):
        verify_clique_certificate(R, [("a",)], 2)
    assert related(R, ("a",), ("a", "a"))


def test_index_probe_examples():
    assert mondec_index_probe(corpus.equality(), 1, 5, 3).status == EVIDENCE
    product = corpus.same_first_letter()
    res = mondec_index_probe(product, 1, 3, 3)
    assert res.status == INCONCLUSIVE
    assert mondec_index_probe(corpus.empty_relation(), 1, 2, 3).status == INCONCLUSIVE
    with pytest.raises(TypeError):
        bool(res)


def test_evidence_comes_with_distinguishers():
    R = corpus.equality()
    res = mondec_index_probe(R, 1, 4, 2)
    for (h1, h2), tail in res.distinguishers.items():
        assert related(R, h1[0], tail[0]) != related(R, h2[0], tail[0])
