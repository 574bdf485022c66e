import random

import pytest
from hypothesis import given, settings, strategies as st

from conftest import nfa_from_seed, words_upto
from ramsey_automata import corpus
from ramsey_automata.reductions import (
    EVIDENCE, INCONCLUSIVE, gen_hard_mondec_word, mondec_index_probe, random_word_nfa,
)
from ramsey_automata.word_apps import (
    RecQuery, build_inequiv, gen_buchi_rec, mondec_word, rec_member, rec_reach,
)
from ramsey_automata.word_ramsey import has_infinite_clique
from ramsey_automata.words import (
    BOT, FINITE, AutomatonError, complement, equivalent, intersect, is_empty, is_universal, lift,
    make, member, singleton, trim, universal,
)

A_ONLY = ("a",)


def unary_prefix():
    t = {(0, ("a", "a"), 0), (0, (BOT, "a"), 1), (1, (BOT, "a"), 1)}
    return make(t, 0, {1}, FINITE, 2)


def unary_equality():
    return make({(0, ("a", "a"), 0)}, 0, {0}, FINITE, 2)


def test_rec_reach_examples():
    full = universal(A_ONLY)
    out = rec_reach(unary_prefix(), full)
    assert equivalent(out, full, [("a",)])
    assert is_empty(rec_reach(unary_prefix(), singleton("a")))[0]
    # equality is reflexive, so the loop disjunct keeps every start word
    assert equivalent(rec_reach(unary_equality(), full), full, [("a",)])


def test_rec_reach_rejects_wrong_arity():
    with pytest.raises(AutomatonError):
        rec_reach(universal("a"), universal("a"))


def lang(pattern):
    if pattern == "a*":
        return make({(0, ("a",), 0)}, 0, {0})
    if pattern == "b*":
        return make({(0, ("b",), 0)}, 0, {0})
    if pattern == "b":
        return singleton("b")
    raise ValueError(pattern)


def test_gen_buchi_examples():
    R = corpus.length_less()
    assert gen_buchi_rec(RecQuery(R, [lang("a*"), lang("b*")], ""))
    assert not gen_buchi_rec(RecQuery(R, [lang("a*"), lang("b")], ""))


@settings(max_examples=12)
@given(st.integers(0, 100_000))
def test_gen_buchi_single_target_matches_rec_reach(seed):
    rng = random.Random(seed)
    R = random.choice([corpus.length_less, corpus.strict_prefix, corpus.inequality,
                       corpus.same_first_letter, corpus.equal_length])()
    L = random_word_nfa(rng, ("a", "b"), rng.randint(1, 3))
    start = tuple(rng.choice("ab") for _ in range(rng.randint(0, 2)))
    assert gen_buchi_rec(RecQuery(R, [L], start)) == rec_member(R, L, start)


@settings(max_examples=10)
@given(st.integers(0, 100_000))
def test_rec_reach_monotone_in_target(seed):
    L = nfa_from_seed(seed, 2)
    bigger = make(set(L.transitions) | {(0, ("a",), 0)}, 0, set(L.final) | {0}, FINITE, 1, L.states)
    R = corpus.length_less()
    small, big = rec_reach(R, L), rec_reach(R, bigger)
    sigma = [("a",), ("b",)]
    assert is_empty(intersect(small, complement(big, sigma)))[0]


def product_relation():
    # (a*) x (b*) as a synchronous relation
    t = set()
    for s, a in ((0, "a"), (1, BOT)):
        for tgt, b in ((0, "b"), (1, BOT)):
            if (a, b) == (BOT, BOT):
                continue
            t.add(((s if a != BOT else 1, 0 if b != BOT else 1), (a, b),
                   (0 if a != BOT else 1, 0 if b != BOT else 1)))
    # states record whether each track has ended; moving from ended back is impossible
    fixed = {(p, a, q) for p, a, q in t if not (p[0] == 1 and a[0] != BOT) and not (p[1] == 1 and a[1] != BOT)}
    init = (0, 0)
    states = {(x, y) for x in (0, 1) for y in (0, 1)}
    return trim(make(fixed | {(init, ("a", "b"), (0, 0)), (init, ("a", BOT), (0, 1)),
                              (init, (BOT, "b"), (1, 0))}, init, states, FINITE, 2, states))


def test_product_relation_is_what_it_claims():
    R = product_relation()
    for u in words_upto("ab", 3):
        for v in words_upto("ab", 3):
            if u or v:
                from ramsey_automata.words import convolve
                want = set(u) <= {"a"} and set(v) <= {"b"}
                assert member(R, convolve(u, v)) == want, (u, v)


def test_inequiv_examples():
    assert not has_infinite_clique(build_inequiv(product_relation(), 1, "ab"))
    assert has_infinite_clique(build_inequiv(corpus.equality(), 1, "ab"))
    assert is_empty(build_inequiv(corpus.empty_relation(), 1, "ab"))[0]
    with pytest.raises(AutomatonError):
        build_inequiv(corpus.equality(), 3)


def parity_relation():
    t = {(p, (x, y), p) for p in (0, 1) for x in "ab" for y in "ab"}
    t |= {(p, (x, BOT), 1 - p) for p in (0, 1) for x in "ab"}
    t |= {(p, (BOT, y), 1 - p) for p in (0, 1) for y in "ab"}
    return make(t, 0, {0}, FINITE, 2)


def test_mondec_examples():
    assert mondec_word(parity_relation(), "ab")
    assert not mondec_word(corpus.equality(), "ab")
    assert mondec_word(product_relation(), "ab")


@settings(max_examples=8)
@given(st.integers(0, 100_000))
def test_mondec_of_rl_matches_universality(seed):
    rng = random.Random(seed)
    L = random_word_nfa(rng, ("a", "b"), rng.randint(1, 2))
    R = gen_hard_mondec_word(L, ("a", "b"))
    assert mondec_word(R, ("a", "b")) == is_universal(L, ("a", "b"))


@pytest.mark.parametrize("make_rel", [corpus.equality, corpus.equal_length, corpus.strict_prefix,
                                      parity_relation, product_relation])
def test_mondec_agrees_with_conclusive_probe(make_rel):
    R = make_rel()
    probe = mondec_index_probe(R, 1, 6, 3)
    if probe.status == EVIDENCE:
        assert not mondec_word(R, "ab")
    else:
        assert probe.status == INCONCLUSIVE


@pytest.mark.parametrize("make_lang", [corpus.language_all, corpus.language_a_star])
def test_direct_rl_variant_matches_inequivalence_route(make_lang):
    L = make_lang()
    A, B = corpus.rl_variant(L), corpus.rl_variant_generic(L)
    letters = {a for _, a, _ in A.transitions} | {a for _, a, _ in B.transitions}
    assert equivalent(A, B, sorted(letters, key=repr))
