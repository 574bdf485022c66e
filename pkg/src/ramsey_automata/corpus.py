"""Curated relations with analytically known infinite-clique answers."""
from __future__ import annotations

import random
from dataclasses import dataclass

from .reductions import gen_hard_mondec_word
from .trees import TreeAutomaton, make_tree_automaton, trim_tree_automaton
from .unranked import NUTA
from .word_apps import build_inequiv
from .words import BOT, FINITE, WordAutomaton, determinize, make

SIGMA = ("a", "b")


@dataclass(frozen=True)
class Instance:
    name: str
    relation: object
    clique: bool
    note: str = ""


def _w(trans, initial, final, arity=2) -> WordAutomaton:
    return make(trans, initial, final, FINITE, arity)


def _letters():
    return [(x, y) for x in SIGMA + (BOT,) for y in SIGMA + (BOT,) if (x, y) != (BOT, BOT)]


def strict_prefix() -> WordAutomaton:
    t = {(0, (x, x), 0) for x in SIGMA} | {(s, (BOT, x), 1) for x in SIGMA for s in (0, 1)}
    return _w(t, 0, {1})


def prefix_or_equal() -> WordAutomaton:
    t = {(0, (x, x), 0) for x in SIGMA} | {(s, (BOT, x), 1) for x in SIGMA for s in (0, 1)}
    return _w(t, 0, {0, 1})


def reverse_prefix() -> WordAutomaton:
    t = {(0, (x, x), 0) for x in SIGMA} | {(s, (x, BOT), 1) for x in SIGMA for s in (0, 1)}
    return _w(t, 0, {1})


def equality() -> WordAutomaton:
    return _w({(0, (x, x), 0) for x in SIGMA}, 0, {0})


def inequality() -> WordAutomaton:
    t = set()
    for a in _letters():
        t.add((1, a, 1))
        t.add((0, a, 0 if a[0] == a[1] else 1))
    return _w(t, 0, {1})


def equal_length() -> WordAutomaton:
    return _w({(0, (x, y), 0) for x in SIGMA for y in SIGMA}, 0, {0})


def length_less() -> WordAutomaton:
    t = {(0, (x, y), 0) for x in SIGMA for y in SIGMA}
    t |= {(s, (BOT, y), 1) for y in SIGMA for s in (0, 1)}
    return _w(t, 0, {1})


def length_leq() -> WordAutomaton:
    t = {(0, (x, y), 0) for x in SIGMA for y in SIGMA}
    t |= {(s, (BOT, y), 1) for y in SIGMA for s in (0, 1)}
    return _w(t, 0, {0, 1})


def length_greater() -> WordAutomaton:
    t = {(0, (x, y), 0) for x in SIGMA for y in SIGMA}
    t |= {(s, (x, BOT), 1) for x in SIGMA for s in (0, 1)}
    return _w(t, 0, {1})


def lex_less_same_length() -> WordAutomaton:
    t = {(0, (x, x), 0) for x in SIGMA} | {(0, ("a", "b"), 1)}
    t |= {(1, (x, y), 1) for x in SIGMA for y in SIGMA}
    return _w(t, 0, {1})


def suffix_on_a_star_b() -> WordAutomaton:
    """u is a proper suffix of v, both of the form a^n b."""
    t = {(0, ("a", "a"), 0), (0, ("b", "a"), 1), (1, (BOT, "a"), 1), (1, (BOT, "b"), 2)}
    return _w(t, 0, {2})


def same_first_letter() -> WordAutomaton:
    t = {(0, (x, x), 1) for x in SIGMA} | {(1, a, 1) for a in _letters()}
    return _w(t, 0, {1})


def empty_relation() -> WordAutomaton:
    return _w(set(), 0, set())


def all_pairs() -> WordAutomaton:
    t = {(0, (x, y), 0) for x in SIGMA for y in SIGMA}
    t |= {(s, (x, BOT), 1) for x in SIGMA for s in (0, 1)}
    t |= {(s, (BOT, y), 2) for y in SIGMA for s in (0, 2)}
    return _w(t, 0, {0, 1, 2})


def language_all() -> WordAutomaton:
    return make({(0, (x,), 0) for x in SIGMA}, 0, {0}, FINITE, 1)


def language_a_star() -> WordAutomaton:
    return make({(0, ("a",), 0)}, 0, {0}, FINITE, 1)


def rl_variant_generic(L: WordAutomaton) -> WordAutomaton:
    """Inequivalence on pairs for {(u, v, w) : u ∈ L or v = w}; cliques iff L ≠ Σ*."""
    return build_inequiv(gen_hard_mondec_word(L, SIGMA), 2, SIGMA)


def rl_variant(L: WordAutomaton, sigma=SIGMA) -> WordAutomaton:
    """The same relation as rl_variant_generic, built directly from a DFA for L.

    (u, v) and (u', v') differ iff exactly one of u, u' is in L, or neither is
    and v != v'.  Elements are pair words (letters (x, y) or BOT).
    """
    sigma = sorted(sigma)
    D = determinize(L, [(x,) for x in sigma])
    pad = sigma + [BOT]
    pairs = [(x, y) for x in pad for y in pad if (x, y) != (BOT, BOT)]
    letters = [(p, q) for p in pairs + [BOT] for q in pairs + [BOT] if (p, q) != (BOT, BOT)]

    def step_el(d, ended, p):
        if p == BOT:
            return d, (True, True)
        x, y = p
        eu, ev = ended
        if (eu and x != BOT) or (ev and y != BOT):
            return None
        if x != BOT:
            nxt = D.successors(d, (x,))
            if not nxt:
                return None
            (d,) = nxt
        return d, (eu or x == BOT, ev or y == BOT)

    init = (D.initial, D.initial, False, (False, False), (False, False))
    seen = {init}
    todo = [init]
    trans = set()
    while todo:
        s = todo.pop()
        d1, d2, neq, c1, c2 = s
        for p, q in letters:
            a = step_el(d1, c1, p)
            b = step_el(d2, c2, q)
            if a is None or b is None:
                continue
            v1 = BOT if p == BOT else p[1]
            v2 = BOT if q == BOT else q[1]
            t = (a[0], b[0], neq or v1 != v2, a[1], b[1])
            trans.add((s, (p, q), t))
            if t not in seen:
                seen.add(t)
                todo.append(t)

    def accepting(s):
        i1, i2 = s[0] in D.final, s[1] in D.final
        return i1 != i2 or (not i1 and not i2 and s[2])

    return make(trans, init, {s for s in seen if accepting(s)}, FINITE, 2, seen)


def word_corpus() -> list:
    return [
        Instance("strict-prefix", strict_prefix(), True),
        Instance("prefix-or-equal", prefix_or_equal(), True),
        Instance("reverse-prefix", reverse_prefix(), False),
        Instance("equality", equality(), False),
        Instance("inequality", inequality(), True),
        Instance("equal-length", equal_length(), False),
        Instance("length-less", length_less(), True),
        Instance("length-leq", length_leq(), True),
        Instance("length-greater", length_greater(), False),
        Instance("lex-less-same-length", lex_less_same_length(), False),
        Instance("suffix-a*b", suffix_on_a_star_b(), True),
        Instance("same-first-letter", same_first_letter(), True),
        Instance("empty", empty_relation(), False),
        Instance("all-pairs", all_pairs(), True),
        Instance("R_L-universal", rl_variant(language_all()), False, "L = Σ*"),
        Instance("R_L-a*", rl_variant(language_a_star()), True, "L = a*"),
    ]


# ---------------------------------------------------------------- trees

CHAIN = {"g": 1, "c": 0}
BINARY = {"f": 2, "c": 0}


def tree_grow_chain() -> TreeAutomaton:
    """s is a strict prefix of t on g-chains; bottom-up deterministic."""
    t = [("b", ("g", "g"), ("b",)), ("b", ("c", "g"), ("t",)),
         ("t", (BOT, "g"), ("t",)), ("t", (BOT, "c"), ())]
    return make_tree_automaton(t, ["b"], CHAIN, 2, "dup")


def tree_diagonal(ranks=BINARY) -> TreeAutomaton:
    return make_tree_automaton([(0, (x, x), (0,) * r) for x, r in ranks.items()], [0], ranks, 2, "dup")


def tree_grow_binary() -> TreeAutomaton:
    """t extends s by growing leaves c into subtrees, at least once."""
    t = []
    t.append(("need", ("f", "f"), ("need", "le")))
    t.append(("need", ("f", "f"), ("le", "need")))
    t.append(("need", ("c", "f"), ("tonly", "tonly")))
    t.append(("le", ("f", "f"), ("le", "le")))
    t.append(("le", ("c", "c"), ()))
    t.append(("le", ("c", "f"), ("tonly", "tonly")))
    t.append(("tonly", (BOT, "f"), ("tonly", "tonly")))
    t.append(("tonly", (BOT, "c"), ()))
    return make_tree_automaton(t, ["need"], BINARY, 2, "nta")


def tree_shrink_chain() -> TreeAutomaton:
    t = [("b", ("g", "g"), ("b",)), ("b", ("g", "c"), ("s",)),
         ("s", ("g", BOT), ("s",)), ("s", ("c", BOT), ())]
    return make_tree_automaton(t, ["b"], CHAIN, 2, "dup")


def tree_same_root(ranks=BINARY) -> TreeAutomaton:
    syms = sorted(ranks) + [BOT]
    t = []
    for x in syms:
        for y in syms:
            if (x, y) == (BOT, BOT):
                continue
            r = max(ranks.get(x, 0), ranks.get(y, 0))
            t.append(("any", (x, y), ("any",) * r))
            if x == y:
                t.append(("root", (x, y), ("any",) * r))
    return make_tree_automaton(t, ["root"], ranks, 2, "nta")


def tree_empty(ranks=CHAIN) -> TreeAutomaton:
    return make_tree_automaton([], ["q"], ranks, 2, "nta", FINITE, (), ["q"])


def tree_corpus() -> list:
    return [
        Instance("grow-chain", tree_grow_chain(), True),
        Instance("grow-binary", tree_grow_binary(), True),
        Instance("diagonal", tree_diagonal(), False),
        Instance("shrink-chain", tree_shrink_chain(), False),
        Instance("same-root", tree_same_root(), True),
        Instance("empty", tree_empty(), False),
    ]


def random_dup(rng: random.Random, n_states: int, ranks=CHAIN, density: float = 0.6) -> TreeAutomaton:
    """Random bottom-up deterministic binary relation automaton."""
    import itertools
    states = list(range(n_states))
    syms = sorted(ranks) + [BOT]
    trans = []
    for x in syms:
        for y in syms:
            if (x, y) == (BOT, BOT):
                continue
            r = max(ranks.get(x, 0), ranks.get(y, 0))
            for kids in itertools.product(states, repeat=r):
                if rng.random() < density:
                    trans.append((rng.choice(states), (x, y), kids))
    roots = [q for q in states if rng.random() < 0.5] or [0]
    A = make_tree_automaton(trans, roots, ranks, 2, "dup", FINITE, (), states)
    return trim_tree_automaton(A) if trans else A


# ---------------------------------------------------------------- unranked

def _h(trans, initial, final) -> WordAutomaton:
    return make(trans, initial, final, FINITE, None)


def unranked_fewer_children() -> NUTA:
    """Flat a-trees; the second has strictly more root children."""
    eps = _h(set(), 0, {0})
    row = _h({(0, "both", 0), (0, "tonly", 1), (1, "tonly", 1)}, 0, {1})
    rules = (("root", ("a", "a"), row), ("both", ("a", "a"), eps), ("tonly", (BOT, "a"), eps))
    return NUTA(frozenset({"root", "both", "tonly"}), "root", rules, 2, frozenset({"a"}))


def unranked_diagonal() -> NUTA:
    loop = _h({(0, "d", 0)}, 0, {0})
    rules = (("d", ("a", "a"), loop), ("d", ("b", "b"), loop))
    return NUTA(frozenset({"d"}), "d", rules, 2, frozenset({"a", "b"}))


def unranked_same_root() -> NUTA:
    loop = _h({(0, "any", 0)}, 0, {0})
    rules = [("root", ("a", "a"), loop)]
    for x in ("a", BOT):
        for y in ("a", BOT):
            if (x, y) != (BOT, BOT):
                rules.append(("any", (x, y), loop))
    return NUTA(frozenset({"root", "any"}), "root", tuple(rules), 2, frozenset({"a"}))


def unranked_corpus() -> list:
    return [
        Instance("fewer-children", unranked_fewer_children(), True),
        Instance("diagonal", unranked_diagonal(), False),
        Instance("same-root", unranked_same_root(), True),
    ]
