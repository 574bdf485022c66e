"""Unranked trees, their first-child next-sibling encoding, and unranked automata.

Unranked trees share the ``(label, children)`` representation of ranked ones.
The encoding maps each node to a rank-2 node whose left child is its first
child and whose right child is its next sibling; missing ones become ``NIL``.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from functools import cached_property

from .config import Budget
from .tree_ramsey import ramsey_eval_tree
from .trees import (
    FINITE, TreeAutomaton, canonical_tree_checker, make_tree_automaton, nta_product,
    tree_convolve, trim_tree_automaton,
)
from .words import BOT, AutomatonError, WordAutomaton, eps_closure, make

NIL = "#"


def fcns_ranks(sigma) -> dict:
    out = {a: 2 for a in sigma}
    out[NIL] = 0
    return out


def fcns_encode(t) -> tuple:
    def forest(ts):
        if not ts:
            return (NIL, ())
        head, rest = ts[0], ts[1:]
        return (head[0], (forest(list(head[1])), forest(rest)))

    return forest([t])


def fcns_decode(t) -> tuple:
    def forest(s):
        if s[0] == NIL:
            if s[1]:
                raise AutomatonError("padding symbol with children")
            return []
        if len(s[1]) != 2:
            raise AutomatonError(f"encoded node {s[0]!r} needs two children")
        return [(s[0], tuple(forest(s[1][0])))] + forest(s[1][1])

    out = forest(t)
    if len(out) != 1:
        raise AutomatonError("the root of an encoding has no siblings")
    return out[0]


def adapted_convolve(*trees) -> tuple:
    """Convolution whose padding is NIL where the encoding of a component pads.

    Coordinate i at a node outside t_i reads NIL when the node is the first
    child, or the right sibling, of a node of t_i, and BOT otherwise.
    """
    n = len(trees)

    def go(parts, pad_marks):
        lab = tuple(p[0] if p is not None else (NIL if pad_marks[i] else BOT)
                    for i, p in enumerate(parts))
        width = max((len(p[1]) for p in parts if p is not None), default=0)
        kids = []
        prev = [p is not None for p in parts]  # the parent, for the first child
        for j in range(width):
            sub = [p[1][j] if p is not None and j < len(p[1]) else None for p in parts]
            kids.append(go(sub, [sub[i] is None and prev[i] for i in range(n)]))
            prev = [s is not None for s in sub]
        return (lab, tuple(kids))

    return go(list(trees), [False] * n)


def fcns_prime(t) -> tuple:
    """Encoding of an adapted convolution; missing positions are padded per coordinate."""
    def sym(x):
        return x not in (NIL, BOT)

    def pad_from(parent):
        return tuple(NIL if sym(x) else BOT for x in parent)

    def forest(ts, parent):
        if not ts:
            return (pad_from(parent), ())
        head, rest = ts[0], ts[1:]
        return (head[0], (forest(list(head[1]), head[0]), forest(rest, head[0])))

    return forest([t], t[0])


def random_unranked(sigma, rng: random.Random, max_depth: int = 3, max_width: int = 3) -> tuple:
    sigma = sorted(sigma)
    a = rng.choice(sigma)
    if max_depth <= 1:
        return (a, ())
    w = rng.randint(0, max_width)
    return (a, tuple(random_unranked(sigma, rng, max_depth - 1, max_width) for _ in range(w)))


def enumerate_unranked(sigma, max_size: int) -> list:
    """All unranked trees with at most max_size nodes."""
    sigma = sorted(sigma)
    by_size: dict = {}

    def forests(n):
        # forests with exactly n nodes
        if n == 0:
            return [()]
        out = []
        for first in range(1, n + 1):
            for t in trees(first):
                for rest in forests(n - first):
                    out.append((t,) + rest)
        return out

    def trees(n):
        if n in by_size:
            return by_size[n]
        out = [(a, f) for a in sigma for f in forests(n - 1)] if n >= 1 else []
        by_size[n] = out
        return out

    return [t for n in range(1, max_size + 1) for t in trees(n)]


# ---------------------------------------------------------------- unranked automata

@dataclass(frozen=True)
class NUTA:
    """Transitions (state, letter, horizontal word automaton over states)."""
    states: frozenset
    initial: object
    transitions: tuple
    arity: int | None = 1
    sigma: frozenset = frozenset()

    @cached_property
    def by_letter(self) -> dict:
        out: dict = {}
        for q, a, H in self.transitions:
            out.setdefault(a, []).append((q, H))
        return out


def horizontal_accepts(H: WordAutomaton, choices) -> bool:
    """Does H accept some word x_1..x_m with x_i drawn from choices[i]?"""
    cur = eps_closure(H, [H.initial])
    for options in choices:
        nxt = set()
        for h in cur:
            for x in options:
                nxt |= H.successors(h, x)
        cur = eps_closure(H, nxt)
        if not cur:
            return False
    return bool(cur & H.final)


def nuta_states(A: NUTA, t) -> frozenset:
    kids = [nuta_states(A, c) for c in t[1]]
    return frozenset(q for q, H in A.by_letter.get(t[0], ()) if horizontal_accepts(H, kids))


def nuta_member(A: NUTA, t) -> bool:
    return A.initial in nuta_states(A, t)


def nuta_rel_member(A: NUTA, *trees) -> bool:
    return nuta_member(A, tree_convolve(*trees))


def _presence(letter) -> tuple:
    return tuple(x not in (NIL, BOT) for x in letter)


def _strip(letter) -> tuple:
    return tuple(BOT if x == NIL else x for x in letter)


def _end_marker(present) -> tuple:
    return tuple(NIL if p else BOT for p in present)


def nuta_to_nta(A: NUTA, sigma) -> TreeAutomaton:
    """NTA over encodings: accepts fcns(t_1) x ... x fcns(t_n) iff A accepts t_1 x ... x t_n.

    A node state (i, h) means the node continues the sibling list of
    horizontal automaton number i from state h; index -1 is the root's list,
    which holds exactly the initial state.  Padding leaves close a list in a
    final horizontal state.
    """
    n = A.arity
    ranks = fcns_ranks(sigma)
    letters = [a for a in itertools.product(sorted(sigma) + [NIL, BOT], repeat=n)
               if any(x not in (NIL, BOT) for x in a)]
    ends = [a for a in itertools.product([NIL, BOT], repeat=n) if NIL in a]
    root_h = WordAutomaton(frozenset({0, 1}), frozenset({(0, A.initial, 1)}), 0,
                           frozenset({1}), FINITE, None)
    hs = {-1: root_h}
    index = {}
    rules = []
    for q, a, H in A.transitions:
        if H not in index:
            index[H] = len(index)
            hs[index[H]] = H
        rules.append((q, a, index[H]))
    by_letter: dict = {}
    for q, a, i in rules:
        by_letter.setdefault(a, []).append((q, i))
    start = (-1, 0)
    seen = {start}
    todo = [start]
    trans = set()
    while todo:
        s = todo.pop()
        i, h = s
        H = hs[i]
        for a in letters:
            if s == start and not all(_presence(a)):
                continue
            for q, j in by_letter.get(_strip(a), ()):
                for h2 in _step(H, h, q):
                    first = (j, hs[j].initial)
                    sib = (i, h2)
                    trans.add((s, a, (first, sib)))
                    for x in (first, sib):
                        if x not in seen:
                            seen.add(x)
                            todo.append(x)
        if eps_closure(H, [h]) & H.final:
            for e in ends:
                trans.add((s, e, ()))
    B = make_tree_automaton(trans, [start], ranks, n, "nta", FINITE, (), seen)
    return trim_tree_automaton(nta_product(trim_tree_automaton(B), canonical_tree_checker(ranks, n)))


def _step(H: WordAutomaton, h, q) -> set:
    out = set()
    for x in eps_closure(H, [h]):
        out |= H.successors(x, q)
    return out


def nta_to_nuta(B: TreeAutomaton) -> NUTA:
    """NUTA over unranked convolutions for the relation an encoding automaton recognizes.

    NUTA states are (B state, encoded letter, first-child state, sibling state);
    the horizontal automaton walks the sibling chain and checks the padding
    pattern each encoded letter must carry.
    """
    n = B.arity
    node_moves = [(q, a, kids) for q, a, kids in B.transitions if len(kids) == 2]
    end_ok = {(q, a) for q, a, kids in B.transitions if not kids}
    by_state: dict = {}
    for q, a, (l, r) in node_moves:
        by_state.setdefault(q, []).append((q, a, l, r))
    horizontals: dict = {}

    def horizontal(first, present):
        key = (first, present)
        if key in horizontals:
            return horizontals[key]
        start = ("h", first, present)
        seen = {start}
        todo = [start]
        trans = set()
        final = set()
        while todo:
            st = todo.pop()
            _, expect, prev = st
            if (expect, _end_marker(prev)) in end_ok:
                final.add(st)
            for q, a, l, r in by_state.get(expect, ()):
                want = tuple(x if p2 else (NIL if p else BOT)
                             for x, p, p2 in zip(a, prev, _presence(a)))
                if want != a:
                    continue
                nxt = ("h", r, _presence(a))
                trans.add((st, (q, a, l, r), nxt))
                if nxt not in seen:
                    seen.add(nxt)
                    todo.append(nxt)
        H = make(trans, start, final, FINITE, None, seen)
        horizontals[key] = H
        return H

    rules = []
    root = ("root",)
    for q0 in B.initial:
        for q, a, l, r in by_state.get(q0, ()):
            if not all(_presence(a)):
                continue
            if (r, _end_marker(_presence(a))) not in end_ok:
                continue
            rules.append((root, _strip(a), horizontal(l, _presence(a))))
    for q, moves in by_state.items():
        for _, a, l, r in moves:
            rules.append(((q, a, l, r), _strip(a), horizontal(l, _presence(a))))
    states = {root} | {m for m, _, _ in rules}
    sigma = frozenset(x for _, a, _ in B.transitions for x in a if x not in (NIL, BOT))
    return NUTA(frozenset(states), root, tuple(rules), n, sigma)


def ramsey_eval_unranked(R: NUTA, sigma=None, strategy: str = "auto", budget: Budget | None = None,
                         assume_checked: bool = False):
    """Unranked Ramsey evaluation through the encoding; a bool for binary R."""
    if R.arity is None or R.arity < 2:
        raise AutomatonError("ramsey evaluation needs arity >= 2")
    sigma = _sigma(R, sigma)
    B = nuta_to_nta(R, sigma)
    out = ramsey_eval_tree(B, strategy, budget, assume_checked)
    if isinstance(out, bool):
        return out
    return nta_to_nuta(out)


def encoded_relation(R: NUTA, sigma=None) -> TreeAutomaton:
    return nuta_to_nta(R, _sigma(R, sigma))


def _sigma(R: NUTA, sigma) -> frozenset:
    if sigma is not None:
        return frozenset(sigma)
    if R.sigma:
        return R.sigma
    return frozenset(x for _, a, _ in R.transitions for x in a if x not in (NIL, BOT))
