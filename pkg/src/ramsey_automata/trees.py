"""Ranked trees, contexts, and tree automata (finite and Büchi, nondeterministic and alternating).

Trees are nested tuples ``(label, (child, ...))``.  Positions are tuples of
1-based child indices.  Contexts are trees whose leaves may carry ``HOLE``.
Top-down automata keep a *set* of root states, so a deterministic bottom-up
automaton is stored as its reversed transitions with its accepting states as
roots.
"""
from __future__ import annotations

import itertools
import random
from collections import deque
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Hashable, Iterable, Sequence

from .config import Budget, BudgetError, default_budget
from .words import BOT, AutomatonError

HOLE = "□"
FINITE = "finite"
BUCHI = "buchi"
KINDS = ("nta", "dup", "ddown", "nbta")


# ---------------------------------------------------------------- trees

def node(label, *children) -> tuple:
    return (label, tuple(children))


def leaf(label) -> tuple:
    return (label, ())


def label_of(t) -> Hashable:
    return t[0]


def children_of(t) -> tuple:
    return t[1]


def subtree(t, pos: Sequence[int]):
    for i in pos:
        t = t[1][i - 1]
    return t


def domain(t) -> list:
    out = []
    stack = [((), t)]
    while stack:
        pos, s = stack.pop()
        out.append(pos)
        for i, c in enumerate(s[1], 1):
            stack.append((pos + (i,), c))
    return sorted(out)


def size(t) -> int:
    return 1 + sum(size(c) for c in t[1])


def depth(t) -> int:
    return 1 + max((depth(c) for c in t[1]), default=0)


def holes(t) -> list:
    """Hole positions in lexicographic order."""
    return [p for p in domain(t) if subtree(t, p)[0] == HOLE]


def nodes(t) -> list:
    return [p for p in domain(t) if subtree(t, p)[0] != HOLE]


def fill(ctx, fillers: Sequence) -> tuple:
    """Replace the i-th hole (lexicographic order) by fillers[i]."""
    fillers = list(fillers)
    it = iter(fillers)
    count = len(holes(ctx))
    if count != len(fillers):
        raise AutomatonError(f"context has {count} holes, got {len(fillers)} fillers")

    def go(s):
        if s[0] == HOLE:
            return next(it)
        return (s[0], tuple(go(c) for c in s[1]))

    return go(ctx)


def is_ranked(t, ranks: dict) -> bool:
    if t[0] == HOLE:
        return not t[1]
    if ranks.get(t[0]) != len(t[1]):
        return False
    return all(is_ranked(c, ranks) for c in t[1])


def show(t) -> str:
    if not t[1]:
        return _lab(t[0])
    return f"{_lab(t[0])}({', '.join(show(c) for c in t[1])})"


def _lab(x) -> str:
    if isinstance(x, tuple):
        return "[" + ",".join(_lab(y) for y in x) + "]"
    return str(x)


def tree_convolve(*trees) -> tuple:
    """Convolution: domain is the union, missing coordinates padded with BOT."""
    if not trees:
        raise AutomatonError("nothing to convolve")

    def go(parts):
        lab = tuple(BOT if p is None else p[0] for p in parts)
        width = max((len(p[1]) for p in parts if p is not None), default=0)
        kids = []
        for i in range(width):
            kids.append(go([p[1][i] if p is not None and i < len(p[1]) else None for p in parts]))
        return (lab, tuple(kids))

    return go(list(trees))


def tree_deconvolve(t, arity: int | None = None) -> tuple:
    arity = len(t[0]) if arity is None else arity

    def go(s, i):
        kids = [go(c, i) for c in s[1] if c[0][i] != BOT]
        return (s[0][i], tuple(kids))

    out = []
    for i in range(arity):
        if t[0][i] == BOT:
            raise AutomatonError("root padded: empty tree component")
        out.append(go(t, i))
    return tuple(out)


def letter_rank(letter, ranks: dict) -> int:
    if isinstance(letter, tuple):
        return max((ranks[x] for x in letter if x != BOT), default=0)
    return ranks[letter]


def convolution_letters(ranks: dict, arity: int) -> list:
    syms = sorted(ranks) + [BOT]
    return [a for a in itertools.product(syms, repeat=arity) if any(x != BOT for x in a)]


def enumerate_trees(ranks: dict, max_depth: int) -> list:
    """All ranked trees over ``ranks`` with depth <= max_depth."""
    layers: list = [[]]
    for _ in range(max_depth):
        prev = layers[-1]
        cur = []
        for a in sorted(ranks, key=repr):
            r = ranks[a]
            if r == 0:
                cur.append((a, ()))
            else:
                for kids in itertools.product(prev, repeat=r):
                    cur.append((a, tuple(kids)))
        layers.append(cur)
    return layers[-1]


def random_tree(ranks: dict, rng: random.Random, max_depth: int = 4) -> tuple:
    leaves = [a for a in ranks if ranks[a] == 0]
    if not leaves:
        raise AutomatonError("alphabet has no constants")
    syms = sorted(ranks, key=repr)
    if max_depth <= 1:
        return (rng.choice(sorted(leaves, key=repr)), ())
    a = rng.choice(syms)
    return (a, tuple(random_tree(ranks, rng, max_depth - 1) for _ in range(ranks[a])))


# ---------------------------------------------------------------- nondeterministic automata

@dataclass(frozen=True)
class TreeAutomaton:
    """Top-down tree automaton.  Transitions are (state, letter, child-state tuple)."""
    states: frozenset
    initial: frozenset
    transitions: frozenset
    ranks: tuple  # sorted (base symbol, rank) pairs
    arity: int | None = 1
    kind: str = "nta"
    mode: str = FINITE
    final: frozenset = frozenset()

    def __post_init__(self):
        if self.kind not in KINDS:
            raise AutomatonError(f"unknown kind {self.kind!r}")
        if not self.initial <= self.states:
            raise AutomatonError("initial states not declared")
        rk = dict(self.ranks)
        for q, a, kids in self.transitions:
            if q not in self.states or any(k not in self.states for k in kids):
                raise AutomatonError(f"transition from {q!r} uses undeclared states")
            if self.arity is not None:
                if len(a) != self.arity or all(x == BOT for x in a):
                    raise AutomatonError(f"bad letter {a!r}")
            if letter_rank(a, rk) != len(kids):
                raise AutomatonError(f"letter {a!r} used with {len(kids)} children")

    @cached_property
    def rank(self) -> dict:
        return dict(self.ranks)

    @cached_property
    def by_state(self) -> dict:
        out: dict = {}
        for q, a, kids in self.transitions:
            out.setdefault(q, {}).setdefault(a, []).append(kids)
        return out

    @cached_property
    def by_letter(self) -> dict:
        out: dict = {}
        for q, a, kids in self.transitions:
            out.setdefault(a, []).append((q, kids))
        return out

    @cached_property
    def letters(self) -> frozenset:
        return frozenset(a for _, a, _ in self.transitions)

    def rk(self, letter) -> int:
        return letter_rank(letter, self.rank)

    def moves(self, q, a) -> list:
        return self.by_state.get(q, {}).get(a, [])


def make_tree_automaton(transitions, initial, ranks: dict, arity=1, kind="nta",
                        mode=FINITE, final=(), states=()) -> TreeAutomaton:
    transitions = frozenset((q, a, tuple(k)) for q, a, k in transitions)
    st = set(states) | set(initial) | set(final)
    for q, _, kids in transitions:
        st.add(q)
        st.update(kids)
    return TreeAutomaton(frozenset(st), frozenset(initial), transitions,
                         tuple(sorted(ranks.items(), key=lambda kv: repr(kv[0]))),
                         arity, kind, mode, frozenset(final))


def with_ranks(A: TreeAutomaton, ranks: dict) -> TreeAutomaton:
    merged = dict(A.rank)
    merged.update(ranks)
    return make_tree_automaton(A.transitions, A.initial, merged, A.arity, A.kind, A.mode,
                               A.final, A.states)


def accepting_states(A: TreeAutomaton, t) -> frozenset:
    """States q from which A accepts the finite tree t."""
    kid_sets = [accepting_states(A, c) for c in t[1]]
    out = set()
    for q, kids in A.by_letter.get(t[0], ()):
        if all(k in s for k, s in zip(kids, kid_sets)):
            out.add(q)
    return frozenset(out)


def nta_member(A: TreeAutomaton, t) -> bool:
    if A.mode != FINITE:
        raise AutomatonError("membership of finite trees needs a finite-mode automaton")
    return bool(accepting_states(A, t) & A.initial)


def is_bottom_up_deterministic(A: TreeAutomaton) -> bool:
    seen = {}
    for q, a, kids in A.transitions:
        key = (a, kids)
        if seen.setdefault(key, q) != q:
            return False
    return True


def is_top_down_deterministic(A: TreeAutomaton) -> bool:
    if len(A.initial) > 1:
        return False
    return all(len(v) <= 1 for m in A.by_state.values() for v in m.values())


def productive_states(A: TreeAutomaton) -> dict:
    """Least fixpoint: state -> (letter, kids) of a minimal-depth witness transition."""
    choice: dict = {}
    changed = True
    while changed:
        changed = False
        new = {}
        for q, a, kids in sorted(A.transitions, key=repr):
            if q in choice or q in new:
                continue
            if all(k in choice for k in kids):
                new[q] = (a, kids)
        if new:
            choice.update(new)
            changed = True
    return choice


def witness_tree(choice: dict, q) -> tuple:
    a, kids = choice[q]
    return (a, tuple(witness_tree(choice, k) for k in kids))


def nta_is_empty(A: TreeAutomaton):
    """Return (empty, minimal-depth witness tree or None)."""
    if A.mode != FINITE:
        raise AutomatonError("use nbta_is_empty for büchi automata")
    choice = productive_states(A)
    roots = [q for q in A.initial if q in choice]
    if not roots:
        return True, None
    best = min((witness_tree(choice, q) for q in roots), key=lambda t: (depth(t), size(t), repr(t)))
    return False, best


def trim_tree_automaton(A: TreeAutomaton) -> TreeAutomaton:
    """Keep productive (finite mode) states reachable from the roots."""
    if A.mode == FINITE:
        good = set(productive_states(A))
    else:
        good = set(nbta_nonempty_states(A)[0])
    trans = [(q, a, k) for q, a, k in A.transitions if q in good and all(x in good for x in k)]
    reach = set(q for q in A.initial if q in good)
    todo = deque(reach)
    by = {}
    for q, a, k in trans:
        by.setdefault(q, []).append(k)
    while todo:
        q = todo.popleft()
        for k in by.get(q, ()):
            for x in k:
                if x not in reach:
                    reach.add(x)
                    todo.append(x)
    trans = [(q, a, k) for q, a, k in trans if q in reach]
    return make_tree_automaton(trans, A.initial & reach, A.rank, A.arity, A.kind, A.mode,
                               A.final & reach, reach)


def number_tree_states(A: TreeAutomaton) -> TreeAutomaton:
    order: dict = {}
    for q in sorted(A.initial, key=repr):
        order.setdefault(q, len(order))
    todo = deque(sorted(A.initial, key=repr))
    while todo:
        q = todo.popleft()
        for a in sorted(A.by_state.get(q, {}), key=repr):
            for kids in sorted(A.moves(q, a), key=repr):
                for k in kids:
                    if k not in order:
                        order[k] = len(order)
                        todo.append(k)
    for q in sorted(A.states - set(order), key=repr):
        order[q] = len(order)
    trans = [(order[q], a, tuple(order[k] for k in kids)) for q, a, kids in A.transitions]
    return make_tree_automaton(trans, [order[q] for q in A.initial], A.rank, A.arity, A.kind,
                               A.mode, [order[q] for q in A.final], order.values())


def nta_product(A: TreeAutomaton, B: TreeAutomaton, budget: Budget | None = None) -> TreeAutomaton:
    """Intersection of finite-mode automata (reachable part only)."""
    if A.arity != B.arity:
        raise AutomatonError("alphabet mismatch")
    if A.mode != FINITE or B.mode != FINITE:
        raise AutomatonError("use nbta_product for büchi automata")
    budget = budget or default_budget()
    init = {(p, q) for p in A.initial for q in B.initial}
    seen = set(init)
    todo = deque(init)
    trans = []
    while todo:
        p, q = todo.popleft()
        outb = B.by_state.get(q, {})
        for a, kas in A.by_state.get(p, {}).items():
            for kb in outb.get(a, ()):
                for ka in kas:
                    kids = tuple(zip(ka, kb))
                    trans.append(((p, q), a, kids))
                    for k in kids:
                        if k not in seen:
                            seen.add(k)
                            todo.append(k)
                            budget.check(len(seen), "tree product")
    ranks = dict(A.rank)
    ranks.update(B.rank)
    kind = "ddown" if A.kind == B.kind == "ddown" else "nta"
    return make_tree_automaton(trans, init, ranks, A.arity, kind, FINITE, (), seen)


def nta_union(A: TreeAutomaton, B: TreeAutomaton) -> TreeAutomaton:
    if A.arity != B.arity or A.mode != B.mode:
        raise AutomatonError("alphabet mismatch")
    tag = lambda s, q: (s, q)  # noqa: E731
    trans = [(tag(0, q), a, tuple(tag(0, k) for k in kids)) for q, a, kids in A.transitions]
    trans += [(tag(1, q), a, tuple(tag(1, k) for k in kids)) for q, a, kids in B.transitions]
    ranks = dict(A.rank)
    ranks.update(B.rank)
    init = [tag(0, q) for q in A.initial] + [tag(1, q) for q in B.initial]
    states = [tag(0, q) for q in A.states] + [tag(1, q) for q in B.states]
    final = [tag(0, q) for q in A.final] + [tag(1, q) for q in B.final]
    return make_tree_automaton(trans, init, ranks, A.arity, "nta", A.mode, final, states)


def relabel_tree_automaton(A: TreeAutomaton, fn, arity="same", ranks=None) -> TreeAutomaton:
    trans = [(q, fn(a), kids) for q, a, kids in A.transitions]
    return make_tree_automaton(trans, A.initial, A.rank if ranks is None else ranks,
                               A.arity if arity == "same" else arity, "nta", A.mode, A.final,
                               A.states)


def nta_project(R: TreeAutomaton, keep: Sequence[int]) -> TreeAutomaton:
    """Keep the listed coordinates; dropped-only subtrees are checked for existence."""
    keep = list(keep)
    if not keep:
        raise AutomatonError("projection onto no coordinates")
    if R.mode != FINITE:
        raise AutomatonError("projection is for finite-mode automata")

    def sub(a):
        return tuple(a[i] for i in keep)

    dead = lambda a: all(x == BOT for x in sub(a))  # noqa: E731
    # states accepting some tree whose kept coordinates are all padding
    vanish: set = set()
    changed = True
    while changed:
        changed = False
        for q, a, kids in R.transitions:
            if q not in vanish and dead(a) and all(k in vanish for k in kids):
                vanish.add(q)
                changed = True
    trans = set()
    for q, a, kids in R.transitions:
        if dead(a):
            continue
        b = sub(a)
        r = letter_rank(b, R.rank)
        if all(k in vanish for k in kids[r:]):
            trans.add((q, b, kids[:r]))
    return trim_tree_automaton(make_tree_automaton(trans, R.initial, R.rank, len(keep), "nta",
                                                   FINITE, (), R.states))


def tree_permute(R: TreeAutomaton, order: Sequence[int]) -> TreeAutomaton:
    return relabel_tree_automaton(R, lambda a: tuple(a[i] for i in order))


def tree_cylindrify(R: TreeAutomaton, pos: int, ranks: dict | None = None) -> TreeAutomaton:
    """Insert an unconstrained coordinate at ``pos``."""
    ranks = dict(R.rank if ranks is None else ranks)
    syms = sorted(ranks, key=repr)
    ins = lambda a, x: a[:pos] + (x,) + a[pos:]  # noqa: E731
    FREE = ("free",)
    trans = set()
    # (q, True): the new coordinate is present here; (q, False): it is padding
    # (FREE, x): the old coordinates are padding, the new one is any tree
    for q, a, kids in R.transitions:
        r = len(kids)
        trans.add(((q, False), ins(a, BOT), tuple((k, False) for k in kids)))
        for x in syms:
            rx = ranks[x]
            width = max(r, rx)
            out = []
            for i in range(width):
                if i < r:
                    out.append((kids[i], i < rx))
                else:
                    out.append(FREE)
            trans.add(((q, True), ins(a, x), tuple(out)))
    for x in syms:
        pad = (BOT,) * R.arity
        trans.add((FREE, ins(pad, x), tuple([FREE] * ranks[x])))
    A = make_tree_automaton(trans, [(q, True) for q in R.initial], ranks, R.arity + 1, "nta",
                            FINITE, (), [(q, b) for q in R.states for b in (True, False)] + [FREE])
    return trim_tree_automaton(A)


def tree_lift(R: TreeAutomaton, positions: Sequence[int], arity: int, ranks: dict) -> TreeAutomaton:
    positions = list(positions)
    A = R
    for _ in range(arity - R.arity):
        A = tree_cylindrify(A, A.arity, ranks)
    free = [i for i in range(arity) if i not in positions]
    holder = positions + free
    return tree_permute(A, [holder.index(i) for i in range(arity)])


def tree_diagonal(R: TreeAutomaton, i: int, j: int) -> TreeAutomaton:
    keep = [(q, a, k) for q, a, k in R.transitions if a[i] == a[j]]
    A = make_tree_automaton(keep, R.initial, R.rank, R.arity, "nta", FINITE, (), R.states)
    return nta_project(A, [c for c in range(R.arity) if c != j])


def tree_singleton(t, ranks: dict) -> TreeAutomaton:
    trans = []
    for pos in domain(t):
        s = subtree(t, pos)
        trans.append((pos, (s[0],), tuple(pos + (i,) for i in range(1, len(s[1]) + 1))))
    return make_tree_automaton(trans, [()], ranks, 1, "ddown")


def tree_universal(ranks: dict, arity: int = 1) -> TreeAutomaton:
    if arity == 1:
        trans = [(0, (a,), (0,) * r) for a, r in ranks.items()]
        return make_tree_automaton(trans, [0], ranks, 1, "ddown")
    return canonical_tree_checker(ranks, arity)


def canonical_tree_checker(ranks: dict, arity: int) -> TreeAutomaton:
    """Top-down automaton for canonical convolutions; state = padded coordinates."""
    trans = []
    for a in convolution_letters(ranks, arity):
        D = frozenset(i for i in range(arity) if a[i] == BOT)
        r = letter_rank(a, ranks)
        kids = []
        for j in range(1, r + 1):
            kids.append(D | {i for i in range(arity) if a[i] != BOT and ranks[a[i]] < j})
        trans.append((D, a, tuple(frozenset(k) for k in kids)))
    A = make_tree_automaton(trans, [frozenset()], ranks, arity, "ddown")
    return trim_tree_automaton(A)


def determinize_bottom_up(A: TreeAutomaton, letters: Iterable | None = None,
                          budget: Budget | None = None) -> TreeAutomaton:
    """Subset construction; the result is a complete bottom-up deterministic automaton."""
    if A.mode != FINITE:
        raise AutomatonError("determinization needs finite mode")
    budget = budget or default_budget()
    letters = sorted(set(letters) if letters is not None else A.letters, key=repr)
    by_letter = A.by_letter
    known: list = []
    index = set()
    trans = {}
    changed = True
    while changed:
        changed = False
        for a in letters:
            r = A.rk(a)
            for kids in itertools.product(known, repeat=r):
                if (a, kids) in trans:
                    continue
                S = frozenset(q for q, ks in by_letter.get(a, ())
                              if all(k in s for k, s in zip(ks, kids)))
                trans[(a, kids)] = S
                if S not in index:
                    index.add(S)
                    known.append(S)
                    changed = True
                    if len(known) > budget.max_subsets:
                        raise BudgetError(f"bottom-up determinization exceeds {budget.max_subsets} subsets")
    final = [S for S in known if S & A.initial]
    triples = [(S, a, kids) for (a, kids), S in trans.items()]
    return make_tree_automaton(triples, final, A.rank, A.arity, "dup", FINITE, (), known)


def tree_complement(A: TreeAutomaton, letters: Iterable | None = None,
                    budget: Budget | None = None) -> TreeAutomaton:
    D = A if A.kind == "dup" and letters is None else determinize_bottom_up(A, letters, budget)
    if D.kind != "dup":
        raise AutomatonError("complement needs a complete bottom-up deterministic automaton")
    return make_tree_automaton(D.transitions, D.states - D.initial, D.rank, D.arity, "dup",
                               FINITE, (), D.states)


def tree_relation_complement(R: TreeAutomaton, ranks: dict | None = None,
                             budget: Budget | None = None) -> TreeAutomaton:
    ranks = dict(R.rank if ranks is None else ranks)
    C = tree_complement(R, convolution_letters(ranks, R.arity), budget)
    return trim_tree_automaton(nta_product(canonical_tree_checker(ranks, R.arity),
                                           with_ranks(C, ranks), budget))


def single_root(A: TreeAutomaton, fresh="ι") -> TreeAutomaton:
    """Equivalent automaton with one root state; a fresh root copies every root's moves."""
    if len(A.initial) == 1:
        return A
    trans = set(A.transitions)
    for q, a, kids in A.transitions:
        if q in A.initial:
            trans.add((fresh, a, kids))
    final = set(A.final)
    if A.final & A.initial:
        final.add(fresh)
    return make_tree_automaton(trans, [fresh], A.rank, A.arity, A.kind if A.kind != "ddown" else "nta",
                               A.mode, final, set(A.states) | {fresh})


def nta_equivalent_on(A: TreeAutomaton, B: TreeAutomaton, trees: Iterable) -> bool:
    return all(nta_member(A, t) == nta_member(B, t) for t in trees)


# ---------------------------------------------------------------- büchi tree automata

def nbta_nonempty_states(A: TreeAutomaton):
    """Nested fixpoint: nu X. mu Y. Pre(Y | (F & X)).

    Returns (states with an accepting run, chosen transition per state).  The
    choice respects the inner iteration rank, so following it from any state
    yields an accepting regular run.
    """
    X = set(A.states)
    trans = sorted(A.transitions, key=repr)
    while True:
        target_f = A.final & X
        Y: set = set()
        choice: dict = {}
        changed = True
        while changed:
            changed = False
            new = {}
            for q, a, kids in trans:
                if q in Y or q in new:
                    continue
                if all(k in Y or k in target_f for k in kids):
                    new[q] = (a, kids)
            if new:
                Y.update(new)
                choice.update(new)
                changed = True
        if Y == X:
            return X, choice
        X = Y


@dataclass(frozen=True)
class RunGraph:
    """Finite graph whose unfolding from ``root`` is an accepting regular run."""
    root: Hashable
    edges: dict  # state -> (letter, child states)
    truncated: bool = False

    def unfold(self, max_depth: int) -> tuple:
        """Unfold to a finite tree; cut branches become HOLE leaves."""
        def go(q, d):
            if d == 0:
                return (HOLE, ())
            a, kids = self.edges[q]
            return (a, tuple(go(k, d - 1) for k in kids))
        return go(self.root, max_depth)


def nbta_is_empty(A: TreeAutomaton, cap: int | None = None):
    """Return (empty, RunGraph or None)."""
    good, choice = nbta_nonempty_states(A)
    roots = sorted((q for q in A.initial if q in good), key=repr)
    if not roots:
        return True, None
    root = roots[0]
    cap = cap if cap is not None else max(1, len(A.states)) ** 2
    edges = {}
    todo = deque([root])
    truncated = False
    while todo:
        q = todo.popleft()
        if q in edges:
            continue
        if len(edges) >= cap:
            truncated = True
            break
        edges[q] = choice[q]
        todo.extend(k for k in choice[q][1] if k not in edges)
    return False, RunGraph(root, edges, truncated)


def nbta_product(A: TreeAutomaton, B: TreeAutomaton, budget: Budget | None = None) -> TreeAutomaton:
    """Intersection of büchi tree automata (flag construction; all-final sides skip it)."""
    budget = budget or default_budget()
    a_all = A.final >= A.states
    b_all = B.final >= B.states
    init = {(p, q, 0) for p in A.initial for q in B.initial}
    seen = set(init)
    todo = deque(init)
    trans = []
    while todo:
        p, q, f = todo.popleft()
        if a_all or b_all:
            nf = 0
        elif f == 0:
            nf = 1 if p in A.final else 0
        else:
            nf = 0 if q in B.final else 1
        outb = B.by_state.get(q, {})
        for a, kas in A.by_state.get(p, {}).items():
            for kb in outb.get(a, ()):
                for ka in kas:
                    kids = tuple((x, y, nf) for x, y in zip(ka, kb))
                    trans.append(((p, q, f), a, kids))
                    for k in kids:
                        if k not in seen:
                            seen.add(k)
                            todo.append(k)
                            budget.check(len(seen), "büchi tree product")
    if a_all and b_all:
        final = seen
    elif a_all:
        final = {s for s in seen if s[1] in B.final}
    elif b_all:
        final = {s for s in seen if s[0] in A.final}
    else:
        final = {s for s in seen if s[2] == 1 and s[1] in B.final}
    ranks = dict(A.rank)
    ranks.update(B.rank)
    return make_tree_automaton(trans, init, ranks, A.arity, "nbta", BUCHI, final, seen)


def run_graph_accepts(A: TreeAutomaton, graph_root, edges: dict) -> bool:
    """Does the büchi automaton accept the regular tree given by a letter graph?

    ``edges`` maps graph nodes to (letter, child nodes).  Decided on the
    product graph with the same nested fixpoint.
    """
    # plain string labels, since tuple letters are read as convolutions
    name = {g: f"g{i}" for i, g in enumerate(edges)}
    prod_trans = []
    seen = set()
    init = [(q, graph_root) for q in A.initial]
    todo = deque(init)
    seen.update(init)
    while todo:
        q, g = todo.popleft()
        a, gk = edges[g]
        for kids in A.moves(q, a):
            ks = tuple(zip(kids, gk))
            prod_trans.append(((q, g), name[g], ks))
            for k in ks:
                if k not in seen:
                    seen.add(k)
                    todo.append(k)
    ranks = {}
    for (_, g), lab, ks in prod_trans:
        ranks[lab] = len(ks)
    for g, (a, gk) in edges.items():
        ranks[name[g]] = len(gk)
    P = make_tree_automaton(prod_trans, init, ranks, None, "nbta", BUCHI,
                            [s for s in seen if s[0] in A.final], seen)
    good, _ = nbta_nonempty_states(P)
    return any(s in good for s in init)


# ---------------------------------------------------------------- alternating automata

TRUE = ("true",)
FALSE = ("false",)


def atom(q, i: int) -> tuple:
    return ("atom", q, i)


def f_and(*fs) -> tuple:
    parts = []
    for f in fs:
        if f == FALSE:
            return FALSE
        if f == TRUE:
            continue
        parts.extend(f[1] if f[0] == "and" else [f])
    if not parts:
        return TRUE
    if len(parts) == 1:
        return parts[0]
    return ("and", tuple(parts))


def f_or(*fs) -> tuple:
    parts = []
    for f in fs:
        if f == TRUE:
            return TRUE
        if f == FALSE:
            continue
        parts.extend(f[1] if f[0] == "or" else [f])
    if not parts:
        return FALSE
    if len(parts) == 1:
        return parts[0]
    return ("or", tuple(parts))


def f_map(f, fn) -> tuple:
    """Rename atoms: fn(q, i) returns the replacement formula."""
    tag = f[0]
    if tag == "atom":
        return fn(f[1], f[2])
    if tag in ("and", "or"):
        parts = [f_map(g, fn) for g in f[1]]
        return f_and(*parts) if tag == "and" else f_or(*parts)
    return f


def f_atoms(f) -> set:
    if f[0] == "atom":
        return {(f[1], f[2])}
    if f[0] in ("and", "or"):
        out = set()
        for g in f[1]:
            out |= f_atoms(g)
        return out
    return set()


def f_eval(f, truth) -> bool:
    tag = f[0]
    if tag == "true":
        return True
    if tag == "false":
        return False
    if tag == "atom":
        return truth(f[1], f[2])
    if tag == "and":
        return all(f_eval(g, truth) for g in f[1])
    return any(f_eval(g, truth) for g in f[1])


def _minimize(models) -> frozenset:
    models = sorted(set(models), key=len)
    out = []
    for m in models:
        if not any(o <= m for o in out):
            out.append(m)
    return frozenset(out)


@lru_cache(maxsize=None)
def minimal_models(f) -> frozenset:
    """All inclusion-minimal sets of atoms satisfying f."""
    tag = f[0]
    if tag == "true":
        return frozenset([frozenset()])
    if tag == "false":
        return frozenset()
    if tag == "atom":
        return frozenset([frozenset([(f[1], f[2])])])
    if tag == "or":
        out = set()
        for g in f[1]:
            out |= minimal_models(g)
        return _minimize(out)
    acc = {frozenset()}
    for g in f[1]:
        ms = minimal_models(g)
        acc = set(_minimize(a | m for a in acc for m in ms))
        if not acc:
            return frozenset()
    return _minimize(acc)


def show_formula(f) -> str:
    tag = f[0]
    if tag in ("true", "false"):
        return tag
    if tag == "atom":
        return f"atom({f[1]},{f[2]})"
    sep = " & " if tag == "and" else " | "
    return "(" + sep.join(show_formula(g) for g in f[1]) + ")"


@dataclass(frozen=True)
class AlternatingTreeAutomaton:
    states: frozenset
    initial: Hashable
    delta: tuple  # sorted ((state, letter), formula) pairs; missing entries are false
    ranks: tuple
    arity: int | None = 1
    final: frozenset = frozenset()
    mode: str = FINITE

    @cached_property
    def table(self) -> dict:
        return dict(self.delta)

    @cached_property
    def rank(self) -> dict:
        return dict(self.ranks)

    @cached_property
    def letters(self) -> frozenset:
        return frozenset(a for (_, a) in self.table)

    def formula(self, q, a) -> tuple:
        return self.table.get((q, a), FALSE)

    def rk(self, letter) -> int:
        return letter_rank(letter, self.rank)


def make_ata(delta: dict, initial, ranks: dict, arity=1, final=(), mode=FINITE,
             states=()) -> AlternatingTreeAutomaton:
    st = set(states) | {initial} | set(final)
    for (q, a), f in delta.items():
        st.add(q)
        r = letter_rank(a, ranks)
        for p, i in f_atoms(f):
            if not 1 <= i <= r:
                raise AutomatonError(f"direction {i} out of range for letter {a!r}")
            st.add(p)
    items = tuple(sorted(((k, v) for k, v in delta.items() if v != FALSE), key=lambda kv: repr(kv[0])))
    return AlternatingTreeAutomaton(frozenset(st), initial, items,
                                    tuple(sorted(ranks.items(), key=lambda kv: repr(kv[0]))),
                                    arity, frozenset(final), mode)


def nta_to_ata(A: TreeAutomaton) -> AlternatingTreeAutomaton:
    A = single_root(A)
    (q0,) = A.initial
    delta: dict = {}
    for q, a, kids in A.transitions:
        conj = f_and(*[atom(k, i) for i, k in enumerate(kids, 1)])
        delta[(q, a)] = f_or(delta.get((q, a), FALSE), conj)
    return make_ata(delta, q0, A.rank, A.arity, A.final, A.mode, A.states)


def ata_member(A: AlternatingTreeAutomaton, t, state=None) -> bool:
    """Acceptance of a finite tree by game evaluation."""
    memo: dict = {}

    def acc(q, s):
        key = (q, id(s))
        if key not in memo:
            memo[key] = f_eval(A.formula(q, s[0]), lambda p, i: acc(p, s[1][i - 1]))
        return memo[key]

    return acc(A.initial if state is None else state, t)


def ata_intersect(A: AlternatingTreeAutomaton, B: AlternatingTreeAutomaton,
                  fresh="∧") -> AlternatingTreeAutomaton:
    if A.arity != B.arity:
        raise AutomatonError("alphabet mismatch")
    delta = {}
    for (q, a), f in A.table.items():
        delta[((0, q), a)] = f_map(f, lambda p, i: atom((0, p), i))
    for (q, a), f in B.table.items():
        delta[((1, q), a)] = f_map(f, lambda p, i: atom((1, p), i))
    for a in A.letters | B.letters:
        delta[(fresh, a)] = f_and(delta.get(((0, A.initial), a), FALSE),
                                  delta.get(((1, B.initial), a), FALSE))
    ranks = dict(A.rank)
    ranks.update(B.rank)
    final = {(0, q) for q in A.final} | {(1, q) for q in B.final}
    return make_ata(delta, fresh, ranks, A.arity, final, A.mode)


def ata_intersect_all(automata: Sequence[AlternatingTreeAutomaton]) -> AlternatingTreeAutomaton:
    """Linear-size intersection: one fresh root conjoining every root's formula."""
    first = automata[0]
    delta = {}
    letters = set()
    for n, A in enumerate(automata):
        for (q, a), f in A.table.items():
            delta[((n, q), a)] = f_map(f, lambda p, i, n=n: atom((n, p), i))
            letters.add(a)
    root = ("∧",)
    for a in letters:
        delta[(root, a)] = f_and(*[delta.get(((n, A.initial), a), FALSE)
                                   for n, A in enumerate(automata)])
    ranks = {}
    for A in automata:
        ranks.update(A.rank)
    final = {(n, q) for n, A in enumerate(automata) for q in A.final}
    return make_ata(delta, root, ranks, first.arity, final, first.mode)


def _distribute(choices_per_state, r, budget_cap=200_000):
    """Combine per-state minimal models into child state sets.

    ``choices_per_state`` is a list of (tag, models) where ``tag`` marks the
    obligation set membership.  Yields tuples of (S_i, O_i) per direction.
    """
    partial = {tuple((frozenset(), frozenset()) for _ in range(r))}
    for in_o, models in choices_per_state:
        nxt = set()
        for part in partial:
            for m in models:
                cur = [list(x) for x in part]
                for p, i in m:
                    S, O = cur[i - 1]
                    cur[i - 1] = [S | {p}, O | {p} if in_o else O]
                nxt.add(tuple((S, O) for S, O in cur))
        partial = nxt
        if len(partial) > budget_cap:
            raise BudgetError("dealternation branching exceeds budget")
        if not partial:
            break
    return partial


def _repr_cache():
    memo: dict = {}

    def key(q):
        k = memo.get(q)
        if k is None:
            k = memo[q] = repr(q)
        return k

    return key


def dealternate(A: AlternatingTreeAutomaton, budget: Budget | None = None,
                max_set: int | None = None) -> TreeAutomaton:
    """Breakpoint construction: NBTA states (S, O) with O the pending obligations.

    ``max_set`` drops successors whose state set is larger; only sound when
    runs are known to need at most that many copies per node.
    """
    budget = budget or default_budget()
    F = A.final if A.mode == BUCHI else frozenset(A.states)
    letters = sorted(A.letters, key=repr)
    init = (frozenset([A.initial]), frozenset())
    seen = {init}
    todo = deque([init])
    trans = []
    key = _repr_cache()
    while todo:
        S, O = todo.popleft()
        breakpoint_ = not O
        order = sorted(S, key=key)
        for a in letters:
            r = A.rk(a)
            per = []
            dead = False
            for q in order:
                ms = minimal_models(A.formula(q, a))
                if not ms:
                    dead = True
                    break
                per.append((q in O or breakpoint_, ms))
            if dead:
                continue
            for combo in _distribute(per, r):
                if max_set is not None and any(len(Si) > max_set for Si, _ in combo):
                    continue
                kids = tuple((Si, Oi - F) for Si, Oi in combo)
                trans.append(((S, O), a, kids))
                for k in kids:
                    if k not in seen:
                        seen.add(k)
                        todo.append(k)
                        budget.check(len(seen), "dealternation")
    final = {s for s in seen if not s[1]}
    return make_tree_automaton(trans, [init], A.rank, A.arity, "nbta", BUCHI, final, seen)


def ata_to_nta_finite(A: AlternatingTreeAutomaton, budget: Budget | None = None) -> TreeAutomaton:
    """Subset construction for finite trees: states are sets of pending ATA states."""
    budget = budget or default_budget()
    letters = sorted(A.letters, key=repr)
    init = frozenset([A.initial])
    seen = {init}
    todo = deque([init])
    trans = []
    key = _repr_cache()
    while todo:
        S = todo.popleft()
        order = sorted(S, key=key)
        for a in letters:
            r = A.rk(a)
            per = []
            dead = False
            for q in order:
                ms = minimal_models(A.formula(q, a))
                if not ms:
                    dead = True
                    break
                per.append((False, ms))
            if dead:
                continue
            for combo in _distribute(per, r):
                kids = tuple(Si for Si, _ in combo)
                trans.append((S, a, kids))
                for k in kids:
                    if k not in seen:
                        seen.add(k)
                        todo.append(k)
                        budget.check(len(seen), "alternation removal")
    return make_tree_automaton(trans, [init], A.rank, A.arity, "nta", FINITE, (), seen)


def as_tuple_tree(t) -> tuple:
    """Relabel a plain tree with 1-tuples, the letter shape of unary automata."""
    return ((t[0],), tuple(as_tuple_tree(c) for c in t[1]))


def rel_member(A: TreeAutomaton, *trees) -> bool:
    """Is the tuple of trees in the relation (or language, for one tree)?"""
    t = tree_convolve(*trees)
    return nta_member(A, t)
