"""Finite-word and Büchi automata over convolution alphabets.

A letter of an arity-k relation automaton is a k-tuple whose entries are base
symbols or ``BOT``.  Automata with ``arity=None`` carry arbitrary hashable
letters (the comb-encoding alphabet uses pairs plus ``"#"``).  ``EPS`` marks
an epsilon transition.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from itertools import product as cartesian
from typing import Hashable, Iterable, Sequence

import networkx as nx

from .config import Budget, BudgetError, default_budget

BOT = "_"
EPS = None
FINITE = "finite"
BUCHI = "buchi"


class AutomatonError(ValueError):
    pass


@dataclass(frozen=True)
class WordAutomaton:
    states: frozenset
    transitions: frozenset  # (src, letter, dst); letter EPS for epsilon
    initial: Hashable
    final: frozenset
    mode: str = FINITE
    arity: int | None = 1

    def __post_init__(self):
        if self.initial not in self.states:
            raise AutomatonError(f"initial state {self.initial!r} not declared")
        for p, a, q in self.transitions:
            if p not in self.states or q not in self.states:
                raise AutomatonError(f"transition {p!r} -{a!r}-> {q!r} uses undeclared state")
            if a is not EPS and self.arity is not None:
                if len(a) != self.arity:
                    raise AutomatonError(f"letter {a!r} has wrong arity")
                if all(x == BOT for x in a):
                    raise AutomatonError("all-padding letter")
        if not self.final <= self.states:
            raise AutomatonError("final states not declared")
        if self.mode not in (FINITE, BUCHI):
            raise AutomatonError(f"unknown mode {self.mode!r}")

    @cached_property
    def delta(self) -> dict:
        out: dict = {}
        for p, a, q in self.transitions:
            out.setdefault(p, {}).setdefault(a, set()).add(q)
        return out

    @cached_property
    def letters(self) -> frozenset:
        return frozenset(a for _, a, _ in self.transitions if a is not EPS)

    @cached_property
    def has_epsilon(self) -> bool:
        return any(a is EPS for _, a, _ in self.transitions)

    def successors(self, p, a) -> set:
        return self.delta.get(p, {}).get(a, set())

    def out(self, p) -> dict:
        return self.delta.get(p, {})

    @property
    def size(self) -> int:
        return len(self.states)


def make(transitions: Iterable, initial, final: Iterable, mode=FINITE, arity=1,
         states: Iterable = ()) -> WordAutomaton:
    """Build an automaton whose state set is implied by the transitions."""
    transitions = frozenset(transitions)
    st = set(states) | {initial} | set(final)
    for p, _, q in transitions:
        st.add(p)
        st.add(q)
    return WordAutomaton(frozenset(st), transitions, initial, frozenset(final), mode, arity)


def base_symbols(A: WordAutomaton) -> frozenset:
    if A.arity is None:
        return A.letters
    return frozenset(x for a in A.letters for x in a if x != BOT)


# ---------------------------------------------------------------- convolution

def as_word(w) -> tuple:
    if isinstance(w, str):
        return tuple(w)
    return tuple(w)


def convolve(*words) -> tuple:
    words = [as_word(w) for w in words]
    if not words:
        return ()
    n = max(len(w) for w in words)
    return tuple(tuple(w[i] if i < len(w) else BOT for w in words) for i in range(n))


def deconvolve(word: Sequence, arity: int | None = None) -> tuple:
    word = tuple(word)
    if arity is None:
        if not word:
            raise AutomatonError("arity needed to deconvolve the empty word")
        arity = len(word[0])
    if not is_canonical(word, arity):
        raise AutomatonError("not a canonical convolution")
    return tuple(tuple(a[i] for a in word if a[i] != BOT) for i in range(arity))


def is_canonical(word: Sequence, arity: int) -> bool:
    ended = [False] * arity
    for a in word:
        if len(a) != arity or all(x == BOT for x in a):
            return False
        for i, x in enumerate(a):
            if x == BOT:
                ended[i] = True
            elif ended[i]:
                return False
    return True


def convolution_letters(sigma: Iterable, arity: int) -> list:
    padded = sort_symbols(sigma) + [BOT]
    return [a for a in cartesian(padded, repeat=arity) if any(x != BOT for x in a)]


def canonical_checker(sigma: Iterable, arity: int) -> WordAutomaton:
    """DFA accepting exactly the canonical convolutions of ``arity`` words."""
    sigma = sort_symbols(sigma)
    letters = convolution_letters(sigma, arity)
    trans = set()
    states = [frozenset(s) for s in _subsets(range(arity))]
    for ended in states:
        if len(ended) == arity:
            continue
        for a in letters:
            if any(a[i] != BOT for i in ended):
                continue
            nxt = ended | {i for i in range(arity) if a[i] == BOT}
            trans.add((ended, a, frozenset(nxt)))
    A = make(trans, frozenset(), states, arity=arity, states=states)
    return trim(A)


def _subsets(xs):
    xs = list(xs)
    for bits in range(1 << len(xs)):
        yield [x for i, x in enumerate(xs) if bits >> i & 1]


# ---------------------------------------------------------------- basic transforms

def eps_closure(A: WordAutomaton, states: Iterable) -> frozenset:
    seen = set(states)
    stack = list(seen)
    while stack:
        p = stack.pop()
        for q in A.successors(p, EPS):
            if q not in seen:
                seen.add(q)
                stack.append(q)
    return frozenset(seen)


def remove_epsilon(A: WordAutomaton) -> WordAutomaton:
    if not A.has_epsilon:
        return A
    if A.mode == BUCHI:
        raise AutomatonError("büchi automata must be built epsilon-free")
    trans = set()
    final = set()
    for p in A.states:
        for a, qs in _closed_out(A, p).items():
            for q in qs:
                trans.add((p, a, q))
        if eps_closure(A, [p]) & A.final:
            final.add(p)
    return make(trans, A.initial, final, A.mode, A.arity, A.states)


def _closed_out(A, p) -> dict:
    out: dict = {}
    for r in eps_closure(A, [p]):
        for a, qs in A.out(r).items():
            if a is not EPS:
                out.setdefault(a, set()).update(qs)
    return out


def reachable(A: WordAutomaton) -> set:
    seen = {A.initial}
    todo = deque([A.initial])
    while todo:
        p = todo.popleft()
        for qs in A.out(p).values():
            for q in qs:
                if q not in seen:
                    seen.add(q)
                    todo.append(q)
    return seen


def coreachable(A: WordAutomaton, targets: Iterable) -> set:
    back: dict = {}
    for p, _, q in A.transitions:
        back.setdefault(q, set()).add(p)
    seen = set(targets)
    todo = deque(seen)
    while todo:
        q = todo.popleft()
        for p in back.get(q, ()):
            if p not in seen:
                seen.add(p)
                todo.append(p)
    return seen


def restrict(A: WordAutomaton, keep: set) -> WordAutomaton:
    keep = set(keep) | {A.initial}
    trans = {(p, a, q) for p, a, q in A.transitions if p in keep and q in keep}
    return WordAutomaton(frozenset(keep), frozenset(trans), A.initial,
                         frozenset(A.final & keep), A.mode, A.arity)


def trim(A: WordAutomaton) -> WordAutomaton:
    """Drop states that are unreachable or cannot lead to acceptance."""
    reach = reachable(A)
    if A.mode == FINITE:
        useful = coreachable(A, A.final)
    else:
        useful = coreachable(A, _buchi_good_finals(A, reach))
    return restrict(A, reach & useful)


def relabel(A: WordAutomaton, fn, arity="same") -> WordAutomaton:
    """Map every letter through ``fn``; ``fn`` may return EPS or None to drop."""
    trans = set()
    for p, a, q in A.transitions:
        b = EPS if a is EPS else fn(a)
        trans.add((p, b, q))
    ar = A.arity if arity == "same" else arity
    return make(trans, A.initial, A.final, A.mode, ar, A.states)


def number_states(A: WordAutomaton) -> WordAutomaton:
    """Rename states to 0..n-1 in breadth-first order from the initial state."""
    order = {A.initial: 0}
    todo = deque([A.initial])
    while todo:
        p = todo.popleft()
        for a in sorted(A.out(p), key=_letter_key):
            for q in sorted(A.successors(p, a), key=repr):
                if q not in order:
                    order[q] = len(order)
                    todo.append(q)
    for p in sorted(A.states - set(order), key=repr):
        order[p] = len(order)
    trans = {(order[p], a, order[q]) for p, a, q in A.transitions}
    return WordAutomaton(frozenset(order.values()), frozenset(trans), 0,
                         frozenset(order[f] for f in A.final), A.mode, A.arity)


def symbol_key(x):
    # plain symbols keep their natural order; lifted or paired ones follow
    return (0, x) if isinstance(x, str) else (1, repr(x))


def sort_symbols(xs) -> list:
    return sorted(xs, key=symbol_key)


def _letter_key(a):
    return (0, "") if a is EPS else (1, repr(a))


# ---------------------------------------------------------------- closure operations

def product(A: WordAutomaton, B: WordAutomaton, mode: str = "intersect",
            budget: Budget | None = None) -> WordAutomaton:
    if A.arity != B.arity:
        raise AutomatonError(f"alphabet mismatch: arity {A.arity} vs {B.arity}")
    if A.mode != B.mode:
        raise AutomatonError("cannot combine finite and büchi automata")
    if mode == "union":
        return _union(A, B)
    if mode != "intersect":
        raise AutomatonError(f"unknown product mode {mode!r}")
    budget = budget or default_budget()
    A, B = remove_epsilon(A), remove_epsilon(B)
    if A.mode == FINITE:
        return _sync_product(A, B, lambda p, q: p in A.final and q in B.final, budget)
    return _buchi_intersect(A, B, budget)


def intersect(A, B, budget=None):
    return product(A, B, "intersect", budget)


def union(A, B):
    return product(A, B, "union")


def _sync_product(A, B, is_final, budget):
    init = (A.initial, B.initial)
    seen = {init}
    todo = deque([init])
    trans = set()
    while todo:
        p, q = todo.popleft()
        outb = B.out(q)
        for a, ps in A.out(p).items():
            qs = outb.get(a)
            if not qs:
                continue
            for p2 in ps:
                for q2 in qs:
                    t = (p2, q2)
                    trans.add(((p, q), a, t))
                    if t not in seen:
                        seen.add(t)
                        todo.append(t)
                        budget.check(len(seen), "product")
    final = {s for s in seen if is_final(*s)}
    return WordAutomaton(frozenset(seen), frozenset(trans), init, frozenset(final), A.mode, A.arity)


def _buchi_intersect(A, B, budget):
    """Two-phase flag construction: flag 0 waits for A-final, flag 1 for B-final."""
    init = (A.initial, B.initial, 0)
    seen = {init}
    todo = deque([init])
    trans = set()
    while todo:
        p, q, f = todo.popleft()
        if f == 0:
            nf = 1 if p in A.final else 0
        else:
            nf = 0 if q in B.final else 1
        outb = B.out(q)
        for a, ps in A.out(p).items():
            qs = outb.get(a)
            if not qs:
                continue
            for p2 in ps:
                for q2 in qs:
                    t = (p2, q2, nf)
                    trans.add(((p, q, f), a, t))
                    if t not in seen:
                        seen.add(t)
                        todo.append(t)
                        budget.check(len(seen), "büchi product")
    final = {s for s in seen if s[2] == 1 and s[1] in B.final}
    return WordAutomaton(frozenset(seen), frozenset(trans), init, frozenset(final), BUCHI, A.arity)


def _union(A, B):
    A, B = remove_epsilon(A), remove_epsilon(B)
    init = ("u", "init")
    tag = lambda side, p: ("u", side, p)  # noqa: E731
    trans = set()
    for side, X in ((0, A), (1, B)):
        for p, a, q in X.transitions:
            trans.add((tag(side, p), a, tag(side, q)))
            if p == X.initial:
                trans.add((init, a, tag(side, q)))
    final = {tag(0, f) for f in A.final} | {tag(1, f) for f in B.final}
    if A.mode == FINITE and (A.initial in A.final or B.initial in B.final):
        final.add(init)
    states = {tag(0, p) for p in A.states} | {tag(1, p) for p in B.states} | {init}
    return make(trans, init, final, A.mode, A.arity, states)


def determinize(A: WordAutomaton, alphabet: Iterable | None = None,
                budget: Budget | None = None) -> WordAutomaton:
    """Reachable subset construction; the result is complete over ``alphabet``."""
    if A.mode != FINITE:
        raise AutomatonError("determinization is only defined for finite mode")
    budget = budget or default_budget()
    letters = sorted(set(alphabet) if alphabet is not None else A.letters, key=repr)
    init = eps_closure(A, [A.initial])
    seen = {init}
    todo = deque([init])
    trans = set()
    while todo:
        S = todo.popleft()
        for a in letters:
            T = set()
            for p in S:
                T |= A.successors(p, a)
            T = eps_closure(A, T)
            trans.add((S, a, T))
            if T not in seen:
                seen.add(T)
                todo.append(T)
                if len(seen) > budget.max_subsets:
                    raise BudgetError(f"determinization exceeds {budget.max_subsets} subsets")
    final = {S for S in seen if S & A.final}
    return WordAutomaton(frozenset(seen), frozenset(trans), init, frozenset(final), FINITE, A.arity)


def minimize(A: WordAutomaton, budget: Budget | None = None) -> WordAutomaton:
    """Minimal trimmed DFA for a finite-mode automaton (Moore refinement)."""
    D = determinize(A, A.letters, budget)
    letters = sorted(D.letters, key=repr)
    block = {q: int(q in D.final) for q in D.states}
    count = len(set(block.values()))
    while True:
        sig = {q: (block[q],) + tuple(block[next(iter(D.successors(q, a)))] for a in letters)
               for q in D.states}
        ids: dict = {}
        new = {q: ids.setdefault(sig[q], len(ids)) for q in sorted(D.states, key=lambda q: sig[q])}
        if len(ids) == count:
            break
        block, count = new, len(ids)
    trans = {(block[p], a, block[q]) for p, a, q in D.transitions}
    final = {block[q] for q in D.final}
    return trim(make(trans, block[D.initial], final, FINITE, A.arity, set(block.values())))


def smaller(A: WordAutomaton, budget: Budget | None = None) -> WordAutomaton:
    """The minimal DFA when determinization fits the budget and it is smaller, else A."""
    if A.mode != FINITE:
        return A
    try:
        M = minimize(A, budget)
    except BudgetError:
        return A
    return M if len(M.states) < len(A.states) else A


def complement(A: WordAutomaton, alphabet: Iterable | None = None,
               budget: Budget | None = None) -> WordAutomaton:
    """Complement within alphabet*; the output is deterministic and complete."""
    if A.mode != FINITE:
        raise AutomatonError("complement of büchi automata is not supported")
    D = determinize(A, alphabet, budget)
    return WordAutomaton(D.states, D.transitions, D.initial, D.states - D.final, FINITE, D.arity)


def is_deterministic(A: WordAutomaton) -> bool:
    if A.has_epsilon:
        return False
    return all(len(qs) <= 1 for p in A.delta for qs in A.delta[p].values())


# ---------------------------------------------------------------- relations

def relation_complement(R: WordAutomaton, sigma: Iterable | None = None,
                        budget: Budget | None = None) -> WordAutomaton:
    """Complement of a relation within the canonical convolutions."""
    sigma = sort_symbols(set(sigma) if sigma is not None else base_symbols(R))
    C = complement(R, convolution_letters(sigma, R.arity), budget)
    return trim(intersect(C, canonical_checker(sigma, R.arity), budget))


def canonicalize(R: WordAutomaton, sigma: Iterable | None = None) -> WordAutomaton:
    sigma = set(sigma) if sigma is not None else base_symbols(R)
    return trim(intersect(R, canonical_checker(sigma, R.arity)))


def project(R: WordAutomaton, keep: Sequence[int]) -> WordAutomaton:
    """Keep the listed coordinates (0-based, in the given order)."""
    keep = list(keep)
    if not keep:
        raise AutomatonError("projection onto no coordinates leaves arity 0")
    if any(not 0 <= i < R.arity for i in keep):
        raise AutomatonError(f"coordinates {keep} out of range for arity {R.arity}")

    def fn(a):
        b = tuple(a[i] for i in keep)
        return EPS if all(x == BOT for x in b) else b

    # dropped coordinates may leave all-padding letters; on canonical input these
    # only occur as a suffix, so treating them as epsilon re-canonicalizes
    return trim(remove_epsilon(relabel(R, fn, arity=len(keep))))


def permute(R: WordAutomaton, order: Sequence[int]) -> WordAutomaton:
    """New coordinate i is old coordinate order[i]."""
    if sorted(order) != list(range(R.arity)):
        raise AutomatonError("not a permutation")
    return relabel(R, lambda a: tuple(a[i] for i in order))


def cylindrify(R: WordAutomaton, pos: int, sigma: Iterable) -> WordAutomaton:
    """Insert an unconstrained coordinate at index ``pos``."""
    if R.mode != FINITE:
        raise AutomatonError("cylindrify needs finite mode")
    if not 0 <= pos <= R.arity:
        raise AutomatonError("insertion position out of range")
    sigma = sort_symbols(sigma)
    R = remove_epsilon(R)
    ins = lambda a, x: a[:pos] + (x,) + a[pos:]  # noqa: E731
    trans = set()
    # phase 0: new coordinate still running; 1: new coordinate ended; 2: old ones ended
    for p, a, q in R.transitions:
        for x in sigma:
            trans.add(((p, 0), ins(a, x), (q, 0)))
        trans.add(((p, 0), ins(a, BOT), (q, 1)))
        trans.add(((p, 1), ins(a, BOT), (q, 1)))
    pad = (BOT,) * R.arity
    for f in R.final:
        for x in sigma:
            trans.add(((f, 0), ins(pad, x), ("tail",)))
    for x in sigma:
        trans.add((("tail",), ins(pad, x), ("tail",)))
    final = {(f, 0) for f in R.final} | {(f, 1) for f in R.final} | {("tail",)}
    states = {(p, i) for p in R.states for i in (0, 1)} | {("tail",)}
    return trim(make(trans, (R.initial, 0), final, FINITE, R.arity + 1, states))


def lift(R: WordAutomaton, positions: Sequence[int], arity: int, sigma: Iterable) -> WordAutomaton:
    """Embed R so that its coordinate i becomes coordinate positions[i] of an arity-``arity`` relation."""
    positions = list(positions)
    if len(positions) != R.arity or len(set(positions)) != len(positions):
        raise AutomatonError("bad lift positions")
    A = R
    for _ in range(arity - R.arity):
        A = cylindrify(A, A.arity, sigma)
    free = [i for i in range(arity) if i not in positions]
    # current coordinate j holds: R's coords then the free ones
    holder = positions + free
    order = [holder.index(i) for i in range(arity)]
    return permute(A, order)


def singleton(word, sigma_arity: int = 1) -> WordAutomaton:
    w = as_word(word)
    if sigma_arity != 1:
        raise AutomatonError("singleton expects a plain word")
    trans = {(i, (x,), i + 1) for i, x in enumerate(w)}
    return make(trans, 0, {len(w)}, FINITE, 1, range(len(w) + 1))


def universal(sigma: Iterable, arity: int = 1) -> WordAutomaton:
    if arity == 1:
        trans = {(0, (x,), 0) for x in sigma}
        return make(trans, 0, {0}, FINITE, 1)
    return canonical_checker(sigma, arity)


def empty_automaton(arity: int = 1, mode=FINITE) -> WordAutomaton:
    return make((), 0, (), mode, arity)


def diagonal(R: WordAutomaton, i: int, j: int) -> WordAutomaton:
    """Identify coordinates i and j and drop j: {.. x .. : R(.. x .. x ..)}."""
    keep = {(p, a, q) for p, a, q in R.transitions if a is EPS or a[i] == a[j]}
    A = make(keep, R.initial, R.final, R.mode, R.arity, R.states)
    return project(A, [c for c in range(R.arity) if c != j])


def section(R: WordAutomaton, coord: int, word, sigma: Iterable | None = None) -> WordAutomaton:
    """Fix coordinate ``coord`` to ``word``: {rest : R(.., word, ..)}."""
    sigma = set(sigma) if sigma is not None else base_symbols(R)
    sigma |= set(as_word(word))
    S = lift(singleton(word), [coord], R.arity, sigma)
    return project(intersect(R, S), [c for c in range(R.arity) if c != coord])


def inverse(R: WordAutomaton) -> WordAutomaton:
    return permute(R, list(reversed(range(R.arity))))


# ---------------------------------------------------------------- queries

def member(A: WordAutomaton, word) -> bool:
    if A.mode != FINITE:
        raise AutomatonError("member is for finite mode; use buchi_accepts_lasso")
    if A.arity == 1:
        word = [a if isinstance(a, tuple) else (a,) for a in as_word(word)]
    cur = eps_closure(A, [A.initial])
    for a in word:
        nxt = set()
        for p in cur:
            nxt |= A.successors(p, a)
        cur = eps_closure(A, nxt)
        if not cur:
            return False
    return bool(cur & A.final)


def is_empty(A: WordAutomaton):
    """Return (empty, shortest accepted word or None)."""
    if A.mode != FINITE:
        raise AutomatonError("is_empty is for finite mode; use buchi_is_empty")
    parent = {A.initial: None}
    todo = deque([A.initial])
    while todo:
        p = todo.popleft()
        if p in A.final:
            word = []
            while parent[p] is not None:
                p, a = parent[p]
                if a is not EPS:
                    word.append(a)
            return False, tuple(reversed(word))
        for a in sorted(A.out(p), key=_letter_key):
            for q in A.successors(p, a):
                if q not in parent:
                    parent[q] = (p, a)
                    todo.append(q)
    return True, None


def is_universal(A: WordAutomaton, sigma: Iterable) -> bool:
    return is_empty(complement(A, [(x,) for x in sigma]))[0]


def equivalent(A: WordAutomaton, B: WordAutomaton, alphabet: Iterable) -> bool:
    alphabet = list(alphabet)
    return (is_empty(intersect(A, complement(B, alphabet)))[0]
            and is_empty(intersect(B, complement(A, alphabet)))[0])


@dataclass(frozen=True)
class Lasso:
    stem: tuple
    cycle: tuple


def _graph(A: WordAutomaton, nodes=None) -> nx.DiGraph:
    G = nx.DiGraph()
    G.add_nodes_from(A.states if nodes is None else nodes)
    for p, _, q in A.transitions:
        if nodes is None or (p in nodes and q in nodes):
            G.add_edge(p, q)
    return G


def _buchi_good_finals(A: WordAutomaton, nodes) -> set:
    """Final states lying on a cycle within ``nodes``."""
    G = _graph(A, set(nodes))
    good = set()
    for comp in nx.strongly_connected_components(G):
        nontrivial = len(comp) > 1 or any(G.has_edge(p, p) for p in comp)
        if nontrivial:
            good |= comp & A.final
    return good


def live_states(A: WordAutomaton) -> set:
    """States from which some infinite word is accepted (büchi)."""
    if A.has_epsilon:
        raise AutomatonError("büchi queries need an epsilon-free automaton")
    return coreachable(A, _buchi_good_finals(A, A.states))


def buchi_is_empty(A: WordAutomaton):
    """Return (empty, Lasso or None); the lasso is a genuine accepting run skeleton."""
    if A.has_epsilon:
        raise AutomatonError("büchi emptiness needs an epsilon-free automaton")
    reach = reachable(A)
    good = _buchi_good_finals(A, reach)
    if not good:
        return True, None
    f = min(good, key=repr)
    stem = _bfs_path(A, A.initial, lambda s: s == f)
    cycle = _bfs_path(A, f, lambda s: s == f, nonempty=True)
    return False, Lasso(tuple(stem), tuple(cycle))


def _bfs_path(A, src, goal, nonempty=False):
    if not nonempty and goal(src):
        return []
    parent = {}
    todo = deque([src])
    first = True
    while todo:
        p = todo.popleft()
        if not first and goal(p):
            word = []
            cur = p
            while True:
                prev, a = parent[cur]
                word.append(a)
                if prev == src:
                    break
                cur = prev
            return list(reversed(word))
        first = False
        for a in sorted(A.out(p), key=_letter_key):
            for q in A.successors(p, a):
                if q not in parent:
                    parent[q] = (p, a)
                    todo.append(q)
    raise AutomatonError("no path")


def buchi_accepts_lasso(A: WordAutomaton, stem: Sequence, cycle: Sequence) -> bool:
    """Exact acceptance of stem·cycle^ω by an epsilon-free büchi automaton."""
    if not cycle:
        raise AutomatonError("cycle must be nonempty")
    cur = {A.initial}
    for a in stem:
        cur = {q for p in cur for q in A.successors(p, a)}
    # graph over (state, position in cycle); accept iff a reachable final node lies on a cycle
    G = nx.DiGraph()
    n = len(cycle)
    seen = {(p, 0) for p in cur}
    todo = deque(seen)
    while todo:
        p, i = todo.popleft()
        G.add_node((p, i))
        for q in A.successors(p, cycle[i]):
            t = (q, (i + 1) % n)
            G.add_edge((p, i), t)
            if t not in seen:
                seen.add(t)
                todo.append(t)
    for comp in nx.strongly_connected_components(G):
        nontrivial = len(comp) > 1 or any(G.has_edge(x, x) for x in comp)
        if nontrivial and any(p in A.final for p, _ in comp):
            return True
    return False
