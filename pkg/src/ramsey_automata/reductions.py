"""Inter-problem reductions, hardness-instance generators and brute-force oracles.

Every generator has a ground-truth predicate next to it that uses a separate
code path (emptiness, universality, intersection emptiness) from the Ramsey
pipeline it is meant to exercise.  Reductions that attach a counter to each
element encode the element as a pair track ``x:c``; counters are unary
(``+`` repeated, and on trees a ``+`` path closed by ``.``).
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field

from .config import Budget, BudgetError, default_budget
from .tree_ramsey import TreeCombWitness, has_infinite_clique_tree
from .trees import (
    TreeAutomaton, canonical_tree_checker, convolution_letters as tree_letters,
    determinize_bottom_up, enumerate_trees, is_bottom_up_deterministic, letter_rank,
    make_tree_automaton, nta_is_empty, nta_member, nta_product, nta_union, random_tree,
    show, tree_convolve, tree_permute, trim_tree_automaton,
)
from .word_apps import RecQuery
from .word_ramsey import CombWitness, has_infinite_clique
from .words import (
    BOT, FINITE, AutomatonError, WordAutomaton, base_symbols, canonical_checker, convolve,
    intersect, inverse, is_empty, is_universal, lift, make, member, remove_epsilon, sort_symbols,
    trim, union,
)

COUNTER = "+"
COUNTER_END = "."
PRIME = "'"
BRANCH = "◆"  # rank 3: left, right, decoration
STOP = "◇"
MARK = "$"
GONE = ("gone",)


def is_tree(R) -> bool:
    return isinstance(R, TreeAutomaton)


def tree_ranks(R: TreeAutomaton) -> dict:
    out = {}
    for x, r in R.ranks:
        if isinstance(x, tuple):
            continue
        out[x] = r
    return out


def has_clique(R, strategy: str = "auto", budget: Budget | None = None) -> bool:
    if is_tree(R):
        return has_infinite_clique_tree(R, strategy, budget, assume_checked=True)
    return has_infinite_clique(R, budget)


# ---------------------------------------------------------------- reading through projections

def word_view(R: WordAutomaton, letters, proj, arity: int) -> WordAutomaton:
    """R run on proj(letter); letters whose projection is all padding keep the state."""
    R = remove_epsilon(R)
    trans = set()
    for p in R.states:
        for a in letters:
            inner = proj(a)
            if all(x == BOT for x in inner):
                trans.add((p, a, p))
            else:
                for q in R.successors(p, inner):
                    trans.add((p, a, q))
    return trim(make(trans, R.initial, R.final, FINITE, arity, R.states))


def tree_view(R: TreeAutomaton, letters, ranks: dict, proj, arity: int) -> TreeAutomaton:
    """R run on proj(letter); subtrees projecting to padding only go to GONE."""
    trans = set()
    by_letter = R.by_letter
    for a in letters:
        inner = proj(a)
        r = letter_rank(a, ranks)
        if all(x == BOT for x in inner):
            trans.add((GONE, a, (GONE,) * r))
            continue
        for q, kids in by_letter.get(inner, ()):
            if len(kids) <= r:
                trans.add((q, a, tuple(kids) + (GONE,) * (r - len(kids))))
    A = make_tree_automaton(trans, R.initial, ranks, arity, "nta", FINITE, (), set(R.states) | {GONE})
    return trim_tree_automaton(A)


@dataclass(frozen=True)
class PairAlphabet:
    """Element symbols ``x:c`` pairing a base track with a counter track."""
    base: tuple
    counter: tuple
    ranks: dict = field(default_factory=dict, compare=False, hash=False)

    @property
    def symbols(self) -> dict:
        out = {}
        for x in list(self.base) + [BOT]:
            for c in list(self.counter) + [BOT]:
                if x == BOT and c == BOT:
                    continue
                out[f"{x}:{c}"] = (x, c)
        return out

    def split(self, s) -> tuple:
        return (BOT, BOT) if s == BOT else self.symbols[s]

    def symbol_ranks(self) -> dict:
        return {s: max(self.ranks.get(x, 0), self.ranks.get(c, 0))
                for s, (x, c) in self.symbols.items()}


def _pair_alphabet(base_syms, counter_syms, ranks=None) -> PairAlphabet:
    clash = set(base_syms) & set(counter_syms)
    if clash or any(":" in str(x) for x in base_syms):
        raise AutomatonError(f"symbols clash with the counter encoding: {sorted(clash)}")
    return PairAlphabet(tuple(sort_symbols(base_syms)), tuple(counter_syms), dict(ranks or {}))


def pair_element(P: PairAlphabet, x, counter):
    """Element (x, counter) as a word or tree over pair symbols."""
    if isinstance(x, tuple) and x and isinstance(x[1], tuple):
        conv = tree_convolve(x, counter)

        def relabel(t):
            return (f"{t[0][0]}:{t[0][1]}", tuple(relabel(c) for c in t[1]))

        return relabel(conv)
    return tuple(f"{a}:{c}" for a, c in convolve(x, counter))


def unary_counter(m: int, tree: bool = False):
    if not tree:
        return (COUNTER,) * m
    t = (COUNTER_END, ())
    for _ in range(m):
        t = (COUNTER, (t,))
    return t


# ---------------------------------------------------------------- small building blocks

def word_less_counter() -> WordAutomaton:
    """{(+^i, +^j) : i < j}."""
    trans = {(0, (COUNTER, COUNTER), 0), (0, (BOT, COUNTER), 1), (1, (BOT, COUNTER), 1)}
    return make(trans, 0, {1}, FINITE, 2)


def tree_less_counter() -> TreeAutomaton:
    ranks = {COUNTER: 1, COUNTER_END: 0}
    trans = [
        ("both", (COUNTER, COUNTER), ("both",)),
        ("both", (COUNTER_END, COUNTER), ("second",)),
        ("second", (BOT, COUNTER), ("second",)),
        ("second", (BOT, COUNTER_END), ()),
    ]
    return make_tree_automaton(trans, ["both"], ranks, 2, "nta")


def word_neq(sigma) -> WordAutomaton:
    trans = set()
    for a in tree_letters({x: 0 for x in sigma}, 2):
        trans.add(("diff", a, "diff"))
        trans.add(("eq", a, "eq" if a[0] == a[1] else "diff"))
    return make(trans, "eq", {"diff"}, FINITE, 2)


def tree_neq(ranks: dict) -> TreeAutomaton:
    trans = []
    for a in tree_letters(ranks, 2):
        r = letter_rank(a, ranks)
        trans.append(("any", a, ("any",) * r))
        if a[0] != a[1]:
            trans.append(("find", a, ("any",) * r))
        else:
            for i in range(r):
                trans.append(("find", a, tuple("find" if j == i else "any" for j in range(r))))
    return trim_tree_automaton(make_tree_automaton(trans, ["find"], ranks, 2, "nta"))


def word_diagonal(sigma) -> WordAutomaton:
    return make({(0, (x, x), 0) for x in sigma}, 0, {0}, FINITE, 2)


def tree_diagonal_relation(ranks: dict) -> TreeAutomaton:
    trans = [(0, (x, x), (0,) * r) for x, r in ranks.items()]
    return make_tree_automaton(trans, [0], ranks, 2, "ddown")


def _intersect_all(parts, tree: bool, budget):
    acc = parts[0]
    for P in parts[1:]:
        acc = nta_product(acc, P, budget) if tree else intersect(acc, P, budget)
        acc = trim_tree_automaton(acc) if tree else trim(acc)
    return acc


# ---------------------------------------------------------------- directed / undirected

def undirected_to_directed(R):
    """R ∩ R⁻¹: its directed cliques are the undirected cliques of R."""
    if R.arity != 2:
        raise AutomatonError("expected a binary relation")
    if is_tree(R):
        return trim_tree_automaton(nta_product(R, tree_permute(R, [1, 0])))
    return trim(intersect(R, inverse(R)))


def directed_to_undirected(R, budget: Budget | None = None):
    """Pairs (a, i) with a unary counter i; (a,i) ~ (b,j) iff a != b and the
    lower-counter element R-precedes the other."""
    if R.arity != 2:
        raise AutomatonError("expected a binary relation")
    budget = budget or default_budget()
    if is_tree(R):
        ranks = tree_ranks(R)
        P = _pair_alphabet(ranks, (COUNTER, COUNTER_END),
                           {**ranks, COUNTER: 1, COUNTER_END: 0})
        return _counter_pairs_tree(P, [
            (R, "ab"), (tree_less_counter(), "cd"), (tree_neq(ranks), "ab"),
        ], [
            (R, "ba"), (tree_less_counter(), "dc"), (tree_neq(ranks), "ab"),
        ], budget)
    sigma = sort_symbols(base_symbols(R))
    P = _pair_alphabet(sigma, (COUNTER,))
    return _counter_pairs_word(P, [
        (R, "ab"), (word_less_counter(), "cd"), (word_neq(sigma), "ab"),
    ], [
        (R, "ba"), (word_less_counter(), "dc"), (word_neq(sigma), "ab"),
    ], budget)


def _track_proj(P: PairAlphabet, spec: str):
    # a/b: base tracks of the two elements, c/d: their counter tracks
    def pick(letter, ch):
        el = 0 if ch in "ac" else 1
        x, c = P.split(letter[el])
        return x if ch in "ab" else c

    return lambda letter: tuple(pick(letter, ch) for ch in spec)


def _inner_canonical_word(P: PairAlphabet, letters, el: int) -> WordAutomaton:
    inner = canonical_checker(set(P.base) | set(P.counter), 2)
    return word_view(inner, letters, lambda a: P.split(a[el]), 2)


def _inner_canonical_tree(P: PairAlphabet, letters, el: int) -> TreeAutomaton:
    inner = canonical_tree_checker(P.ranks, 2)
    return tree_view(inner, letters, P.symbol_ranks(), lambda a: P.split(a[el]), 2)


def _counter_pairs_word(P, *branches_and_budget):
    *branches, budget = branches_and_budget
    syms = sorted(P.symbols)
    letters = [a for a in itertools.product(syms + [BOT], repeat=2) if a != (BOT, BOT)]
    shape = [canonical_checker(syms, 2)] + [_inner_canonical_word(P, letters, e) for e in (0, 1)]
    out = None
    for branch in branches:
        parts = [word_view(A, letters, _track_proj(P, spec), 2) for A, spec in branch]
        B = _intersect_all(shape + parts, False, budget)
        out = B if out is None else trim(union(out, B))
    return out


def _counter_pairs_tree(P, *branches_and_budget):
    *branches, budget = branches_and_budget
    sym_ranks = P.symbol_ranks()
    letters = tree_letters(sym_ranks, 2)
    shape = [canonical_tree_checker(sym_ranks, 2)]
    shape += [_inner_canonical_tree(P, letters, e) for e in (0, 1)]
    out = None
    for branch in branches:
        parts = [tree_view(A, letters, sym_ranks, _track_proj(P, spec), 2) for A, spec in branch]
        B = _intersect_all(shape + parts, True, budget)
        out = B if out is None else trim_tree_automaton(nta_union(out, B))
    return out


# ---------------------------------------------------------------- clique <-> recurrent reachability

@dataclass
class RecInstance:
    relation: object
    target: object
    start: object


def clique_to_recreach(R, budget: Budget | None = None) -> RecInstance:
    """(R', L, a0) with a0 in Rec(L)[R'] iff R has an infinite clique."""
    if R.arity != 2:
        raise AutomatonError("expected a binary relation")
    budget = budget or default_budget()
    if is_tree(R):
        return _clique_to_recreach_tree(R, budget)
    sigma = sort_symbols(base_symbols(R))
    letters = [a for a in itertools.product(sigma + [BOT], repeat=2) if a != (BOT, BOT)]
    # (empty, w) for nonempty w
    first = make({(0, (BOT, y), 1) for y in sigma} | {(1, (BOT, y), 1) for y in sigma},
                 0, {1}, FINITE, 2)
    # |v| < |w| with v nonempty
    shorter = set()
    for x, y in letters:
        if x != BOT and y != BOT:
            shorter.add((0, (x, y), 1))
            shorter.add((1, (x, y), 1))
        elif x == BOT and y != BOT:
            shorter.add((1, (x, y), 2))
            shorter.add((2, (x, y), 2))
    grow = intersect(R, make(shorter, 0, {2}, FINITE, 2), budget)
    Rp = trim(union(first, trim(grow)))
    L = make({(0, (x,), 0) for x in sigma}, 0, {0}, FINITE, 1)
    return RecInstance(Rp, L, ())


def unprime(x):
    return x[:-1] if isinstance(x, str) and x.endswith(PRIME) else x


def _is_primed(x) -> bool:
    return isinstance(x, str) and x.endswith(PRIME)


def _path_tracker(ranks: dict) -> TreeAutomaton:
    """Bottom-up deterministic: exactly one primed root-to-leaf path per
    component, the first a strict prefix of the second."""
    trans = []
    for a in tree_letters(ranks, 2):
        x, y = a
        r = letter_rank(a, ranks)
        px, py = _is_primed(x), _is_primed(y)
        if not px and not py:
            trans.append(("clean", a, ("clean",) * r))
        if x == BOT and py:
            if r == 0:
                trans.append(("tpath", a, ()))
            for i in range(r):
                trans.append(("tpath", a, tuple("tpath" if j == i else "clean" for j in range(r))))
        if px and py:
            rx = ranks[x]
            inner = "tpath" if rx == 0 else "on"
            lo, hi = (0, r) if rx == 0 else (0, rx)
            for i in range(lo, hi):
                trans.append(("on", a, tuple(inner if j == i else "clean" for j in range(r))))
    return make_tree_automaton(trans, ["on"], ranks, 2, "nta")


def _clique_to_recreach_tree(R: TreeAutomaton, budget) -> RecInstance:
    ranks = tree_ranks(R)
    primed = dict(ranks)
    for x, r in ranks.items():
        if PRIME in str(x):
            raise AutomatonError(f"symbol {x!r} clashes with the prime marker")
        primed[f"{x}{PRIME}"] = r
    leaves = sorted(x for x, r in ranks.items() if r == 0)
    if not leaves:
        raise AutomatonError("alphabet has no constants")
    a0 = leaves[0]
    letters = tree_letters(primed, 2)
    view = tree_view(R, letters, primed, lambda a: (unprime(a[0]), unprime(a[1])), 2)
    grow = trim_tree_automaton(nta_product(view, _path_tracker(primed), budget))
    trans = [("tany", (BOT, y), ("tany",) * r) for y, r in primed.items()]
    trans += [("s0", (a0, y), ("tany",) * r) for y, r in primed.items() if y != a0]
    start = make_tree_automaton(trans, ["s0"], primed, 2, "nta")
    Rp = trim_tree_automaton(nta_union(grow, start))
    if is_bottom_up_deterministic(R):
        Rp = trim_tree_automaton(determinize_bottom_up(Rp, budget=budget))
    L = make_tree_automaton([(0, (x,), (0,) * r) for x, r in primed.items()], [0], primed, 1, "ddown")
    return RecInstance(Rp, L, (a0, ()))


def hardwire_word(R: WordAutomaton, a0) -> WordAutomaton:
    """{a : R(a0, a)}, deterministic whenever R is."""
    R = remove_epsilon(R)
    a0 = tuple(a0)
    sigma = sort_symbols(base_symbols(R))
    n = len(a0)

    def tail_accepts(q, i):
        cur = {q}
        for z in a0[i:]:
            cur = set().union(*(R.successors(p, (z, BOT)) for p in cur)) if cur else set()
        return bool(cur & R.final)

    trans = set()
    seen = {(R.initial, 0)}
    todo = [(R.initial, 0)]
    while todo:
        q, i = todo.pop()
        z = a0[i] if i < n else BOT
        for x in sigma:
            for q2 in R.successors(q, (z, x)):
                s = (q2, min(i + 1, n))
                trans.add(((q, i), (x,), s))
                if s not in seen:
                    seen.add(s)
                    todo.append(s)
    final = {s for s in seen if tail_accepts(*s)}
    return make(trans, (R.initial, 0), final, FINITE, 1, seen)


def hardwire_tree(R: TreeAutomaton, a0, budget: Budget | None = None) -> TreeAutomaton:
    """{t : R(a0, t)} as a bottom-up deterministic automaton.

    A state maps each node u of a0 (and ``None`` for nodes outside a0) to the
    R-states accepting the convolution of a0 below u with the current subtree.
    """
    budget = budget or default_budget()
    ranks = tree_ranks(R)
    positions = []

    def walk(t, pos):
        positions.append(pos)
        for i, c in enumerate(t[1]):
            walk(c, pos + (i,))

    walk(a0, ())
    label = {}
    for pos in positions:
        s = a0
        for i in pos:
            s = s[1][i]
        label[pos] = s
    slots = positions + [None]
    pad = {}
    for pos in positions:
        pad[pos] = _pad_states(R, label[pos])
    known: list = []
    index = set()
    trans = {}
    syms = sorted(ranks, key=repr)
    changed = True
    while changed:
        changed = False
        for x in syms:
            rx = ranks[x]
            for kids in itertools.product(known, repeat=rx):
                key = (x, kids)
                if key in trans:
                    continue
                state = []
                for u in slots:
                    z = BOT if u is None else label[u][0]
                    rz = 0 if u is None else len(label[u][1])
                    child_slot = []
                    for i in range(max(rx, rz)):
                        v = u + (i,) if u is not None and i < rz else None
                        child_slot.append(v)
                    ok = set()
                    for q, ks in R.by_letter.get((z, x), ()):
                        good = True
                        for i, k in enumerate(ks):
                            if i < rx:
                                val = dict(kids[i])[child_slot[i]]
                            else:
                                val = pad[child_slot[i]]
                            if k not in val:
                                good = False
                                break
                        if good:
                            ok.add(q)
                    state.append((u, frozenset(ok)))
                S = tuple(state)
                trans[key] = S
                if S not in index:
                    index.add(S)
                    known.append(S)
                    changed = True
                    if len(known) > budget.max_subsets:
                        raise BudgetError("hardwired start tree: too many states")
    roots = [S for S in known if dict(S)[()] & R.initial]
    triples = [(S, (x,), kids) for (x, kids), S in trans.items()]
    A = make_tree_automaton(triples, roots, ranks, 1, "dup", FINITE, (), known)
    return A


def _pad_states(R: TreeAutomaton, s) -> frozenset:
    from .trees import accepting_states

    def lift(t):
        return ((t[0], BOT), tuple(lift(c) for c in t[1]))

    return accepting_states(R, lift(s))


def recreach_to_clique(R, L, a0, budget: Budget | None = None):
    """R' over (element, counter) pairs: R' has an infinite clique iff a0 ∈ Rec(L)[R].

    ((a,m),(b,n)) ∈ R' iff R(a0, a), R(a, b) and a ∈ L.  Transitive and
    deterministic inputs give transitive and deterministic outputs.
    """
    if R.arity != 2 or L.arity != 1:
        raise AutomatonError("expected a binary relation and a unary target")
    budget = budget or default_budget()
    if is_tree(R):
        ranks = {**tree_ranks(L), **tree_ranks(R)}
        for x in ranks:
            if x in (COUNTER, COUNTER_END):
                raise AutomatonError(f"symbol {x!r} clashes with the counter encoding")
        P = _pair_alphabet(ranks, (COUNTER, COUNTER_END), {**ranks, COUNTER: 1, COUNTER_END: 0})
        H = hardwire_tree(R, a0, budget)
        out = _counter_pairs_tree(P, [(R, "ab"), (H, "a"), (L, "a")], budget)
        if is_bottom_up_deterministic(R) and is_bottom_up_deterministic(L):
            out = make_tree_automaton(out.transitions, out.initial, out.rank, 2, "dup",
                                      FINITE, (), out.states)
        return out
    sigma = sort_symbols(base_symbols(R) | base_symbols(L) | set(a0))
    P = _pair_alphabet(sigma, (COUNTER,))
    H = hardwire_word(R, a0)
    return _counter_pairs_word(P, [(R, "ab"), (H, "a"), (L, "a")], budget)


# ---------------------------------------------------------------- tree clique hardness

def decorated_ranks(ranks: dict) -> dict:
    if BRANCH in ranks or STOP in ranks:
        raise AutomatonError("alphabet clashes with the decoration symbols")
    return {**ranks, BRANCH: 3, STOP: 0}


def gen_hard_tree_clique(A: TreeAutomaton, targets) -> TreeAutomaton:
    """Relation on decorated trees with an infinite clique iff the languages of A
    from all target states intersect."""
    targets = list(targets)
    if not targets or any(q not in A.states for q in targets):
        raise AutomatonError("target states must be states of the automaton")
    n = len(targets)
    ranks = tree_ranks(A)
    gamma = decorated_ranks(ranks)
    trans = []
    sig = sorted(ranks, key=repr) + [BOT]
    for x in sig:
        for y in sig:
            if x == BOT and y == BOT:
                continue
            r = letter_rank((x, y), ranks)
            trans.append(("dd", (x, y), ("dd",) * r))
    trans.append(("top", (BRANCH, BRANCH), ("top", "top", "dd")))
    trans.append(("top", (STOP, BRANCH), (("p", 0), ("p", 1 % n), ("a", targets[0]))))
    for i in range(n):
        trans.append((("p", i), (BOT, BRANCH), (("p", i), ("p", (i + 1) % n), ("a", targets[i]))))
        trans.append((("p", i), (BOT, STOP), ()))
    for q, a, kids in A.transitions:
        trans.append((("a", q), (BOT, a[0]), tuple(("a", k) for k in kids)))
    kind = "ddown" if A.kind == "ddown" else "nta"
    return trim_tree_automaton(make_tree_automaton(trans, ["top"], gamma, 2, kind))


def intersection_nonempty(A: TreeAutomaton, targets) -> bool:
    """Ground truth for gen_hard_tree_clique: product emptiness."""
    acc = None
    for q in targets:
        B = make_tree_automaton(A.transitions, [q], A.rank, A.arity, "nta", FINITE, (), A.states)
        acc = B if acc is None else trim_tree_automaton(nta_product(acc, B))
    return not nta_is_empty(acc)[0]


def decorated_chain(t, i: int) -> tuple:
    """t_i: a-nodes fill the complete binary tree of height i, every decoration is t."""
    if i < 0:
        return (STOP, ())
    return (BRANCH, (decorated_chain(t, i - 1), decorated_chain(t, i - 1), t))


def random_nta(rng: random.Random, n_states: int, ranks: dict, density: float = 0.35,
               deterministic_top_down: bool = False) -> TreeAutomaton:
    states = list(range(n_states))
    trans = []
    for q in states:
        for a, r in sorted(ranks.items()):
            if deterministic_top_down:
                if rng.random() < density + 0.2:
                    trans.append((q, (a,), tuple(rng.choice(states) for _ in range(r))))
                continue
            for _ in range(2):
                if rng.random() < density:
                    trans.append((q, (a,), tuple(rng.choice(states) for _ in range(r))))
    kind = "ddown" if deterministic_top_down else "nta"
    return make_tree_automaton(trans, [0], ranks, 1, kind, FINITE, (), states)


def random_hard_tree_clique(rng: random.Random, max_states: int = 3, max_targets: int = 3,
                            ranks: dict | None = None):
    """Random (A, targets) where every target accepts something on its own."""
    ranks = ranks or {"f": 2, "c": 0, "d": 0}
    while True:
        A = random_nta(rng, rng.randint(1, max_states), ranks, rng.uniform(0.1, 0.35))
        live = [q for q in sorted(A.states, key=repr) if intersection_nonempty(A, [q])]
        if live:
            return A, rng.sample(live, min(len(live), rng.randint(1, max_targets)))


# ---------------------------------------------------------------- decomposability hardness

def gen_hard_mondec_word(A: WordAutomaton, sigma=None) -> WordAutomaton:
    """Ternary {(u, v, w) : u ∈ L(A) or v = w}; decomposable iff L(A) is universal."""
    if A.arity != 1:
        raise AutomatonError("expected a language automaton")
    sigma = sort_symbols(set(sigma) if sigma is not None else base_symbols(A))
    left = lift(A, [0], 3, sigma)
    right = lift(word_diagonal(sigma), [1, 2], 3, sigma)
    return trim(union(left, right))


def mondec_word_truth(A: WordAutomaton, sigma=None) -> bool:
    sigma = sort_symbols(set(sigma) if sigma is not None else base_symbols(A))
    return is_universal(A, sigma)


def gen_hard_mondec_tree_ddown(A: TreeAutomaton) -> TreeAutomaton:
    """Diagonal copy of A with a unary MARK chain at the root; decomposable iff L(A) = ∅."""
    ranks = tree_ranks(A)
    if MARK in ranks:
        raise AutomatonError(f"alphabet clashes with the marker {MARK!r}")
    gamma = {**ranks, MARK: 1}
    trans = [(q, (a[0], a[0]), kids) for q, a, kids in A.transitions]
    trans += [(q, (MARK, MARK), (q,)) for q in A.initial]
    kind = "ddown" if A.kind == "ddown" else "nta"
    return make_tree_automaton(trans, A.initial, gamma, 2, kind, FINITE, (), A.states)


def random_word_nfa(rng: random.Random, sigma, n_states: int, density: float = 0.4,
                    deterministic: bool = False) -> WordAutomaton:
    states = list(range(n_states))
    trans = set()
    for q in states:
        for x in sigma:
            if deterministic:
                if rng.random() < density + 0.4:
                    trans.add((q, (x,), rng.choice(states)))
                continue
            for p in states:
                if rng.random() < density:
                    trans.add((q, (x,), p))
    final = {q for q in states if rng.random() < 0.5}
    return make(trans, 0, final, FINITE, 1, states)


# ---------------------------------------------------------------- generalized büchi hardness

@dataclass
class GenBuchiInstance:
    relation: object
    query: object


def gen_hard_genbuchi(targets, c, sigma=None) -> GenBuchiInstance:
    """(a, b) ∈ R iff a = c or a = b; c ∈ Rec(L1..Lk)[R] iff the Li intersect."""
    targets = list(targets)
    if not targets:
        raise AutomatonError("at least one target language is needed")
    if is_tree(targets[0]):
        from .tree_apps import TreeRecQuery
        ranks = {}
        for L in targets:
            ranks.update(tree_ranks(L))
        R = _tree_from_c_or_equal(c, ranks)
        return GenBuchiInstance(R, TreeRecQuery(R, targets, c, ranks))
    c = tuple(c)
    syms = set(sigma) if sigma is not None else set()
    for L in targets:
        syms |= base_symbols(L)
    syms = sort_symbols(syms | set(c))
    n = len(c)
    trans = set()
    for i in range(n + 1):
        for y in syms + [BOT]:
            if i < n:
                trans.add((("c", i), (c[i], y), ("c", i + 1)))
            elif y != BOT:
                trans.add((("c", n), (BOT, y), ("c", n)))
    from_c = make(trans, ("c", 0), {("c", n)}, FINITE, 2)
    R = trim(union(from_c, word_diagonal(syms)))
    return GenBuchiInstance(R, RecQuery(R, targets, c, frozenset(syms)))


def _tree_from_c_or_equal(c, ranks: dict) -> TreeAutomaton:
    trans = []

    def walk(t, pos):
        x, kids = t
        for y in sorted(ranks, key=repr) + [BOT]:
            r = letter_rank((x, y), ranks)
            out = tuple(pos + (i,) if i < len(kids) else "tonly" for i in range(r))
            trans.append((pos, (x, y), out))
        for i, k in enumerate(kids):
            walk(k, pos + (i,))

    walk(c, ())
    trans += [("tonly", (BOT, y), ("tonly",) * r) for y, r in ranks.items()]
    from_c = make_tree_automaton(trans, [()], ranks, 2, "nta")
    return trim_tree_automaton(nta_union(from_c, tree_diagonal_relation(ranks)))


def genbuchi_truth(targets) -> bool:
    """Ground truth: the target languages have a common member."""
    if is_tree(targets[0]):
        acc = targets[0]
        for L in targets[1:]:
            acc = trim_tree_automaton(nta_product(acc, L))
        return not nta_is_empty(acc)[0]
    acc = targets[0]
    for L in targets[1:]:
        acc = trim(intersect(acc, L))
    return not is_empty(acc)[0]


# ---------------------------------------------------------------- brute-force oracles

def _words(sigma, bound: int) -> list:
    out = []
    for n in range(1, bound + 1):
        out.extend(itertools.product(sort_symbols(sigma), repeat=n))
    return out


def candidate_elements(R, bound: int) -> list:
    """Nonempty words of length <= bound, or trees of depth <= bound, smallest first."""
    if is_tree(R):
        ranks = tree_ranks(R)
        out = []
        for d in range(1, bound + 1):
            out.extend(enumerate_trees(ranks, d))
        out = list(dict.fromkeys(out))
        return sorted(out, key=lambda t: (len(show(t)), show(t)))
    return _words(base_symbols(R), bound)


def related(R, a, b) -> bool:
    if is_tree(R):
        return nta_member(R, tree_convolve(a, b))
    return member(R, convolve(a, b))


def finite_clique_search(R, n: int, bound: int, max_nodes: int = 200_000):
    """A directed clique v1..vn (R(vi, vj) for i < j) among small elements, or None.

    ``None`` says nothing about infinite cliques.  Raises BudgetError when the
    search tree exceeds ``max_nodes``.
    """
    if n < 1:
        raise AutomatonError("clique size must be at least 1")
    if R.arity != 2:
        raise AutomatonError("expected a binary relation")
    elems = candidate_elements(R, bound)
    memo: dict = {}

    def rel(i, j):
        key = (i, j)
        if key not in memo:
            memo[key] = related(R, elems[i], elems[j])
        return memo[key]

    nodes = 0

    def extend(chosen, cands):
        nonlocal nodes
        if len(chosen) == n:
            return chosen
        for c in cands:
            nodes += 1
            if nodes > max_nodes:
                raise BudgetError(f"clique search exceeded {max_nodes} nodes")
            rest = [d for d in cands if d != c and rel(c, d)]
            if len(rest) + len(chosen) + 1 < n:
                continue
            found = extend(chosen + [c], rest)
            if found:
                return found
        return None

    found = extend([], list(range(len(elems))))
    if found is None:
        return None
    clique = [elems[i] for i in found]
    for i in range(n):
        for j in range(i + 1, n):
            if clique[i] == clique[j] or not related(R, clique[i], clique[j]):
                raise AssertionError("clique search returned a non-clique")
    return clique


def verify_clique_certificate(R, witness, N: int) -> bool:
    """Materialize v1..vN from the witness; check distinctness and pairwise membership."""
    if isinstance(witness, CombWitness):
        elems = witness.elements(N)
    elif isinstance(witness, TreeCombWitness):
        try:
            elems = witness.elements(N)
        except (KeyError, IndexError, TypeError) as e:
            raise AutomatonError(f"malformed tree witness: {e}") from None
    elif isinstance(witness, (list, tuple)):
        elems = list(witness)[:N]
        if len(elems) < N:
            raise AutomatonError(f"witness lists {len(elems)} elements, {N} needed")
    else:
        raise AutomatonError(f"unsupported witness type {type(witness).__name__}")
    if len(set(elems)) != len(elems):
        return False
    return all(related(R, elems[i], elems[j])
               for i in range(len(elems)) for j in range(i + 1, len(elems)))


INCONCLUSIVE = "inconclusive"
EVIDENCE = "infinite-index-evidence"


@dataclass
class ProbeResult:
    """Outcome of a bounded index probe; deliberately not usable as a bool."""
    status: str
    classes: list
    distinguishers: dict

    def __bool__(self):
        raise TypeError("probe results are three-valued; inspect .status")


def mondec_index_probe(R, j: int, n: int, bound: int, max_tests: int = 2_000_000) -> ProbeResult:
    """Search for n pairwise inequivalent j-tuples (first j coordinates).

    Tuples and distinguishing completions range over elements of size <= bound.
    """
    k = R.arity
    if not 1 <= j <= k:
        raise AutomatonError(f"j={j} out of range for arity {k}")
    if is_tree(R):
        elems = candidate_elements(R, bound)

        def mem(tup):
            return nta_member(R, tree_convolve(*tup))
    else:
        elems = _words(base_symbols(R), bound)

        def mem(tup):
            return member(R, convolve(*tup))

    heads = list(itertools.product(elems, repeat=j))
    tails = list(itertools.product(elems, repeat=k - j))
    if len(heads) * len(tails) > max_tests:
        raise BudgetError(f"index probe needs {len(heads) * len(tails)} membership tests")
    classes: dict = {}
    for h in heads:
        sig = frozenset(i for i, w in enumerate(tails) if mem(h + w))
        classes.setdefault(sig, h)
    reps = list(classes.items())
    if len(reps) < n:
        return ProbeResult(INCONCLUSIVE, [h for _, h in reps], {})
    chosen = reps[:n]
    dist = {}
    for (s1, h1), (s2, h2) in itertools.combinations(chosen, 2):
        i = min(s1 ^ s2)
        dist[(h1, h2)] = tails[i]
    return ProbeResult(EVIDENCE, [h for _, h in chosen], dist)


# ---------------------------------------------------------------- samplers

def sampled_transitive(R, trials: int = 300, bound: int = 3, seed: int = 0) -> bool:
    """Triple sampler: R(a,b) and R(b,c) imply R(a,c) on small elements."""
    rng = random.Random(seed)
    elems = candidate_elements(R, bound)
    if is_tree(R) and len(elems) > 200:
        elems = elems[:200]
    succ: dict = {}
    for _ in range(trials):
        a = rng.choice(elems)
        if a not in succ:
            succ[a] = [b for b in elems if related(R, a, b)]
        for b in succ[a]:
            if b not in succ:
                succ[b] = [c for c in elems if related(R, b, c)]
            for c in succ[b]:
                if not related(R, a, c):
                    return False
    return True


def random_tree_samples(R: TreeAutomaton, rng: random.Random, count: int, max_depth: int = 4):
    ranks = tree_ranks(R)
    return [random_tree(ranks, rng, max_depth) for _ in range(count)]
