"""Directed Ramsey quantifier over tree-regular relations.

A tree comb is encoded as an infinite tree: block i is the convolution of the
forest alpha_i with the context forest beta_i, and every hole of beta_i gets a
rank-1 separator whose child is the root of a block i+1 component.  Encoding
automata read letters (a, b) from the padded base alphabet, plus ``SEP``.
"""
from __future__ import annotations

import itertools
import random
from collections import deque
from dataclasses import dataclass
from itertools import product as cartesian

from .config import Budget, WitnessConfig, default_budget
from .trees import (
    BUCHI, FALSE, FINITE, AlternatingTreeAutomaton, RunGraph, TreeAutomaton,
    accepting_states, atom, dealternate, f_and, f_map, letter_rank, make_ata,
    make_tree_automaton, nbta_is_empty, nbta_nonempty_states, nbta_product,
    is_bottom_up_deterministic, nta_member, nta_project, nta_to_ata, number_tree_states,
    random_tree, relabel_tree_automaton, single_root, tree_convolve, trim_tree_automaton,
)
from .words import BOT, AutomatonError

SEP = "§"
SINK = "⊥"
STRATEGIES = ("general", "det", "transitive", "cotransitive")


def omega_ranks(ranks: dict) -> dict:
    out = dict(ranks)
    out[SEP] = 1
    return out


def omega_letters(ranks: dict) -> list:
    syms = sorted(ranks) + [BOT]
    return [(a, b) for a in syms for b in syms if (a, b) != (BOT, BOT)]


def base_ranks(R: TreeAutomaton) -> dict:
    return {k: v for k, v in R.rank.items() if k != SEP}


# ---------------------------------------------------------------- encodings

def build_enc_nta(ranks: dict, monadic: bool = False) -> TreeAutomaton:
    """Büchi automaton for valid comb encodings.

    States: ("root", need) starts a block component; ("both", need) is a node
    of alpha and beta; ("beta", need) is a beta position outside alpha, which
    may be a hole; ("alpha",) is an alpha node below a beta leaf.  ``need`` = 1
    marks the branch that must contain a hole (in the monadic case: exactly
    one hole, otherwise at least one, which keeps the comb infinite).
    """
    ranks = dict(ranks)
    trans = set()

    def child_kinds(a, b):
        r = letter_rank((a, b), ranks)
        out = []
        for j in range(1, r + 1):
            in_a = a != BOT and j <= ranks[a]
            in_b = b != BOT and j <= ranks[b]
            if in_b:
                out.append("both" if in_a else "beta")
            else:
                out.append("alpha")
        return out

    def spreads(kinds, need):
        """Assignments of the hole obligation to children."""
        holders = [j for j, k in enumerate(kinds) if k != "alpha"]
        if need == 0:
            yield [0] * len(kinds)
            return
        for h in holders:
            yield [1 if j == h else 0 for j in range(len(kinds))]

    def kid_state(kind, need):
        return ("alpha",) if kind == "alpha" else (kind, need)

    syms = sorted(ranks)
    for need in (0, 1):
        for a in syms + [BOT]:
            for b in syms + [BOT]:
                if (a, b) == (BOT, BOT):
                    continue
                kinds = child_kinds(a, b)
                sources = []
                if a != BOT and b != BOT:
                    sources += [("root", need), ("both", need)]
                if a == BOT and b != BOT:
                    sources.append(("beta", need))
                if b == BOT and need == 0:
                    sources.append(("alpha",))
                for src in sources:
                    for sp in spreads(kinds, need):
                        kids = tuple(kid_state(k, n) for k, n in zip(kinds, sp))
                        trans.add((src, (a, b), kids))
        # a hole: only outside alpha
        if monadic:
            if need == 1:
                trans.add((("beta", 1), SEP, (("root", 1),)))
        else:
            trans.add((("beta", need), SEP, (("root", need),)))
    A = make_tree_automaton(trans, [("root", 1)], omega_ranks(ranks), None, "nbta", BUCHI,
                            [("root", 0), ("root", 1)])
    return trim_tree_automaton(A)


@dataclass(frozen=True)
class TreeCombWitness:
    """Regular comb encoding given as a finite letter graph."""
    root: object
    edges: dict  # node -> (letter, child nodes)
    ranks: tuple

    def element(self, i: int) -> tuple:
        """t_i = beta_1 ... beta_{i-1} alpha_i, blocks counted from 1."""
        rk = dict(self.ranks)

        def go(g, block):
            (a, b), kids = self.edges[g]
            if block == i:
                return (a, tuple(go(kids[j], block) for j in range(rk[a])))
            out = []
            for j in range(rk[b]):
                c = kids[j]
                lab, ck = self.edges[c]
                if lab == SEP:
                    out.append(go(ck[0], block + 1))
                else:
                    out.append(go(c, block))
            return (b, tuple(out))

        return go(self.root, 1)

    def elements(self, n: int) -> list:
        return [self.element(i) for i in range(1, n + 1)]

    def unfold(self, max_depth: int) -> tuple:
        return RunGraph(self.root, {g: v for g, v in self.edges.items()}).unfold(max_depth)


def encoding_of_elements(witness: TreeCombWitness, max_depth: int) -> tuple:
    return witness.unfold(max_depth)


# ---------------------------------------------------------------- constructions

def _prepare(R: TreeAutomaton) -> TreeAutomaton:
    if R.arity != 2:
        raise AutomatonError(f"expected a binary tree relation, got arity {R.arity}")
    if R.mode != FINITE:
        raise AutomatonError("relation automata are finite-mode")
    return number_tree_states(single_root(trim_tree_automaton(R)))


def _pad(kids, r):
    return tuple(kids) + (SINK,) * (r - len(kids))


def build_comb_tracks(R: TreeAutomaton, budget: Budget | None = None,
                      lazy_sink: bool = True) -> TreeAutomaton:
    """Four-track NBTA over encodings (all states final, no encoding check).

    Tracks simulate R on (b, b), (a, b), (BOT, b) and (BOT, a); shorter child
    tuples are padded with the sink, which may continue with anything.  With
    ``lazy_sink`` tracks three and four keep the sink until the first
    separator; the literal version lets the sink guess at every node.
    """
    budget = budget or default_budget()
    A = _prepare(R)
    ranks = base_ranks(A)
    (q_in,) = A.initial
    Q = sorted(A.states)

    def options(x, letter, r):
        if x == SINK:
            if lazy_sink:
                return [(SINK,) * r]
            width = letter_rank(letter, ranks) if letter != (BOT, BOT) else 0
            return [_pad(k, r) for k in cartesian(Q + [SINK], repeat=width)]
        if letter == (BOT, BOT):
            return []
        return [_pad(k, r) for k in A.moves(x, letter)]

    init = (q_in, q_in, SINK, SINK)
    seen = {init}
    todo = deque([init])
    trans = set()
    letters = omega_letters(ranks)
    while todo:
        st = todo.popleft()
        p, s, q, t = st
        for a, b in letters:
            r = letter_rank((a, b), ranks)
            per = [options(p, (b, b), r), options(s, (a, b), r),
                   options(q, (BOT, b), r), options(t, (BOT, a), r)]
            if not all(per):
                continue
            for combo in cartesian(*per):
                kids = tuple(zip(*combo)) if r else ()
                trans.add((st, (a, b), kids))
                for k in kids:
                    if k not in seen:
                        seen.add(k)
                        todo.append(k)
                        budget.check(len(seen), "tree comb tracks")
        if SINK in (p, s) or t != SINK:
            continue
        if q == SINK and lazy_sink:
            q = s
        if q == s:
            nxt = (p, p, q, q)
            trans.add((st, SEP, (nxt,)))
            if nxt not in seen:
                seen.add(nxt)
                todo.append(nxt)
    return make_tree_automaton(trans, [init], omega_ranks(ranks), None, "nbta", BUCHI, seen, seen)


def build_comb_nbta_det(R: TreeAutomaton, budget: Budget | None = None,
                        lazy_sink: bool = True, check: bool = True) -> TreeAutomaton:
    if check and not is_bottom_up_deterministic(R):
        raise AutomatonError("det strategy needs a bottom-up deterministic relation")
    B = build_comb_tracks(R, budget, lazy_sink)
    return nbta_product(B, build_enc_nta(base_ranks(R)), budget)


def build_comb_nbta_cotransitive(R: TreeAutomaton, budget: Budget | None = None,
                                 lazy_sink: bool = True) -> TreeAutomaton:
    B = build_comb_tracks(R, budget, lazy_sink)
    return nbta_product(B, build_enc_nta(base_ranks(R), monadic=True), budget)


def _mode_formulas(A: AlternatingTreeAutomaton, modes) -> dict:
    """Letter formulas of the four-mode ABTA, restricted to ``modes``."""
    ranks = {k: v for k, v in A.rank.items()}
    syms = sorted(ranks) + [BOT]
    delta = {}
    view = {1: lambda a, b: (b, b), 2: lambda a, b: (a, b),
            3: lambda a, b: (BOT, b), 4: lambda a, b: (BOT, a)}
    for a in syms:
        for b in syms:
            if (a, b) == (BOT, BOT):
                continue
            for q in A.states:
                for m in modes:
                    seen_as = view[m](a, b)
                    if seen_as == (BOT, BOT):
                        continue
                    f = A.formula(q, seen_as)
                    if f != FALSE:
                        delta[((q, m), (a, b))] = f_map(f, lambda p, i, m=m: atom((p, m), i))
    return delta


def build_comb_abta(R, budget: Budget | None = None, transitive: bool = False) -> AlternatingTreeAutomaton:
    """Four-mode ABTA (three modes when ``transitive``); all states final."""
    if isinstance(R, TreeAutomaton):
        R = _prepare(R)
        A = nta_to_ata(R)
    else:
        A = R
    if A.arity != 2:
        raise AutomatonError(f"expected a binary tree relation, got arity {A.arity}")
    modes = (1, 2, 4) if transitive else (1, 2, 3, 4)
    delta = _mode_formulas(A, modes)
    ranks = {k: v for k, v in A.rank.items() if k != SEP}
    root = ("init",)
    for a, b in omega_letters(ranks):
        if b == BOT:
            continue
        f1 = A.formula(A.initial, (b, b))
        f2 = A.formula(A.initial, (a, b))
        delta[(root, (a, b))] = f_and(f_map(f1, lambda p, i: atom((p, 1), i)),
                                      f_map(f2, lambda p, i: atom((p, 2), i)))
    for q in A.states:
        delta[((q, 1), SEP)] = f_and(atom((q, 1), 1), atom((q, 2), 1))
        if transitive:
            delta[((q, 2), SEP)] = atom((q, 4), 1)
        else:
            delta[((q, 2), SEP)] = f_and(atom((q, 3), 1), atom((q, 4), 1))
            delta[((q, 3), SEP)] = f_and(atom((q, 3), 1), atom((q, 4), 1))
    states = {root} | {(q, m) for q in A.states for m in modes}
    return make_ata(delta, root, omega_ranks(ranks), None, states, BUCHI, states)


def build_comb_nbta_general(R, budget: Budget | None = None) -> TreeAutomaton:
    budget = budget or default_budget()
    abta = build_comb_abta(R, budget)
    N = dealternate(abta, budget)
    return nbta_product(N, build_enc_nta(base_ranks_of(abta)), budget)


def build_comb_nbta_transitive(R, budget: Budget | None = None) -> TreeAutomaton:
    """Mode 1/2/4 ABTA, powerset restricted to sets of at most three states."""
    budget = budget or default_budget()
    abta = build_comb_abta(R, budget, transitive=True)
    N = dealternate(abta, budget, max_set=3)
    return nbta_product(N, build_enc_nta(base_ranks_of(abta)), budget)


def base_ranks_of(A) -> dict:
    return {k: v for k, v in A.rank.items() if k != SEP}


BUILDERS = {
    "general": build_comb_nbta_general,
    "det": build_comb_nbta_det,
    "transitive": build_comb_nbta_transitive,
    "cotransitive": build_comb_nbta_cotransitive,
}


# ---------------------------------------------------------------- promise samplers

def sample_pool(R: TreeAutomaton, rng: random.Random, pool: int = 60, max_depth: int = 5) -> list:
    """All trees of depth <= 4 when that is small, topped up with random deeper trees."""
    from .trees import enumerate_trees
    ranks = base_ranks(R)
    found: set = set()
    for d in range(1, 5):
        layer = enumerate_trees(ranks, d)
        if len(found | set(layer)) > pool:
            break
        found |= set(layer)
    tries = 0
    while len(found) < pool and tries < 20 * pool:
        found.add(random_tree(ranks, rng, max_depth))
        tries += 1
    return sorted(found, key=repr)


# exhaustive below this many chains, otherwise the configured sample size
CHAIN_EXHAUSTIVE = 20_000


def check_transitive(R: TreeAutomaton, complement: bool = False,
                     config: WitnessConfig | None = None) -> bool:
    """Sampled transitivity test (of R, or of its complement)."""
    config = config or WitnessConfig()
    rng = random.Random(config.seed)
    trees = sample_pool(R, rng)
    rel = {}
    for s in trees:
        for t in trees:
            inside = nta_member(R, tree_convolve(s, t))
            rel[(s, t)] = inside != complement
    chains = [(s, t, u) for s in trees for t in trees if rel[(s, t)]
              for u in trees if rel[(t, u)]]
    if len(chains) > CHAIN_EXHAUSTIVE:
        rng.shuffle(chains)
        chains = chains[: max(config.sample_triples, CHAIN_EXHAUSTIVE // 10)]
    return all(rel[(s, u)] for s, t, u in chains)


# ---------------------------------------------------------------- clique members

def comb_nbta(R: TreeAutomaton, strategy: str = "auto", budget: Budget | None = None,
              assume_checked: bool = False) -> TreeAutomaton:
    strategy = pick_strategy(R, strategy)
    if not assume_checked:
        if strategy == "transitive" and not check_transitive(R):
            raise AutomatonError("relation failed the sampled transitivity check")
        if strategy == "cotransitive" and not check_transitive(R, complement=True):
            raise AutomatonError("relation failed the sampled co-transitivity check")
    return BUILDERS[strategy](R, budget)


def pick_strategy(R: TreeAutomaton, strategy: str) -> str:
    if strategy == "auto":
        return "det" if is_bottom_up_deterministic(R) else "general"
    if strategy not in STRATEGIES:
        raise AutomatonError(f"unknown strategy {strategy!r}")
    return strategy


def has_infinite_clique_tree(R: TreeAutomaton, strategy: str = "auto",
                             budget: Budget | None = None, assume_checked: bool = False) -> bool:
    return not nbta_is_empty(comb_nbta(R, strategy, budget, assume_checked))[0]


def members_from_comb(D: TreeAutomaton) -> TreeAutomaton:
    """NTA for first alpha blocks of encodings accepted by D."""
    ranks = base_ranks(D)
    good, _ = nbta_nonempty_states(D)
    trans = set()
    for x, letter, kids in D.transitions:
        if letter == SEP:
            continue
        a, _ = letter
        if a == BOT:
            continue
        ra = ranks[a]
        if all(k in good for k in kids[ra:]):
            trans.add((x, (a,), kids[:ra]))
    C = make_tree_automaton(trans, D.initial & good, ranks, 1, "nta", FINITE, (), D.states)
    return trim_tree_automaton(C)


def clique_members_nta(R: TreeAutomaton, strategy: str = "auto", budget: Budget | None = None,
                       assume_checked: bool = False) -> TreeAutomaton:
    return members_from_comb(comb_nbta(R, strategy, budget, assume_checked))


def _pack(x, cs):
    if x == BOT and all(c == BOT for c in cs):
        return BOT
    return (x,) + tuple(cs)


def duplicate_parameters_tree(R: TreeAutomaton) -> TreeAutomaton:
    if R.arity is None or R.arity < 2:
        raise AutomatonError("ramsey evaluation needs arity >= 2")
    ranks = base_ranks(R)
    syms = sorted(ranks) + [BOT]
    packed = {}
    for combo in itertools.product(syms, repeat=R.arity - 1):
        s = _pack(combo[0], combo[1:])
        if s != BOT:
            packed[s] = letter_rank(s, ranks)
    S = relabel_tree_automaton(R, lambda a: (_pack(a[0], a[2:]), _pack(a[1], a[2:])),
                               arity=2, ranks=packed)
    if R.kind == "dup":
        return make_tree_automaton(S.transitions, S.initial, S.rank, 2, "dup", FINITE, (), S.states)
    return S


def ramsey_eval_tree(R: TreeAutomaton, strategy: str = "auto", budget: Budget | None = None,
                     assume_checked: bool = False):
    """Tree relation for {c : exists-ramsey x,y. R(x, y, c)}; a bool for binary R."""
    if R.arity is None or R.arity < 2:
        raise AutomatonError("ramsey evaluation needs arity >= 2")
    k = R.arity - 2
    if k == 0:
        return has_infinite_clique_tree(R, strategy, budget, assume_checked)
    strategy = pick_strategy(R, strategy)
    C = clique_members_nta(duplicate_parameters_tree(R), strategy, budget, assume_checked)
    ranks = base_ranks(R)
    spread = make_tree_automaton([(q, a[0], kids) for q, a, kids in C.transitions], C.initial,
                                 ranks, k + 1, "nta", FINITE, (), C.states)
    return nta_project(spread, list(range(1, k + 1)))


# ---------------------------------------------------------------- witnesses

def witness_from_graph(graph: RunGraph, ranks: dict) -> TreeCombWitness:
    return TreeCombWitness(graph.root, dict(graph.edges),
                           tuple(sorted(ranks.items(), key=lambda kv: repr(kv[0]))))


def extract_tree_witness(R: TreeAutomaton, n: int = 6, strategy: str = "auto",
                         budget: Budget | None = None, assume_checked: bool = False):
    """First n clique members from the regular-run witness, verified; None if no clique."""
    D = comb_nbta(R, strategy, budget, assume_checked)
    empty, graph = nbta_is_empty(D, cap=max(len(D.states), 1) ** 2)
    if empty:
        return None
    if graph.truncated:
        raise AutomatonError("witness graph truncated; raise the cap")
    w = witness_from_graph(graph, base_ranks(R))
    elems = w.elements(n)
    if not verify_tree_clique(R, elems):
        raise AssertionError("extracted tree witness failed verification")
    return elems


def verify_tree_clique(R: TreeAutomaton, elems) -> bool:
    if len(set(elems)) != len(elems):
        return False
    for i in range(len(elems)):
        for j in range(i + 1, len(elems)):
            if not nta_member(R, tree_convolve(elems[i], elems[j])):
                return False
    return True


def size_bound_tree(R: TreeAutomaton, strategy: str) -> int:
    """Upper bound on emitted states for the polynomial builders."""
    n = len(_prepare(R).states) + 1
    enc = len(build_enc_nta(base_ranks(R)).states)
    if strategy in ("det", "cotransitive"):
        return enc * n ** 4
    if strategy == "transitive":
        q = 3 * (n - 1) + 1
        subsets = sum(_binom(q, i) for i in range(4))
        return enc * subsets
    raise AutomatonError("no polynomial bound for the general strategy")


def _binom(n, k):
    from math import comb
    return comb(n, k)


def relation_states(R: TreeAutomaton, t) -> frozenset:
    return accepting_states(R, t)
