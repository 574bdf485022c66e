"""Recurrent reachability and monadic decomposability over tree relations."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .config import Budget, default_budget
from .tree_ramsey import (
    base_ranks, build_comb_nbta_general, comb_nbta, has_infinite_clique_tree, ramsey_eval_tree,
)
from .trees import (
    FALSE, FINITE, TRUE, AlternatingTreeAutomaton, TreeAutomaton, ata_intersect_all,
    ata_member, ata_to_nta_finite, atom, f_map, letter_rank, make_ata, make_tree_automaton,
    nbta_is_empty, nta_is_empty, nta_product, nta_project, nta_to_ata, nta_union,
    rel_member, relabel_tree_automaton, tree_convolve, tree_diagonal, tree_lift,
    tree_relation_complement, trim_tree_automaton, with_ranks,
)
from .words import BOT, AutomatonError

NIL = "⊥"  # the padding symbol as a genuine rank-1 letter of path encodings


def end_symbol(m: int) -> str:
    return f"#{m}"


def _check_binary(R):
    if R.arity != 2:
        raise AutomatonError(f"expected a binary tree relation, got arity {R.arity}")


def _ranks(*automata) -> dict:
    out = {}
    for A in automata:
        out.update(base_ranks(A))
    return out


# ---------------------------------------------------------------- recurrent reachability

def rec_reach_tree(R: TreeAutomaton, L: TreeAutomaton, strategy: str = "general",
                   budget: Budget | None = None) -> TreeAutomaton:
    """Unary NTA for starts of infinite transitive R-paths visiting L forever.

    ``R`` may be the reachability relation of a rewrite system (its reflexive
    transitive closure), which is how ground-tree-rewriting instances are run.
    """
    _check_binary(R)
    if L.arity != 1:
        raise AutomatonError("target language must be unary")
    budget = budget or default_budget()
    ranks = _ranks(R, L)
    R = with_ranks(R, ranks)
    L = with_ranks(L, ranks)
    # coordinates (y, z, x)
    T = nta_product(tree_lift(R, [2, 0], 3, ranks), tree_lift(L, [0], 3, ranks), budget)
    T = nta_product(trim_tree_automaton(T), tree_lift(R, [0, 1], 3, ranks), budget)
    via_clique = ramsey_eval_tree(trim_tree_automaton(T), strategy, budget, assume_checked=True)
    loops = nta_product(tree_diagonal(R, 0, 1), L, budget)
    S = nta_product(R, tree_lift(trim_tree_automaton(loops), [1], 2, ranks), budget)
    via_loop = nta_project(trim_tree_automaton(S), [0])
    return trim_tree_automaton(nta_union(via_clique, via_loop))


def rec_member_tree(R, L, start, strategy="general") -> bool:
    return rel_member(rec_reach_tree(R, L, strategy), start)


# ---------------------------------------------------------------- path encodings

def path_encode(trees, max_rank: int | None = None) -> tuple:
    """Each node of the convolution becomes a unary path a_1(...a_n(#_m)...)."""
    trees = list(trees)
    conv = tree_convolve(*trees)

    def go(t):
        letters = t[0]
        m = len(t[1])
        if max_rank is not None and m > max_rank:
            raise AutomatonError(f"rank {m} exceeds bound {max_rank}")
        out = (end_symbol(m), tuple(go(c) for c in t[1]))
        for a in reversed(letters):
            out = (NIL if a == BOT else a, (out,))
        return out

    return go(conv)


def path_decode(t, n: int) -> tuple:
    """Inverse of path_encode for n trees."""
    def go(s):
        letters = []
        for _ in range(n):
            letters.append(BOT if s[0] == NIL else s[0])
            s = s[1][0]
        if not str(s[0]).startswith("#"):
            raise AutomatonError("malformed path encoding")
        return (tuple(letters), tuple(go(c) for c in s[1]))

    from .trees import tree_deconvolve
    return tree_deconvolve(go(t), n)


def omega_path_ranks(ranks: dict) -> dict:
    out = {a: 1 for a in ranks}
    out[NIL] = 1
    for m in range(max(ranks.values(), default=0) + 1):
        out[end_symbol(m)] = m
    return out


def _is_end(x) -> bool:
    return isinstance(x, str) and x.startswith("#") and x[1:].isdigit()


def _end_rank(x) -> int:
    return 0 if x == BOT else int(x[1:])


def _norm(x):
    """Path-position letter of one coordinate; convolution padding reads as absent."""
    return BOT if x in (BOT, NIL) else x


def build_path_shape(ranks: dict, k: int) -> AlternatingTreeAutomaton:
    """Pairs (s, t) with s, t path encodings of k-tuples of ranked trees."""
    om = omega_path_ranks(ranks)
    syms = sorted(ranks)
    full = frozenset(range(k))
    # side state: "pad" or (j, absent coordinates, ranks of present ones)
    trans = set()

    def side_moves(st):
        """(letter, child side states) options for one side."""
        if st == "pad":
            return [(BOT, "pad")]
        j, absent, rks = st
        if j < k:
            if j in absent:
                return [(NIL, [(j + 1, absent, rks + (-1,))])]
            return [(a, [(j + 1, absent, rks + (ranks[a],))]) for a in syms]
        m = max(rks)
        m = max(m, 0)
        kids = []
        for ell in range(1, m + 1):
            ab = absent | {i for i in range(k) if rks[i] < ell}
            kids.append("pad" if ab == full else (0, frozenset(ab), ()))
        return [(end_symbol(m), kids)]

    start = ((0, frozenset(), ()), (0, frozenset(), ()))
    seen = {start}
    todo = [start]
    while todo:
        st = todo.pop()
        for la, ka in side_moves(st[0]):
            for lb, kb in side_moves(st[1]):
                if la == BOT and lb == BOT:
                    continue
                letter = (la, lb)
                r = letter_rank(letter, om)
                kids = [(_kid(ka, i), _kid(kb, i)) for i in range(r)]
                if any(c == ("pad", "pad") for c in kids):
                    continue
                trans.add((st, letter, tuple(kids)))
                for c in kids:
                    if c not in seen:
                        seen.add(c)
                        todo.append(c)
    A = make_tree_automaton(trans, [start], om, 2, "nta", FINITE, (), seen)
    return nta_to_ata(trim_tree_automaton(A))


def _kid(side_kids, i):
    if side_kids == "pad" or i >= len(side_kids):
        return "pad"
    return side_kids[i]


def build_staged(base: AlternatingTreeAutomaton, coords, k: int, ranks: dict,
                 fixed=None, tag="st") -> AlternatingTreeAutomaton:
    """ATA over pairs of path encodings that runs ``base`` on chosen coordinates.

    ``coords`` are 1-based indices into (t_1..t_k, t_{k+1}..t_2k).  The state
    walks the k path positions of a node, recording the letters of those
    coordinates, and applies ``base`` at the end symbol.  With ``fixed`` (a
    tree), a first coordinate is read from that tree instead, as for the
    start-tree constraint.  States are (tag, base state, recorded, position,
    fixed subtree).
    """
    om = omega_path_ranks(ranks)
    letters_pos = [(a, b) for a in sorted(ranks) + [NIL, BOT] for b in sorted(ranks) + [NIL, BOT]
                   if (a, b) != (BOT, BOT)]
    ends = [end_symbol(m) for m in range(max(ranks.values(), default=0) + 1)] + [BOT]
    letters_end = [(a, b) for a in ends for b in ends if (a, b) != (BOT, BOT)]
    want = {}
    for n, c in enumerate(coords):
        pos = c if c <= k else c - k
        want.setdefault(pos, []).append((n, 0 if c <= k else 1))
    delta: dict = {}
    states = set()
    todo = [(base.initial, (), 0, fixed)]
    seen = set(todo)
    member_cache: dict = {}

    def outside(p, sub):
        key = (p, sub)
        if key not in member_cache:
            member_cache[key] = ata_member(base, _pad_tree(sub, len(coords) + 1), p)
        return member_cache[key]

    def S(x):
        return (tag,) + x

    while todo:
        q, rec, j, sub = todo.pop()
        st = S((q, rec, j, sub))
        states.add(st)
        if j < k:
            for a, b in letters_pos:
                got = dict(rec)
                for n, side in want.get(j + 1, ()):
                    got[n] = _norm(a if side == 0 else b)
                nrec = tuple(sorted(got.items()))
                nxt = (q, nrec, j + 1, sub)
                delta[(st, (a, b))] = atom(S(nxt), 1)
                if nxt not in seen:
                    seen.add(nxt)
                    todo.append(nxt)
            continue
        vals = dict(rec)
        read = tuple(vals[n] for n in range(len(coords)))
        if fixed is not None:
            read = ((BOT if sub is None else sub[0]),) + read
        if all(x == BOT for x in read):
            continue
        f = base.formula(q, read)
        if f == FALSE:
            continue
        for e1, e2 in letters_end:
            width = max(_end_rank(e1), _end_rank(e2))
            if any(x != BOT and ranks[x] > width for x in read[1 if fixed is not None else 0:]):
                continue

            def sub_atom(p, ell, width=width):
                child = None
                if sub is not None and ell <= len(sub[1]):
                    child = sub[1][ell - 1]
                if ell > width:
                    return TRUE if child is not None and outside(p, child) else FALSE
                nxt = (p, (), 0, child)
                if nxt not in seen:
                    seen.add(nxt)
                    todo.append(nxt)
                return atom(S(nxt), ell)

            delta[(st, (e1, e2))] = f_map(f, sub_atom)
    init = S((base.initial, (), 0, fixed))
    return make_ata(delta, init, om, 2, (), FINITE, states)


def _pad_tree(t, width):
    """Convolution of t with width-1 absent trees."""
    return ((t[0],) + (BOT,) * (width - 1), tuple(_pad_tree(c, width) for c in t[1]))


def unary_ata(L: TreeAutomaton) -> AlternatingTreeAutomaton:
    """ATA over plain symbols (not 1-tuples) for a unary language."""
    A = nta_to_ata(L)
    delta = {(q, a[0]): f for (q, a), f in A.table.items()}
    return make_ata(delta, A.initial, A.rank, None, (), FINITE, A.states)


@dataclass
class TreeRecQuery:
    relation: TreeAutomaton
    targets: list
    start: tuple
    ranks: dict | None = field(default=None)

    def __post_init__(self):
        if not self.targets:
            raise AutomatonError("at least one target language is needed")


def tuple_relation_ata(q: TreeRecQuery) -> AlternatingTreeAutomaton:
    """ATA over path-encoding pairs for cliques of k-tuples after the start tree."""
    R = q.relation
    _check_binary(R)
    k = len(q.targets)
    ranks = dict(q.ranks) if q.ranks else _ranks(R, *q.targets)
    Ra = nta_to_ata(R)
    parts = [build_path_shape(ranks, k)]
    for i, L in enumerate(q.targets, 1):
        La = _coordinate_view(unary_ata(L))
        parts.append(build_staged(La, [i], k, ranks, tag=("L", i)))
    for i in range(1, 2 * k + 1):
        for j in range(i + 1, 2 * k + 1):
            parts.append(build_staged(Ra, [i, j], k, ranks, tag=("R", i, j)))
    for i in range(1, k + 1):
        parts.append(build_staged(Ra, [i], k, ranks, fixed=q.start, tag=("S", i)))
    return ata_intersect_all(parts)


def _coordinate_view(A: AlternatingTreeAutomaton) -> AlternatingTreeAutomaton:
    """Read 1-tuple letters."""
    delta = {(p, (a,)): f for (p, a), f in A.table.items()}
    return make_ata(delta, A.initial, A.rank, 1, A.final, A.mode, A.states)


def reflexive_nonempty(A: AlternatingTreeAutomaton, budget: Budget | None = None) -> bool:
    """Is (x, x) accepted for some x?"""
    delta = {}
    for (p, a), f in A.table.items():
        if isinstance(a, tuple) and len(a) == 2 and a[0] == a[1]:
            delta[(p, (a[0],))] = f
    D = make_ata(delta, A.initial, A.rank, 1, (), FINITE, A.states)
    return not nta_is_empty(ata_to_nta_finite(D, budget))[0]


def gen_buchi_rec_tree(q: TreeRecQuery, budget: Budget | None = None) -> bool:
    budget = budget or default_budget()
    A = tuple_relation_ata(q)
    if reflexive_nonempty(A, budget):
        return True
    return not nbta_is_empty(build_comb_nbta_general(A, budget))[0]


# ---------------------------------------------------------------- monadic decomposability

def _pack(letters):
    return BOT if all(x == BOT for x in letters) else tuple(letters)


def regroup_tree(R: TreeAutomaton, split: int) -> TreeAutomaton:
    ranks = base_ranks(R)
    packed = {}
    syms = sorted(ranks) + [BOT]
    for part in (split, R.arity - split):
        for combo in itertools.product(syms, repeat=part):
            s = _pack(combo)
            if s != BOT:
                packed[s] = letter_rank(s, ranks)
    return relabel_tree_automaton(R, lambda a: (_pack(a[:split]), _pack(a[split:])),
                                  arity=2, ranks=packed)


def build_inequiv_tree(R: TreeAutomaton, j: int, budget: Budget | None = None) -> TreeAutomaton:
    k = R.arity
    if not 1 <= j <= k:
        raise AutomatonError(f"j={j} out of range for arity {k}")
    budget = budget or default_budget()
    ranks = base_ranks(R)
    n = k + j
    u = list(range(j))
    v = list(range(j, 2 * j))
    w = list(range(2 * j, n))
    Rc = tree_relation_complement(R, ranks, budget)
    left = nta_product(tree_lift(R, u + w, n, ranks), tree_lift(Rc, v + w, n, ranks), budget)
    right = nta_product(tree_lift(Rc, u + w, n, ranks), tree_lift(R, v + w, n, ranks), budget)
    both = nta_union(trim_tree_automaton(left), trim_tree_automaton(right))
    return trim_tree_automaton(regroup_tree(nta_project(both, u + v), j))


def mondec_tree(R: TreeAutomaton, strategy: str = "cotransitive",
                budget: Budget | None = None) -> bool:
    """True iff the tree relation is a finite union of products of regular languages."""
    # j = k leaves no completion, so at most two classes
    for j in range(1, R.arity):
        N = build_inequiv_tree(R, j, budget)
        if not N.transitions:
            continue
        if has_infinite_clique_tree(N, strategy, budget, assume_checked=True):
            return False
    return True


def inequiv_is_cotransitive(R: TreeAutomaton, j: int) -> bool:
    from .tree_ramsey import check_transitive
    return check_transitive(build_inequiv_tree(R, j), complement=True)


__all__ = [
    "NIL", "TreeRecQuery", "build_inequiv_tree", "build_path_shape", "build_staged",
    "comb_nbta", "gen_buchi_rec_tree", "mondec_tree", "path_decode", "path_encode",
    "rec_member_tree", "rec_reach_tree", "regroup_tree", "tuple_relation_ata",
]
