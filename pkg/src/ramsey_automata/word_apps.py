"""Recurrent reachability and monadic decomposability over word relations."""
from __future__ import annotations

from dataclasses import dataclass, field

from .config import Budget, default_budget
from .word_ramsey import has_infinite_clique, ramsey_eval
from .words import (
    BOT, AutomatonError, WordAutomaton, as_word, base_symbols, diagonal, intersect,
    is_empty, lift, member, project, relabel, relation_complement, section, smaller, sort_symbols,
    trim, union,
)


@dataclass
class RecQuery:
    relation: WordAutomaton
    targets: list
    start: tuple = ()
    sigma: frozenset | None = field(default=None)

    def __post_init__(self):
        if not self.targets:
            raise AutomatonError("at least one target language is needed")
        self.start = as_word(self.start)


def _sigma(*automata, extra=()) -> list:
    out = set(extra)
    for A in automata:
        out |= base_symbols(A)
    return sort_symbols(out)


def _check_binary(R):
    if R.arity != 2:
        raise AutomatonError(f"expected a binary relation, got arity {R.arity}")


def rec_reach(R: WordAutomaton, L: WordAutomaton, sigma=None,
              budget: Budget | None = None) -> WordAutomaton:
    """Unary automaton for the start words of infinite R-paths visiting L forever.

    Either an infinite clique y1, y2, ... in L with R(x, y_i) for all i, or a
    reflexive element y in L with R(x, y).
    """
    _check_binary(R)
    if L.arity != 1:
        raise AutomatonError("target language must be unary")
    budget = budget or default_budget()
    sigma = sort_symbols(set(sigma) if sigma is not None else _sigma(R, L))
    # coordinates (y, z, x)
    T = intersect(lift(R, [2, 0], 3, sigma), lift(L, [0], 3, sigma), budget)
    T = intersect(trim(T), lift(R, [0, 1], 3, sigma), budget)
    via_clique = ramsey_eval(smaller(trim(T), budget), budget)
    # coordinates (x, y)
    loops = intersect(diagonal(R, 0, 1), L, budget)
    S = intersect(R, lift(trim(loops), [1], 2, sigma), budget)
    via_loop = project(trim(S), [0])
    return trim(union(via_clique, via_loop))


def rec_member(R: WordAutomaton, L: WordAutomaton, start, sigma=None) -> bool:
    return member(rec_reach(R, L, sigma), as_word(start))


def _pack(letters):
    return BOT if all(x == BOT for x in letters) else tuple(letters)


def regroup(R: WordAutomaton, split: int) -> WordAutomaton:
    """View a (split + m)-ary relation as binary over tuple symbols."""
    return relabel(R, lambda a: (_pack(a[:split]), _pack(a[split:])), arity=2)


def tuple_relation(q: RecQuery, budget: Budget | None = None) -> WordAutomaton:
    """The 2k-ary relation: an R-clique w1..w2k after the start word, w_i in L_i."""
    R = q.relation
    _check_binary(R)
    budget = budget or default_budget()
    k = len(q.targets)
    n = 2 * k
    sigma = sort_symbols(set(q.sigma) if q.sigma is not None
                         else _sigma(R, *q.targets, extra=q.start))
    from_start = trim(section(R, 0, q.start, sigma))
    parts = [lift(L, [i], n, sigma) for i, L in enumerate(q.targets)]
    parts += [lift(R, [i, j], n, sigma) for i in range(n) for j in range(i + 1, n)]
    parts += [lift(from_start, [i], n, sigma) for i in range(k)]
    acc = parts[0]
    for P in parts[1:]:
        acc = trim(intersect(acc, P, budget))
        if is_empty(acc)[0]:
            break
        if len(acc.states) > SHRINK_AT:
            acc = smaller(acc, budget)
    return acc


# the lifted diagonal copies multiply states; minimizing past this size pays for itself
SHRINK_AT = 50


def gen_buchi_rec(q: RecQuery, budget: Budget | None = None) -> bool:
    """Decide start in Rec(L1..Lk)[R] via a clique or reflexive test on tuples."""
    k = len(q.targets)
    big = tuple_relation(q, budget)
    if is_empty(big)[0]:
        return False
    pairs = regroup(big, k)
    if not is_empty(diagonal(pairs, 0, 1))[0]:
        return True
    return has_infinite_clique(smaller(pairs, budget), budget)


def build_inequiv(R: WordAutomaton, j: int, sigma=None,
                  budget: Budget | None = None) -> WordAutomaton:
    """Binary relation of j-tuples that some completion w tells apart."""
    k = R.arity
    if not 1 <= j <= k:
        raise AutomatonError(f"j={j} out of range for arity {k}")
    budget = budget or default_budget()
    sigma = sort_symbols(set(sigma) if sigma is not None else base_symbols(R))
    n = k + j
    u = list(range(j))
    v = list(range(j, 2 * j))
    w = list(range(2 * j, n))
    Rc = relation_complement(R, sigma, budget)
    left = intersect(lift(R, u + w, n, sigma), lift(Rc, v + w, n, sigma), budget)
    right = intersect(lift(Rc, u + w, n, sigma), lift(R, v + w, n, sigma), budget)
    both = union(trim(left), trim(right))
    return trim(regroup(project(both, u + v), j))


def mondec_word(R: WordAutomaton, sigma=None, budget: Budget | None = None) -> bool:
    """True iff R is a finite union of products of regular languages."""
    sigma = sort_symbols(set(sigma) if sigma is not None else base_symbols(R))
    R = smaller(R, budget)
    # j = k leaves no completion, so at most two classes
    for j in range(1, R.arity):
        if has_infinite_clique(smaller(build_inequiv(R, j, sigma, budget), budget), budget):
            return False
    return True
