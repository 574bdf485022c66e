"""Directed Ramsey quantifier over word-regular relations.

A comb is encoded as an infinite word of blocks ``[alpha_i; beta_i] #`` whose
letters are pairs (top, bottom); the top row is alpha_i padded with BOT.  The
four-track Büchi automaton below accepts encodings of combs that are cliques.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import product as cartesian

from .config import Budget, default_budget
from .words import (
    BOT, BUCHI, EPS, FINITE, AutomatonError, WordAutomaton, _buchi_intersect,
    base_symbols, buchi_is_empty, convolve, is_empty, live_states, make,
    number_states, relabel, remove_epsilon, sort_symbols, trim,
)

SEP = "#"
SINK = "⊥"  # the added state that may jump anywhere


@dataclass(frozen=True)
class CombWitness:
    """Eventually periodic generator: blocks are (alpha, beta) word pairs."""
    prefix: tuple
    period: tuple

    def __post_init__(self):
        if not self.period:
            raise AutomatonError("comb period must be nonempty")
        for alpha, beta in self.prefix + self.period:
            if not 1 <= len(alpha) <= len(beta):
                raise AutomatonError(f"block ({alpha}, {beta}) violates 1 <= |alpha| <= |beta|")

    def block(self, i: int) -> tuple:
        """Block i, counting from 0."""
        if i < len(self.prefix):
            return self.prefix[i]
        return self.period[(i - len(self.prefix)) % len(self.period)]

    def elements(self, n: int) -> list:
        out = []
        stem: tuple = ()
        for i in range(n):
            alpha, beta = self.block(i)
            out.append(stem + tuple(alpha))
            stem = stem + tuple(beta)
        return out

    def encoding(self, n_blocks: int) -> list:
        word = []
        for i in range(n_blocks):
            alpha, beta = self.block(i)
            word.extend(encode_block(alpha, beta))
            word.append(SEP)
        return word


def encode_block(alpha, beta) -> list:
    alpha, beta = tuple(alpha), tuple(beta)
    return [(alpha[i] if i < len(alpha) else BOT, b) for i, b in enumerate(beta)]


def encoding_letters(sigma) -> list:
    sigma = sort_symbols(sigma)
    return [(a, b) for a in sigma + [BOT] for b in sigma] + [SEP]


def build_enc_checker(sigma) -> WordAutomaton:
    """Büchi automaton for valid comb encodings over base alphabet ``sigma``."""
    sigma = sort_symbols(sigma)
    trans = set()
    for b in sigma:
        for a in sigma:
            trans.add(("start", (a, b), "alpha"))
            trans.add(("sep", (a, b), "alpha"))
            trans.add(("alpha", (a, b), "alpha"))
        trans.add(("alpha", (BOT, b), "pad"))
        trans.add(("pad", (BOT, b), "pad"))
    trans.add(("alpha", SEP, "sep"))
    trans.add(("pad", SEP, "sep"))
    return make(trans, "start", {"sep"}, BUCHI, None, {"start", "alpha", "pad", "sep"})


def _prepare(R: WordAutomaton) -> WordAutomaton:
    if R.arity != 2:
        raise AutomatonError(f"expected a binary relation, got arity {R.arity}")
    if R.mode != FINITE:
        raise AutomatonError("relation automata are finite-mode")
    return number_states(trim(remove_epsilon(R)))


def build_comb_tracks(R: WordAutomaton, sigma=None, budget: Budget | None = None,
                      lazy_sink: bool = True) -> WordAutomaton:
    """The four-track automaton before the encoding check (all states final).

    Tracks simulate, on letter (a, b), the relation automaton on (b, b), (a, b),
    (BOT, b) and (BOT, a).  With ``lazy_sink`` the sink state on tracks three
    and four idles through the first block and resolves at its separator; the
    literal version lets it jump on every letter.  Both accept the same words.
    """
    budget = budget or default_budget()
    A = _prepare(R)
    sigma = sort_symbols(set(sigma) if sigma is not None else base_symbols(A))
    Q = sorted(A.states)
    anywhere = set(Q) | {SINK}

    def step(x, letter):
        if x == SINK:
            return {SINK} if lazy_sink else anywhere
        return A.successors(x, letter)

    def step_alpha(t, a):
        # track four reads only the alpha part; padded positions stutter
        if a == BOT:
            return step(t, None) if t == SINK else {t}
        return step(t, (BOT, a))

    init = (A.initial, A.initial, SINK, SINK)
    seen = {init}
    todo = deque([init])
    trans = set()
    letters = [(a, b) for a in sigma + [BOT] for b in sigma]
    while todo:
        st = todo.popleft()
        p, s, q, t = st
        for a, b in letters:
            succ = (step(p, (b, b)), step(s, (a, b)), step(q, (BOT, b)), step_alpha(t, a))
            if not all(succ):
                continue
            for nxt in cartesian(*succ):
                trans.add((st, (a, b), nxt))
                if nxt not in seen:
                    seen.add(nxt)
                    todo.append(nxt)
                    budget.check(len(seen), "comb tracks")
        if lazy_sink and q == SINK:
            fire = t == SINK
            q = s
        else:
            fire = p != SINK and s != SINK and s == q and t in A.final
        if fire:
            nxt = (p, p, q, q)
            trans.add((st, SEP, nxt))
            if nxt not in seen:
                seen.add(nxt)
                todo.append(nxt)
    return WordAutomaton(frozenset(seen), frozenset(trans), init, frozenset(seen), BUCHI, None)


def build_ramsey_buchi(R: WordAutomaton, sigma=None, budget: Budget | None = None,
                       lazy_sink: bool = True) -> WordAutomaton:
    """Büchi automaton accepting encodings of combs that are cliques of R."""
    budget = budget or default_budget()
    if R.arity != 2:
        raise AutomatonError(f"expected a binary relation, got arity {R.arity}")
    sigma = sort_symbols(set(sigma) if sigma is not None else base_symbols(R))
    B = build_comb_tracks(R, sigma, budget, lazy_sink)
    return _buchi_intersect(B, build_enc_checker(sigma), budget)


def size_bound(R: WordAutomaton) -> tuple:
    """(track bound, product bound) on state counts for R's construction."""
    n = len(remove_epsilon(R).states) + 1
    return n ** 4, ENC_FACTOR * n ** 4


# four encoding-checker states times the two-phase flag
ENC_FACTOR = 8


def has_infinite_clique(R: WordAutomaton, budget: Budget | None = None) -> bool:
    return not buchi_is_empty(build_ramsey_buchi(R, budget=budget))[0]


def clique_members_nfa(R: WordAutomaton, budget: Budget | None = None) -> WordAutomaton:
    """NFA for first elements of comb cliques (live-state realization).

    Accepts w iff some accepted encoding has w as its first alpha block.  Every
    infinite clique has a member accepted here; every accepted word lies on one.
    """
    P = build_ramsey_buchi(R, budget=budget)
    live = live_states(P)
    trans = set()
    seen = {P.initial}
    todo = deque([P.initial])
    final = set()
    while todo:
        s = todo.popleft()
        for letter, nxts in P.out(s).items():
            if letter == SEP:
                if nxts & live:
                    final.add(s)
                continue
            a, _ = letter
            lab = EPS if a == BOT else (a,)
            for n in nxts:
                trans.add((s, lab, n))
                if n not in seen:
                    seen.add(n)
                    todo.append(n)
    C = make(trans, P.initial, final, FINITE, 1, seen)
    return trim(remove_epsilon(C))


def counter_members_accepts(R: WordAutomaton, word, budget: Budget | None = None) -> bool:
    """Membership in the counter realization of the clique-members NFA.

    The first alpha block is read, every other encoding letter becomes an
    epsilon move, and acceptance needs strictly more visits to final states than
    there are states in the intermediate automaton.  Only feasible for tiny R.
    """
    P = build_ramsey_buchi(R, budget=budget)
    # intermediate automaton: (state, phase) with phase 1 after the first separator
    hat_states = set()
    todo = deque([(P.initial, 0)])
    hat_states.add((P.initial, 0))
    while todo:
        s, ph = todo.popleft()
        for letter, nxts in P.out(s).items():
            nph = 1 if (ph == 1 or letter == SEP) else 0
            for n in nxts:
                if (n, nph) not in hat_states:
                    hat_states.add((n, nph))
                    todo.append((n, nph))
    cap = len(hat_states) + 1

    def bump(c, n):
        return min(cap, c + (1 if n in P.final else 0))

    def closure(configs):
        seen = set(configs)
        stack = list(seen)
        while stack:
            s, ph, c = stack.pop()
            for letter, nxts in P.out(s).items():
                if ph == 0 and letter != SEP and letter[0] != BOT:
                    continue
                nph = 1 if (ph == 1 or letter == SEP) else 0
                for n in nxts:
                    cfg = (n, nph, bump(c, n))
                    if cfg not in seen:
                        seen.add(cfg)
                        stack.append(cfg)
        return seen

    cur = closure({(P.initial, 0, bump(0, P.initial))})
    for x in tuple(word):
        nxt = set()
        for s, ph, c in cur:
            if ph != 0:
                continue
            for letter, ns in P.out(s).items():
                if letter != SEP and letter[0] == x:
                    for n in ns:
                        nxt.add((n, 0, bump(c, n)))
        cur = closure(nxt)
    return any(c >= cap for _, _, c in cur)


def _pack(x, cs):
    if x == BOT and all(c == BOT for c in cs):
        return BOT
    return (x,) + tuple(cs)


def duplicate_parameters(R: WordAutomaton) -> WordAutomaton:
    """{(u⊗c, v⊗c) : (u, v, c) in R} as a binary relation over tuple symbols."""
    if R.arity < 2:
        raise AutomatonError("ramsey evaluation needs arity >= 2")
    return relabel(R, lambda a: (_pack(a[0], a[2:]), _pack(a[1], a[2:])), arity=2)


def ramsey_eval(R: WordAutomaton, budget: Budget | None = None) -> WordAutomaton:
    """Automaton for {c : exists-ramsey x,y. R(x, y, c)}.

    For a binary R the result has arity 0: it accepts the empty tuple iff R has
    an infinite clique.
    """
    if R.arity is None or R.arity < 2:
        raise AutomatonError("ramsey evaluation needs arity >= 2")
    k = R.arity - 2
    if k == 0:
        empty = is_empty(clique_members_nfa(R, budget))[0]
        return WordAutomaton(frozenset({0}), frozenset(), 0,
                             frozenset() if empty else frozenset({0}), FINITE, 0)
    C = clique_members_nfa(duplicate_parameters(R), budget)

    def strip(letter):
        cs = letter[0][1:]
        return EPS if all(c == BOT for c in cs) else tuple(cs)

    return trim(remove_epsilon(relabel(C, strip, arity=k)))


def ramsey_holds(result: WordAutomaton, params=()) -> bool:
    """Evaluate a ramsey_eval result at a parameter tuple."""
    from .words import member
    if result.arity == 0:
        return result.initial in result.final
    return member(result, convolve(*params) if result.arity > 1 else params[0])


def undirected(R: WordAutomaton) -> WordAutomaton:
    from .words import intersect, inverse
    return intersect(R, inverse(R))


def extract_comb_witness(R: WordAutomaton, budget: Budget | None = None) -> CombWitness | None:
    P = build_ramsey_buchi(R, budget=budget)
    empty, lasso = buchi_is_empty(P)
    if empty:
        return None
    return decode_lasso(lasso.stem, lasso.cycle)


def decode_lasso(stem, cycle) -> CombWitness:
    stem, cycle = list(stem), list(cycle)
    if SEP not in cycle:
        raise AutomatonError("lasso cycle has no separator")
    j = cycle.index(SEP)
    stem = stem + cycle[: j + 1]
    cycle = cycle[j + 1:] + cycle[: j + 1]
    return CombWitness(tuple(_blocks(stem)), tuple(_blocks(cycle)))


def _blocks(word) -> list:
    out = []
    cur = []
    for letter in word:
        if letter == SEP:
            alpha = tuple(a for a, _ in cur if a != BOT)
            beta = tuple(b for _, b in cur)
            out.append((alpha, beta))
            cur = []
        else:
            cur.append(letter)
    if cur:
        raise AutomatonError("dangling block")
    return out
