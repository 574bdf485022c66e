"""Textual format for word, tree, alternating and unranked automata.

One declaration per line.  ``#`` at the start of a line, or surrounded by
whitespace, starts a comment.  A file holds any number of
blocks, each opened by a header line::

    word-automaton prefix
    arity 2
    mode finite
    state 0 initial
    state 1 final
    trans 0 a|a 0
    trans 0 _|a 1

    tree-automaton grow
    kind nta
    arity 2
    symbol g 1
    symbol c 0
    root b
    trans b g|g -> b

    unranked-automaton diag
    arity 2
    symbol a
    root r
    trans r a|a hlang h
    word-automaton h
    ...

Letters are ``|``-separated components with ``_`` for padding; ``eps`` is an
epsilon move.  Tree automata with ``arity mixed`` take plain symbols next
to tuple letters, which is how comb encodings are written.  ATAs (kind ``ata``/``abta``) use ``delta q letter := formula``.
Printing renames states when their names are not safe tokens, so
parse(print(x)) equals x up to state renaming.
"""
from __future__ import annotations

import re
from dataclasses import dataclass

from .trees import (
    BUCHI, FALSE, FINITE, TRUE, AlternatingTreeAutomaton, TreeAutomaton, atom, f_and, f_or,
    is_bottom_up_deterministic, is_top_down_deterministic, make_ata, make_tree_automaton,
)
from .unranked import NUTA
from .words import BOT, EPS, AutomatonError, WordAutomaton, make

TOKEN = re.compile(r"^[^\s|()&,:=#]+$")
SYMBOL_TOKEN = re.compile(r"^(?!#)[^\s|]+$")
COMMENT = re.compile(r"\s#(?:\s|$)")
TREE_KINDS = ("nta", "dup", "ddown", "ata", "nbta", "abta")
MIXED = "mixed"
HEADERS = ("word-automaton", "tree-automaton", "unranked-automaton", "sfprs")


class FormatError(AutomatonError):
    def __init__(self, line: int, msg: str):
        super().__init__(f"line {line}: {msg}")
        self.line = line


@dataclass(frozen=True)
class SFPRSDefinition:
    """Kept verbatim; there is no decision procedure attached."""
    name: str
    lines: tuple


# ---------------------------------------------------------------- parsing

def _blocks(text: str):
    cur = None
    for no, raw in enumerate(text.splitlines(), 1):
        line = "" if raw.lstrip().startswith("#") else COMMENT.split(raw, 1)[0].strip()
        if not line:
            continue
        words = line.split()
        if words[0] in HEADERS:
            if len(words) != 2:
                raise FormatError(no, f"expected '{words[0]} <name>'")
            if cur:
                yield cur
            cur = (words[0], words[1], no, [])
            continue
        if cur is None:
            raise FormatError(no, "declaration outside of any block")
        cur[3].append((no, line))
    if cur:
        yield cur


def _letter(tok: str, arity: int | None, no: int):
    if tok == "eps":
        return EPS
    parts = tok.split("|")
    if arity is not None and len(parts) != arity:
        raise FormatError(no, f"letter {tok!r} has {len(parts)} components, arity is {arity}")
    parts = [BOT if p == "_" else p for p in parts]
    if all(p == BOT for p in parts):
        raise FormatError(no, f"letter {tok!r} pads every component")
    return tuple(parts)


def _int(tok: str, no: int, what: str) -> int:
    try:
        v = int(tok)
    except ValueError:
        raise FormatError(no, f"{what} must be an integer, got {tok!r}") from None
    if v < 0:
        raise FormatError(no, f"{what} must be nonnegative")
    return v


def _parse_word(name, start, lines) -> WordAutomaton:
    arity = 1
    mode = FINITE
    states, initial, final, trans = [], [], set(), []
    for no, line in lines:
        w = line.split()
        head = w[0]
        if head == "arity":
            arity = _int(w[1], no, "arity") if len(w) == 2 else None
            if arity is None:
                raise FormatError(no, "expected 'arity <k>'")
        elif head == "mode":
            if len(w) != 2 or w[1] not in ("finite", "buchi"):
                raise FormatError(no, "mode must be finite or buchi")
            mode = FINITE if w[1] == "finite" else BUCHI
        elif head == "state":
            if len(w) < 2 or any(f not in ("initial", "final") for f in w[2:]):
                raise FormatError(no, "expected 'state <id> [initial] [final]'")
            states.append(w[1])
            if "initial" in w[2:]:
                initial.append((no, w[1]))
            if "final" in w[2:]:
                final.add(w[1])
        elif head == "trans":
            if len(w) != 4:
                raise FormatError(no, "expected 'trans <src> <letter> <dst>'")
            letter = _letter(w[2], arity, no)
            if letter is not EPS and arity == 1:
                letter = (letter[0],)
            trans.append((w[1], letter, w[3]))
        else:
            raise FormatError(no, f"unknown declaration {head!r} in word automaton")
    if len(initial) != 1:
        raise FormatError(start, f"word automaton {name!r} needs exactly one initial state")
    try:
        return make(trans, initial[0][1], final, mode, arity, states)
    except AutomatonError as e:
        raise FormatError(start, str(e)) from None


def parse_formula(text: str, no: int = 0):
    """atom(q,i) | f & f | f "|" f | true | false, with parentheses; & binds tighter."""
    toks = re.findall(r"atom\s*\(\s*[^,\s()]+\s*,\s*\d+\s*\)|true|false|[()&|]|\S+", text)
    pos = 0

    def peek():
        return toks[pos] if pos < len(toks) else None

    def take():
        nonlocal pos
        t = peek()
        pos += 1
        return t

    def disj():
        parts = [conj()]
        while peek() == "|":
            take()
            parts.append(conj())
        return f_or(*parts)

    def conj():
        parts = [unit()]
        while peek() == "&":
            take()
            parts.append(unit())
        return f_and(*parts)

    def unit():
        t = take()
        if t is None:
            raise FormatError(no, "formula ends early")
        if t == "(":
            f = disj()
            if take() != ")":
                raise FormatError(no, "missing ')'")
            return f
        if t == "true":
            return TRUE
        if t == "false":
            return FALSE
        m = re.fullmatch(r"atom\s*\(\s*([^,\s()]+)\s*,\s*(\d+)\s*\)", t)
        if m:
            return atom(m.group(1), int(m.group(2)))
        raise FormatError(no, f"unexpected token {t!r} in formula")

    f = disj()
    if peek() is not None:
        raise FormatError(no, f"unexpected token {peek()!r} after formula")
    return f


def _parse_tree(name, start, lines):
    kind = "nta"
    arity = 1
    mode = None
    ranks: dict = {}
    roots, final, states, trans, delta = [], set(), set(), [], {}
    for no, line in lines:
        w = line.split()
        head = w[0]
        if head == "kind":
            if len(w) != 2 or w[1] not in TREE_KINDS:
                raise FormatError(no, f"kind must be one of {', '.join(TREE_KINDS)}")
            kind = w[1]
        elif head == "arity":
            if len(w) != 2:
                raise FormatError(no, "expected 'arity <k>'")
            # mixed: letters are tuples or plain symbols, as in comb encodings
            arity = None if w[1] == MIXED else _int(w[1], no, "arity")
        elif head == "mode":
            if len(w) != 2 or w[1] not in ("finite", "buchi"):
                raise FormatError(no, "mode must be finite or buchi")
            mode = FINITE if w[1] == "finite" else BUCHI
        elif head == "symbol":
            if len(w) != 3:
                raise FormatError(no, "expected 'symbol <name> <rank>'")
            ranks[w[1]] = _int(w[2], no, "rank")
        elif head == "root":
            roots.extend(w[1:])
        elif head == "final":
            final.update(w[1:])
        elif head == "state":
            states.update(w[1:])
        elif head == "trans":
            if len(w) < 4 or w[3] != "->":
                raise FormatError(no, "expected 'trans <q> <letter> -> <q1> ... <qr>'")
            letter = _tree_letter(w[2], arity, no)
            if letter is EPS:
                raise FormatError(no, "tree automata have no epsilon moves")
            _check_rank(letter, ranks, len(w) - 4, no)
            trans.append((w[1], letter, tuple(w[4:])))
        elif head == "delta":
            m = re.match(r"delta\s+(\S+)\s+(\S+)\s*:=\s*(.+)$", line)
            if not m:
                raise FormatError(no, "expected 'delta <q> <letter> := <formula>'")
            letter = _tree_letter(m.group(2), arity, no)
            f = parse_formula(m.group(3), no)
            key = (m.group(1), letter)
            delta[key] = f_or(delta.get(key, FALSE), f)
        else:
            raise FormatError(no, f"unknown declaration {head!r} in tree automaton")
    if not roots:
        raise FormatError(start, f"tree automaton {name!r} declares no root")
    if mode is None:
        mode = BUCHI if kind in ("nbta", "abta") else FINITE
    try:
        if kind in ("ata", "abta"):
            if trans:
                raise FormatError(start, "alternating automata use 'delta', not 'trans'")
            if len(roots) != 1:
                raise FormatError(start, "alternating automata have one root")
            return make_ata(delta, roots[0], ranks, arity, final, mode, states)
        if delta:
            raise FormatError(start, "'delta' lines need kind ata or abta")
        A = make_tree_automaton(trans, roots, ranks, arity, "nbta" if kind == "nbta" else kind,
                                mode, final, states)
    except FormatError:
        raise
    except AutomatonError as e:
        raise FormatError(start, str(e)) from None
    if kind == "dup" and not is_bottom_up_deterministic(A):
        raise FormatError(start, f"{name!r} is declared dup but is not bottom-up deterministic")
    if kind == "ddown" and not is_top_down_deterministic(A):
        raise FormatError(start, f"{name!r} is declared ddown but is not top-down deterministic")
    return A


def _tree_letter(tok: str, arity: int | None, no: int):
    if arity is None and "|" not in tok and tok != "eps":
        if tok == "_":
            raise FormatError(no, "a plain letter cannot be padding")
        return tok
    return _letter(tok, arity, no)


def _check_rank(letter, ranks, nkids, no):
    r = 0
    for x in (letter if isinstance(letter, tuple) else (letter,)):
        if x == BOT:
            continue
        if x not in ranks:
            raise FormatError(no, f"undeclared symbol {x!r}")
        r = max(r, ranks[x])
    if r != nkids:
        raise FormatError(no, f"letter of rank {r} given {nkids} children")


def _parse_unranked(name, start, lines):
    arity = 1
    sigma, roots, states, rules = set(), [], set(), []
    for no, line in lines:
        w = line.split()
        head = w[0]
        if head == "arity":
            arity = _int(w[1], no, "arity")
        elif head == "symbol":
            sigma.update(w[1:])
        elif head == "root":
            roots.extend(w[1:])
        elif head == "state":
            states.update(w[1:])
        elif head == "trans":
            if len(w) != 5 or w[3] != "hlang":
                raise FormatError(no, "expected 'trans <q> <letter> hlang <name>'")
            letter = _letter(w[2], arity, no)
            rules.append((no, w[1], letter, w[4]))
        else:
            raise FormatError(no, f"unknown declaration {head!r} in unranked automaton")
    if len(roots) != 1:
        raise FormatError(start, f"unranked automaton {name!r} needs exactly one root")
    return (arity, frozenset(sigma), roots[0], states, rules)


def _horizontal(H: WordAutomaton) -> WordAutomaton:
    trans = [(p, a if a is EPS else a[0], q) for p, a, q in H.transitions]
    return make(trans, H.initial, H.final, FINITE, None, H.states)


def parse_text(text: str) -> dict:
    """Named objects in file order."""
    out: dict = {}
    pending = []
    for head, name, start, lines in _blocks(text):
        if name in out:
            raise FormatError(start, f"duplicate block name {name!r}")
        if head == "word-automaton":
            out[name] = _parse_word(name, start, lines)
        elif head == "tree-automaton":
            out[name] = _parse_tree(name, start, lines)
        elif head == "unranked-automaton":
            out[name] = None
            pending.append((name, start, _parse_unranked(name, start, lines)))
        else:
            out[name] = SFPRSDefinition(name, tuple(line for _, line in lines))
    for name, start, (arity, sigma, root, states, rules) in pending:
        built = []
        hnames = set()
        for no, q, letter, hname in rules:
            H = out.get(hname)
            if not isinstance(H, WordAutomaton):
                raise FormatError(no, f"hlang {hname!r} is not a word automaton in this file")
            hnames.add(hname)
            built.append((q, letter, _horizontal(H)))
        st = set(states) | {root} | {q for q, _, _ in built}
        for _, _, H in built:
            st |= {a for _, a, _ in H.transitions if a is not EPS}
        out[name] = NUTA(frozenset(st), root, tuple(built), arity, sigma)
        for h in hnames:
            out.setdefault(("hlang-of", name), set()).add(h)
    return {k: v for k, v in out.items() if not isinstance(k, tuple)}


def parse_file(path: str) -> dict:
    import sys
    if path == "-":
        return parse_text(sys.stdin.read())
    with open(path, encoding="utf-8") as fh:
        return parse_text(fh.read())


def pick(objs: dict, name: str | None, types, what: str):
    """The named object, or the single/first object of the wanted type."""
    if name is not None:
        if name not in objs:
            raise AutomatonError(f"no block named {name!r}")
        obj = objs[name]
        if not isinstance(obj, types):
            raise AutomatonError(f"block {name!r} is not a {what}")
        return obj
    for obj in objs.values():
        if isinstance(obj, types):
            return obj
    raise AutomatonError(f"no {what} in input")


# ---------------------------------------------------------------- printing

def _state_names(states) -> dict:
    names = {q: str(q) for q in states}
    if all(TOKEN.match(n) for n in names.values()) and len(set(names.values())) == len(names):
        return names
    return {q: f"q{i}" for i, q in enumerate(sorted(states, key=repr))}


def _sym(x) -> str:
    if x == BOT:
        return "_"
    s = str(x)
    if not isinstance(x, (str, int)) or not SYMBOL_TOKEN.match(s) or s in ("_", "eps", "->", ":="):
        raise AutomatonError(f"symbol {x!r} has no textual form")
    return s


def _show_letter(a) -> str:
    if a is EPS:
        return "eps"
    if not isinstance(a, tuple):
        return _sym(a)
    return "|".join(_sym(x) for x in a)


def print_word(name: str, A: WordAutomaton) -> str:
    if A.arity is None:
        raise AutomatonError("only relation automata (fixed arity) can be printed")
    nm = _state_names(A.states)
    out = [f"word-automaton {name}", f"arity {A.arity}",
           f"mode {'finite' if A.mode == FINITE else 'buchi'}"]
    for q in sorted(A.states, key=lambda s: nm[s]):
        flags = (" initial" if q == A.initial else "") + (" final" if q in A.final else "")
        out.append(f"state {nm[q]}{flags}")
    lines = sorted(f"trans {nm[p]} {_show_letter(a)} {nm[q]}" for p, a, q in A.transitions)
    return "\n".join(out + lines) + "\n"


def _show_formula(f, nm) -> str:
    tag = f[0]
    if tag in ("true", "false"):
        return tag
    if tag == "atom":
        return f"atom({nm[f[1]]},{f[2]})"
    sep = " & " if tag == "and" else " | "
    return "(" + sep.join(_show_formula(g, nm) for g in f[1]) + ")"


def print_tree(name: str, A) -> str:
    nm = _state_names(A.states)
    if isinstance(A, AlternatingTreeAutomaton):
        kind = "abta" if A.mode == BUCHI else "ata"
        roots = [A.initial]
    else:
        kind = A.kind
        roots = sorted(A.initial, key=lambda s: nm[s])
    arity = MIXED if A.arity is None else A.arity
    out = [f"tree-automaton {name}", f"kind {kind}", f"arity {arity}",
           f"mode {'finite' if A.mode == FINITE else 'buchi'}"]
    for x, r in sorted(A.rank.items(), key=lambda kv: _sym(kv[0])):
        if isinstance(x, tuple):
            continue
        out.append(f"symbol {_sym(x)} {r}")
    out.append("state " + " ".join(sorted(nm.values())))
    out.append("root " + " ".join(nm[q] for q in roots))
    if A.final:
        out.append("final " + " ".join(sorted(nm[q] for q in A.final)))
    if isinstance(A, AlternatingTreeAutomaton):
        lines = sorted(f"delta {nm[q]} {_show_letter(a)} := {_show_formula(f, nm)}"
                       for (q, a), f in A.table.items())
    else:
        lines = sorted(f"trans {nm[q]} {_show_letter(a)} -> {' '.join(nm[k] for k in kids)}".rstrip()
                       for q, a, kids in A.transitions)
    return "\n".join(out + lines) + "\n"


def print_unranked(name: str, A: NUTA, known: dict | None = None) -> str:
    """``known`` maps horizontal automata to names of blocks printed elsewhere."""
    known = known or {}
    nm = _state_names(A.states)
    hs: dict = {}
    for _, _, H in A.transitions:
        hs.setdefault(H, known.get(H, f"{name}_h{len(hs)}"))
    out = [f"unranked-automaton {name}", f"arity {A.arity}"]
    if A.sigma:
        out.append("symbol " + " ".join(sorted(_sym(x) for x in A.sigma)))
    out.append("state " + " ".join(sorted(nm.values())))
    out.append(f"root {nm[A.initial]}")
    out += sorted(f"trans {nm[q]} {_show_letter(a)} hlang {hs[H]}" for q, a, H in A.transitions)
    text = "\n".join(out) + "\n"
    for H, hname in hs.items():
        if H in known:
            continue
        trans = [(p, a if a is EPS else (nm[a],), q) for p, a, q in H.transitions]
        W = make(trans, H.initial, H.final, FINITE, 1, H.states)
        text += "\n" + print_word(hname, W)
    return text


def print_object(name: str, obj, known: dict | None = None) -> str:
    if isinstance(obj, WordAutomaton):
        return print_word(name, obj)
    if isinstance(obj, (TreeAutomaton, AlternatingTreeAutomaton)):
        return print_tree(name, obj)
    if isinstance(obj, NUTA):
        return print_unranked(name, obj, known)
    if isinstance(obj, SFPRSDefinition):
        return "\n".join([f"sfprs {name}", *obj.lines]) + "\n"
    raise AutomatonError(f"cannot print {type(obj).__name__}")


def print_objects(objs: dict) -> str:
    known = {}
    for n, o in objs.items():
        if isinstance(o, WordAutomaton) and o.arity == 1:
            known.setdefault(_horizontal(o), n)
    return "\n".join(print_object(n, o, known) for n, o in objs.items())


# ---------------------------------------------------------------- terms

def parse_term(text: str) -> tuple:
    """Ranked or unranked tree term: ``f(g(c), c)``."""
    toks = re.findall(r"[(),]|[^\s(),]+", text)
    pos = 0

    def node():
        nonlocal pos
        if pos >= len(toks) or toks[pos] in "(),":
            raise AutomatonError(f"malformed tree term {text!r}")
        label = toks[pos]
        pos += 1
        kids = []
        if pos < len(toks) and toks[pos] == "(":
            pos += 1
            if pos < len(toks) and toks[pos] == ")":
                pos += 1
                return (label, ())
            while True:
                kids.append(node())
                if pos >= len(toks):
                    raise AutomatonError(f"unbalanced tree term {text!r}")
                t = toks[pos]
                pos += 1
                if t == ")":
                    break
                if t != ",":
                    raise AutomatonError(f"malformed tree term {text!r}")
        return (label, tuple(kids))

    t = node()
    if pos != len(toks):
        raise AutomatonError(f"trailing input in tree term {text!r}")
    return t


def show_term(t) -> str:
    if not t[1]:
        return str(t[0])
    return f"{t[0]}({', '.join(show_term(c) for c in t[1])})"
