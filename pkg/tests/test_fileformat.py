import pytest

from conftest import words_upto
from ramsey_automata import corpus
from ramsey_automata.fileformat import (
    FormatError, SFPRSDefinition, parse_formula, parse_term, parse_text, pick, print_object,
    print_objects, show_term,
)
from ramsey_automata.tree_ramsey import build_enc_nta
from ramsey_automata.trees import (
    TRUE, AlternatingTreeAutomaton, TreeAutomaton, atom, ata_member, enumerate_trees, f_and,
    f_or, nta_member, nta_to_ata, show_formula, tree_convolve,
)
from ramsey_automata.unranked import NUTA, enumerate_unranked, nuta_rel_member
from ramsey_automata.words import WordAutomaton, convolve, member

PAIRS_W = [(u, v) for u in words_upto("ab", 3) for v in words_upto("ab", 3) if u or v]


def roundtrip(obj):
    text = print_object("x", obj)
    back = parse_text(text)
    assert print_objects(back) == text
    return back["x"]


def textual(inst):
    return all(isinstance(x, str) for _, a, _ in inst.relation.transitions for x in a)


@pytest.mark.parametrize("inst", [i for i in corpus.word_corpus() if textual(i)], ids=lambda i: i.name)
def test_word_roundtrip(inst):
    R = inst.relation
    back = roundtrip(R)
    assert isinstance(back, WordAutomaton)
    assert len(back.states) == len(R.states) and len(back.transitions) == len(R.transitions)
    if R.arity == 2:
        for u, v in PAIRS_W:
            assert member(back, convolve(u, v)) == member(R, convolve(u, v))


@pytest.mark.parametrize("inst", corpus.tree_corpus(), ids=lambda i: i.name)
def test_tree_roundtrip(inst):
    R = inst.relation
    back = roundtrip(R)
    assert isinstance(back, TreeAutomaton) and back.kind == R.kind
    trees = enumerate_trees(dict(R.rank), 3)[:30]
    for s in trees:
        for t in trees:
            assert nta_member(back, tree_convolve(s, t)) == nta_member(R, tree_convolve(s, t))


def test_ata_roundtrip():
    A = nta_to_ata(corpus.tree_grow_chain())
    back = roundtrip(A)
    assert isinstance(back, AlternatingTreeAutomaton)
    trees = enumerate_trees(corpus.CHAIN, 4)
    for s in trees:
        for t in trees:
            assert ata_member(back, tree_convolve(s, t)) == ata_member(A, tree_convolve(s, t))


def test_buchi_tree_roundtrip_keeps_final_states():
    E = build_enc_nta(corpus.CHAIN)
    back = roundtrip(E)
    assert back.mode == E.mode and len(back.final) == len(E.final)


@pytest.mark.parametrize("inst", corpus.unranked_corpus(), ids=lambda i: i.name)
def test_unranked_roundtrip(inst):
    R = inst.relation
    back = roundtrip(R)
    assert isinstance(back, NUTA)
    trees = enumerate_unranked(sorted(R.sigma), 3)
    for s in trees:
        for t in trees:
            assert nuta_rel_member(back, s, t) == nuta_rel_member(R, s, t)


def test_pair_symbols_have_no_textual_form():
    R = next(i.relation for i in corpus.word_corpus() if not textual(i))
    with pytest.raises(Exception):
        print_object("x", R)


def test_all_padding_letter_reports_line():
    text = "word-automaton r\narity 2\nstate 0 initial final\ntrans 0 _|_ 0\n"
    with pytest.raises(FormatError) as e:
        parse_text(text)
    assert e.value.line == 4
    assert "line 4" in str(e.value)


@pytest.mark.parametrize("text,line", [
    ("arity 2\n", 1),
    ("word-automaton a\nstate 0 initial\nword-automaton a\nstate 0 initial\n", 3),
    ("word-automaton a\narity x\n", 2),
    ("word-automaton a\narity 1\nstate 0 initial\ntrans 0 a|b 0\n", 4),
    ("tree-automaton t\nkind nta\narity 1\nsymbol c 0\nroot q\ntrans q c -> q\n", 6),
])
def test_malformed_inputs(text, line):
    with pytest.raises(FormatError) as e:
        parse_text(text)
    assert e.value.line == line


def test_formula_parse():
    f = parse_formula("atom(q,1) & (atom(p,2) | true)")
    assert f == f_and(atom("q", 1), f_or(atom("p", 2), TRUE))
    assert parse_formula(show_formula(f)) == f
    g = parse_formula("atom(a,1) | atom(b,2) & atom(c,1)")
    assert g == f_or(atom("a", 1), f_and(atom("b", 2), atom("c", 1)))
    with pytest.raises(FormatError):
        parse_formula("atom(q,1) &")
    with pytest.raises(FormatError):
        parse_formula("(atom(q,1)")


def test_comments_are_ignored():
    text = """# leading comment
word-automaton a   # trailing comment
arity 1
state 0 initial final
trans 0 a 0 # loop
"""
    A = parse_text(text)["a"]
    assert member(A, (("a",), ("a",)))


def test_sfprs_blocks_are_kept_verbatim():
    objs = parse_text("sfprs s\nrule a -> b\n")
    assert objs["s"] == SFPRSDefinition("s", ("rule a -> b",))


def test_hlang_must_be_a_word_automaton():
    text = "unranked-automaton u\narity 1\nsymbol a\nroot r\ntrans r a hlang nope\n"
    with pytest.raises(FormatError):
        parse_text(text)


def test_pick():
    objs = {"p": corpus.strict_prefix(), "t": corpus.tree_grow_chain()}
    assert pick(objs, None, TreeAutomaton, "tree automaton") is objs["t"]
    assert pick(objs, "p", WordAutomaton, "word automaton") is objs["p"]
    with pytest.raises(Exception):
        pick(objs, "p", TreeAutomaton, "tree automaton")
    with pytest.raises(Exception):
        pick(objs, "missing", TreeAutomaton, "tree automaton")


def test_terms():
    t = parse_term("f(g(c), c)")
    assert t == ("f", (("g", (("c", ()),)), ("c", ())))
    assert parse_term(show_term(t)) == t
    for bad in ("f(", "f(c,", "f(c) c", "(c)"):
        with pytest.raises(Exception):
            parse_term(bad)
