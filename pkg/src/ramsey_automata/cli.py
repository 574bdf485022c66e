"""Command-line front end: ``ramsey <command> ...``.

Exit codes: 0 yes, 1 no, 2 input error, 3 budget overflow.
"""
from __future__ import annotations

import argparse
import contextlib
import io
import json
import os
import random
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .config import Budget, BudgetError
from .fileformat import FormatError, parse_file, parse_term, pick, print_object, print_objects, show_term
from .reductions import (
    EVIDENCE, finite_clique_search, gen_hard_genbuchi, gen_hard_mondec_tree_ddown,
    gen_hard_mondec_word, gen_hard_tree_clique, genbuchi_truth, intersection_nonempty,
    is_tree, mondec_index_probe, mondec_word_truth, random_hard_tree_clique, random_nta,
    random_word_nfa, undirected_to_directed, verify_clique_certificate,
)
from .tree_apps import TreeRecQuery, gen_buchi_rec_tree, mondec_tree, rec_reach_tree
from .tree_ramsey import (
    STRATEGIES, base_ranks, comb_nbta, pick_strategy, ramsey_eval_tree, size_bound_tree,
    witness_from_graph,
)
from .trees import TreeAutomaton, nbta_is_empty, nta_is_empty, rel_member
from .unranked import NUTA, encoded_relation, fcns_decode, nuta_rel_member, ramsey_eval_unranked
from .word_apps import RecQuery, gen_buchi_rec, mondec_word, rec_reach
from .word_ramsey import build_ramsey_buchi, decode_lasso, ramsey_eval, size_bound
from .words import AutomatonError, WordAutomaton, buchi_is_empty, is_empty, member

YES, NO, INPUT_ERROR, OVER_BUDGET = 0, 1, 2, 3


@dataclass
class Report:
    command: str
    result: str = ""
    exit_code: int = YES
    witness: list | None = None
    blocks: dict | None = None
    verified: bool | None = None
    horizon: int | None = None
    states: dict = field(default_factory=dict)
    timings: dict = field(default_factory=dict)
    info: dict = field(default_factory=dict)
    automaton: str | None = None

    def verdict(self, ok: bool, yes: str = "yes", no: str = "no") -> None:
        self.result = yes if ok else no
        self.exit_code = YES if ok else NO

    def as_json(self) -> str:
        out = {k: v for k, v in self.__dict__.items()}
        return json.dumps(out, sort_keys=True, ensure_ascii=False, default=str)

    def as_text(self) -> str:
        lines = [f"result: {self.result}"]
        for k in sorted(self.info):
            lines.append(f"{k}: {self.info[k]}")
        if self.blocks:
            for part in ("prefix", "period"):
                for alpha, beta in self.blocks.get(part, ()):
                    lines.append(f"{part} block {alpha} {beta}")
        if self.witness is not None:
            lines.append("witness: " + " ; ".join(self.witness))
        if self.verified is not None:
            lines.append(f"certificate: {'verified' if self.verified else 'FAILED'} (N={self.horizon})")
        if self.states:
            lines.append("states: " + " ".join(f"{k}={self.states[k]}" for k in sorted(self.states)))
        text = "\n".join(lines)
        if self.automaton:
            text += "\n\n" + self.automaton.rstrip("\n")
        return text


class _Timer:
    def __init__(self, report: Report):
        self.report = report

    @contextlib.contextmanager
    def __call__(self, name: str):
        t = time.perf_counter()
        yield
        self.report.timings[name] = round(time.perf_counter() - t, 6)


# ---------------------------------------------------------------- inputs

class Inputs:
    """Parsed files, cached so ``@name`` references and stdin are read once."""

    def __init__(self):
        self.files: dict = {}
        self.default_path: str | None = None

    def _file(self, path: str) -> dict:
        if path not in self.files:
            self.files[path] = parse_file(path)
        return self.files[path]

    def load(self, ref: str, types, what: str):
        path, name = ref, None
        if ref.startswith("@"):
            if self.default_path is None:
                raise AutomatonError(f"{ref}: no file to resolve the block name in")
            path, name = self.default_path, ref[1:]
        elif "@" in ref and not os.path.exists(ref):
            path, name = ref.rsplit("@", 1)
        if self.default_path is None:
            self.default_path = path
        return pick(self._file(path), name, types, what)


def _word_arg(text: str | None) -> tuple:
    if text is None or text == "":
        return ()
    if "," in text or " " in text.strip():
        return tuple(x for x in text.replace(",", " ").split())
    return tuple(text)


def _show_word(w) -> str:
    w = tuple(w)
    if not w:
        return "ε"
    if all(isinstance(x, str) and len(x) == 1 for x in w):
        return "".join(w)
    return " ".join(str(x) for x in w)


def _budget(args) -> Budget:
    if getattr(args, "budget", None):
        return Budget(max_states=args.budget, max_subsets=max(1, args.budget // 20))
    return Budget.from_env()


# ---------------------------------------------------------------- word commands

def _word_certificate(R: WordAutomaton, rep: Report, N: int, budget: Budget, clock) -> bool:
    with clock("construction"):
        P = build_ramsey_buchi(R, budget=budget)
    rep.states["construction"] = len(P.states)
    rep.states["size_bound"] = size_bound(R)[1]
    if len(P.states) > rep.states["size_bound"]:
        raise AssertionError("construction exceeded its size bound")
    with clock("emptiness"):
        empty, lasso = buchi_is_empty(P)
    if empty:
        return False
    w = decode_lasso(lasso.stem, lasso.cycle)
    rep.blocks = {"prefix": [[_show_word(a), _show_word(b)] for a, b in w.prefix],
                  "period": [[_show_word(a), _show_word(b)] for a, b in w.period]}
    rep.witness = [_show_word(e) for e in w.elements(N)]
    rep.horizon = N
    with clock("verification"):
        rep.verified = verify_clique_certificate(R, w, N)
    return True


def cmd_eval(args, inp: Inputs, rep: Report, clock) -> None:
    R = inp.load(args.rel, WordAutomaton, "word automaton")
    if args.undirected:
        R = undirected_to_directed(R)
    rep.states["relation"] = len(R.states)
    budget = _budget(args)
    if R.arity == 2:
        rep.verdict(_word_certificate(R, rep, args.witness or 8, budget, clock))
        if not args.witness:
            rep.witness = None
            rep.blocks = None
        return
    with clock("construction"):
        out = ramsey_eval(R, budget)
    rep.states["result"] = len(out.states)
    rep.verdict(not is_empty(out)[0])
    rep.automaton = print_object("ramsey", out)


def _targets(args, inp: Inputs, types, what: str) -> list:
    return [inp.load(ref, types, what) for ref in args.targets.split(",") if ref]


def cmd_recreach(args, inp: Inputs, rep: Report, clock) -> None:
    R = inp.load(args.rel, WordAutomaton, "word automaton")
    L = inp.load(args.target, WordAutomaton, "word automaton")
    rep.states["relation"] = len(R.states)
    with clock("construction"):
        out = rec_reach(R, L, budget=_budget(args))
    rep.states["result"] = len(out.states)
    if args.start is None:
        rep.verdict(not is_empty(out)[0])
        rep.automaton = print_object("rec", out)
        return
    w = _word_arg(args.start)
    rep.info["start"] = _show_word(w)
    rep.verdict(member(out, w))


def cmd_genbuchi(args, inp: Inputs, rep: Report, clock) -> None:
    R = inp.load(args.rel, WordAutomaton, "word automaton")
    Ls = _targets(args, inp, WordAutomaton, "word automaton")
    w = _word_arg(args.start)
    rep.info["start"] = _show_word(w)
    rep.info["targets"] = len(Ls)
    rep.states["relation"] = len(R.states)
    with clock("decision"):
        rep.verdict(gen_buchi_rec(RecQuery(R, Ls, w), _budget(args)))


def cmd_mondec(args, inp: Inputs, rep: Report, clock) -> None:
    R = inp.load(args.rel, WordAutomaton, "word automaton")
    rep.states["relation"] = len(R.states)
    with clock("decision"):
        rep.verdict(mondec_word(R, budget=_budget(args)), "decomposable", "not decomposable")


# ---------------------------------------------------------------- tree commands

def _tree_certificate(R: TreeAutomaton, strategy: str, rep: Report, N: int, budget, clock,
                      assume_checked: bool = False) -> bool:
    strategy = pick_strategy(R, strategy)
    rep.info["strategy"] = strategy
    with clock("construction"):
        D = comb_nbta(R, strategy, budget, assume_checked)
    rep.states["construction"] = len(D.states)
    if strategy != "general":
        rep.states["size_bound"] = size_bound_tree(R, strategy)
        if len(D.states) > rep.states["size_bound"]:
            raise AssertionError("construction exceeded its size bound")
    with clock("emptiness"):
        empty, graph = nbta_is_empty(D, cap=max(len(D.states), 1) ** 2)
    if empty:
        return False
    rep.horizon = N
    if graph.truncated:
        rep.verified = False
        return True
    w = witness_from_graph(graph, base_ranks(R))
    elems = w.elements(N)
    rep.witness = [show_term(t) for t in elems]
    with clock("verification"):
        rep.verified = verify_clique_certificate(R, w, N)
    return True


def _tree_relation(args, inp: Inputs, rep: Report):
    src = getattr(args, "closure", None) or args.rel
    if src is None:
        raise AutomatonError("give --rel or --closure")
    R = inp.load(src, TreeAutomaton, "tree automaton")
    if not isinstance(R, TreeAutomaton) or R.arity != 2:
        raise AutomatonError("expected a binary tree relation")
    if args.undirected if hasattr(args, "undirected") else False:
        R = undirected_to_directed(R)
    rep.states["relation"] = len(R.states)
    return R


def cmd_eval_tree(args, inp: Inputs, rep: Report, clock) -> None:
    R = inp.load(args.rel, TreeAutomaton, "tree automaton")
    if args.undirected:
        R = undirected_to_directed(R)
    rep.states["relation"] = len(R.states)
    budget = _budget(args)
    if R.arity == 2:
        rep.verdict(_tree_certificate(R, args.strategy, rep, args.witness or 8, budget, clock))
        if not args.witness:
            rep.witness = None
        return
    with clock("construction"):
        out = ramsey_eval_tree(R, args.strategy, budget)
    rep.states["result"] = len(out.states)
    rep.verdict(not nta_is_empty(out)[0])
    rep.automaton = print_object("ramsey", out)


def _rec_strategy(args) -> str:
    if args.strategy:
        return args.strategy
    # a reflexive-transitive closure keeps the clique question transitive
    return "transitive" if args.closure else "general"


def cmd_recreach_tree(args, inp: Inputs, rep: Report, clock) -> None:
    R = _tree_relation(args, inp, rep)
    L = inp.load(args.target, TreeAutomaton, "tree automaton")
    strategy = _rec_strategy(args)
    rep.info["strategy"] = strategy
    with clock("construction"):
        out = rec_reach_tree(R, L, strategy, _budget(args))
    rep.states["result"] = len(out.states)
    if args.start is None:
        rep.verdict(not nta_is_empty(out)[0])
        rep.automaton = print_object("rec", out)
        return
    t = parse_term(args.start)
    rep.info["start"] = show_term(t)
    rep.verdict(rel_member(out, t))


def cmd_genbuchi_tree(args, inp: Inputs, rep: Report, clock) -> None:
    R = _tree_relation(args, inp, rep)
    Ls = _targets(args, inp, TreeAutomaton, "tree automaton")
    t = parse_term(args.start)
    rep.info["start"] = show_term(t)
    rep.info["targets"] = len(Ls)
    ranks = dict(base_ranks(R))
    for L in Ls:
        ranks.update(L.rank)
    with clock("decision"):
        rep.verdict(gen_buchi_rec_tree(TreeRecQuery(R, Ls, t, ranks), _budget(args)))


def cmd_mondec_tree(args, inp: Inputs, rep: Report, clock) -> None:
    R = inp.load(args.rel, TreeAutomaton, "tree automaton")
    rep.states["relation"] = len(R.states)
    rep.info["strategy"] = args.strategy
    with clock("decision"):
        ok = mondec_tree(R, args.strategy, _budget(args))
    rep.verdict(ok, "decomposable", "not decomposable")


def cmd_eval_unranked(args, inp: Inputs, rep: Report, clock) -> None:
    R = inp.load(args.rel, NUTA, "unranked automaton")
    if R.arity != 2:
        with clock("construction"):
            out = ramsey_eval_unranked(R, strategy=args.strategy, budget=_budget(args))
        rep.verdict(bool(out.transitions))
        rep.automaton = print_object("ramsey", out)
        return
    B = encoded_relation(R)
    rep.states["relation"] = len(R.states)
    rep.states["encoded"] = len(B.states)
    N = args.witness or 8
    ok = _tree_certificate(B, args.strategy, rep, N, _budget(args), clock)
    rep.verdict(ok)
    if ok and rep.verified:
        # re-check on the unranked side, through the decoding
        elems = [fcns_decode(parse_term(s)) for s in rep.witness]
        rep.verified = len(set(elems)) == len(elems) and all(
            nuta_rel_member(R, elems[i], elems[j])
            for i in range(len(elems)) for j in range(i + 1, len(elems)))
        rep.witness = [show_term(t) for t in elems]
    if not args.witness:
        rep.witness = None


# ---------------------------------------------------------------- generators

def _expect_header(command: str, expect: bool, extra: str = "") -> str:
    out = f"# command: {command}\n# expect: {'yes' if expect else 'no'}\n"
    if extra:
        out += f"# {extra}\n"
    return out


def generate(kind: str, rng: random.Random, tree: bool = False, states: int = 3,
             targets: int = 3) -> tuple:
    """(file name suffix, text, expected answer) for one generated instance."""
    if kind == "hard-clique":
        A, ts = random_hard_tree_clique(rng, states, targets)
        R = gen_hard_tree_clique(A, ts)
        truth = intersection_nonempty(A, ts)
        text = _expect_header("eval-tree", truth) + print_objects({"clique": R, "source": A})
        return "taut", text, truth
    if kind == "hard-mondec":
        if tree:
            A = random_nta(rng, rng.randint(1, states), {"f": 2, "c": 0}, rng.uniform(0.2, 0.6),
                           deterministic_top_down=True)
            R = gen_hard_mondec_tree_ddown(A)
            truth = nta_is_empty(A)[0]
            text = _expect_header("mondec-tree", truth) + print_objects({"rel": R, "source": A})
            return "taut", text, truth
        L = random_word_nfa(rng, ("a", "b"), rng.randint(1, states))
        R = gen_hard_mondec_word(L, ("a", "b"))
        truth = mondec_word_truth(L, ("a", "b"))
        text = _expect_header("mondec", truth) + print_objects({"rel": R, "source": L})
        return "aut", text, truth
    if kind == "hard-genbuchi":
        k = rng.randint(1, targets)
        if tree:
            ranks = {"f": 2, "c": 0, "d": 0}
            Ls = [random_nta(rng, rng.randint(1, states), ranks, rng.uniform(0.2, 0.5))
                  for _ in range(k)]
            c = ("c", ())
            inst = gen_hard_genbuchi(Ls, c)
            start = show_term(c)
            cmd = "genbuchi-tree"
            ext = "taut"
        else:
            Ls = [random_word_nfa(rng, ("a", "b"), rng.randint(1, states)) for _ in range(k)]
            c = tuple(rng.choice("ab") for _ in range(rng.randint(0, 2)))
            inst = gen_hard_genbuchi(Ls, c, ("a", "b"))
            start = _show_word(c) if c else ""
            cmd = "genbuchi"
            ext = "aut"
        truth = genbuchi_truth(Ls)
        names = ",".join(f"@L{i}" for i in range(1, k + 1))
        objs = {"rel": inst.relation}
        objs.update({f"L{i}": L for i, L in enumerate(Ls, 1)})
        text = _expect_header(f"{cmd} --targets {names} --from '{start}'", truth)
        return ext, text + print_objects(objs), truth
    raise AutomatonError(f"unknown generator {kind!r}")


def cmd_gen(args, inp: Inputs, rep: Report, clock) -> None:
    rng = random.Random(args.seed)
    if args.emit_corpus:
        os.makedirs(args.emit_corpus, exist_ok=True)
        written = []
        for i in range(args.count):
            ext, text, _ = generate(args.kind, rng, args.tree, args.states, args.targets)
            path = os.path.join(args.emit_corpus, f"{args.kind}-{args.seed}-{i:03d}.{ext}")
            with open(path, "w", encoding="utf-8") as fh:
                fh.write(text)
            written.append(path)
        rep.verdict(True, yes=f"wrote {len(written)} instances")
        rep.info["directory"] = args.emit_corpus
        return
    _, text, truth = generate(args.kind, rng, args.tree, args.states, args.targets)
    rep.result = "generated"
    rep.info["expect"] = "yes" if truth else "no"
    rep.automaton = text


# ---------------------------------------------------------------- oracles

def _any_relation(inp: Inputs, ref: str):
    return inp.load(ref, (WordAutomaton, TreeAutomaton), "relation")


def _show_elem(x) -> str:
    return show_term(x) if isinstance(x, tuple) and len(x) == 2 and isinstance(x[1], tuple) \
        and (not x[1] or isinstance(x[1][0], tuple)) else _show_word(x)


def cmd_oracle(args, inp: Inputs, rep: Report, clock) -> None:
    R = _any_relation(inp, args.rel)
    rep.states["relation"] = len(R.states)
    if args.kind == "clique":
        with clock("search"):
            found = finite_clique_search(R, args.n, args.bound)
        rep.info["n"] = args.n
        rep.info["bound"] = args.bound
        rep.verdict(found is not None, "found", "none")
        if found is not None:
            rep.witness = [_show_elem(x) for x in found]
        return
    if args.kind == "certificate":
        if args.elements:
            parts = [p.strip() for p in args.elements.split(";")]
            elems = [parse_term(p) for p in parts] if is_tree(R) else [_word_arg(p) for p in parts]
            rep.horizon = len(elems)
            rep.witness = [_show_elem(x) for x in elems]
            with clock("verification"):
                rep.verified = verify_clique_certificate(R, elems, len(elems))
            rep.verdict(rep.verified, "verified", "rejected")
            return
        budget = _budget(args)
        if is_tree(R):
            ok = _tree_certificate(R, "auto", rep, args.N, budget, clock)
        else:
            ok = _word_certificate(R, rep, args.N, budget, clock)
        if not ok:
            rep.verdict(False, no="no clique")
            return
        rep.verdict(bool(rep.verified), "verified", "rejected")
        return
    if args.kind == "index":
        with clock("probe"):
            res = mondec_index_probe(R, args.j, args.n, args.bound)
        rep.result = res.status
        rep.exit_code = YES if res.status == EVIDENCE else NO
        rep.witness = [" | ".join(_show_elem(x) for x in h) for h in res.classes]
        return
    raise AutomatonError(f"unknown oracle {args.kind!r}")


# ---------------------------------------------------------------- corpus runner

def read_header(path: str) -> tuple:
    """(command words, expected exit code) from ``# command:`` / ``# expect:`` lines."""
    import shlex
    command, expect = None, None
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            if not line.startswith("#"):
                break
            body = line[1:].strip()
            if body.startswith("command:"):
                command = shlex.split(body[len("command:"):])
            elif body.startswith("expect:"):
                expect = YES if body[len("expect:"):].strip() == "yes" else NO
    if command is None or expect is None:
        raise AutomatonError(f"{path}: missing '# command:' or '# expect:' header")
    return command, expect


def run_instance(path: str) -> tuple:
    try:
        command, expect = read_header(path)
    except (OSError, AutomatonError) as e:
        return path, None, INPUT_ERROR, str(e)
    sink = io.StringIO()
    t = time.perf_counter()
    with contextlib.redirect_stdout(sink), contextlib.redirect_stderr(sink):
        code = main(command + ["--rel", path])
    return path, expect, code, f"{time.perf_counter() - t:.3f}s"


def cmd_corpus(args, inp: Inputs, rep: Report, clock) -> None:
    files = sorted(os.path.join(args.directory, f) for f in os.listdir(args.directory)
                   if f.endswith((".aut", ".taut", ".uaut")))
    with clock("run"):
        if args.jobs > 1:
            with ProcessPoolExecutor(args.jobs) as pool:
                results = list(pool.map(run_instance, files))
        else:
            results = [run_instance(f) for f in files]
    lines = []
    bad = 0
    for path, expect, code, note in results:
        ok = expect is not None and code == expect
        bad += not ok
        lines.append(f"{'ok  ' if ok else 'FAIL'} {os.path.basename(path)} expect={expect} got={code} {note}")
    rep.info["instances"] = len(results)
    rep.info["failures"] = bad
    rep.verdict(bad == 0, "all matched", "mismatches")
    rep.automaton = "\n".join(lines)


# ---------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="ramsey", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--json", action="store_true", help="machine-readable report")
        sp.add_argument("--budget", type=int, default=None,
                        help="state budget (default: $RAMSEY_STATE_BUDGET)")
        return sp

    def rel(sp, required=True):
        sp.add_argument("rel_pos", nargs="?", metavar="FILE", help="same as --rel; '-' is stdin")
        sp.add_argument("--rel", required=False, help="relation file, optionally FILE@block")
        sp.set_defaults(rel_required=required)
        return sp

    sp = rel(common(sub.add_parser("eval", help="Ramsey quantifier over a word relation")))
    sp.add_argument("--undirected", action="store_true")
    sp.add_argument("--witness", type=int, nargs="?", const=8, default=None, metavar="N")
    sp.set_defaults(func=cmd_eval)

    sp = rel(common(sub.add_parser("eval-tree", help="Ramsey quantifier over a tree relation")))
    sp.add_argument("--strategy", choices=("auto",) + STRATEGIES, default="auto")
    sp.add_argument("--undirected", action="store_true")
    sp.add_argument("--witness", type=int, nargs="?", const=8, default=None, metavar="N")
    sp.set_defaults(func=cmd_eval_tree)

    sp = rel(common(sub.add_parser("eval-unranked", help="Ramsey quantifier over an unranked relation")))
    sp.add_argument("--strategy", choices=("auto",) + STRATEGIES, default="auto")
    sp.add_argument("--witness", type=int, nargs="?", const=8, default=None, metavar="N")
    sp.set_defaults(func=cmd_eval_unranked)

    sp = rel(common(sub.add_parser("recreach", help="recurrent reachability on words")))
    sp.add_argument("--target", required=True)
    sp.add_argument("--from", dest="start", default=None)
    sp.set_defaults(func=cmd_recreach)

    sp = rel(common(sub.add_parser("genbuchi", help="generalized Büchi recurrence on words")))
    sp.add_argument("--targets", required=True, help="comma-separated FILE[@block] or @block")
    sp.add_argument("--from", dest="start", default="")
    sp.set_defaults(func=cmd_genbuchi)

    sp = rel(common(sub.add_parser("mondec", help="monadic decomposability of a word relation")))
    sp.set_defaults(func=cmd_mondec)

    for name, func, text in (("recreach-tree", cmd_recreach_tree, "recurrent reachability on trees"),
                             ("genbuchi-tree", cmd_genbuchi_tree, "generalized Büchi recurrence on trees")):
        sp = rel(common(sub.add_parser(name, help=text)), required=False)
        sp.add_argument("--closure", default=None,
                        help="reachability closure of a ground tree rewrite system, used as the relation")
        if name == "recreach-tree":
            sp.add_argument("--target", required=True)
            sp.add_argument("--from", dest="start", default=None)
            sp.add_argument("--strategy", choices=STRATEGIES, default=None)
        else:
            sp.add_argument("--targets", required=True)
            sp.add_argument("--from", dest="start", required=True)
        sp.set_defaults(func=func)

    sp = rel(common(sub.add_parser("mondec-tree", help="monadic decomposability of a tree relation")))
    sp.add_argument("--strategy", choices=("cotransitive", "general"), default="cotransitive")
    sp.set_defaults(func=cmd_mondec_tree)

    sp = common(sub.add_parser("gen", help="hardness-reduction instance generators"))
    sp.add_argument("kind", choices=("hard-clique", "hard-mondec", "hard-genbuchi"))
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--tree", action="store_true", help="tree variant (mondec, genbuchi)")
    sp.add_argument("--states", type=int, default=3)
    sp.add_argument("--targets", type=int, default=3)
    sp.add_argument("--emit-corpus", default=None, metavar="DIR")
    sp.add_argument("--count", type=int, default=10)
    sp.set_defaults(func=cmd_gen, rel_required=None)

    sp = common(sub.add_parser("oracle", help="brute-force oracles"))
    sp.add_argument("kind", choices=("clique", "certificate", "index"))
    rel(sp)
    sp.add_argument("-n", type=int, default=4, help="clique size / class count")
    sp.add_argument("--bound", type=int, default=3, help="element size bound")
    sp.add_argument("-N", type=int, default=8, help="certificate horizon")
    sp.add_argument("-j", type=int, default=1, help="tuple width for the index probe")
    sp.add_argument("--elements", default=None, help="';'-separated elements to verify")
    sp.set_defaults(func=cmd_oracle)

    sp = common(sub.add_parser("corpus", help="run a directory of annotated instances"))
    sp.add_argument("directory")
    sp.add_argument("--jobs", type=int, default=os.cpu_count() or 1)
    sp.set_defaults(func=cmd_corpus, rel_required=None)
    return p


def _resolve_rel(p, args) -> None:
    pos = getattr(args, "rel_pos", None)
    if pos is not None:
        if args.rel is not None:
            p.error("give the relation once")
        args.rel = pos
    if args.rel_required and getattr(args, "rel", None) is None:
        p.error("--rel is required")


def main(argv=None) -> int:
    p = build_parser()
    try:
        args = p.parse_args(argv)
    except SystemExit as e:
        return int(e.code) if e.code is not None else INPUT_ERROR
    rep = Report(args.command)
    try:
        _resolve_rel(p, args)
        inp = Inputs()
        args.func(args, inp, rep, _Timer(rep))
    except SystemExit as e:
        return int(e.code) if e.code is not None else INPUT_ERROR
    except BudgetError as e:
        rep.result, rep.exit_code = f"budget exceeded: {e}", OVER_BUDGET
    except (FormatError, AutomatonError, OSError, ValueError, KeyError) as e:
        rep.result, rep.exit_code = f"input error: {e}", INPUT_ERROR
    if args.json:
        print(rep.as_json())
    elif args.command == "gen" and rep.automaton and rep.result == "generated":
        print(rep.automaton, end="")
    else:
        print(rep.as_text())
    return rep.exit_code


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
