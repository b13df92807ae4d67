"""
Command-line front end.  Every subcommand prints JSON (DOT for
``tower-tree --format dot``) on stdout.

Exit codes: 0 success / true, 1 mathematical negative, 2 input error,
3 budget or truncation exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import centralizers as cz
from . import discrimination as disc
from . import towers as tw
from . import words as wd
from . import zt
from .amalgam import ExtensionGroup
from .errors import BudgetExceeded, InputError, RaagError
from .graph import CommutationGraph, is_chordal
from .raag import Raag

EXIT_OK, EXIT_NEGATIVE, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2, 3


def _load(path):
    if path == "-":
        return json.load(sys.stdin)
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from None


def _graph(data):
    if "base" in data and "vertices" not in data:
        data = data["base"]
    return CommutationGraph.from_json(data)


def load_group(data):
    """A RAAG from a graph, or a nested extension from
    ``{"base": <graph>, "extensions": [{"u", "a_rank", "a_names"?}, ...]}``."""
    if "vertices" in data:
        return Raag(CommutationGraph.from_json(data))
    if "base" not in data:
        raise InputError("expected a graph or an extension spec with 'base'")
    G = Raag(CommutationGraph.from_json(data["base"]))
    for ext in data.get("extensions", []):
        G = ExtensionGroup(G, G.parse(ext["u"]), int(ext["a_rank"]), ext.get("a_names"))
    return G


def group_spec(G):
    exts = []
    while isinstance(G, ExtensionGroup):
        exts.append({"u": G.base.fmt(G.u), "a_rank": G.a_rank, "a_names": G.a_names})
        G = G.base
    return {"base": G.graph.to_json(), "extensions": exts[::-1]}


def load_chain(data):
    steps = []
    for s in data.get("steps", []):
        if isinstance(s, list):
            steps.append([(x["u"], int(x.get("degree", 1))) for x in s])
        else:
            steps.append((s["u"], int(s.get("degree", 1))))
    return zt.build_ice(_graph(data), steps)


# ------------------------------------------------------------ commands


def cmd_check_coherent(a):
    g = _graph(_load(a.graph))
    ok, wit = is_chordal(g)
    if ok:
        return {"chordal": True, "peo": list(wit.vertices)}, EXIT_OK
    return {"chordal": False, "cycle": list(wit.vertices)}, EXIT_NEGATIVE


def cmd_normalize(a):
    g = _graph(_load(a.graph))
    w = wd.parse(g, a.word)
    return {"normal_form": str(w), "length": w.length, "syllables": w.to_json()}, EXIT_OK


def cmd_equals(a):
    G = load_group(_load(a.graph))
    eq = G.parse(a.u) == G.parse(a.v)
    return {"equal": eq}, EXIT_OK if eq else EXIT_NEGATIVE


def cmd_centralizer(a):
    g = _graph(_load(a.graph))
    Raag(g)
    w = wd.parse(g, a.word)
    if not w:
        return {"word": "1", "generators": list(g.vertices), "whole_group": True}, EXIT_OK
    out = cz.centralizer(w).to_json()
    out["zo_split"] = cz.zo_split(w).to_json(g)
    return out, EXIT_OK


def cmd_representatives(a):
    g = _graph(_load(a.graph))
    reps = cz.representatives(g, a.bound)
    out = reps.to_json()
    if a.word:
        r, h = cz.conjugacy_representative(wd.parse(g, a.word), reps)
        out["lookup"] = {"word": a.word, "representative": str(r), "conjugator": str(h)}
    return out, EXIT_OK


def cmd_root(a):
    g = _graph(_load(a.graph))
    r = wd.root(wd.parse(g, a.word))
    return {"root": str(r.root), "multiplicity": r.multiplicity}, EXIT_OK


def cmd_blocks(a):
    g = _graph(_load(a.graph))
    w = wd.parse(g, a.word)
    core, conj = wd.cyclic_reduce(w)
    blocks = wd.block_decompose(core).blocks
    return {
        "cyclic_core": str(core),
        "conjugator": str(conj),
        "blocks": [str(b) for b in blocks],
    }, EXIT_OK


def cmd_extend(a):
    G = load_group(_load(a.group))
    names = a.names.split(",") if a.names else None
    E = ExtensionGroup(G, G.parse(a.u), a.rank, names)
    out = group_spec(E)
    out["centralizer"] = {
        "rank": E.C.rank,
        "generators": [G.fmt(c) for c in E.C.generators],
    }
    return out, EXIT_OK


def cmd_reduce(a):
    G = load_group(_load(a.group))
    x = G.parse(a.element)
    core, conj = G.cyclic_reduce(x)
    out = {
        "normal_form": G.fmt(x),
        "json": G.to_json(x),
        "cyclic_core": G.fmt(core),
        "conjugator": G.fmt(conj),
    }
    if isinstance(G, ExtensionGroup):
        out["class"] = G.classify(core)
    return out, EXIT_OK


def cmd_separate(a):
    G = load_group(_load(a.group))
    if not isinstance(G, ExtensionGroup):
        raise InputError("separate needs an extension spec")
    x = G.parse(a.element)
    if a.to_base:
        certs = disc.separate_to_base(G, x, a.budget)
        return {"certificates": [c.to_json() for c in certs]}, EXIT_OK
    return disc.separate(G, x, a.budget).to_json(), EXIT_OK


def cmd_bp_scan(a):
    G = load_group(_load(a.group))
    hit = disc.bp_scan(G, a.elements, a.bound)
    out = {"elements": a.elements, "bound": a.bound, "collapse": hit}
    return out, EXIT_OK if hit is None else EXIT_NEGATIVE


def cmd_ice_build(a):
    return load_chain(_load(a.chain)).to_json(), EXIT_OK


def cmd_zt_eval(a):
    ch = load_chain(_load(a.chain))
    expr = zt.parse_expression(ch, a.expr)
    top = zt.evaluate(ch, expr)
    out = {"expr": a.expr, "top": ch.top.fmt(top)}
    out["values"] = {str(m): str(zt.specialize(ch, top, m)) for m in a.m}
    return out, EXIT_OK


def cmd_axiom_check(a):
    ch = load_chain(_load(a.chain))
    rep = zt.axiom_check(ch, a.samples, a.m_values, a.seed)
    ok = all(r["status"] == "pass" for r in rep)
    return {"passed": ok, "report": rep}, EXIT_OK if ok else EXIT_NEGATIVE


def cmd_tower_build(a):
    t = tw.build_tower(_load(a.tower))
    out = t.to_json()
    out["levels"] = [
        {
            "level": l,
            "graph": t.levels[l].lg.to_json(),
            "relators": [text for _, text in t.levels[l].relators],
            "decomposition": tw.floor_decomposition(t, l),
        }
        for l in range(1, len(t.levels))
    ]
    return out, EXIT_OK


def cmd_tower_tree(a):
    t = tw.build_tower(_load(a.tower))
    tree = tw.tree_decomposition(t)
    if a.format == "dot":
        return tree.to_dot(), EXIT_OK
    return tree.to_json(), EXIT_OK


def cmd_tower_check(a):
    t = tw.build_tower(_load(a.tower))
    out = {"retraction": [tw.retraction_check(t, l) for l in range(1, len(t.levels))]}
    out["tree"] = tw.check_tree(t)
    ok = all(r["passed"] for r in out["retraction"]) and out["tree"]["tree"]
    if t.height and t.levels[-1].kind == "C":
        em = tw.embed_quadratic(t, t.height)
        bad = em.check_relators()
        spots = em.spot_check(a.samples, a.length_bound, a.seed, a.budget)
        out["embedding"] = {"relator_failures": bad, "separations": spots}
        ok = ok and not bad and all(s["verified"] for s in spots)
    out["passed"] = ok
    return out, EXIT_OK if ok else EXIT_NEGATIVE


def cmd_class_c_check(a):
    g = _graph(_load(a.graph))
    Raag(g)
    if a.empty_w:
        reps = cz.RepresentativeSet.from_elements(g, [], a.bound)
    else:
        reps = cz.representatives(g, a.bound)
    rep = cz.check_class_c_axioms(g, reps, a.sample_length, a.samples, a.seed)
    ok = cz.report_passed(rep)
    return {"passed": ok, "report": rep}, EXIT_OK if ok else EXIT_NEGATIVE


def _int_list(text):
    return [int(x) for x in text.split(",") if x.strip()]


def build_parser():
    p = argparse.ArgumentParser(prog="limitraag", description=__doc__.split("\n\n")[0])
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, *args):
        sp = sub.add_parser(name)
        sp.set_defaults(fn=fn)
        sp.add_argument("--seed", type=int, default=0)
        for a in args:
            a(sp)
        return sp

    graph = lambda sp: sp.add_argument("graph")
    group = lambda sp: sp.add_argument("group")
    word = lambda sp: sp.add_argument("--word", required=True)
    budget = lambda sp: sp.add_argument("--budget", type=int, default=16)

    add("check-coherent", cmd_check_coherent, graph)
    add("normalize", cmd_normalize, graph, word)
    sp = add("equals", cmd_equals, graph)
    sp.add_argument("--u", required=True)
    sp.add_argument("--v", required=True)
    add("centralizer", cmd_centralizer, graph, word)
    sp = add("representatives", cmd_representatives, graph)
    sp.add_argument("--bound", type=int, default=2)
    sp.add_argument("--word")
    add("root", cmd_root, graph, word)
    add("blocks", cmd_blocks, graph, word)
    sp = add("extend", cmd_extend, group)
    sp.add_argument("--u", required=True)
    sp.add_argument("--rank", type=int, default=1)
    sp.add_argument("--names")
    sp = add("reduce", cmd_reduce, group)
    sp.add_argument("--element", required=True)
    sp = add("separate", cmd_separate, group, budget)
    sp.add_argument("--element", required=True)
    sp.add_argument("--to-base", action="store_true")
    sp = add("bp-scan", cmd_bp_scan, group)
    sp.add_argument("--elements", nargs="+", required=True)
    sp.add_argument("--bound", type=int, default=10)
    add("ice-build", cmd_ice_build, lambda sp: sp.add_argument("chain"))
    sp = add("zt-eval", cmd_zt_eval, lambda sp: sp.add_argument("chain"))
    sp.add_argument("--expr", required=True)
    sp.add_argument("--m", type=_int_list, default=[2])
    sp = add("axiom-check", cmd_axiom_check, lambda sp: sp.add_argument("chain"))
    sp.add_argument("--samples", type=int, default=200)
    sp.add_argument("--m-values", type=_int_list, default=[1, 2, 3, 5])
    tower = lambda sp: sp.add_argument("tower")
    add("tower-build", cmd_tower_build, tower)
    sp = add("tower-tree", cmd_tower_tree, tower)
    sp.add_argument("--format", choices=("json", "dot"), default="json")
    sp = add("tower-check", cmd_tower_check, tower, budget)
    sp.add_argument("--samples", type=int, default=20)
    sp.add_argument("--length-bound", type=int, default=6)
    sp = add("class-c-check", cmd_class_c_check, graph)
    sp.add_argument("--bound", type=int, default=4)
    sp.add_argument("--sample-length", type=int, default=4)
    sp.add_argument("--samples", type=int, default=200)
    sp.add_argument("--empty-w", action="store_true", help="use W = empty (negative control)")
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    for name in ("budget", "bound", "samples", "sample_length", "length_bound"):
        v = getattr(args, name, None)
        if v is not None and v < 1:
            print(f"error: --{name.replace('_', '-')} must be positive", file=sys.stderr)
            return EXIT_INPUT
    try:
        out, code = args.fn(args)
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        print(json.dumps({"error": "budget", "message": str(exc), **getattr(exc, "details", {})}))
        return EXIT_BUDGET
    except (InputError, RaagError, LookupError, KeyError, ValueError, TypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if isinstance(out, str):
        print(out)
    else:
        print(json.dumps(out, indent=2))
    return code


if __name__ == "__main__":
    sys.exit(main())
