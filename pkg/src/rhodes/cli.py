"""Command-line interface: ``rhodes <verb> [options] FILE``.

Reports are JSON on stdout, a one-line summary goes to stderr.  Exit codes:
0 success, 1 domain refusal, 2 input error.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import corpus as corpus_mod
from .automata import (
    Dfa,
    count_factorizations,
    counter_matrix,
    ds_sync_word,
    is_unambiguous,
    shortest_sync_word,
    synchronizes,
    syntactic_monoid,
)
from .errors import Refusal, SemigroupError
from .io import load_dfa, load_marked_product, load_semigroup, matrix_to_json, read_json, semigroup_to_json
from .linrep import exact_field, triangularize
from .radical import parse_field, rhodes_radical, rhodes_radical_oracle
from .congruence import quotient
from .varieties import classify_representability, parse_variety, variety_member


class Refused(Exception):
    def __init__(self, report, summary):
        self.report = report
        self.summary = summary


def cmd_greens(args):
    S = load_semigroup(args.file)
    G = S.greens
    m = len(G.j_classes)
    report = {
        "order": S.order,
        "identity": S.identity,
        "idempotents": list(S.idempotents),
        "r_classes": [list(c) for c in G.r_classes],
        "l_classes": [list(c) for c in G.l_classes],
        "h_classes": [list(c) for c in G.h_classes],
        "j_classes": [list(c) for c in G.j_classes],
        "j_order": [[a, b] for a in range(m) for b in range(m) if a != b and G.j_leq[a, b]],
        "regular": sorted(G.regular),
    }
    return report, f"{S.order} elements, {m} J-classes, {len(G.regular)} regular"


def cmd_radical(args):
    S = load_semigroup(args.file)
    K = parse_field(args.field)
    res = rhodes_radical(S, K)
    Q, _ = quotient(S, res.congruence)
    per = []
    for j, (data, c) in res.per_j_class.items():
        per.append({
            "j_class": list(S.greens.j_classes[j]),
            "base_idempotent": data.base_group.identity,
            "normal_subgroup": sorted(data.normal_subgroup),
            "classes": [list(x) for x in c.classes],
        })
    report = {
        "field": str(K),
        "classes": [list(c) for c in res.congruence.classes],
        "class_count": res.congruence.class_count,
        "universal": res.congruence.class_count == 1,
        "quotient_order": Q.order,
        "per_j_class": per,
    }
    return report, f"radical over {K}: {res.congruence.class_count} classes, quotient order {Q.order}"


def cmd_oracle_compare(args):
    S = load_semigroup(args.file)
    K = parse_field(args.field)
    a = rhodes_radical(S, K).congruence
    b = rhodes_radical_oracle(S, K)
    report = {"field": str(K), "ggm": a.to_json()["classes"], "oracle": b.to_json()["classes"], "agree": a == b}
    return report, f"radical vs oracle over {K}: {'agree' if a == b else 'DISAGREE'}"


def cmd_variety(args):
    S = load_semigroup(args.file)
    v = parse_variety(args.id)
    d = variety_member(S, v)
    return {"variety": str(v), "member": bool(d), "witness": d.witness}, f"{v}: {bool(d)}"


def cmd_classify(args):
    S = load_semigroup(args.file)
    r = classify_representability(S, args.field)
    report = {"field": r.field, **r.flags(), "radical_classes": r.radical_classes, "witnesses": r.witnesses}
    on = [k for k, v in r.flags().items() if v]
    return report, f"over {r.field}: {', '.join(on) or 'none'}"


def cmd_triangularize(args):
    S = load_semigroup(args.file)
    K = parse_field(args.field)
    F = exact_field(K)
    try:
        t = triangularize(S, K, args.mode)
    except Refusal as exc:
        raise Refused({"field": str(K), "mode": args.mode, "refused": str(exc), "witness": exc.witness},
                      f"{args.mode} over {K}: refused ({exc})")
    report = {
        "field": str(K),
        "mode": args.mode,
        "basis_change": matrix_to_json(t.basis_change, F),
        "images": {str(s): matrix_to_json(M, F) for s, M in t.images.items()},
    }
    return report, f"{args.mode} over {K}: dimension {len(t.basis_change)}"


def _automaton(path):
    data = read_json(path)
    if "states" in data:
        return Dfa.from_json(data)
    if "delta" in data:
        return data["delta"]
    return data


def cmd_sync(args):
    A = _automaton(args.file)
    n = A.completed().states if isinstance(A, Dfa) else len(next(iter(A.values())))
    try:
        if args.method == "ds":
            res = ds_sync_word(A)
            word = res.word
            extra = {"block_sizes": list(res.block_sizes), "refined_bound": res.refined_bound}
        else:
            word = shortest_sync_word(A)
            extra = {}
    except Refusal as exc:
        raise Refused({"method": args.method, "refused": type(exc).__name__, "witness": exc.witness},
                      f"sync ({args.method}): {type(exc).__name__}")
    ok = synchronizes(A, word)
    report = {"method": args.method, "word": "".join(word) if all(len(a) == 1 for a in word) else list(word),
              "length": len(word), "bound": (n - 1) ** 2, "verified": ok, **extra}
    return report, f"sync ({args.method}): length {len(word)}, bound {(n - 1) ** 2}, verified {ok}"


def cmd_synmon(args):
    dfa = load_dfa(args.file)
    M, letters, minimal = syntactic_monoid(dfa)
    report = {
        "order": M.order,
        "identity": M.identity,
        "letters": letters,
        "gen_words": ["".join(w) for w in M.gen_words],
        "table": M.table.tolist(),
        "minimal_states": minimal.states,
    }
    return report, f"syntactic monoid of order {M.order} ({minimal.states}-state minimal automaton)"


def cmd_marked(args):
    spec = load_marked_product(args.file)
    words = [tuple(w) for w in (args.word or [])]
    report = {"mode": spec.mode, "factors": len(spec.factors), "letters": list(spec.letters)}
    if spec.mode == "counter":
        cm = counter_matrix(spec)
        report["p"], report["r"] = cm.p, cm.r
        report["start"], report["finals"] = cm.start, sorted(cm.finals)
        report["matrices"] = {a: m.tolist() for a, m in cm.letters.items()}
        report["words"] = [{"word": "".join(w), "member": cm.member(w), "count_mod_p": cm.count_mod_p(w)} for w in words]
        summary = f"counter product mod {cm.p}, {len(next(iter(cm.letters.values())))} states"
    else:
        amb = is_unambiguous(spec)
        report["unambiguous"] = amb.unambiguous
        report["witness"] = None if amb.witness is None else "".join(amb.witness)
        report["words"] = [{"word": "".join(w), "factorizations": count_factorizations(spec, w)} for w in words]
        summary = f"unambiguous: {amb.unambiguous}"
    return report, summary


def cmd_corpus(args):
    if args.curated:
        items = [{"name": k, **semigroup_to_json(S)} for k, S in corpus_mod.curated().items()]
    else:
        items = [semigroup_to_json(S) for S in corpus_mod.generate_corpus(args.max_order)]
    return items, f"{len(items)} semigroups"


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="rhodes", description="Finite semigroup radicals, triangularization and automata.")
    sub = p.add_subparsers(dest="verb", required=True)

    def verb(name, func, help, field=False, file=True):
        sp = sub.add_parser(name, help=help)
        if field:
            sp.add_argument("--field", required=True, help="Q, R, C, F<q> or Fbar<p>")
        if file:
            sp.add_argument("file")
        sp.set_defaults(func=func)
        return sp

    verb("greens", cmd_greens, "Green's relations")
    verb("radical", cmd_radical, "Rhodes radical congruence", field=True)
    verb("oracle-compare", cmd_oracle_compare, "compare radical with brute-force oracle", field=True)
    verb("variety", cmd_variety, "variety membership").add_argument("--id", required=True, help="e.g. DA, LGK@F2, EGbar@2")
    verb("classify", cmd_classify, "representability flags", field=True)
    verb("triangularize", cmd_triangularize, "explicit triangular basis", field=True).add_argument(
        "--mode", choices=["triangular", "unitriangular"], default="triangular")
    verb("sync", cmd_sync, "synchronizing word").add_argument("--method", choices=["ds", "bfs"], default="ds")
    verb("synmon", cmd_synmon, "syntactic monoid of a DFA")
    verb("marked", cmd_marked, "marked product analysis").add_argument("--word", action="append", help="word to test")
    cp = verb("corpus", cmd_corpus, "emit the test corpus", file=False)
    cp.add_argument("--max-order", type=int, default=2)
    cp.add_argument("--curated", action="store_true")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        report, summary = args.func(args)
        code = 0
    except Refused as r:
        report, summary, code = r.report, r.summary, 1
    except (SemigroupError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(json.dumps(report, indent=2, default=_json_default))
    print(summary, file=sys.stderr)
    return code


def _json_default(x):
    if hasattr(x, "tolist"):
        return x.tolist()
    if isinstance(x, (set, frozenset, tuple)):
        return sorted(x) if isinstance(x, (set, frozenset)) else list(x)
    return str(x)


if __name__ == "__main__":
    sys.exit(main())
