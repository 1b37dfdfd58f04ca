"""Command-line front end. Every command prints one JSON document.

Exit status: 0 on success (a negative verdict is still a success), 1 when
the input is well formed but the requested object does not exist, 2 on
bad input.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from itertools import product
from pathlib import Path

from . import __version__
from .graphs import Graph, GraphError, canonical_graph, clique_polynomial, graph_document, parse_graph
from .massey import (
    MasseyError,
    classify_vanishing_pair,
    cup,
    get_target,
    ku_witness_c4,
    ku_witness_sap,
    random_valid_sequence,
    strong_massey_solve,
)
from .quadratic import (
    PresentationError,
    build_E_gamma,
    build_Ez,
    default_order,
    h2_basis,
    hilbert_series,
    parse_order,
    pbw_check,
    presentation_document,
    quadratic_dual,
)
from .recognition import enumerate_GrP, is_in_GrP
from .series import (
    calibrate_sum_mode,
    gocha_series,
    lie_dims_from_gocha,
    poincare_series,
    realizability_check,
    resolve_sum_mode,
)
from .unipotent import MatrixError, solve_lemmquad
from .words import WordError, parse_word, parse_z, trivial_z, validate_delta_action

SCHEMA = "deltaraag.report/1"
ANALYZE_COLUMN_BUDGET = 300_000


class InputError(Exception):
    pass


class DomainError(Exception):
    pass


def _load_json(path: str):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from None


def _graph(args) -> Graph:
    if not args.graph:
        raise InputError("--graph is required")
    try:
        return parse_graph(_load_json(args.graph))
    except GraphError as exc:
        raise InputError(f"{args.graph}: {exc}") from None


def _z(args, g: Graph):
    if not getattr(args, "z", None):
        return trivial_z(g.n)
    try:
        return parse_z(_load_json(args.z), g.n)
    except WordError as exc:
        raise InputError(f"{args.z}: {exc}") from None


def _series_block(p, N):
    return {"order": N, "coefficients": p.tolist()}


def _ez(g, z):
    rep = validate_delta_action(g, z)
    if not rep["valid"]:
        raise DomainError(f"twist vector does not define an involutive action: {rep['violations']}")
    return build_Ez(g, z, check=False)


def _order(args, pres, g):
    if getattr(args, "order", None):
        try:
            return parse_order(args.order, pres)
        except PresentationError as exc:
            raise InputError(str(exc)) from None
    return default_order(pres, g)


# -- commands ----------------------------------------------------------------


def cmd_recognize(args):
    g = _graph(args)
    return is_in_GrP(g).to_json()


def cmd_enumerate(args):
    n = args.n if args.n is not None else 4
    try:
        members = enumerate_GrP(n)
    except (GraphError, ValueError) as exc:
        raise InputError(str(exc)) from None
    docs = sorted((graph_document(m) for m in members), key=lambda d: (d["vertices"], d["edges"]))
    return {"n_max": n, "count": len(docs), "graphs": docs}


def cmd_series(args):
    g = _graph(args)
    p = clique_polynomial(g)
    N = args.trunc
    go = gocha_series(p, N)
    return {
        "clique_polynomial": p,
        "gocha": _series_block(go, N),
        "poincare": _series_block(poincare_series(p, N), N),
        "lie_dimensions": lie_dims_from_gocha(go, N),
    }


def _realizability(g, mode_arg):
    p = clique_polynomial(g)
    mode = resolve_sum_mode(mode_arg)
    w = realizability_check(p, mode)
    out = {
        "clique_polynomial": p,
        "sum_mode": mode,
        "requested_mode": mode_arg,
        "witness": None if w is None else w.to_dict(),
    }
    if mode_arg == "auto":
        cal = calibrate_sum_mode()
        out["calibration"] = {
            "n_max": cal["n_max"],
            "accepted_graphs": cal["accepted_graphs"],
            "selected": cal["selected"],
            "stats": cal["stats"],
            "c4_witness": cal["c4_witness"],
            "disagreement_count": cal["disagreement_count"],
        }
    return out


def cmd_realizable(args):
    return _realizability(_graph(args), args.sum_mode)


def cmd_pbw(args):
    g = _graph(args)
    pres = _ez(g, _z(args, g))
    order = _order(args, pres, g)
    res = pbw_check(pres, order)
    out = res.to_json(pres.generators)
    if res.confluent:
        out["normal_word_counts"] = res.system.count_normal_words(min(args.trunc, 6))
    return out


def cmd_dual(args):
    g = _graph(args)
    if args.raag:
        pres = build_E_gamma(g)
        order = list(range(pres.d))
        if getattr(args, "order", None):
            order = _order(args, pres, g)
    else:
        pres = _ez(g, _z(args, g))
        order = _order(args, pres, g)
    dual = quadratic_dual(pres)
    basis = h2_basis(dual, order)
    return {
        "presentation": presentation_document(pres),
        "dual": presentation_document(dual),
        "h2_basis": basis.names("*"),
        "h2_dim": basis.dim,
    }


def _parse_chars(text: str, width: int):
    out = []
    for k, part in enumerate(p for p in text.split(";") if p.strip()):
        bits = [b.strip() for b in part.split(",")]
        if len(bits) != width or any(b not in ("0", "1") for b in bits):
            raise InputError(f"character {k + 1} must be {width} comma-separated bits, got {part!r}")
        out.append(tuple(int(b) for b in bits))
    return out


def cmd_cupzero(args):
    target = _target(args)
    if target.name == "sap":
        raise InputError("cupzero supports c4-delta and c4-raag")
    width = len(target.generators)
    if args.alpha:
        chars = _parse_chars(args.alpha, width)
        if len(chars) != 2:
            raise InputError("--alpha must hold exactly two characters")
        a, b = chars
        v = cup(target, a, b)
        if v or not any(a) or not any(b):
            raise DomainError(f"cup product is {target.table.coords(v)}; a classified pair needs nonzero characters with vanishing cup")
        return {"target": target.name, "alpha": [list(a), list(b)], "class": classify_vanishing_pair(target, a, b)}
    counts: dict = {}
    nonvanishing = 0
    for a in product((0, 1), repeat=width):
        for b in product((0, 1), repeat=width):
            if not any(a) or not any(b):
                continue
            if cup(target, a, b):
                nonvanishing += 1
                continue
            label = classify_vanishing_pair(target, a, b)
            counts[label] = counts.get(label, 0) + 1
    return {
        "target": target.name,
        "pairs": (2**width - 1) ** 2,
        "nonvanishing": nonvanishing,
        "classes": dict(sorted(counts.items())),
    }


def _target(args):
    try:
        return get_target(args.target, args.k)
    except MasseyError as exc:
        raise InputError(str(exc)) from None


def cmd_massey(args):
    target = _target(args)
    width = len(target.generators)
    if args.alpha:
        alphas = _parse_chars(args.alpha, width)
        try:
            res = strong_massey_solve(target, alphas)
        except MasseyError as exc:
            raise DomainError(str(exc)) from None
        return res.to_json(target)
    if args.seed is None:
        raise InputError("give --alpha, or --seed for a fuzz run")
    rng = random.Random(args.seed)
    runs = []
    for _ in range(args.count):
        n = rng.randint(1, args.n or 10)
        seq = random_valid_sequence(target, n, rng)
        res = strong_massey_solve(target, seq)
        runs.append({"alphas": [list(a) for a in seq], "ok": res.verification["ok"], "blocks": res.blocks})
    return {"target": target.name, "seed": args.seed, "runs": len(runs), "all_ok": all(r["ok"] for r in runs), "results": runs}


def cmd_ku_witness(args):
    if not args.word:
        raise InputError("--word is required")
    if args.target == "sap":
        try:
            w = parse_word(args.word, "y")
        except WordError as exc:
            raise InputError(str(exc)) from None
        names = [""] + [f"y{i}" for i in range(1, args.k + 1)]
        try:
            wit = ku_witness_sap(args.k, w, args.trunc)
        except MasseyError as exc:
            raise DomainError(str(exc)) from None
    elif args.target in ("c4-delta", "c4delta"):
        try:
            w = parse_word(args.word, "x")
        except WordError as exc:
            raise InputError(str(exc)) from None
        if any(not 0 <= g <= 4 for g, _ in w):
            raise InputError("c4-delta words use x0..x4")
        names = ["x0", "x1", "x2", "x3", "x4"]
        try:
            wit = ku_witness_c4(w, args.trunc)
        except MasseyError as exc:
            raise DomainError(str(exc)) from None
    else:
        raise InputError("ku-witness supports targets sap and c4-delta")
    return {"target": args.target, "word": args.word, **wit.to_json(names)}


def cmd_lemmquad(args):
    n = args.n if args.n is not None else 3
    try:
        return solve_lemmquad(n).to_json()
    except MatrixError as exc:
        raise DomainError(str(exc)) from None


def cmd_analyze(args):
    g = _graph(args)
    z = _z(args, g)
    N = args.trunc
    p = clique_polynomial(g)
    go = gocha_series(p, N)
    po = poincare_series(p, N)
    rec = is_in_GrP(g)
    report = {
        "graph": graph_document(g),
        "canonical_graph": graph_document(canonical_graph(g)),
        "clique_polynomial": p,
        "gocha": _series_block(go, N),
        "poincare": _series_block(po, N),
        "lie_dimensions": lie_dims_from_gocha(go, N),
        "recognition": rec.to_json(),
        "realizability": _realizability(g, args.sum_mode),
    }
    action = validate_delta_action(g, z)
    report["twist"] = action
    checks = {"poincare_degree1_is_d_plus_1": po[1] == g.n + 1 if N >= 1 else None}
    if action["valid"]:
        pres = build_Ez(g, z, check=False)
        order = _order(args, pres, g)
        hs = hilbert_series(pres, N, column_budget=ANALYZE_COLUMN_BUDGET, partial=True)
        pbw = pbw_check(pres, order)
        dual = quadratic_dual(pres)
        basis = h2_basis(dual, order)
        report["hilbert"] = {"order_reached": len(hs) - 1, "coefficients": hs}
        report["pbw"] = pbw.to_json(pres.generators)
        report["dual"] = presentation_document(dual)
        report["h2_basis"] = basis.names("*")
        report["h2_dim"] = basis.dim
        checks["hilbert_matches_gocha"] = hs == go.tolist()[: len(hs)]
        checks["h2_dim_is_d_plus_r_plus_1"] = basis.dim == g.n + len(g.edges) + 1
    report["checks"] = checks
    return report


COMMANDS = {
    "analyze": cmd_analyze,
    "recognize": cmd_recognize,
    "enumerate": cmd_enumerate,
    "series": cmd_series,
    "realizable": cmd_realizable,
    "pbw": cmd_pbw,
    "dual": cmd_dual,
    "cupzero": cmd_cupzero,
    "massey": cmd_massey,
    "ku-witness": cmd_ku_witness,
    "lemmquad": cmd_lemmquad,
}


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="deltaraag", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, help_text, *flags):
        sp = sub.add_parser(name, help=help_text)
        for f in flags:
            f(sp)
        return sp

    def graph(sp):
        sp.add_argument("--graph", metavar="FILE", help="graph JSON document")

    def z(sp):
        sp.add_argument("--z", metavar="FILE", help="twist vector JSON (default: all trivial)")

    def order(sp):
        sp.add_argument("--order", metavar="LIST", help="generator order, largest first, e.g. x0,x1,x3,x2,x4")

    def trunc(sp):
        sp.add_argument("--trunc", type=int, default=8, metavar="N", help="truncation order (default 8)")

    def summode(sp):
        sp.add_argument("--sum-mode", choices=["d", "d+1", "auto"], default="auto")

    def target(sp):
        sp.add_argument("--target", default="c4-delta", help="c4-delta, c4-raag or sap")
        sp.add_argument("--k", type=int, default=3, help="number of Z/2 factors for sap (default 3)")

    def seed(sp):
        sp.add_argument("--seed", type=int, default=None)

    add("analyze", "full report for one graph", graph, z, order, trunc, summode)
    add("recognize", "decide class membership and print the decomposition", graph)
    sp = add("enumerate", "all class members up to n vertices")
    sp.add_argument("--n", type=int, default=4, help="maximum vertex count (<= 8)")
    add("series", "clique polynomial, gocha and Poincare series", graph, trunc)
    add("realizable", "clique-polynomial decomposition witness", graph, summode)
    add("pbw", "critical-monomial confluence check", graph, z, order, trunc)
    sp = add("dual", "quadratic dual and H2 basis", graph, z, order)
    sp.add_argument("--raag", action="store_true", help="use the plain RAAG algebra instead")
    sp = add("cupzero", "classify pairs with vanishing cup product", target)
    sp.add_argument("--alpha", help="two characters 'a;b', bits comma-separated")
    sp = add("massey", "lift a character sequence to unitriangular matrices", target, seed)
    sp.add_argument("--alpha", help="characters separated by ';', bits by ','")
    sp.add_argument("--n", type=int, default=None, help="maximum length for fuzz runs (default 10)")
    sp.add_argument("--count", type=int, default=20, help="number of fuzz runs (default 20)")
    sp = add("ku-witness", "unipotent representation detecting a word", target, trunc)
    sp.add_argument("--word", help="e.g. 'y1*y2*y1*y2' for sap, 'x2^-1*x4' for c4-delta")
    sp = add("lemmquad", "A/B matrix solver", seed)
    sp.add_argument("--n", type=int, default=3)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        body = COMMANDS[args.command](args)
        code = 0
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except DomainError as exc:
        body = {"error": str(exc)}
        code = 1
    header = {"schema": SCHEMA, "tool_version": __version__, "command": args.command}
    doc = {**header, **body}
    sys.stdout.write(json.dumps(doc, indent=2, sort_keys=False) + "\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
