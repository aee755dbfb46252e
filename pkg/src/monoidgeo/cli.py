"""Command-line front end.

Every subcommand wraps exactly one library operation and prints a
reproducible rendering (JSON by default; DOT for graphs, CSV for growth
tables, plain text on request).  Exit codes separate three outcomes:

* 0 - a definite verdict or successfully produced data,
* 2 - an inconclusive verdict (budgets or truncation got in the way),
* 1 - usage or input errors.

The distinction lets shell scripts tell "don't know" from "no"; with
undecidable word problems in play, "don't know" is a first-class answer.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from .cayley import (
    ball_to_dot,
    ball_to_json_dict,
    check_quasimetric,
    distance,
    enumerate_ball,
    schutzenberger_graph,
    strongly_connected_components,
    undirected_view,
)
from .families import (
    MX_ALPHABET,
    f2_ball,
    mx_ball,
    mx_isometry_check,
    mx_normal_form,
    mx_word_problem,
    parse_oracle,
)
from .presentation import (
    BUILTIN_NAMES,
    Presentation,
    PresentationError,
    builtin,
    parse_presentation,
)
from .qi import (
    QiError,
    QiSpec,
    VertexMap,
    check_bushy_hypotheses,
    check_quasi_dense,
    m_bound,
    parse_vertex_map,
    quasi_inverse,
    search_type_witness,
    type_leq,
    verify_qi_embedding,
)
from .rewriting import (
    BudgetExceededError,
    GrowthTable,
    RewriteError,
    Status,
    UNKNOWN,
    dehn_sample,
    equality_search,
    normal_form_confluent,
)
from .twocomplex import (
    build_kn,
    check_qsc,
    gamma_sample,
    homotopy_search,
    path_from_labels,
    twopath_to_json_list,
)
from .words import format_word, tokenize

__all__ = ["run", "entry", "build_parser"]


class UsageError(Exception):
    """Raised for malformed command lines; mapped to exit code 1."""


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # type: ignore[override]
        raise UsageError(message)


def _emit(text: str) -> None:
    sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _json(obj) -> str:
    return json.dumps(obj, separators=(",", ":"))


def _load_presentation(spec: str) -> Presentation:
    """A builtin name, an oracle-family name mx(...), or a file path."""
    try:
        return builtin(spec)
    except (PresentationError, ValueError):
        pass
    if os.path.exists(spec):
        with open(spec, encoding="utf-8") as fh:
            return parse_presentation(fh.read())
    raise UsageError(
        f"{spec!r} is neither a built-in presentation ({', '.join(BUILTIN_NAMES)}) "
        "nor an existing file"
    )


def _vertex(ball, token: str) -> int:
    """A vertex id, given numerically or as a representative word."""
    try:
        return int(token)
    except ValueError:
        return ball.vertex_id(tokenize(token, ball.presentation.generators))


def _ids(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(tok) for tok in text.split(",") if tok.strip() != "")
    except ValueError as exc:
        raise UsageError(f"expected comma-separated vertex ids, got {text!r}") from exc


def _format(args, default: str, supported: tuple[str, ...]) -> str:
    fmt = args.format or default
    if fmt not in supported:
        raise UsageError(
            f"format {fmt!r} is not supported here (choose from {', '.join(supported)})"
        )
    return fmt


def _ball_from(args, pres_attr: str = "pres", radius_attr: str = "L"):
    p = _load_presentation(getattr(args, pres_attr))
    return enumerate_ball(
        p, getattr(args, radius_attr), depth_bound=args.depth, vertex_budget=args.budget
    )


def _table_csv_or_json(args, table: GrowthTable) -> int:
    fmt = _format(args, "csv", ("csv", "json", "text"))
    if fmt == "csv":
        _emit(table.to_csv())
    elif fmt == "json":
        _emit(_json({str(n): table.entries[n] for n in sorted(table.entries)}))
    else:
        _emit(" ".join(f"{n}:{table.entries[n]}" for n in sorted(table.entries)))
    return 2 if UNKNOWN in table.entries.values() else 0


def _emit_ball(args, ball) -> int:
    fmt = _format(args, "json", ("json", "dot", "text"))
    if fmt == "json":
        _emit(_json(ball_to_json_dict(ball)))
    elif fmt == "dot":
        _emit(ball_to_dot(ball))
    else:
        _emit(
            f"radius {ball.radius}: {ball.vertex_count} vertices, "
            f"{len(ball.edges)} edges, certified={str(ball.certified).lower()}"
        )
    return 0


def _qi_spec(args) -> QiSpec:
    mu = args.mu if args.mu is not None else Fraction(0)
    return QiSpec(args.lam, args.eps, mu)


# ---------------------------------------------------------------- commands


def _cmd_parse(args) -> int:
    p = _load_presentation(args.pres)
    fmt = _format(args, "json", ("json", "text"))
    info = {
        "generators": list(p.generators),
        "relations": len(p.relations),
        "oracle": p.oracle is not None,
        "confluent": p.confluent,
        "cayley_tree": p.cayley_tree,
    }
    if fmt == "json":
        _emit(_json(info))
    else:
        kind = "oracle-backed" if p.oracle else f"{len(p.relations)} relations"
        _emit(f"{len(p.generators)} generators, {kind}")
    return 0


def _cmd_nf(args) -> int:
    p = _load_presentation(args.pres)
    word = tokenize(args.w, p.generators)
    nf = normal_form_confluent(word, p, max_steps=args.budget)
    fmt = _format(args, "json", ("json", "text"))
    if fmt == "json":
        _emit(_json({"input": format_word(word), "normal_form": format_word(nf)}))
    else:
        _emit(format_word(nf))
    return 0


def _cmd_area(args) -> int:
    p = _load_presentation(args.pres)
    verdict = equality_search(
        tokenize(args.u, p.generators),
        tokenize(args.v, p.generators),
        p,
        depth_bound=args.depth, visit_budget=args.budget
    )
    fmt = _format(args, "json", ("json", "text"))
    if verdict.status is Status.EQUAL:
        payload: dict = {"status": "Equal", "area": verdict.area}
    elif verdict.status is Status.NOT_EQUAL:
        payload = {"status": "NotEqual"}
    else:
        payload = {"status": "Unknown", "depth_used": verdict.depth_used}
    if fmt == "json":
        _emit(_json(payload))
    else:
        _emit(" ".join(f"{k}={v}" for k, v in payload.items()))
    return 2 if verdict.status is Status.UNKNOWN else 0


def _cmd_dehn(args) -> int:
    p = _load_presentation(args.pres)
    table = dehn_sample(p, args.n_max, depth_bound=args.depth, word_budget=args.budget)
    return _table_csv_or_json(args, table)


def _cmd_ball(args) -> int:
    return _emit_ball(args, _ball_from(args))


def _cmd_dist(args) -> int:
    ball = _ball_from(args)
    d = distance(ball, _vertex(ball, args.x), _vertex(ball, args.y))
    fmt = _format(args, "json", ("json", "text"))
    if fmt == "json":
        _emit(_json(d.json_dict()))
    else:
        shown = d.json_dict()["value"]
        _emit(f"{shown} (exact={str(d.exact).lower()}, bound={d.bound})")
    return 0 if d.exact else 2


def _cmd_qmetric(args) -> int:
    ball = _ball_from(args)
    report = check_quasimetric(ball, args.lam, args.mu or Fraction(0))
    _emit(_json(report.json_dict()))
    if report.verdict == "pass" and report.skipped:
        return 2
    return 0


def _cmd_scc(args) -> int:
    ball = _ball_from(args)
    classes = strongly_connected_components(ball)
    fmt = _format(args, "json", ("json", "text"))
    if fmt == "json":
        _emit(
            _json(
                [
                    {"vertices": list(c.vertices), "approximate": c.approximate}
                    for c in classes
                ]
            )
        )
    else:
        for c in classes:
            mark = "~" if c.approximate else " "
            _emit(mark + " " + ",".join(str(v) for v in c.vertices))
    return 0


def _cmd_schutz(args) -> int:
    ball = _ball_from(args)
    graph = schutzenberger_graph(ball, _vertex(ball, args.h))
    fmt = _format(args, "json", ("json", "dot"))
    if fmt == "json":
        _emit(_json(graph.json_dict()))
    else:
        lines = ["digraph schutzenberger {"]
        for v in graph.vertices:
            lines.append(f'  v{v} [label="{format_word(ball.words[v])}"];')
        for e in graph.edges:
            lines.append(f'  v{e.src} -> v{e.dst} [label="{e.label}"];')
        lines.append("}")
        _emit("\n".join(lines))
    return 0


def _cmd_kn_cells(args) -> int:
    ball = _ball_from(args)
    K = build_kn(ball, args.n)
    cells = K.cells_from(_vertex(ball, args.root))
    _emit(
        _json(
            [
                {"top": list(c.top.labels()), "bottom": list(c.bottom.labels())}
                for c in cells
            ]
        )
    )
    return 0


def _cmd_homotopy(args) -> int:
    ball = _ball_from(args)
    K = build_kn(ball, args.n)
    root = _vertex(ball, args.root)
    gens = ball.presentation.generators
    p_path = path_from_labels(ball, root, tokenize(args.p, gens))
    q_path = path_from_labels(ball, root, tokenize(args.q, gens))
    res = homotopy_search(K, p_path, q_path, step_budget=args.budget)
    payload: dict = {"status": res.status}
    if res.status == "found":
        payload["area"] = res.area
        payload["certified"] = res.area_certified
        if args.show_path:
            assert res.twopath is not None
            payload["two_path"] = twopath_to_json_list(ball, res.twopath)
    _emit(_json(payload))
    return 2 if res.status == "inconclusive" else 0


def _cmd_gamma(args) -> int:
    ball = _ball_from(args)
    K = build_kn(ball, args.n)
    table = gamma_sample(K, args.i_max, _ids(args.roots), step_budget=args.budget)
    return _table_csv_or_json(args, table)


def _cmd_qsc(args) -> int:
    ball = _ball_from(args)
    report = check_qsc(ball, args.n, args.i_max, step_budget=args.budget)
    _emit(_json(report.json_dict()))
    return 2 if report.verdict == "inconclusive" else 0


def _two_balls(args):
    bx = _ball_from(args, "x_pres", "x_L")
    if args.y_pres is None and args.y_L is None:
        return bx, bx
    y_pres = args.y_pres if args.y_pres is not None else args.x_pres
    y_L = args.y_L if args.y_L is not None else args.x_L
    if y_pres == args.x_pres and y_L == args.x_L:
        return bx, bx
    p = _load_presentation(y_pres)
    return bx, enumerate_ball(p, y_L, depth_bound=args.depth, vertex_budget=args.budget)


def _load_map(token: str, source_ball) -> VertexMap:
    if token == "identity":
        return VertexMap.identity(source_ball.vertex_count)
    with open(token, encoding="utf-8") as fh:
        return parse_vertex_map(fh.read())


def _cmd_qi_check(args) -> int:
    bx, by = _two_balls(args)
    f = _load_map(args.map, bx)
    report = verify_qi_embedding(bx, by, f, _qi_spec(args))
    _emit(_json(report.json_dict()))
    return 2 if report.verdict == "inconclusive" else 0


def _cmd_qi_density(args) -> int:
    ball = _ball_from(args)
    subset = sorted(set(range(ball.vertex_count)) - ball.frontier) if args.interior else None
    mu = args.mu if args.mu is not None else Fraction(0)
    report = check_quasi_dense(ball, _ids(args.image), mu, subset=subset)
    _emit(_json(report.json_dict()))
    return 2 if report.verdict == "inconclusive" else 0


def _cmd_qi_inverse(args) -> int:
    bx, by = _two_balls(args)
    g = _load_map(args.map, by)  # g maps the second ball into the first
    f, spec = quasi_inverse(bx, by, g, _qi_spec(args))
    _emit(
        _json(
            {
                "verdict": "ok",
                "witness": None,
                "skipped": 0,
                "constants": spec.json_dict(),
                "f": list(f.targets),
            }
        )
    )
    return 0


def _cmd_mbound(args) -> int:
    _emit(str(m_bound(_qi_spec(args), args.n)))
    return 0


def _cmd_type_cmp(args) -> int:
    with open(args.f, encoding="utf-8") as fh:
        f_table = GrowthTable.from_csv(fh.read())
    with open(args.g, encoding="utf-8") as fh:
        g_table = GrowthTable.from_csv(fh.read())
    if args.a is not None:
        report = type_leq(f_table, g_table, args.a)
        _emit(_json(report.json_dict()))
        return 0
    witness = search_type_witness(f_table, g_table, args.a_max)
    if witness is None:
        _emit(_json({"verdict": "no-witness", "witness": None, "a_max": args.a_max}))
        return 2
    _emit(_json({"verdict": "holds", "witness": witness, "a_max": args.a_max}))
    return 0


def _cmd_bushy(args) -> int:
    ball = _ball_from(args)
    report = check_bushy_hypotheses(
        undirected_view(ball), degree_floor=args.floor, degree_cap=args.cap
    )
    _emit(_json(report.json_dict()))
    return 0


def _cmd_mx_nf(args) -> int:
    X = parse_oracle(args.x)
    word = tokenize(args.w, MX_ALPHABET)
    nf = mx_normal_form(word, X)
    fmt = _format(args, "json", ("json", "text"))
    if fmt == "json":
        _emit(_json({"input": format_word(word), "normal_form": format_word(nf)}))
    else:
        _emit(format_word(nf))
    return 0


def _cmd_mx_wp(args) -> int:
    X = parse_oracle(args.x)
    equal = mx_word_problem(tokenize(args.u, MX_ALPHABET), tokenize(args.v, MX_ALPHABET), X)
    _emit(_json({"equal": equal}))
    return 0


def _cmd_mx_ball(args) -> int:
    X = parse_oracle(args.x)
    return _emit_ball(args, mx_ball(X, args.L, vertex_budget=args.budget))


def _cmd_mx_iso(args) -> int:
    report = mx_isometry_check(parse_oracle(args.x), parse_oracle(args.y), args.L)
    _emit(_json(report.json_dict()))
    return 0


def _cmd_f2_ball(args) -> int:
    return _emit_ball(args, f2_ball(args.L, vertex_budget=args.budget))


# ----------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--depth", type=int, default=10, help="equality search depth bound")
    common.add_argument("--budget", type=int, default=10**6, help="visit/vertex/step budget")
    common.add_argument(
        "--format", choices=("json", "dot", "csv", "text"), default=None, help="output format"
    )
    common.add_argument("--seed", type=int, default=0, help="reserved for sampling subcommands")

    top = _Parser(prog="monoidgeo", description=__doc__.split("\n", 1)[0])
    sub = top.add_subparsers(dest="command", metavar="subcommand", parser_class=_Parser)

    def cmd(name: str, func, help_text: str) -> argparse.ArgumentParser:
        sp = sub.add_parser(name, parents=[common], help=help_text)
        sp.set_defaults(func=func)
        return sp

    sp = cmd("parse", _cmd_parse, "parse a presentation and summarize it")
    sp.add_argument("--pres", required=True)

    sp = cmd("nf", _cmd_nf, "normal form under a confluent presentation")
    sp.add_argument("--pres", required=True)
    sp.add_argument("--w", required=True)

    sp = cmd("area", _cmd_area, "bounded equality search with exact area")
    sp.add_argument("--pres", required=True)
    sp.add_argument("--u", required=True)
    sp.add_argument("--v", required=True)

    sp = cmd("dehn", _cmd_dehn, "sample the Dehn function")
    sp.add_argument("--pres", required=True)
    sp.add_argument("--n-max", type=int, required=True)

    sp = cmd("ball", _cmd_ball, "enumerate a Cayley ball")
    sp.add_argument("--pres", required=True)
    sp.add_argument("--L", type=int, required=True)

    sp = cmd("dist", _cmd_dist, "in-ball distance with exactness flag")
    sp.add_argument("--pres", required=True)
    sp.add_argument("--L", type=int, required=True)
    sp.add_argument("--x", required=True, help="vertex id or representative word")
    sp.add_argument("--y", required=True)

    sp = cmd("qmetric", _cmd_qmetric, "check d(x,y) <= lam d(y,x) + mu on a ball")
    sp.add_argument("--pres", required=True)
    sp.add_argument("--L", type=int, required=True)
    sp.add_argument("--lambda", dest="lam", type=Fraction, required=True)
    sp.add_argument("--mu", type=Fraction, default=None)

    sp = cmd("scc", _cmd_scc, "strongly connected components (R-classes)")
    sp.add_argument("--pres", required=True)
    sp.add_argument("--L", type=int, required=True)

    sp = cmd("schutz", _cmd_schutz, "induced subgraph on a vertex's component")
    sp.add_argument("--pres", required=True)
    sp.add_argument("--L", type=int, required=True)
    sp.add_argument("--h", required=True, help="vertex id or representative word")

    sp = cmd("kn-cells", _cmd_kn_cells, "cells of K_n rooted at a vertex")
    sp.add_argument("--pres", required=True)
    sp.add_argument("--L", type=int, required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--root", default="0")

    sp = cmd("homotopy", _cmd_homotopy, "shortest 2-path between parallel paths")
    sp.add_argument("--pres", required=True)
    sp.add_argument("--L", type=int, required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--root", default="0")
    sp.add_argument("--p", required=True, help="edge labels of the first path")
    sp.add_argument("--q", required=True, help="edge labels of the second path")
    sp.add_argument("--show-path", action="store_true")

    sp = cmd("gamma", _cmd_gamma, "sample the 2-complex growth function")
    sp.add_argument("--pres", required=True)
    sp.add_argument("--L", type=int, required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--i-max", type=int, required=True)
    sp.add_argument("--roots", default="0", help="comma-separated root vertex ids")

    sp = cmd("qsc", _cmd_qsc, "quasi-simple-connectivity check on a ball")
    sp.add_argument("--pres", required=True)
    sp.add_argument("--L", type=int, required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--i-max", type=int, required=True)

    def qi_pair(sp: argparse.ArgumentParser) -> None:
        sp.add_argument("--x-pres", required=True)
        sp.add_argument("--x-L", type=int, required=True)
        sp.add_argument("--y-pres", default=None)
        sp.add_argument("--y-L", type=int, default=None)
        sp.add_argument("--map", required=True, help="vertex map file or 'identity'")
        sp.add_argument("--lambda", dest="lam", type=Fraction, required=True)
        sp.add_argument("--eps", type=Fraction, required=True)
        sp.add_argument("--mu", type=Fraction, default=None)

    sp = cmd("qi-check", _cmd_qi_check, "verify a quasi-isometric embedding")
    qi_pair(sp)

    sp = cmd("qi-density", _cmd_qi_density, "check an image set for quasi-density")
    sp.add_argument("--pres", required=True)
    sp.add_argument("--L", type=int, required=True)
    sp.add_argument("--image", required=True, help="comma-separated vertex ids")
    sp.add_argument("--mu", type=Fraction, default=None)
    sp.add_argument("--interior", action="store_true", help="assess interior vertices only")

    sp = cmd("qi-inverse", _cmd_qi_inverse, "construct a quasi-inverse with constants")
    qi_pair(sp)

    sp = cmd("mbound", _cmd_mbound, "cell-size bound for transported complexes")
    sp.add_argument("--lambda", dest="lam", type=Fraction, required=True)
    sp.add_argument("--eps", type=Fraction, required=True)
    sp.add_argument("--mu", type=Fraction, default=None)
    sp.add_argument("--n", type=int, required=True)

    sp = cmd("type-cmp", _cmd_type_cmp, "compare growth tables up to type")
    sp.add_argument("--f", required=True, help="CSV file for the left table")
    sp.add_argument("--g", required=True, help="CSV file for the right table")
    group = sp.add_mutually_exclusive_group(required=True)
    group.add_argument("--a", type=int, default=None, help="check this witness")
    group.add_argument("--a-max", type=int, default=None, help="search witnesses up to this")

    sp = cmd("bushy", _cmd_bushy, "tree + interior degree window check")
    sp.add_argument("--pres", required=True)
    sp.add_argument("--L", type=int, required=True)
    sp.add_argument("--floor", type=int, default=3)
    sp.add_argument("--cap", type=int, required=True)

    sp = cmd("mx-nf", _cmd_mx_nf, "single-pass normal form in the oracle family")
    sp.add_argument("--x", required=True, help="membership oracle spec")
    sp.add_argument("--w", required=True)

    sp = cmd("mx-wp", _cmd_mx_wp, "word problem in the oracle family")
    sp.add_argument("--x", required=True)
    sp.add_argument("--u", required=True)
    sp.add_argument("--v", required=True)

    sp = cmd("mx-ball", _cmd_mx_ball, "tree ball of the oracle family")
    sp.add_argument("--x", required=True)
    sp.add_argument("--L", type=int, required=True)

    sp = cmd("mx-iso", _cmd_mx_iso, "compare two family balls as graphs")
    sp.add_argument("--x", required=True)
    sp.add_argument("--y", required=True)
    sp.add_argument("--L", type=int, required=True)

    sp = cmd("f2-ball", _cmd_f2_ball, "free-group comparison ball")
    sp.add_argument("--L", type=int, required=True)

    return top


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if not getattr(args, "func", None):
            parser.print_help(sys.stderr)
            return 1
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    except (
        PresentationError,
        RewriteError,
        QiError,
        BudgetExceededError,
        ValueError,
        KeyError,
        IndexError,
        OSError,
        RuntimeError,
    ) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def entry() -> None:
    sys.exit(run())


if __name__ == "__main__":
    entry()
