"""Command line entry point.

Exit status is 0 on success, 1 when a verification suite has a failing
check and 2 on bad usage or input.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .errors import HeckeError
from .report import Report
from .scalars import ScalarMode

SUITES = (
    "hecke-relations",
    "corner-idempotents",
    "complete-family",
    "quotient-dims",
    "phi-relations",
    "sandwich-oracle",
    "kernel",
    "lambda-coeffs",
    "wedderburn",
)


class UsageError(Exception):
    pass


def _mode(text: str) -> ScalarMode:
    try:
        return ScalarMode.parse(text)
    except (ValueError, HeckeError) as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _emit(data, out: str) -> None:
    if out == "json":
        print(json.dumps(data, indent=1, sort_keys=True))
    else:
        sys.stdout.write(data if data.endswith("\n") else data + "\n")


def _element(text: str, n: int, mode: ScalarMode):
    from .hecke import HeckeElement

    if text.startswith("@"):
        return HeckeElement.from_json(json.loads(Path(text[1:]).read_text()))
    return HeckeElement.parse_spelling(n, text, mode)


def _word_filter(args):
    from .signed_words import ALL, AVOIDING, avoiding_cap

    if args.filter == "cap":
        if args.k is None:
            raise UsageError("--filter cap needs --k")
        return avoiding_cap(args.k)
    return {"all": ALL, "full": ALL, "avoiding": AVOIDING}[args.filter]


# subcommands -----------------------------------------------------------------


def cmd_mul(args) -> int:
    from .hecke import mul

    a, b = _element(args.a, args.n, args.mode), _element(args.b, args.n, args.mode)
    p = mul(a, b)
    _emit(p.to_json() if args.out == "json" else str(p), args.out)
    return 0


def cmd_idempotent(args) -> int:
    from .idempotents import CornerLabel, corner_by_recursion, corner_idempotent, f_tableau

    label = CornerLabel(args.alpha, args.b, args.n)
    if args.route == "closed":
        e = corner_idempotent(label, args.mode, normalized=not args.unnormalized)
    elif args.route == "recursion":
        e = corner_by_recursion(label, args.mode)
    else:
        e = f_tableau(label.tableau, args.mode, "product")
    _emit(e.to_json() if args.out == "json" else f"{label}\n{e}", args.out)
    return 0


def cmd_reduce(args) -> int:
    from .quotients import build_reduction_table, reduce, spec_A, spec_A_cap

    spec = spec_A(args.n, args.mode) if args.k is None else spec_A_cap(args.n, args.k, args.mode)
    table, basis = build_reduction_table(spec)
    e = reduce(_element(args.element, args.n, args.mode), table)
    if args.out == "json":
        _emit({"quotient": spec.name, "dimension": table.rank, "status": basis.status, "element": e.to_json()}, "json")
    else:
        _emit(str(e), "text")
    return 0


def cmd_dims(args) -> int:
    from .quotients import build_reduction_table, spec_A, spec_A_cap
    from .signed_words import avoiding_count

    spec = spec_A(args.n, args.mode) if args.k is None else spec_A_cap(args.n, args.k, args.mode)
    table, basis = build_reduction_table(spec)
    if args.figure:
        from math import factorial

        from .plotting import plot_dims

        series = {
            "Hecke 2^n n!": [2**m * factorial(m) for m in range(args.n + 1)],
            "avoiding words": [avoiding_count(m) for m in range(args.n + 1)],
        }
        if args.k is not None:
            series[f"at most {args.k} bars"] = [avoiding_count(m, args.k) for m in range(args.n + 1)]
        plot_dims(series, args.figure)
    if args.out == "json":
        _emit({"quotient": spec.name, "mode": args.mode.to_json(), "dimension": table.rank, "status": basis.status}, "json")
    else:
        _emit(str(table.rank), "text")
    return 0


def cmd_bratteli(args) -> int:
    from .tableaux import BratteliFilter, bratteli, dim_std, format_bipartition

    if args.filter == "cap" and args.k is None:
        raise UsageError("--filter cap needs --k")
    kind = "full" if args.filter in ("all", "full") else args.filter
    graph = bratteli(args.levels, BratteliFilter(kind, args.k))
    if args.figure:
        from .plotting import plot_bratteli

        plot_bratteli(graph, args.figure)
    if args.out == "dot":
        _emit(graph.to_dot(), "text")
    elif args.out == "json":
        _emit(
            {
                "levels": [[format_bipartition(lam) for lam in level] for level in graph.levels],
                "edges": [[m, format_bipartition(a), format_bipartition(b)] for m, a, b in graph.edges],
                "level_dims": graph.level_dims(),
            },
            "json",
        )
    else:
        lines = []
        for m, level in enumerate(graph.levels):
            cells = "  ".join(f"{format_bipartition(lam)}:{dim_std(lam)}" for lam in level)
            lines.append(f"{m}\t{graph.level_dims()[m]}\t{cells}")
        _emit("\n".join(lines), "text")
    return 0


def cmd_phi(args) -> int:
    from .fused import phi, phi_mode

    if args.k is None:
        raise UsageError("phi needs --k")
    e = _element(args.element, args.n, phi_mode(args.k))
    img = phi(e, args.k)
    _emit(img.to_json() if args.out == "json" else str(img), args.out)
    return 0


def _suite(args) -> Report:
    from . import fused, hecke, idempotents, quotients, seminormal

    n, k, mode = args.n, args.k, args.mode
    name = args.suite
    if name == "hecke-relations":
        rep = hecke.verify_relations(n, mode)
        count = len(hecke.closure_words(n, mode))
        rep.add("closure from 1 reaches 2^n n! words", count == len(hecke.all_basis_words(n)), str(count))
        return rep
    if name == "corner-idempotents":
        return idempotents.verify_corners(n, mode)
    if name == "complete-family":
        return idempotents.verify_complete_family(n, mode)
    if name == "quotient-dims":
        return quotients.verify_quotient_dims(n, mode, k)
    k = 2 if k is None else k
    if name == "phi-relations":
        return fused.verify_phi_relations(k, n)
    if name == "sandwich-oracle":
        return fused.sandwich_product_check(k, n)
    if name == "kernel":
        return fused.kernel_check(k, n)
    if name == "lambda-coeffs":
        return quotients.verify_lambda(k, mode)
    if name == "wedderburn":
        from .tableaux import enumerate_bipartitions

        rep = seminormal.wedderburn_check(n, mode)
        for lam in enumerate_bipartitions(n):
            rep.extend(seminormal.verify_rep_relations(seminormal.build_rep(lam, mode)), f"{lam}: ")
        rep.extend(seminormal.quotient_consistency(n, mode))
        return rep
    raise UsageError(f"unknown suite {name!r}")


def cmd_verify(args) -> int:
    rep = _suite(args)
    _emit(rep.to_json() if args.out == "json" else rep.to_text(), args.out)
    return 0 if rep.ok else 1


def cmd_enumerate(args) -> int:
    if args.kind == "words":
        from .signed_words import enumerate_words, format_word, spelling_text, to_blocks

        words = list(enumerate_words(args.n, _word_filter(args)))
        rows = [(format_word(w), spelling_text(to_blocks(w))) for w in words]
    elif args.kind == "fused":
        from .fused import enumerate_fused

        if args.k is None:
            raise UsageError("--kind fused needs --k")
        rows = [(str(f),) for f in enumerate_fused(args.k, args.n)]
    elif args.kind == "bipartitions":
        from .tableaux import dim_std, enumerate_bipartitions, format_bipartition

        rows = [(format_bipartition(lam), str(dim_std(lam))) for lam in enumerate_bipartitions(args.n)]
    else:
        from .tableaux import enumerate_bipartitions, enumerate_std

        rows = [(str(t),) for lam in enumerate_bipartitions(args.n) for t in enumerate_std(lam)]
    if args.out == "json":
        _emit({"count": len(rows), "items": [list(r) for r in rows]}, "json")
    else:
        _emit("\n".join("\t".join(r) for r in rows) + f"\n# {len(rows)}", "text")
    return 0


# parser ----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="fusedhecke", description="Degenerate cyclotomic Hecke algebras and fused permutations.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, n_default=2, outs=("text", "json")):
        sp.add_argument("--n", type=int, default=n_default)
        sp.add_argument("--k", type=int, default=None)
        sp.add_argument("--mode", type=_mode, default=ScalarMode.parse("generic"))
        sp.add_argument("--out", choices=outs, default=outs[0])

    sp = sub.add_parser("mul", help="product of two elements")
    common(sp)
    sp.add_argument("a", help="generator string such as x1s1, or @file.json")
    sp.add_argument("b")
    sp.set_defaults(func=cmd_mul)

    sp = sub.add_parser("idempotent", help="a corner idempotent")
    common(sp)
    sp.add_argument("--alpha", type=int, choices=(1, -1), default=1)
    sp.add_argument("--b", type=int, choices=(1, 2), default=1)
    sp.add_argument("--route", choices=("closed", "recursion", "product"), default="closed")
    sp.add_argument("--unnormalized", action="store_true")
    sp.set_defaults(func=cmd_idempotent)

    sp = sub.add_parser("reduce", help="normal form in A_n or A_n^(k)")
    common(sp)
    sp.add_argument("element")
    sp.set_defaults(func=cmd_reduce)

    sp = sub.add_parser("dims", help="dimension of A_n or A_n^(k)")
    common(sp)
    sp.add_argument("--figure", help="also write a dimension chart to this file")
    sp.set_defaults(func=cmd_dims)

    sp = sub.add_parser("bratteli", help="branching graph")
    sp.add_argument("--levels", type=int, default=3)
    sp.add_argument("--filter", choices=("full", "avoiding", "cap"), default="full")
    sp.add_argument("--k", type=int, default=None)
    sp.add_argument("--out", choices=("text", "dot", "json"), default="text")
    sp.add_argument("--figure", help="also render the graph to this image file")
    sp.set_defaults(func=cmd_bratteli)

    sp = sub.add_parser("phi", help="image of an element in the fused permutations algebra")
    common(sp)
    sp.add_argument("element")
    sp.set_defaults(func=cmd_phi)

    sp = sub.add_parser("verify", help="run a verification suite")
    common(sp, n_default=3)
    sp.add_argument("--suite", choices=SUITES, required=True)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("enumerate", help="list words, fused permutations or tableaux")
    common(sp)
    sp.add_argument("--kind", choices=("words", "fused", "bipartitions", "tableaux"), default="words")
    sp.add_argument("--filter", choices=("all", "avoiding", "cap"), default="all")
    sp.set_defaults(func=cmd_enumerate)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, HeckeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
