"""Command-line interface.

Exit codes: 0 success or true, 1 false or negative result, 2 usage or parse
error, 3 budget exceeded, 4 internal invariant violation.
"""

from __future__ import annotations

import argparse
import json
import sys
from collections.abc import Sequence

from . import __version__
from .braces import is_symmetric
from .catalog import identify_group
from .census import census
from .cohomology import (
    abelian_group,
    annihilator_extension,
    h2_group,
    transgression_stable,
    validate_cocycle,
)
from .config import budget
from .errors import (
    ArityMismatch,
    ModulusTooSmall,
    BudgetExceeded,
    InternalDisagreement,
    ParseError,
    SkewBraceError,
    ValidationError,
)
from .formats import (
    cocycle_from_json,
    cocycle_to_json,
    dumps,
    parse_brace_document,
    parse_coefficients,
    save_brace,
    write_group_file,
)
from .isoclinism import IsoclinismWitness, embed_W, fiber_product, find_isoclinism
from .semidirect import build_lambda_group
from .series import ann_series, classify_nilpotency, gamma_series, l_series
from .words import eval_word, in_class_In, skeleton_ideal

EXIT_OK, EXIT_FALSE, EXIT_USAGE, EXIT_BUDGET, EXIT_INTERNAL = 0, 1, 2, 3, 4


class UsageError(Exception):
    pass


def _out(text: str) -> None:
    sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _read_brace(path: str):
    try:
        with open(path, "rb") as fh:
            data = fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from exc
    return parse_brace_document(data)[0]


def _read_json(path: str) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise ParseError(exc.lineno, exc.colno, exc.msg) from exc


def _write_json(path: str, obj) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(obj))


def _int_list(raw: str) -> list[int]:
    try:
        return [int(x) for x in raw.split(",") if x.strip() != ""]
    except ValueError as exc:
        raise UsageError(f"expected comma-separated integers, got {raw!r}") from exc


def _sets(series) -> list[list[int]]:
    return [sorted(s) for s in series]


def _skeleton(A) -> list[list[int]]:
    out = [skeleton_ideal(A, 0)]
    while True:
        nxt = skeleton_ideal(A, len(out))
        if nxt == out[-1]:
            return _sets(out)
        out.append(nxt)


# ----------------------------------------------------------- subcommands


def cmd_validate(args) -> int:
    try:
        A = _read_brace(args.file)
    except ValidationError as exc:
        _out(f"invalid: {exc}")
        return EXIT_FALSE
    _out(f"valid order={A.order}")
    return EXIT_OK


def cmd_info(args) -> int:
    A = _read_brace(args.file)
    rep = classify_nilpotency(A)
    info = {
        "version": __version__,
        "order": A.order,
        "additive": _group_tag(A.dot),
        "multiplicative": _group_tag(A.circ),
        "symmetric": is_symmetric(A),
        "nilpotency": {
            "left": rep.left_nilpotent,
            "right": rep.right_nilpotent,
            "strong": rep.strongly_nilpotent,
            "star_soluble": rep.star_soluble,
            "central": rep.centrally_nilpotent,
        },
        "in_class": {str(n): in_class_In(A, n) for n in range(1, args.max_n + 1)},
    }
    wanted = ["ann", "gamma", "skeleton", "L"] if args.series == "all" else [args.series] if args.series else []
    makers = {
        "ann": lambda: _sets(ann_series(A)),
        "gamma": lambda: _sets(gamma_series(A)),
        "skeleton": lambda: _skeleton(A),
        "L": lambda: _sets(l_series(A)),
    }
    info["series"] = {k: makers[k]() for k in wanted}
    if args.json:
        _out(dumps(info))
        return EXIT_OK
    _out(f"order {A.order}: ({info['additive']}, ·) and ({info['multiplicative']}, ∘)")
    _out(f"symmetric: {'yes' if info['symmetric'] else 'no'}")
    for k, v in info["nilpotency"].items():
        label = "star soluble" if k == "star_soluble" else f"{k} nilpotent"
        _out(f"{label}: " + ("no" if v is None else f"class {v}"))
    for n, flag in info["in_class"].items():
        _out(f"in I_{n}: {'yes' if flag else 'no'}")
    for k, chain in info["series"].items():
        _out(f"{k} series:")
        for i, s in enumerate(chain):
            _out(f"  {i}: |{len(s)}| {' '.join(map(str, s))}")
    return EXIT_OK


def _group_tag(G) -> str:
    if G.order > 16:
        return f"order {G.order}"
    try:
        return identify_group(G)
    except LookupError:
        return f"order {G.order}"


def cmd_word_eval(args) -> int:
    A = _read_brace(args.file)
    _out(str(eval_word(A, args.word, _int_list(args.args))))
    return EXIT_OK


def _witness(path: str) -> IsoclinismWitness:
    return IsoclinismWitness.from_json(_read_json(path))


def cmd_isoclinic(args) -> int:
    A, B = _read_brace(args.file1), _read_brace(args.file2)
    w = find_isoclinism(A, B, args.n)
    if w is None:
        _out(f"not {args.n}-isoclinic")
        return EXIT_FALSE
    if args.witness:
        _write_json(args.witness, {"version": __version__, **w.to_json()})
    _out(f"{args.n}-isoclinic")
    return EXIT_OK


def cmd_fiber(args) -> int:
    A, B = _read_brace(args.file1), _read_brace(args.file2)
    w = _witness(args.witness)
    if w.n != args.n:
        raise UsageError(f"witness is a {w.n}-isoclinism but -n {args.n} was given")
    res = fiber_product(A, B, w)
    save_brace(args.output, res.C, {"construction": f"fiber product, n={args.n}"})
    _out(f"wrote order {res.C.order} brace to {args.output}")
    return EXIT_OK


def cmd_embed(args) -> int:
    A, B = _read_brace(args.file1), _read_brace(args.file2)
    res = embed_W(A, B, _witness(args.witness))
    save_brace(
        args.output,
        res.W,
        {"rho_A": ",".join(map(str, res.rho_A)), "rho_B": ",".join(map(str, res.rho_B))},
    )
    _out(f"wrote order {res.W.order} brace to {args.output}")
    return EXIT_OK


def cmd_h2(args) -> int:
    K = _read_brace(args.kfile)
    factors = parse_coefficients(args.coeff)
    H = h2_group(K, abelian_group(factors))
    if args.json:
        _out(
            dumps(
                {
                    "version": __version__,
                    "coefficients": factors,
                    "invariant_factors": H.invariant_factors,
                    "order": H.order,
                    "z2_order": H.z2_order,
                    "b2_order": H.b2_order,
                    "generators": [
                        {"order": o, **cocycle_to_json(g, factors)}
                        for g, o in zip(H.generators, H.generator_orders)
                    ],
                }
            )
        )
        return EXIT_OK
    inv = " x ".join(f"Z/{d}" for d in H.invariant_factors) or "0"
    _out(f"H2 = {inv} (order {H.order}); |Z2| = {H.z2_order}, |B2| = {H.b2_order}")
    return EXIT_OK


def cmd_extend(args) -> int:
    K = _read_brace(args.kfile)
    p = validate_cocycle(cocycle_from_json(_read_json(args.cocycle), K))
    ext = annihilator_extension(p)
    save_brace(args.output, ext.G, {"ideal": ",".join(map(str, ext.i))})
    _out(f"wrote order {ext.G.order} brace to {args.output}")
    return EXIT_OK


def cmd_transgress(args) -> int:
    G = _read_brace(args.gfile)
    ideal = _int_list(args.ideal)
    t, stable = transgression_stable(G, ideal, args.modulus)
    data = {
        "version": __version__,
        "modulus": t.modulus,
        "dual_order": t.dual_order,
        "image_order": t.image_order,
        "kernel_order": t.kernel_order,
        "stable_under_doubling": stable,
    }
    if args.json:
        _out(dumps(data))
    else:
        _out(
            f"modulus={t.modulus} |dual|={t.dual_order} |image|={t.image_order} "
            f"|kernel|={t.kernel_order} stable={'yes' if stable else 'no'}"
        )
    return EXIT_OK


def cmd_lambda(args) -> int:
    A = _read_brace(args.file)
    L = build_lambda_group(A)
    with open(args.output, "wb") as fh:
        fh.write(write_group_file(L.group, {"source_order": str(A.order), "index": "a*n+b"}))
    _out(f"wrote group of order {L.group.order} to {args.output}")
    return EXIT_OK


def cmd_census(args) -> int:
    if args.order >= 16 and not args.long:
        raise BudgetExceeded(f"order {args.order} is a long run; pass --long")
    if args.order > budget().max_order:
        raise BudgetExceeded(f"order {args.order} exceeds SKEWBRACE_MAX_ORDER={budget().max_order}")
    progress = None
    if args.verbose:
        progress = lambda tag, k: print(f"{tag}: {k}", file=sys.stderr, flush=True)  # noqa: E731
    rep = census(args.order, threads=args.threads, progress=progress)
    if args.jsonl:
        with open(args.jsonl, "w", encoding="utf-8") as fh:
            for line in rep.jsonl():
                fh.write(line + "\n")
            fh.write(json.dumps({"summary": rep.summary_json(), "version": __version__}, sort_keys=True) + "\n")
    _out(rep.summary())
    return EXIT_OK


# ---------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="skewbrace", description="Finite skew left braces.")
    p.add_argument("--version", action="version", version=f"skewbrace {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("validate", help="check a brace file")
    s.add_argument("file")
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("info", help="series, nilpotency and class membership")
    s.add_argument("file")
    s.add_argument("--series", choices=["all", "ann", "gamma", "skeleton", "L"])
    s.add_argument("--json", action="store_true")
    s.add_argument("--max-n", type=int, default=2)
    s.set_defaults(func=cmd_info)

    s = sub.add_parser("word", help="word maps")
    wsub = s.add_subparsers(dest="word_command", required=True)
    w = wsub.add_parser("eval", help="evaluate a word on arguments")
    w.add_argument("file")
    w.add_argument("--word", required=True, help="string over s (star), S (reversed star), g (dot commutator), G (reversed commutator)")
    w.add_argument("--args", required=True, help="comma-separated element indices")
    w.set_defaults(func=cmd_word_eval)

    s = sub.add_parser("isoclinic", help="search for an n-isoclinism")
    s.add_argument("file1")
    s.add_argument("file2")
    s.add_argument("-n", type=int, default=1)
    s.add_argument("--witness")
    s.set_defaults(func=cmd_isoclinic)

    s = sub.add_parser("fiber", help="fiber product of two isoclinic braces")
    s.add_argument("file1")
    s.add_argument("file2")
    s.add_argument("-n", type=int, required=True)
    s.add_argument("--witness", required=True)
    s.add_argument("-o", "--output", required=True)
    s.set_defaults(func=cmd_fiber)

    s = sub.add_parser("embed", help="common brace W containing both up to Ann(W)")
    s.add_argument("file1")
    s.add_argument("file2")
    s.add_argument("--witness", required=True)
    s.add_argument("-o", "--output", required=True)
    s.set_defaults(func=cmd_embed)

    s = sub.add_parser("h2", help="second cohomology with trivial coefficients")
    s.add_argument("kfile")
    s.add_argument("--coeff", required=True, help='e.g. "Z/4 x Z/2"')
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_h2)

    s = sub.add_parser("extend", help="annihilator extension from a cocycle")
    s.add_argument("kfile")
    s.add_argument("--cocycle", required=True)
    s.add_argument("-o", "--output", required=True)
    s.set_defaults(func=cmd_extend)

    s = sub.add_parser("transgress", help="transgression of an annihilator extension")
    s.add_argument("gfile")
    s.add_argument("--ideal", required=True, help="comma-separated elements of the ideal")
    s.add_argument("--modulus", type=int)
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_transgress)

    s = sub.add_parser("lambda", help="export the group Λ_A")
    s.add_argument("file")
    s.add_argument("-o", "--output", required=True)
    s.set_defaults(func=cmd_lambda)

    s = sub.add_parser("census", help="enumerate and classify every brace of an order")
    s.add_argument("--order", type=int, required=True)
    s.add_argument("--long", action="store_true", help="allow order 16 and beyond")
    s.add_argument("--jsonl")
    s.add_argument("--threads", type=int, default=1)
    s.add_argument("-v", "--verbose", action="store_true")
    s.set_defaults(func=cmd_census)
    return p


def _error(kind: str, exc: BaseException, code: int) -> int:
    msg = {"error": kind, "message": str(exc), "exit": code, "version": __version__}
    if isinstance(exc, ParseError):
        msg["line"], msg["col"] = exc.line, exc.col
    sys.stderr.write(json.dumps(msg, sort_keys=True) + "\n")
    return code


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, ParseError, ValueError) as exc:
        return _error(type(exc).__name__, exc, EXIT_USAGE)
    except ValidationError as exc:
        return _error(type(exc).__name__, exc, EXIT_USAGE)
    except (ArityMismatch, ModulusTooSmall) as exc:
        return _error(type(exc).__name__, exc, EXIT_USAGE)
    except BudgetExceeded as exc:
        return _error("BudgetExceeded", exc, EXIT_BUDGET)
    except InternalDisagreement as exc:
        return _error("InternalDisagreement", exc, EXIT_INTERNAL)
    except SkewBraceError as exc:
        return _error(type(exc).__name__, exc, EXIT_FALSE)
    except OSError as exc:
        return _error("OSError", exc, EXIT_USAGE)


if __name__ == "__main__":
    sys.exit(main())
