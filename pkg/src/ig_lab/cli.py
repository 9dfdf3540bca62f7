"""The ig-lab command line.

Subcommands: validate, models, contact, word-eq, green, schutz, census,
cross-validate, report.  JSON is the interchange format (--format text for
a human summary); DOT is available for graph export; the report path can
additionally render matplotlib figures and a CSV model summary.

Exit codes: 0 ok, 1 input/usage error, 2 internal-consistency failure
(a cross-validation disagreement or a violated structural theorem).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .config import Caps
from .errors import (CapExceeded, GroupNotFiniteWithinCap, IgLabError, NonAssociative,
                     NormalityViolation, SanityViolation)
from .harness import RunConfig, answer_query, biorder_summary, cross_validate, inject_fault, run_report
from .figures import render_report_figures, write_model_csv
from .serialize import dump_json, load_input
from .session import IgContext


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("input", help="JSON semigroup table or abstract biorder")
    p.add_argument("--max-word-len", type=int, default=Caps.max_word_len)
    p.add_argument("--max-bfs-states", type=int, default=Caps.max_bfs_states)
    p.add_argument("--witness-len", type=int, default=Caps.witness_len)
    p.add_argument("--max-group-order", type=int, default=Caps.max_group_order)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--format", choices=("json", "text"), default="json")


def _caps(args) -> Caps:
    return Caps(max_word_len=args.max_word_len, max_bfs_states=args.max_bfs_states,
                witness_len=args.witness_len, max_group_order=args.max_group_order)


def _context(args) -> IgContext:
    return IgContext(load_input(args.input), _caps(args))


def _emit(args, data: dict, text_lines=None) -> None:
    if args.format == "json":
        sys.stdout.write(dump_json(data))
    else:
        for line in text_lines or [json.dumps(data)]:
            print(line)


def _word_arg(raw: str) -> list:
    value = json.loads(raw)
    if not isinstance(value, list) or not value:
        raise SanityViolation("words are nonempty JSON arrays of labels")
    return [str(x) for x in value]


def cmd_validate(args) -> int:
    bi = load_input(args.input)
    data = {"ok": True, "summary": biorder_summary(bi)}
    _emit(args, data, ["input is a valid biorder",
                       f"|E| = {bi.n}, D-classes: {len(bi.d_classes)}"])
    return 0


def cmd_models(args) -> int:
    ctx = _context(args)
    models, errors = ctx.all_models()
    from .harness import model_report

    data = {
        "models": {str(d): model_report(m, ctx.biorder) for d, m in sorted(models.items())},
        "model_errors": {str(d): str(e) for d, e in sorted(errors.items())},
    }
    lines = [f"D-class {d}: |I|={m.n_i} |Lambda|={m.n_lambda} |G|={m.group.order}"
             for d, m in sorted(models.items())]
    lines += [f"D-class {d}: {e}" for d, e in sorted(errors.items())]
    _emit(args, data, lines)
    return 0


def cmd_contact(args) -> int:
    ctx = _context(args)
    auto = ctx.automaton(args.d1, args.d2)
    from .harness import automaton_report

    if args.dot:
        Path(args.dot).write_text(auto.to_dot() + "\n")
    _emit(args, automaton_report(auto),
          [f"A(D{args.d1}, D{args.d2}): {len(auto.graph.vertices)} vertices, "
           f"{len(auto.graph.edges)} edges"])
    return 0


def cmd_word_eq(args) -> int:
    ctx = _context(args)
    out = answer_query(ctx, {"kind": "word-eq", "u": _word_arg(args.u), "v": _word_arg(args.v)})
    _emit(args, out, [f"equal: {out.get('equal')}", f"oracle: {out.get('oracle', {}).get('status')}"])
    return 0


def cmd_green(args) -> int:
    ctx = _context(args)
    out = answer_query(ctx, {"kind": "green", "u": _word_arg(args.u), "v": _word_arg(args.v),
                             "rel": args.rel})
    _emit(args, out, [f"{args.rel}-related: {out.get('related')}"])
    return 0


def cmd_schutz(args) -> int:
    ctx = _context(args)
    out = answer_query(ctx, {"kind": "schutz", "word": _word_arg(args.word)})
    if "error" in out:
        raise IgLabError(out["error"])
    _emit(args, out, [f"Schutzenberger group order: {out['schutzenberger']['order']}"])
    return 0


def cmd_census(args) -> int:
    ctx = _context(args)
    out = answer_query(ctx, {"kind": "census", "word": _word_arg(args.word)})
    if "error" in out:
        raise IgLabError(out["error"])
    _emit(args, out, [f"census: {out['census']}"])
    return 0


def cmd_cross_validate(args) -> int:
    ctx = _context(args)
    config = RunConfig(input_path=args.input, caps=_caps(args), seed=args.seed,
                       exhaustive_len=args.exhaustive_len, sample_len=args.sample_len,
                       samples=args.samples, fault=args.inject_fault)
    env = ctx.env()
    if args.inject_fault:
        env = inject_fault(env, args.inject_fault, seed=args.seed)
    report = cross_validate(ctx, config, env)
    _emit(args, report, [f"pairs: {report['pairs_checked']}", f"counts: {report['counts']}",
                         f"ok: {report['ok']}"])
    return 0 if report["ok"] else 2


def cmd_report(args) -> int:
    ctx = _context(args)
    queries = []
    if args.queries:
        queries = json.loads(Path(args.queries).read_text())
    config = RunConfig(input_path=args.input, caps=_caps(args), seed=args.seed, queries=queries)
    report = run_report(ctx, config)
    if args.out_dir:
        out = Path(args.out_dir)
        out.mkdir(parents=True, exist_ok=True)
        dump_json(report, out / "report.json")
        models, errors = ctx.all_models()
        write_model_csv(models, errors, out / "models.csv")
        written = [str(out / "report.json"), str(out / "models.csv")]
        if args.figures:
            written += render_report_figures(ctx, out / "figures")
        _emit(args, {"written": written}, [f"wrote {p}" for p in written])
    else:
        _emit(args, report)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ig-lab", description=__doc__,
                                     formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="parse and sanity-check an input file")
    _add_common(p)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("models", help="Rees models of every D-class (or finiteness errors)")
    _add_common(p)
    p.set_defaults(func=cmd_models)

    p = sub.add_parser("contact", help="contact automaton of two D-classes")
    _add_common(p)
    p.add_argument("--d1", type=int, required=True)
    p.add_argument("--d2", type=int, required=True)
    p.add_argument("--dot", help="write DOT export here")
    p.set_defaults(func=cmd_contact)

    p = sub.add_parser("word-eq", help="decide equality of two words")
    _add_common(p)
    p.add_argument("--u", required=True, help='JSON word, e.g. \'["a","b"]\'')
    p.add_argument("--v", required=True)
    p.set_defaults(func=cmd_word_eq)

    p = sub.add_parser("green", help="decide a Green's relation between two words")
    _add_common(p)
    p.add_argument("--u", required=True)
    p.add_argument("--v", required=True)
    p.add_argument("--rel", choices=list("RLHDJ"), default="D")
    p.set_defaults(func=cmd_green)

    p = sub.add_parser("schutz", help="Schutzenberger group of a word's H-class")
    _add_common(p)
    p.add_argument("--word", required=True)
    p.set_defaults(func=cmd_schutz)

    p = sub.add_parser("census", help="D-class census of a word")
    _add_common(p)
    p.add_argument("--word", required=True)
    p.set_defaults(func=cmd_census)

    p = sub.add_parser("cross-validate", help="differential test: pipeline vs rewriting oracle")
    _add_common(p)
    p.add_argument("--exhaustive-len", type=int, default=4)
    p.add_argument("--sample-len", type=int, default=8)
    p.add_argument("--samples", type=int, default=500)
    p.add_argument("--inject-fault", choices=("sandwich", "cocycle", "gain"))
    p.set_defaults(func=cmd_cross_validate)

    p = sub.add_parser("report", help="full analysis report (JSON + CSV + figures)")
    _add_common(p)
    p.add_argument("--out-dir", help="write report.json, models.csv (and figures) here")
    p.add_argument("--figures", action="store_true", help="render PNG figures")
    p.add_argument("--queries", help="JSON file with a list of query objects")
    p.set_defaults(func=cmd_report)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (NormalityViolation,) as exc:
        print(f"internal consistency failure: {exc}", file=sys.stderr)
        return 2
    except FileNotFoundError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 1
    except json.JSONDecodeError as exc:
        print(f"input error: invalid JSON ({exc})", file=sys.stderr)
        return 1
    except (SanityViolation, NonAssociative) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 1
    except (CapExceeded, GroupNotFiniteWithinCap) as exc:
        print(f"caps: {exc}", file=sys.stderr)
        return 1
    except IgLabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
