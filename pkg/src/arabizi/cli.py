"""Command-line entry point.

Exit codes: 0 success, 1 usage error, 2 data error (bad model, gold or
mapping file).  Data goes to stdout, diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import io
import logging
import os
import sys
from pathlib import Path

from .candgen import DEFAULT_CAP, generate
from .charmap import load_default_table, read_table
from .errors import ArabiziError
from .evalharness import evaluate, read_gold, render_table, run_grid, trend_summary
from .langmodel import (FRACTIONS, NGramModel, build_frequency, build_ngram,
                        load_model, save_model, slice_corpus)
from .selector import Backend, SelectionPolicy, transliterate_message
from .textprep import FilterStats, RawMessage, filter_arabic_corpus

log = logging.getLogger("arabizi")

EXIT_OK, EXIT_USAGE, EXIT_DATA = 0, 1, 2
MAPPING_ENV = "ARABIZI_MAPPING"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: error: {message}\n{self.format_usage()}")


def _fraction_list(text):
    try:
        values = sorted({int(x) for x in text.split(",") if x.strip()})
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad fraction list {text!r}") from None
    bad = [v for v in values if v not in FRACTIONS]
    if bad or not values:
        raise argparse.ArgumentTypeError(f"fractions must be drawn from {FRACTIONS}")
    return values


def _backend_list(text):
    try:
        return [Backend(x.strip()) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad backend list {text!r}") from None


def _positive(text):
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return value


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="arabizi", description="Algerian Arabizi to Arabic transliteration.")
    p.add_argument("-v", "--verbose", action="store_true", help="debug logging on stderr")
    sub = p.add_subparsers(dest="command", metavar="COMMAND")
    sub.required = True

    def common(sp, model=False):
        sp.add_argument("--mapping", help=f"mapping file (default: ${MAPPING_ENV} or built-in)")
        sp.add_argument("--cap", type=_positive, default=DEFAULT_CAP,
                        help="max candidates per word (default %(default)s)")
        if model:
            sp.add_argument("--model", required=True, help="frequency or n-gram model file")
            sp.add_argument("--backend", choices=[b.value for b in Backend],
                            help="selection backend (default: inferred from the model)")

    sp = sub.add_parser("prepare", help="keep Arabic-only messages, de-elongated")
    sp.add_argument("--input", help="corpus file (default stdin)")

    sp = sub.add_parser("build-model", help="build a frequency or n-gram model")
    sp.add_argument("--input", help="prepared corpus (default stdin)")
    sp.add_argument("--output", "-o", required=True)
    sp.add_argument("--backend", choices=[b.value for b in Backend], default="simple",
                    help="simple -> frequency table, ngram -> n-gram model")
    sp.add_argument("--order", type=int, choices=range(1, 6), default=2)
    sp.add_argument("--fraction", type=int, choices=FRACTIONS, default=100)
    sp.add_argument("--seed", type=int, default=42)

    sp = sub.add_parser("candidates", help="list the candidates of one word")
    sp.add_argument("word")
    sp.add_argument("--count-only", action="store_true")
    common(sp)

    sp = sub.add_parser("translit", help="transliterate stdin line by line")
    common(sp, model=True)
    sp.add_argument("--explain", nargs="?", const="-", metavar="PATH",
                    help="per-word TSV trace to PATH (default stderr)")

    sp = sub.add_parser("evaluate", help="word accuracy against a gold file")
    common(sp, model=True)
    sp.add_argument("--gold", required=True)
    sp.add_argument("--json", action="store_true", help="print the JSON report on stdout")
    sp.add_argument("--report", help="also write the JSON report here")
    sp.add_argument("--figure", help="write an error-class bar chart (PNG)")

    sp = sub.add_parser("grid", help="accuracy over nested corpus fractions")
    common(sp)
    sp.add_argument("--corpus", required=True, help="prepared Arabic corpus")
    sp.add_argument("--gold", required=True, action="append",
                    help="gold file; repeat for several test sets")
    sp.add_argument("--fractions", type=_fraction_list, default=list(FRACTIONS))
    sp.add_argument("--backends", type=_backend_list, default=[Backend.SIMPLE, Backend.NGRAM])
    sp.add_argument("--seed", type=int, default=42)
    sp.add_argument("--order", type=int, choices=range(1, 6), default=2)
    sp.add_argument("--report", help="write the JSON reports here")
    sp.add_argument("--figure", help="write the accuracy curves (PNG)")
    return p


def _table(args):
    path = args.mapping or os.environ.get(MAPPING_ENV)
    return read_table(path) if path else load_default_table()


def _lines(path, stdin):
    if path:
        with open(path, encoding="utf-8") as fh:
            yield from (line.rstrip("\n") for line in fh)
    else:
        yield from (line.rstrip("\n") for line in stdin)


def _policy(args, model):
    if args.backend:
        return SelectionPolicy(Backend(args.backend))
    if isinstance(model, NGramModel):
        return SelectionPolicy(Backend.NGRAM)
    return SelectionPolicy(Backend.SIMPLE)


def cmd_prepare(args, stdin, stdout, stderr):
    stats = FilterStats()
    msgs = (RawMessage(line, str(i)) for i, line in enumerate(_lines(args.input, stdin)))
    for msg in filter_arabic_corpus(msgs, stats):
        stdout.write(msg.text + "\n")
    stderr.write(f"{stats}\n")
    return EXIT_OK


def cmd_build_model(args, stdin, stdout, stderr):
    info, corpus = slice_corpus(_lines(args.input, stdin), args.fraction, args.seed)
    if args.backend == "simple":
        model = build_frequency(corpus)
    else:
        model = build_ngram(corpus, args.order)
    save_model(model, args.output)
    stderr.write(f"{info.message_count} messages ({args.fraction}%) -> {args.output}\n")
    return EXIT_OK


def cmd_candidates(args, stdin, stdout, stderr):
    cands = generate(args.word, _table(args), args.cap)
    if args.count_only:
        stdout.write(f"{len(cands)}\n")
    else:
        for rank, cand in enumerate(cands, 1):
            stdout.write(f"{rank}\t{cand}\n")
    if cands.truncated:
        stderr.write(f"truncated at {args.cap} candidates\n")
    return EXIT_OK


def cmd_translit(args, stdin, stdout, stderr):
    table = _table(args)
    model = load_model(args.model)
    policy = _policy(args, model)
    explain = None
    if args.explain == "-":
        explain = stderr
    elif args.explain:
        explain = open(args.explain, "w", encoding="utf-8")
    try:
        if explain is not None:
            explain.write("source\tchosen\tscore\tmatched\tcandidate_count\n")
        for line in stdin:
            text, results = transliterate_message(line.rstrip("\n"), table, policy, model, args.cap)
            stdout.write(text + "\n")
            stdout.flush()
            if explain is not None:
                for res in results:
                    explain.write(res.tsv() + "\n")
    finally:
        if explain is not None and explain is not stderr:
            explain.close()
    return EXIT_OK


def cmd_evaluate(args, stdin, stdout, stderr):
    table = _table(args)
    model = load_model(args.model)
    pairs = read_gold(args.gold)
    report = evaluate(pairs, table, _policy(args, model), model, args.cap)
    if args.json:
        stdout.write(report.to_json() + "\n")
    else:
        stdout.write(f"total\t{report.total_words}\n")
        stdout.write(f"correct\t{report.correct}\n")
        stdout.write(f"accuracy\t{round(report.accuracy, 6)}\n")
        for name, count in report.breakdown.items():
            stdout.write(f"error:{name}\t{count}\n")
    if args.report:
        Path(args.report).write_text(report.to_json() + "\n", encoding="utf-8")
    if args.figure:
        from .plotting import plot_breakdown
        plot_breakdown(report, args.figure)
    return EXIT_OK


def cmd_grid(args, stdin, stdout, stderr):
    import json

    table = _table(args)
    corpus = list(_lines(args.corpus, stdin))
    reports = {}
    for gold in args.gold:
        name = Path(gold).stem
        reports[name] = run_grid(corpus, read_gold(gold), args.fractions, args.backends,
                                 args.seed, table, args.order, args.cap)
        for line in trend_summary(reports[name]):
            stderr.write(f"{name}: {line}\n")
    stdout.write(render_table(reports))
    if args.report:
        doc = {name: rep.to_dict() for name, rep in reports.items()}
        Path(args.report).write_text(json.dumps(doc, ensure_ascii=False, indent=2) + "\n",
                                     encoding="utf-8")
    if args.figure:
        from .plotting import plot_grid
        plot_grid(reports, args.figure)
    return EXIT_OK


COMMANDS = {
    "prepare": cmd_prepare,
    "build-model": cmd_build_model,
    "candidates": cmd_candidates,
    "translit": cmd_translit,
    "evaluate": cmd_evaluate,
    "grid": cmd_grid,
}


def _utf8(stream, write):
    if isinstance(stream, io.TextIOWrapper):
        stream.reconfigure(encoding="utf-8", **({"line_buffering": True} if write else {}))
    return stream


def main(argv=None, stdin=None, stdout=None, stderr=None) -> int:
    stdin = stdin or _utf8(sys.stdin, False)
    stdout = stdout or _utf8(sys.stdout, True)
    stderr = stderr or _utf8(sys.stderr, True)
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        stderr.write(str(exc))
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return EXIT_OK if not exc.code else EXIT_USAGE

    logging.basicConfig(stream=stderr, level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s", force=True)
    try:
        return COMMANDS[args.command](args, stdin, stdout, stderr)
    except ArabiziError as exc:
        stderr.write(f"arabizi {args.command}: {type(exc).__name__}: {exc}\n")
        return EXIT_DATA
    except OSError as exc:
        stderr.write(f"arabizi {args.command}: {exc}\n")
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
