"""Batch command-line interface for the annotation pipeline.

Subcommands: annotate, interpret, eval, validate, export-owl, stats.
Machine-readable output goes to the path given with --out ('-' for stdout);
human-readable diagnostics go to stderr only, so outputs stay pipeable.

Exit codes: 0 success, 1 input or parse error, 2 validation failure,
3 predicted/gold alignment error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import samples
from .annotate import annotate_all
from .corpus import CorpusFormatError, load_gold, load_utterances, stats
from .evaluate import (
    AlignmentError,
    EvaluationCounts,
    UNRESOLVED_POLICIES,
    metrics,
    render_counts_table,
    render_report,
    report,
    report_to_document,
)
from .interpret import TIE_BREAKS, interpret_all
from .normalize import TablesError, load_tables, normalize_all
from .ontology import merge, validate
from .ontology_io import (
    OntologyFormatError,
    OntologyValidationError,
    export_owl,
    load_ontology,
    parse_ontology_file,
)
from .serialize import (
    annotated_to_tsv,
    annotated_to_xml,
    interpreted_to_tsv,
    interpreted_to_xml,
)

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_VALIDATION = 2
EXIT_ALIGNMENT = 3


def _write_out(target: str, text: str) -> None:
    if target == "-":
        sys.stdout.write(text)
    else:
        Path(target).write_text(text, encoding="utf-8")


def _info(message: str) -> None:
    print(message, file=sys.stderr)


def _json_text(document: object) -> str:
    return json.dumps(document, ensure_ascii=False, indent=2, sort_keys=True) + "\n"


def _add_ontology_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--domain",
        default=str(samples.domain_ontology_path()),
        help="domain ontology file (default: bundled railway sample)",
    )
    parser.add_argument(
        "--task",
        default=str(samples.task_ontology_path()),
        help="task ontology file (default: bundled railway sample)",
    )


def _add_pipeline_options(parser: argparse.ArgumentParser) -> None:
    _add_ontology_options(parser)
    parser.add_argument(
        "--tables",
        default=str(samples.tables_path()),
        help="normalization tables file (default: bundled railway sample)",
    )
    parser.add_argument("--in", dest="input", required=True, help="raw corpus file (id<TAB>text)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ontosem",
        description="Ontology-based semantic annotation and interpretation of transcribed utterances.",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    p_annotate = commands.add_parser("annotate", help="label tokens by ontology lookup")
    _add_pipeline_options(p_annotate)
    p_annotate.add_argument("--out", default="-", help="output path ('-' for stdout)")
    p_annotate.add_argument("--format", choices=("xml", "tsv"), default="xml")

    p_interpret = commands.add_parser(
        "interpret", help="annotate, then disambiguate multi-label tokens"
    )
    _add_pipeline_options(p_interpret)
    p_interpret.add_argument("--out", default="-", help="output path ('-' for stdout)")
    p_interpret.add_argument("--format", choices=("xml", "tsv"), default="xml")
    p_interpret.add_argument("--tie-break", choices=TIE_BREAKS, default="left")

    p_eval = commands.add_parser("eval", help="score the pipeline against gold annotations")
    _add_ontology_options(p_eval)
    p_eval.add_argument(
        "--tables",
        default=str(samples.tables_path()),
        help="normalization tables file (default: bundled railway sample)",
    )
    p_eval.add_argument(
        "--in", dest="input", help="raw corpus file (required unless --from-counts)"
    )
    p_eval.add_argument("--out", default="-", help="report path ('-' for stdout)")
    p_eval.add_argument("--gold", help="gold TSV file (required unless --from-counts)")
    p_eval.add_argument("--tie-break", choices=TIE_BREAKS, default="left")
    p_eval.add_argument("--unresolved", choices=UNRESOLVED_POLICIES, default="not-recognized")
    p_eval.add_argument(
        "--from-counts",
        metavar="A,B,C,D",
        help="skip the pipeline and report metrics for injected counts",
    )

    p_validate = commands.add_parser("validate", help="check ontology invariants")
    _add_ontology_options(p_validate)
    p_validate.add_argument("--out", default="-", help="findings path ('-' for stdout)")

    p_export = commands.add_parser("export-owl", help="export the merged ontology pair as OWL")
    _add_ontology_options(p_export)
    p_export.add_argument("--out", default="-", help="output path ('-' for stdout)")

    p_stats = commands.add_parser("stats", help="corpus utterance/word statistics")
    p_stats.add_argument("--in", dest="input", required=True, help="raw corpus file")
    p_stats.add_argument("--out", default="-", help="output path ('-' for stdout)")

    return parser


def _run_pipeline(args: argparse.Namespace):
    domain = load_ontology(args.domain)
    task = load_ontology(args.task)
    tables = load_tables(args.tables)
    utterances = load_utterances(args.input)
    normalized = normalize_all(utterances, tables, domain, task)
    return domain, task, annotate_all(normalized, domain, task)


def cmd_annotate(args: argparse.Namespace) -> int:
    _, _, annotated = _run_pipeline(args)
    text = annotated_to_xml(annotated) if args.format == "xml" else annotated_to_tsv(annotated)
    _write_out(args.out, text)
    _info(f"annotated {len(annotated)} utterance(s)")
    return EXIT_OK


def cmd_interpret(args: argparse.Namespace) -> int:
    domain, task, annotated = _run_pipeline(args)
    interpreted = interpret_all(annotated, domain, task, tie_break=args.tie_break)
    text = (
        interpreted_to_xml(interpreted) if args.format == "xml" else interpreted_to_tsv(interpreted)
    )
    _write_out(args.out, text)
    _info(f"interpreted {len(interpreted)} utterance(s)")
    return EXIT_OK


def cmd_eval(args: argparse.Namespace) -> int:
    if args.from_counts:
        try:
            a, b, c, d = (int(part) for part in args.from_counts.split(","))
            counts = EvaluationCounts(a, b, c, d)
        except ValueError as err:
            _info(f"ontosem: bad --from-counts value: {err}")
            return EXIT_INPUT
        m = metrics(counts)
        document = {
            "format_version": 1,
            "counts": {
                "correct": counts.correct,
                "incorrect": counts.incorrect,
                "not_recognized": counts.not_recognized,
                "total": counts.total,
            },
            "metrics": {
                "precision": m.precision,
                "f_measure": m.f_measure,
                "precision_display": m.precision_display,
                "f_measure_display": m.f_measure_display,
                "f1_conventional": m.f1_conventional,
            },
        }
        _write_out(args.out, _json_text(document))
        _info(render_counts_table(counts))
        return EXIT_OK

    if not args.input or not args.gold:
        _info("ontosem: eval requires --in and --gold (or --from-counts)")
        return EXIT_INPUT
    domain, task, annotated = _run_pipeline(args)
    interpreted = interpret_all(annotated, domain, task, tie_break=args.tie_break)
    gold = load_gold(args.gold, merge(domain, task))
    result = report(
        interpreted, gold, unresolved_policy=args.unresolved, include_markers=True
    )
    _write_out(args.out, _json_text(report_to_document(result)))
    _info(render_report(result))
    return EXIT_OK


def cmd_validate(args: argparse.Namespace) -> int:
    named = []
    for label, path in (("domain", args.domain), ("task", args.task)):
        named.append((label, parse_ontology_file(path)))
    findings = []
    for label, ontology in named:
        findings.extend((label, f) for f in validate(ontology))
    merged = merge(*(ontology for _, ontology in named))
    findings.extend(("merged", f) for f in validate(merged))

    document = [
        {"ontology": label, "code": f.code, "detail": f.detail} for label, f in findings
    ]
    _write_out(args.out, _json_text(document))
    if findings:
        for label, finding in findings:
            _info(f"{label}: {finding}")
        return EXIT_VALIDATION
    _info("ontologies are well-formed")
    return EXIT_OK


def cmd_export_owl(args: argparse.Namespace) -> int:
    merged = merge(load_ontology(args.domain), load_ontology(args.task))
    _write_out(args.out, export_owl(merged))
    _info(f"exported {len(merged.concepts)} classes, {len(merged.relations)} object properties")
    return EXIT_OK


def cmd_stats(args: argparse.Namespace) -> int:
    utterances = load_utterances(args.input)
    result = stats(utterances)
    average = result.avg_words_per_utterance
    document = {
        "format_version": 1,
        "utterance_count": result.utterance_count,
        "word_count": result.word_count,
        "avg_words_per_utterance": None if average is None else round(average, 2),
    }
    _write_out(args.out, _json_text(document))
    shown = "n/a" if average is None else f"{average:.2f}"
    _info(
        f"utterances: {result.utterance_count}  words: {result.word_count}  avg words/utterance: {shown}"
    )
    return EXIT_OK


_HANDLERS = {
    "annotate": cmd_annotate,
    "interpret": cmd_interpret,
    "eval": cmd_eval,
    "validate": cmd_validate,
    "export-owl": cmd_export_owl,
    "stats": cmd_stats,
}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    handler = _HANDLERS[args.command]
    try:
        return handler(args)
    except FileNotFoundError as err:
        _info(f"ontosem: file not found: {err.filename}")
        return EXIT_INPUT
    except (OntologyFormatError, CorpusFormatError) as err:
        _info(f"ontosem: {err}")
        return EXIT_INPUT
    except TablesError as err:
        _info(f"ontosem: {err}")
        return EXIT_VALIDATION if err.findings else EXIT_INPUT
    except OntologyValidationError as err:
        _info(f"ontosem: {err}")
        return EXIT_VALIDATION
    except AlignmentError as err:
        _info(f"ontosem: alignment error: {err}")
        return EXIT_ALIGNMENT


if __name__ == "__main__":
    sys.exit(main())
