"""Command-line front door.

Subcommands: activate, rank, dark, pure, deps, ablate. Exit codes:
0 success / columns independent, 3 a dependency certificate exists (or
a checked candidate is CONFIRMED), 2 usage error, 1 internal error.
"""

from __future__ import annotations

import argparse
import logging
import os
import sys
import traceback
from pathlib import Path
from typing import List, Optional, Tuple

from . import analysis, tsv
from .analysis import ScopeFilter, render_certificate
from .dimensions import CANONICAL_ORDER
from .errors import QuotientError
from .ingest import CorpusManifest, Endpoint, load_run, parse_manifest_file
from .patterns import PatternSet, default_pattern_set, load_pattern_set

logger = logging.getLogger(__name__)

PATTERNS_ENV = "QUOTIENT_PATTERNS"

_TEXT_FORMATS = ("text", "kv")


class UsageError(Exception):
    """Bad invocation that argparse cannot catch itself."""


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--corpus",
        action="append",
        default=[],
        metavar="LABEL=PATH",
        help="corpus label and its document file or directory (repeatable)",
    )
    parser.add_argument(
        "--manifest", metavar="PATH", help="manifest file with LABEL = PATH lines"
    )
    parser.add_argument(
        "--patterns",
        metavar="PATH",
        help=f"pattern file (default: ${PATTERNS_ENV} or the packaged set)",
    )
    parser.add_argument(
        "--extended",
        action=argparse.BooleanOptionalAction,
        default=True,
        help="apply the extended synonym tier (default: on)",
    )
    parser.add_argument(
        "--scope",
        metavar="LABELS",
        help="comma-separated corpus labels to restrict to (default: all)",
    )
    parser.add_argument("--out", metavar="PATH", help="write output here instead of stdout")
    parser.add_argument(
        "--format",
        choices=("tsv", "text", "kv"),
        help="output format (activate: tsv; others: text or kv)",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="quotient",
        description="Semantic dimension activation and GF(2) rank analysis "
        "for OpenAPI corpora.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("activate", help="emit the activation matrix as TSV")
    _add_common(p)
    p.set_defaults(func=cmd_activate)

    p = sub.add_parser("rank", help="rank report for a scope")
    _add_common(p)
    p.add_argument(
        "--order",
        metavar="LABELS",
        help="comma-separated corpus order for cumulative prefix-union ranks",
    )
    p.set_defaults(func=cmd_rank)

    p = sub.add_parser("dark", help="list endpoints activating no dimension")
    _add_common(p)
    p.set_defaults(func=cmd_dark)

    p = sub.add_parser("pure", help="pure-signal witness per dimension")
    _add_common(p)
    p.set_defaults(func=cmd_pure)

    p = sub.add_parser("deps", help="dependency certificates (column nullspace)")
    _add_common(p)
    p.add_argument(
        "--check",
        metavar="COLS",
        help="comma-separated column symbols of a candidate dependency to verify",
    )
    p.set_defaults(func=cmd_deps)

    p = sub.add_parser("ablate", help="frozen vs extended tier comparison")
    _add_common(p)
    p.set_defaults(func=cmd_ablate)

    return parser


def _parse_corpus_arg(value: str) -> CorpusManifest:
    label, sep, path = value.partition("=")
    label = label.strip()
    path = path.strip()
    if not sep or not label or not path:
        raise UsageError(f"--corpus expects LABEL=PATH, got {value!r}")
    return CorpusManifest(corpus_label=label, source_paths=(path,))


def _load_endpoints(args: argparse.Namespace) -> List[Endpoint]:
    manifests: List[CorpusManifest] = []
    if args.manifest:
        manifests.extend(parse_manifest_file(args.manifest))
    for value in args.corpus:
        manifests.append(_parse_corpus_arg(value))
    if not manifests:
        raise UsageError("no corpora given; use --corpus LABEL=PATH or --manifest")
    for manifest in manifests:
        for source in manifest.source_paths:
            if not Path(source).exists():
                raise UsageError(
                    f"corpus {manifest.corpus_label}: path does not exist: {source}"
                )
    if args.patterns and not Path(args.patterns).exists():
        raise UsageError(f"pattern file does not exist: {args.patterns}")
    return load_run(manifests)


def _load_patterns(args: argparse.Namespace) -> Tuple[PatternSet, str]:
    if args.patterns:
        return load_pattern_set(args.patterns), args.patterns
    env_path = os.environ.get(PATTERNS_ENV)
    if env_path:
        return load_pattern_set(env_path), env_path
    return default_pattern_set(), "packaged default"


def _scope(args: argparse.Namespace) -> ScopeFilter:
    if not args.scope:
        return ScopeFilter()
    labels = [part.strip() for part in args.scope.split(",") if part.strip()]
    return ScopeFilter.of(labels)


def _format(args: argparse.Namespace, allowed: Tuple[str, ...], default: str) -> str:
    chosen = args.format or default
    if chosen not in allowed:
        raise UsageError(
            f"format {chosen!r} is not valid for this command "
            f"(allowed: {', '.join(allowed)})"
        )
    return chosen


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        Path(out).write_bytes(text.encode("utf-8"))
    else:
        sys.stdout.write(text)


def _labels_csv(symbols) -> str:
    return ",".join(symbols)


def cmd_activate(args: argparse.Namespace) -> int:
    _format(args, ("tsv",), "tsv")
    endpoints = _load_endpoints(args)
    patterns, _ = _load_patterns(args)
    matrix = analysis.scoped_matrix(endpoints, patterns, _scope(args), args.extended)
    _emit(tsv.render_activation_tsv(matrix), args.out)
    return 0


def _render_rank_text(report: analysis.RankReport, pattern_source: str) -> List[str]:
    lines = [
        f"scope: {report.scope.describe()}",
        f"patterns: {pattern_source} "
        f"(digest {report.pattern_config.digest[:12]}, "
        f"extended {'on' if report.pattern_config.use_extended else 'off'}, "
        f"dialect {report.pattern_config.dialect_version})",
        f"endpoints: {report.endpoint_count}",
        f"dark: {report.dark_count} ({report.dark_percent}%)",
        f"activated: {_labels_csv(report.activated_dimensions) or '-'} "
        f"({len(report.activated_dimensions)})",
        f"rank: {report.rank}",
        f"pivots: {_labels_csv(report.pivot_columns) or '-'}",
        f"status: {'INDEPENDENT' if report.independent else 'DEPENDENT'}",
    ]
    for cert in report.certificates:
        witnesses = ", ".join(
            f"{endpoint_id} ({corpus})" for corpus, endpoint_id in cert.witness_rows[:3]
        )
        suffix = f" [witness: {witnesses}]" if witnesses else ""
        lines.append(f"certificate: {render_certificate(cert)}{suffix}")
    w = report.pure_signal_witness
    lines.append(f"pure signals: {len(w.entries)}/14")
    if w.missing:
        lines.append(f"missing pure signals: {_labels_csv(w.missing)}")
    return lines


def _render_rank_kv(report: analysis.RankReport) -> List[str]:
    lines = [
        f"scope\t{report.scope.describe()}",
        f"endpoint_count\t{report.endpoint_count}",
        f"dark_count\t{report.dark_count}",
        f"dark_percent\t{report.dark_percent}",
        f"activated\t{_labels_csv(report.activated_dimensions)}",
        f"activated_count\t{len(report.activated_dimensions)}",
        f"rank\t{report.rank}",
        f"pivot_columns\t{_labels_csv(report.pivot_columns)}",
        f"independent\t{'true' if report.independent else 'false'}",
        f"certificate_count\t{len(report.certificates)}",
    ]
    for i, cert in enumerate(report.certificates):
        lines.append(f"certificate_{i}_columns\t{_labels_csv(cert.ordered_columns())}")
        lines.append(f"certificate_{i}_equation\t{render_certificate(cert)}")
    w = report.pure_signal_witness
    lines.append(f"pure_signal_count\t{len(w.entries)}")
    for entry in w.entries:
        lines.append(f"pure_{entry.symbol}\t{entry.corpus_label}\t{entry.endpoint_id}")
    if w.missing:
        lines.append(f"pure_missing\t{_labels_csv(w.missing)}")
    lines.append(f"pattern_digest\t{report.pattern_config.digest}")
    lines.append(f"use_extended\t{'true' if report.pattern_config.use_extended else 'false'}")
    lines.append(f"dialect_version\t{report.pattern_config.dialect_version}")
    return lines


def cmd_rank(args: argparse.Namespace) -> int:
    fmt = _format(args, _TEXT_FORMATS, "text")
    endpoints = _load_endpoints(args)
    patterns, pattern_source = _load_patterns(args)
    report = analysis.rank_report(endpoints, patterns, _scope(args), args.extended)
    if fmt == "text":
        lines = _render_rank_text(report, pattern_source)
    else:
        lines = _render_rank_kv(report)
    if args.order:
        order = [part.strip() for part in args.order.split(",") if part.strip()]
        cumulative = analysis.cumulative_ranks(endpoints, patterns, order, args.extended)
        for prefix, r in cumulative:
            if fmt == "text":
                lines.append(f"cumulative rank after {'+'.join(prefix)}: {r}")
            else:
                lines.append(f"cumulative_rank_{'+'.join(prefix)}\t{r}")
    _emit("\n".join(lines) + "\n", args.out)
    return 0 if report.independent else 3


def cmd_dark(args: argparse.Namespace) -> int:
    fmt = _format(args, _TEXT_FORMATS, "text")
    endpoints = _load_endpoints(args)
    patterns, _ = _load_patterns(args)
    scope = _scope(args)
    dark = analysis.dark_endpoints(endpoints, patterns, scope, args.extended)
    total = len(scope.apply(endpoints))
    pct = round(100.0 * len(dark) / total, 1) if total else 0.0
    if fmt == "text":
        lines = [f"dark endpoints: {len(dark)} of {total} ({pct}%)"]
        lines.extend(f"{corpus}\t{endpoint_id}" for corpus, endpoint_id in dark)
    else:
        lines = [
            f"endpoint_count\t{total}",
            f"dark_count\t{len(dark)}",
            f"dark_percent\t{pct}",
        ]
        lines.extend(f"dark\t{corpus}\t{endpoint_id}" for corpus, endpoint_id in dark)
    _emit("\n".join(lines) + "\n", args.out)
    return 0


def cmd_pure(args: argparse.Namespace) -> int:
    fmt = _format(args, _TEXT_FORMATS, "text")
    endpoints = _load_endpoints(args)
    patterns, _ = _load_patterns(args)
    matrix = analysis.scoped_matrix(endpoints, patterns, _scope(args), args.extended)
    witness = analysis.pure_signals(matrix)
    if fmt == "text":
        status = "complete" if witness.complete else "partial"
        lines = [f"pure-signal witness: {status} ({len(witness.entries)}/14)"]
        lines.extend(
            f"{e.symbol}\t{e.endpoint_id}\t({e.corpus_label})" for e in witness.entries
        )
        if witness.missing:
            lines.append(f"missing: {_labels_csv(witness.missing)}")
    else:
        lines = [
            f"witness_complete\t{'true' if witness.complete else 'false'}",
            f"witness_count\t{len(witness.entries)}",
        ]
        lines.extend(
            f"pure_{e.symbol}\t{e.corpus_label}\t{e.endpoint_id}" for e in witness.entries
        )
        if witness.missing:
            lines.append(f"missing\t{_labels_csv(witness.missing)}")
    _emit("\n".join(lines) + "\n", args.out)
    return 0


def cmd_deps(args: argparse.Namespace) -> int:
    fmt = _format(args, _TEXT_FORMATS, "text")
    endpoints = _load_endpoints(args)
    patterns, _ = _load_patterns(args)
    matrix = analysis.scoped_matrix(endpoints, patterns, _scope(args), args.extended)

    if args.check:
        columns = [part.strip() for part in args.check.split(",") if part.strip()]
        try:
            verdict = analysis.refute(matrix, columns)
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
        if fmt == "text":
            lines = [f"{verdict.verdict}: {verdict.reason}"]
            if verdict.violating_row:
                corpus, endpoint_id = verdict.violating_row
                lines.append(f"violating row: {endpoint_id} ({corpus})")
        else:
            lines = [
                f"verdict\t{verdict.verdict}",
                f"columns\t{_labels_csv(sorted(verdict.columns))}",
                f"reason\t{verdict.reason}",
            ]
            if verdict.violating_row:
                corpus, endpoint_id = verdict.violating_row
                lines.append(f"violating_row\t{corpus}\t{endpoint_id}")
        _emit("\n".join(lines) + "\n", args.out)
        return 3 if verdict.confirmed else 0

    certificates = analysis.nullspace(matrix)
    if fmt == "text":
        lines = [f"dependency certificates: {len(certificates)}"]
        for cert in certificates:
            lines.append(f"  {render_certificate(cert)}")
            for corpus, endpoint_id in cert.witness_rows[:5]:
                lines.append(f"    witness: {endpoint_id} ({corpus})")
    else:
        lines = [f"certificate_count\t{len(certificates)}"]
        for i, cert in enumerate(certificates):
            lines.append(f"certificate_{i}_columns\t{_labels_csv(cert.ordered_columns())}")
            lines.append(f"certificate_{i}_equation\t{render_certificate(cert)}")
    _emit("\n".join(lines) + "\n", args.out)
    return 3 if certificates else 0


def cmd_ablate(args: argparse.Namespace) -> int:
    fmt = _format(args, _TEXT_FORMATS, "text")
    endpoints = _load_endpoints(args)
    patterns, _ = _load_patterns(args)
    report = analysis.ablation(endpoints, patterns, _scope(args))
    if fmt == "text":
        lines = [
            f"scope: {report.scope.describe()}",
            f"endpoints: {report.endpoint_count}",
            f"rank frozen: {report.rank_frozen}",
            f"rank extended: {report.rank_extended}",
            f"dark frozen: {report.dark_frozen} "
            f"(coverage {report.coverage_percent_frozen}%)",
            f"dark extended: {report.dark_extended} "
            f"(coverage {report.coverage_percent_extended}%)",
            "per-dimension activation counts (frozen -> extended):",
        ]
        for sym, a, b in zip(
            CANONICAL_ORDER, report.coverage_frozen, report.coverage_extended
        ):
            lines.append(f"  {sym}: {a} -> {b}")
        if not report.rank_invariant:
            lines.insert(
                1,
                "WARNING: rank changed when the extended tier was enabled; "
                "the supplied extended rules are not rank-neutral",
            )
    else:
        lines = [
            f"scope\t{report.scope.describe()}",
            f"endpoint_count\t{report.endpoint_count}",
            f"rank_frozen\t{report.rank_frozen}",
            f"rank_extended\t{report.rank_extended}",
            f"rank_invariant\t{'true' if report.rank_invariant else 'false'}",
            f"dark_frozen\t{report.dark_frozen}",
            f"dark_extended\t{report.dark_extended}",
            f"coverage_percent_frozen\t{report.coverage_percent_frozen}",
            f"coverage_percent_extended\t{report.coverage_percent_extended}",
        ]
        for sym, a, b in zip(
            CANONICAL_ORDER, report.coverage_frozen, report.coverage_extended
        ):
            lines.append(f"coverage_{sym}\t{a}\t{b}")
    _emit("\n".join(lines) + "\n", args.out)
    return 0


def main(argv: Optional[List[str]] = None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (QuotientError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except Exception:
        print("internal error:", file=sys.stderr)
        traceback.print_exc()
        return 1


if __name__ == "__main__":
    sys.exit(main())
