"""Corpus-level measurements and falsification instruments.

Everything here is a pure function of (endpoints, patterns, scope):
rank reports, cumulative union ranks, dark-endpoint audits, frozen vs
extended ablation, and certificate refutation.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np

from .dimensions import CANONICAL_ORDER, N_DIMENSIONS, SYMBOL_SET
from .errors import ScopeError
from .gf2 import (
    ActivationMatrix,
    DependencyCertificate,
    RowLabel,
    SectionWitness,
    certificate_holds,
    first_violating_row,
    nullspace,
    pure_signals,
    rank,
)
from .ingest import Endpoint
from .patterns import PatternSet, activate_corpus

VERDICT_CONFIRMED = "CONFIRMED"
VERDICT_REJECTED = "REJECTED"


@dataclass(frozen=True)
class ScopeFilter:
    """Corpus-label filter; the empty filter selects everything."""

    corpus_labels: frozenset = frozenset()

    @classmethod
    def of(cls, labels: Optional[Iterable[str]]) -> "ScopeFilter":
        return cls(frozenset(labels or ()))

    def matches(self, corpus_label: str) -> bool:
        return not self.corpus_labels or corpus_label in self.corpus_labels

    def validate(self, endpoints: Sequence[Endpoint]) -> None:
        loaded = {ep.corpus_label for ep in endpoints}
        unknown = sorted(self.corpus_labels - loaded)
        if unknown:
            raise ScopeError(
                f"scope names corpora that are not loaded: {', '.join(unknown)} "
                f"(loaded: {', '.join(sorted(loaded)) or 'none'})"
            )

    def apply(self, endpoints: Sequence[Endpoint]) -> List[Endpoint]:
        self.validate(endpoints)
        return [ep for ep in endpoints if self.matches(ep.corpus_label)]

    def describe(self) -> str:
        if not self.corpus_labels:
            return "all"
        return ",".join(sorted(self.corpus_labels))


@dataclass(frozen=True)
class PatternConfig:
    """Provenance of the pattern set a report was computed under."""

    digest: str
    use_extended: bool
    dialect_version: str

    @classmethod
    def of(cls, patterns: PatternSet, use_extended: bool) -> "PatternConfig":
        return cls(patterns.digest(), use_extended, patterns.dialect_version)


@dataclass(frozen=True)
class RankReport:
    scope: ScopeFilter
    endpoint_count: int
    dark_count: int
    activated_dimensions: Tuple[str, ...]
    rank: int
    pivot_columns: Tuple[str, ...]
    certificates: Tuple[DependencyCertificate, ...]
    pure_signal_witness: SectionWitness
    pattern_config: PatternConfig

    @property
    def independent(self) -> bool:
        """True when no dependency exists among the activated columns."""
        return self.rank == len(self.activated_dimensions)

    @property
    def dark_percent(self) -> float:
        if self.endpoint_count == 0:
            return 0.0
        return round(100.0 * self.dark_count / self.endpoint_count, 1)

    @property
    def coverage_percent(self) -> float:
        if self.endpoint_count == 0:
            return 0.0
        return round(
            100.0 * (self.endpoint_count - self.dark_count) / self.endpoint_count, 1
        )


@dataclass(frozen=True)
class AblationReport:
    scope: ScopeFilter
    endpoint_count: int
    rank_frozen: int
    rank_extended: int
    coverage_frozen: Tuple[int, ...]
    coverage_extended: Tuple[int, ...]
    dark_frozen: int
    dark_extended: int

    @property
    def rank_invariant(self) -> bool:
        return self.rank_frozen == self.rank_extended

    def _pct(self, dark: int) -> float:
        if self.endpoint_count == 0:
            return 0.0
        return round(100.0 * (self.endpoint_count - dark) / self.endpoint_count, 1)

    @property
    def coverage_percent_frozen(self) -> float:
        return self._pct(self.dark_frozen)

    @property
    def coverage_percent_extended(self) -> float:
        return self._pct(self.dark_extended)


@dataclass(frozen=True)
class RefutationVerdict:
    verdict: str
    columns: frozenset
    reason: str
    violating_row: Optional[RowLabel] = None

    @property
    def confirmed(self) -> bool:
        return self.verdict == VERDICT_CONFIRMED


def scoped_matrix(
    endpoints: Sequence[Endpoint],
    patterns: PatternSet,
    scope: ScopeFilter = ScopeFilter(),
    use_extended: bool = True,
) -> ActivationMatrix:
    return activate_corpus(scope.apply(endpoints), patterns, use_extended)


def activation_counts(matrix: ActivationMatrix) -> Tuple[int, ...]:
    """Per-dimension activation counts in the matrix's column order."""
    if matrix.n_rows == 0:
        return (0,) * N_DIMENSIONS
    return tuple(int(n) for n in matrix.to_bit_array().sum(axis=0))


def rank_report(
    endpoints: Sequence[Endpoint],
    patterns: PatternSet,
    scope: ScopeFilter = ScopeFilter(),
    use_extended: bool = True,
) -> RankReport:
    matrix = scoped_matrix(endpoints, patterns, scope, use_extended)
    result = rank(matrix)
    return RankReport(
        scope=scope,
        endpoint_count=matrix.n_rows,
        dark_count=int((matrix.words == 0).sum()),
        activated_dimensions=matrix.activated_columns(),
        rank=result.rank,
        pivot_columns=result.pivot_columns,
        certificates=tuple(nullspace(matrix)),
        pure_signal_witness=pure_signals(matrix),
        pattern_config=PatternConfig.of(patterns, use_extended),
    )


def cumulative_ranks(
    endpoints: Sequence[Endpoint],
    patterns: PatternSet,
    order: Sequence[str],
    use_extended: bool = True,
) -> List[Tuple[Tuple[str, ...], int]]:
    """Rank of each prefix union of the given corpus order."""
    if len(set(order)) != len(order):
        raise ScopeError(f"corpus order repeats a label: {', '.join(order)}")
    ScopeFilter.of(order).validate(endpoints)
    out: List[Tuple[Tuple[str, ...], int]] = []
    for i in range(1, len(order) + 1):
        prefix = tuple(order[:i])
        matrix = scoped_matrix(endpoints, patterns, ScopeFilter.of(prefix), use_extended)
        out.append((prefix, rank(matrix).rank))
    return out


def dark_endpoints(
    endpoints: Sequence[Endpoint],
    patterns: PatternSet,
    scope: ScopeFilter = ScopeFilter(),
    use_extended: bool = True,
) -> List[RowLabel]:
    """(corpus_label, endpoint_id) of every endpoint activating nothing."""
    matrix = scoped_matrix(endpoints, patterns, scope, use_extended)
    return [
        matrix.row_labels[int(i)] for i in np.nonzero(matrix.words == 0)[0]
    ]


def ablation(
    endpoints: Sequence[Endpoint],
    patterns: PatternSet,
    scope: ScopeFilter = ScopeFilter(),
) -> AblationReport:
    frozen_matrix = scoped_matrix(endpoints, patterns, scope, use_extended=False)
    extended_matrix = scoped_matrix(endpoints, patterns, scope, use_extended=True)
    return AblationReport(
        scope=scope,
        endpoint_count=frozen_matrix.n_rows,
        rank_frozen=rank(frozen_matrix).rank,
        rank_extended=rank(extended_matrix).rank,
        coverage_frozen=activation_counts(frozen_matrix),
        coverage_extended=activation_counts(extended_matrix),
        dark_frozen=int((frozen_matrix.words == 0).sum()),
        dark_extended=int((extended_matrix.words == 0).sum()),
    )


def refute(matrix: ActivationMatrix, columns: Iterable[str]) -> RefutationVerdict:
    """Check a candidate dependency certificate against a matrix.

    CONFIRMED means the XOR of the named columns vanishes on every row
    and every named column is activated somewhere in scope; anything
    else is REJECTED with the concrete obstruction.
    """
    named = frozenset(columns)
    unknown = sorted(named - set(SYMBOL_SET))
    if unknown:
        raise ValueError(f"unknown dimension symbols: {', '.join(unknown)}")
    if not named:
        return RefutationVerdict(
            VERDICT_REJECTED, named, "empty column set is vacuous"
        )
    violating = first_violating_row(matrix, named)
    if violating is not None:
        corpus, endpoint_id = violating
        return RefutationVerdict(
            VERDICT_REJECTED,
            named,
            f"row {endpoint_id} ({corpus}) has odd parity over the named columns",
            violating_row=violating,
        )
    activated = set(matrix.activated_columns())
    silent = sorted(named - activated)
    if silent:
        return RefutationVerdict(
            VERDICT_REJECTED,
            named,
            "columns never activated in scope: " + ", ".join(silent),
        )
    return RefutationVerdict(
        VERDICT_CONFIRMED,
        named,
        "XOR of the named columns vanishes on every row and all columns are activated",
    )


def render_certificate(certificate: DependencyCertificate) -> str:
    """Human-readable "Y = A ⊕ C ⊕ B" form.

    The lexicographically-last column becomes the left-hand side; the
    remainder appear in canonical column order.
    """
    lhs = max(certificate.columns)
    rhs = [sym for sym in CANONICAL_ORDER if sym in certificate.columns and sym != lhs]
    if not rhs:
        return f"{lhs} = 0"
    return f"{lhs} = " + " ⊕ ".join(rhs)
