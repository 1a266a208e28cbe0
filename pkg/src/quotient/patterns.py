"""Pattern rules and dimensional activation.

A pattern set carries one frozen rule per dimension and any number of
extended synonym rules. Rules are regular expressions in the qp-re-1
dialect (alternation, character classes, bounded repetition,
single-character lookarounds; no backreferences) and are applied with
unanchored search against lowercased signal strings.
"""

from __future__ import annotations

import hashlib
import logging
import re
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Iterable, List, Sequence, Tuple

from .dimensions import BIT_INDEX, CANONICAL_ORDER, N_DIMENSIONS, SYMBOL_SET, mask_symbols
from .errors import PatternError

logger = logging.getLogger(__name__)

DIALECT_VERSION = "qp-re-1"

TIER_FROZEN = "frozen"
TIER_EXTENDED = "extended"
_TIERS = (TIER_FROZEN, TIER_EXTENDED)

# Numbered and named backreferences are outside the dialect.
_BACKREF = re.compile(r"\\[1-9]|\(\?P=")


@dataclass(frozen=True)
class PatternRule:
    """A single activation rule binding one expression to one dimension."""

    dimension: str
    tier: str
    expression: str
    note: str = ""

    def compiled(self) -> re.Pattern[str]:
        return re.compile(self.expression)


def _validate_rule(rule: PatternRule, where: str) -> re.Pattern[str]:
    if rule.dimension not in SYMBOL_SET:
        raise PatternError(f"{where}: unknown dimension symbol {rule.dimension!r}")
    if rule.tier not in _TIERS:
        raise PatternError(f"{where}: unknown tier {rule.tier!r} (expected frozen or extended)")
    if _BACKREF.search(rule.expression):
        raise PatternError(
            f"{where}: backreferences are outside the {DIALECT_VERSION} dialect: "
            f"{rule.expression!r}"
        )
    try:
        return re.compile(rule.expression)
    except re.error as exc:
        raise PatternError(f"{where}: expression does not compile: {exc}") from exc


class PatternSet:
    """An ordered, validated collection of frozen and extended rules.

    Frozen rules cover every dimension exactly once. Rules are held in
    canonical dimension order regardless of input order, so two sets
    built from the same rules serialize identically.
    """

    def __init__(self, rules: Iterable[PatternRule], dialect_version: str = DIALECT_VERSION):
        if dialect_version != DIALECT_VERSION:
            raise PatternError(f"unsupported dialect {dialect_version!r}")
        self.dialect_version = dialect_version

        frozen: List[PatternRule] = []
        extended: List[PatternRule] = []
        for i, rule in enumerate(rules):
            _validate_rule(rule, f"rule {i}")
            (frozen if rule.tier == TIER_FROZEN else extended).append(rule)

        seen = [r.dimension for r in frozen]
        for sym in CANONICAL_ORDER:
            n = seen.count(sym)
            if n == 0:
                raise PatternError(f"frozen tier is missing dimension {sym}")
            if n > 1:
                raise PatternError(f"frozen tier has {n} rules for dimension {sym}")

        order = {sym: i for i, sym in enumerate(CANONICAL_ORDER)}
        frozen.sort(key=lambda r: order[r.dimension])
        extended.sort(key=lambda r: order[r.dimension])

        self.frozen_rules: Tuple[PatternRule, ...] = tuple(frozen)
        self.extended_rules: Tuple[PatternRule, ...] = tuple(extended)
        self._frozen_compiled = [r.compiled() for r in self.frozen_rules]
        self._extended_compiled = [
            (BIT_INDEX[r.dimension], r.compiled()) for r in self.extended_rules
        ]

    @property
    def rules(self) -> Tuple[PatternRule, ...]:
        return self.frozen_rules + self.extended_rules

    def match(self, signal: str, use_extended: bool = True) -> int:
        """Activation bitmask for one signal, bit i = CANONICAL_ORDER[i]."""
        word = 0
        for bit, pattern in enumerate(self._frozen_compiled):
            if pattern.search(signal):
                word |= 1 << bit
        if use_extended:
            for bit, pattern in self._extended_compiled:
                if not word & (1 << bit) and pattern.search(signal):
                    word |= 1 << bit
        return word

    def serialize(self) -> str:
        """Canonical text form: one tab-separated line per rule, LF endings."""
        lines = []
        for rule in self.rules:
            fields = [rule.dimension, rule.tier, rule.expression]
            if rule.note:
                fields.append(rule.note)
            lines.append("\t".join(fields))
        return "\n".join(lines) + "\n"

    def digest(self) -> str:
        return hashlib.sha256(self.serialize().encode("utf-8")).hexdigest()

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PatternSet):
            return NotImplemented
        return self.rules == other.rules and self.dialect_version == other.dialect_version

    def __hash__(self) -> int:
        return hash((self.rules, self.dialect_version))

    def __repr__(self) -> str:
        return (
            f"PatternSet(frozen={len(self.frozen_rules)}, "
            f"extended={len(self.extended_rules)}, digest={self.digest()[:12]})"
        )


@dataclass(frozen=True)
class ActivationVector:
    """One endpoint's activation pattern over the 14 dimensions."""

    word: int

    def __post_init__(self) -> None:
        if not 0 <= self.word < (1 << N_DIMENSIONS):
            raise ValueError(f"activation word out of range: {self.word:#x}")

    def __getitem__(self, symbol: str) -> bool:
        return bool(self.word >> BIT_INDEX[symbol] & 1)

    @property
    def weight(self) -> int:
        return bin(self.word).count("1")

    def symbols(self) -> Tuple[str, ...]:
        return mask_symbols(self.word)

    def bits(self) -> Tuple[int, ...]:
        """0/1 per dimension in canonical column order."""
        return tuple(self.word >> i & 1 for i in range(N_DIMENSIONS))


def match_endpoint(signal: str, patterns: PatternSet, use_extended: bool = True) -> ActivationVector:
    return ActivationVector(patterns.match(signal, use_extended))


def activate_corpus(endpoints: Sequence, patterns: PatternSet, use_extended: bool = True):
    """Activation matrix with one row per endpoint, in endpoint order.

    Columns follow the canonical symbol order. Row labels are the
    (corpus_label, endpoint_id) pairs, so endpoint identity survives
    into rank reports and certificates.
    """
    from .gf2 import ActivationMatrix

    rows = [patterns.match(ep.signal, use_extended) for ep in endpoints]
    labels = [(ep.corpus_label, ep.endpoint_id) for ep in endpoints]
    return ActivationMatrix.from_rows(rows, labels)


def _parse_line(line: str, where: str) -> PatternRule:
    fields = line.split("\t", 3)
    if len(fields) < 3:
        raise PatternError(
            f"{where}: expected SYMBOL<TAB>TIER<TAB>EXPRESSION[<TAB>NOTE], got {line!r}"
        )
    symbol, tier, expression = fields[0], fields[1], fields[2]
    note = fields[3].strip() if len(fields) == 4 else ""
    rule = PatternRule(symbol.strip(), tier.strip(), expression.strip(), note)
    _validate_rule(rule, where)
    return rule


def parse_pattern_text(text: str, source: str = "<string>") -> PatternSet:
    rules = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip("\n\r")
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        rules.append(_parse_line(line, f"{source}:{lineno}"))
    try:
        return PatternSet(rules)
    except PatternError as exc:
        raise PatternError(f"{source}: {exc}") from exc


def load_pattern_set(path: str | Path) -> PatternSet:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise PatternError(f"cannot read pattern file {path}: {exc}") from exc
    return parse_pattern_text(text, source=str(path))


def save_pattern_set(patterns: PatternSet, path: str | Path) -> None:
    """Write the canonical serialization; load_pattern_set round-trips it."""
    Path(path).write_text(patterns.serialize(), encoding="utf-8")


def default_pattern_set() -> PatternSet:
    """The packaged reconstructed rule set."""
    ref = resources.files(__package__) / "data" / "default_patterns.txt"
    with resources.as_file(ref) as path:
        return load_pattern_set(path)
