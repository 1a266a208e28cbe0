"""Bit-exact linear algebra over GF(2) for activation matrices.

Rows live in GF(2)^14 and are bit-packed into uint16 words; bit i of a
word corresponds to column_labels[i] of the owning matrix. Elimination
runs on a working copy, so every operation here is pure.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from . import _kernels
from .dimensions import CANONICAL_ORDER, N_DIMENSIONS, SYMBOL_SET

_WORD_LIMIT = 1 << N_DIMENSIONS

# Row weights via table lookup; words are validated to stay below 2^14.
_POPCOUNT = np.array([bin(i).count("1") for i in range(_WORD_LIMIT)], dtype=np.uint8)

RowLabel = Tuple[str, str]  # (corpus_label, endpoint_id)


@dataclass(frozen=True, eq=False)
class ActivationMatrix:
    """Activation vectors for a set of endpoints, one bit-packed row each."""

    words: np.ndarray
    row_labels: Tuple[RowLabel, ...]
    column_labels: Tuple[str, ...] = CANONICAL_ORDER

    def __post_init__(self) -> None:
        words = np.asarray(self.words, dtype=np.uint16).reshape(-1).copy()
        if words.size and int(words.max()) >= _WORD_LIMIT:
            raise ValueError("activation word exceeds the 14-bit column space")
        words.setflags(write=False)
        object.__setattr__(self, "words", words)
        object.__setattr__(self, "row_labels", tuple(self.row_labels))
        object.__setattr__(self, "column_labels", tuple(self.column_labels))
        if len(self.row_labels) != words.shape[0]:
            raise ValueError(
                f"{words.shape[0]} rows but {len(self.row_labels)} row labels"
            )
        if len(set(self.row_labels)) != len(self.row_labels):
            raise ValueError("row labels must be unique")
        if sorted(self.column_labels) != sorted(SYMBOL_SET):
            raise ValueError(
                f"column labels must be a permutation of the 14 symbols, "
                f"got {self.column_labels!r}"
            )

    @classmethod
    def from_rows(
        cls,
        rows: Iterable[int],
        row_labels: Iterable[RowLabel],
        column_labels: Sequence[str] = CANONICAL_ORDER,
    ) -> "ActivationMatrix":
        words = np.fromiter((int(r) for r in rows), dtype=np.uint16)
        return cls(words, tuple(row_labels), tuple(column_labels))

    @property
    def n_rows(self) -> int:
        return int(self.words.shape[0])

    @property
    def n_cols(self) -> int:
        return N_DIMENSIONS

    def bit_for(self, symbol: str) -> int:
        """Bit position of a column symbol in this matrix's packing."""
        try:
            return self.column_labels.index(symbol)
        except ValueError:
            raise KeyError(f"unknown column symbol {symbol!r}") from None

    def mask_for(self, symbols: Iterable[str]) -> int:
        mask = 0
        for sym in symbols:
            mask |= 1 << self.bit_for(sym)
        return mask

    @property
    def activated_mask(self) -> int:
        return int(np.bitwise_or.reduce(self.words)) if self.n_rows else 0

    def activated_columns(self) -> Tuple[str, ...]:
        """Columns with at least one set bit, in this matrix's column order."""
        mask = self.activated_mask
        return tuple(
            sym for i, sym in enumerate(self.column_labels) if mask >> i & 1
        )

    def row_weights(self) -> np.ndarray:
        return _POPCOUNT[self.words]

    def to_bit_array(self) -> np.ndarray:
        """Dense 0/1 array, shape (n_rows, 14), column i = column_labels[i]."""
        shifts = np.arange(N_DIMENSIONS, dtype=np.uint16)
        return ((self.words[:, None] >> shifts) & 1).astype(np.uint8)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ActivationMatrix):
            return NotImplemented
        return (
            self.column_labels == other.column_labels
            and self.row_labels == other.row_labels
            and np.array_equal(self.words, other.words)
        )

    def __repr__(self) -> str:
        return (
            f"ActivationMatrix(rows={self.n_rows}, "
            f"activated={len(self.activated_columns())})"
        )


@dataclass(frozen=True)
class RankResult:
    rank: int
    pivot_columns: Tuple[str, ...]
    reduced_rows: Tuple[int, ...]

    def __post_init__(self) -> None:
        if not (self.rank == len(self.pivot_columns) == len(self.reduced_rows)):
            raise ValueError("rank, pivot count and reduced row count disagree")


@dataclass(frozen=True)
class DependencyCertificate:
    """A nonzero column combination c with M·c = 0 over the scope."""

    columns: frozenset
    scope: Tuple[str, ...]
    witness_rows: Tuple[RowLabel, ...] = ()

    def __post_init__(self) -> None:
        if not self.columns:
            raise ValueError("a dependency certificate names at least one column")
        object.__setattr__(self, "columns", frozenset(self.columns))

    def ordered_columns(self) -> Tuple[str, ...]:
        return tuple(sym for sym in CANONICAL_ORDER if sym in self.columns)


@dataclass(frozen=True)
class WitnessEntry:
    symbol: str
    corpus_label: str
    endpoint_id: str
    row_index: int


@dataclass(frozen=True)
class SectionWitness:
    """Pure-signal endpoints, at most one per dimension."""

    entries: Tuple[WitnessEntry, ...]
    column_labels: Tuple[str, ...] = CANONICAL_ORDER

    @property
    def assignments(self) -> Dict[str, str]:
        return {e.symbol: e.endpoint_id for e in self.entries}

    @property
    def missing(self) -> Tuple[str, ...]:
        assigned = {e.symbol for e in self.entries}
        return tuple(sym for sym in self.column_labels if sym not in assigned)

    @property
    def complete(self) -> bool:
        return len(self.entries) == N_DIMENSIONS


def _scope_of(matrix: ActivationMatrix) -> Tuple[str, ...]:
    return tuple(sorted({corpus for corpus, _ in matrix.row_labels}))


def rank(matrix: ActivationMatrix) -> RankResult:
    """Gaussian elimination rank; the input matrix is not modified."""
    reduced, pivots = _kernels.eliminate(matrix.words, N_DIMENSIONS)
    r = int(pivots.shape[0])
    return RankResult(
        rank=r,
        pivot_columns=tuple(matrix.column_labels[int(c)] for c in pivots),
        reduced_rows=tuple(int(w) for w in reduced[:r]),
    )


def parity_of(matrix: ActivationMatrix, mask: int) -> np.ndarray:
    """Per-row XOR parity of the masked bits (0 = even)."""
    x = np.bitwise_and(matrix.words, np.uint16(mask))
    x = np.bitwise_xor(x, x >> np.uint16(8))
    x = np.bitwise_xor(x, x >> np.uint16(4))
    x = np.bitwise_xor(x, x >> np.uint16(2))
    x = np.bitwise_xor(x, x >> np.uint16(1))
    return x & np.uint16(1)


def certificate_holds(matrix: ActivationMatrix, columns: Iterable[str]) -> bool:
    mask = matrix.mask_for(columns)
    return not bool(parity_of(matrix, mask).any())


def first_violating_row(
    matrix: ActivationMatrix, columns: Iterable[str]
) -> Optional[RowLabel]:
    """First row (in row order) with odd parity over the named columns."""
    mask = matrix.mask_for(columns)
    bad = np.nonzero(parity_of(matrix, mask))[0]
    if bad.size == 0:
        return None
    return matrix.row_labels[int(bad[0])]


def _witnesses_for(matrix: ActivationMatrix, mask: int) -> Tuple[RowLabel, ...]:
    # Rows touching >= 2 named columns tie those columns together.
    overlap = _POPCOUNT[np.bitwise_and(matrix.words, np.uint16(mask))]
    return tuple(matrix.row_labels[int(i)] for i in np.nonzero(overlap >= 2)[0])


def nullspace(matrix: ActivationMatrix) -> List[DependencyCertificate]:
    """Canonical basis of the column nullspace, restricted to activated columns.

    Never-activated columns are an incompleteness fact, not a dependency,
    so they contribute neither vectors nor coefficients. The free-column
    construction over the reduced form yields the unique reduced basis,
    one certificate per non-pivot activated column.
    """
    result = rank(matrix)
    pivot_bits = [matrix.bit_for(sym) for sym in result.pivot_columns]
    activated = matrix.activated_mask
    certificates: List[DependencyCertificate] = []
    scope = _scope_of(matrix)
    for free_bit in range(N_DIMENSIONS):
        if not (activated >> free_bit & 1) or free_bit in pivot_bits:
            continue
        combo = 1 << free_bit
        for row, pivot_bit in zip(result.reduced_rows, pivot_bits):
            if row >> free_bit & 1:
                combo |= 1 << pivot_bit
        columns = frozenset(
            matrix.column_labels[i] for i in range(N_DIMENSIONS) if combo >> i & 1
        )
        certificates.append(
            DependencyCertificate(
                columns=columns,
                scope=scope,
                witness_rows=_witnesses_for(matrix, combo),
            )
        )
    return certificates


def pure_signals(matrix: ActivationMatrix) -> SectionWitness:
    """First pure-signal row per dimension, in this matrix's column order."""
    entries = []
    for bit, sym in enumerate(matrix.column_labels):
        hits = np.nonzero(matrix.words == np.uint16(1 << bit))[0]
        if hits.size == 0:
            continue
        row = int(hits[0])
        corpus, endpoint_id = matrix.row_labels[row]
        entries.append(WitnessEntry(sym, corpus, endpoint_id, row))
    return SectionWitness(entries=tuple(entries), column_labels=matrix.column_labels)


def expose_identity(
    matrix: ActivationMatrix, witness: SectionWitness
) -> ActivationMatrix:
    """Permute witness rows and columns so the top-left block is identity.

    Rows are the 14 witness endpoints in first-occurrence order; the new
    column order (the reported permutation) is each row's witnessed
    dimension, readable from the result's column_labels.
    """
    if not witness.complete:
        missing = ", ".join(witness.missing)
        raise ValueError(f"witness is incomplete, missing dimensions: {missing}")
    for e in witness.entries:
        expected = np.uint16(1 << matrix.bit_for(e.symbol))
        if e.row_index >= matrix.n_rows or matrix.words[e.row_index] != expected:
            raise ValueError(
                f"witness row for {e.symbol} does not match the matrix"
            )
    ordered = sorted(witness.entries, key=lambda e: e.row_index)
    new_columns = tuple(e.symbol for e in ordered)
    words = np.array([1 << i for i in range(N_DIMENSIONS)], dtype=np.uint16)
    labels = tuple((e.corpus_label, e.endpoint_id) for e in ordered)
    return ActivationMatrix(words=words, row_labels=labels, column_labels=new_columns)
