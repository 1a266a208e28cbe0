"""Bit-exact activation TSV emission and parsing.

One row per endpoint: corpus, endpoint id, fourteen '0'/'1' dimension
cells in canonical column order, then the decimal activation count.
LF line endings and UTF-8 unconditionally, so output is byte-identical
across platforms and amenable to golden-file testing.
"""

from __future__ import annotations

from pathlib import Path
from typing import List, Union

from .dimensions import CANONICAL_ORDER, N_DIMENSIONS
from .errors import TsvError
from .gf2 import ActivationMatrix

HEADER_COLUMNS = ("corpus", "endpoint") + CANONICAL_ORDER + ("activated_dims",)
HEADER_LINE = "\t".join(HEADER_COLUMNS)


def render_activation_tsv(matrix: ActivationMatrix) -> str:
    if matrix.column_labels != CANONICAL_ORDER:
        raise ValueError("TSV emission requires canonical column order")
    lines: List[str] = [HEADER_LINE]
    bits = matrix.to_bit_array()
    weights = matrix.row_weights()
    for i, (corpus, endpoint_id) in enumerate(matrix.row_labels):
        cells = [corpus, endpoint_id]
        cells.extend("1" if b else "0" for b in bits[i])
        cells.append(str(int(weights[i])))
        lines.append("\t".join(cells))
    return "\n".join(lines) + "\n"


def write_activation_tsv(matrix: ActivationMatrix, path: Union[str, Path]) -> None:
    # Bytes out: immune to platform newline translation.
    Path(path).write_bytes(render_activation_tsv(matrix).encode("utf-8"))


def parse_activation_tsv(text: str, source: str = "<string>") -> ActivationMatrix:
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if not lines:
        raise TsvError(f"{source}: empty file")
    if lines[0] != HEADER_LINE:
        raise TsvError(f"{source}:1: header does not match the activation schema")
    rows: List[int] = []
    labels: List[tuple] = []
    for lineno, line in enumerate(lines[1:], start=2):
        fields = line.split("\t")
        if len(fields) != len(HEADER_COLUMNS):
            raise TsvError(
                f"{source}:{lineno}: expected {len(HEADER_COLUMNS)} fields, "
                f"got {len(fields)}"
            )
        corpus, endpoint_id = fields[0], fields[1]
        word = 0
        for bit, cell in enumerate(fields[2 : 2 + N_DIMENSIONS]):
            if cell == "1":
                word |= 1 << bit
            elif cell != "0":
                raise TsvError(
                    f"{source}:{lineno}: dimension cell must be '0' or '1', "
                    f"got {cell!r}"
                )
        declared = fields[-1]
        if not declared.isdigit() or int(declared) != bin(word).count("1"):
            raise TsvError(
                f"{source}:{lineno}: activated_dims {declared!r} does not match "
                f"the row's bit count"
            )
        rows.append(word)
        labels.append((corpus, endpoint_id))
    try:
        return ActivationMatrix.from_rows(rows, labels)
    except ValueError as exc:
        raise TsvError(f"{source}: {exc}") from exc


def read_activation_tsv(path: Union[str, Path]) -> ActivationMatrix:
    path = Path(path)
    try:
        text = path.read_bytes().decode("utf-8")
    except OSError as exc:
        raise TsvError(f"cannot read {path}: {exc}") from exc
    except UnicodeDecodeError as exc:
        raise TsvError(f"{path}: not valid UTF-8: {exc}") from exc
    return parse_activation_tsv(text, source=str(path))
