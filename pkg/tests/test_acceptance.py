"""Acceptance gate: one test per criterion, one PASS/FAIL line each.

Run with ``pytest -v tests/test_acceptance.py``; each criterion also
prints an ``ACCEPTANCE n: PASS`` line (visible with ``-s`` or on
failure). Criterion 9 runs only when the pinned corpora and the
canonical pattern file are supplied via environment variables; its
mismatches are reported as falsification findings, not test failures.
"""

from __future__ import annotations

import os
import time

import numpy as np
import pytest

import quotient as q
from conftest import DATA_DIR
from gf2_oracle import brute_force_rank
from quotient.dimensions import BIT_INDEX

REFERENCE_MANIFEST_ENV = "QUOTIENT_REFERENCE_MANIFEST"
PATTERNS_ENV = "QUOTIENT_PATTERNS"

N_RANDOM_MATRICES = 1_000
N_DARK_FIXTURES = 200


def _report(criterion: int, ok: bool, detail: str) -> None:
    print(f"ACCEPTANCE {criterion}: {'PASS' if ok else 'FAIL'} - {detail}")
    assert ok, f"criterion {criterion}: {detail}"


def _make(rows, corpus="X"):
    labels = [(corpus, f"op{i}") for i in range(len(rows))]
    return q.ActivationMatrix.from_rows(rows, labels)


@pytest.fixture(scope="module")
def random_matrices():
    rng = np.random.default_rng(20260814)
    out = []
    for _ in range(N_RANDOM_MATRICES):
        n = int(rng.integers(0, 13))
        out.append([int(w) for w in rng.integers(0, 1 << 14, size=n)])
    return out


def test_criterion_1_rank_matches_oracle_on_1000_matrices(random_matrices):
    start = time.perf_counter()
    mismatches = 0
    for rows in random_matrices:
        if q.rank(_make(rows)).rank != brute_force_rank(rows):
            mismatches += 1
    elapsed = time.perf_counter() - start
    _report(
        1,
        mismatches == 0 and elapsed < 10.0,
        f"{N_RANDOM_MATRICES} random matrices, {mismatches} mismatches, "
        f"{elapsed:.2f}s (limit 10s)",
    )


def test_criterion_2_rank_nullity_on_the_same_matrices(random_matrices):
    violations = 0
    for rows in random_matrices:
        matrix = _make(rows)
        k = len(matrix.activated_columns())
        if q.rank(matrix).rank + len(q.nullspace(matrix)) != k:
            violations += 1
    _report(
        2,
        violations == 0,
        f"rank + nullspace size == activated columns on all "
        f"{N_RANDOM_MATRICES} matrices ({violations} violations)",
    )


def test_criterion_3_basis_fixture_identity(basis_endpoints, default_patterns):
    start = time.perf_counter()
    matrix = q.activate_corpus(basis_endpoints, default_patterns)
    result = q.rank(matrix)
    witness = q.pure_signals(matrix)
    exposed = q.expose_identity(matrix, witness)
    elapsed = time.perf_counter() - start
    expected_order = tuple("ATBDSYRPCFLVIM")
    ok = (
        result.rank == 14
        and witness.complete
        and exposed.column_labels == expected_order
        and elapsed < 1.0
    )
    _report(
        3,
        ok,
        f"rank {result.rank}, witness complete {witness.complete}, "
        f"column order {','.join(exposed.column_labels)}, {elapsed:.3f}s (limit 1s)",
    )


def test_criterion_4_dependency_mechanics():
    start = time.perf_counter()
    bit = lambda s: 1 << BIT_INDEX[s]  # noqa: E731
    rows = [bit(s) for s in "TPDSRFIV"]
    rows += [
        bit("A") | bit("Y"),
        bit("C") | bit("Y"),
        bit("B") | bit("Y"),
        bit("Y") | bit("A") | bit("C") | bit("B"),
    ]
    matrix = _make(rows, corpus="SYN")
    activated = len(matrix.activated_columns())
    result = q.rank(matrix)
    certs = q.nullspace(matrix)
    oracle = brute_force_rank(rows)
    elapsed = time.perf_counter() - start
    ok = (
        activated == 12
        and result.rank == 11
        and oracle == 11
        and len(certs) == 1
        and certs[0].columns == frozenset({"Y", "A", "C", "B"})
        and elapsed < 1.0
    )
    _report(
        4,
        ok,
        f"12-column fixture: rank {result.rank} (oracle {oracle}), "
        f"certificates {[sorted(c.columns) for c in certs]}, "
        f"{elapsed:.3f}s (limit 1s)",
    )


def test_criterion_5_dark_invariance_over_200_random_fixtures():
    rng = np.random.default_rng(5)
    failures = []
    for i in range(N_DARK_FIXTURES):
        n = int(rng.integers(1, 13))
        rows = [int(w) for w in rng.integers(0, 1 << 14, size=n)]
        # force at least one dark row into most fixtures
        if rng.integers(0, 4) and rows:
            rows[int(rng.integers(0, len(rows)))] = 0
        full = _make(rows)
        lit_rows = [(j, w) for j, w in enumerate(rows) if w]
        trimmed = q.ActivationMatrix.from_rows(
            [w for _, w in lit_rows], [("X", f"op{j}") for j, _ in lit_rows]
        )
        same_rank = q.rank(full).rank == q.rank(trimmed).rank
        same_certs = [c.columns for c in q.nullspace(full)] == [
            c.columns for c in q.nullspace(trimmed)
        ]
        same_witness = (
            q.pure_signals(full).assignments == q.pure_signals(trimmed).assignments
        )
        if not (same_rank and same_certs and same_witness):
            failures.append(i)
    _report(
        5,
        not failures,
        f"deleting dark rows preserved rank, certificates and witness on "
        f"{N_DARK_FIXTURES} random fixtures (failures: {failures or 'none'})",
    )


def test_criterion_6_ablation_invariance(ablation_endpoints, default_patterns):
    start = time.perf_counter()
    report = q.ablation(ablation_endpoints, default_patterns)
    elapsed = time.perf_counter() - start
    ok = (
        report.rank_frozen == report.rank_extended
        and report.dark_extended < report.dark_frozen
        and elapsed < 1.0
    )
    _report(
        6,
        ok,
        f"rank {report.rank_frozen} == {report.rank_extended}, "
        f"dark {report.dark_extended} < {report.dark_frozen}, "
        f"{elapsed:.3f}s (limit 1s)",
    )


def test_criterion_7_tsv_golden_and_round_trip(
    tmp_path, basis_endpoints, default_patterns
):
    from quotient.cli import main

    golden = DATA_DIR / "basis_activation.tsv"
    out = tmp_path / "activation.tsv"
    code = main(
        [
            "activate",
            "--corpus",
            f"BASIS={DATA_DIR / 'basis_corpus.yaml'}",
            "--out",
            str(out),
        ]
    )
    byte_identical = code == 0 and out.read_bytes() == golden.read_bytes()
    matrix = q.activate_corpus(basis_endpoints, default_patterns)
    round_trips = q.read_activation_tsv(out) == matrix
    _report(
        7,
        byte_identical and round_trips,
        f"cmd_activate byte-identical to golden: {byte_identical}, "
        f"round trip equal: {round_trips}",
    )


def test_criterion_8_traversal_sentinels():
    # (a) depth ceiling: level-4 sentinel kept, level-5 dropped
    schema: dict = {}
    for name in reversed(["s1", "s2", "s3", "s4", "s5"]):
        schema = {"properties": {name: schema}}
    strings = q.traverse_schema(schema, 0, {}).strings
    depth_ok = "s4" in strings and "s5" not in strings

    # (b) $ref contributes its immediate name only
    op = {
        "responses": {
            "200": {
                "content": {
                    "application/json": {
                        "schema": {"$ref": "#/components/schemas/NostroHolding"}
                    }
                }
            }
        }
    }
    doc = {"components": {"schemas": {"NostroHolding": {"description": "REF-BODY"}}}}
    signal = q.extract_signal(op, doc, path="/r")
    ref_ok = "nostro_holding" in signal and "ref-body" not in signal

    # (c) field-order concatenation: path, op fields, tags, params, bodies
    op2 = {
        "operationId": "OpIdent",
        "summary": "SumText",
        "description": "DescText",
        "tags": ["TagOne"],
        "parameters": [{"name": "parmOne", "description": "parm desc"}],
        "requestBody": {
            "content": {"application/json": {"schema": {"title": "ReqTitle"}}}
        },
        "responses": {
            "200": {"content": {"application/json": {"schema": {"title": "RespTitle"}}}}
        },
    }
    sig = q.extract_signal(op2, {}, path="/ordered")
    order = [
        "/ordered",
        "op_ident",
        "sum_text",
        "desc_text",
        "tag_one",
        "parm_one",
        "req_title",
        "resp_title",
    ]
    positions = [sig.find(tok) for tok in order]
    order_ok = -1 not in positions and positions == sorted(positions)

    _report(
        8,
        depth_ok and ref_ok and order_ok,
        f"depth ceiling {depth_ok}, ref name-only {ref_ok}, "
        f"field order {order_ok}",
    )


def test_criterion_9_reference_number_reproduction():
    manifest_path = os.environ.get(REFERENCE_MANIFEST_ENV)
    if not manifest_path:
        pytest.skip(
            f"set {REFERENCE_MANIFEST_ENV} to a manifest of the pinned corpora "
            f"(labels OBIE, CDR, BIAN, PSD2) and optionally {PATTERNS_ENV} "
            f"to the canonical pattern file to run the reproduction"
        )

    patterns_path = os.environ.get(PATTERNS_ENV)
    patterns = (
        q.load_pattern_set(patterns_path) if patterns_path else q.default_pattern_set()
    )

    start = time.perf_counter()
    endpoints = q.load_run(q.parse_manifest_file(manifest_path))
    from quotient.analysis import ScopeFilter

    expectations = []  # (name, expected, observed)

    bian = [ep for ep in endpoints if ep.corpus_label == "BIAN"]
    expectations.append(("BIAN endpoint count", 4484, len(bian)))

    for label, expected_rank in (("OBIE", 10), ("CDR", 10), ("BIAN", 13), ("PSD2", 11)):
        report = q.rank_report(endpoints, patterns, ScopeFilter.of([label]))
        expectations.append((f"{label} rank", expected_rank, report.rank))

    union = q.rank_report(endpoints, patterns)
    expectations.append(("union rank", 14, union.rank))

    order = ["OBIE", "CDR", "PSD2", "BIAN"]
    cumulative = q.cumulative_ranks(endpoints, patterns, order)
    observed_progression = [r for _, r in cumulative]
    expectations.append(
        ("cumulative progression", [10, 13, 13, 14], observed_progression)
    )

    dark_frozen = q.dark_endpoints(
        endpoints, patterns, ScopeFilter.of(["BIAN"]), use_extended=False
    )
    dark_extended = q.dark_endpoints(
        endpoints, patterns, ScopeFilter.of(["BIAN"]), use_extended=True
    )
    expectations.append(("BIAN dark (frozen)", 2799, len(dark_frozen)))
    expectations.append(("BIAN dark (extended)", 2155, len(dark_extended)))

    elapsed = time.perf_counter() - start

    findings = [
        f"{name}: expected {expected}, observed {observed}"
        for name, expected, observed in expectations
        if expected != observed
    ]
    for finding in findings:
        print(f"FALSIFICATION FINDING: {finding}")
    source = patterns_path or "reconstructed default patterns"
    _report(
        9,
        elapsed < 60.0,
        f"reproduction ran in {elapsed:.1f}s (limit 60s) with {source}; "
        f"{len(findings)} finding(s) "
        f"{'- mismatches are findings, not failures' if findings else '- all values reproduced'}",
    )
