from __future__ import annotations

from pathlib import Path

import numpy as np
import pytest

import quotient as q
from quotient import _kernels

DATA_DIR = Path(__file__).parent / "data"


@pytest.fixture(scope="session", autouse=True)
def warm_kernels():
    # JIT compile (or load from cache) before any timed assertion runs.
    words = np.arange(16, dtype=np.uint16)
    _kernels.eliminate_numpy(words, 14)
    try:
        _kernels.eliminate_numba(words, 14)
    except ImportError:
        pass


@pytest.fixture(scope="session")
def default_patterns() -> q.PatternSet:
    return q.default_pattern_set()


@pytest.fixture(scope="session")
def basis_endpoints():
    manifest = q.CorpusManifest("BASIS", (str(DATA_DIR / "basis_corpus.yaml"),))
    return q.load_corpus(manifest)


@pytest.fixture(scope="session")
def ablation_endpoints():
    manifest = q.CorpusManifest("ABLATE", (str(DATA_DIR / "ablation_corpus.yaml"),))
    return q.load_corpus(manifest)


@pytest.fixture
def make_matrix():
    """Factory for small matrices with synthetic row labels."""

    def _make(rows, corpus="X") -> q.ActivationMatrix:
        rows = list(rows)
        labels = [(corpus, f"op{i}") for i in range(len(rows))]
        return q.ActivationMatrix.from_rows(rows, labels)

    return _make
