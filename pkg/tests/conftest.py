import sys
from pathlib import Path

import numpy as np
import pytest
from hypothesis import strategies as st

from hypepart import Hypergraph

sys.path.insert(0, str(Path(__file__).parent))


def random_hypergraph(rng: np.random.Generator, n: int, m: int, max_size: int = 5) -> Hypergraph:
    edges = []
    for _ in range(m):
        size = int(rng.integers(1, min(max_size, n) + 1))
        edges.append(rng.choice(n, size=size, replace=False).tolist())
    return Hypergraph(n, edges)


@st.composite
def hypergraphs(draw, max_n=20, max_m=25, min_n=1):
    n = draw(st.integers(min_n, max_n))
    edges = draw(
        st.lists(
            st.lists(st.integers(0, n - 1), min_size=1, max_size=min(n, 6)),
            max_size=max_m,
        )
    )
    return Hypergraph(n, edges)


_ACCEPTANCE: list[tuple[str, bool, str]] = []


@pytest.fixture(scope="session")
def acceptance_log():
    return _ACCEPTANCE


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok, detail in sorted(_ACCEPTANCE, key=lambda row: int(row[0].split()[1])):
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}: {detail}")
