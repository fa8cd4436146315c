import pytest

from qsrg_verify import cayley, groups
from qsrg_verify.corpus import group_from_spec

ACCEPTANCE_RESULTS: dict[int, tuple[str, bool]] = {}


def gamma(name: str, elements):
    g = group_from_spec(name)
    return g, groups.make_subgroup(g, elements), cayley.gamma_graph(g, groups.make_subgroup(g, elements))


def cycle(n: int):
    import numpy as np

    a = np.zeros((n, n), dtype=np.uint8)
    for i in range(n):
        a[i, (i + 1) % n] = a[(i + 1) % n, i] = 1
    return a


def complete(n: int):
    import numpy as np

    return (np.ones((n, n)) - np.eye(n)).astype(np.uint8)


@pytest.fixture
def record_criterion():
    def rec(number: int, title: str, ok: bool):
        ACCEPTANCE_RESULTS[number] = (title, ok)

    return rec


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE_RESULTS):
        title, ok = ACCEPTANCE_RESULTS[number]
        terminalreporter.write_line(f"criterion {number:>2}: {'PASS' if ok else 'FAIL'}  {title}")
