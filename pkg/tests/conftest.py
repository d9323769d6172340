import pytest
from hypothesis import strategies as st

from heyting.poset import new_poset

ACCEPTANCE: dict[int, tuple[str, bool, str]] = {}


def record(number: int, title: str, ok: bool, detail: str = "") -> None:
    ACCEPTANCE[number] = (title, ok, detail)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        title, ok, detail = ACCEPTANCE[k]
        line = f"[{'PASS' if ok else 'FAIL'}] {k:2d}. {title}"
        if detail:
            line += f" ({detail})"
        terminalreporter.write_line(line)


@st.composite
def posets(draw, min_n=0, max_n=6):
    n = draw(st.integers(min_n, max_n))
    perm = draw(st.permutations(range(n)))
    pairs = [(perm[i], perm[j]) for i in range(n) for j in range(i + 1, n) if draw(st.booleans())]
    return new_poset(n, pairs)


@pytest.fixture(scope="session")
def small_posets():
    from heyting.census import posets_up_to
    return posets_up_to(5)
