import functools

import pytest

from ladic.tower import Tower

# (p, ell, strategy, top level) for the acceptance fixtures
FIXTURES = [
    (7, 3, "t1", 4),
    (31, 5, "t1", 4),
    (5, 3, "t2", 4),
    (13, 7, "t2", 4),
    (101, 3, "elliptic", 4),
    (13, 7, "elliptic", 4),
    (11, 7, "general", 2),
    (13, 5, "general", 2),
]

FIXTURE_IDS = [f"{p}-{ell}-{s}" for p, ell, s, _ in FIXTURES]


@functools.lru_cache(maxsize=None)
def tower(p, ell, strategy, seed=1):
    """One shared Tower per fixture; levels are built lazily and cached."""
    return Tower.create(p, ell, strategy, seed=seed)


ACCEPTANCE = {}


def record(n, ok, text):
    """Log one acceptance line; a criterion checked on several fixtures keeps every line."""
    ACCEPTANCE.setdefault(n, []).append((ok, text))
    print(f"criterion {n}: {'PASS' if ok else 'FAIL'}  {text}")


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        for ok, text in ACCEPTANCE[n]:
            terminalreporter.write_line(f"criterion {n:>2}: {'PASS' if ok else 'FAIL'}  {text}")


@pytest.fixture
def rng():
    import random
    return random.Random(12345)
