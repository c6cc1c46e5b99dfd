import random
from pathlib import Path

import pytest

from aspexplain.model import Atom, Program, Rule, reduct

FIXTURES = Path(__file__).parent / "fixtures"

# Filled in by tests/test_acceptance.py; reported after the test run so
# the lines are visible despite output capture.
ACCEPTANCE_RESULTS: list[tuple[int, str, bool]] = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number, title, passed in sorted(ACCEPTANCE_RESULTS):
        status = "PASS" if passed else "FAIL"
        terminalreporter.write_line(
            "criterion %2d [%s] %s" % (number, status, title)
        )


def fixture_text(name: str) -> str:
    return (FIXTURES / name).read_text(encoding="utf-8")


@pytest.fixture
def fixtures_dir() -> Path:
    return FIXTURES


def random_program(
    rng: random.Random,
    max_atoms: int = 8,
    max_rules: int = 12,
    allow_negation: bool = True,
) -> Program:
    """A small ground normal program for oracle-based testing."""
    n_atoms = rng.randint(1, max_atoms)
    atoms = [Atom("p%d" % i) for i in range(n_atoms)]
    n_rules = rng.randint(1, max_rules)
    rules = []
    for _ in range(n_rules):
        head = rng.choice(atoms)
        pool = [a for a in atoms if a != head]
        rng.shuffle(pool)
        n_pos = rng.randint(0, min(2, len(pool)))
        body_pos = tuple(pool[:n_pos])
        body_neg = ()
        if allow_negation:
            rest = pool[n_pos:]
            n_neg = rng.randint(0, min(2, len(rest)))
            body_neg = tuple(rest[:n_neg])
        rules.append(Rule(head, body_pos, body_neg))
    return Program(tuple(rules)).deduplicated()


def _closure(P: Program, I: frozenset[Atom]) -> frozenset[Atom]:
    """Least model of the (negation-free) reduct of P w.r.t. I."""
    R = reduct(P, I)
    S: frozenset[Atom] = frozenset()
    while True:
        nxt = frozenset(
            r.head
            for r in R.rules
            if r.head is not None and set(r.body_pos) <= S
        )
        if nxt == S:
            return S
        S = nxt


def answer_sets(P: Program) -> list[frozenset[Atom]]:
    """All answer sets of a small ground normal program, by exhaustive
    candidate checking against the least model of the reduct."""
    base = sorted(P.herbrand_base)
    out = []
    for mask in range(2 ** len(base)):
        I = frozenset(a for i, a in enumerate(base) if mask >> i & 1)
        if _closure(P, I) == I:
            if all(
                r.head in I
                for r in P.rules
                if r.head is None
                and set(r.body_pos) <= I
                and not (set(r.body_neg) & I)
            ):
                out.append(I)
    return out
