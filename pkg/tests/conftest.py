import pytest

from semilat.clifford import CliffordSemigroup, cyclic, trivial
from semilat.semilattice import chain, fan


@pytest.fixture
def trivial_clifford():
    return CliffordSemigroup(fan(2))


@pytest.fixture
def fan_c2_clifford():
    return CliffordSemigroup(fan(2), {"a1": cyclic(2), "a2": cyclic(2)}, name="fan-C2")


@pytest.fixture
def chain_c2_clifford():
    # 3-chain 0 < 1 < 2 with G(2) = G(1) = C2 and G(0) trivial
    return CliffordSemigroup(
        chain(3),
        {"2": cyclic(2), "1": cyclic(2), "0": trivial()},
        {("2", "1"): {"0": "0", "1": "1"}},
        name="chain-C2-C2-1",
    )


def pytest_terminal_summary(terminalreporter):
    lines = []
    for outcome in ("passed", "failed"):
        for rep in terminalreporter.stats.get(outcome, []):
            for key, value in getattr(rep, "user_properties", []):
                if key == "criterion" and rep.when == "call":
                    lines.append((value, "PASS" if outcome == "passed" else "FAIL"))
    if lines:
        terminalreporter.section("acceptance criteria")
        for value, status in sorted(lines):
            terminalreporter.write_line(f"{status}  {value}")
