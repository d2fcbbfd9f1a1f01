import sys
from pathlib import Path

import pytest
from hypothesis import strategies as st

from spectrum_dsa.model import Region, Scenario, Transmitter, make_scenario

sys.path.insert(0, str(Path(__file__).parent))


@st.composite
def scenarios(draw, max_n=30, b_max=3, r_range=(8.0, 17.0), side=100.0, f=None):
    """Random scenarios under Table 1 style laws (positions anywhere in the square)."""
    n = draw(st.integers(1, max_n))
    coord = st.floats(0.0, side, allow_nan=False)
    txs = tuple(
        Transmitter(
            i,
            draw(coord),
            draw(coord),
            draw(st.integers(1, b_max)),
            draw(st.floats(*r_range, allow_nan=False)),
        )
        for i in range(1, n + 1)
    )
    total = f if f is not None else draw(st.integers(1, 15))
    return Scenario(Region.square(side), txs, total)


@pytest.fixture
def fig2_like() -> Scenario:
    """Hand-built analogue of the worked N=25, F=10 example.

    Ids 1-3 form the "1 / 3 / 21" pattern: 1 (B=2) and 2 (B=1) are disjoint,
    3 (B=1) overlaps both. Ids 4-9 sit on one spot: five neighbours with total
    demand 9 plus a last transmitter of demand 1 that can only get band 10.
    """
    return make_scenario(
        [
            (10.0, 10.0, 2, 8.0),   # like "1"
            (40.0, 10.0, 1, 8.0),   # like "21"
            (25.0, 10.0, 1, 8.0),   # like "3": 15 m from each, 15 < 16
            (70.0, 70.0, 2, 5.0),
            (71.0, 70.0, 2, 5.0),
            (70.0, 71.0, 2, 5.0),
            (71.0, 71.0, 2, 5.0),
            (70.5, 70.5, 1, 5.0),
            (70.5, 70.0, 1, 5.0),   # like "19"
        ],
        total_bandwidth=10,
    )


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.RESULTS:
        terminalreporter.write_line(line)
