import json
import sys
from pathlib import Path

import pytest
from hypothesis import settings, strategies as st

sys.path.insert(0, str(Path(__file__).parent))

from blankcalc.census import random_curve  # noqa: E402
from blankcalc.curve_map import FORMAT, curve_from_document, make_curve  # noqa: E402
from blankcalc.ray_words import CyclicWord  # noqa: E402

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

TWO_CHAIN_WORD = "2 -3 -1 -4 2 1 4 3"
TWO_TREE_WORD = "2 -1 -4 -5 1 5 4"
NINE_LETTER_WORD = "-1 2 5 4 3 1 2 -5 -3"

# a circle with four kinks on one side: tau = -1 and two groupings
FOUR_KINKS = {"chirality": {"1": "L", "2": "L", "3": "L", "4": "L"}, "crossings": 4,
              "format": FORMAT,
              "traversal": [[4, 1], [4, 2], [2, 1], [2, 2], [1, 1], [1, 2], [3, 1], [3, 2]]}
# tau = 1, yet one grouping carries a negative group
EXTRA_NEGATIVE_GROUP = {"chirality": {"1": "L", "2": "R", "3": "L", "4": "R"}, "crossings": 4,
                        "format": FORMAT,
                        "traversal": [[2, 1], [4, 1], [3, 1], [3, 2], [1, 1], [1, 2], [4, 2], [2, 2]]}
# a maximal remainder of this curve's word contains a cube
CUBE_REMAINDER = {"chirality": {"1": "R", "2": "L", "3": "L", "4": "R", "5": "R", "6": "L"},
                  "crossings": 6, "format": FORMAT,
                  "traversal": [[5, 1], [6, 1], [1, 1], [2, 1], [6, 2], [1, 2], [2, 2], [4, 1], [4, 2],
                                [5, 2], [3, 1], [3, 2]]}


def word(text: str) -> CyclicWord:
    return CyclicWord(tuple(int(t) for t in text.split()))


@pytest.fixture
def circle():
    return make_curve([], {})


@pytest.fixture(params=["R", "L"])
def figure_eight(request):
    return make_curve([(1, 1), (1, 2)], request.param)


@pytest.fixture
def four_kinks():
    return curve_from_document(FOUR_KINKS)


@pytest.fixture
def curve_file(tmp_path):
    def write(doc):
        path = tmp_path / "curve.json"
        path.write_text(json.dumps(doc))
        return str(path)
    return write


@st.composite
def curves(draw, min_n=0, max_n=6):
    n = draw(st.integers(min_n, max_n))
    return random_curve(n, draw(st.integers(0, 2 ** 32)))


@st.composite
def words(draw, max_len=10, indices=4):
    letters = draw(st.lists(st.integers(1, indices).flatmap(lambda i: st.sampled_from([i, -i])),
                            max_size=max_len))
    return CyclicWord(tuple(letters))


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for number in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[number])
