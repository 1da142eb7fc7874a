import hypothesis
import pytest
from hypothesis import strategies as st

from braidax import BraidWord, ExchangeForm, SkeinEngine

# numba compilation happens on first kernel use; never let it trip a deadline
hypothesis.settings.register_profile(
    "braidax", deadline=None, max_examples=60, derandomize=True
)
hypothesis.settings.load_profile("braidax")


@st.composite
def braid_words(draw, min_strands=2, max_strands=6, max_letters=12, min_letters=0):
    n = draw(st.integers(min_strands, max_strands))
    letters = draw(
        st.lists(
            st.integers(-(n - 1), n - 1).filter(lambda k: k != 0),
            min_size=min_letters,
            max_size=max_letters,
        )
    )
    return BraidWord(n, tuple(letters))


@st.composite
def exchange_forms(draw, min_strands=4, max_strands=6, max_letters=5):
    n = draw(st.integers(min_strands, max_strands))
    alpha = draw(
        st.lists(
            st.integers(-(n - 2), n - 2).filter(lambda k: k != 0),
            max_size=max_letters,
        )
    )
    beta = draw(
        st.lists(
            st.integers(2, n - 1).flatmap(lambda i: st.sampled_from([i, -i])),
            max_size=max_letters,
        )
    )
    return ExchangeForm(n, BraidWord(n, tuple(alpha)), BraidWord(n, tuple(beta)))


@pytest.fixture(scope="session")
def engine():
    """One memoized engine shared across a test session."""
    return SkeinEngine()
