import pytest
from hypothesis import HealthCheck, settings, strategies as st

from amcone.curves import engine

settings.register_profile("repo", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("repo")


@pytest.fixture(scope="session")
def eng():
    return engine(5)


# words in the seed half twists of S_{0,5}
words = st.lists(st.tuples(st.integers(0, 4), st.sampled_from([1, -1])), min_size=0, max_size=8)


def apply_word(eng, c, word):
    for k, s in word:
        c = eng.half_twist(c, eng.seeds[k], s)
    return c


@st.composite
def s05_curves(draw):
    e = engine(5)
    return apply_word(e, e.seeds[draw(st.integers(0, 4))], draw(words))
