from fractions import Fraction as F

from hypothesis import settings, strategies as st

from tetrapbf import reconstruct_bands

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

small_pos = st.fractions(min_value=F(1, 8), max_value=5, max_denominator=8)


@st.composite
def pbf_bands(draw, min_depth=1, max_depth=6):
    """Bands of a product L1 L2 U with positive alphas: oscillatory at every depth."""
    N = draw(st.integers(min_depth, max_depth))
    alphas = draw(st.lists(small_pos, min_size=3 * N + 1, max_size=3 * N + 1))
    return reconstruct_bands(alphas), alphas


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for i in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[i])
