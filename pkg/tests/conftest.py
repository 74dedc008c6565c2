from hypothesis import settings, strategies as st

from hopf_pfaff.exterior import Gaussian, KForm, Poly, PolyVectorField, index_tuples

settings.register_profile("default", max_examples=100, deadline=None)
settings.load_profile("default")

small_rationals = st.fractions(min_value=-3, max_value=3, max_denominator=4)
gaussians = st.builds(Gaussian, small_rationals, small_rationals)
nonzero_gaussians = gaussians.filter(bool)


@st.composite
def polys(draw, n: int, max_terms: int = 3, max_deg: int = 2):
    alphas = st.lists(st.integers(0, max_deg), min_size=n, max_size=n).map(tuple)
    terms = draw(st.dictionaries(alphas, nonzero_gaussians, max_size=max_terms))
    return Poly(n, terms)


@st.composite
def kforms(draw, n: int, k: int, max_terms: int = 3):
    idxs = index_tuples(n, k)
    chosen = draw(st.lists(st.sampled_from(idxs), max_size=max_terms, unique=True))
    return KForm(n, k, {I: draw(polys(n)) for I in chosen})


@st.composite
def vector_fields(draw, n: int):
    return PolyVectorField([draw(polys(n, max_terms=2)) for _ in range(n)])


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = getattr(config, "_acceptance_lines", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
