"""Hypothesis strategies for exact matrices and small finitely supported forms."""

from hypothesis import strategies as st

from latticeym.cochains import Cochain
from latticeym.lattice_complex import MASKS_BY_DEGREE
from latticeym.matrix_algebra import EXACT, matrix

small_int = st.integers(min_value=-3, max_value=3)
gaussian = st.builds(complex, small_int, small_int)


def _to_matrix(entries):
    a, b, c, d = entries
    return matrix([[a, b], [c, d]], EXACT)


exact_matrices = st.tuples(gaussian, gaussian, gaussian, gaussian).map(_to_matrix)
invertible_matrices = exact_matrices.filter(lambda m: m.is_invertible())
sites = st.tuples(*(st.integers(min_value=-1, max_value=2) for _ in range(4)))


def forms(degree: int, max_terms: int = 6):
    """Exact ``degree``-forms with a handful of coefficients near the origin."""
    keys = st.tuples(sites, st.sampled_from(MASKS_BY_DEGREE[degree]))
    return st.dictionaries(keys, exact_matrices, max_size=max_terms).map(
        lambda d: Cochain(degree, d, mode=EXACT)
    )


degrees = st.integers(min_value=0, max_value=4)
