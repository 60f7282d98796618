"""Shared hypothesis strategies."""

from fractions import Fraction

from hypothesis import strategies as st

from craut.exact import GaussianRational

small_int = st.integers(min_value=-6, max_value=6)
fractions = st.builds(Fraction, small_int, st.integers(min_value=1, max_value=5))
gaussians = st.builds(GaussianRational, fractions, fractions)
gauss_ints = st.builds(GaussianRational, small_int, small_int)


def matrices(elements, max_rows=5, max_cols=5):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(st.lists(elements, min_size=c, max_size=c), min_size=r, max_size=r)
        )
    )
