from gmpy2 import mpq
from hypothesis import strategies as st

from cmherm.core import MultiPoly

small_q = st.builds(lambda a, b: mpq(a, b), st.integers(-5, 5), st.integers(1, 4))


def polys(n, max_deg=3, max_terms=5):
    exps = st.tuples(*[st.integers(0, max_deg) for _ in range(n)])
    return st.dictionaries(exps, small_q, max_size=max_terms).map(lambda t: MultiPoly(n, t))


def homogeneous(n, d, max_terms=4):
    from cmherm.core import monomials_of_degree

    monos = monomials_of_degree(n, d)
    return st.dictionaries(st.sampled_from(monos), small_q, min_size=1, max_size=max_terms).map(
        lambda t: MultiPoly(n, t)
    )
