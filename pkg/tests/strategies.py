from fractions import Fraction

from hypothesis import strategies as st

from iwasawa.scalars import GScalar
from iwasawa.exterior import Form

rationals = st.fractions(min_value=-8, max_value=8, max_denominator=12)
gscalars = st.builds(GScalar, rationals, rationals)
small = st.builds(GScalar, st.fractions(min_value=Fraction(-1, 4), max_value=Fraction(1, 4),
                                        max_denominator=8),
                  st.fractions(min_value=Fraction(-1, 4), max_value=Fraction(1, 4),
                               max_denominator=8))


def forms(max_terms=5):
    return st.dictionaries(st.integers(0, 63), gscalars, max_size=max_terms).map(Form)


def homogeneous(k, max_terms=4):
    from iwasawa.exterior import masks_of_degree
    return st.dictionaries(st.sampled_from(masks_of_degree(k)), gscalars,
                           max_size=max_terms).map(Form)
