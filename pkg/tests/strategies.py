"""Shared hypothesis strategies."""

from hypothesis import strategies as st

values = st.floats(min_value=-10.0, max_value=10.0, allow_nan=False, allow_infinity=False)


@st.composite
def realizable_lists(draw, min_size=1, max_size=12):
    """Lists satisfying the weak condition, some of them exactly on the boundary."""
    rest = draw(st.lists(values, min_size=min_size - 1, max_size=max_size - 1))
    # same summation order as Spectrum.neg_sum, so a zero margin stays exactly zero
    neg = sum(sorted((v for v in rest if v < 0), reverse=True), 0.0)
    lead = max([0.0, -neg] + rest)
    lead += draw(st.sampled_from([0.0, 0.0, 0.5, 3.0]))
    return [lead] + rest


@st.composite
def unrealizable_lists(draw, max_size=12):
    rest = draw(st.lists(st.floats(-10.0, -0.01), min_size=1, max_size=max_size - 1))
    lead = -sum(rest) - draw(st.floats(1e-3, 5.0))
    lead = max(lead, max(rest) + 1e-9)
    return [lead] + rest
