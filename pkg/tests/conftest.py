from __future__ import annotations

from hypothesis import HealthCheck, settings, strategies as st

settings.register_profile(
    "exact", deadline=None, max_examples=60, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("exact")


@st.composite
def linear_diagrams(draw, min_m: int = 1, max_m: int = 5):
    """Random perfect matching of 1..2m with random chord orientations."""
    from chordlie.diagrams import LinearDiagram

    m = draw(st.integers(min_m, max_m))
    order = draw(st.permutations(range(1, 2 * m + 1)))
    flips = draw(st.lists(st.booleans(), min_size=m, max_size=m))
    chords = []
    for k in range(m):
        i, j = order[2 * k], order[2 * k + 1]
        chords.append((j, i) if flips[k] else (i, j))
    return LinearDiagram(tuple(chords))
