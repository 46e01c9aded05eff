from __future__ import annotations

import pytest
from hypothesis import given, strategies as st

from chordlie.diagrams import (
    CapExceeded,
    CyclicClass,
    DiagramError,
    LinearDiagram,
    StandardDiagram,
    canonical_cyclic,
    d_ab,
    d_ab_linear,
    double_factorial_odd,
    enumerate_cyclic_basis,
    enumerate_linear,
    identity_diagram,
    index_of,
    omega_diagram,
    parse_cyclic,
    rotate,
    standardize,
)

from conftest import linear_diagrams


def std(*chords):
    return StandardDiagram(tuple(chords))


# -- brute-force oracles (independent of the library kernels) --------------------


def perm_rotate(chords, n):
    """Apply the vertex permutation k -> k-1 (1 -> n) chord by chord, keeping labels."""
    perm = {k: (k - 2) % n + 1 for k in range(1, n + 1)}
    return [(perm[i], perm[j]) for i, j in chords]


def brute_standard(chords):
    sign = 1
    out = []
    for i, j in chords:
        if i > j:
            sign, (i, j) = -sign, (j, i)
        out.append((i, j))
    return sign, tuple(sorted(out))


def brute_orbit(chords):
    n = 2 * len(chords)
    cur = list(chords)
    seen = []
    for _ in range(n):
        seen.append(frozenset(frozenset(c) for c in cur))
        cur = perm_rotate(cur, n)
    return set(seen)


def brute_canonical(chords):
    n = 2 * len(chords)
    sign, cur = brute_standard(chords)
    best = None
    for s in range(n):
        if best is None or cur < best[1]:
            best = (sign, cur)
        sign_step, cur = brute_standard(perm_rotate(cur, n))
        sign *= sign_step
    if len(brute_orbit(chords)) % 2:
        return None
    return best


def matchings_count(m):
    return 1 if m == 0 else (2 * m - 1) * matchings_count(m - 1)


# -- standardize ------------------------------------------------------------------


@pytest.mark.parametrize("chords, sign", [
    (((1, 2), (3, 5), (4, 6)), 1),
    (((2, 1), (3, 5), (4, 6)), -1),
    (((2, 1), (5, 3), (6, 4)), -1),
])
def test_standardize_examples(chords, sign):
    assert standardize(LinearDiagram(chords)) == (sign, std((1, 2), (3, 5), (4, 6)))


@pytest.mark.parametrize("chords", [((1, 1),), ((1, 2), (2, 3)), ((1, 5), (2, 3)), ((0, 1),)])
def test_malformed_diagrams_rejected(chords):
    with pytest.raises(DiagramError):
        LinearDiagram(chords)


def test_standard_diagram_requires_increasing_chords():
    with pytest.raises(DiagramError):
        StandardDiagram(((2, 1),))


@given(linear_diagrams())
def test_standardize_matches_brute_force(d):
    sign, s = standardize(d)
    assert (sign, s.chords) == brute_standard(d.chords)


# -- rotate -----------------------------------------------------------------------


def test_rotate_single_chord():
    assert rotate(std((1, 2))) == (-1, std((1, 2)))


def test_rotate_example_direction():
    d = std((1, 2), (3, 5), (4, 6))
    # one step of k -> k-1, and the opposite step
    assert rotate(d) == (-1, std((1, 6), (2, 4), (3, 5)))
    assert rotate(d, -1) == (-1, std((1, 5), (2, 3), (4, 6)))


def test_rotate_crossing_is_invariant_up_to_sign():
    assert rotate(std((1, 3), (2, 4))) == (-1, std((1, 3), (2, 4)))


@given(linear_diagrams())
def test_rotate_matches_permutation(d):
    _, s = standardize(d)
    sign, r = rotate(s)
    assert sign == -1
    assert (sign, r.chords) == brute_standard(perm_rotate(s.chords, 2 * s.m))


@given(linear_diagrams(), st.integers(-7, 7))
def test_rotate_steps_compose(d, k):
    _, s = standardize(d)
    sign, cur = 1, s
    for _ in range(k % (2 * s.m)):
        step, cur = rotate(cur)
        sign *= step
    assert rotate(s, k) == (sign, cur)


@given(linear_diagrams())
def test_full_turn_is_identity(d):
    _, s = standardize(d)
    assert rotate(s, 2 * s.m) == (1, s)


# -- index ------------------------------------------------------------------------


@pytest.mark.parametrize("d, idx", [(std((1, 2)), 1), (std((1, 3), (2, 4)), 1), (std((1, 2), (3, 4)), 2)])
def test_index_examples(d, idx):
    assert index_of(d) == idx


@given(linear_diagrams(max_m=6))
def test_index_matches_orbit_and_divides(d):
    _, s = standardize(d)
    idx = index_of(s)
    assert idx == len(brute_orbit(s.chords))
    assert (2 * s.m) % idx == 0


# -- canonical_cyclic --------------------------------------------------------------


def test_canonical_examples():
    assert canonical_cyclic(LinearDiagram(((1, 3), (2, 4)))) is None
    cls = CyclicClass(std((1, 2), (3, 4)), 2)
    assert canonical_cyclic(LinearDiagram(((1, 2), (3, 4)))) == (1, cls)
    assert canonical_cyclic(LinearDiagram(((2, 3), (4, 1)))) == (1, cls)


@given(linear_diagrams(max_m=6))
def test_canonical_matches_brute_force(d):
    res = canonical_cyclic(d)
    brute = brute_canonical(d.chords)
    if brute is None:
        assert res is None
    else:
        sign, cls = res
        assert (sign, cls.rep.chords) == brute
        assert cls.index == len(brute_orbit(d.chords))
        assert cls.index % 2 == 0


@given(linear_diagrams(max_m=6), st.data())
def test_single_flip_negates_class(d, data):
    k = data.draw(st.integers(0, d.m - 1))
    chords = list(d.chords)
    chords[k] = chords[k][::-1]
    a, b = canonical_cyclic(d), canonical_cyclic(LinearDiagram(tuple(chords)))
    assert (a is None) == (b is None)
    if a is not None:
        assert a[1] == b[1] and a[0] == -b[0]


@given(linear_diagrams(max_m=6), st.integers(0, 11))
def test_rotation_multiplies_class_by_sign(d, s):
    _, st_d = standardize(d)
    sign, r = rotate(st_d, s)
    a, b = canonical_cyclic(st_d), canonical_cyclic(r)
    if a is None:
        assert b is None
    else:
        assert b == (sign * a[0], a[1])
        assert sign == (-1) ** (s % (2 * d.m))


# -- named families ------------------------------------------------------------------


def test_identity_and_omega():
    assert identity_diagram(3) == std((1, 2), (3, 4), (5, 6))
    assert omega_diagram(2) == CyclicClass(std((1, 2), (3, 4)), 2)
    assert omega_diagram(3).rep == std((1, 2), (3, 4), (5, 6))
    with pytest.raises(DiagramError):
        omega_diagram(1)


def test_d_ab_literal_shape():
    assert d_ab_linear(1, 2).chords == ((1, 2), (3, 8), (4, 5), (6, 7))


def test_d_ab_examples():
    assert d_ab(1, 1) is None
    s13, k13 = d_ab(1, 3)
    s31, k31 = d_ab(3, 1)
    assert k13 == k31 and s13 == -s31
    assert k13.index == 10


@pytest.mark.parametrize("a", range(1, 6))
@pytest.mark.parametrize("b", range(1, 6))
def test_d_ab_antisymmetry_and_maximal_index(a, b):
    if a == b:
        assert d_ab(a, b) is None
        return
    (s1, k1), (s2, k2) = d_ab(a, b), d_ab(b, a)
    assert k1 == k2 and s1 == -s2
    assert k1.index == 2 * (a + b + 1)


# -- enumeration -------------------------------------------------------------------


def test_enumerate_linear_small():
    assert enumerate_linear(1) == [std((1, 2))]
    assert enumerate_linear(2) == [std((1, 2), (3, 4)), std((1, 3), (2, 4)), std((1, 4), (2, 3))]
    assert len(enumerate_linear(3)) == 15


@pytest.mark.parametrize("m", range(1, 7))
def test_enumerate_linear_count(m):
    diagrams = enumerate_linear(m)
    assert len(diagrams) == matchings_count(m) == double_factorial_odd(m)
    assert len(set(diagrams)) == len(diagrams)
    assert diagrams == sorted(diagrams)


def test_enumeration_cap():
    with pytest.raises(CapExceeded):
        enumerate_linear(4, cap=3)
    with pytest.raises(CapExceeded):
        enumerate_cyclic_basis(4, cap=3)


# dim C_m: one per even-index rotation orbit.  The values are frozen after
# checking them against the rank of rotation sums in test_lie.
C_DIMS = {1: 0, 2: 1, 3: 2, 4: 17, 5: 88}


@pytest.mark.parametrize("m", range(1, 6))
def test_enumerate_cyclic_basis(m):
    basis = enumerate_cyclic_basis(m)
    assert len(basis) == C_DIMS[m]
    assert all(k.index % 2 == 0 for k in basis)
    orbits = [frozenset(brute_orbit(k.rep.chords)) for k in basis]
    assert len(set(orbits)) == len(orbits)
    # every even-index matching lands in one of the listed orbits
    listed = set().union(*orbits) if orbits else set()
    for d in enumerate_linear(m):
        orbit = brute_orbit(d.chords)
        if len(orbit) % 2 == 0:
            assert frozenset(frozenset(c) for c in d.chords) in listed


def test_c2_is_omega():
    assert enumerate_cyclic_basis(2) == [omega_diagram(2)]


# -- literals -------------------------------------------------------------------------


def test_literals_round_trip():
    d = LinearDiagram(((1, 2), (5, 3), (4, 6)))
    assert d.literal() == "lin: 1>2 5>3 4>6"
    assert LinearDiagram.parse(d.literal()) == d
    k = omega_diagram(2)
    assert k.literal() == "cyc[index=2]: 1>2 3>4"
    assert parse_cyclic(k.literal()) == (1, k)


@pytest.mark.parametrize("text, where", [("lin: 1>2 2>3", "position 9"), ("lin: 1>2 3>5", "out of range")])
def test_parse_errors_are_annotated(text, where):
    with pytest.raises(DiagramError, match=where):
        LinearDiagram.parse(text)


def test_parse_cyclic_checks_declared_index():
    with pytest.raises(DiagramError):
        parse_cyclic("cyc[index=4]: 1>2 3>4")
    with pytest.raises(DiagramError):
        parse_cyclic("lin: 1>3 2>4")
