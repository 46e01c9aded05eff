from __future__ import annotations

from itertools import combinations

import pytest

from chordlie.analysis import (
    center_of_C,
    center_probe_LC,
    chain_basis,
    chain_dims,
    ce_differential,
    euler_char,
    euler_series,
    homology,
    homology_dims,
    is_multiple_of_omega,
    pooled_betti,
)
from chordlie.diagrams import CapExceeded, double_factorial_odd, enumerate_cyclic_basis, enumerate_linear, omega_diagram
from chordlie.lie import E0, CVector, LCVector, bracket_cyclic

# -- centers -------------------------------------------------------------------------------


@pytest.mark.parametrize("m", [2, 3, 4])
def test_center_of_c(m):
    ker = center_of_C(m)
    assert len(ker) == 1
    assert is_multiple_of_omega(ker[0], m)


@pytest.mark.parametrize("m", [2, 3])
def test_center_is_central_against_small_degrees(m):
    (x,) = center_of_C(m)
    for k in enumerate_cyclic_basis(2) + enumerate_cyclic_basis(3):
        assert not bracket_cyclic(x, CVector.basis(k))


def test_center_cap():
    with pytest.raises(CapExceeded):
        center_of_C(5)


@pytest.mark.parametrize("d", [2, 3, 4])
def test_center_probe_lc_is_empty(d):
    assert center_probe_LC(d) == []


def test_probe_set_matters():
    # E_0 alone only cuts down to its eigenvalue-0 space, LC_1
    ker = center_probe_LC(3, probe=[E0])
    assert len(ker) == 1
    assert ker[0].degrees() == {1}


# -- chain bases ----------------------------------------------------------------------------


def generator_weights(algebra, w):
    lo = 1 if algebra == "LC" else 2
    out = []
    for m in range(lo, w + 2):
        n = len(enumerate_cyclic_basis(m)) if algebra == "C" else double_factorial_odd(m)
        out.append((m - 1, n))
    return out


def brute_chain_dim(algebra, k, w):
    gens = [wt for wt, n in generator_weights(algebra, w) for _ in range(n)]
    return sum(1 for c in combinations(range(len(gens)), k) if sum(gens[i] for i in c) == w)


def counted_chain_dim(algebra, k, w):
    """Choose how many generators of each degree enter the wedge, then pick them."""
    from math import comb

    groups = generator_weights(algebra, w)

    def rec(i, left, remaining):
        if i == len(groups):
            return int(left == 0 and remaining == 0)
        wt, n = groups[i]
        total = 0
        for j in range(0, min(n, left) + 1):
            if j * wt > remaining:
                break
            total += comb(n, j) * rec(i + 1, left - j, remaining - j * wt)
        return total

    return rec(0, k, w)


@pytest.mark.parametrize("algebra", ["LC", "LC1", "C"])
@pytest.mark.parametrize("w", [0, 1, 2, 3])
def test_chain_dims_closed_form(algebra, w):
    dims = chain_dims(algebra, w)
    for k in range(len(dims) + 1):
        expected = counted_chain_dim(algebra, k, w)
        if w <= 2:
            assert brute_chain_dim(algebra, k, w) == expected
        assert len(chain_basis(algebra, k, w)) == expected
        assert (dims[k] if k < len(dims) else 0) == expected


def test_chain_dims_known_values():
    assert chain_dims("LC1", 4) == [0, 945, 420, 45]
    assert chain_dims("LC1", 5) == [0, 10395, 4410, 630, 15]
    assert chain_dims("LC", 4) == [0, 945, 1365, 465, 45]


def test_chain_basis_is_strictly_increasing_and_weighted():
    cb = chain_basis("LC", 3, 3)
    for mono in cb.basis:
        assert list(mono) == sorted(set(mono))
        assert sum(cb.generators[i].m - 1 for i in mono) == 3


# -- differentials ----------------------------------------------------------------------------


def test_differential_examples():
    d1 = ce_differential("LC1", 1, 1)
    assert (d1.rows, d1.cols) == (0, 3)
    d2 = ce_differential("LC1", 2, 2)
    assert (d2.rows, d2.cols) == (15, 3)


@pytest.mark.parametrize("algebra", ["LC", "LC1", "C"])
@pytest.mark.parametrize("w", [1, 2, 3, 4])
def test_d_squared_is_zero(algebra, w):
    top = len(chain_dims(algebra, w))
    for k in range(2, top + 1):
        a = ce_differential(algebra, k - 1, w)
        b = ce_differential(algebra, k, w)
        if a.cols and b.cols and a.rows:
            assert a.matmul(b).is_zero()


# -- homology --------------------------------------------------------------------------------


def test_homology_of_lc_is_concentrated():
    assert pooled_betti("LC", range(0, 5), 2) == [1, 1, 0]
    assert homology_dims("LC", 0) == [1, 1]


@pytest.mark.parametrize("w", [1, 2, 3, 4])
def test_h1_of_lc1_does_not_vanish(w):
    assert homology_dims("LC1", w, 1)[1] >= 1


def test_lc1_homology_regression():
    # computed values, recorded as data
    assert [homology_dims("LC1", w, 1)[1] for w in (1, 2, 3, 4)] == [3, 12, 66, 611]
    assert homology_dims("LC1", 3) == [0, 66, 5, 0]


def test_homology_report_json():
    rep = homology("LC1", 2).to_json()
    assert rep == {"algebra": "LC1", "weight": 2, "chain_dims": [0, 15, 3], "betti": [0, 12, 0], "euler": -12}


# -- Euler characteristic --------------------------------------------------------------------


def test_euler_series_coefficients():
    assert euler_series(8) == [-3, -12, -61, -570, -6600, -91910, -1460655, -26064990]


@pytest.mark.parametrize("w, chi", [(1, -3), (2, -12), (3, -61), (4, -570), (5, -6600), (6, -91910)])
def test_euler_dims_route(w, chi):
    assert euler_char(w) == chi


@pytest.mark.parametrize("w", [1, 2, 3, 4])
def test_euler_routes_agree(w):
    assert euler_char(w, "ranks") == euler_char(w, "dims") == euler_series(w)[w - 1]


def test_euler_unknown_route():
    with pytest.raises(ValueError):
        euler_char(1, "guess")
