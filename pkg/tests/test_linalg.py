from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from chordlie.linalg import SparseRationalMatrix, kernel_basis, rank, rank_of_vectors, solve_in_span


def dense_rank(rows):
    """Plain Gaussian elimination over Fractions, used as the oracle."""
    rows = [[Fraction(x) for x in r] for r in rows]
    r = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c] / rows[r][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        r += 1
    return r


small_fracs = st.fractions(min_value=-3, max_value=3, max_denominator=3)
matrices = st.integers(1, 6).flatmap(
    lambda r: st.integers(1, 6).flatmap(
        lambda c: st.lists(
            st.lists(st.one_of(st.just(Fraction(0)), small_fracs), min_size=c, max_size=c),
            min_size=r, max_size=r,
        )
    )
)


def test_rank_trivial():
    assert rank(SparseRationalMatrix(3, 4)) == 0
    assert rank(SparseRationalMatrix.identity(5)) == 5
    assert rank(SparseRationalMatrix.from_dense([[1, 1, 1]] * 3)) == 1


def test_kernel_trivial():
    assert kernel_basis(SparseRationalMatrix.identity(4)) == []
    (v,) = kernel_basis(SparseRationalMatrix.from_dense([[1, 1]]))
    assert v[0] == -v[1] and v[0]


@given(matrices)
def test_rank_matches_dense_oracle(rows):
    m = SparseRationalMatrix.from_dense(rows)
    assert rank(m) == dense_rank(rows)
    assert rank(m.transpose()) == rank(m)


@given(matrices)
def test_rank_nullity_and_kernel(rows):
    m = SparseRationalMatrix.from_dense(rows)
    ker = kernel_basis(m)
    assert rank(m) + len(ker) == m.cols
    for v in ker:
        assert all(x == 0 for x in m.matvec(v))
    # the kernel vectors are independent
    assert rank(SparseRationalMatrix.from_dense(ker)) == len(ker) if ker else True


def test_from_columns_registers_rows_in_order():
    m = SparseRationalMatrix.from_columns([{"b": 1, "a": 2}, {"a": Fraction(1, 2)}], col_keys=["x", "y"])
    assert m.row_keys == ["b", "a"]
    assert m.to_dense() == [[1, 0], [2, Fraction(1, 2)]]


def test_market_round_trip():
    m = SparseRationalMatrix.from_dense([[0, Fraction(-2, 3)], [5, 0]])
    text = m.to_market()
    assert text.splitlines()[0] == "2 2 2"
    assert "1 2 -2/3" in text
    back = SparseRationalMatrix.from_market(text)
    assert back.entries == m.entries


def test_matmul_and_bounds():
    a = SparseRationalMatrix.from_dense([[1, 2], [3, 4]])
    assert a.matmul(SparseRationalMatrix.identity(2)).entries == a.entries
    with pytest.raises(IndexError):
        SparseRationalMatrix(1, 1, {(1, 0): 1})


def test_span_helpers():
    vecs = [{"x": 1, "y": 1}, {"y": 2}]
    assert rank_of_vectors(vecs) == 2
    assert solve_in_span(vecs, {"x": 3})
    assert not solve_in_span(vecs, {"z": 1})


def test_large_sparse_rank_is_exact():
    # a path-graph incidence matrix has rank n-1
    n = 400
    cols = [{i: 1, i + 1: -1} for i in range(n - 1)]
    m = SparseRationalMatrix.from_columns(cols)
    assert rank(m) == n - 1
