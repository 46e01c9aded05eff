"""Exact sparse linear algebra over the rationals.

Elimination is fraction-free: every working row is scaled to a primitive
integer vector, a pivot step forms ``p[c] * r - r[c] * p`` and divides out
the content again.  Rows are fed shortest first and the pivot of a row is its
sparsest remaining column, which keeps fill-in low on the very sparse
boundary matrices we build.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm
from typing import Dict, Hashable, Iterable, List, Optional, Sequence, Tuple

Entries = Dict[Tuple[int, int], Fraction]


@dataclass
class SparseRationalMatrix:
    """``rows x cols`` matrix stored as a map ``(row, col) -> nonzero Fraction``.

    ``row_keys`` / ``col_keys`` optionally name the indices (diagram keys,
    wedge monomials, ...); they are carried along, never interpreted.
    """

    rows: int
    cols: int
    entries: Entries = field(default_factory=dict)
    row_keys: Optional[list] = None
    col_keys: Optional[list] = None

    def __post_init__(self) -> None:
        clean: Entries = {}
        for (i, j), v in self.entries.items():
            if not (0 <= i < self.rows and 0 <= j < self.cols):
                raise IndexError(f"entry ({i}, {j}) outside {self.rows}x{self.cols}")
            v = Fraction(v)
            if v:
                clean[i, j] = v
        self.entries = clean

    @classmethod
    def from_columns(cls, columns: Sequence[Dict[Hashable, Fraction]], col_keys=None) -> "SparseRationalMatrix":
        """Build from column vectors keyed by arbitrary row labels.

        Row labels are registered in order of first appearance, which makes
        the matrix reproducible for a deterministic column order.
        """
        index: Dict[Hashable, int] = {}
        entries: Entries = {}
        for j, col in enumerate(columns):
            for key, v in col.items():
                if key not in index:
                    index[key] = len(index)
                if v:
                    entries[index[key], j] = Fraction(v)
        return cls(len(index), len(columns), entries, list(index), col_keys)

    @classmethod
    def from_dense(cls, rows: Sequence[Sequence]) -> "SparseRationalMatrix":
        nrows = len(rows)
        ncols = len(rows[0]) if rows else 0
        entries = {(i, j): Fraction(v) for i, row in enumerate(rows) for j, v in enumerate(row) if v}
        return cls(nrows, ncols, entries)

    @classmethod
    def identity(cls, n: int) -> "SparseRationalMatrix":
        return cls(n, n, {(i, i): Fraction(1) for i in range(n)})

    def transpose(self) -> "SparseRationalMatrix":
        return SparseRationalMatrix(
            self.cols, self.rows, {(j, i): v for (i, j), v in self.entries.items()},
            self.col_keys, self.row_keys,
        )

    def to_dense(self) -> List[List[Fraction]]:
        out = [[Fraction(0)] * self.cols for _ in range(self.rows)]
        for (i, j), v in self.entries.items():
            out[i][j] = v
        return out

    def row_dicts(self) -> List[Dict[int, Fraction]]:
        out: List[Dict[int, Fraction]] = [{} for _ in range(self.rows)]
        for (i, j), v in self.entries.items():
            out[i][j] = v
        return out

    def column_dicts(self) -> List[Dict[int, Fraction]]:
        out: List[Dict[int, Fraction]] = [{} for _ in range(self.cols)]
        for (i, j), v in self.entries.items():
            out[j][i] = v
        return out

    def matvec(self, v: Sequence) -> List[Fraction]:
        if len(v) != self.cols:
            raise ValueError("dimension mismatch")
        out = [Fraction(0)] * self.rows
        for (i, j), a in self.entries.items():
            if v[j]:
                out[i] += a * v[j]
        return out

    def matmul(self, other: "SparseRationalMatrix") -> "SparseRationalMatrix":
        if self.cols != other.rows:
            raise ValueError("dimension mismatch")
        by_row: Dict[int, Dict[int, Fraction]] = {}
        for (k, j), b in other.entries.items():
            by_row.setdefault(k, {})[j] = b
        acc: Entries = {}
        for (i, k), a in self.entries.items():
            for j, b in by_row.get(k, {}).items():
                acc[i, j] = acc.get((i, j), Fraction(0)) + a * b
        return SparseRationalMatrix(self.rows, other.cols, acc, self.row_keys, other.col_keys)

    def is_zero(self) -> bool:
        return not self.entries

    def to_market(self) -> str:
        """``row col numerator/denominator`` triples, 1-indexed, after a size header."""
        lines = [f"{self.rows} {self.cols} {len(self.entries)}"]
        for (i, j), v in sorted(self.entries.items()):
            lines.append(f"{i + 1} {j + 1} {v.numerator}/{v.denominator}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_market(cls, text: str) -> "SparseRationalMatrix":
        lines = [ln for ln in text.splitlines() if ln.strip() and not ln.startswith("%")]
        rows, cols, _ = (int(x) for x in lines[0].split())
        entries = {}
        for ln in lines[1:]:
            i, j, v = ln.split()
            entries[int(i) - 1, int(j) - 1] = Fraction(v)
        return cls(rows, cols, entries)


# -- elimination ---------------------------------------------------------------


def _primitive(vec: Dict[int, Fraction]) -> Dict[int, int]:
    den = 1
    for v in vec.values():
        den = lcm(den, Fraction(v).denominator)
    ints = {k: int(Fraction(v) * den) for k, v in vec.items() if v}
    return _normalize(ints)


def _normalize(vec: Dict[int, int]) -> Dict[int, int]:
    g = 0
    for v in vec.values():
        g = gcd(g, v)
        if g == 1:
            return vec
    if g > 1:
        return {k: v // g for k, v in vec.items()}
    return vec


def echelon(vectors: Iterable[Dict[int, Fraction]]) -> Dict[int, Dict[int, int]]:
    """Fraction-free echelon form of a family of sparse vectors.

    Returns ``{pivot_coordinate: primitive integer vector}``.  Every stored
    vector has its pivot coordinate and no other pivot's coordinate is
    eliminated from it, but the pivot coordinates of *earlier* pivots are
    absent from later ones, which is all that rank and back-substitution
    need.
    """
    work = [_primitive(v) for v in vectors]
    work = [v for v in work if v]
    work.sort(key=len)
    # column occupancy over the input, used to pick sparse pivots
    occupancy: Dict[int, int] = {}
    for v in work:
        for c in v:
            occupancy[c] = occupancy.get(c, 0) + 1

    pivots: Dict[int, Dict[int, int]] = {}
    # a pivot vector only carries pivot coordinates created after it, so
    # eliminating in creation order terminates
    order: Dict[int, int] = {}
    for vec in work:
        vec = dict(vec)
        while vec:
            hit = [c for c in vec if c in pivots]
            if not hit:
                break
            c = min(hit, key=order.__getitem__)
            a = vec[c]
            p = pivots[c]
            b = p[c]
            g = gcd(a, b)
            fa, fb = b // g, a // g
            if fa != 1:
                for k in vec:
                    vec[k] *= fa
            for k, pv in p.items():
                nv = vec.get(k, 0) - fb * pv
                if nv:
                    vec[k] = nv
                else:
                    del vec[k]
            vec = _normalize(vec)
        if vec:
            col = min(vec, key=lambda c: (occupancy.get(c, 0), c))
            order[col] = len(order)
            pivots[col] = vec
    return pivots


def rank(m: SparseRationalMatrix) -> int:
    """Exact rank over the rationals."""
    if not m.entries:
        return 0
    # eliminate along the shorter side
    vecs = m.row_dicts() if m.rows <= m.cols else m.column_dicts()
    return len(echelon(vecs))


def rank_of_vectors(vectors: Iterable[Dict]) -> int:
    """Rank of sparse vectors with hashable coordinates."""
    index: Dict[Hashable, int] = {}
    rows = []
    for v in vectors:
        row = {}
        for k, x in v.items():
            if x:
                row[index.setdefault(k, len(index))] = x
        rows.append(row)
    return len(echelon(rows))


def kernel_basis(m: SparseRationalMatrix) -> List[List[Fraction]]:
    """Basis of the right null space ``{v : m v = 0}``, one free column per vector."""
    rows = m.row_dicts()
    piv = _rref(rows)
    pivot_cols = set(piv)
    basis = []
    for free in range(m.cols):
        if free in pivot_cols:
            continue
        v = [Fraction(0)] * m.cols
        v[free] = Fraction(1)
        for c, row in piv.items():
            coeff = row.get(free)
            if coeff:
                v[c] = -coeff
        basis.append(v)
    return basis


def _rref(rows: List[Dict[int, Fraction]]) -> Dict[int, Dict[int, Fraction]]:
    """Reduced row echelon form keyed by pivot column, pivots scaled to 1."""
    piv: Dict[int, Dict[int, Fraction]] = {}
    for row in sorted((dict(r) for r in rows if r), key=len):
        for c in [c for c in row if c in piv]:
            a = row.get(c)
            if a:
                for k, pv in piv[c].items():
                    nv = row.get(k, 0) - a * pv
                    if nv:
                        row[k] = nv
                    else:
                        row.pop(k, None)
        if not row:
            continue
        col = min(row, key=lambda c: (len(row), c))
        inv = 1 / Fraction(row[col])
        row = {k: Fraction(v) * inv for k, v in row.items()}
        # clear the new pivot column from the existing pivot rows
        for c, prow in piv.items():
            a = prow.get(col)
            if a:
                for k, v in row.items():
                    nv = prow.get(k, 0) - a * v
                    if nv:
                        prow[k] = nv
                    else:
                        prow.pop(k, None)
        piv[col] = row
    return piv


def solve_in_span(vectors: Sequence[Dict], target: Dict) -> bool:
    """Whether ``target`` lies in the span of ``vectors`` (hashable coordinates)."""
    return rank_of_vectors(list(vectors) + [target]) == rank_of_vectors(vectors)
