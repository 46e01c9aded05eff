"""Centers, Chevalley-Eilenberg homology and Euler characteristics.

Weights: a basis diagram of ``m`` chords has weight ``m - 1`` (its ``ad(E_0)``
eigenvalue), so brackets add weights and every chain space splits by weight.
Three algebras are supported: ``"LC"`` (all ``LC_m``, ``m >= 1``), ``"LC1"``
(``m >= 2``) and ``"C"`` (``C_m``, ``m >= 2``).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Dict, List, Optional, Sequence, Tuple

from .diagrams import (
    DEFAULT_ENUMERATION_CAP,
    CapExceeded,
    CyclicClass,
    d_ab,
    double_factorial_odd,
    enumerate_cyclic_basis,
    enumerate_linear,
    omega_diagram,
)
from .lie import CVector, LCVector, bracket_cyclic, bracket_linear
from .linalg import SparseRationalMatrix, kernel_basis, rank

ALGEBRAS = ("LC", "LC1", "C")
DEFAULT_CENTER_CAP = 4
DEFAULT_WEIGHT_CAP = 5

# -- centers -----------------------------------------------------------------


def _kernel_vectors(columns: List[dict], basis: list, cls) -> list:
    mat = SparseRationalMatrix.from_columns(columns, col_keys=basis)
    if mat.rows == 0:
        return [cls.basis(b) for b in basis]
    out = []
    for vec in kernel_basis(mat):
        out.append(cls({b: c for b, c in zip(basis, vec) if c}))
    return out


def center_test_element(m: int) -> CVector:
    """``D(m, 2m+1)``, the element whose centralizer in ``C_m`` is ``Q Omega_m``."""
    sign, k = d_ab(m, 2 * m + 1)
    return sign * CVector.basis(k)


def center_of_C(m: int, cap: int = DEFAULT_CENTER_CAP) -> List[CVector]:
    """Basis of ``{X in C_m : [X, D(m, 2m+1)] = 0}``; nothing about it is assumed."""
    if m < 2:
        return []
    if m > cap:
        raise CapExceeded(f"center degree {m} exceeds the cap {cap}")
    z = center_test_element(m)
    basis = enumerate_cyclic_basis(m)
    cols = [bracket_cyclic(CVector.basis(k), z).terms for k in basis]
    return _kernel_vectors(cols, basis, CVector)


def is_multiple_of_omega(x: CVector, m: int) -> bool:
    omega = omega_diagram(m)
    return bool(x) and set(x) == {omega}


def center_probe_LC(max_degree: int, probe: Optional[Sequence[LCVector]] = None,
                    cap: int = DEFAULT_CENTER_CAP) -> List[LCVector]:
    """Basis of ``{X in LC_1 + ... + LC_max : [X, b] = 0 for b in probe}``.

    The default probe set is the basis of ``LC_1 + LC_2``.
    """
    if max_degree > cap:
        raise CapExceeded(f"probe degree {max_degree} exceeds the cap {cap}")
    if probe is None:
        probe = [LCVector.basis(d) for m in (1, 2) for d in enumerate_linear(m)]
    basis = [d for m in range(1, max_degree + 1) for d in enumerate_linear(m)]
    cols = []
    for d in basis:
        col = {}
        for i, b in enumerate(probe):
            for key, v in bracket_linear(LCVector.basis(d), b).items():
                col[i, key] = v
        cols.append(col)
    return _kernel_vectors(cols, basis, LCVector)


# -- chain complexes -----------------------------------------------------------


def _min_degree(algebra: str) -> int:
    if algebra not in ALGEBRAS:
        raise ValueError(f"unknown algebra {algebra!r}; expected one of {ALGEBRAS}")
    return 1 if algebra == "LC" else 2


def graded_basis(algebra: str, m: int, cap: int = DEFAULT_ENUMERATION_CAP) -> list:
    if m < _min_degree(algebra):
        return []
    if algebra == "C":
        return enumerate_cyclic_basis(m, cap)
    return enumerate_linear(m, cap)


def graded_dim(algebra: str, m: int) -> int:
    """``dim`` of the degree-``m`` piece (closed form for the linear algebras)."""
    if m < _min_degree(algebra):
        return 0
    if algebra == "C":
        return len(enumerate_cyclic_basis(m))
    return double_factorial_odd(m)


@dataclass
class WeightedChainBasis:
    """Exterior-power basis of ``C_k`` at weight ``w``.

    ``basis`` holds strictly increasing tuples of global indices into
    ``generators`` (sorted by ``(degree, enumeration order)``).
    """

    algebra: str
    k: int
    w: int
    generators: list
    basis: List[Tuple[int, ...]] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.basis)


def _generators(algebra: str, w: int, cap: int) -> list:
    """Basis elements of weight ``<= w``, ordered by (degree, enumeration order)."""
    return [d for m in range(_min_degree(algebra), w + 2) for d in graded_basis(algebra, m, cap)]


def chain_basis(algebra: str, k: int, w: int, cap: int = DEFAULT_ENUMERATION_CAP,
                generators: Optional[list] = None) -> WeightedChainBasis:
    if generators is None:
        generators = _generators(algebra, w, cap)
    weights = [d.m - 1 for d in generators]
    basis: List[Tuple[int, ...]] = []

    def extend(start: int, left: int, remaining: int, prefix: tuple) -> None:
        if left == 0:
            if remaining == 0:
                basis.append(prefix)
            return
        for i in range(start, len(generators)):
            wi = weights[i]
            if wi > remaining:
                break  # generators are sorted by weight
            # the remaining slots need at least weight wi each
            if wi * left > remaining and wi > 0:
                break
            extend(i + 1, left - 1, remaining - wi, prefix + (i,))

    if k >= 0:
        extend(0, k, w, ())
    return WeightedChainBasis(algebra, k, w, generators, basis)


def _bracket_terms(algebra: str, x, y) -> dict:
    if algebra == "C":
        return bracket_cyclic(CVector.basis(x), CVector.basis(y)).terms
    return bracket_linear(LCVector.basis(x), LCVector.basis(y)).terms


def _insert_sorted(rest: Tuple[int, ...], b: int) -> Optional[Tuple[int, Tuple[int, ...]]]:
    """Sign and tuple of ``b ^ rest`` reordered increasingly; None if ``b`` repeats."""
    pos = 0
    for r in rest:
        if r == b:
            return None
        if r < b:
            pos += 1
    return (-1) ** pos, rest[:pos] + (b,) + rest[pos:]


def ce_differential(algebra: str, k: int, w: int, cap: int = DEFAULT_ENUMERATION_CAP,
                    source: Optional[WeightedChainBasis] = None,
                    target: Optional[WeightedChainBasis] = None) -> SparseRationalMatrix:
    """Matrix of ``d_k: C_k(w) -> C_{k-1}(w)``.

    ``d(x_1 ^ ... ^ x_k) = sum_{i<j} (-1)^(i+j) [x_i, x_j] ^ x_1 ^ ..^ x_k`` with
    ``x_i, x_j`` omitted from the tail.
    """
    generators = _generators(algebra, w, cap)
    source = source or chain_basis(algebra, k, w, cap, generators)
    target = target or chain_basis(algebra, k - 1, w, cap, generators)
    index = {d: i for i, d in enumerate(generators)}
    row_of = {t: r for r, t in enumerate(target.basis)}
    entries: Dict[Tuple[int, int], Fraction] = {}
    cache: Dict[Tuple[int, int], dict] = {}
    for col, mono in enumerate(source.basis):
        for a, b in combinations(range(len(mono)), 2):
            xi, xj = mono[a], mono[b]
            key = (xi, xj)
            if key not in cache:
                cache[key] = _bracket_terms(algebra, generators[xi], generators[xj])
            terms = cache[key]
            if not terms:
                continue
            sign = (-1) ** (a + b)  # 0-based positions give the same parity as 1-based
            rest = mono[:a] + mono[a + 1:b] + mono[b + 1:]
            for d, c in terms.items():
                ins = _insert_sorted(rest, index[d])
                if ins is None:
                    continue
                s, tup = ins
                r = row_of[tup]
                v = entries.get((r, col), 0) + sign * s * c
                if v:
                    entries[r, col] = v
                else:
                    entries.pop((r, col), None)
    return SparseRationalMatrix(len(target), len(source), entries, target.basis, source.basis)


@dataclass
class HomologyReport:
    algebra: str
    weight: int
    chain_dims: List[int]
    ranks: List[int]
    betti: List[int]

    @property
    def euler(self) -> int:
        return sum((-1) ** k * b for k, b in enumerate(self.betti))

    def to_json(self) -> dict:
        return {"algebra": self.algebra, "weight": self.weight, "chain_dims": self.chain_dims,
                "betti": self.betti, "euler": self.euler}


def _max_chain_degree(algebra: str, w: int) -> int:
    # weight-0 generators only exist in LC (just E_0's line), so at most w + 1 factors
    return w + 1 if algebra == "LC" else w


def homology(algebra: str, w: int, k_max: Optional[int] = None,
             cap: int = DEFAULT_ENUMERATION_CAP, weight_cap: int = DEFAULT_WEIGHT_CAP) -> HomologyReport:
    """Betti numbers of ``C_*(algebra)`` in weight ``w`` for ``k = 0..k_max``."""
    if w > weight_cap:
        raise CapExceeded(f"weight {w} exceeds the homology cap {weight_cap}")
    top = _max_chain_degree(algebra, w)
    k_max = top if k_max is None else k_max
    generators = _generators(algebra, w, cap)
    bases = [chain_basis(algebra, k, w, cap, generators) for k in range(0, max(top, k_max) + 2)]
    dims = [len(b) for b in bases]
    ranks = [0] * len(bases)  # ranks[k] = rank of d_k
    for k in range(1, len(bases)):
        if dims[k] and dims[k - 1]:
            ranks[k] = rank(ce_differential(algebra, k, w, cap, bases[k], bases[k - 1]))
    betti = []
    for k in range(0, k_max + 1):
        nxt = ranks[k + 1] if k + 1 < len(ranks) else 0
        betti.append(dims[k] - ranks[k] - nxt)
    return HomologyReport(algebra, w, dims[: k_max + 1], ranks[: k_max + 1], betti)


def homology_dims(algebra: str, w: int, k_max: Optional[int] = None,
                  cap: int = DEFAULT_ENUMERATION_CAP) -> List[int]:
    return homology(algebra, w, k_max, cap).betti


def pooled_betti(algebra: str, weights: Sequence[int], k_max: int) -> List[int]:
    """Betti numbers summed over the given weights."""
    total = [0] * (k_max + 1)
    for w in weights:
        for k, b in enumerate(homology_dims(algebra, w, k_max)):
            total[k] += b
    return total


# -- closed-form dimensions and Euler characteristics ---------------------------


def chain_dims(algebra: str, w: int) -> List[int]:
    """``dim C_k(w)`` for ``k = 0, 1, ...`` from the generating function.

    The exterior algebra on generators of weight ``m - 1`` contributes
    ``prod_m (1 + y x^{m-1})^{dim_m}``; the coefficient of ``x^w y^k`` is the
    answer.
    """
    # poly[k][v] = number of k-element monomials of weight v
    top = _max_chain_degree(algebra, w)
    poly = [[0] * (w + 1) for _ in range(top + 1)]
    poly[0][0] = 1
    for m in range(_min_degree(algebra), w + 2):
        dim = graded_dim(algebra, m)
        wt = m - 1
        new = [[0] * (w + 1) for _ in range(top + 1)]
        for k in range(top + 1):
            for v in range(w + 1):
                if not poly[k][v]:
                    continue
                for j in range(0, min(dim, top - k) + 1):
                    if v + j * wt > w:
                        break
                    new[k + j][v + j * wt] += poly[k][v] * comb(dim, j)
        poly = new
    dims = [poly[k][w] for k in range(top + 1)]
    while len(dims) > 1 and dims[-1] == 0:
        dims.pop()
    return dims


def euler_series(w_max: int) -> List[int]:
    """Coefficients of ``prod_{m>=2} (1 - x^{m-1})^{(2m-1)!!}`` for ``x^1..x^w_max``."""
    coeffs = [1] + [0] * w_max
    for m in range(2, w_max + 2):
        d, wt = double_factorial_odd(m), m - 1
        new = [0] * (w_max + 1)
        for v, c in enumerate(coeffs):
            if not c:
                continue
            for j in range(0, d + 1):
                if v + j * wt > w_max:
                    break
                new[v + j * wt] += c * (-1) ** j * comb(d, j)
        coeffs = new
    return coeffs[1:]


def euler_char(w: int, route: str = "dims", algebra: str = "LC1", cap: int = DEFAULT_ENUMERATION_CAP) -> int:
    """Euler characteristic of ``C_*(algebra)`` in weight ``w``.

    ``route="dims"`` alternates the closed-form chain dimensions;
    ``route="ranks"`` alternates Betti numbers computed by exact elimination.
    """
    if route == "dims":
        return sum((-1) ** k * d for k, d in enumerate(chain_dims(algebra, w)))
    if route == "ranks":
        return homology(algebra, w, cap=cap).euler
    raise ValueError(f"unknown route {route!r}")
