"""The Lie algebras of oriented (cyclic) and linear chord diagrams.

``CVector`` elements live in the oriented chord-diagram algebra: a key
``K`` stands for the labeled chord diagram obtained by closing ``K.rep``,
which as an element of ``LC_m`` is the rotation sum ``N(K.rep)``.  The bracket
is the double sum over rotations of amalgamations,

    [N(C), N(C')] = sum_{s,t} N((nu^s C) * (nu^t C')).

``LCVector`` elements live in the linear chord-diagram algebra, keyed by
standard diagrams, with bracket

    [C, C'] = - sum_{t=2}^{2l} C *_t C' + sum_{s=2}^{2m} C' *_s C.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, Iterator, Optional, Tuple, Union

from .diagrams import (
    DEFAULT_ENUMERATION_CAP,
    CyclicClass,
    DiagramError,
    LinearDiagram,
    RawDiagram,
    StandardDiagram,
    _canonical_raw,
    _rotations_raw,
    _standardize_raw,
    canonical_cyclic,
    d_ab,
    enumerate_cyclic_basis,
    enumerate_linear,
    omega_diagram,
    parse_cyclic,
    standardize,
)
from .linalg import SparseRationalMatrix

Scalar = Union[int, Fraction]


def _fraction_text(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


class _Vector:
    """Finite linear combination with Fraction coefficients; zeros never stored."""

    algebra = ""
    __slots__ = ("terms",)

    def __init__(self, terms: Optional[dict] = None):
        clean = {}
        for k, v in (terms or {}).items():
            v = Fraction(v)
            if v:
                clean[k] = v
        self.terms = clean

    @classmethod
    def _raw(cls, terms: dict):
        obj = cls.__new__(cls)
        obj.terms = terms
        return obj

    def __iter__(self) -> Iterator:
        return iter(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __getitem__(self, key) -> Fraction:
        return self.terms.get(key, Fraction(0))

    def items(self):
        return self.terms.items()

    def __eq__(self, other) -> bool:
        if isinstance(other, int) and other == 0:
            return not self.terms
        if type(other) is not type(self):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def _combine(self, other, factor: int):
        if type(other) is not type(self):
            return NotImplemented
        out = dict(self.terms)
        for k, v in other.terms.items():
            nv = out.get(k, 0) + factor * v
            if nv:
                out[k] = nv
            else:
                out.pop(k, None)
        return self._raw(out)

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def __neg__(self):
        return self._raw({k: -v for k, v in self.terms.items()})

    def __mul__(self, c: Scalar):
        c = Fraction(c)
        if not c:
            return self._raw({})
        return self._raw({k: c * v for k, v in self.terms.items()})

    __rmul__ = __mul__

    def degrees(self) -> set:
        return {k.m for k in self.terms}

    def homogeneous(self, m: int):
        return self._raw({k: v for k, v in self.terms.items() if k.m == m})

    def coefficient_sum(self) -> Fraction:
        return sum(self.terms.values(), Fraction(0))

    def sorted_items(self):
        return sorted(self.terms.items(), key=lambda kv: (kv[0].m, kv[0]))

    def literal(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"{_fraction_text(v)} * {k.literal()}" for k, v in self.sorted_items())

    def to_json(self) -> dict:
        return {
            "algebra": self.algebra,
            "terms": [{"coeff": _fraction_text(v), "diagram": k.literal()} for k, v in self.sorted_items()],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json())

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.literal()})"


class LCVector(_Vector):
    """Element of the linear chord-diagram algebra ``LC = sum_m LC_m``."""

    algebra = "LC"
    __slots__ = ()

    @classmethod
    def basis(cls, d: StandardDiagram) -> "LCVector":
        return cls._raw({d: Fraction(1)})

    @classmethod
    def from_diagram(cls, d: Union[LinearDiagram, StandardDiagram]) -> "LCVector":
        if isinstance(d, StandardDiagram):
            return cls.basis(d)
        sign, std = standardize(d)
        return cls._raw({std: Fraction(sign)})

    @classmethod
    def parse(cls, text: str) -> "LCVector":
        return _parse_vector(text, cls)

    @classmethod
    def from_json(cls, payload: dict) -> "LCVector":
        if payload.get("algebra") != cls.algebra:
            raise DiagramError("not an LC vector")
        out = cls()
        for term in payload["terms"]:
            out = out + Fraction(term["coeff"]) * cls.from_diagram(LinearDiagram.parse(term["diagram"]))
        return out


class CVector(_Vector):
    """Element of the oriented chord-diagram algebra ``C`` (finite support)."""

    algebra = "C"
    __slots__ = ()

    @classmethod
    def basis(cls, k: CyclicClass) -> "CVector":
        return cls._raw({k: Fraction(1)})

    @classmethod
    def from_diagram(cls, d: Union[LinearDiagram, StandardDiagram]) -> "CVector":
        """The closing of ``d``; zero when ``d`` has odd index."""
        res = canonical_cyclic(d)
        if res is None:
            return cls._raw({})
        return cls._raw({res[1]: Fraction(res[0])})

    @classmethod
    def parse(cls, text: str) -> "CVector":
        return _parse_vector(text, cls)

    @classmethod
    def from_json(cls, payload: dict) -> "CVector":
        if payload.get("algebra") != cls.algebra:
            raise DiagramError("not a C vector")
        out = cls()
        for term in payload["terms"]:
            sign, k = parse_cyclic(term["diagram"])
            out = out + Fraction(term["coeff"]) * sign * cls.basis(k)
        return out


#: The degree-counting element ``E_0 = -1/2 {(1,2)}`` of ``LC_1``.
E0 = LCVector({StandardDiagram(((1, 2),)): Fraction(-1, 2)})


# -- amalgamations ---------------------------------------------------------------


def _first_chord(chords: RawDiagram) -> Tuple[Tuple[int, int], list]:
    for pos, (i, j) in enumerate(chords):
        if i == 1 or j == 1:
            return (i, j), [c for k, c in enumerate(chords) if k != pos]
    raise DiagramError("diagram has no chord at vertex 1")


def linear_amalgamate(c: LinearDiagram, cp: LinearDiagram) -> LinearDiagram:
    """The amalgamation ``C * C'`` joining the chords through vertex 1 of each.

    ``C`` minus vertex 1 occupies ``1..2m-1``, ``C'`` minus vertex 1 follows,
    and the two partners of vertex 1 are joined by a new chord whose label is
    fixed by the four-case table.
    """
    if not isinstance(c, LinearDiagram):
        c = c.as_linear()
    if not isinstance(cp, LinearDiagram):
        cp = cp.as_linear()
    m = c.m
    (i1, j1), rest = _first_chord(c.chords)
    (a1, b1), rest_p = _first_chord(cp.chords)
    shift = 2 * m - 2
    if i1 == 1 and a1 == 1:
        bridge = (b1 + shift, j1 - 1)
    elif i1 == 1 and b1 == 1:
        bridge = (j1 - 1, a1 + shift)
    elif j1 == 1 and a1 == 1:
        bridge = (i1 - 1, b1 + shift)
    else:
        bridge = (a1 + shift, i1 - 1)
    chords = [bridge]
    chords.extend((i - 1, j - 1) for i, j in rest)
    chords.extend((a + shift, b + shift) for a, b in rest_p)
    return LinearDiagram(tuple(chords))


def _involution(chords: RawDiagram) -> list:
    inv = [0] * (2 * len(chords) + 1)
    for i, j in chords:
        inv[i], inv[j] = j, i
    return inv


def _t_amalgamate_raw(c: RawDiagram, t: int, cp: RawDiagram) -> RawDiagram:
    m, l = len(c), len(cp)
    sig, sigp = _involution(c), _involution(cp)
    n = 2 * m + 2 * l - 2
    shift = 2 * m - 2
    out = [0] * (n + 1)

    def f(k: int) -> int:
        return k if k <= t - 1 else k + shift

    a, b = sig[1] + t - 2, f(sigp[t])
    out[a], out[b] = b, a
    for k in range(1, n + 1):
        if out[k]:
            continue
        if k <= t - 1:
            out[k] = f(sigp[k])
        elif k <= t + 2 * m - 2:
            out[k] = sig[k - t + 2] + t - 2
        else:
            out[k] = f(sigp[k - shift])
    return tuple((k, out[k]) for k in range(1, n + 1) if k < out[k])


def t_amalgamate(c: StandardDiagram, t: int, cp: StandardDiagram) -> StandardDiagram:
    """The ``t``-th amalgamation ``C *_t C'`` (``2 <= t <= 2l``), standard label.

    ``C`` minus its first vertex is inserted into the hole left by deleting
    vertex ``t`` of ``C'``, and the partners of the two deleted vertices are
    joined.
    """
    if not 2 <= t <= 2 * cp.m:
        raise DiagramError(f"t = {t} out of range 2..{2 * cp.m}")
    return StandardDiagram._trusted(_t_amalgamate_raw(c.chords, t, cp.chords))


# -- brackets on basis elements ------------------------------------------------


@lru_cache(maxsize=1 << 16)
def _lc_bracket_raw(c: RawDiagram, cp: RawDiagram) -> Tuple[Tuple[RawDiagram, int], ...]:
    acc: Dict[RawDiagram, int] = {}
    for t in range(2, 2 * len(cp) + 1):
        d = _t_amalgamate_raw(c, t, cp)
        acc[d] = acc.get(d, 0) - 1
    for s in range(2, 2 * len(c) + 1):
        d = _t_amalgamate_raw(cp, s, c)
        acc[d] = acc.get(d, 0) + 1
    return tuple((d, v) for d, v in acc.items() if v)


@lru_cache(maxsize=1 << 12)
def _signed_rotations(rep: RawDiagram) -> tuple:
    return tuple(_rotations_raw(rep))


def _closed_amalgam_raw(e: RawDiagram, ep: RawDiagram) -> Tuple[int, RawDiagram]:
    # both standard, so vertex 1 starts the first chord of each: case i_1 = a_1 = 1
    m = len(e)
    shift = 2 * m - 2
    (_, j1), rest = e[0], e[1:]
    (_, b1), rest_p = ep[0], ep[1:]
    chords = [(b1 + shift, j1 - 1)]
    chords.extend((i - 1, j - 1) for i, j in rest)
    chords.extend((a + shift, b + shift) for a, b in rest_p)
    return _standardize_raw(chords)


@lru_cache(maxsize=1 << 14)
def _c_bracket_raw(rep: RawDiagram, rep_p: RawDiagram) -> Tuple[Tuple[RawDiagram, int, int], ...]:
    acc: Dict[RawDiagram, int] = {}
    index: Dict[RawDiagram, int] = {}
    for s1, e in _signed_rotations(rep):
        for s2, ep in _signed_rotations(rep_p):
            s3, d = _closed_amalgam_raw(e, ep)
            res = _canonical_raw(d)
            if res is None:
                continue
            s4, key, idx = res
            acc[key] = acc.get(key, 0) + s1 * s2 * s3 * s4
            index[key] = idx
    return tuple((key, v, index[key]) for key, v in acc.items() if v)


def bracket_linear(x: LCVector, y: LCVector) -> LCVector:
    """Bracket of the linear chord-diagram algebra, extended bilinearly."""
    acc: Dict[StandardDiagram, Fraction] = {}
    for c, a in x.items():
        for cp, b in y.items():
            ab = a * b
            for d, v in _lc_bracket_raw(c.chords, cp.chords):
                key = StandardDiagram._trusted(d)
                acc[key] = acc.get(key, 0) + ab * v
    return LCVector._raw({k: v for k, v in acc.items() if v})


def bracket_cyclic(x: CVector, y: CVector) -> CVector:
    """Bracket of the oriented chord-diagram algebra, extended bilinearly."""
    acc: Dict[CyclicClass, Fraction] = {}
    for k, a in x.items():
        for kp, b in y.items():
            ab = a * b
            for d, v, idx in _c_bracket_raw(k.rep.chords, kp.rep.chords):
                key = CyclicClass(StandardDiagram._trusted(d), idx)
                acc[key] = acc.get(key, 0) + ab * v
    return CVector._raw({k: v for k, v in acc.items() if v})


def bracket(x, y):
    """Dispatch on the vector type."""
    if isinstance(x, CVector) and isinstance(y, CVector):
        return bracket_cyclic(x, y)
    if isinstance(x, LCVector) and isinstance(y, LCVector):
        return bracket_linear(x, y)
    raise TypeError("both arguments must be CVector or both LCVector")


# -- maps between the algebras -------------------------------------------------


def n_map(x: LCVector) -> CVector:
    """``N: LC_m -> C_m``, the rotation sum, written in the class basis.

    A diagram ``d`` maps to ``sign * [class of d]`` (zero for odd index); as
    an actual sum of linear diagrams see :func:`to_linear`.
    """
    acc: Dict[CyclicClass, Fraction] = {}
    for d, a in x.items():
        res = canonical_cyclic(d)
        if res is None:
            continue
        sign, k = res
        acc[k] = acc.get(k, 0) + sign * a
    return CVector._raw({k: v for k, v in acc.items() if v})


def rotation_sum(d: Union[LinearDiagram, StandardDiagram]) -> LCVector:
    """``N(d) = sum_s nu^s(d)`` computed directly in ``LC``."""
    if isinstance(d, StandardDiagram):
        sign, chords = 1, d.chords
    else:
        sign, chords = _standardize_raw(d.chords)
    acc: Dict[StandardDiagram, Fraction] = {}
    for s, cur in _rotations_raw(chords):
        key = StandardDiagram._trusted(cur)
        acc[key] = acc.get(key, 0) + s * sign
    return LCVector._raw({k: Fraction(v) for k, v in acc.items() if v})


def to_linear(x: CVector) -> LCVector:
    """Expand each class ``K`` as the linear combination ``N(K.rep)``."""
    out = LCVector()
    for k, a in x.items():
        out = out + a * rotation_sum(k.rep)
    return out


class PolyVectorField:
    """``sum_m c_m x^m d/dx`` with rational coefficients."""

    __slots__ = ("coefficients",)

    def __init__(self, coefficients: Optional[Dict[int, Scalar]] = None):
        self.coefficients = {m: Fraction(c) for m, c in (coefficients or {}).items() if c}
        if any(m < 0 for m in self.coefficients):
            raise ValueError("negative powers of x are not polynomial")

    def __eq__(self, other) -> bool:
        if not isinstance(other, PolyVectorField):
            return NotImplemented
        return self.coefficients == other.coefficients

    def __add__(self, other: "PolyVectorField") -> "PolyVectorField":
        out = dict(self.coefficients)
        for m, c in other.coefficients.items():
            out[m] = out.get(m, 0) + c
        return PolyVectorField(out)

    def bracket(self, other: "PolyVectorField") -> "PolyVectorField":
        # [x^a d/dx, x^b d/dx] = (b - a) x^(a+b-1) d/dx
        out: Dict[int, Fraction] = {}
        for a, ca in self.coefficients.items():
            for b, cb in other.coefficients.items():
                if a + b - 1 >= 0:
                    out[a + b - 1] = out.get(a + b - 1, 0) + (b - a) * ca * cb
        return PolyVectorField(out)

    def __repr__(self) -> str:
        terms = " + ".join(f"{_fraction_text(c)} x^{m} d/dx" for m, c in sorted(self.coefficients.items()))
        return f"PolyVectorField({terms or '0'})"


def kappa(x: LCVector) -> PolyVectorField:
    """Every diagram of ``m`` chords goes to ``-2 x^m d/dx``."""
    out: Dict[int, Fraction] = {}
    for d, a in x.items():
        out[d.m] = out.get(d.m, 0) - 2 * a
    return PolyVectorField(out)


# -- matrices of ad ------------------------------------------------------------


def ad_matrix(z: Union[CVector, LCVector], source_degree: int, cap: int = DEFAULT_ENUMERATION_CAP) -> SparseRationalMatrix:
    """Matrix of ``x -> [z, x]`` on the basis of the given source degree.

    Columns follow the enumeration order of the source basis; rows are the
    keys met in the images, in order of first appearance.
    """
    if isinstance(z, CVector):
        basis = enumerate_cyclic_basis(source_degree, cap)
        cols = [bracket_cyclic(z, CVector.basis(k)).terms for k in basis]
    elif isinstance(z, LCVector):
        basis = enumerate_linear(source_degree, cap)
        cols = [bracket_linear(z, LCVector.basis(d)).terms for d in basis]
    else:
        raise TypeError("z must be a CVector or an LCVector")
    return SparseRationalMatrix.from_columns(cols, col_keys=basis)


# -- vector literals -----------------------------------------------------------

_TERM_SPLIT = re.compile(r"\s+([+-])\s+(?=[-+\d]|E0|Omega|D\(|lin|cyc)")
_OMEGA_RE = re.compile(r"Omega(\d+)")
_DAB_RE = re.compile(r"D\((\d+)\s*,\s*(\d+)\)")


def _parse_vector(text: str, cls):
    text = text.strip()
    if text == "0":
        return cls()
    pieces = []
    sign = 1
    pos = 0
    for m in _TERM_SPLIT.finditer(text):
        pieces.append((sign, text[pos:m.start()]))
        sign = 1 if m.group(1) == "+" else -1
        pos = m.end()
    pieces.append((sign, text[pos:]))
    out = cls()
    for sign, piece in pieces:
        piece = piece.strip()
        if "*" in piece:
            coeff_text, diagram_text = piece.split("*", 1)
            try:
                coeff = Fraction(coeff_text.strip())
            except (ValueError, ZeroDivisionError) as exc:
                raise DiagramError(f"bad coefficient {coeff_text.strip()!r}") from exc
        else:
            coeff, diagram_text = Fraction(1), piece
        diagram_text = diagram_text.strip()
        if diagram_text == "E0":
            if cls is not LCVector:
                raise DiagramError("E0 is reserved for LC vectors")
            term = E0
        elif cls is CVector:
            term = _parse_cyclic_term(diagram_text)
        else:
            term = LCVector.from_diagram(LinearDiagram.parse(diagram_text))
        out = out + (sign * coeff) * term
    return out


def _parse_cyclic_term(text: str) -> CVector:
    m = _OMEGA_RE.fullmatch(text)
    if m:
        return CVector.basis(omega_diagram(int(m.group(1))))
    m = _DAB_RE.fullmatch(text)
    if m:
        res = d_ab(int(m.group(1)), int(m.group(2)))
        return CVector() if res is None else res[0] * CVector.basis(res[1])
    if text.startswith("cyc"):
        # a declared class must be nonzero and have the stated index
        s, k = parse_cyclic(text)
        return s * CVector.basis(k)
    return CVector.from_diagram(LinearDiagram.parse(text))
