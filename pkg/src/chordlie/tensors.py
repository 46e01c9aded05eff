"""Tensors over a genus-g symplectic space, derivations, and the map ``a``.

Basis letters are integers: ``A_i -> 2(i-1)`` and ``B_i -> 2(i-1)+1``, with
``A_i . B_i = 1``.  A homogeneous word of degree ``n`` is encoded as an int64
in base ``2g``, first letter most significant, so one homogeneous component
is a pair of numpy arrays (sorted unique codes, nonzero integer coefficients).
A tensor carries one extra rational ``scale`` multiplying every coefficient.

A tensor ``X_1 X_2 ... X_p`` read as a derivation acts on generators by
``Z -> (Z . X_1) X_2 ... X_p``; derivations compose as ``[D, D'] = D D' - D' D``.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

import numpy as np

from .diagrams import LinearDiagram, StandardDiagram
from .linalg import SparseRationalMatrix, kernel_basis, rank_of_vectors

DEFAULT_TRUNCATION = 14
DEFAULT_LINALG_CAP = 1_000_000

# int64 products stay exact while every partial sum is below this
_INT_LIMIT = float(2 ** 62)

Comp = Tuple[np.ndarray, np.ndarray]


class TensorError(ValueError):
    pass


class TruncationError(RuntimeError):
    pass


# -- symplectic space ------------------------------------------------------------


@dataclass(frozen=True)
class SymplecticSpace:
    """``H = Q<A_1, B_1, ..., A_g, B_g>`` with the intersection pairing."""

    g: int

    def __post_init__(self) -> None:
        if self.g < 1:
            raise TensorError("genus must be at least 1")

    @property
    def dim(self) -> int:
        return 2 * self.g

    @property
    def symbols(self) -> Tuple[str, ...]:
        return tuple(self.name(k) for k in range(self.dim))

    def name(self, letter: int) -> str:
        return f"{'AB'[letter % 2]}{letter // 2 + 1}"

    def letter(self, name: Union[str, int]) -> int:
        if isinstance(name, (int, np.integer)):
            k = int(name)
        else:
            m = re.fullmatch(r"([AB])(\d+)", name.strip())
            if not m:
                raise TensorError(f"bad symbol {name!r}")
            k = 2 * (int(m.group(2)) - 1) + (m.group(1) == "B")
        if not 0 <= k < self.dim:
            raise TensorError(f"symbol {name!r} not in genus {self.g}")
        return k

    def pairing(self, x: Union[str, int], y: Union[str, int]) -> int:
        a, b = self.letter(x), self.letter(y)
        if a // 2 != b // 2 or a == b:
            return 0
        return 1 if a % 2 == 0 else -1

    def omega_tensor(self) -> "Tensor":
        """``omega = sum_i A_i B_i - B_i A_i``."""
        return Tensor.from_terms(self, {(2 * i, 2 * i + 1): 1 for i in range(self.g)}
                                 | {(2 * i + 1, 2 * i): -1 for i in range(self.g)})


def pairing(x: str, y: str, space: Optional[SymplecticSpace] = None) -> int:
    """Pairing of two symbol names (genus inferred when not given)."""
    if space is None:
        g = max(int(re.sub(r"\D", "", s) or 0) for s in (x, y))
        space = SymplecticSpace(max(g, 1))
    return space.pairing(x, y)


def omega_tensor(space: SymplecticSpace) -> "Tensor":
    return space.omega_tensor()


def _partner(letters: np.ndarray) -> np.ndarray:
    return letters ^ 1


def _pair_sign(letters: np.ndarray) -> np.ndarray:
    # letter . partner(letter)
    return 1 - 2 * (letters & 1)


# -- component kernels ---------------------------------------------------------


def _l1(coeffs: np.ndarray) -> float:
    if coeffs.dtype == object:
        return float(sum(abs(int(c)) for c in coeffs))
    return float(np.abs(coeffs).sum(dtype=np.float64))


def _as_object(coeffs: np.ndarray) -> np.ndarray:
    return coeffs if coeffs.dtype == object else coeffs.astype(object)


def _promote(arrays: Sequence[np.ndarray], bound: float) -> List[np.ndarray]:
    if bound >= _INT_LIMIT or any(a.dtype == object for a in arrays):
        return [_as_object(a) for a in arrays]
    return list(arrays)


def _reduce(codes: np.ndarray, coeffs: np.ndarray) -> Comp:
    """Sum coefficients of equal codes; drop zeros; codes come out sorted."""
    if codes.size == 0:
        return codes.astype(np.int64), coeffs
    order = np.argsort(codes, kind="stable")
    codes = codes[order]
    coeffs = coeffs[order]
    starts = np.flatnonzero(np.concatenate(([True], codes[1:] != codes[:-1])))
    codes = codes[starts]
    coeffs = np.add.reduceat(coeffs, starts)
    keep = coeffs != 0
    if coeffs.dtype == object:
        keep = keep.astype(bool)
    return codes[keep], coeffs[keep]


def _concat(parts: Sequence[Comp]) -> Comp:
    parts = [p for p in parts if p[0].size]
    if not parts:
        return np.zeros(0, np.int64), np.zeros(0, np.int64)
    coeffs = [p[1] for p in parts]
    coeffs = _promote(coeffs, sum(_l1(c) for c in coeffs))
    return np.concatenate([p[0] for p in parts]), np.concatenate(coeffs)


def _sum(parts: Sequence[Comp]) -> Comp:
    return _reduce(*_concat(parts))


def _outer(c1: np.ndarray, c2: np.ndarray) -> np.ndarray:
    c1, c2 = _promote([c1, c2], _l1(c1) * _l1(c2))
    return np.multiply.outer(c1, c2).ravel()


def _scaled(coeffs: np.ndarray, k: int) -> np.ndarray:
    if k == 1:
        return coeffs
    (coeffs,) = _promote([coeffs], _l1(coeffs) * abs(k))
    return coeffs * k


class Tensor:
    """Finite rational combination of words, stored per homogeneous degree."""

    __slots__ = ("space", "comps", "scale")

    def __init__(self, space: SymplecticSpace, comps: Optional[Dict[int, Comp]] = None, scale: Scalar = 1):
        self.space = space
        scale = Fraction(scale)
        clean: Dict[int, Comp] = {}
        if scale:
            for n, (codes, coeffs) in (comps or {}).items():
                if codes.size:
                    clean[n] = (codes, coeffs)
        self.comps = clean
        self.scale = scale if clean else Fraction(1)
        self._check_degrees()

    def _check_degrees(self) -> None:
        for n in self.comps:
            if n * math.log2(self.space.dim) > 62:
                raise TruncationError(f"degree {n} words do not fit a 64-bit code at genus {self.space.g}")

    # construction

    @classmethod
    def zero(cls, space: SymplecticSpace) -> "Tensor":
        return cls(space)

    @classmethod
    def from_terms(cls, space: SymplecticSpace, terms: Mapping) -> "Tensor":
        """From ``{word: coefficient}``; a word is a sequence of letters or names."""
        by_degree: Dict[int, Tuple[list, list]] = {}
        den = 1
        fterms = []
        for word, c in terms.items():
            c = Fraction(c)
            if not c:
                continue
            letters = [space.letter(x) for x in word]
            fterms.append((letters, c))
            den = math.lcm(den, c.denominator)
        for letters, c in fterms:
            codes, coeffs = by_degree.setdefault(len(letters), ([], []))
            codes.append(_encode(letters, space.dim))
            coeffs.append(int(c * den))
        comps = {}
        for n, (codes, coeffs) in by_degree.items():
            arr = np.array(coeffs, dtype=object)
            if max(abs(c) for c in coeffs) * len(coeffs) < _INT_LIMIT:
                arr = arr.astype(np.int64)
            comps[n] = _reduce(np.array(codes, dtype=np.int64), arr)
        return cls(space, comps, Fraction(1, den))

    @classmethod
    def word(cls, space: SymplecticSpace, *letters) -> "Tensor":
        return cls.from_terms(space, {tuple(letters): 1})

    # inspection

    def degrees(self) -> List[int]:
        return sorted(self.comps)

    def homogeneous(self, n: int) -> "Tensor":
        return Tensor(self.space, {n: self.comps[n]} if n in self.comps else {}, self.scale)

    def is_zero(self) -> bool:
        return not self.comps

    def nnz(self) -> int:
        return sum(c[0].size for c in self.comps.values())

    def terms(self) -> Dict[Tuple[int, ...], Fraction]:
        out = {}
        for n, (codes, coeffs) in sorted(self.comps.items()):
            for code, c in zip(codes.tolist(), coeffs.tolist()):
                out[_decode(code, n, self.space.dim)] = self.scale * int(c)
        return out

    def coefficient_vector(self) -> Dict[Tuple[int, int], Fraction]:
        """``{(degree, code): coefficient}``, handy as a sparse vector."""
        out = {}
        for n, (codes, coeffs) in self.comps.items():
            for code, c in zip(codes.tolist(), coeffs.tolist()):
                out[n, code] = self.scale * int(c)
        return out

    # arithmetic

    def _same_space(self, other: "Tensor") -> None:
        if not isinstance(other, Tensor):
            raise TypeError("expected a Tensor")
        if other.space != self.space:
            raise TensorError("tensors live in different symplectic spaces")

    def _combine(self, other: "Tensor", sign: int) -> "Tensor":
        self._same_space(other)
        if other.is_zero():
            return self
        if self.is_zero():
            return other if sign == 1 else -other
        den = math.lcm(self.scale.denominator, other.scale.denominator)
        k1 = self.scale * den
        k2 = sign * other.scale * den
        g = math.gcd(k1.numerator, k2.numerator)
        k1, k2 = k1.numerator // g, k2.numerator // g
        comps = {}
        for n in set(self.comps) | set(other.comps):
            parts = []
            if n in self.comps:
                parts.append((self.comps[n][0], _scaled(self.comps[n][1], k1)))
            if n in other.comps:
                parts.append((other.comps[n][0], _scaled(other.comps[n][1], k2)))
            comps[n] = _sum(parts)
        return Tensor(self.space, comps, Fraction(g, den))

    def __add__(self, other: "Tensor") -> "Tensor":
        return self._combine(other, 1)

    def __sub__(self, other: "Tensor") -> "Tensor":
        return self._combine(other, -1)

    def __neg__(self) -> "Tensor":
        return Tensor(self.space, self.comps, -self.scale)

    def __mul__(self, c: Scalar) -> "Tensor":
        return Tensor(self.space, self.comps, self.scale * Fraction(c))

    __rmul__ = __mul__

    def __matmul__(self, other: "Tensor") -> "Tensor":
        """Concatenation product in the tensor algebra."""
        self._same_space(other)
        base = self.space.dim
        out: Dict[int, List[Comp]] = {}
        for n1, (c1, k1) in self.comps.items():
            for n2, (c2, k2) in other.comps.items():
                codes = (np.multiply.outer(c1 * base ** n2, np.ones_like(c2)) + c2).ravel()
                out.setdefault(n1 + n2, []).append((codes, _outer(k1, k2)))
        return Tensor(self.space, {n: _sum(p) for n, p in out.items()}, self.scale * other.scale)

    def __pow__(self, k: int) -> "Tensor":
        if k < 0:
            raise ValueError("negative power")
        out = Tensor.from_terms(self.space, {(): 1})
        for _ in range(k):
            out = out @ self
        return out

    def __eq__(self, other) -> bool:
        if isinstance(other, int) and other == 0:
            return self.is_zero()
        if not isinstance(other, Tensor):
            return NotImplemented
        return self.space == other.space and (self - other).is_zero()

    __hash__ = None

    def truncate(self, bound: int) -> "Tensor":
        return Tensor(self.space, {n: c for n, c in self.comps.items() if n <= bound}, self.scale)

    # text forms

    def literal(self) -> str:
        head = f"g={self.space.g}:"
        items = list(self.terms().items())
        if not items:
            return head + " 0"
        parts = []
        for k, (word, c) in enumerate(items):
            sign = "-" if c < 0 else "+"
            mag = _fraction_text(abs(c))
            text = " ".join(self.space.name(x) for x in word) or "()"
            if k == 0:
                parts.append(f"{'-' if c < 0 else ''}{mag} * {text}")
            else:
                parts.append(f"{sign} {mag} * {text}")
        return head + " " + " ".join(parts)

    @classmethod
    def parse(cls, text: str) -> "Tensor":
        m = re.fullmatch(r"\s*g\s*=\s*(\d+)\s*:(.*)", text, re.S)
        if not m:
            raise TensorError("tensor literal must start with 'g=<genus>:'")
        space = SymplecticSpace(int(m.group(1)))
        body = m.group(2).strip()
        if body == "0":
            return cls(space)
        terms: Dict[tuple, Fraction] = {}
        for sign, coeff, word in re.findall(r"([+-]?)\s*([\d/]+)\s*\*\s*((?:\(\)|[AB]\d+)(?:\s+[AB]\d+)*)", body):
            letters = () if word == "()" else tuple(space.letter(w) for w in word.split())
            c = Fraction(coeff) * (-1 if sign == "-" else 1)
            terms[letters] = terms.get(letters, 0) + c
        return cls.from_terms(space, terms)

    def to_json(self) -> dict:
        return {
            "genus": self.space.g,
            "terms": [
                {"coeff": _fraction_text(c), "word": " ".join(self.space.name(x) for x in w)}
                for w, c in self.terms().items()
            ],
        }

    @classmethod
    def from_json(cls, payload: dict) -> "Tensor":
        space = SymplecticSpace(int(payload["genus"]))
        terms = {}
        for t in payload["terms"]:
            word = tuple(space.letter(x) for x in t["word"].split())
            terms[word] = Fraction(t["coeff"])
        return cls.from_terms(space, terms)

    def __repr__(self) -> str:
        if self.nnz() > 12:
            return f"Tensor(g={self.space.g}, degrees={self.degrees()}, nnz={self.nnz()})"
        return f"Tensor({self.literal()})"


Scalar = Union[int, Fraction]


def _fraction_text(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _encode(letters: Sequence[int], base: int) -> int:
    code = 0
    for x in letters:
        code = code * base + x
    return code


def _decode(code: int, n: int, base: int) -> Tuple[int, ...]:
    out = []
    for _ in range(n):
        code, x = divmod(code, base)
        out.append(x)
    return tuple(reversed(out))


def _letters_at(codes: np.ndarray, n: int, k: int, base: int) -> np.ndarray:
    """Letter at 0-based position ``k`` of degree-``n`` codes."""
    return (codes // base ** (n - 1 - k)) % base


# -- the cyclic symmetrizer ------------------------------------------------------


def _nu_codes(codes: np.ndarray, n: int, base: int, steps: int = 1) -> np.ndarray:
    """``X_1 ... X_n -> X_{s+1} ... X_n X_1 ... X_s``."""
    steps %= n
    if not steps:
        return codes
    high = base ** (n - steps)
    return (codes % high) * base ** steps + codes // high


def nu(t: Tensor, steps: int = 1) -> Tensor:
    """Cyclic rotation ``X_1 X_2 ... X_n -> X_2 ... X_n X_1`` in every degree."""
    base = t.space.dim
    comps = {}
    for n, (codes, coeffs) in t.comps.items():
        if n == 0:
            comps[n] = (codes, coeffs)
            continue
        comps[n] = _reduce(_nu_codes(codes, n, base, steps), coeffs)
    return Tensor(t.space, comps, t.scale)


def n_tensor(t: Tensor) -> Tensor:
    """``N = sum_k nu^k`` on each degree, zero on constants."""
    base = t.space.dim
    comps = {}
    for n, (codes, coeffs) in t.comps.items():
        if n == 0:
            continue
        acc = (codes, coeffs)
        for k in range(1, n):
            acc = _sum([acc, (_nu_codes(codes, n, base, k), coeffs)])
        comps[n] = acc
    return Tensor(t.space, comps, t.scale)


# -- the map a -------------------------------------------------------------------


def a_linear(c: Union[LinearDiagram, StandardDiagram], space: SymplecticSpace) -> Tensor:
    """``a(C)``: one copy of ``omega`` per chord ``(i, j)``, first factor at ``i``."""
    base, n = space.dim, 2 * c.m
    codes = np.zeros(1, np.int64)
    coeffs = np.ones(1, np.int64)
    first = np.arange(base, dtype=np.int64)
    second = _partner(first)
    signs = _pair_sign(first)
    for i, j in c.chords:
        step = first * base ** (n - i) + second * base ** (n - j)
        codes = (codes[:, None] + step[None, :]).ravel()
        coeffs = (coeffs[:, None] * signs[None, :]).ravel()
    return Tensor(space, {n: _reduce(codes, coeffs)})


def a_lc(x, space: SymplecticSpace) -> Tensor:
    """Linear extension of ``a`` to an ``LCVector``."""
    out = Tensor(space)
    for d, coeff in x.items():
        out = out + coeff * a_linear(d, space)
    return out


def a_cyclic(x, space: SymplecticSpace) -> Tensor:
    """``a`` on a ``CVector``: each class goes to ``N a(rep)``."""
    out = Tensor(space)
    for k, coeff in x.items():
        out = out + coeff * n_tensor(a_linear(k.rep, space))
    return out


# -- derivations -----------------------------------------------------------------


@dataclass(frozen=True)
class Derivation:
    """A derivation of the tensor algebra given by an element of ``H (x) T``."""

    tensor: Tensor

    def __post_init__(self) -> None:
        if 0 in self.tensor.comps:
            raise TensorError("a derivation has no degree-0 part")

    @property
    def space(self) -> SymplecticSpace:
        return self.tensor.space

    def images(self) -> Dict[int, List[Comp]]:
        """``{letter: [(codes, coeffs) per degree]}`` of ``D(letter)``, unscaled.

        Component ``(codes, coeffs)`` of degree ``q`` is returned with its
        degree as a third entry.
        """
        return _generator_images(self.tensor)

    def on_generator(self, letter: Union[int, str]) -> Tensor:
        letter = self.space.letter(letter)
        comps = {q: (c, k) for c, k, q in _generator_images(self.tensor).get(letter, [])}
        return Tensor(self.space, comps, self.tensor.scale)

    def __call__(self, t: Tensor) -> Tensor:
        return derivation_apply(self, t)

    @classmethod
    def from_generator_images(cls, space: SymplecticSpace, images: Mapping[int, Tensor]) -> "Derivation":
        """Reconstruct ``D = sum_i B_i (x) D(A_i) - A_i (x) D(B_i)``."""
        out = Tensor(space)
        for i in range(space.g):
            a, b = 2 * i, 2 * i + 1
            if a in images:
                out = out + Tensor.word(space, b) @ images[a]
            if b in images:
                out = out - Tensor.word(space, a) @ images[b]
        return cls(out)


def _generator_images(t: Tensor) -> Dict[int, list]:
    base = t.space.dim
    out: Dict[int, list] = {}
    for p, (codes, coeffs) in t.comps.items():
        q = p - 1
        first = codes // base ** q
        rest = codes % base ** q
        for letter in range(base):
            # Z . X_1 is nonzero only for X_1 the partner of Z
            mask = first == (letter ^ 1)
            if not mask.any():
                continue
            sign = 1 if letter % 2 == 0 else -1
            out.setdefault(letter, []).append((rest[mask], coeffs[mask] * sign, q))
    return out


def derivation_apply(d: Derivation, t: Tensor) -> Tensor:
    """Leibniz extension of the generator action of ``d`` to ``t``."""
    if d.space != t.space:
        raise TensorError("derivation and tensor live in different spaces")
    base = t.space.dim
    images = d.images()
    out: Dict[int, List[Comp]] = {}
    for n, (codes, coeffs) in t.comps.items():
        for k in range(n):
            w = base ** (n - 1 - k)
            letters = (codes // w) % base
            prefix = codes // (w * base)
            suffix = codes % w
            for letter, comps in images.items():
                mask = letters == letter
                if not mask.any():
                    continue
                pre, suf, cf = prefix[mask], suffix[mask], coeffs[mask]
                for img_codes, img_coeffs, q in comps:
                    if (n - 1 + q) * math.log2(base) > 62:
                        raise TruncationError(f"degree {n - 1 + q} words do not fit a 64-bit code")
                    new = ((pre * base ** q)[:, None] + img_codes[None, :]) * w + suf[:, None]
                    out.setdefault(n - 1 + q, []).append((new.ravel(), _outer(cf, img_coeffs)))
            # fold partial results per position to bound memory
            for deg in out:
                if len(out[deg]) > 1:
                    out[deg] = [_sum(out[deg])]
    return Tensor(t.space, {deg: _sum(p) for deg, p in out.items()}, d.tensor.scale * t.scale)


def derivation_commutator(d1: Union[Derivation, Tensor], d2: Union[Derivation, Tensor],
                          truncation: int = DEFAULT_TRUNCATION) -> Tensor:
    """``[D1, D2] = D1 D2 - D2 D1`` evaluated on generators, then repackaged."""
    d1 = d1 if isinstance(d1, Derivation) else Derivation(d1)
    d2 = d2 if isinstance(d2, Derivation) else Derivation(d2)
    if d1.space != d2.space:
        raise TensorError("derivations live in different spaces")
    top = max(d1.tensor.degrees(), default=0) + max(d2.tensor.degrees(), default=0) - 2
    if top > truncation:
        raise TruncationError(f"bracket reaches degree {top} beyond the truncation bound {truncation}")
    space = d1.space
    images = {}
    for z in range(space.dim):
        gen = Tensor.word(space, z)
        images[z] = d1(d2(gen)) - d2(d1(gen))
    return Derivation.from_generator_images(space, images).tensor


def bracket_formula(u: Tensor, v: Tensor) -> Tensor:
    """Closed form of ``[N u, N v]`` without composing derivations.

    For words ``u = X_1..X_n`` and ``v = Y_1..Y_m`` this is
    ``-sum_{s,t} (X_s . Y_t) N(X_{s+1}..X_{s-1} Y_{t+1}..Y_{t-1})``.
    """
    u._same_space(v)
    if any(n < 2 for n in u.degrees() + v.degrees()):
        raise TensorError("bracket_formula needs degrees >= 2")
    base = u.space.dim
    out: Dict[int, List[Comp]] = {}
    for n, (cu, ku) in u.comps.items():
        for m, (cv, kv) in v.comps.items():
            parts = []
            for s in range(n):
                # rotate so X_s leads, then drop it
                ru = _nu_codes(cu, n, base, s)
                xs = ru // base ** (n - 1)
                ru = ru % base ** (n - 1)
                for t in range(m):
                    rv = _nu_codes(cv, m, base, t)
                    yt = rv // base ** (m - 1)
                    rv = rv % base ** (m - 1)
                    parts.extend(_paired_concat(xs, ru, ku, yt, rv, kv, base ** (m - 1)))
            out[n + m - 2] = [_sum(parts)] if parts else []
    raw = Tensor(u.space, {d: p[0] for d, p in out.items() if p}, -u.scale * v.scale)
    return n_tensor(raw)


def _paired_concat(xs, ru, ku, yt, rv, kv, shift) -> List[Comp]:
    parts = []
    for letter in np.unique(xs):
        mu = xs == letter
        mv = yt == (letter ^ 1)
        if not mv.any():
            continue
        sign = 1 if letter % 2 == 0 else -1
        codes = (ru[mu] * shift)[:, None] + rv[mv][None, :]
        parts.append((codes.ravel(), _outer(ku[mu] * sign, kv[mv])))
    return parts


def b_map(u: Tensor, v: Tensor) -> Tensor:
    """``B(X_1..X_n, Y_1..Y_m) = -(X_1 . Y_1) N(X_2..X_n Y_2..Y_m)``."""
    return n_tensor(b_prime(u, v))


def b_prime(u: Tensor, v: Tensor) -> Tensor:
    """``-(X_1 . Y_1) X_2..X_n Y_2..Y_m`` without the symmetrizer."""
    u._same_space(v)
    base = u.space.dim
    out: Dict[int, List[Comp]] = {}
    for n, (cu, ku) in u.comps.items():
        for m, (cv, kv) in v.comps.items():
            if n < 1 or m < 1:
                continue
            xs, ru = cu // base ** (n - 1), cu % base ** (n - 1)
            yt, rv = cv // base ** (m - 1), cv % base ** (m - 1)
            out.setdefault(n + m - 2, []).extend(_paired_concat(xs, ru, ku, yt, rv, kv, base ** (m - 1)))
    return Tensor(u.space, {d: _sum(p) for d, p in out.items() if p}, -u.scale * v.scale)


# -- kernel of N -----------------------------------------------------------------


def _all_words(n: int, space: SymplecticSpace) -> np.ndarray:
    return np.arange(space.dim ** n, dtype=np.int64)


def n_matrix(n: int, space: SymplecticSpace, cap: int = DEFAULT_LINALG_CAP) -> SparseRationalMatrix:
    """Matrix of ``N`` on ``H^{(x)n}`` in the word basis (codes as indices)."""
    size = space.dim ** n
    if n * size > cap:
        from .diagrams import CapExceeded
        raise CapExceeded(f"n * (2g)^n = {n * size} exceeds the linear-algebra cap {cap}")
    codes = _all_words(n, space)
    entries: Dict[Tuple[int, int], Fraction] = {}
    for k in range(n):
        rot = _nu_codes(codes, n, space.dim, k) if n else codes
        for j, i in zip(codes.tolist(), rot.tolist()):
            entries[i, j] = entries.get((i, j), 0) + 1
    return SparseRationalMatrix(size, size, entries)


def kernel_of_n(n: int, space: SymplecticSpace, cap: int = DEFAULT_LINALG_CAP) -> List[Tensor]:
    """Exact basis of ``ker N`` on ``H^{(x)n}``."""
    if n == 0:
        return [Tensor.from_terms(space, {(): 1})]
    mat = n_matrix(n, space, cap)
    out = []
    for vec in kernel_basis(mat):
        terms = {_decode(code, n, space.dim): c for code, c in enumerate(vec) if c}
        out.append(Tensor.from_terms(space, terms))
    return out


def commutator_span(n: int, space: SymplecticSpace, cap: int = DEFAULT_LINALG_CAP) -> List[Tensor]:
    """Spanning set ``{v w - w v}`` of ``[T, T]`` in degree ``n``, over word pairs."""
    if n * space.dim ** n > cap:
        from .diagrams import CapExceeded
        raise CapExceeded(f"n * (2g)^n = {n * space.dim ** n} exceeds the linear-algebra cap {cap}")
    out = []
    for p in range(1, n):
        for left in product(range(space.dim), repeat=p):
            for right in product(range(space.dim), repeat=n - p):
                if left + right == right + left:
                    continue
                out.append(Tensor.from_terms(space, {left + right: 1, right + left: -1}))
    return out


def tensor_rank(tensors: Iterable[Tensor]) -> int:
    """Dimension of the span of the given tensors."""
    return rank_of_vectors(t.coefficient_vector() for t in tensors)
