"""Labeled linear chord diagrams, their rotations and cyclic canonical forms.

A linear chord diagram of ``m`` chords is a perfect matching of the vertices
``1..2m``; it is *labeled* when every chord is an ordered pair.  Reversing one
chord negates the diagram, so every labeled diagram is ``+-1`` times its
standard form (``i < j`` on every chord).

Rotation moves vertex ``k`` to ``k - 1`` and vertex ``1`` to ``2m``.  This is
the direction for which the invariant tensor map commutes with the cyclic
shift ``X_1 X_2 ... X_n -> X_2 ... X_n X_1`` of tensor words.  Exactly one
chord crosses the wrap point, so one rotation step of a standard diagram
always costs a factor ``-1``.

Text literals look like ``lin: 1>2 3>5 4>6``; a cyclic class renders as
``cyc[index=6]: 1>2 3>5 4>6``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Iterator, NamedTuple, Optional, Sequence, Tuple

Chord = Tuple[int, int]
RawDiagram = Tuple[Chord, ...]

#: Largest chord count the enumeration helpers accept unless told otherwise.
DEFAULT_ENUMERATION_CAP = 8


class DiagramError(ValueError):
    """Malformed chord diagram or diagram literal."""


class CapExceeded(RuntimeError):
    """A configured size cap would be exceeded."""


def _validate(chords: Sequence[Chord]) -> None:
    n = 2 * len(chords)
    seen = set()
    for pos, chord in enumerate(chords):
        if len(chord) != 2:
            raise DiagramError(f"chord #{pos + 1} is not a pair: {chord!r}")
        for v in chord:
            if not isinstance(v, int) or not 1 <= v <= n:
                raise DiagramError(f"chord #{pos + 1}: vertex {v!r} out of range 1..{n}")
            if v in seen:
                raise DiagramError(f"chord #{pos + 1}: vertex {v} used twice")
            seen.add(v)


@dataclass(frozen=True)
class LinearDiagram:
    """A labeled linear chord diagram; chord ``(i, j)`` points from ``i`` to ``j``."""

    chords: RawDiagram

    def __post_init__(self) -> None:
        chords = tuple((int(i), int(j)) for i, j in self.chords)
        _validate(chords)
        object.__setattr__(self, "chords", chords)

    @property
    def m(self) -> int:
        return len(self.chords)

    @classmethod
    def parse(cls, text: str) -> "LinearDiagram":
        return cls(_parse_chords(text))

    def literal(self) -> str:
        return "lin: " + _chords_text(self.chords)

    def involution(self) -> Tuple[int, ...]:
        """Partner table, 1-indexed: ``inv[v]`` is the other end of the chord at ``v``."""
        inv = [0] * (2 * self.m + 1)
        for i, j in self.chords:
            inv[i], inv[j] = j, i
        return tuple(inv)

    def __str__(self) -> str:
        return self.literal()


@dataclass(frozen=True, order=True)
class StandardDiagram:
    """A linear chord diagram in standard label, chords sorted by first vertex.

    This is a sign-free key: it hashes and compares by its chord tuple, and the
    dataclass ordering is the lexicographic order used for canonical forms.
    """

    chords: RawDiagram

    def __post_init__(self) -> None:
        chords = tuple(sorted((int(i), int(j)) for i, j in self.chords))
        _validate(chords)
        if any(i > j for i, j in chords):
            raise DiagramError(f"not in standard label: {chords}")
        object.__setattr__(self, "chords", chords)

    @classmethod
    def _trusted(cls, chords: RawDiagram) -> "StandardDiagram":
        # skips validation; callers guarantee sorted standard chords
        obj = object.__new__(cls)
        object.__setattr__(obj, "chords", chords)
        return obj

    @classmethod
    def parse(cls, text: str) -> "StandardDiagram":
        sign, d = standardize(LinearDiagram.parse(text))
        if sign != 1:
            raise DiagramError(f"literal is not in standard label: {text!r}")
        return d

    @property
    def m(self) -> int:
        return len(self.chords)

    def as_linear(self) -> LinearDiagram:
        return LinearDiagram(self.chords)

    def literal(self) -> str:
        return "lin: " + _chords_text(self.chords)

    def __str__(self) -> str:
        return self.literal()


class SignedStandard(NamedTuple):
    sign: int
    diagram: StandardDiagram


@dataclass(frozen=True, order=True)
class CyclicClass:
    """Canonical representative of a labeled chord diagram on the circle.

    The class stands for the closing of ``rep``, i.e. the rotation sum
    ``N(rep)`` in the space of oriented chord diagrams.  Only even-index
    classes are ever built; odd-index ones are zero.
    """

    rep: StandardDiagram
    index: int

    @property
    def m(self) -> int:
        return self.rep.m

    def literal(self) -> str:
        return f"cyc[index={self.index}]: " + _chords_text(self.rep.chords)

    def __str__(self) -> str:
        return self.literal()


# -- raw kernels -------------------------------------------------------------
# Hot loops work on plain tuples of chords; the dataclasses wrap them.


def _standardize_raw(chords: Iterable[Chord]) -> Tuple[int, RawDiagram]:
    sign = 1
    out = []
    for i, j in chords:
        if i > j:
            i, j = j, i
            sign = -sign
        out.append((i, j))
    out.sort()
    return sign, tuple(out)


def _rotate_raw(chords: RawDiagram, steps: int = 1) -> Tuple[int, RawDiagram]:
    """Rotate a standard raw diagram by ``steps`` (vertex ``k -> k - steps``)."""
    n = 2 * len(chords)
    sign = 1
    out = []
    for i, j in chords:
        a = (i - 1 - steps) % n + 1
        b = (j - 1 - steps) % n + 1
        if a > b:
            a, b = b, a
            sign = -sign
        out.append((a, b))
    out.sort()
    return sign, tuple(out)


def _rotations_raw(chords: RawDiagram) -> list:
    """All ``2m`` signed rotations ``(sign_s, nu^s d)`` of a standard raw diagram."""
    n = 2 * len(chords)
    out = [(1, chords)]
    sign, cur = 1, chords
    for _ in range(n - 1):
        s, cur = _rotate_raw(cur)
        sign *= s
        out.append((sign, cur))
    return out


def _canonical_raw(chords: RawDiagram) -> Optional[Tuple[int, RawDiagram, int]]:
    """Canonical form of a standard raw diagram: ``(sign, rep, index)`` or None."""
    rots = _rotations_raw(chords)
    seen = set()
    best_sign, best = rots[0]
    for sign, cur in rots:
        seen.add(cur)
        if cur < best:
            best_sign, best = sign, cur
    index = len(seen)
    if index % 2:
        return None
    return best_sign, best, index


# -- public operations ---------------------------------------------------------


def standardize(d: LinearDiagram) -> SignedStandard:
    """Flip every chord with ``i > j``; the sign is ``(-1)`` per flip."""
    sign, chords = _standardize_raw(d.chords)
    return SignedStandard(sign, StandardDiagram._trusted(chords))


def rotate(d: StandardDiagram, steps: int = 1) -> SignedStandard:
    """Apply the vertex map ``k -> k - 1`` (``1 -> 2m``) ``steps`` times.

    Negative ``steps`` rotate the other way.  Each single step flips exactly
    one chord, so the sign is ``(-1) ** steps``.
    """
    sign, chords = _rotate_raw(d.chords, steps)
    return SignedStandard(sign, StandardDiagram._trusted(chords))


def index_of(d: StandardDiagram) -> int:
    """Number of distinct underlying diagrams among the ``2m`` rotations."""
    return len({cur for _, cur in _rotations_raw(d.chords)})


def canonical_cyclic(d: LinearDiagram | StandardDiagram) -> Optional[Tuple[int, CyclicClass]]:
    """``(sign, class)`` with ``N(d) = sign * N(class.rep)``, or None if ``N(d) = 0``.

    The representative is the lexicographically least rotation; the sign is
    the standardization sign times ``(-1) ** s`` for the ``s`` steps taken.
    """
    if isinstance(d, StandardDiagram):
        sign, chords = 1, d.chords
    else:
        sign, chords = _standardize_raw(d.chords)
    res = _canonical_raw(chords)
    if res is None:
        return None
    s, rep, index = res
    return sign * s, CyclicClass(StandardDiagram._trusted(rep), index)


def identity_diagram(m: int) -> StandardDiagram:
    """``I_m = {(1,2), (3,4), ..., (2m-1,2m)}``."""
    if m < 1:
        raise DiagramError("need at least one chord")
    return StandardDiagram._trusted(tuple((2 * k - 1, 2 * k) for k in range(1, m + 1)))


def omega_diagram(m: int) -> CyclicClass:
    """The closing of ``I_m``: ``m`` isolated chords on the circle."""
    if m < 2:
        raise DiagramError("Omega_m is zero for m = 1; need m >= 2")
    res = canonical_cyclic(identity_diagram(m))
    assert res is not None and res[0] == 1
    return res[1]


def d_ab_linear(a: int, b: int) -> LinearDiagram:
    """The linear diagram whose closing is ``D(a, b)``."""
    if a < 1 or b < 1:
        raise DiagramError("D(a, b) needs a, b >= 1")
    chords = [(2 * k - 1, 2 * k) for k in range(1, a + 1)]
    chords.append((2 * a + 1, 2 * a + 2 * b + 2))
    chords.extend((2 * a + 2 * k, 2 * a + 2 * k + 1) for k in range(1, b + 1))
    return LinearDiagram(tuple(chords))


def d_ab(a: int, b: int) -> Optional[Tuple[int, CyclicClass]]:
    """Canonical class of ``D(a, b)``; None for ``a == b`` where it vanishes."""
    return canonical_cyclic(d_ab_linear(a, b))


def double_factorial_odd(m: int) -> int:
    """``(2m - 1)!!``, the number of perfect matchings on ``2m`` points."""
    out = 1
    for k in range(1, 2 * m, 2):
        out *= k
    return out


def _matchings(vertices: Tuple[int, ...]) -> Iterator[list]:
    if not vertices:
        yield []
        return
    first, rest = vertices[0], vertices[1:]
    for pos, partner in enumerate(rest):
        remaining = rest[:pos] + rest[pos + 1:]
        for tail in _matchings(remaining):
            yield [(first, partner)] + tail


def iter_linear_raw(m: int) -> Iterator[RawDiagram]:
    for chords in _matchings(tuple(range(1, 2 * m + 1))):
        yield tuple(chords)


def enumerate_linear(m: int, cap: int = DEFAULT_ENUMERATION_CAP) -> list:
    """All standard linear diagrams of ``m`` chords in lexicographic order."""
    if m < 1:
        raise DiagramError("need m >= 1")
    if m > cap:
        raise CapExceeded(f"enumeration of LC_{m} exceeds cap m <= {cap}")
    return [StandardDiagram._trusted(c) for c in iter_linear_raw(m)]


def enumerate_cyclic_basis(m: int, cap: int = DEFAULT_ENUMERATION_CAP) -> list:
    """One class per even-index rotation orbit, sorted by representative."""
    if m < 1:
        raise DiagramError("need m >= 1")
    if m > cap:
        raise CapExceeded(f"enumeration of C_{m} exceeds cap m <= {cap}")
    if m == 1:
        return []
    out = []
    for chords in iter_linear_raw(m):
        res = _canonical_raw(chords)
        # the enumeration is lexicographic, so each orbit is met first at its minimum
        if res is not None and res[1] == chords:
            out.append(CyclicClass(StandardDiagram._trusted(chords), res[2]))
    return out


# -- literals ------------------------------------------------------------------

_CHORD_RE = re.compile(r"(\d+)\s*>\s*(\d+)")


def _chords_text(chords: RawDiagram) -> str:
    return " ".join(f"{i}>{j}" for i, j in chords)


def _parse_chords(text: str) -> RawDiagram:
    body = text.strip()
    offset = len(text) - len(text.lstrip())
    m = re.match(r"(lin|cyc(\[index=\d+\])?)\s*:", body)
    if m:
        offset += m.end()
        body = body[m.end():]
    chords = []
    seen: dict = {}
    pos = 0
    while pos < len(body):
        if body[pos].isspace():
            pos += 1
            continue
        tok = _CHORD_RE.match(body, pos)
        if tok is None:
            raise DiagramError(f"bad chord token at position {offset + pos}: {body[pos:pos + 8]!r}")
        for v, start in ((int(tok.group(1)), tok.start(1)), (int(tok.group(2)), tok.start(2))):
            if v in seen:
                raise DiagramError(f"vertex {v} repeated at position {offset + start}")
            seen[v] = offset + start
        chords.append((int(tok.group(1)), int(tok.group(2))))
        pos = tok.end()
    if not chords:
        raise DiagramError(f"empty diagram literal: {text!r}")
    n = 2 * len(chords)
    for v, where in seen.items():
        if not 1 <= v <= n:
            raise DiagramError(f"vertex {v} at position {where} out of range 1..{n}")
    return tuple(chords)


def parse_cyclic(text: str) -> Tuple[int, CyclicClass]:
    """Parse ``cyc[index=k]: ...`` (or any linear literal) into a signed class."""
    res = canonical_cyclic(LinearDiagram.parse(text))
    if res is None:
        raise DiagramError(f"diagram has odd index and is zero in C: {text!r}")
    m = re.match(r"\s*cyc\[index=(\d+)\]", text)
    if m and int(m.group(1)) != res[1].index:
        raise DiagramError(f"declared index {m.group(1)} but diagram has index {res[1].index}")
    return res
