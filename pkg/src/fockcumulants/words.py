"""Operator words: parsing, lattice-path classification, canonical matchings.

Words are written in operator order: the leftmost token is applied last,
so paths are read from the right.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, NamedTuple, Sequence

from .errors import DomainError, ParseError
from .partitions import SetPartition, interval_inflation

CREATE, ANNIHILATE, GAUGE = "c", "a", "g"

# sparse matrix as sorted ((row, col), value) entries, 1-based indices
GaugeMatrix = tuple


def gauge_matrix(entries: Mapping[tuple[int, int], object]) -> GaugeMatrix:
    return tuple(sorted(((int(r), int(c)), Fraction(v)) for (r, c), v in entries.items() if v))


def projection(i: int) -> GaugeMatrix:
    return gauge_matrix({(i, i): 1})


@dataclass(frozen=True)
class OpToken:
    kind: str
    color: int
    weight: int = 0
    gauge_id: int | None = None
    matrix: GaugeMatrix | None = None

    def __post_init__(self):
        if self.kind not in (CREATE, ANNIHILATE, GAUGE):
            raise DomainError(f"unknown token kind {self.kind!r}")
        if self.color < 1:
            raise DomainError("colors are positive integers")
        if self.weight < 0 or (self.weight and self.kind == GAUGE):
            raise DomainError("weights are non-negative and only on creators/annihilators")
        if (self.kind == GAUGE) != (self.matrix is not None):
            raise DomainError("gauge tokens carry a matrix, other tokens do not")

    def __str__(self):
        s = f"{self.kind}{self.gauge_id if self.kind == GAUGE and self.gauge_id else self.color}"
        return s + (f"({self.weight})" if self.weight else "")

    def recolor(self, mapping) -> "OpToken":
        matrix = None
        if self.matrix is not None:
            matrix = tuple(sorted(((mapping(r), mapping(c)), v) for (r, c), v in self.matrix))
        return OpToken(self.kind, mapping(self.color), self.weight, self.gauge_id, matrix)

    def to_json(self) -> dict:
        out = {"kind": self.kind, "color": self.color, "weight": self.weight}
        if self.matrix is not None:
            out["matrix"] = [[r, c, str(v)] for (r, c), v in self.matrix]
        return out

    @classmethod
    def from_json(cls, data: Mapping) -> "OpToken":
        matrix = None
        if data.get("kind") == GAUGE:
            if "matrix" in data:
                matrix = gauge_matrix({(r, c): Fraction(v) for r, c, v in data["matrix"]})
            else:
                matrix = projection(int(data["color"]))
        return cls(data["kind"], int(data["color"]), int(data.get("weight", 0)),
                   data.get("gauge_id"), matrix)


def create(color: int, weight: int = 0) -> OpToken:
    return OpToken(CREATE, color, weight)


def annihilate(color: int, weight: int = 0) -> OpToken:
    return OpToken(ANNIHILATE, color, weight)


def gauge(matrix_id: int, matrix: GaugeMatrix | None = None) -> OpToken:
    return OpToken(GAUGE, matrix_id, 0, matrix_id, matrix if matrix is not None else projection(matrix_id))


class PowerFactor(NamedTuple):
    color: int
    exponent: int


class FlatWord(tuple):
    def __str__(self):
        return " ".join(map(str, self))

    def to_json(self) -> list[dict]:
        return [t.to_json() for t in self]


class PowerWord(tuple):
    def __str__(self):
        out = []
        for color, k in self:
            kind = CREATE if k >= 0 else ANNIHILATE
            out.append(f"{kind}{color}" + (f"^{abs(k)}" if abs(k) != 1 else ""))
        return " ".join(out)


_TOKEN = re.compile(r"^([cag])(\d+)(?:\^(\d+))?(?:\((\d+)\))?$")


def parse_word(text: str, gauges: Mapping[int, GaugeMatrix] | None = None,
               order: str = "operator") -> FlatWord | PowerWord:
    """Parse ``"a1 a1 c1^2"``-style text.

    ``c<i>``/``a<i>`` create/annihilate color ``i``, ``g<i>`` is the gauge
    operator with matrix id ``i`` (default: projection on ``e_i``), ``^k`` is a
    power and ``(w)`` a weight.  Any power turns the result into a PowerWord.
    """
    if order not in ("operator", "temporal"):
        raise DomainError(f"unknown order {order!r}")
    pieces = text.split()
    if order == "temporal":
        pieces = pieces[::-1]
    parsed = []
    has_power = False
    for pos, piece in enumerate(pieces, 1):
        m = _TOKEN.match(piece)
        if not m:
            raise ParseError(f"malformed token {piece!r}", pos)
        kind, color, power, weight = m.groups()
        color = int(color)
        if color < 1:
            raise ParseError("colors start at 1", pos)
        if kind == GAUGE and (power or weight):
            raise ParseError("gauge tokens take neither powers nor weights", pos)
        if power and weight:
            raise ParseError("a token cannot carry both a power and a weight", pos)
        if power is not None:
            has_power = True
        parsed.append((pos, kind, color, int(power) if power else 1, int(weight or 0)))
    if has_power:
        out = []
        for pos, kind, color, power, _ in parsed:
            if kind == GAUGE:
                raise ParseError("gauge tokens cannot appear in power words", pos)
            out.append(PowerFactor(color, power if kind == CREATE else -power))
        return PowerWord(out)
    tokens = []
    for pos, kind, color, _, weight in parsed:
        if kind == GAUGE:
            matrix = (gauges or {}).get(color, projection(color))
            tokens.append(OpToken(GAUGE, color, 0, color, matrix))
        else:
            tokens.append(OpToken(kind, color, weight))
    return FlatWord(tokens)


def word_from_json(data) -> FlatWord:
    if isinstance(data, str):
        data = json.loads(data)
    return FlatWord(OpToken.from_json(d) for d in data)


def flat(text: str) -> FlatWord:
    w = parse_word(text)
    if not isinstance(w, FlatWord):
        raise DomainError(f"{text!r} contains powers")
    return w


# ----------------------------------------------------------------------
# paths


def _steps(w) -> list[tuple[int, int]]:
    """(color, signed step) pairs in path order, i.e. right to left."""
    if isinstance(w, PowerWord):
        return [(c, k) for c, k in reversed(w)]
    out = []
    for t in reversed(w):
        if t.kind == CREATE:
            out.append((t.color, 1))
        elif t.kind == ANNIHILATE:
            out.append((t.color, -1))
        else:
            out.append((t.color, 0))
    return out


def path_heights(w) -> list[dict[int, int]]:
    """Vector path ``y_0 = 0, y_1, ...`` read right to left."""
    y: dict[int, int] = {}
    out = [dict(y)]
    for c, k in _steps(w):
        y[c] = y.get(c, 0) + k
        out.append(dict(y))
    return out


def _is_lattice_steps(steps) -> bool:
    y: dict[int, int] = {}
    for c, k in steps:
        y[c] = y.get(c, 0) + k
        if y[c] < 0:
            return False
    return not any(y.values())


class PathClass(NamedTuple):
    kind: str          # not_lattice | lattice | lukasiewicz | dyck
    irreducible: bool


def classify_path(w) -> PathClass:
    steps = _steps(w)
    if not steps or not _is_lattice_steps(steps):
        return PathClass("not_lattice", False)
    totals = [sum(h.values()) for h in path_heights(w)]
    irreducible = all(t > 0 for t in totals[1:-1])
    moving = [k for _, k in steps if k]
    if isinstance(w, FlatWord) and any(t.kind == GAUGE for t in w):
        kind = "lattice"
    elif all(abs(k) == 1 for _, k in steps):
        kind = "dyck"
    elif all(k >= -1 for k in moving):
        # annihilations are single L*; creation powers are unrestricted
        kind = "lukasiewicz"
    else:
        kind = "lattice"
    return PathClass(kind, irreducible)


def is_lattice(w) -> bool:
    return _is_lattice_steps(_steps(w))


def has_nontrivial_lattice_subword(w) -> bool:
    """Some contiguous proper nonempty subword is itself a lattice word."""
    steps = _steps(w)
    n = len(steps)
    for i in range(n):
        for j in range(i + 1, n + 1):
            if j - i == n:
                continue
            if _is_lattice_steps(steps[i:j]):
                return True
    return False


def canonical_matching(w: FlatWord) -> SetPartition:
    """Unique noncrossing pairing of annihilators (left) with creators (right)."""
    if any(t.kind == GAUGE for t in w):
        raise DomainError("canonical matching needs creation/annihilation tokens only")
    blind = [(1, 1 if t.kind == CREATE else -1) for t in reversed(w)]
    if not blind or not _is_lattice_steps(blind):
        raise DomainError(f"{FlatWord(w)} is not a Dyck word")
    alive = list(range(1, len(w) + 1))
    pairs = []
    while alive:
        k = max(i for i, p in enumerate(alive) if w[p - 1].kind == ANNIHILATE)
        if k + 1 >= len(alive) or w[alive[k + 1] - 1].kind != CREATE:
            raise DomainError(f"{FlatWord(w)} is not a Dyck word")
        pairs.append((alive[k], alive[k + 1]))
        del alive[k:k + 2]
    return SetPartition(len(w), tuple(pairs))


def flatten(w: PowerWord) -> tuple[FlatWord, SetPartition]:
    tokens = []
    sizes = []
    for color, k in w:
        if k == 0:
            raise DomainError("identity factors have no unit expansion")
        kind = CREATE if k > 0 else ANNIHILATE
        tokens.extend(OpToken(kind, color) for _ in range(abs(k)))
        sizes.append(abs(k))
    return FlatWord(tokens), interval_inflation(SetPartition.zero(len(sizes)), sizes)


def to_flat(w) -> FlatWord:
    if isinstance(w, PowerWord):
        if any(k == 0 for _, k in w):
            return flatten(PowerWord(f for f in w if f.exponent))[0]
        return flatten(w)[0]
    return FlatWord(w)


def dyck_words(length: int, colors: Sequence[int] = (1,), weights: Iterable[int] = (0,)) -> list[FlatWord]:
    """All multidimensional Dyck words of the given length over the colors/weights."""
    weights = tuple(weights)
    out = []

    def rec(suffix, heights, remaining):
        total = sum(heights.values())
        if remaining == 0:
            if total == 0:
                out.append(FlatWord(suffix))
            return
        if total > remaining:
            return
        for c in colors:
            for wgt in weights:
                if total + 1 <= remaining - 1:
                    h = dict(heights)
                    h[c] = h.get(c, 0) + 1
                    rec([OpToken(CREATE, c, wgt)] + suffix, h, remaining - 1)
                if heights.get(c, 0) > 0:
                    h = dict(heights)
                    h[c] -= 1
                    rec([OpToken(ANNIHILATE, c, wgt)] + suffix, h, remaining - 1)

    rec([], {}, length)
    return out
