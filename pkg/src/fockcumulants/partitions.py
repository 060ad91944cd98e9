"""Set partitions of {1..n}, the partition lattice, and crossing statistics."""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, product
from math import factorial
from typing import Iterable, Iterator, Sequence

from .errors import DomainError

MAX_ENUMERATE = 12
MAX_PAIR_ENUMERATE = 16


@dataclass(frozen=True)
class SetPartition:
    """A partition of ``{1..n}``; blocks are stored sorted, ordered by minimum."""

    n: int
    blocks: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        blocks = tuple(sorted((tuple(sorted(b)) for b in self.blocks), key=lambda b: b[0] if b else 0))
        seen = [x for b in blocks for x in b]
        if any(not b for b in blocks):
            raise DomainError("empty block")
        if sorted(seen) != list(range(1, self.n + 1)):
            raise DomainError(f"blocks {self.blocks} do not partition 1..{self.n}")
        if any(len(set(b)) != len(b) for b in blocks):
            raise DomainError("repeated element in a block")
        object.__setattr__(self, "blocks", blocks)

    @classmethod
    def from_blocks(cls, blocks: Iterable[Iterable[int]], n: int | None = None) -> "SetPartition":
        blocks = [tuple(b) for b in blocks]
        if n is None:
            n = sum(len(b) for b in blocks)
        return cls(n, tuple(blocks))

    @classmethod
    def parse(cls, text: str) -> "SetPartition":
        """Parse ``"13|24"`` (single-digit elements) or ``"1,3|2,4"``."""
        text = text.strip()
        if text.startswith("["):
            return cls.from_blocks(json.loads(text))
        blocks = []
        for chunk in text.split("|"):
            chunk = chunk.strip()
            if not chunk:
                raise DomainError(f"empty block in {text!r}")
            try:
                if "," in chunk or " " in chunk:
                    blocks.append([int(x) for x in chunk.replace(",", " ").split()])
                else:
                    blocks.append([int(ch) for ch in chunk])
            except ValueError as exc:
                raise DomainError(f"bad partition string {text!r}") from exc
        return cls.from_blocks(blocks)

    @classmethod
    def one(cls, n: int) -> "SetPartition":
        return cls(n, (tuple(range(1, n + 1)),) if n else ())

    @classmethod
    def zero(cls, n: int) -> "SetPartition":
        return cls(n, tuple((i,) for i in range(1, n + 1)))

    def __str__(self):
        sep = "," if self.n >= 10 else ""
        return "|".join(sep.join(map(str, b)) for b in self.blocks)

    def to_json(self) -> list[list[int]]:
        return [list(b) for b in self.blocks]

    def __len__(self):
        return len(self.blocks)

    def labels(self) -> tuple[int, ...]:
        """The partition as a map ``i -> block number`` (1-based, blocks ordered by minimum)."""
        lab = [0] * self.n
        for k, b in enumerate(self.blocks, 1):
            for x in b:
                lab[x - 1] = k
        return tuple(lab)

    def block_of(self, i: int) -> tuple[int, ...]:
        for b in self.blocks:
            if i in b:
                return b
        raise DomainError(f"{i} not in 1..{self.n}")

    @property
    def is_pair_partition(self) -> bool:
        return all(len(b) == 2 for b in self.blocks)

    @property
    def pairs(self) -> tuple[tuple[int, int], ...]:
        if not self.is_pair_partition:
            raise DomainError(f"{self} is not a pair partition")
        return self.blocks

    def is_interval_partition(self) -> bool:
        return all(is_interval(b) for b in self.blocks)

    def is_noncrossing(self) -> bool:
        return not any(_interleave(a, b) for a, b in combinations(self.blocks, 2))

    def restrict(self, elements: Iterable[int]) -> "SetPartition":
        """Induced partition on a subset, relabelled to ``1..k`` preserving order."""
        elements = sorted(elements)
        pos = {x: i + 1 for i, x in enumerate(elements)}
        blocks = [[pos[x] for x in b if x in pos] for b in self.blocks]
        return SetPartition.from_blocks([b for b in blocks if b], len(elements))


PairPartition = SetPartition


def is_interval(block: Sequence[int]) -> bool:
    return block[-1] - block[0] == len(block) - 1


def _interleave(a: Sequence[int], b: Sequence[int]) -> bool:
    # i < i' < j < j' with i, j in one block and i', j' in the other
    for x, y in ((a, b), (b, a)):
        for i, j in combinations(x, 2):
            if any(i < k < j for k in y) and any(k > j for k in y):
                return True
    return False


def _check_same_n(*parts: SetPartition):
    if len({p.n for p in parts}) != 1:
        raise DomainError("partitions live on different ground sets")


# ----------------------------------------------------------------------
# enumeration


def _restricted_growth(n: int) -> Iterator[list[int]]:
    if n == 0:
        yield []
        return
    a = [0] * n

    def rec(i, m):
        if i == n:
            yield list(a)
            return
        for v in range(m + 2):
            a[i] = v
            yield from rec(i + 1, max(m, v))

    a[0] = 0
    yield from rec(1, 0)


def from_labels(labels: Sequence[int]) -> SetPartition:
    groups: dict[int, list[int]] = {}
    for i, lab in enumerate(labels, 1):
        groups.setdefault(lab, []).append(i)
    return SetPartition.from_blocks(groups.values(), len(labels))


def enumerate_partitions(n: int, cap: int = MAX_ENUMERATE) -> list[SetPartition]:
    if not 1 <= n <= cap:
        raise DomainError(f"n={n} outside 1..{cap}")
    return _all_partitions(n)


@lru_cache(maxsize=None)
def _all_partitions(n: int) -> list[SetPartition]:
    return [from_labels(a) for a in _restricted_growth(n)]


def enumerate_pair_partitions(n: int, cap: int = MAX_PAIR_ENUMERATE) -> list[SetPartition]:
    if n < 0 or n > cap:
        raise DomainError(f"n={n} outside 0..{cap}")
    if n % 2:
        return []
    out = []

    def rec(rest: list[int], acc: list[tuple[int, int]]):
        if not rest:
            out.append(SetPartition(n, tuple(acc)))
            return
        first = rest[0]
        for k in range(1, len(rest)):
            rec(rest[1:k] + rest[k + 1:], acc + [(first, rest[k])])

    rec(list(range(1, n + 1)), [])
    return out


def enumerate_noncrossing(n: int) -> list[SetPartition]:
    return [p for p in enumerate_partitions(n) if p.is_noncrossing()]


def refinements(pi: SetPartition) -> list[SetPartition]:
    """All sigma with sigma <= pi."""
    per_block = []
    for b in pi.blocks:
        per_block.append([[[b[i - 1] for i in blk] for blk in sub.blocks]
                          for sub in _all_partitions(len(b))])
    out = []
    for choice in product(*per_block):
        out.append(SetPartition.from_blocks([blk for part in choice for blk in part], pi.n))
    return out


# ----------------------------------------------------------------------
# lattice


def lattice_leq(sigma: SetPartition, pi: SetPartition) -> bool:
    _check_same_n(sigma, pi)
    lab = pi.labels()
    return all(len({lab[x - 1] for x in b}) == 1 for b in sigma.blocks)


def lattice_meet(sigma: SetPartition, pi: SetPartition) -> SetPartition:
    _check_same_n(sigma, pi)
    blocks = [set(a) & set(b) for a in sigma.blocks for b in pi.blocks]
    return SetPartition.from_blocks([sorted(b) for b in blocks if b], sigma.n)


def lattice_join(sigma: SetPartition, pi: SetPartition) -> SetPartition:
    _check_same_n(sigma, pi)
    parent = list(range(sigma.n + 1))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for b in sigma.blocks + pi.blocks:
        for x in b[1:]:
            parent[find(x)] = find(b[0])
    return from_labels([find(i) for i in range(1, sigma.n + 1)])


def mobius(sigma: SetPartition, pi: SetPartition) -> Fraction:
    """Mobius function of the partition lattice, as a product over blocks of ``pi``."""
    if not lattice_leq(sigma, pi):
        raise DomainError(f"{sigma} is not below {pi}")
    lab = sigma.labels()
    value = 1
    for b in pi.blocks:
        m = len({lab[x - 1] for x in b})
        value *= (-1) ** (m - 1) * factorial(m - 1)
    return Fraction(value)


def poset_mobius_to_top(elements: Sequence[SetPartition], top: SetPartition, leq) -> dict:
    """``mu(x, top)`` for every ``x`` in a finite poset, by the defining recursion."""
    order = sorted(elements, key=len)  # fewer blocks = higher up
    mu = {}
    for x in order:
        if x == top:
            mu[x] = Fraction(1)
            continue
        above = [y for y in mu if y != x and leq(x, y)]
        mu[x] = -sum((mu[y] for y in above), Fraction(0))
    return mu


# ----------------------------------------------------------------------
# statistics


def crossings_nc(pi: SetPartition) -> int:
    """Number of crossing pairs of arcs in a pair partition."""
    pairs = pi.pairs
    count = 0
    for (i, k), (j, l) in combinations(pairs, 2):
        if i < j < k < l or j < i < l < k:
            count += 1
    return count


def rrc(pi: SetPartition) -> int:
    """Right reduced crossings: quadruples i<i'<j<j' with j = max B, j' = max B' (B != B')."""
    count = 0
    for b1 in pi.blocks:
        j = b1[-1]
        for b2 in pi.blocks:
            if b2 is b1 or b2[-1] <= j:
                continue
            for i in b1[:-1]:
                count += sum(1 for ip in b2 if i < ip < j)
    return count


def uncross_phi(pi: SetPartition) -> tuple[SetPartition, int]:
    """One step of the hole-moving un-crossing map; returns the image and ``c_b``."""
    by_max = sorted(pi.blocks, key=lambda b: b[-1])
    target = None
    for b in reversed(by_max):
        if not is_interval(b):
            target = b
            break
    if target is None:
        return pi, 0
    members = set(target)
    j2 = max(s for s in target if s - 1 not in members)
    j1 = max(s for s in target if s < j2)
    end = target[-1]
    ends = sum(1 for b in pi.blocks if j1 < b[-1] < j2)
    starts = sum(1 for b in pi.blocks if j1 < b[0] < j2)
    c_b = ends - starts
    length = end - j1
    shift = end - j2 + 1

    def alpha(x):
        if j1 < x <= end:
            return j1 + 1 + ((x - j1 - 1 + shift) % length)
        return x

    image = SetPartition.from_blocks([[alpha(x) for x in b] for b in pi.blocks], pi.n)
    return image, c_b


def rc(pi: SetPartition) -> int:
    total = 0
    current = pi
    for _ in range(pi.n + 1):
        if current.is_interval_partition():
            return total
        current, c_b = uncross_phi(current)
        total += c_b
    raise DomainError(f"un-crossing map did not terminate on {pi}")


def uncross_rrc_step(pi: SetPartition) -> tuple[SetPartition, int]:
    """The rotation used for right reduced crossings: returns the image and the
    number of arcs crossed, ``sum_{j1 < max B < j2} |B| - |B & [j1+1, j2-1]|``."""
    by_max = sorted(pi.blocks, key=lambda b: b[-1])
    target = None
    for b in reversed(by_max):
        if not is_interval(b):
            target = b
            break
    if target is None:
        return pi, 0
    members = set(target)
    j2 = max(s for s in target if s - 1 not in members)
    j1 = max(s for s in target if s < j2)
    c = sum(len(b) - sum(1 for x in b if j1 < x < j2)
            for b in pi.blocks if j1 < b[-1] < j2)

    def rot(x):
        # (j1, j1+1, ..., j2-1) -> (j1+1, ..., j2-1, j1)
        if x == j1:
            return j2 - 1
        if j1 < x < j2:
            return x - 1
        return x

    image = SetPartition.from_blocks([[rot(x) for x in b] for b in pi.blocks], pi.n)
    return image, c


def nc_hat(pi: SetPartition) -> SetPartition:
    """The noncrossing pair partition with the same left points."""
    lefts = sorted(l for l, _ in pi.pairs)
    rights = sorted(r for _, r in pi.pairs)
    used = set()
    pairs = []
    for l in reversed(lefts):
        r = min(r for r in rights if r > l and r not in used)
        used.add(r)
        pairs.append((l, r))
    return SetPartition(pi.n, tuple(pairs))


@dataclass(frozen=True)
class Permutation:
    """Bijection of ``{1..n}``; ``images[i-1] = sigma(i)``."""

    images: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.images) != list(range(1, len(self.images) + 1)):
            raise DomainError(f"{self.images} is not a permutation")

    @property
    def n(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def cycles(self) -> list[tuple[int, ...]]:
        seen = set()
        out = []
        for start in range(1, self.n + 1):
            if start in seen:
                continue
            cyc = []
            x = start
            while x not in seen:
                seen.add(x)
                cyc.append(x)
                x = self(x)
            out.append(tuple(cyc))
        return out

    def cycle_type(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for c in self.cycles():
            out[len(c)] = out.get(len(c), 0) + 1
        return out

    def inversions(self) -> int:
        im = self.images
        return sum(1 for a, b in combinations(range(self.n), 2) if im[a] > im[b])

    def compose(self, other: "Permutation") -> "Permutation":
        """``(self o other)(i) = self(other(i))``."""
        return Permutation(tuple(self(other(i)) for i in range(1, self.n + 1)))

    def inverse(self) -> "Permutation":
        inv = [0] * self.n
        for i, j in enumerate(self.images, 1):
            inv[j - 1] = i
        return Permutation(tuple(inv))

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def transposition(cls, n: int, i: int, j: int) -> "Permutation":
        im = list(range(1, n + 1))
        im[i - 1], im[j - 1] = j, i
        return cls(tuple(im))


def cycle_structure(pi: SetPartition) -> tuple[int, dict[int, int], Permutation]:
    """Cycles of a pair partition relative to its noncrossing companion."""
    pairs = sorted(pi.pairs)
    hat = dict(nc_hat(pi).pairs)
    rhat = [hat[l] for l, _ in pairs]
    where = {r: j for j, r in enumerate(rhat, 1)}
    sigma = Permutation(tuple(where[r] for _, r in pairs))
    ctype = sigma.cycle_type()
    return sum(ctype.values()), ctype, sigma


def connected_components(pi: SetPartition) -> list[SetPartition]:
    """Crossing-connected components, each relabelled onto ``1..k``."""
    return [pi.restrict(support) for support in component_supports(pi)]


def component_supports(pi: SetPartition) -> list[tuple[int, ...]]:
    blocks = list(pi.blocks)
    parent = list(range(len(blocks)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in combinations(range(len(blocks)), 2):
        if _interleave(blocks[a], blocks[b]):
            parent[find(a)] = find(b)
    groups: dict[int, list[int]] = {}
    for k, b in enumerate(blocks):
        groups.setdefault(find(k), []).extend(b)
    return sorted((tuple(sorted(g)) for g in groups.values()), key=lambda g: g[0])


def kernel(h: Sequence) -> SetPartition:
    if not h:
        raise DomainError("kernel of an empty sequence")
    return from_labels(list(h))


def interval_inflation(pi: SetPartition, sizes: Sequence[int]) -> SetPartition:
    if len(sizes) != pi.n or any(s < 1 for s in sizes):
        raise DomainError(f"sizes {sizes} do not fit a partition of {pi.n}")
    starts = [0]
    for s in sizes:
        starts.append(starts[-1] + s)
    blocks = [[x for i in b for x in range(starts[i - 1] + 1, starts[i] + 1)] for b in pi.blocks]
    return SetPartition.from_blocks(blocks, starts[-1])
