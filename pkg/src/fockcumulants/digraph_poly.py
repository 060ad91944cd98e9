"""Digraphs of Dyck words and their cover / cycle indicator polynomials.

Every polynomial is available both by brute-force enumeration of covers and
by the cut-and-fuse recursion; the two must agree exactly.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations
from typing import Iterable, Iterator, Sequence

from .algebra import Poly
from .errors import DomainError
from .partitions import Permutation
from .words import ANNIHILATE, CREATE, FlatWord, canonical_matching, is_lattice

BRUTE_CAP = 10
CUT_FUSE_CAP = 20
INDICATOR_CUT_FUSE_CAP = 18
COVER_CAP = 12


@dataclass(frozen=True)
class WeightedDigraph:
    """Vertices ``0..n-1`` (1-based in every external format); loops allowed."""

    n_vertices: int
    weights: tuple[int, ...]
    edges: frozenset

    def __post_init__(self):
        object.__setattr__(self, "weights", tuple(int(w) for w in self.weights))
        object.__setattr__(self, "edges", frozenset((int(a), int(b)) for a, b in self.edges))
        if len(self.weights) != self.n_vertices:
            raise DomainError("one weight per vertex")
        if any(w < 1 for w in self.weights):
            raise DomainError("vertex weights must be positive")
        if any(not (0 <= a < self.n_vertices and 0 <= b < self.n_vertices) for a, b in self.edges):
            raise DomainError("edge endpoint out of range")

    @classmethod
    def build(cls, n: int, edges: Iterable[tuple[int, int]], weights: Sequence[int] | None = None,
              one_based: bool = True) -> "WeightedDigraph":
        off = 1 if one_based else 0
        return cls(n, tuple(weights) if weights is not None else (1,) * n,
                   frozenset((a - off, b - off) for a, b in edges))

    def successors(self, v: int) -> frozenset:
        return frozenset(b for a, b in self.edges if a == v)

    @property
    def total_weight(self) -> int:
        return sum(self.weights)

    def to_json(self) -> dict:
        return {"weights": list(self.weights),
                "edges": [[a + 1, b + 1] for a, b in sorted(self.edges)]}

    @classmethod
    def from_json(cls, data) -> "WeightedDigraph":
        if isinstance(data, str):
            data = json.loads(data)
        weights = data.get("weights")
        edges = [tuple(e) for e in data.get("edges", [])]
        n = len(weights) if weights is not None else max((max(e) for e in edges), default=0)
        return cls.build(n, edges, weights)

    def to_text(self) -> str:
        edges = " ".join(f"{a + 1}->{b + 1}" for a, b in sorted(self.edges))
        return f"{edges}\nw: {' '.join(map(str, self.weights))}"

    @classmethod
    def from_text(cls, text: str, n: int | None = None) -> "WeightedDigraph":
        """Edge list ``"1->1 1->2"`` with an optional ``"w: 1 2"`` weight line."""
        weights = None
        edges = []
        for line in text.replace(";", "\n").splitlines():
            line = line.strip()
            if not line:
                continue
            if line.startswith("w:"):
                weights = [int(x) for x in line[2:].split()]
                continue
            for item in line.split():
                m = re.fullmatch(r"(\d+)->(\d+)", item)
                if not m:
                    raise DomainError(f"bad edge {item!r}")
                edges.append((int(m.group(1)), int(m.group(2))))
        if n is None:
            n = len(weights) if weights is not None else max((max(e) for e in edges), default=0)
        return cls.build(n, edges, weights)

    # graph surgery ------------------------------------------------------
    def delete_edge(self, e) -> "WeightedDigraph":
        return WeightedDigraph(self.n_vertices, self.weights, self.edges - {e})

    def delete_vertex(self, v: int) -> "WeightedDigraph":
        relabel = {u: i for i, u in enumerate(x for x in range(self.n_vertices) if x != v)}
        edges = frozenset((relabel[a], relabel[b]) for a, b in self.edges if a != v and b != v)
        weights = tuple(w for i, w in enumerate(self.weights) if i != v)
        return WeightedDigraph(self.n_vertices - 1, weights, edges)

    def fuse(self, e) -> "WeightedDigraph":
        """Contract the non-loop edge ``v1 -> v2``: edges out of ``v1`` and into
        ``v2`` disappear, the fused vertex keeps the in-edges of ``v1`` and the
        out-edges of ``v2`` and carries the summed weight."""
        v1, v2 = e
        if v1 == v2:
            raise DomainError("cannot fuse along a loop")
        keep = [x for x in range(self.n_vertices) if x != v2]
        relabel = {u: i for i, u in enumerate(keep)}
        relabel[v2] = relabel[v1]
        edges = frozenset(
            (relabel[a], relabel[b]) for a, b in self.edges if a != v1 and b != v2
        )
        weights = list(self.weights[x] for x in keep)
        weights[relabel[v1]] = self.weights[v1] + self.weights[v2]
        return WeightedDigraph(self.n_vertices - 1, tuple(weights), edges)

    def key(self) -> tuple:
        return (self.weights, tuple(sorted(self.edges)))


# ----------------------------------------------------------------------
# digraph of a Dyck word


def word_digraph(w: FlatWord, weighted: bool = False) -> WeightedDigraph:
    if any(t.kind not in (CREATE, ANNIHILATE) for t in w) or not w or not is_lattice(w):
        raise DomainError(f"{FlatWord(w)} is not a multidimensional Dyck word")
    pi = canonical_matching(w)
    partner = {}
    for l, r in pi.pairs:
        partner[l] = r
    annihilators = [i for i, t in enumerate(w, 1) if t.kind == ANNIHILATE]
    n = len(annihilators)
    edges = set()
    for r, pr in enumerate(annihilators):
        for s, ps in enumerate(annihilators):
            target = partner[ps]
            if w[pr - 1].color == w[target - 1].color and target > pr:
                edges.add((r, s))
    if weighted:
        weights = tuple(w[p - 1].weight + 1 + w[partner[p] - 1].weight for p in annihilators)
    else:
        weights = (1,) * n
    return WeightedDigraph(n, weights, frozenset(edges))


# ----------------------------------------------------------------------
# covers


def iter_cycle_covers(g: WeightedDigraph) -> Iterator[Permutation]:
    n = g.n_vertices
    succ = [sorted(g.successors(v)) for v in range(n)]
    image = [0] * n
    used = [False] * n

    def rec(v):
        if v == n:
            yield Permutation(tuple(x + 1 for x in image))
            return
        for u in succ[v]:
            if not used[u]:
                used[u] = True
                image[v] = u
                yield from rec(v + 1)
                used[u] = False

    yield from rec(0)


def cycle_covers(g: WeightedDigraph, cap: int = BRUTE_CAP) -> list[Permutation]:
    if g.n_vertices > cap:
        raise DomainError(f"{g.n_vertices} vertices exceed the brute-force cap {cap}")
    return list(iter_cycle_covers(g))


def iter_cycle_path_covers(g: WeightedDigraph) -> Iterator[tuple[list[list[int]], list[list[int]]]]:
    """Cycle-path covers as (cycles, paths), vertices 0-based.

    Each cover is a partial injection ``v -> successor`` supported on the
    edges; single vertices count as paths of length 0.
    """
    n = g.n_vertices
    succ = [sorted(g.successors(v)) for v in range(n)]
    nxt: list[int | None] = [None] * n
    used = [False] * n

    def decompose():
        has_pred = set(x for x in nxt if x is not None)
        paths = []
        seen = set()
        for v in range(n):
            if v not in has_pred:
                path = [v]
                seen.add(v)
                while nxt[path[-1]] is not None:
                    path.append(nxt[path[-1]])
                    seen.add(path[-1])
                paths.append(path)
        cycles = []
        for v in range(n):
            if v in seen:
                continue
            cyc = [v]
            seen.add(v)
            while nxt[cyc[-1]] != v:
                cyc.append(nxt[cyc[-1]])
                seen.add(cyc[-1])
            cycles.append(cyc)
        return cycles, paths

    def rec(v):
        if v == n:
            yield decompose()
            return
        nxt[v] = None
        yield from rec(v + 1)
        for u in succ[v]:
            if not used[u]:
                used[u] = True
                nxt[v] = u
                yield from rec(v + 1)
                used[u] = False
        nxt[v] = None

    yield from rec(0)


def _x_vars(w: int) -> tuple[str, ...]:
    return tuple(f"x{k}" for k in range(1, w + 1))


def _y_vars(w: int) -> tuple[str, ...]:
    return tuple(f"y{k}" for k in range(1, w + 1))


def _falling(y: Poly, k: int) -> Poly:
    out = Poly.const(1, y.vars)
    for i in range(k):
        out = out * (y - i)
    return out


# ----------------------------------------------------------------------
# cycle cover polynomial


def cycle_cover_poly(g: WeightedDigraph, method: str = "cut_fuse", edge_order=None) -> Poly:
    """``C_c(G; x) = sum over cycle covers of x^(number of cycles)``."""
    if method == "bruteforce":
        if g.n_vertices > BRUTE_CAP:
            raise DomainError(f"{g.n_vertices} vertices exceed the brute-force cap {BRUTE_CAP}")
        coeffs: dict[int, int] = {}
        for sigma in iter_cycle_covers(g):
            k = len(sigma.cycles()) if g.n_vertices else 0
            coeffs[k] = coeffs.get(k, 0) + 1
        return Poly(("x",), {(k,): c for k, c in coeffs.items()})
    if method == "cut_fuse":
        if g.n_vertices > CUT_FUSE_CAP:
            raise DomainError(f"{g.n_vertices} vertices exceed the cut-and-fuse cap {CUT_FUSE_CAP}")
        return _to_poly(_cut_fuse(g, "cycle", edge_order), ("x",))
    raise DomainError(f"unknown method {method!r}")


def cover_poly(g: WeightedDigraph, variant: str = "geometric", method: str = "bruteforce",
               edge_order=None) -> Poly:
    """Geometric (``y^|P|``) or factorial (``y`` falling ``|P|``) cover polynomial in x, y."""
    if variant not in ("geometric", "factorial"):
        raise DomainError(f"unknown variant {variant!r}")
    x, y = Poly.var("x", ("x", "y")), Poly.var("y", ("x", "y"))
    if method == "bruteforce":
        if g.n_vertices > COVER_CAP:
            raise DomainError(f"{g.n_vertices} vertices exceed the cover cap {COVER_CAP}")
        total = Poly(("x", "y"))
        for cycles, paths in iter_cycle_path_covers(g):
            py = y ** len(paths) if variant == "geometric" else _falling(y, len(paths))
            total = total + x ** len(cycles) * py
        return total
    if method != "cut_fuse":
        raise DomainError(f"unknown method {method!r}")
    if g.n_vertices > CUT_FUSE_CAP:
        raise DomainError(f"{g.n_vertices} vertices exceed the cut-and-fuse cap {CUT_FUSE_CAP}")
    return _to_poly(_cut_fuse(g, variant, edge_order), ("x", "y"))


def cycle_indicator(g: WeightedDigraph, method: str = "cut_fuse", edge_order=None,
                    paths: bool = False) -> Poly:
    """Cycle indicator ``I_c(G_w; x_1..x_W)``; with ``paths=True`` the full
    cycle-path indicator in ``x_k``, ``y_k``."""
    W = max(g.total_weight, 1)
    names = _x_vars(W) + (_y_vars(W) if paths else ())

    if method == "bruteforce":
        if g.n_vertices > BRUTE_CAP:
            raise DomainError(f"{g.n_vertices} vertices exceed the brute-force cap {BRUTE_CAP}")
        total: dict = {}
        covers = iter_cycle_path_covers(g) if paths else (
            (_zero_based_cycles(s), []) for s in iter_cycle_covers(g))
        for cycles, ps in covers:
            term = _ONE
            for cyc in cycles:
                term = _pmul(term, _mono(f"x{sum(g.weights[v] for v in cyc)}"))
            for p in ps:
                term = _pmul(term, _mono(f"y{sum(g.weights[v] for v in p)}"))
            total = _padd(total, term)
        return _to_poly(total, names)
    if method != "cut_fuse":
        raise DomainError(f"unknown method {method!r}")
    if g.n_vertices > INDICATOR_CUT_FUSE_CAP:
        raise DomainError(f"{g.n_vertices} vertices exceed the cut-and-fuse cap {INDICATOR_CUT_FUSE_CAP}")
    return _to_poly(_cut_fuse(g, "indicator_paths" if paths else "indicator", edge_order), names)


def _zero_based_cycles(sigma: Permutation):
    return [[v - 1 for v in c] for c in sigma.cycles()]


def default_edge_choice(g: WeightedDigraph):
    """A loop if there is one, else an edge whose source has minimum out-degree."""
    return _choose_raw(g.edges)


def _choose_raw(edges):
    best = None
    outdeg: dict = {}
    for a, b in edges:
        if a == b and (best is None or (a, b) < best):
            best = (a, b)
        outdeg[a] = outdeg.get(a, 0) + 1
    if best is not None:
        return best
    return min(edges, key=lambda e: (outdeg[e[0]], e))


# sparse integer polynomials used inside the recursion: monomial -> int,
# a monomial being a sorted tuple of (variable, exponent)
_ONE = {(): 1}


def _mono(var: str) -> dict:
    return {((var, 1),): 1}


def _padd(a: dict, b: dict) -> dict:
    if not a:
        return b
    if not b:
        return a
    out = dict(a)
    for m, c in b.items():
        c = out.get(m, 0) + c
        if c:
            out[m] = c
        else:
            out.pop(m, None)
    return out


def _mmul(m1: tuple, m2: tuple) -> tuple:
    if not m1:
        return m2
    if not m2:
        return m1
    d = dict(m1)
    for v, e in m2:
        d[v] = d.get(v, 0) + e
    return tuple(sorted(d.items()))


def _pmul(a: dict, b: dict) -> dict:
    out: dict = {}
    for m1, c1 in a.items():
        for m2, c2 in b.items():
            m = _mmul(m1, m2)
            out[m] = out.get(m, 0) + c1 * c2
    return {m: c for m, c in out.items() if c}


def _falling_raw(n: int) -> dict:
    out = _ONE
    for i in range(n):
        out = _pmul(out, _padd(_mono("y"), {(): -i} if i else {}))
    return out


def _to_poly(p: dict, names: tuple[str, ...]) -> Poly:
    index = {v: i for i, v in enumerate(names)}
    terms = {}
    for m, c in p.items():
        exp = [0] * len(names)
        for v, e in m:
            exp[index[v]] = e
        terms[tuple(exp)] = c
    return Poly(names, terms)


def _initial(mode: str, weights: tuple) -> dict:
    n = len(weights)
    if n == 0:
        return _ONE
    if mode in ("cycle", "indicator"):
        return {}
    if mode == "geometric":
        return {(("y", n),): 1}
    if mode == "factorial":
        return _falling_raw(n)
    out = _ONE
    for w in weights:
        out = _pmul(out, _mono(f"y{w}"))
    return out


def _loop_factor(mode: str, weight: int) -> dict:
    if mode in ("indicator", "indicator_paths"):
        return _mono(f"x{weight}")
    return _mono("x")


def _raw_delete_vertex(weights, edges, v):
    w = weights[:v] + weights[v + 1:]
    e = frozenset((a - (a > v), b - (b > v)) for a, b in edges if a != v and b != v)
    return w, e


def _raw_fuse(weights, edges, v1, v2):
    def lab(x):
        if x == v2:
            x = v1
        return x - (x > v2)
    e = frozenset((lab(a), lab(b)) for a, b in edges if a != v1 and b != v2)
    w = list(weights)
    w[v1] += w[v2]
    del w[v2]
    return tuple(w), e


_MEMO: dict = {}
_MEMO_LIMIT = 2_000_000


def clear_memo():
    _MEMO.clear()


def _cut_fuse(g: WeightedDigraph, mode: str, edge_order=None) -> dict:
    """Cut-and-fuse recursion.

    Cycle-only variants prune a branch as soon as some vertex lacks an in- or
    out-edge: deletion and fusion never create such edges, so the branch can
    only end in a nonempty edgeless graph, which contributes 0.
    """
    prune = mode in ("cycle", "indicator")
    if edge_order is None:
        memo = _MEMO
        if len(memo) > _MEMO_LIMIT:
            memo.clear()

        def choose(weights, edges):
            return _choose_raw(edges)
    else:
        memo = {}

        def choose(weights, edges):
            return edge_order(WeightedDigraph(len(weights), weights, edges))

    def rec(weights: tuple, edges: frozenset) -> dict:
        key = (mode, weights, tuple(sorted(edges)))
        hit = memo.get(key)
        if hit is not None:
            return hit
        if not edges:
            result = _initial(mode, weights)
        elif prune and (len({a for a, _ in edges}) < len(weights) or len({b for _, b in edges}) < len(weights)):
            result = {}
        else:
            a, b = choose(weights, edges)
            if a == b:
                result = _padd(_pmul(_loop_factor(mode, weights[a]), rec(*_raw_delete_vertex(weights, edges, a))),
                               rec(weights, edges - {(a, b)}))
            else:
                result = _padd(rec(weights, edges - {(a, b)}), rec(*_raw_fuse(weights, edges, a, b)))
        memo[key] = result
        return result

    return rec(g.weights, g.edges)


def evaluate_indicator(p: Poly, x: dict[int, object]) -> object:
    """Evaluate ``I_c`` at ``x_k`` values; ``x`` maps k to a scalar."""
    return p.eval({f"x{k}": x[k] for k in range(1, len(p.vars) + 1)
                   if f"x{k}" in p.vars and any(e[p.vars.index(f'x{k}')] for e in p.terms)})


# ----------------------------------------------------------------------
# structure


def realizability_check(g: WeightedDigraph) -> bool:
    """Necessary condition for being the digraph of a Dyck word: vertices whose
    successor sets meet a common third successor set are nested."""
    succ = [g.successors(v) for v in range(g.n_vertices)]
    for i in range(g.n_vertices):
        for j in range(g.n_vertices):
            if i == j:
                continue
            linked = any(succ[i] & succ[k] and succ[j] & succ[k] for k in range(g.n_vertices))
            if linked and not (succ[i] <= succ[j] or succ[j] <= succ[i]):
                return False
    return True


def is_isomorphic(g: WeightedDigraph, h: WeightedDigraph, cap: int = 8) -> bool:
    if g.n_vertices != h.n_vertices or len(g.edges) != len(h.edges):
        return False
    if sorted(g.weights) != sorted(h.weights):
        return False
    if g.n_vertices > cap:
        raise DomainError(f"isomorphism test capped at {cap} vertices")

    def profile(k, v):
        outs = sum(1 for a, _ in k.edges if a == v)
        ins = sum(1 for _, b in k.edges if b == v)
        return (k.weights[v], outs, ins, (v, v) in k.edges)

    pg = [profile(g, v) for v in range(g.n_vertices)]
    ph = [profile(h, v) for v in range(h.n_vertices)]
    if sorted(pg) != sorted(ph):
        return False
    for perm in permutations(range(g.n_vertices)):
        if any(pg[v] != ph[perm[v]] for v in range(g.n_vertices)):
            continue
        if all((perm[a], perm[b]) in h.edges for a, b in g.edges):
            return True
    return False


@lru_cache(maxsize=100_000)
def _cached_indicator(key: tuple) -> Poly:
    weights, edges = key
    return cycle_indicator(WeightedDigraph(len(weights), weights, frozenset(edges)))


def cached_cycle_indicator(g: WeightedDigraph) -> Poly:
    return _cached_indicator(g.key())
