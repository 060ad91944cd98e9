"""Truncated simulators for the q-Fock, N-character Fock and Vershik-Kerov models.

Kets of the q- and N-models are tuples of basis indices (1-based colors).
Vershik-Kerov kets are canonical symmetric classes ``(M, y)``: ``M`` is the
sorted multiset of (letter, color) pairs carried by ``b_{x,y} (x)_s xi`` and
``y`` is the ordered letter word.  The symmetric tensor only depends on the
pairs ``(x_i, xi_i)`` up to simultaneous permutation, so this is a faithful
basis and avoids expanding ``n!`` plain terms.
"""
from __future__ import annotations

import itertools
import re
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Callable, Iterable, Iterator, Mapping, Sequence

from .algebra import Poly, as_fraction, is_zero, power_sums, q_factorial
from .errors import DomainError, InvariantViolation, ParseError
from .partitions import (Permutation, SetPartition, crossings_nc, cycle_structure)
from .words import (ANNIHILATE, CREATE, GAUGE, FlatWord, OpToken, PowerWord,
                    parse_word, to_flat)

DEFAULT_NMAX = 10
DEFAULT_DIM = 4
DEFAULT_ALPHABET = 4


def _zero_like(c):
    if isinstance(c, Poly):
        return Poly(c.vars)
    return Fraction(0)


class FockVector:
    """Finite linear combination of basis kets; zero coefficients are dropped."""

    __slots__ = ("model", "coeffs")

    def __init__(self, model: str, coeffs: Mapping | None = None):
        self.model = model
        self.coeffs = {k: c for k, c in (coeffs or {}).items() if not is_zero(c)}

    @classmethod
    def ket(cls, model: str, ket, coeff=1) -> "FockVector":
        return cls(model, {ket: Fraction(coeff) if isinstance(coeff, int) else coeff})

    def _check(self, other: "FockVector"):
        if other.model != self.model:
            raise DomainError(f"cannot combine {self.model} and {other.model} vectors")

    def __add__(self, other: "FockVector") -> "FockVector":
        self._check(other)
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            out[k] = out[k] + c if k in out else c
        return FockVector(self.model, out)

    def __sub__(self, other: "FockVector") -> "FockVector":
        return self + other.scale(-1)

    def scale(self, s) -> "FockVector":
        if is_zero(s):
            return FockVector(self.model)
        return FockVector(self.model, {k: c * s for k, c in self.coeffs.items()})

    def __rmul__(self, s):
        return self.scale(s)

    def __eq__(self, other):
        if not isinstance(other, FockVector):
            return NotImplemented
        return self.model == other.model and (self - other).is_zero()

    def is_zero(self) -> bool:
        return not self.coeffs

    def coefficient(self, ket):
        return self.coeffs.get(ket, 0)

    def particle_numbers(self) -> set[int]:
        return {_particles(k) for k in self.coeffs}

    def __repr__(self):
        body = " + ".join(f"({c})|{k}>" for k, c in sorted(self.coeffs.items(), key=lambda kv: str(kv[0])))
        return f"FockVector[{self.model}]({body or '0'})"


def _particles(ket) -> int:
    if len(ket) == 2 and isinstance(ket[0], tuple) and isinstance(ket[1], tuple) and \
            all(isinstance(p, tuple) for p in ket[0]):
        return len(ket[1])
    return len(ket)


def _accumulate(out: dict, ket, c):
    if ket in out:
        out[ket] = out[ket] + c
    else:
        out[ket] = c


# ----------------------------------------------------------------------
# models


@dataclass
class FockModel:
    """Common machinery: token dispatch, truncation, vacuum expectation."""

    tag: str = field(init=False, default="abstract")
    dim: int = DEFAULT_DIM
    n_max: int = DEFAULT_NMAX

    # scalar ring --------------------------------------------------------
    @property
    def symbolic(self) -> bool:
        return False

    @property
    def vars(self) -> tuple[str, ...]:
        return ()

    def scalar(self, c):
        if isinstance(c, Poly):
            return c.with_vars(self.vars) if self.symbolic else c
        c = as_fraction(c) if not isinstance(c, complex) else c
        if self.symbolic:
            return Poly.const(c, self.vars)
        return c

    @property
    def zero(self):
        return self.scalar(0)

    @property
    def one(self):
        return self.scalar(1)

    # vectors ------------------------------------------------------------
    def vacuum_ket(self):
        return ()

    def vacuum(self) -> FockVector:
        return FockVector.ket(self.tag, self.vacuum_ket(), self.one)

    def vector(self, coeffs: Mapping) -> FockVector:
        return FockVector(self.tag, {k: self.scalar(c) for k, c in coeffs.items()})

    def _check_color(self, color: int):
        if not 1 <= color <= self.dim:
            raise DomainError(f"color {color} outside the model dimension {self.dim}")

    def _check_room(self, n: int):
        if n > self.n_max:
            raise DomainError(f"particle number {n} exceeds the truncation cap {self.n_max}")

    def apply_token(self, tok: OpToken, v: FockVector) -> FockVector:
        if v.model != self.tag:
            raise DomainError(f"{v.model} vector given to the {self.tag} model")
        if tok.kind != GAUGE:
            self._check_color(tok.color)
        out: dict = {}
        for ket, c in v.coeffs.items():
            for new, w in self._act(tok, ket):
                _accumulate(out, new, c * w)
        return FockVector(self.tag, out)

    def apply_word(self, w, v: FockVector) -> FockVector:
        for tok in reversed(to_flat(w)):
            if v.is_zero():
                break
            v = self.apply_token(tok, v)
        return v

    def vacuum_expectation(self, w):
        if isinstance(w, str):
            w = parse_word(w)
        v = self.apply_word(w, self.vacuum())
        return self.inner_product(self.vacuum(), v)

    def inner_product(self, u: FockVector, v: FockVector):
        if u.model != self.tag or v.model != self.tag:
            raise DomainError("inner product of vectors from another model")
        total = self.zero
        for a, ca in u.coeffs.items():
            for b, cb in v.coeffs.items():
                if _particles(a) != _particles(b):
                    continue
                g = self.gram_entry(a, b)
                if not is_zero(g):
                    total = total + ca * cb * g
        return total

    def _act(self, tok: OpToken, ket) -> Iterable[tuple[object, object]]:
        raise NotImplementedError

    def gram_entry(self, a, b):
        raise NotImplementedError

    def basis(self, n: int, colors: Sequence[int] | None = None) -> list:
        colors = list(colors or range(1, self.dim + 1))
        return [tuple(k) for k in itertools.product(colors, repeat=n)]


def _matchings(a: Sequence, b: Sequence) -> Iterator[tuple[int, ...]]:
    """All ``tau`` (0-based images) with ``b[tau[i]] == a[i]``."""
    n = len(a)
    used = [False] * n
    tau = [0] * n

    def rec(i):
        if i == n:
            yield tuple(tau)
            return
        for j in range(n):
            if not used[j] and b[j] == a[i]:
                used[j] = True
                tau[i] = j
                yield from rec(i + 1)
                used[j] = False

    yield from rec(0)


def _inversions(tau: Sequence[int]) -> int:
    return sum(1 for i in range(len(tau)) for j in range(i + 1, len(tau)) if tau[i] > tau[j])


def _cycle_count(tau: Sequence[int]) -> int:
    seen = [False] * len(tau)
    count = 0
    for i in range(len(tau)):
        if not seen[i]:
            count += 1
            j = i
            while not seen[j]:
                seen[j] = True
                j = tau[j]
    return count


@dataclass
class QModel(FockModel):
    """q-Fock space; ``q=None`` keeps q as an indeterminate."""

    q: object = None
    extra_vars: tuple[str, ...] = ()

    def __post_init__(self):
        if self.q is not None and not isinstance(self.q, Poly):
            self.q = as_fraction(self.q)
        self.tag = "free" if self.q == 0 else "q"
        self._q = Poly.var("q", self.vars) if self.q is None else self.q
        self._gram_cache: dict = {}

    @property
    def symbolic(self) -> bool:
        return self.q is None or bool(self.extra_vars)

    @property
    def vars(self) -> tuple[str, ...]:
        return (("q",) if self.q is None else ()) + tuple(self.extra_vars)

    @property
    def q_value(self):
        return self._q

    def _qpow(self, k: int):
        return self.scalar(self._q) ** k if k else self.one

    def _act(self, tok, ket):
        if tok.weight:
            raise DomainError("weighted tokens exist only in the Vershik-Kerov model")
        if tok.kind == CREATE:
            self._check_room(len(ket) + 1)
            return [((tok.color,) + ket, self.one)]
        if tok.kind == ANNIHILATE:
            return [(ket[:k] + ket[k + 1:], self._qpow(k))
                    for k in range(len(ket)) if ket[k] == tok.color]
        out = []
        for k in range(len(ket)):
            rest = ket[:k] + ket[k + 1:]
            for (r, c), val in tok.matrix:
                if c == ket[k]:
                    self._check_color(r)
                    out.append(((r,) + rest, self._qpow(k) * val))
        return out

    def gram_entry(self, a, b):
        key = (a, b)
        if key not in self._gram_cache:
            total = self.zero
            for tau in _matchings(a, b):
                total = total + self._qpow(_inversions(tau))
            self._gram_cache[key] = total
        return self._gram_cache[key]


def FreeModel(dim: int = DEFAULT_DIM, n_max: int = DEFAULT_NMAX) -> QModel:
    """The full (Boltzmann) Fock space: the q-model at q = 0."""
    return QModel(dim=dim, n_max=n_max, q=Fraction(0))


@dataclass
class NModel(FockModel):
    """Fock space deformed by the character ``phi_N``; ``N=None`` keeps t = 1/N symbolic."""

    N: object = None
    extra_vars: tuple[str, ...] = ()

    def __post_init__(self):
        self.tag = "N"
        if self.N is not None:
            self.N = as_fraction(self.N)
            if self.N == 0:
                raise DomainError("N must be nonzero")
        self._t = Poly.var("t", self.vars) if self.N is None else 1 / self.N
        self._gram_cache: dict = {}

    @property
    def symbolic(self) -> bool:
        return self.N is None or bool(self.extra_vars)

    @property
    def vars(self) -> tuple[str, ...]:
        return (("t",) if self.N is None else ()) + tuple(self.extra_vars)

    @property
    def t(self):
        return self.scalar(self._t)

    def _act(self, tok, ket):
        if tok.weight:
            raise DomainError("weighted tokens exist only in the Vershik-Kerov model")
        if tok.kind == GAUGE:
            raise DomainError("the N-model has no gauge operator")
        if tok.kind == CREATE:
            self._check_room(len(ket) + 1)
            return [((tok.color,) + ket, self.one)]
        if not ket:
            return []
        out = []
        if ket[0] == tok.color:
            out.append((ket[1:], self.one))
        for k in range(1, len(ket)):
            if ket[k] == tok.color:
                out.append((ket[1:k] + (ket[0],) + ket[k + 1:], self.t))
        return out

    def dgamma(self, j: int, i: int, v: FockVector) -> FockVector:
        """``dGamma(|e_j><e_i|)``: replace an ``e_i`` by ``e_j``, summed over positions."""
        out: dict = {}
        for ket, c in v.coeffs.items():
            for k, col in enumerate(ket):
                if col == i:
                    _accumulate(out, ket[:k] + (j,) + ket[k + 1:], c)
        return FockVector(self.tag, out)

    def phi(self, tau: Sequence[int]):
        return self.t ** (len(tau) - _cycle_count(tau))

    def gram_entry(self, a, b):
        key = (a, b)
        if key not in self._gram_cache:
            total = self.zero
            for tau in _matchings(a, b):
                total = total + self.phi(tau)
            self._gram_cache[key] = total
        return self._gram_cache[key]


VKKet = tuple  # (M: tuple of (letter, color) sorted, y: tuple of letters)


@dataclass
class VKModel(FockModel):
    """Vershik-Kerov symmetric Fock space with Thoma parameters alpha (beta = 0)."""

    alpha: tuple = (Fraction(1, 2), Fraction(1, 2))

    def __post_init__(self):
        self.tag = "vk"
        self.alpha = tuple(as_fraction(a) for a in self.alpha)
        if not self.alpha or any(a < 0 for a in self.alpha) or sum(self.alpha) != 1:
            raise DomainError("the Vershik-Kerov simulator needs alpha >= 0 with sum 1")
        self.letters = tuple(i for i, a in enumerate(self.alpha, 1) if a)
        self._apow: dict = {}

    @classmethod
    def uniform(cls, N: int, dim: int = DEFAULT_DIM, n_max: int = DEFAULT_NMAX) -> "VKModel":
        return cls(dim=dim, n_max=n_max, alpha=tuple(Fraction(1, N) for _ in range(N)))

    def a(self, letter: int, k: int = 1) -> Fraction:
        key = (letter, k)
        if key not in self._apow:
            self._apow[key] = self.alpha[letter - 1] ** k
        return self._apow[key]

    def power_sum(self, k: int) -> Fraction:
        return sum(self.a(z, k) for z in self.letters)

    def vacuum_ket(self):
        return ((), ())

    def _act(self, tok, ket):
        M, y = ket
        n = len(y)
        k = tok.weight
        if tok.kind == GAUGE:
            raise DomainError("use dgamma for gauge-type operators in the Vershik-Kerov model")
        if tok.kind == CREATE:
            self._check_room(n + 1)
            out = []
            for z in self.letters:
                newM = tuple(sorted(M + ((z, tok.color),)))
                out.append(((newM, y + (z,)), (n + 1) * self.a(z, k)))
            return out
        if n == 0:
            return []
        last = y[-1]
        counts = Counter(M)
        mult = counts.get((last, tok.color), 0)
        if not mult:
            return []
        rest = list(M)
        rest.remove((last, tok.color))
        return [((tuple(rest), y[:-1]), Fraction(mult, n) * self.a(last, k + 1))]

    def dgamma(self, j: int, i: int, v: FockVector, k: int = 0) -> FockVector:
        """Weighted ``dGamma^(k)(|e_j><e_i|)``."""
        out: dict = {}
        for (M, y), c in v.coeffs.items():
            counts = Counter(M)
            for (z, col), mult in counts.items():
                if col != i:
                    continue
                rest = list(M)
                rest.remove((z, col))
                newM = tuple(sorted(rest + [(z, j)]))
                _accumulate(out, (newM, y), c * mult * self.a(z, k))
        return FockVector(self.tag, out)

    def gram_entry(self, a, b):
        if a != b:
            return Fraction(0)
        M, y = a
        n = len(y)
        w = Fraction(1)
        for z in y:
            w *= self.alpha[z - 1]
        for m in Counter(M).values():
            w *= factorial(m)
        return w / factorial(n) ** 2

    def basis(self, n: int, colors: Sequence[int] | None = None) -> list:
        colors = list(colors or range(1, self.dim + 1))
        out = set()
        for y in itertools.product(self.letters, repeat=n):
            for xs in set(itertools.permutations(y)):
                for cols in itertools.product(colors, repeat=n):
                    out.add((tuple(sorted(zip(xs, cols))), y))
        return sorted(out)


def make_model(name: str, q=None, N=None, alpha=None, dim: int = DEFAULT_DIM,
               n_max: int = DEFAULT_NMAX, extra_vars: tuple[str, ...] = ()) -> FockModel:
    if name == "q":
        return QModel(dim=dim, n_max=n_max, q=q, extra_vars=extra_vars)
    if name == "free":
        return QModel(dim=dim, n_max=n_max, q=Fraction(0), extra_vars=extra_vars)
    if name == "N":
        return NModel(dim=dim, n_max=n_max, N=N, extra_vars=extra_vars)
    if name == "vk":
        if alpha is None:
            alpha = [Fraction(1, int(N or 2))] * int(N or 2)
        return VKModel(dim=dim, n_max=n_max, alpha=tuple(alpha))
    raise DomainError(f"unknown model {name!r}")


def q_symmetrizer_apply(n: int, ket: Sequence[int], q=None, cap: int = 8) -> FockVector:
    """``P_n^q`` on a basis ket: ``sum_sigma q^inv(sigma) U(sigma) ket``."""
    ket = tuple(ket)
    if len(ket) != n:
        raise DomainError("ket length must equal n")
    if n > cap:
        raise DomainError(f"n = {n} exceeds the symmetrizer cap {cap}")
    qq = Poly.var("q") if q is None else as_fraction(q)
    out: dict = {}
    for perm in itertools.permutations(range(n)):
        sigma = Permutation(tuple(p + 1 for p in perm))
        inv = sigma.inverse()
        new = tuple(ket[inv(i + 1) - 1] for i in range(n))
        _accumulate(out, new, qq ** sigma.inversions())
    return FockVector("q", out)


def apply_token(tok: OpToken, v: FockVector, model: FockModel) -> FockVector:
    return model.apply_token(tok, v)


def inner_product(u: FockVector, v: FockVector, model: FockModel):
    return model.inner_product(u, v)


def vacuum_expectation(w, model: FockModel):
    return model.vacuum_expectation(w)


# ----------------------------------------------------------------------
# noncommutative polynomials in the tokens


class Operator:
    """Linear combination of flat words (operator order); the empty word is I."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping | None = None):
        self.terms = {FlatWord(w): c for w, c in (terms or {}).items() if not is_zero(c)}

    @classmethod
    def word(cls, w, coeff=1) -> "Operator":
        if isinstance(w, str):
            w = parse_word(w) if w.strip() else FlatWord()
        return cls({to_flat(w): coeff})

    @classmethod
    def identity(cls, coeff=1) -> "Operator":
        return cls({FlatWord(): coeff})

    @classmethod
    def parse(cls, text: str, gauges=None) -> "Operator":
        """``"a1+c1"``, ``"2*a1 c1 + 1/2*c1^2"``, ``"1"`` for the identity."""
        total = cls()
        for pos, term in enumerate(text.split("+"), 1):
            term = term.strip()
            if not term:
                raise ParseError("empty summand", pos)
            m = re.fullmatch(r"(?:(-?\d+(?:/\d+)?)\s*\*\s*)?(.*)", term)
            coeff = as_fraction(m.group(1)) if m.group(1) else Fraction(1)
            body = m.group(2).strip()
            if re.fullmatch(r"-?\d+(?:/\d+)?", body):
                total = total + cls.identity(coeff * as_fraction(body))
            else:
                total = total + cls({to_flat(parse_word(body, gauges)): coeff})
        return total

    def __add__(self, other: "Operator") -> "Operator":
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out[w] + c if w in out else c
        return Operator(out)

    def __mul__(self, other):
        if isinstance(other, Operator):
            out: dict = {}
            for w1, c1 in self.terms.items():
                for w2, c2 in other.terms.items():
                    _accumulate(out, FlatWord(w1 + w2), c1 * c2)
            return Operator(out)
        return Operator({w: c * other for w, c in self.terms.items()})

    def __rmul__(self, s):
        return Operator({w: s * c for w, c in self.terms.items()})

    def __pow__(self, k: int) -> "Operator":
        out = Operator.identity()
        for _ in range(k):
            out = out * self
        return out

    def recolor(self, mapping: Callable[[int], int]) -> "Operator":
        return Operator({FlatWord(t.recolor(mapping) for t in w): c for w, c in self.terms.items()})

    def colors(self) -> set[int]:
        out = set()
        for w in self.terms:
            for t in w:
                out.add(t.color)
                if t.matrix:
                    for (r, c), _ in t.matrix:
                        out.update((r, c))
        return out

    def max_annihilations(self) -> int:
        return max((sum(1 for t in w if t.kind == ANNIHILATE) for w in self.terms), default=0)

    def apply(self, v: FockVector, model: FockModel, budget: int | None = None) -> FockVector:
        """Apply to ``v``.  With a ``budget`` (annihilators available further
        left) components that can no longer reach the vacuum are dropped; this
        is exact for vacuum expectations, not a truncation."""
        total = FockVector(model.tag)
        for w, c in self.terms.items():
            downs = [0]
            for t in w:
                downs.append(downs[-1] + (t.kind == ANNIHILATE))
            u = v
            for i in range(len(w) - 1, -1, -1):
                if u.is_zero():
                    break
                u = model.apply_token(w[i], u)
                if budget is not None and w[i].kind == CREATE:
                    limit = budget + downs[i]
                    u = FockVector(u.model, {k: x for k, x in u.coeffs.items() if _particles(k) <= limit})
            total = total + u.scale(c)
        return total

    def __repr__(self):
        return " + ".join(f"{c}*[{w}]" for w, c in self.terms.items()) or "0"


def expectation_of_product(ops: Sequence[Operator], model: FockModel):
    """``<Omega, X_1 X_2 ... X_n Omega>``, applying factors right to left."""
    # budget[j]: annihilators available left of factor j; components with
    # more particles than that can never return to the vacuum
    budget = [0] * (len(ops) + 1)
    for j in range(len(ops)):
        budget[j + 1] = budget[j] + ops[j].max_annihilations()
    v = model.vacuum()
    for j in range(len(ops) - 1, -1, -1):
        v = ops[j].apply(v, model, budget[j])
        if v.is_zero():
            return model.zero
    return model.inner_product(model.vacuum(), v)


# ----------------------------------------------------------------------
# pair-partition oracle


TSpec = Callable[[SetPartition], object]


def t_q(q=None) -> TSpec:
    qq = Poly.var("q") if q is None else as_fraction(q)
    return lambda pi: qq ** crossings_nc(pi)


def t_N(N=None) -> TSpec:
    t = Poly.var("t") if N is None else 1 / as_fraction(N)

    def f(pi):
        c, _, _ = cycle_structure(pi)
        return t ** (len(pi) - c)
    return f


def thoma(alpha: Sequence = (), beta: Sequence = ()) -> TSpec:
    alpha, beta = list(alpha), list(beta)

    def f(pi):
        _, cm, _ = cycle_structure(pi)
        xs = power_sums(alpha, beta, upto=max(cm, default=1))
        out = Fraction(1)
        for m, count in cm.items():
            out *= xs[m] ** count
        return out
    return f


def admissible_pairings(w: FlatWord) -> Iterator[SetPartition]:
    """Pairings where each annihilator is matched to a later creator of its color."""
    w = to_flat(w)
    n = len(w)
    if any(t.kind == GAUGE for t in w):
        raise DomainError("the pair-partition expansion covers creation/annihilation words only")
    if n % 2:
        return
    unused = set(range(1, n + 1))
    pairs: list = []

    def rec():
        if not unused:
            yield SetPartition(n, tuple(pairs))
            return
        k = min(unused)
        if w[k - 1].kind != ANNIHILATE:
            return
        unused.discard(k)
        for l in sorted(unused):
            if w[l - 1].kind == CREATE and w[l - 1].color == w[k - 1].color:
                unused.discard(l)
                pairs.append((k, l))
                yield from rec()
                pairs.pop()
                unused.add(l)
        unused.add(k)

    yield from rec()


def pair_partition_expectation(w, t_spec: TSpec, cap: int = 14):
    if isinstance(w, str):
        w = parse_word(w)
    w = to_flat(w)
    if len(w) > cap:
        raise DomainError(f"word length {len(w)} exceeds the cap {cap}")
    if any(t.weight for t in w):
        raise DomainError("the pair-partition expansion ignores weights; use the weighted theorem")
    total = None
    for pi in admissible_pairings(w):
        val = t_spec(pi)
        total = val if total is None else total + val
    if total is None:
        probe = t_spec(SetPartition(2, ((1, 2),)))
        return _zero_like(probe)
    return total


# ----------------------------------------------------------------------
# deformed factorials, symmetrizers, characters


def _power_word(n: int, color: int = 1) -> FlatWord:
    return to_flat(PowerWord([(color, -(n - 1)), (color, n - 1)])) if n > 1 else FlatWord()


def deformed_factorial_closed_form(n: int, model: FockModel):
    if isinstance(model, QModel):
        return model.scalar(q_factorial(n - 1, model.scalar(model.q_value)))
    if isinstance(model, NModel):
        out = model.one
        for k in range(1, n - 1):
            out = out * (1 + k * model.t)
        return out
    if isinstance(model, VKModel) and len(set(model.alpha)) == 1:
        N = len(model.alpha)
        out = Fraction(1)
        for k in range(1, n - 1):
            out *= 1 + Fraction(k, N)
        return out
    return None


def deformed_factorial(n: int, model: FockModel, cap: int = 7):
    """``b_n = rho((L*)^(n-1) L^(n-1))`` by simulation, cross-checked with the closed form."""
    if not 1 <= n <= cap:
        raise DomainError(f"n must be in 1..{cap}")
    value = model.vacuum_expectation(_power_word(n)) if n > 1 else model.one
    closed = deformed_factorial_closed_form(n, model)
    if closed is not None and value != closed:
        raise InvariantViolation(f"b_{n}: simulated {value} but closed form {closed}")
    return value


GroupElement = dict  # Permutation -> coefficient


def _group_mul(a: GroupElement, b: GroupElement) -> GroupElement:
    out: dict = {}
    for s, c in a.items():
        for p, d in b.items():
            _accumulate(out, s.compose(p), c * d)
    return {k: v for k, v in out.items() if not is_zero(v)}


def symmetrizer_sum(n: int) -> GroupElement:
    t = Poly.var("t")
    return {Permutation(tuple(p)): t ** (n - len(Permutation(tuple(p)).cycles()))
            for p in itertools.permutations(range(1, n + 1))}


def symmetrizer_product(n: int) -> GroupElement:
    t = Poly.var("t")
    e = Permutation.identity(n)
    out = {e: Poly.const(1, ("t",))}
    for k in range(2, n + 1):
        factor = {e: Poly.const(1, ("t",))}
        for i in range(1, k):
            factor[Permutation.transposition(n, i, k)] = t
        out = _group_mul(out, factor)
    return out


def symmetrizer_factorization_check(n: int, cap: int = 5) -> bool:
    if not 1 <= n <= cap:
        raise DomainError(f"n must be in 1..{cap}")
    a, b = symmetrizer_sum(n), symmetrizer_product(n)
    return a.keys() == b.keys() and all(a[k] == b[k] for k in a)


@dataclass(frozen=True)
class CharacterValue:
    fixed_point_measure: Fraction
    thoma_product: Fraction

    @property
    def value(self) -> Fraction:
        return self.fixed_point_measure


def vk_character(sigma: Permutation, alpha: Sequence, cap: int = 8) -> CharacterValue:
    """Both sides of the Vershik-Kerov diagonal matrix coefficient identity."""
    alpha = [as_fraction(a) for a in alpha]
    if any(a < 0 for a in alpha) or sum(alpha) != 1:
        raise DomainError("alpha must be a probability vector (beta = 0)")
    n = sigma.n
    if n > cap:
        raise DomainError(f"n = {n} exceeds the cap {cap}")
    inv = sigma.inverse()
    # <U(sigma) 1_n, 1_n> with 1_n = sum_x b_{x,x}; only fixed words survive
    fixed = Fraction(0)
    for x in itertools.product(range(len(alpha)), repeat=n):
        moved = tuple(x[inv(i + 1) - 1] for i in range(n))
        if moved == x:
            w = Fraction(1)
            for z in x:
                w *= alpha[z]
            fixed += w
    prod = Fraction(1)
    for m, count in sigma.cycle_type().items():
        if m >= 2:
            prod *= sum(a ** m for a in alpha) ** count
    if fixed != prod:
        raise InvariantViolation(f"character mismatch at {sigma.images}: {fixed} != {prod}")
    return CharacterValue(fixed, prod)


# ----------------------------------------------------------------------
# commutation relations


@dataclass
class CommutationReport:
    relation: str
    checks: list = field(default_factory=list)   # (description, equal)

    @property
    def all_equal(self) -> bool:
        return all(eq for _, eq in self.checks)

    @property
    def failures(self) -> list:
        return [d for d, eq in self.checks if not eq]


def _tok(kind, color, weight=0):
    return OpToken(kind, color, weight)


def commutation_check(model: FockModel, relation_id: str, sample_kets: Iterable,
                      colors: Sequence[int] | None = None, weights: Sequence[int] = (0, 1)) -> CommutationReport:
    colors = list(colors or range(1, min(model.dim, 3) + 1))
    report = CommutationReport(relation_id)
    samples = list(sample_kets)
    pairs = [(i, j) for i in colors for j in colors]

    def A(i, v, k=0):
        return model.apply_token(_tok(ANNIHILATE, i, k), v)

    def C(j, v, k=0):
        return model.apply_token(_tok(CREATE, j, k), v)

    if relation_id == "QCR":
        if not isinstance(model, QModel):
            raise DomainError("QCR is a q-model relation")
        q = model.scalar(model.q_value)
        for ket in samples:
            v = FockVector.ket(model.tag, ket, model.one)
            for i, j in pairs:
                lhs = A(i, C(j, v)) - C(j, A(i, v)).scale(q)
                rhs = v.scale(model.one if i == j else model.zero)
                report.checks.append((f"{ket} i={i} j={j}", lhs == rhs))
    elif relation_id == "NCR":
        if not isinstance(model, NModel):
            raise DomainError("NCR is an N-model relation")
        for ket in samples:
            v = FockVector.ket(model.tag, ket, model.one)
            for i, j in pairs:
                lhs = A(i, C(j, v))
                rhs = (v if i == j else FockVector(model.tag)) + model.dgamma(j, i, v).scale(model.t)
                report.checks.append((f"{ket} i={i} j={j}", lhs == rhs))
    elif relation_id in ("VKCR", "VKGEN"):
        if not isinstance(model, VKModel):
            raise DomainError(f"{relation_id} is a Vershik-Kerov relation")
        combos = [(0, 0)] if relation_id == "VKCR" else [(k, m) for k in weights for m in weights]
        for ket in samples:
            v = FockVector.ket(model.tag, ket, model.one)
            for i, j in pairs:
                for k, m in combos:
                    lhs = A(i, C(j, v, m), k)
                    s = model.power_sum(m + k + 1) if i == j else Fraction(0)
                    rhs = v.scale(s) + model.dgamma(j, i, v, m + k + 1)
                    report.checks.append((f"{ket} i={i} j={j} k={k} m={m}", lhs == rhs))
    elif relation_id == "DERIV":
        if not isinstance(model, (NModel, VKModel)):
            raise DomainError("DERIV applies to the N and Vershik-Kerov models")
        vk = isinstance(model, VKModel)
        for word in samples:
            word = to_flat(parse_word(word) if isinstance(word, str) else word)
            if any(t.kind != CREATE for t in word):
                raise DomainError("DERIV samples are words of creators")
            for i, j in pairs:
                for k in (weights if vk else (0,)):
                    base = model.apply_word(word, model.vacuum())
                    lhs = model.dgamma(j, i, base, k) if vk else model.dgamma(j, i, base)
                    rhs = FockVector(model.tag)
                    for pos, t in enumerate(word):
                        if t.color == i:
                            new = list(word)
                            new[pos] = OpToken(CREATE, j, t.weight + k)
                            rhs = rhs + model.apply_word(FlatWord(new), model.vacuum())
                    report.checks.append((f"{word} i={i} j={j} k={k}", lhs == rhs))
    else:
        raise DomainError(f"unknown relation {relation_id!r}")
    return report


# ----------------------------------------------------------------------
# Gram matrices


def gram_matrix(model: FockModel, kets: Sequence) -> list[list]:
    return [[model.gram_entry(a, b) for b in kets] for a in kets]


def gram_min_eigenvalue(model: FockModel, n: int, colors: Sequence[int]) -> float:
    import numpy as np

    kets = model.basis(n, colors)
    g = gram_matrix(model, kets)
    arr = np.array([[float(x) for x in row] for row in g])
    if not np.array_equal(arr, arr.T):
        raise InvariantViolation("Gram matrix is not symmetric")
    return float(np.linalg.eigvalsh(arr).min()) if len(kets) else 0.0


# ----------------------------------------------------------------------
# enumeration of lattice-word expectations


def lattice_word_expectations(model: FockModel, length: int, colors: Sequence[int],
                              weights: Sequence[int] = (0,)) -> Iterator[tuple[FlatWord, object]]:
    """Yield ``(word, rho(word))`` for every lattice word of the given length.

    Words are grown from the right so all words sharing a suffix reuse one
    state vector.
    """
    def rec(suffix: tuple, v: FockVector, heights: dict, remaining: int):
        total = sum(heights.values())
        if remaining == 0:
            if total == 0:
                yield FlatWord(suffix), model.inner_product(model.vacuum(), v)
            return
        if total > remaining:
            return
        for c in colors:
            for wgt in weights:
                if total + 1 <= remaining - 1:
                    tok = OpToken(CREATE, c, wgt)
                    h = dict(heights)
                    h[c] = h.get(c, 0) + 1
                    yield from rec((tok,) + suffix, model.apply_token(tok, v), h, remaining - 1)
                if heights.get(c, 0) > 0:
                    tok = OpToken(ANNIHILATE, c, wgt)
                    h = dict(heights)
                    h[c] -= 1
                    yield from rec((tok,) + suffix, model.apply_token(tok, v), h, remaining - 1)

    yield from rec((), model.vacuum(), {}, length)
