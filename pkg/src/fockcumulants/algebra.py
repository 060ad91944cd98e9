"""Exact scalars and sparse multivariate polynomials.

Scalars are :class:`fractions.Fraction`.  Polynomials are stored as a map
from exponent tuples (one entry per declared indeterminate) to nonzero
Fraction coefficients.
"""
from __future__ import annotations

import json
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Mapping, Union

from .errors import DomainError

Scalar = Union[int, Fraction]


def as_fraction(value) -> Fraction:
    """Parse ints, Fractions and strings like ``"1/2"`` into a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except ValueError as exc:
            raise DomainError(f"not a rational number: {value!r}") from exc
    raise DomainError(f"not an exact scalar: {value!r}")


def is_zero(c) -> bool:
    if isinstance(c, Poly):
        return not c.terms
    return c == 0


class Poly:
    """Polynomial with rational coefficients in a fixed tuple of indeterminates."""

    __slots__ = ("vars", "terms", "_hash")

    def __init__(self, vars: Iterable[str] = (), terms: Mapping[tuple, Scalar] | None = None):
        self.vars = tuple(vars)
        if len(set(self.vars)) != len(self.vars):
            raise DomainError(f"repeated indeterminate in {self.vars}")
        clean = {}
        for exp, c in (terms or {}).items():
            exp = tuple(exp)
            if len(exp) != len(self.vars) or any(e < 0 for e in exp):
                raise DomainError(f"bad exponent vector {exp} for {self.vars}")
            c = Fraction(c)
            if c:
                clean[exp] = clean.get(exp, 0) + c
        self.terms = {e: c for e, c in clean.items() if c}
        self._hash = None

    # construction -------------------------------------------------------
    @classmethod
    def const(cls, c: Scalar, vars: Iterable[str] = ()) -> "Poly":
        vars = tuple(vars)
        return cls(vars, {(0,) * len(vars): c})

    @classmethod
    def var(cls, name: str, vars: Iterable[str] | None = None) -> "Poly":
        vars = (name,) if vars is None else tuple(vars)
        exp = tuple(1 if v == name else 0 for v in vars)
        if sum(exp) != 1:
            raise DomainError(f"{name!r} not among {vars}")
        return cls(vars, {exp: 1})

    @classmethod
    def from_coeffs(cls, name: str, coeffs: Iterable[Scalar]) -> "Poly":
        """Univariate polynomial ``sum(c_k * name**k)``."""
        return cls((name,), {(k,): c for k, c in enumerate(coeffs)})

    # structure ----------------------------------------------------------
    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise DomainError(f"{self} is not constant")
        return next(iter(self.terms.values()), Fraction(0))

    def degree(self, name: str | None = None) -> int:
        if not self.terms:
            return -1
        if name is None:
            return max(sum(e) for e in self.terms)
        i = self.vars.index(name)
        return max(e[i] for e in self.terms)

    def coeff(self, exp: tuple) -> Fraction:
        return self.terms.get(tuple(exp), Fraction(0))

    def coeffs(self) -> list[Fraction]:
        """Dense coefficient list of a univariate polynomial, lowest degree first."""
        if len(self.vars) > 1:
            raise DomainError("coeffs() needs a univariate polynomial")
        if not self.terms:
            return []
        if not self.vars:
            return [self.constant_value()]
        out = [Fraction(0)] * (self.degree() + 1)
        for (e,), c in self.terms.items():
            out[e] = c
        return out

    def with_vars(self, vars: Iterable[str]) -> "Poly":
        """Re-express over a superset of indeterminates."""
        vars = tuple(vars)
        missing = [v for i, v in enumerate(self.vars)
                   if v not in vars and any(e[i] for e in self.terms)]
        if missing:
            raise DomainError(f"cannot drop indeterminates {missing}")
        idx = {v: i for i, v in enumerate(self.vars)}
        out = {}
        for exp, c in self.terms.items():
            out[tuple(exp[idx[v]] if v in idx else 0 for v in vars)] = c
        return Poly(vars, out)

    def _canonical(self) -> frozenset:
        return frozenset(
            (tuple((v, e) for v, e in zip(self.vars, exp) if e), c)
            for exp, c in self.terms.items()
        )

    # arithmetic ---------------------------------------------------------
    def _coerce(self, other) -> tuple["Poly", "Poly"]:
        if not isinstance(other, Poly):
            try:
                other = Poly.const(as_fraction(other), self.vars)
            except DomainError:
                return NotImplemented
        if other.vars == self.vars:
            return self, other
        if other.is_constant():
            return self, Poly.const(other.constant_value(), self.vars)
        if self.is_constant():
            return Poly.const(self.constant_value(), other.vars), other
        raise DomainError(f"mismatched indeterminates {self.vars} vs {other.vars}")

    def __add__(self, other):
        pair = self._coerce(other)
        if pair is NotImplemented:
            return NotImplemented
        a, b = pair
        out = dict(a.terms)
        for e, c in b.terms.items():
            out[e] = out.get(e, 0) + c
        return Poly(a.vars, out)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        pair = self._coerce(other)
        if pair is NotImplemented:
            return NotImplemented
        a, b = pair
        return a + (-b)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return Poly(self.vars)
            return Poly(self.vars, {e: c * other for e, c in self.terms.items()})
        pair = self._coerce(other)
        if pair is NotImplemented:
            return NotImplemented
        a, b = pair
        out: dict = {}
        for e1, c1 in a.terms.items():
            for e2, c2 in b.terms.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return Poly(a.vars, out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Poly):
            if other.is_constant():
                other = other.constant_value()
            else:
                return self.exact_div(other)
        d = as_fraction(other)
        if not d:
            raise ZeroDivisionError("polynomial division by zero")
        return Poly(self.vars, {e: c / d for e, c in self.terms.items()})

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise DomainError("only non-negative integer powers are supported")
        result = Poly.const(1, self.vars)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def exact_div(self, other) -> "Poly":
        """Exact quotient; raises DomainError when ``other`` does not divide ``self``."""
        a, b = self._coerce(other)
        if not b.terms:
            raise ZeroDivisionError("polynomial division by zero")
        if b.is_constant():
            return a / b.constant_value()
        lead = max(b.terms)
        lc = b.terms[lead]
        rem = dict(a.terms)
        quot: dict = {}
        while rem:
            m = max(rem)
            if any(x < y for x, y in zip(m, lead)):
                raise DomainError(f"{other} does not divide {self}")
            e = tuple(x - y for x, y in zip(m, lead))
            c = rem[m] / lc
            quot[e] = c
            for eb, cb in b.terms.items():
                k = tuple(x + y for x, y in zip(e, eb))
                v = rem.get(k, 0) - c * cb
                if v:
                    rem[k] = v
                else:
                    rem.pop(k, None)
        return Poly(a.vars, quot)

    # comparison ---------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, Poly):
            return self._canonical() == other._canonical()
        if isinstance(other, (int, Fraction)):
            return self.is_constant() and self.constant_value() == other
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self._canonical())
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    # evaluation ---------------------------------------------------------
    def eval(self, assignment: Mapping[str, Scalar]) -> Fraction:
        """Substitute exact values for every indeterminate that occurs."""
        used = {v for i, v in enumerate(self.vars) if any(e[i] for e in self.terms)}
        missing = used - set(assignment)
        if missing:
            raise DomainError(f"no value for {sorted(missing)}")
        vals = [as_fraction(assignment[v]) if v in used else Fraction(1) for v in self.vars]
        total = Fraction(0)
        for exp, c in self.terms.items():
            term = c
            for x, e in zip(vals, exp):
                if e:
                    term *= x ** e
            total += term
        return total

    def subs(self, assignment: Mapping[str, Scalar]) -> "Poly":
        """Partial substitution; the result keeps the unassigned indeterminates."""
        keep = [v for v in self.vars if v not in assignment]
        idx = [self.vars.index(v) for v in keep]
        out: dict = {}
        for exp, c in self.terms.items():
            for v, e in zip(self.vars, exp):
                if v in assignment and e:
                    c *= as_fraction(assignment[v]) ** e
            key = tuple(exp[i] for i in idx)
            out[key] = out.get(key, 0) + c
        return Poly(keep, out)

    # formatting ---------------------------------------------------------
    def format(self, descending: bool = False) -> str:
        if not self.terms:
            return "0"

        def key(exp):
            return (sum(exp), tuple(-e for e in exp))

        parts = []
        for exp in sorted(self.terms, key=key, reverse=descending):
            c = self.terms[exp]
            mono = "*".join(
                v if e == 1 else f"{v}^{e}" for v, e in zip(self.vars, exp) if e
            )
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if not mono:
                body = str(a)
            elif a == 1:
                body = mono
            elif a.denominator == 1:
                body = f"{a}{mono}"
            else:
                body = f"({a}){mono}"
            parts.append((sign, body))
        text = "".join(s + b for s, b in parts)
        return text[1:] if text.startswith("+") else text

    def __str__(self):
        return self.format()

    def __repr__(self):
        return f"Poly({self.vars!r}, {self.format()!r})"

    def to_json(self) -> dict:
        return {
            "vars": list(self.vars),
            "terms": [
                {"exp": list(e), "num": str(c.numerator), "den": str(c.denominator)}
                for e, c in sorted(self.terms.items())
            ],
        }

    @classmethod
    def from_json(cls, data: Mapping | str) -> "Poly":
        if isinstance(data, str):
            data = json.loads(data)
        try:
            terms = {
                tuple(t["exp"]): Fraction(int(t["num"]), int(t["den"])) for t in data["terms"]
            }
            return cls(data["vars"], terms)
        except (KeyError, TypeError, ValueError) as exc:
            raise DomainError(f"malformed polynomial JSON: {exc}") from exc


def poly_arith(a: Poly, b: Poly, op: str) -> Poly:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise DomainError(f"unknown operation {op!r}")


def poly_eval(p: Poly, assignment: Mapping[str, Scalar]) -> Fraction:
    return p.eval(assignment)


def q_int(n: int, q) -> Poly | Fraction:
    """``[n]_q = 1 + q + ... + q^(n-1)``."""
    total = Fraction(0) if not isinstance(q, Poly) else Poly.const(0, q.vars)
    power = 1
    for _ in range(n):
        total = total + power
        power = power * q
    return total


def q_factorial(n: int, q) -> Poly | Fraction:
    result = Fraction(1) if not isinstance(q, Poly) else Poly.const(1, q.vars)
    for k in range(1, n + 1):
        result = result * q_int(k, q)
    return result


def power_sums(alpha: Iterable[Scalar], beta: Iterable[Scalar] = (), upto: int = 1) -> dict[int, Fraction]:
    """Thoma coordinates ``x_k = sum alpha^k + (-1)^(k+1) sum beta^k`` with ``x_1 = 1``."""
    alpha = [as_fraction(a) for a in alpha]
    beta = [as_fraction(b) for b in beta]
    out = {1: Fraction(1)}
    for k in range(2, upto + 1):
        out[k] = sum(a ** k for a in alpha) + (-1) ** (k + 1) * sum(b ** k for b in beta)
    return out
