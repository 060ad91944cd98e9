"""Partitioned moments and cumulants of operator families in the Fock models.

Exchangeable copies are realized by color blocking: copy ``c`` of base color
``b`` is basis index ``b + (c - 1) * base``.
"""
from __future__ import annotations

import cmath
import dataclasses
import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .algebra import Poly, is_zero
from .errors import DomainError, InvariantViolation
from .fock_sim import (FockModel, NModel, Operator, QModel, VKModel, deformed_factorial,
                       expectation_of_product)
from .partitions import (SetPartition, enumerate_noncrossing, enumerate_partitions,
                         interval_inflation, lattice_join, lattice_leq, mobius,
                         poset_mobius_to_top, refinements, rrc)
from .words import ANNIHILATE, CREATE, GAUGE, PathClass, PowerWord, classify_path, \
    has_nontrivial_lattice_subword, is_lattice

MAX_N = 6
GOOD_MAX_N = 4

MomentTable = dict  # SetPartition -> scalar


def as_operator(x) -> Operator:
    if isinstance(x, Operator):
        return x
    if isinstance(x, str):
        return Operator.parse(x)
    return Operator.word(x)


def base_count(variables: Sequence[Operator]) -> int:
    return max((max(v.colors(), default=1) for v in variables), default=1)


def copy_of(op: Operator, c: int, base: int) -> Operator:
    """Copy ``c`` (1-based) of an operator over base colors ``1..base``."""
    return op.recolor(lambda b: b + (c - 1) * base)


def _prepared(variables, model: FockModel, copies: int):
    ops = [as_operator(v) for v in variables]
    base = base_count(ops)
    if base * copies > model.dim:
        raise DomainError(f"{copies} copies of {base} colors need dimension {base * copies}, "
                          f"the model has {model.dim}")
    return ops, base


def with_copies(model: FockModel, variables, copies: int | None = None) -> FockModel:
    """The same model with enough dimensions for ``copies`` exchangeable copies."""
    ops = [as_operator(v) for v in variables]
    need = base_count(ops) * (copies or len(ops))
    if model.dim >= need:
        return model
    return dataclasses.replace(model, dim=need)


def phi_pi(variables, pi: SetPartition, model: FockModel):
    n = len(variables)
    if pi.n != n:
        raise DomainError("partition size differs from the number of variables")
    if n > MAX_N:
        raise DomainError(f"n = {n} exceeds the cap {MAX_N}")
    ops, base = _prepared(variables, model, n)
    labels = pi.labels()
    realized = [copy_of(op, labels[j], base) for j, op in enumerate(ops)]
    return expectation_of_product(realized, model)


def moment_table(variables, model: FockModel) -> MomentTable:
    return {pi: phi_pi(variables, pi, model) for pi in enumerate_partitions(len(variables))}


def _mobius_sum(table: Mapping, pi: SetPartition, model_zero):
    total = model_zero
    for sigma in refinements(pi):
        if sigma not in table:
            raise DomainError(f"table has no entry for {sigma}")
        val = table[sigma]
        if not is_zero(val):
            total = total + val * mobius(sigma, pi)
    return total


def cumulant(variables, pi: SetPartition, model: FockModel, table: MomentTable | None = None):
    """``K_pi = sum_{sigma <= pi} phi_sigma mu(sigma, pi)``."""
    if table is None:
        table = {s: phi_pi(variables, s, model) for s in refinements(pi)}
    return _mobius_sum(table, pi, model.zero)


def cumulant_table(variables, model: FockModel, table: MomentTable | None = None) -> MomentTable:
    table = table if table is not None else moment_table(variables, model)
    return {pi: _mobius_sum(table, pi, model.zero) for pi in table}


def cumulants_from_moments(table: MomentTable) -> MomentTable:
    zero = next(iter(table.values())) * 0 if table else 0
    return {pi: _mobius_sum(table, pi, zero) for pi in table}


def moments_from_cumulants(K: MomentTable, pi: SetPartition):
    """Zeta summation ``phi_pi = sum_{sigma <= pi} K_sigma``."""
    total = None
    for sigma in refinements(pi):
        if sigma not in K:
            raise DomainError(f"cumulant table has no entry for {sigma}")
        total = K[sigma] if total is None else total + K[sigma]
    return total


# ----------------------------------------------------------------------
# Good's formula


def good_cumulant(variables, pi: SetPartition, model: FockModel) -> complex:
    """Root-of-unity evaluation of ``K_pi``; the model must be numeric."""
    n = len(variables)
    if n > GOOD_MAX_N:
        raise DomainError(f"n = {n} exceeds the Good formula cap {GOOD_MAX_N}")
    if model.symbolic:
        raise DomainError("Good's formula needs a numeric parameter point")
    ops, base = _prepared(variables, model, n)
    mixed = []
    for i, op in enumerate(ops, 1):
        block = pi.block_of(i)
        b = len(block)
        omega = cmath.exp(2j * cmath.pi / b)
        total = Operator()
        for a, k in enumerate(block, 1):
            total = total + copy_of(op, k, base) * (omega ** a)
        mixed.append(total)
    value = complex(expectation_of_product(mixed, model))
    norm = 1
    for block in pi.blocks:
        norm *= len(block)
    return value / norm


# ----------------------------------------------------------------------
# product formula


def product_formula_rhs(groups: Sequence[Sequence], pi: SetPartition, model: FockModel):
    """``sum_{sigma v 0~ = pi~} K_sigma(atoms)`` over the flattened atoms."""
    atoms = [a for g in groups for a in g]
    sizes = [len(g) for g in groups]
    if any(s < 1 for s in sizes):
        raise DomainError("every group needs at least one atom")
    if pi.n != len(groups):
        raise DomainError("partition must live on the groups")
    zero_t = interval_inflation(SetPartition.zero(len(groups)), sizes)
    pi_t = interval_inflation(pi, sizes)
    table = moment_table(atoms, model)
    K = cumulant_table(atoms, model, table)
    total = model.zero
    for sigma, k in K.items():
        if lattice_join(sigma, zero_t) == pi_t:
            total = total + k
    return total


def product_formula_lhs(groups: Sequence[Sequence], pi: SetPartition, model: FockModel):
    products = []
    for g in groups:
        op = Operator.identity()
        for a in g:
            op = op * as_operator(a)
        products.append(op)
    return cumulant(products, pi, model)


# ----------------------------------------------------------------------
# Toeplitz operators


def toeplitz_operator(model: FockModel, alpha: Sequence, color: int = 1) -> Operator:
    """``L* + sum_k (alpha_k / b_k) L^(k-1)`` with ``b_k`` simulated in the model."""
    op = Operator.word(f"a{color}", model.one)
    for k, a in enumerate(alpha, 1):
        a = model.scalar(a)
        if is_zero(a):
            continue
        bk = deformed_factorial(k, model)
        coeff = a.exact_div(bk) if isinstance(a, Poly) else a / bk
        op = op + (Operator.identity(coeff) if k == 1 else
                   Operator.word(PowerWord([(color, k - 1)]), coeff))
    return op


@dataclass
class ToeplitzResult:
    partition: SetPartition
    computed: object
    predicted: object | None

    @property
    def agrees(self) -> bool | None:
        if self.predicted is None:
            return None
        return self.computed == self.predicted


def toeplitz_prediction(model: FockModel, alpha: Sequence, pi: SetPartition):
    sizes = [len(b) for b in pi.blocks]
    if max(sizes) > len(alpha):
        raise DomainError(f"no coefficient for block size {max(sizes)}")
    prod = model.one
    for s in sizes:
        prod = prod * model.scalar(alpha[s - 1])
    if isinstance(model, QModel):
        r = rrc(pi)
        return prod * (model.scalar(model.q_value) ** r if r else model.one)
    if len(sizes) == 1:
        return prod
    # no closed form is claimed for partitioned cumulants outside the q-model
    return None


def toeplitz_cumulant(model: FockModel, alpha: Sequence, n: int | None = None,
                      partition: SetPartition | None = None) -> ToeplitzResult:
    if (n is None) == (partition is None):
        raise DomainError("give exactly one of n and partition")
    pi = partition if partition is not None else SetPartition.one(n)
    if pi.n > 5:
        raise DomainError("Toeplitz cumulants are capped at n = 5")
    T = toeplitz_operator(model, alpha)
    model = with_copies(model, [T], pi.n)
    value = cumulant([T] * pi.n, pi, model)
    return ToeplitzResult(pi, value, toeplitz_prediction(model, alpha, pi))


def toeplitz_cumulants_all(model: FockModel, alpha: Sequence, n: int) -> list[ToeplitzResult]:
    T = toeplitz_operator(model, alpha)
    model = with_copies(model, [T], n)
    K = cumulant_table([T] * n, model)
    return [ToeplitzResult(pi, K[pi], toeplitz_prediction(model, alpha, pi)) for pi in K]


# ----------------------------------------------------------------------
# noncrossing cumulants


def noncrossing_cumulant(variables, model: FockModel):
    """``sum_{pi in NC_n} phi_pi mu_NC(pi, 1)`` with ``mu_NC`` from its own recursion."""
    n = len(variables)
    nc = enumerate_noncrossing(n)
    mu = poset_mobius_to_top(nc, SetPartition.one(n), lattice_leq)
    total = model.zero
    for pi in nc:
        if mu[pi]:
            total = total + phi_pi(variables, pi, model) * mu[pi]
    return total


# ----------------------------------------------------------------------
# vanishing propositions


@dataclass
class VanishingReport:
    model: str
    checked: dict = field(default_factory=dict)       # statement -> count
    violations: list = field(default_factory=list)    # (statement, witness, value)

    @property
    def ok(self) -> bool:
        return not self.violations

    def record(self, statement: str, ok: bool, witness, value=None):
        self.checked[statement] = self.checked.get(statement, 0) + 1
        if not ok:
            self.violations.append((statement, str(witness), str(value)))


def _power_words(total: int, allow_zero: bool = False):
    """Exponent sequences with ``sum |k| == total`` (zero exponents count 1)."""
    steps = [k for k in range(-total, total + 1) if k or allow_zero]

    def rec(remaining):
        if remaining == 0:
            yield ()
            return
        for k in steps:
            cost = abs(k) or 1
            if cost <= remaining:
                for rest in rec(remaining - cost):
                    yield (k,) + rest

    yield from rec(total)


def _factor_ops(ks: Sequence[int], color: int = 1) -> list[Operator]:
    out = []
    for k in ks:
        if k == 0:
            out.append(Operator.identity())
        else:
            out.append(Operator.word(PowerWord([(color, k)])))
    return out


def _lukasiewicz_shape(ks: Sequence[int], pi: SetPartition) -> bool:
    for block in pi.blocks:
        *head, last = block
        if any(ks[j - 1] != -1 for j in head) or ks[last - 1] != len(block) - 1:
            return False
    return True


def _gauge_shape(kinds: Sequence[str], pi: SetPartition) -> bool:
    for block in pi.blocks:
        if len(block) < 2 or kinds[block[0] - 1] != ANNIHILATE or kinds[block[-1] - 1] != CREATE:
            return False
        if any(kinds[j - 1] != GAUGE for j in block[1:-1]):
            return False
    return True


def vanishing_suite(model: FockModel, max_len: int = 6, partitioned_len: int = 4,
                    gauge_len: int | None = None) -> VanishingReport:
    """Exhaustive check of the vanishing statements for one-color power words.

    * reducible lattice words have vanishing cumulants;
    * Lukasiewicz words (exponents in {*, 0, 1, ...}) have ``K_pi = 0`` unless
      each block is ``*...*`` followed by ``L^(b-1)``, and ``K_pi = phi_pi`` then;
    * at q = 0, ``K_n`` of a lattice word is 1 iff no proper factor range is a
      lattice word (and 0 otherwise), also via the noncrossing lattice;
    * in the q-model, cumulants of words in L, L* and gauge operators vanish
      off the annihilator-gauges-creator block shape and equal ``phi_pi`` on it.
    """
    report = VanishingReport(model.tag)
    free = isinstance(model, QModel) and model.q == 0
    for total in range(1, max_len + 1):
        for ks in _power_words(total, allow_zero=True):
            n = len(ks)
            ops = _factor_ops(ks)
            m = with_copies(model, ops, n)
            word = PowerWord([(1, k) for k in ks])
            nonzero = [k for k in ks if k]
            luk = all(k >= -1 for k in ks)
            lattice = bool(nonzero) and 0 not in ks and is_lattice(word)
            need_reducible = lattice and not classify_path(word).irreducible
            need_free = free and lattice
            partitioned = luk and n <= partitioned_len
            if not (need_reducible or luk or need_free):
                continue
            if partitioned:
                table = moment_table(ops, m)
                K = cumulant_table(ops, m, table)
            else:
                one = SetPartition.one(n)
                K = {one: cumulant(ops, one, m)}
                table = None
            top = K[SetPartition.one(n)]
            if need_reducible:
                report.record("reducible", is_zero(top), word, top)
            if luk:
                for pi, k in K.items():
                    if _lukasiewicz_shape(ks, pi):
                        phi = table[pi] if table is not None else phi_pi(ops, pi, m)
                        report.record("lukasiewicz-shape", k == phi, (word, pi), k)
                    else:
                        report.record("lukasiewicz-vanish", is_zero(k), (word, pi), k)
            if need_free:
                expected = 0 if has_nontrivial_lattice_subword(word) else 1
                report.record("free", top == expected, word, top)
                if n <= 5:
                    nc = noncrossing_cumulant(ops, m)
                    report.record("free-noncrossing", nc == top, word, nc)
    if isinstance(model, QModel):
        _gauge_checks(model, report, gauge_len if gauge_len is not None else min(max_len, 5),
                      partitioned_len)
    return report


def _gauge_checks(model: QModel, report: VanishingReport, max_len: int, partitioned_len: int):
    letters = {"a": ANNIHILATE, "c": CREATE, "g": GAUGE}
    for n in range(1, max_len + 1):
        for kinds in itertools.product("acg", repeat=n):
            ops = [Operator.parse(f"{k}1") for k in kinds]
            m = with_copies(model, ops, n)
            table = moment_table(ops, m)
            K = cumulant_table(ops, m, table)
            kk = [letters[k] for k in kinds]
            for pi, k in K.items():
                if n > partitioned_len and pi != SetPartition.one(n):
                    continue
                if _gauge_shape(kk, pi):
                    report.record("gauge-shape", k == table[pi], ("".join(kinds), pi), k)
                else:
                    report.record("gauge-vanish", is_zero(k), ("".join(kinds), pi), k)


def mixed_cumulants_vanish(x, y, model: FockModel, n: int) -> list:
    """All ``K_pi`` of words in X (colors 1..b) and Y (colors b+1..2b) whose
    blocks mix X and Y positions; returns the nonzero witnesses."""
    x, y = as_operator(x), as_operator(y)
    witnesses = []
    for pattern in itertools.product((0, 1), repeat=n):
        if len(set(pattern)) < 2:
            continue
        ops = [x if p == 0 else y for p in pattern]
        m = with_copies(model, ops, n)
        K = cumulant_table(ops, m)
        for pi, k in K.items():
            if any(len({pattern[j - 1] for j in b}) > 1 for b in pi.blocks) and not is_zero(k):
                witnesses.append((pattern, pi, k))
    return witnesses


def check_roundtrip(table: MomentTable) -> bool:
    K = cumulants_from_moments(table)
    for pi, v in table.items():
        if moments_from_cumulants(K, pi) != v:
            raise InvariantViolation(f"zeta/Mobius roundtrip failed at {pi}")
    return True
