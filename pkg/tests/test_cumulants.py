import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from fockcumulants.algebra import Poly
from fockcumulants.cumulants import (check_roundtrip, cumulant, cumulant_table,
                                     cumulants_from_moments, good_cumulant,
                                     mixed_cumulants_vanish, moment_table, moments_from_cumulants,
                                     noncrossing_cumulant, phi_pi, product_formula_lhs,
                                     product_formula_rhs, toeplitz_cumulant,
                                     toeplitz_cumulants_all, vanishing_suite, with_copies)
from fockcumulants.errors import DomainError
from fockcumulants.fock_sim import NModel, Operator, QModel, deformed_factorial, make_model
from fockcumulants.partitions import SetPartition, enumerate_partitions, rrc

q = Poly.var("q")
P = SetPartition.parse
HALF = Fraction(1, 2)
X = "a1+c1"


def test_phi_pi_examples():
    m = QModel()
    assert phi_pi([X, X], SetPartition.one(2), m) == 1
    assert phi_pi([X, X], SetPartition.zero(2), m) == 0
    assert phi_pi(["a1 c1"], SetPartition.one(1), m) == 1
    with pytest.raises(DomainError):
        phi_pi([X] * 3, SetPartition.one(2), m)
    with pytest.raises(DomainError):
        phi_pi([X] * 3, SetPartition.zero(3), QModel(dim=2))
    with pytest.raises(DomainError):
        phi_pi([X] * 7, SetPartition.one(7), QModel(dim=7))


def test_cumulant_examples():
    m = QModel()
    assert cumulant(["a1 c1"], SetPartition.one(1), m) == 1
    assert cumulant([X, X], SetPartition.one(2), m) == 1
    assert cumulant(["a1", "a1", "c1^2"], SetPartition.one(3), with_copies(m, ["a1"], 3)) == 1 + q


def test_moments_from_cumulants_examples():
    m = QModel()
    table = moment_table([X, X], m)
    K = cumulant_table([X, X], m, table)
    one, zero = SetPartition.one(2), SetPartition.zero(2)
    assert moments_from_cumulants(K, one) == K[one] + K[zero]
    assert moments_from_cumulants({SetPartition.one(1): 5}, SetPartition.one(1)) == 5
    with pytest.raises(DomainError):
        moments_from_cumulants({one: 1}, one)


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_roundtrip_random_tables(n):
    rng = random.Random(n)
    table = {pi: Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for pi in enumerate_partitions(n)}
    assert check_roundtrip(table)
    K = cumulants_from_moments(table)
    assert all(moments_from_cumulants(K, pi) == v for pi, v in table.items())


@given(st.lists(st.sampled_from(["a1", "c1", "a1+c1", "a1 c1", "c1^2"]), min_size=1, max_size=3))
def test_roundtrip_on_model_tables(names):
    m = with_copies(QModel(), names)
    table = moment_table(names, m)
    assert check_roundtrip(table)


GOOD_VARS = ["a1+c1", "a1+c1+g1+1/2"]


@pytest.mark.parametrize("var", GOOD_VARS)
@pytest.mark.parametrize("n", [1, 2, 3])
def test_good_formula_matches_exact(var, n):
    m = with_copies(QModel(q=HALF), [var], n)
    for pi in enumerate_partitions(n):
        exact = cumulant([var] * n, pi, m)
        assert abs(good_cumulant([var] * n, pi, m) - complex(exact)) < 1e-9


def test_good_formula_examples():
    m = with_copies(QModel(q=HALF), [X], 3)
    assert abs(good_cumulant(["a1 c1"], SetPartition.one(1), m) - 1) < 1e-9
    assert abs(good_cumulant([X, X], SetPartition.one(2), m) - 1) < 1e-9
    assert abs(good_cumulant([X] * 3, SetPartition.one(3), m)) < 1e-9
    with pytest.raises(DomainError):
        good_cumulant([X, X], SetPartition.one(2), QModel())
    with pytest.raises(DomainError):
        good_cumulant([X] * 5, SetPartition.one(5), QModel(q=HALF, dim=5))


def test_product_formula_examples():
    m = QModel()
    one = SetPartition.one(1)
    assert product_formula_lhs([["a1", "c1"]], one, m) == 1
    assert product_formula_rhs([["a1", "c1"]], one, with_copies(m, ["a1"], 2)) == 1
    free = with_copies(make_model("free"), ["a1"], 4)
    groups = [["a1", "c1"], ["a1", "c1"]]
    two = SetPartition.one(2)
    assert product_formula_lhs(groups, two, free) == product_formula_rhs(groups, two, free)
    plain = [[X], [X]]
    assert product_formula_rhs(plain, two, free) == cumulant([X, X], two, free)
    with pytest.raises(DomainError):
        product_formula_rhs([[], ["a1"]], two, free)


ATOMS = ["a1", "c1", "a1+c1", "g1", "c1^2"]


@pytest.mark.parametrize("sizes", [(1, 1), (2, 1), (1, 2), (2, 2), (1, 1, 1), (3, 1), (1, 1, 2)])
def test_product_formula_all_partitions(sizes):
    rng = random.Random(sum(sizes) * 7 + len(sizes))
    m = with_copies(QModel(), ["a1"], sum(sizes))
    groups = [[rng.choice(ATOMS) for _ in range(s)] for s in sizes]
    for pi in enumerate_partitions(len(sizes)):
        assert product_formula_lhs(groups, pi, m) == product_formula_rhs(groups, pi, m)


def test_toeplitz_examples():
    m = QModel()
    assert toeplitz_cumulant(m, [Fraction(3)], n=1).computed == 3
    r = toeplitz_cumulant(QModel(q=HALF), [0, 0, 1], n=3)
    assert r.computed == 1 and r.agrees
    # with symbolic q a constant alpha_3 is not a polynomial multiple of b_3
    with pytest.raises(DomainError):
        toeplitz_cumulant(m, [0, 0, 1], n=3)
    r = toeplitz_cumulant(m, [0, 1], partition=P("13|24"))
    assert r.computed == q and r.predicted == q
    with pytest.raises(DomainError):
        toeplitz_cumulant(m, [1], n=2)
    with pytest.raises(DomainError):
        toeplitz_cumulant(m, [1], n=1, partition=SetPartition.one(1))


@pytest.mark.parametrize("model", [make_model("free"), QModel(q=HALF), NModel(N=3)],
                         ids=["free", "q=1/2", "N=3"])
def test_toeplitz_top_cumulants(model):
    alpha = [Fraction(1, k + 1) for k in range(1, 5)]
    for n in range(1, 5):
        r = toeplitz_cumulant(model, alpha, n=n)
        assert r.computed == r.predicted == model.scalar(alpha[n - 1])


@pytest.mark.parametrize("cls", [QModel, NModel])
def test_toeplitz_symbolic(cls):
    names = ("a1", "a2", "a3", "a4")
    model = cls(extra_vars=names)
    alpha = [Poly.var(a, model.vars) * deformed_factorial(k, model) for k, a in enumerate(names, 1)]
    for n in range(1, 5):
        r = toeplitz_cumulant(model, alpha, n=n)
        assert r.computed == r.predicted == alpha[n - 1]


def test_toeplitz_partitioned_q_model():
    alpha = [Fraction(1, 2), Fraction(1, 3), 1, Fraction(2, 5)]
    for r in toeplitz_cumulants_all(QModel(q=Fraction(1, 3)), alpha, 4):
        assert r.agrees, r.partition
    symbolic = toeplitz_cumulants_all(QModel(), [0, 1, 0, 0], 4)
    assert all(r.agrees for r in symbolic)
    assert {r.computed for r in symbolic if rrc(r.partition)} == {q}


def test_vanishing_examples():
    m = with_copies(QModel(), ["a1"], 4)
    # a1 c1 a1 c1 split as two reducible factors
    assert cumulant(["a1 c1", "a1 c1"], SetPartition.one(2), m) == 0
    assert cumulant(["a1", "c1", "c1"], SetPartition.one(3), m) == 0
    free = with_copies(make_model("free"), ["a1"], 4)
    assert cumulant(["a1", "a1", "c1", "c1"], SetPartition.one(4), free) == 0


@pytest.mark.parametrize("model", [make_model("free"), QModel(), NModel()], ids=["free", "q", "N"])
def test_vanishing_suite_small(model):
    report = vanishing_suite(model, max_len=4)
    assert report.ok, report.violations
    assert report.checked


def test_free_noncrossing_cumulant():
    free = with_copies(make_model("free"), ["a1"], 4)
    for ops in (["a1", "c1"], ["a1", "a1", "c1^2"], ["a1", "c1", "a1", "c1"]):
        assert noncrossing_cumulant(ops, free) == cumulant(ops, SetPartition.one(len(ops)), free)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_mixed_cumulants_vanish(n):
    pairs = [("a1+c1", "a2+c2"), ("a1 c1", "a2+c2 a2"), ("a1 a1+c1", "c2 c2")]
    for x, y in pairs:
        for model in (QModel(), NModel()):
            assert mixed_cumulants_vanish(x, y, model, n) == []
    assert mixed_cumulants_vanish("a1 c1", "a2+g2", QModel(), n) == []


def test_operator_inputs_are_accepted():
    m = QModel()
    op = Operator.parse(X)
    assert cumulant([op, X], SetPartition.one(2), m) == 1
