import itertools
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from fockcumulants.cumulants import cumulant, toeplitz_operator, with_copies
from fockcumulants.errors import DomainError
from fockcumulants.fock_sim import QModel
from fockcumulants.partitions import (Permutation, SetPartition, connected_components,
                                      crossings_nc, cycle_structure, enumerate_noncrossing,
                                      enumerate_pair_partitions, enumerate_partitions,
                                      interval_inflation, kernel, lattice_join, lattice_leq,
                                      lattice_meet, mobius, nc_hat, rc, refinements, rrc,
                                      uncross_phi)

P = SetPartition.parse


def test_enumeration_counts():
    assert enumerate_partitions(1) == [SetPartition.one(1)]
    assert [len(enumerate_partitions(n)) for n in range(1, 8)] == [1, 2, 5, 15, 52, 203, 877]
    with pytest.raises(DomainError):
        enumerate_partitions(0)
    with pytest.raises(DomainError):
        enumerate_partitions(13)


def test_enumeration_canonical_and_unique():
    parts = enumerate_partitions(5)
    assert len(set(parts)) == len(parts)
    for pi in parts:
        assert list(pi.blocks) == sorted(pi.blocks, key=min)
        assert all(list(b) == sorted(b) for b in pi.blocks)


def test_parse_and_json():
    assert P("13|24").blocks == ((1, 3), (2, 4))
    assert P("[[1,3],[2,4]]") == P("13|24")
    assert P("1,10|2,3,4,5,6,7,8,9").n == 10
    assert P("13|24").to_json() == [[1, 3], [2, 4]]
    assert str(P("13|24")) == "13|24"
    with pytest.raises(DomainError):
        P("13||24")
    with pytest.raises(DomainError):
        P("12|23")


def test_lattice_examples():
    assert lattice_leq(P("1|2"), P("12"))
    assert lattice_join(P("12|3"), P("1|23")) == P("123")
    assert lattice_meet(P("123"), P("12|3")) == P("12|3")
    with pytest.raises(DomainError):
        lattice_join(P("12"), P("123"))


def test_mobius_examples():
    assert mobius(P("12|3"), P("12|3")) == 1
    assert mobius(SetPartition.zero(2), SetPartition.one(2)) == -1
    assert mobius(SetPartition.zero(3), SetPartition.one(3)) == 2
    with pytest.raises(DomainError):
        mobius(P("12"), P("1|2"))


@pytest.mark.parametrize("n", range(1, 6))
def test_mobius_defining_identity(n):
    for pi in enumerate_partitions(n):
        total = sum(mobius(sigma, pi) for sigma in refinements(pi))
        assert total == (1 if pi == SetPartition.zero(n) else 0)
        # recursion from the other side: sum over the interval [sigma, pi]
        for sigma in refinements(pi):
            s = sum(mobius(tau, pi) for tau in refinements(pi) if lattice_leq(sigma, tau))
            assert s == (1 if sigma == pi else 0)


@pytest.mark.parametrize("n", range(1, 6))
def test_lattice_laws(n):
    parts = enumerate_partitions(n)
    zero, one = SetPartition.zero(n), SetPartition.one(n)
    for a in parts:
        assert lattice_leq(zero, a) and lattice_leq(a, one)
        assert lattice_join(a, a) == a and lattice_meet(a, a) == a
    for a, b in itertools.product(parts[:20], parts):
        assert lattice_join(a, lattice_meet(a, b)) == a
        assert lattice_meet(a, lattice_join(a, b)) == a
        assert lattice_leq(a, b) == (lattice_meet(a, b) == a)


def test_pair_partitions():
    assert enumerate_pair_partitions(2) == [P("12")]
    assert len(enumerate_pair_partitions(4)) == 3
    assert len(enumerate_pair_partitions(6)) == 15
    assert len(enumerate_pair_partitions(10)) == 945
    assert enumerate_pair_partitions(5) == []


def test_crossings():
    assert crossings_nc(P("12|34")) == 0
    assert crossings_nc(P("13|24")) == 1
    assert crossings_nc(P("14|25|36")) == 3


def brute_rrc(pi: SetPartition) -> int:
    """Count (i < i' < j < j') with i, j in B, i', j' in B', j = max B, j' = max B'."""
    count = 0
    for B, B2 in itertools.permutations(pi.blocks, 2):
        j, j2 = max(B), max(B2)
        count += sum(1 for i in B for i2 in B2 if i < i2 < j < j2)
    return count


def test_rrc_examples():
    assert rrc(P("12|34")) == 0
    assert rrc(P("13|24")) == 1
    # the set definition counts (1,2), (1,4) and (3,4) paired with (5,6)
    assert rrc(P("135|246")) == 3 == brute_rrc(P("135|246"))


def test_rrc_value_confirmed_by_simulation():
    # K_pi of the q-Toeplitz operator with only alpha_3 = 1 is q^rrc(pi)
    model = QModel(q=Fraction(1, 2))
    T = toeplitz_operator(model, [0, 0, 1])
    value = cumulant([T] * 6, P("135|246"), with_copies(model, [T], 6))
    assert value == Fraction(1, 2) ** 3


@pytest.mark.parametrize("n", range(1, 8))
def test_rrc_matches_set_definition(n):
    for pi in enumerate_partitions(n):
        assert rrc(pi) == brute_rrc(pi)


def test_rc_examples():
    assert uncross_phi(P("12|34")) == (P("12|34"), 0)
    assert rc(P("12|34")) == 0
    assert rc(P("13|24")) == 1
    assert rc(P("14|23")) == 0


@pytest.mark.parametrize("n", range(1, 9))
def test_noncrossing_statistics_vanish(n):
    for pi in enumerate_noncrossing(n):
        assert rc(pi) == 0 and rrc(pi) == 0


def test_rc_terminates_on_interval_partitions():
    for pi in enumerate_partitions(6):
        sigma, steps = pi, 0
        while not sigma.is_interval_partition():
            sigma, _ = uncross_phi(sigma)
            steps += 1
            assert steps <= 6


def test_nc_hat_examples():
    assert nc_hat(P("12|34")) == P("12|34")
    assert nc_hat(P("13|24")) == P("14|23")
    assert nc_hat(P("14|25|36")) == P("16|25|34")


@pytest.mark.parametrize("n", [2, 4, 6, 8, 10])
def test_nc_hat_and_cycles(n):
    for pi in enumerate_pair_partitions(n):
        hat = nc_hat(pi)
        assert hat.is_noncrossing()
        assert {l for l, _ in hat.pairs} == {l for l, _ in pi.pairs}
        c, _, sigma = cycle_structure(pi)
        assert (c == len(pi)) == pi.is_noncrossing()
        assert (sigma == Permutation.identity(len(pi))) == pi.is_noncrossing()


@pytest.mark.parametrize("n", [2, 4, 6, 8])
def test_rrc_equals_crossings_on_pairings(n):
    for pi in enumerate_pair_partitions(n):
        assert rrc(pi) == crossings_nc(pi)


def test_cycle_structure_examples():
    c, cm, sigma = cycle_structure(P("12|34"))
    assert c == 2 and cm == {1: 2}
    c, cm, sigma = cycle_structure(P("13|24"))
    assert c == 1 and cm == {2: 1}
    c, cm, sigma = cycle_structure(P("14|25|36"))
    assert c == 2 and cm == {2: 1, 1: 1}
    assert sigma.cycles() == [(1, 3), (2,)]


def test_connected_components():
    assert len(connected_components(P("12|34"))) == 2
    assert len(connected_components(P("13|24"))) == 1
    assert len(connected_components(P("16|23|45"))) == 3


def test_kernel_and_inflation():
    assert kernel([5, 7, 5]) == P("13|2")
    assert interval_inflation(P("12"), [2, 1]) == P("123")
    assert interval_inflation(P("1|2"), [2, 2]) == P("12|34")
    assert interval_inflation(P("13|2"), [1, 2, 1]) == P("14|23")


def test_permutations():
    s = Permutation((2, 3, 1))
    assert s.inversions() == 2
    assert s.compose(s.inverse()) == Permutation.identity(3)
    assert s.cycle_type() == {3: 1}
    assert Permutation.transposition(3, 1, 3).images == (3, 2, 1)
    with pytest.raises(DomainError):
        Permutation((1, 1))


labels = st.lists(st.integers(0, 3), min_size=1, max_size=7)


@given(labels, labels)
def test_kernel_join_meet_property(h1, h2):
    n = min(len(h1), len(h2))
    a, b = kernel(h1[:n]), kernel(h2[:n])
    meet = lattice_meet(a, b)
    assert meet == kernel(list(zip(h1[:n], h2[:n])))
    join = lattice_join(a, b)
    assert lattice_leq(a, join) and lattice_leq(b, join) and lattice_leq(meet, a)
