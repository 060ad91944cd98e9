import random

import pytest

from fockcumulants.algebra import Poly
from fockcumulants.digraph_poly import (WeightedDigraph, clear_memo, cover_poly,
                                        cycle_cover_poly, cycle_covers, cycle_indicator,
                                        is_isomorphic, iter_cycle_path_covers,
                                        realizability_check, word_digraph)
from fockcumulants.errors import DomainError
from fockcumulants.words import dyck_words, parse_word

from conftest import random_digraph

x = Poly.var("x")
XY = ("x", "y")
y2 = Poly.var("y", XY)
x2 = Poly.var("x", XY)
loop = WeightedDigraph.build(1, [(1, 1)])
k2 = WeightedDigraph.build(2, [(1, 1), (1, 2), (2, 1), (2, 2)])


def test_word_digraph_examples():
    g = word_digraph(parse_word("a1 a1 c1 c1"))
    assert g == k2
    assert word_digraph(parse_word("a1 c1")) == loop
    w = word_digraph(parse_word("a1(1) c1(0)"), weighted=True)
    assert w.weights == (2,) and w.edges == loop.edges
    assert word_digraph(parse_word("a1 a2 c1 c2")).edges == {(0, 1), (1, 0)}
    with pytest.raises(DomainError):
        word_digraph(parse_word("c1 a1"))


def test_cycle_cover_examples():
    assert len(cycle_covers(loop)) == 1
    assert len(cycle_covers(k2)) == 2
    assert cycle_covers(WeightedDigraph.build(2, [(1, 2)])) == []
    for method in ("bruteforce", "cut_fuse"):
        assert cycle_cover_poly(loop, method) == x
        assert cycle_cover_poly(k2, method) == x ** 2 + x
        assert cycle_cover_poly(WeightedDigraph.build(0, []), method) == 1
        assert cycle_cover_poly(WeightedDigraph.build(2, []), method) == 0


def test_cover_poly_examples():
    edgeless = WeightedDigraph.build(2, [])
    for method in ("bruteforce", "cut_fuse"):
        assert cover_poly(edgeless, "geometric", method) == y2 ** 2
        assert cover_poly(edgeless, "factorial", method) == y2 * (y2 - 1)
        assert cover_poly(loop, "geometric", method) == x2 + y2


def test_indicator_examples():
    assert cycle_indicator(loop) == Poly.var("x1")
    heavy = WeightedDigraph.build(1, [(1, 1)], [2])
    assert cycle_indicator(heavy) == Poly.var("x2", ("x1", "x2"))
    names = ("x1", "x2")
    expected = Poly.var("x1", names) ** 2 + Poly.var("x2", names)
    assert cycle_indicator(k2, "bruteforce") == expected == cycle_indicator(k2, "cut_fuse")


def test_indicator_with_paths():
    p = cycle_indicator(loop, paths=True)
    assert p == Poly.var("x1", p.vars) + Poly.var("y1", p.vars)
    assert cycle_indicator(loop, "bruteforce", paths=True) == p


def test_path_covers_use_each_vertex_once():
    g = WeightedDigraph.build(3, [(1, 2), (2, 3), (3, 1)])
    for cycles, paths in iter_cycle_path_covers(g):
        used = [v for part in cycles + paths for v in part]
        assert sorted(used) == [0, 1, 2]


def test_caps():
    big = WeightedDigraph.build(11, [(i, i) for i in range(1, 12)])
    with pytest.raises(DomainError):
        cycle_cover_poly(big, "bruteforce")
    with pytest.raises(DomainError):
        cycle_covers(big)
    assert cycle_cover_poly(big, "cut_fuse") == x ** 11
    with pytest.raises(DomainError):
        cycle_cover_poly(k2, "magic")


def test_graph_validation_and_io():
    with pytest.raises(DomainError):
        WeightedDigraph.build(1, [(1, 2)])
    with pytest.raises(DomainError):
        WeightedDigraph.build(1, [], [0])
    data = {"weights": [1, 1], "edges": [[1, 1], [1, 2], [2, 1], [2, 2]]}
    assert WeightedDigraph.from_json(data) == k2
    assert k2.to_json() == data
    assert WeightedDigraph.from_text("1->1 1->2 2->1 2->2\nw: 1 1") == k2
    assert WeightedDigraph.from_text(k2.to_text()) == k2


def test_realizability_examples():
    bad = WeightedDigraph.build(5, [(1, 4), (2, 5), (3, 4), (3, 5)])
    assert not realizability_check(bad)
    assert realizability_check(WeightedDigraph.build(3, []))
    for length in (2, 4, 6, 8):
        for w in dyck_words(length, (1, 2)):
            assert realizability_check(word_digraph(w))


def test_isomorphism():
    g = WeightedDigraph.build(3, [(1, 2), (2, 3)])
    h = WeightedDigraph.build(3, [(3, 1), (2, 3)])
    assert is_isomorphic(g, h)
    assert not is_isomorphic(g, WeightedDigraph.build(3, [(1, 2), (2, 1)]))
    assert not is_isomorphic(loop, WeightedDigraph.build(1, [(1, 1)], [2]))


def test_random_oracle_equivalence():
    rng = random.Random(3)
    for _ in range(200):
        g = random_digraph(rng, max_vertices=8)
        assert cycle_cover_poly(g, "bruteforce") == cycle_cover_poly(g, "cut_fuse")
    for _ in range(200):
        g = random_digraph(rng, max_vertices=7, max_weight=3)
        assert cycle_indicator(g, "bruteforce") == cycle_indicator(g, "cut_fuse")


def test_indicator_specialises_to_cover_poly():
    rng = random.Random(4)
    for _ in range(80):
        g = random_digraph(rng, max_vertices=7, max_weight=3)
        p = cycle_indicator(g)
        # every cycle contributes one factor x whatever its weight
        collapsed = Poly(("x",))
        for exp, c in p.terms.items():
            collapsed = collapsed + x ** sum(exp) * c
        assert collapsed == cycle_cover_poly(g)


def test_geometric_at_y_zero_is_cycle_poly():
    rng = random.Random(5)
    for _ in range(60):
        g = random_digraph(rng, max_vertices=6)
        assert cover_poly(g, "geometric").subs({"y": 0}) == cycle_cover_poly(g).with_vars(("x",))


def test_cut_fuse_is_order_independent():
    rng = random.Random(6)
    for _ in range(50):
        g = random_digraph(rng, max_vertices=6, max_weight=2)
        results = set()
        for trial in range(2):
            order_rng = random.Random(trial)

            def pick(h, r=order_rng):
                return r.choice(sorted(h.edges))

            results.add(cycle_indicator(g, edge_order=pick))
            assert cycle_cover_poly(g, edge_order=pick) == cycle_cover_poly(g, "bruteforce")
        assert len(results) == 1
        assert results.pop() == cycle_indicator(g, "bruteforce")


def test_memo_reset_is_harmless():
    before = cycle_cover_poly(k2)
    clear_memo()
    assert cycle_cover_poly(k2) == before
