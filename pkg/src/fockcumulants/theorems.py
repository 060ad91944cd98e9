"""Headline identities, each checked by two independent computations.

Operator simulation, the pair-partition expansion and graph polynomials share
nothing beyond parsing and scalar arithmetic.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import asdict, dataclass
from fractions import Fraction
from typing import Callable, Sequence

from .algebra import Poly, power_sums, q_factorial
from .cumulants import (cumulant, good_cumulant, product_formula_lhs, product_formula_rhs,
                        toeplitz_cumulant, toeplitz_cumulants_all, vanishing_suite, with_copies)
from .digraph_poly import (WeightedDigraph, cycle_cover_poly, cycle_indicator, is_isomorphic,
                           word_digraph)
from .errors import DomainError
from .fock_sim import (NModel, Operator, QModel, VKModel, deformed_factorial,
                       pair_partition_expectation, t_N)
from .partitions import SetPartition, enumerate_partitions, kernel, rc
from .words import (ANNIHILATE, CREATE, GAUGE, FlatWord, OpToken, classify_path, dyck_words,
                    gauge_matrix, parse_word, to_flat)


@dataclass
class TheoremReport:
    theorem: str
    instance: str
    lhs: object
    rhs: object
    equal: bool | None
    note: str = ""

    def to_json(self) -> dict:
        d = asdict(self)
        d["lhs"] = str(self.lhs)
        d["rhs"] = str(self.rhs)
        return d


def _word(w) -> FlatWord:
    return to_flat(parse_word(w)) if isinstance(w, str) else to_flat(w)


def _dyck(w: FlatWord) -> int:
    if classify_path(w).kind != "dyck":
        raise DomainError(f"{w} is not a multidimensional Dyck word")
    return len(w) // 2


def _t_expansion(c: Poly, n: int) -> Poly:
    """``t^n C(1/t)`` for a polynomial ``C`` in x of degree at most n."""
    t = Poly.var("t")
    out = Poly(("t",))
    for k in range(n + 1):
        ck = c.coeff((k,))
        if ck:
            out = out + t ** (n - k) * ck
    return out


def thm_cycle_cover(w, N: int | None = None, method: str = "cut_fuse") -> TheoremReport:
    """``rho(W) = t^n C_c(Gamma_W; 1/t)``; for integer N the N-model and the
    uniform Vershik-Kerov simulation are compared as well."""
    w = _word(w)
    n = _dyck(w)
    if len(w) > 12 or len({t.color for t in w}) > 3:
        raise DomainError("cycle cover check is limited to length 12 and 3 colors")
    lhs = pair_partition_expectation(w, t_N())
    rhs = _t_expansion(cycle_cover_poly(word_digraph(w), method=method), n)
    equal = lhs == rhs
    note = ""
    if N is not None:
        at = {"t": Fraction(1, N)}
        dim = max(t.color for t in w)
        sims = [NModel(N=N, dim=dim).vacuum_expectation(w)]
        if N <= 3:
            sims.append(VKModel.uniform(N, dim=dim).vacuum_expectation(w))
        value = rhs.eval(at)
        equal = equal and all(s == value for s in sims)
        note = f"N={N}: " + ", ".join(str(s) for s in sims)
    return TheoremReport("cycle_cover", str(w), lhs, rhs, equal, note)


def indicator_value(g: WeightedDigraph, alpha: Sequence, beta: Sequence = ()):
    p = cycle_indicator(g)
    xs = power_sums(alpha, beta, upto=max(g.total_weight, 1))
    return p.eval({f"x{k}": xs[k] for k in range(1, len(p.vars) + 1)})


def thm_cycle_indicator(w, alpha: Sequence, beta: Sequence = ()) -> TheoremReport:
    """Vershik-Kerov simulation of a weighted Dyck word versus ``I_c(Gamma_w; x)``."""
    w = _word(w)
    _dyck(w)
    if len(w) > 10 or any(t.weight > 2 for t in w):
        raise DomainError("indicator check is limited to length 10 and weights <= 2")
    if beta:
        raise DomainError("the operator side needs beta = 0")
    rhs = indicator_value(word_digraph(w, weighted=True), alpha)
    model = VKModel(alpha=tuple(alpha), dim=max(t.color for t in w))
    lhs = model.vacuum_expectation(w)
    return TheoremReport("cycle_indicator", str(w), lhs, rhs, lhs == rhs)


def _algebra_of_token(t: OpToken, algebra_of: Callable[[int], int]) -> int:
    if t.kind != GAUGE:
        return algebra_of(t.color)
    labels = {algebra_of(r) for (r, c), _ in t.matrix} | {algebra_of(c) for (r, c), _ in t.matrix}
    if len(labels) != 1:
        raise DomainError("a gauge matrix must act inside one algebra")
    return labels.pop()


def admissible_blocks(w: FlatWord, pi: SetPartition) -> bool:
    for block in pi.blocks:
        kinds = [w[j - 1].kind for j in block]
        if len(kinds) < 2 or kinds[0] != ANNIHILATE or kinds[-1] != CREATE:
            return False
        if any(k != GAUGE for k in kinds[1:-1]):
            return False
    return True


def thm_q_factorization(w, algebra_of: Callable[[int], int] | None = None,
                        q=None, dim: int | None = None) -> TheoremReport:
    """``rho(X_1...X_n) = q^rc(pi) prod_B rho(X_B)`` with pi the algebra kernel."""
    w = _word(w)
    algebra_of = algebra_of or (lambda c: c)
    labels = [_algebra_of_token(t, algebra_of) for t in w]
    pi = kernel(labels)
    if not admissible_blocks(w, pi):
        return TheoremReport("q_factorization", str(w), None, None, None,
                             "skipped: a block is not annihilator-gauges-creator")
    colors = [t.color for t in w] + [x for t in w if t.matrix for (r, c), _ in t.matrix for x in (r, c)]
    model = QModel(q=q, dim=dim or max(colors))
    lhs = model.vacuum_expectation(w)
    qv = model.scalar(model.q_value)
    rhs = qv ** rc(pi)
    for block in pi.blocks:
        rhs = rhs * model.vacuum_expectation(FlatWord(w[j - 1] for j in block))
    return TheoremReport("q_factorization", f"{w} pi={pi}", lhs, rhs, lhs == rhs)


def canonical_form(g: WeightedDigraph, cap: int = 8) -> tuple:
    """Lexicographically least relabelling; brute force over vertex orders."""
    if g.n_vertices > cap:
        raise DomainError(f"canonical form capped at {cap} vertices")
    best = None
    for perm in itertools.permutations(range(g.n_vertices)):
        weights = tuple(g.weights[perm.index(i)] for i in range(g.n_vertices))
        edges = tuple(sorted((perm[a], perm[b]) for a, b in g.edges))
        key = (weights, edges)
        if best is None or key < best:
            best = key
    return best


def thm_digraph_state_dependence(w1, w2, model) -> TheoremReport:
    """Isomorphic (weighted) digraphs force equal expectations."""
    w1, w2 = _word(w1), _word(w2)
    weighted = isinstance(model, VKModel)
    g1, g2 = word_digraph(w1, weighted), word_digraph(w2, weighted)
    iso = is_isomorphic(g1, g2)
    lhs = model.vacuum_expectation(w1)
    rhs = model.vacuum_expectation(w2)
    if not iso:
        return TheoremReport("digraph_state", f"{w1} | {w2}", lhs, rhs, True,
                             "digraphs not isomorphic: no claim")
    return TheoremReport("digraph_state", f"{w1} | {w2}", lhs, rhs, lhs == rhs, "isomorphic")


def thm_q_factorial(n: int) -> TheoremReport:
    model = QModel()
    w = parse_word(" ".join(["a1"] * (n - 1) + ["c1"] * (n - 1)))
    lhs = model.vacuum_expectation(w)
    rhs = q_factorial(n - 1, Poly.var("q"))
    return TheoremReport("q_factorial", str(w), lhs, rhs, lhs == rhs)


def thm_deformed_factorial(n: int) -> TheoremReport:
    model = NModel()
    lhs = deformed_factorial(n, model)
    t = Poly.var("t")
    rhs = Poly.const(1, ("t",))
    for k in range(1, n - 1):
        rhs = rhs * (1 + k * t)
    return TheoremReport("deformed_factorial", f"b_{n}", lhs, rhs, lhs == rhs)


# ----------------------------------------------------------------------
# instance generators


def random_gauge(rng: random.Random, colors: Sequence[int]) -> tuple:
    entries = {}
    for r in colors:
        for c in colors:
            entries[(r, c)] = Fraction(rng.randint(-3, 3), rng.randint(1, 3))
    if not any(entries.values()):
        entries[(colors[0], colors[0])] = Fraction(1)
    return gauge_matrix(entries)


def factorization_instances(max_blocks: int = 3, max_size: int = 3, seed: int = 0,
                            max_len: int | None = None):
    """Admissible words: block b lives on colors (2b-1, 2b), starts with an
    annihilator, holds random gauges and ends with a creator."""
    rng = random.Random(seed)
    for p in range(1, max_blocks + 1):
        for n in range(2 * p, max_size * p + 1):
            if max_len is not None and n > max_len:
                continue
            for pi in enumerate_partitions(n):
                if len(pi.blocks) != p or any(not 2 <= len(b) <= max_size for b in pi.blocks):
                    continue
                tokens: list = [None] * n
                for b, block in enumerate(pi.blocks, 1):
                    cols = (2 * b - 1, 2 * b)
                    tokens[block[0] - 1] = OpToken(ANNIHILATE, rng.choice(cols))
                    tokens[block[-1] - 1] = OpToken(CREATE, rng.choice(cols))
                    for j in block[1:-1]:
                        tokens[j - 1] = OpToken(GAUGE, cols[0], 0, b, random_gauge(rng, cols))
                yield FlatWord(tokens), (lambda c: (c + 1) // 2)


def weighted_dyck_words(length: int, colors=(1,), weights=(0, 1, 2)) -> list[FlatWord]:
    return dyck_words(length, colors, weights)


def verify_all(max_len: int = 8, seed: int = 0, N_values=(2, 3)) -> list[TheoremReport]:
    reports: list[TheoremReport] = []
    for n in range(2, min(max_len // 2 + 1, 6) + 1):
        reports.append(thm_q_factorial(n))
    for n in range(1, min(max_len // 2 + 1, 6) + 1):
        reports.append(thm_deformed_factorial(n))
    for L in range(2, min(max_len, 10) + 1, 2):
        for w in dyck_words(L, (1, 2)):
            reports.append(thm_cycle_cover(w, N=2 if L <= 6 else None))
    for L in range(2, min(max_len, 6) + 1, 2):
        for w in dyck_words(L, (1,), (0, 1, 2)):
            for N in N_values:
                reports.append(thm_cycle_indicator(w, [Fraction(1, N)] * N))
    for w, alg in factorization_instances(3, 3, seed=seed, max_len=max_len):
        reports.append(thm_q_factorization(w, alg))
    classes: dict = {}
    for L in range(2, min(max_len, 8) + 1, 2):
        for w in dyck_words(L, (1, 2)):
            classes.setdefault(canonical_form(word_digraph(w)), []).append(w)
    model = NModel()
    for ws in classes.values():
        for other in ws[1:]:
            reports.append(thm_digraph_state_dependence(ws[0], other, model))
    return reports


# ----------------------------------------------------------------------
# cumulant-side verification drivers


def _symbolic_alpha(model, n: int) -> list:
    """``alpha_k = a_k * b_k`` so that the Toeplitz coefficients stay polynomial."""
    return [Poly.var(f"a{k}", model.vars) * deformed_factorial(k, model) for k in range(1, n + 1)]


def verify_toeplitz(n: int = 4) -> list[TheoremReport]:
    names = tuple(f"a{k}" for k in range(1, n + 1))
    reports = []
    free_alpha = [Fraction(1, k + 1) for k in range(1, n + 1)]
    for k in range(1, n + 1):
        r = toeplitz_cumulant(QModel(q=0), free_alpha, n=k)
        reports.append(TheoremReport("toeplitz", f"free K_{k}", r.computed, r.predicted, r.agrees))
    qs = QModel(extra_vars=names)
    for r in toeplitz_cumulants_all(qs, _symbolic_alpha(qs, n), n):
        reports.append(TheoremReport("toeplitz", f"q K_{r.partition}", r.computed, r.predicted,
                                     r.agrees))
    ns = NModel(extra_vars=names)
    alpha = _symbolic_alpha(ns, n)
    for k in range(1, n + 1):
        r = toeplitz_cumulant(ns, alpha, n=k)
        reports.append(TheoremReport("toeplitz", f"N K_{k}", r.computed, r.predicted, r.agrees))
    return reports


def verify_vanishing(max_len: int = 6, models=None) -> list[TheoremReport]:
    models = models or [QModel(), QModel(q=0), NModel()]
    reports = []
    for model in models:
        rep = vanishing_suite(model, max_len=max_len)
        for statement, count in sorted(rep.checked.items()):
            bad = [v for v in rep.violations if v[0] == statement]
            reports.append(TheoremReport("vanishing", f"{model.tag}: {statement}", count - len(bad),
                                         count, not bad, "; ".join(v[1] for v in bad[:3])))
    return reports


ATOMS = ("a1", "c1", "a1+c1", "a1 c1", "c1 a1+1/2")


def groupings(n_atoms: int):
    """Compositions of ``n_atoms`` consecutive atoms into groups."""
    for cuts in itertools.product((False, True), repeat=n_atoms - 1):
        sizes, size = [], 1
        for cut in cuts:
            if cut:
                sizes.append(size)
                size = 1
            else:
                size += 1
        sizes.append(size)
        yield sizes


def verify_product_formula(max_atoms: int = 4, seed: int = 0, model=None) -> list[TheoremReport]:
    model = model or QModel()
    rng = random.Random(seed)
    reports = []
    for m in range(1, max_atoms + 1):
        for sizes in groupings(m):
            atoms = [Operator.parse(rng.choice(ATOMS)) for _ in range(m)]
            groups, pos = [], 0
            for s in sizes:
                groups.append(atoms[pos:pos + s])
                pos += s
            for pi in enumerate_partitions(len(groups)):
                lhs = product_formula_lhs(groups, pi, model)
                rhs = product_formula_rhs(groups, pi, model)
                reports.append(TheoremReport("product_formula", f"sizes={sizes} pi={pi}",
                                             lhs, rhs, lhs == rhs))
    return reports


GOOD_VARIABLES = ("a1+c1", "a1+c1+g1+1/2")


def verify_good(max_n: int = 3, q=Fraction(1, 2), tol: float = 1e-9) -> list[TheoremReport]:
    model = QModel(q=q)
    reports = []
    for text in GOOD_VARIABLES:
        X = Operator.parse(text)
        for n in range(1, max_n + 1):
            for pi in enumerate_partitions(n):
                exact = cumulant([X] * n, pi, with_copies(model, [X], n))
                approx = good_cumulant([X] * n, pi, model)
                ok = abs(approx - complex(exact)) < tol
                reports.append(TheoremReport("good", f"{text} pi={pi}", exact, approx, ok))
    return reports
