"""Acceptance suite: thirteen end-to-end checks, each with a time budget.

Each test prints as one pass/fail line under `pytest -v`. Shared random
pools are built once and reused where several criteria quote the same pool.
"""

import itertools
import math
import time
from functools import lru_cache

from shrubkit import (
    Graph,
    are_isomorphic,
    complement_on_subset,
    enumerate_graphs,
    induced_subgraph,
    make_path,
    realize,
    tm_membership,
    tree_depth,
)
from shrubkit.constructions import path_model
from shrubkit.depth import td_to_tm
from shrubkit.graph import components, neighbourhood_diversity
from shrubkit.lincw import eval_lincw, tm_to_lincw
from shrubkit.mso import (
    Interpretation,
    Transduction,
    apply_interpretation,
    apply_transduction,
    evaluate,
    is_sentence,
    parse_formula,
    rewrite_formula,
)
from shrubkit.sc_model import evaluate_sc, sc_to_tm, tm_to_sc
from shrubkit.solver import minimal_obstructions, tmc_membership
from shrubkit.tree_model import canonical_code, complement_model, reduce_tree, restrict

from .helpers import (
    code_of_tuple,
    encode_colored_tree,
    is_rooted_color_embedding,
    longest_path_length,
    random_bushy_tree,
    random_colored_tree,
    random_formula,
    random_graph,
    random_sc_tree,
    random_seeded,
    random_tree_model,
    tuple_of_colored_tree,
)


@lru_cache(maxsize=None)
def model_pool():
    """Random models shared by criteria 3, 7 and 8: d <= 3, m <= 3, n <= 12."""
    rng = random_seeded(41)
    return tuple(random_tree_model(rng, max_depth=3, max_colors=3, max_leaves=12)
                 for _ in range(200))


def test_criterion_01_path_model_exactness():
    start = time.perf_counter()
    for m, length in ((1, 2), (2, 8), (3, 20)):
        model = path_model(m)
        assert model.colors == m
        assert model.depth == 2 * m + 1
        got = realize(model)
        assert got == make_path(length) or are_isomorphic(got, make_path(length))
    assert time.perf_counter() - start < 1.0


def test_criterion_02_path_non_membership():
    start = time.perf_counter()
    p = make_path(3)
    for d in range(1, 5):
        assert tm_membership(p, d, 1) is None
    assert tm_membership(p, 2, 1) is None
    assert time.perf_counter() - start < 30.0


def test_criterion_03_tm_to_sc_round_trip():
    start = time.perf_counter()
    assert len(model_pool()) >= 200
    for m in model_pool():
        t = tm_to_sc(m)
        assert evaluate_sc(t) == realize(m)
        assert t.height <= m.depth * m.colors * (m.colors + 1)
    assert time.perf_counter() - start < 10.0


def test_criterion_04_sc_to_tm_round_trip():
    start = time.perf_counter()
    rng = random_seeded(42)
    trees = [random_sc_tree(rng, max_height=3, max_leaves=10) for _ in range(200)]
    for t in trees:
        m = sc_to_tm(t)
        assert realize(m) == evaluate_sc(t)
        assert m.depth == t.height
        assert m.colors <= 2 ** t.height
    assert time.perf_counter() - start < 10.0


def test_criterion_05_tree_depth_values():
    start = time.perf_counter()
    for n in range(15):
        assert tree_depth(make_path(n))[0] == math.ceil(math.log2(n + 2))
    for n in range(1, 8):
        for g in enumerate_graphs(n):
            length = longest_path_length(g)
            td = tree_depth(g)[0]
            assert math.ceil(math.log2(length + 2)) <= td <= length + 1
    assert time.perf_counter() - start < 60.0


def test_criterion_06_td_to_tm_realization():
    start = time.perf_counter()
    for n in range(1, 7):
        for g in enumerate_graphs(n):
            if len(components(g)) != 1:
                continue
            td, forest = tree_depth(g)
            m = td_to_tm(g, forest)
            assert realize(m) == Graph(g.n, g.edges)
            assert m.depth == td - 1
            assert m.colors < 2 ** td
    assert time.perf_counter() - start < 60.0


def test_criterion_07_lincw_translation():
    start = time.perf_counter()
    for m in model_pool():
        expr = tm_to_lincw(m)
        assert eval_lincw(expr) == realize(m)
        assert expr.labels <= max(1, m.colors * (m.depth + 1))
    assert time.perf_counter() - start < 10.0


def test_criterion_08_closure_properties():
    start = time.perf_counter()
    rng = random_seeded(43)
    for m in model_pool():
        g = realize(m)
        assert realize(complement_model(m)) == complement_on_subset(g, range(m.n))
        keep = sorted(v for v in range(m.n) if rng.random() < 0.6) or [0]
        assert realize(restrict(m, keep)) == induced_subgraph(g, keep)[0]
    for n in range(1, 6):
        for g in enumerate_graphs(n):
            for d in (1, 2):
                for colors in (1, 2):
                    if tm_membership(g, d, colors) is None:
                        continue
                    comp = complement_on_subset(g, range(g.n))
                    assert tm_membership(comp, d, colors) is not None
                    for r in range(1, g.n):
                        for keep in itertools.combinations(range(g.n), r):
                            sub, _ = induced_subgraph(g, keep)
                            assert tm_membership(sub, d, colors) is not None
    assert time.perf_counter() - start < 120.0


def test_criterion_09_neighbourhood_diversity_equivalence():
    start = time.perf_counter()
    for n in range(1, 7):
        for g in enumerate_graphs(n):
            nd = neighbourhood_diversity(g)
            for m in range(1, 5):
                assert (tm_membership(g, 1, m) is not None) == (nd <= m)
    assert time.perf_counter() - start < 120.0


def test_criterion_10_interpretation_contract():
    start = time.perf_counter()
    rng = random_seeded(44)
    checked = 0
    while checked < 200:
        g = random_graph(rng, rng.randint(1, 6))
        nu = random_formula(rng, rng.randint(1, 2), fo_scope=("x",))
        mu = random_formula(rng, rng.randint(1, 2), fo_scope=("x", "y"))
        interp = Interpretation(nu, mu, domain_var="x", edge_vars=("x", "y"))
        phi = random_formula(rng, rng.randint(1, 3))
        if not is_sentence(phi):
            continue
        image, _ = apply_interpretation(interp, g)
        back = rewrite_formula(interp, phi)
        assert evaluate(g, back) == evaluate(image, phi)
        checked += 1
    assert time.perf_counter() - start < 60.0


def test_criterion_11_perfect_matching_transduction():
    start = time.perf_counter()
    matcher = Transduction(
        Interpretation(parse_formula("true"),
                       parse_formula("rel_sim(x, y) & !(x = y)")),
        copies=2,
    )
    for n in range(1, 6):
        got = apply_transduction(matcher, Graph(n))
        assert got == Graph(2 * n, [(v, n + v) for v in range(n)])
        degrees = [0] * got.n
        for u, v in got.edges:
            degrees[u] += 1
            degrees[v] += 1
        assert all(deg == 1 for deg in degrees)
    matching = Graph(6, [(0, 3), (1, 4), (2, 5)])
    assert tmc_membership(matching, 1, 2, 2) is not None
    assert time.perf_counter() - start < 10.0


SENTENCES = [
    "ex1 x. ex1 y. (!(x = y) & (label_c1(x) & label_c1(y)))",
    "ex1 x. ex1 y. (!(x = y) & (label_c2(x) & label_c2(y)))",
    "ex1 x. (label_root(x) & ex1 y. (edge(x, y) & label_c1(y)))",
    "all1 x. (label_c3(x) -> ex1 y. (edge(x, y) & label_c1(y)))",
    "ex2 X. (mod(1, 2, X) & all1 x. (x in X <-> label_c1(x)))",
    "ex2 X. (mod(0, 2, X) & all1 x. (x in X <-> label_c2(x)))",
    "ex1 x. ex1 y. (edge(x, y) & (label_c1(x) & label_c2(y)))",
    "ex2 X. (mod(1, 2, X) & all1 x. (x in X <-> !label_c3(x)))",
]


def checked_reduce(t, thresholds, modulus):
    """Reduce a tuple tree while asserting the per-class contract."""
    color, children = t
    reduced = [checked_reduce(c, thresholds, modulus) for c in children]
    def height(node):
        return 1 + max((height(c) for c in node[1]), default=-1)
    h = 1 + max((height(c) for c in reduced), default=-1)
    limit = thresholds[min(h, len(thresholds)) - 1]
    counts = {}
    for c in reduced:
        counts[code_of_tuple(c)] = counts.get(code_of_tuple(c), 0) + 1
    kept_counts = {}
    keep = []
    for c in reduced:
        code = code_of_tuple(c)
        total = counts[code]
        if total < limit + modulus:
            cap = total
        else:
            cap = limit + (total - limit) % modulus
        # cardinality window and congruence mod the modulus
        assert cap == total or limit <= cap < limit + modulus
        assert (total - cap) % modulus == 0
        if kept_counts.get(code, 0) < cap:
            kept_counts[code] = kept_counts.get(code, 0) + 1
            keep.append(c)
    return (color, keep)


def test_criterion_12_reduction_soundness():
    start = time.perf_counter()
    rng = random_seeded(45)
    for _ in range(500):
        ct = random_colored_tree(rng)
        for thresholds, modulus in (([1], 2), ([2], 2), ([1, 3], 3), ([2], 1)):
            red = reduce_tree(ct, thresholds, modulus)
            want = checked_reduce(tuple_of_colored_tree(ct), thresholds, modulus)
            assert canonical_code(red) == code_of_tuple(want)
            assert is_rooted_color_embedding(red, ct)

    phis = [parse_formula(text) for text in SENTENCES]
    trees = []
    while len(trees) < 60:
        t = random_bushy_tree(rng, max_mids=2, max_leaves=5)
        if t.tree.n <= 12:
            trees.append(t)

    def verdicts(ct):
        g = encode_colored_tree(ct)
        return tuple(evaluate(g, phi, max_vertices=16) for phi in phis)

    base = [verdicts(t) for t in trees]

    def agree(limit):
        return all(
            verdicts(reduce_tree(ct, [limit, limit], 2)) == want
            for ct, want in zip(trees, base)
        )

    agreement = {}
    found = None
    for limit in range(1, 7):
        if limit not in agreement:
            agreement[limit] = agree(limit)
        if not agreement[limit]:
            continue
        if limit + 1 not in agreement:
            agreement[limit + 1] = agree(limit + 1)
        if agreement[limit + 1]:
            found = limit
            break
    assert found is not None and found <= 4
    # the found threshold must actually bite on this pool
    assert any(
        reduce_tree(ct, [found, found], 2).tree.n < ct.tree.n for ct in trees
    )
    assert time.perf_counter() - start < 120.0


def test_criterion_13_obstruction_snapshot():
    start = time.perf_counter()
    found = minimal_obstructions(1, 1, 4)
    assert len(found) == 2
    targets = [make_path(2), Graph(3, [(0, 1)])]
    for g in found:
        hits = [i for i, t in enumerate(targets) if are_isomorphic(g, t)]
        assert len(hits) == 1
        targets.pop(hits[0])
    assert not targets
    assert time.perf_counter() - start < 10.0
