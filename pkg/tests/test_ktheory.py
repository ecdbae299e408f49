import itertools
import random
from math import gcd

import pytest
from hypothesis import given, settings, strategies as st

from qtwistor.graphck import PRESETS, load_graph
from qtwistor.ktheory import (
    KGroups,
    cone_CP3,
    cone_F,
    cone_G,
    determinant,
    k_theory,
    order_iso_check,
    positive_cone,
    smith_normal_form,
    snf_diagonal,
)


def determinantal_divisors(M):
    """Oracle: d_k = D_k / D_{k-1} with D_k the gcd of all k x k minors."""
    m, n = len(M), len(M[0])
    Ds = [1]
    for k in range(1, min(m, n) + 1):
        g = 0
        for rows in itertools.combinations(range(m), k):
            for cols in itertools.combinations(range(n), k):
                g = gcd(g, determinant([[M[i][j] for j in cols] for i in rows]))
        if g == 0:
            break
        Ds.append(g)
    out = [Ds[i] // Ds[i - 1] for i in range(1, len(Ds))]
    return out + [0] * (min(m, n) - len(out))


def test_snf_examples():
    assert snf_diagonal([[0, 0], [0, 0]]) == [0, 0]
    assert snf_diagonal([[2, 0], [0, 3]]) == [1, 6]


@settings(max_examples=80, deadline=None)
@given(st.integers(1, 5), st.integers(1, 5), st.randoms(use_true_random=False))
def test_snf_properties(m, n, rnd):
    M = [[rnd.randint(-6, 6) for _ in range(n)] for _ in range(m)]
    U, D, V = smith_normal_form(M)
    prod = [[sum(U[i][a] * M[a][b] * V[b][j] for a in range(m) for b in range(n)) for j in range(n)] for i in range(m)]
    assert prod == D
    assert abs(determinant(U)) == 1 and abs(determinant(V)) == 1
    d = [D[i][i] for i in range(min(m, n))]
    assert all(D[i][j] == 0 for i in range(m) for j in range(n) if i != j)
    for a, b in zip(d, d[1:]):
        assert (b % a == 0) if a else b == 0
    assert d == determinantal_divisors(M)


def test_unimodular_5x5():
    rng = random.Random(11)
    for _ in range(20):
        M = [[rng.randint(-9, 9) for _ in range(5)] for _ in range(5)]
        U, _, V = smith_normal_form(M)
        assert determinant(U) in (1, -1) and determinant(V) in (1, -1)


@pytest.mark.parametrize(
    "name, expect",
    [("F", KGroups(3, (), 0)), ("G", KGroups(4, (), 0)), ("L3", KGroups(1, (), 1)), ("L5", KGroups(1, (), 1)), ("L7", KGroups(1, (), 1))],
)
def test_presets(name, expect):
    assert k_theory(PRESETS[name]()) == expect


def test_single_vertex():
    assert k_theory(load_graph({"vertices": ["a"], "edges": []})) == KGroups(1, (), 0)


def test_torsion():
    # a vertex with three loops: K0 = Z/2, K1 = 0
    g = load_graph({"vertices": ["a"], "edges": [{"name": "x", "src": "a", "dst": "a", "mult": 3}]})
    assert k_theory(g) == KGroups(0, (2,), 0)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 4), st.randoms(use_true_random=False))
def test_ktheory_matches_divisor_oracle(nv, rnd):
    vs = [f"u{i}" for i in range(nv)]
    edges = []
    for i, a in enumerate(vs):
        for j, b in enumerate(vs):
            mult = rnd.choice([0, 0, 1, 2, "inf"])
            if mult:
                edges.append({"name": f"x{i}{j}", "src": a, "dst": b, "mult": mult})
    g = load_graph({"vertices": vs, "edges": edges})
    kg = k_theory(g)
    reg = [v for v in vs if g.is_regular(v)]
    if not reg:
        assert kg == KGroups(nv, (), 0)
        return
    A = g.adjacency()
    M = [[A[vs.index(v)][vs.index(w)] - (v == w) for v in reg] for w in vs]
    d = determinantal_divisors(M)
    rank = sum(1 for x in d if x)
    assert kg.k0_rank == nv - rank and kg.k1_rank == len(reg) - rank
    assert kg.k0_torsion == tuple(x for x in d if x > 1)


def test_cone_examples():
    assert cone_G((1, -5, 7, -2))
    assert not cone_G((0, 0, 0, -1))
    assert cone_G((0, 0, 0, 0))
    assert cone_F((0, 1, -4))
    assert not cone_F((0, 0, -1))
    with pytest.raises(ValueError):
        positive_cone((1, 2), "G")
    with pytest.raises(ValueError):
        positive_cone((1, 2, 3), "H")


def test_order_iso():
    assert order_iso_check(6)
    assert cone_G((1, 0, 0, 0)) and cone_CP3((1, 0, 0, 0))


def test_cp3_cone_detects_mismatch():
    # the quotient-only cone (ignoring the compact summand) differs from the G cone
    box = range(-2, 3)
    assert any(cone_G(v) != cone_F(v[:3]) for v in itertools.product(box, repeat=4))


vec4 = st.tuples(*[st.integers(-6, 6)] * 4)


@settings(max_examples=300)
@given(vec4, vec4)
def test_cone_additive(x, y):
    for cone in (cone_G, cone_CP3):
        if cone(x) and cone(y):
            assert cone(tuple(a + b for a, b in zip(x, y)))
    if cone_F(x[:3]) and cone_F(y[:3]):
        assert cone_F(tuple(a + b for a, b in zip(x[:3], y[:3])))
