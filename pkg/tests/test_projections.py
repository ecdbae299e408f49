from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from qtwistor.fockrep import rep_word
from qtwistor.ncalg import AlgMatrix, Element, normal_form, quotient_kill
from qtwistor.parse import parse
from qtwistor.projections import (
    DEFAULT_CONVENTION,
    PairingConvention,
    PsiColumn,
    calibrate_mu1,
    character,
    coeff_c,
    compositions,
    convention_is_representation,
    entries_invariant,
    k0_summary_report,
    mu1_summand,
    named_projection,
    numeric_check_projection,
    numeric_pairing,
    pairing,
    pairing_table,
    podles_matrices,
    printed_p2_summand,
    projection_P,
    quotient_to_podles,
    summand_at,
    unity_terms,
    verify_partition_of_unity,
)
from qtwistor.instanton import projector_G
from qtwistor.scalar import ONE, evaluate_at, qpow

Q = qpow

PRINTED_C = {
    (1, 0, 0, 0, 1): Q(4),
    (0, 1, 0, 0, 1): Q(2),
    (0, 0, 1, 0, 1): ONE,
    (0, 0, 0, 1, 1): ONE,
    (1, 1, 0, 0, 2): Q(6) * (ONE + Q(2)),
    (1, 0, 1, 0, 2): Q(4) * (ONE + Q(2)),
    (1, 0, 0, 1, 2): Q(4) * (ONE + Q(-2)),
    (0, 1, 1, 0, 2): Q(2) * (ONE + Q(2)),
    (0, 1, 0, 1, 2): Q(2) * (ONE + Q(-2)),
    (0, 0, 1, 1, 2): Q(-2) + ONE,
    (2, 0, 0, 0, 2): Q(8),
    (0, 2, 0, 0, 2): Q(4),
    (0, 0, 2, 0, 2): ONE,
    (0, 0, 0, 2, 2): ONE,
}


@pytest.mark.parametrize("key", sorted(PRINTED_C))
def test_printed_coefficients(key):
    assert coeff_c(*key) == PRINTED_C[key]


def test_coefficient_edge_cases():
    assert coeff_c(0, 0, 0, 0, 0) == ONE
    assert coeff_c(-1, 1, 0, 0, 0).is_zero()
    assert coeff_c(1, 0, 0, 0, 2).is_zero()


def test_compositions_count():
    from math import comb

    for N in range(6):
        assert len(compositions(N)) == comb(N + 3, 3)


@pytest.mark.parametrize("N", [0, 1, 2, 3, 4])
def test_partition_of_unity(N):
    assert verify_partition_of_unity(N)


def test_unity_at_level_one_is_the_sphere_identity():
    got = {str(t) for t in unity_terms(1)}
    want = {str(parse(s)) for s in ["q^4 z1 z1'", "q^2 z2' z2", "z3' z3", "z4 z4'"]}
    assert got == want


def test_psi_column_order_level_two():
    col = PsiColumn.build(2)
    printed = [
        (Q(6) * (ONE + Q(2)), "z2 z1'"),
        (Q(4) * (ONE + Q(2)), "z3 z1'"),
        (Q(4) * (ONE + Q(-2)), "z4' z1'"),
        (Q(2) * (ONE + Q(2)), "z3 z2"),
        (Q(2) * (ONE + Q(-2)), "z4' z2"),
        (ONE + Q(-2), "z4' z3"),
        (Q(8), "z1^2'"),
        (Q(4), "z2^2"),
        (ONE, "z3^2"),
        (ONE, "z4^2'"),
    ]
    assert len(col) == 10
    for e, (c2, w) in zip(col.entries, printed):
        assert e.c == c2
        assert normal_form(e.word) == parse(w)


def test_P1_structure():
    P = projection_P(1)
    printed = [
        [(4, "z1' z1"), (3, "z1' z2'"), (2, "z1' z3'"), (2, "z1' z4")],
        [(3, "z2 z1"), (2, "z2 z2'"), (1, "z2 z3'"), (1, "z2 z4")],
        [(2, "z3 z1"), (1, "z3 z2'"), (0, "z3 z3'"), (0, "z3 z4")],
        [(2, "z4' z1"), (1, "z4' z2'"), (0, "z4' z3'"), (0, "z4' z4")],
    ]
    for i in range(4):
        for j in range(4):
            e, w = printed[i][j]
            assert P.squared_coefficient(i, j) == Q(2 * e)
            assert P.monomials[i, j] == parse(w)


@pytest.mark.parametrize("N", [1, 2, 3, 4])
def test_entries_mu_invariant(N):
    assert entries_invariant(projection_P(N))


def test_symbolic_idempotence_P1():
    # A^* A = 1 gives (A A^*)^2 = A A^*; spot-check with rational entries c_i c_j = squares of q-powers
    P = projection_P(1)
    roots = [Q(2), Q(1), ONE, ONE]
    M = AlgMatrix.build([[P.monomials[i, j].scale(roots[i] * roots[j]) for j in range(4)] for i in range(4)])
    assert (M @ M - M).is_zero()
    assert (M.adjoint() - M).is_zero()


@pytest.mark.parametrize("N,q0,cutoff", [(1, 0.5, 8), (2, 0.5, 9), (2, 0.25, 8), (3, 0.75, 9)])
def test_numeric_projection(N, q0, cutoff):
    rep = numeric_check_projection(N, q0, cutoff)
    assert rep.passed


def test_numeric_projection_guards():
    with pytest.raises(ValueError):
        numeric_check_projection(1, 1.2, 8)
    with pytest.raises(ValueError):
        numeric_check_projection(3, 0.5, 5)


def test_quotient_P1():
    P = quotient_to_podles(projection_P(1), compress=True)
    assert P.size == 2
    printed = [["z3 z3'", "z3 z4"], ["z4' z3'", "z4' z4"]]
    for i in range(2):
        for j in range(2):
            assert P.monomials[i, j] == quotient_kill(parse(printed[i][j]), (1, 2))
            assert P.squared_coefficient(i, j) == ONE


def test_quotient_P2_up_to_block_order():
    P = quotient_to_podles(projection_P(2), compress=True)
    assert P.labels == ((0, 0, 1, 1), (0, 0, 2, 0), (0, 0, 0, 2))
    c = ONE + Q(-2)
    printed = [
        [(c * c, "z4' z3 z3' z4"), (c, "z4' z3 z4^2"), (c, "z4' z3 z3^2'")],
        [(c, "z4^2' z3' z4"), (ONE, "z4^2' z4^2"), (ONE, "z4^2' z3^2'")],
        [(c, "z3^2 z3' z4"), (ONE, "z3^2 z4^2"), (ONE, "z3^2 z3^2'")],
    ]
    perm = [0, 2, 1]  # printed rows are (z4' z3, z4'^2, z3^2)
    for i in range(3):
        for j in range(3):
            c2, w = printed[i][j]
            a, b = perm[i], perm[j]
            assert P.squared_coefficient(a, b) == c2
            assert P.monomials[a, b] == quotient_kill(parse(w), (1, 2))


def test_quotient_G():
    G = quotient_to_podles(projector_G())
    assert G.shape == (4, 4)
    for i in range(4):
        for j in range(4):
            want = Element.scalar(1) if (i == j and i >= 2) else Element()
            assert G[i, j] == want


def test_quotient_is_mu_invariant():
    P = quotient_to_podles(projection_P(3))
    assert entries_invariant(P)


def test_calibration_is_unique():
    assert calibrate_mu1() == [DEFAULT_CONVENTION]


def test_shifted_conventions_are_not_representations():
    assert convention_is_representation(DEFAULT_CONVENTION)
    assert not convention_is_representation(PairingConvention(True, 1, 0))
    assert not convention_is_representation(PairingConvention(False, 0, 0))


def test_printed_summand_matches():
    P2 = named_projection("P2")
    assert mu1_summand(normal_form(P2.trace())) == printed_p2_summand()


EXPECTED = {"P1": (1, -1), "P2": (1, -2), "1": (1, 0), "G": (2, 0)}


@pytest.mark.parametrize("name", sorted(EXPECTED))
def test_exact_pairings(name):
    P = named_projection(name)
    for mod, want in zip(("mu0", "mu1"), EXPECTED[name]):
        r = pairing(P, mod)
        assert r.exact.is_constant() and r.value == want


@pytest.mark.parametrize("q0", [Fraction(1, 4), Fraction(1, 2), Fraction(3, 4)])
def test_numeric_pairings(q0):
    for name in ("P1", "P2", "1", "G"):
        P = named_projection(name)
        for mod, want in zip(("mu0", "mu1"), EXPECTED[name]):
            assert abs(numeric_pairing(P, mod, q0, 60) - want) < 1e-8


def test_unknown_module_and_projection():
    with pytest.raises(ValueError):
        pairing(named_projection("P1"), "mu2")
    with pytest.raises(ValueError):
        named_projection("P9")


def test_divergent_summand_reported():
    # z4 is not balanced: character 1, zero diagonal, so the series diverges
    x = AlgMatrix.build([[parse("z4")]])
    r = pairing(x, "mu1")
    assert r.value is None


def test_summary():
    rep = k0_summary_report()
    assert rep["pairing_matrix"] == [[1, 1], [-1, -2]]
    assert rep["determinant"] == -1 and rep["unimodular"]
    assert rep["pi_G_rank"] == 2 and rep["pi_G_matches_unit_multiple"]
    assert rep == k0_summary_report()


def test_pairing_table_concurrent():
    t = pairing_table()
    assert {k: (v["mu0"].value, v["mu1"].value) for k, v in t.items()} == EXPECTED


# --- properties -----------------------------------------------------------

levels = st.integers(1, 3)
qs = st.fractions(Fraction(1, 10), Fraction(9, 10))


@settings(max_examples=30, deadline=None)
@given(levels, st.tuples(st.integers(0, 3), st.integers(0, 3), st.integers(0, 3)), st.sampled_from([0.3, 0.5, 0.7]))
def test_unity_in_fock_representation(N, idx, q0):
    # independent of normal ordering: sum_j c_j |psi_j e|^2 = 1 on basis vectors
    cutoff = 3 + 2 * N + 1
    total = 0.0
    j = (idx[0] * cutoff + idx[1]) * cutoff + idx[2]
    for e in PsiColumn.build(N).entries:
        col = rep_word(e.word, q0, cutoff).matrix[:, j].toarray().ravel()
        total += float(evaluate_at(e.c, Fraction(q0))) * float(col @ col)
    assert abs(total - 1) < 1e-12


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 4).flatmap(lambda N: st.sampled_from(compositions(N)).map(lambda j: (j, N))))
def test_coefficients_positive_laurent(jN):
    j, N = jN
    c = coeff_c(*j, N)
    assert c.is_laurent()
    assert all(v > 0 for v in c.num.to_dict().values())


@settings(max_examples=20, deadline=None)
@given(qs, st.integers(0, 8))
def test_summand_agrees_with_operator_diagonal(q0, n):
    for name in ("P1", "P2"):
        P = named_projection(name)
        tr = normal_form(P.trace())
        Z3, Z4 = podles_matrices(DEFAULT_CONVENTION, float(q0), 20)
        mats = {3: Z3, -3: Z3.T, 4: Z4, -4: Z4.T}
        from qtwistor.ncalg import monomial_word

        diag = 0.0
        for m, c in tr.terms.items():
            M = np.eye(20)
            for l in monomial_word(m):
                M = M @ mats[l]
            diag += float(evaluate_at(c, q0)) * M[n, n]
        want = float(evaluate_at(character(tr), q0)) - diag
        assert abs(float(summand_at(mu1_summand(tr), q0, n)) - want) < 1e-12


@settings(max_examples=15, deadline=None)
@given(qs)
def test_pairings_q_independent(q0):
    for name, want in EXPECTED.items():
        r = pairing(named_projection(name), "mu1")
        assert evaluate_at(r.exact, q0) == want[1]
