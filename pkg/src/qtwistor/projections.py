"""Projections P_N over the total space, their quotient to the Podles sphere and index pairings.

The column A^N has entries sqrt(c_j) psi_j with psi_j = z4*^j4 z3^j3 z2^j2 z1*^j1. Square
roots never enter the symbolic algebra: a ProjectionMatrix stores c_j and the monomial
products psi_i psi_j^*, so that entry (i, j) is sqrt(c_i c_j) * monomials[i, j].
"""
from __future__ import annotations

import itertools
import threading
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np
import scipy.sparse as sp

from .fockrep import _flat, rep_word
from .instanton import projector_G
from .ncalg import (
    AlgMatrix,
    Element,
    Word,
    adjoint_word,
    is_mu_invariant,
    monomial_word,
    normal_form,
    quotient_kill,
    sphere_relations,
)
from .scalar import ONE, ZERO, QRational, evaluate_at, geometric_sum, qpow

JIndex = tuple[int, int, int, int]


def compositions(N: int, parts: int = 4) -> list[tuple[int, ...]]:
    if N < 0:
        return []
    out = []
    for cuts in itertools.combinations(range(N + parts - 1), parts - 1):
        prev, comp = -1, []
        for c in cuts:
            comp.append(c - prev - 1)
            prev = c
        comp.append(N + parts - 2 - prev)
        out.append(tuple(comp))
    return out


class CoeffTable:
    """Memoized recursion values c_j(N); levels are filled in order under a lock."""

    def __init__(self) -> None:
        self._data: dict[tuple[int, ...], QRational] = {(0, 0, 0, 0, 0): ONE}
        self._filled = 0
        self._lock = threading.Lock()

    @property
    def filled(self) -> int:
        return self._filled

    def fill(self, N: int) -> None:
        if N <= self._filled:
            return
        with self._lock:
            while self._filled < N:
                n = self._filled
                for j in compositions(n + 1):
                    self._data[(*j, n + 1)] = self._step(j, n)
                self._filled = n + 1

    def _step(self, j: Sequence[int], n: int) -> QRational:
        j1, j2, j3, j4 = j
        get = self._raw
        return (
            qpow(4 + 2 * (j2 + j3 - j4)) * get(j1 - 1, j2, j3, j4, n)
            + qpow(2 + 2 * (j3 - j4)) * get(j1, j2 - 1, j3, j4, n)
            + qpow(-2 * j4) * get(j1, j2, j3 - 1, j4, n)
            + get(j1, j2, j3, j4 - 1, n)
        )

    def _raw(self, j1: int, j2: int, j3: int, j4: int, N: int) -> QRational:
        return self._data.get((j1, j2, j3, j4, N), ZERO)

    def __call__(self, j1: int, j2: int, j3: int, j4: int, N: int) -> QRational:
        if N < 0 or min(j1, j2, j3, j4) < 0 or j1 + j2 + j3 + j4 != N:
            return ZERO
        self.fill(N)
        return self._data[(j1, j2, j3, j4, N)]

    def level(self, N: int) -> dict[JIndex, QRational]:
        return {j: self(*j, N) for j in compositions(N)}


COEFFS = CoeffTable()


def coeff_c(j1: int, j2: int, j3: int, j4: int, N: int) -> QRational:
    return COEFFS(j1, j2, j3, j4, N)


# ---------------------------------------------------------------------------


def psi_word(j: Sequence[int]) -> Word:
    j1, j2, j3, j4 = j
    return (-4,) * j4 + (3,) * j3 + (2,) * j2 + (-1,) * j1


def _psi_order(j: JIndex) -> tuple:
    # mixed indices before pure powers, then descending lexicographic
    return (-sum(1 for x in j if x), tuple(-x for x in j))


@dataclass(frozen=True)
class PsiEntry:
    j: JIndex
    c: QRational
    word: Word


@dataclass(frozen=True)
class PsiColumn:
    N: int
    entries: tuple[PsiEntry, ...]

    @classmethod
    def build(cls, N: int) -> "PsiColumn":
        if N < 0:
            raise ValueError("N must be nonnegative")
        js = sorted(compositions(N), key=_psi_order)
        return cls(N, tuple(PsiEntry(j, coeff_c(*j, N), psi_word(j)) for j in js))

    def __len__(self) -> int:
        return len(self.entries)


def unity_terms(N: int) -> list[Element]:
    """The summands c_j psi_j^* psi_j of (A^* A)_11, each in normal form."""
    return [normal_form(adjoint_word(e.word) + e.word).scale(e.c) for e in PsiColumn.build(N).entries]


def verify_partition_of_unity(N: int) -> bool:
    total = Element()
    for t in unity_terms(N):
        total = total + t
    return total == Element.scalar(1)


@dataclass(frozen=True)
class ProjectionMatrix:
    """Entry (i, j) equals sqrt(coeffs[i] * coeffs[j]) * monomials[i, j]."""

    coeffs: tuple[QRational, ...]
    monomials: AlgMatrix
    labels: tuple[JIndex, ...] = ()
    words: tuple[Word, ...] = ()

    @property
    def size(self) -> int:
        return len(self.coeffs)

    def squared_coefficient(self, i: int, j: int) -> QRational:
        return self.coeffs[i] * self.coeffs[j]

    def trace(self) -> Element:
        acc = Element()
        for i, c in enumerate(self.coeffs):
            acc = acc + self.monomials[i, i].scale(c)
        return acc

    def restrict(self, keep: Sequence[int]) -> "ProjectionMatrix":
        rows = [[self.monomials[i, j] for j in keep] for i in keep]
        return ProjectionMatrix(
            tuple(self.coeffs[i] for i in keep),
            AlgMatrix.build(rows),
            tuple(self.labels[i] for i in keep) if self.labels else (),
            tuple(self.words[i] for i in keep) if self.words else (),
        )


def projection_P(N: int) -> ProjectionMatrix:
    col = PsiColumn.build(N)
    rows = []
    for a in col.entries:
        rows.append([normal_form(a.word + adjoint_word(b.word)) for b in col.entries])
    return ProjectionMatrix(
        tuple(e.c for e in col.entries),
        AlgMatrix.build(rows),
        tuple(e.j for e in col.entries),
        tuple(e.word for e in col.entries),
    )


def entries_invariant(P: ProjectionMatrix) -> bool:
    n = P.size
    return all(is_mu_invariant(P.monomials[i, j]) for i in range(n) for j in range(n))


@dataclass(frozen=True)
class ProjectionReport:
    N: int
    q0: float
    cutoff: int
    unity_residual: float
    idempotent_residual: float
    selfadjoint_residual: float

    @property
    def passed(self) -> bool:
        return max(self.unity_residual, self.idempotent_residual, self.selfadjoint_residual) <= 1e-9


def numeric_check_projection(N: int, q0, cutoff: int) -> ProjectionReport:
    """Realize A^N in the Fock representation and test P = A A^T on interior vectors."""
    q0 = float(q0)
    if not 0 < q0 < 1:
        raise ValueError("q must lie in (0, 1)")
    col = PsiColumn.build(N)
    blocks = [rep_word(e.word, q0, cutoff).matrix * np.sqrt(float(evaluate_at(e.c, Fraction(q0)))) for e in col.entries]
    A = sp.vstack(blocks).tocsr()
    d = cutoff**3
    margin = 2 * N + 1
    top = cutoff - margin
    if top <= 0:
        raise ValueError("cutoff too small for this N")
    inner = [_flat((n, m, k), cutoff) for n in range(top) for m in range(top) for k in range(top)]
    AtA = (A.T @ A).tocsr()[:, inner] - sp.identity(d, format="csr")[:, inner]
    unity = float(np.max(np.abs(AtA.toarray())))
    P = (A @ A.T).tocsr()
    cols = [b * d + i for b in range(len(blocks)) for i in inner]
    Pc = P[:, cols]
    idem = (P @ Pc - Pc).toarray()
    adj = (P.T[:, cols] - Pc).toarray()
    return ProjectionReport(
        N,
        q0,
        cutoff,
        unity,
        float(np.max(np.abs(idem))) if idem.size else 0.0,
        float(np.max(np.abs(adj))) if adj.size else 0.0,
    )


# ---------------------------------------------------------------------------
# quotient by z1, z2


def quotient_to_podles(M, compress: bool = False):
    """Kill z1 and z2 entrywise; with compress, drop rows/columns that vanish."""
    kill = lambda e: quotient_kill(e, (1, 2))
    if isinstance(M, ProjectionMatrix):
        Q = ProjectionMatrix(M.coeffs, M.monomials.map(kill), M.labels, M.words)
        if compress:
            Q = Q.restrict([i for i in range(Q.size) if not Q.monomials[i, i].is_zero()])
        return Q
    Q = M.map(kill)
    if compress:
        n = Q.shape[0]
        keep = [i for i in range(n) if not Q[i, i].is_zero()]
        Q = AlgMatrix.build([[Q[i, j] for j in keep] for i in keep])
    return Q


def named_projection(name: str):
    if name == "P1":
        return quotient_to_podles(projection_P(1), compress=True)
    if name == "P2":
        return quotient_to_podles(projection_P(2), compress=True)
    if name == "G":
        return quotient_to_podles(projector_G())
    if name == "1":
        return AlgMatrix.identity(1)
    raise ValueError(f"unknown projection {name!r}")


PROJECTIONS = ("P1", "P2", "G", "1")


def trace_element(P) -> Element:
    return P.trace()


# ---------------------------------------------------------------------------
# Fredholm modules on the Podles sphere

Poly = dict[int, QRational]  # polynomial in Y = q^n


@dataclass(frozen=True)
class PairingConvention:
    """mu0 evaluates at the classical point; mu1 compares with the irreducible
    representation on l^2(N) where z3 e_n = q^(n + diag_offset) e_n and z4 shifts by one."""

    z4_raises: bool = True
    diag_offset: int = 0
    shift_offset: int = 0
    point_z3: int = 0
    point_z4: int = 1

    def describe(self) -> dict:
        return {
            "mu0": {"z3": self.point_z3, "z4": self.point_z4},
            "mu1": {
                "z3": f"q^(n+{self.diag_offset}) diagonal",
                "z4": ("raises" if self.z4_raises else "lowers") + f", offset {self.shift_offset}",
            },
        }


DEFAULT_CONVENTION = PairingConvention()


def podles_matrices(conv: PairingConvention, q0: float, size: int) -> tuple[np.ndarray, np.ndarray]:
    n = np.arange(size)
    Z3 = np.diag(q0 ** (n + conv.diag_offset))
    Z4 = np.zeros((size, size))
    for i in range(size):
        if conv.z4_raises and i + 1 < size:
            x = 1 - q0 ** (2 * (i + 1 + conv.shift_offset))
            Z4[i + 1, i] = np.sqrt(x) if x >= 0 else np.nan
        elif not conv.z4_raises and i >= 1:
            x = 1 - q0 ** (2 * (i + conv.shift_offset))
            Z4[i - 1, i] = np.sqrt(x) if x >= 0 else np.nan
    return Z3, Z4


def _word_matrix(w: Sequence[int], Z3: np.ndarray, Z4: np.ndarray) -> np.ndarray:
    mats = {3: Z3, -3: Z3.T, 4: Z4, -4: Z4.T}
    out = np.eye(Z3.shape[0])
    for l in w:
        out = out @ mats[l]
    return out


def quotient_relations() -> list[tuple[str, dict[Word, QRational]]]:
    out = []
    for label, rel in sphere_relations():
        kept = {w: c for w, c in rel.items() if all(abs(l) > 2 for l in w)}
        if kept:
            out.append((label, kept))
    return out


def convention_is_representation(conv: PairingConvention, q0: float = 0.5, size: int = 30) -> bool:
    Z3, Z4 = podles_matrices(conv, q0, size)
    if np.isnan(Z4).any():
        return False
    inner = size - 6
    for _, rel in quotient_relations():
        acc = np.zeros((size, size))
        for w, c in rel.items():
            acc = acc + float(evaluate_at(c, Fraction(q0))) * _word_matrix(w, Z3, Z4)
        if np.max(np.abs(acc[:, :inner])) > 1e-10:
            return False
    return True


def _padd(a: Poly, b: Poly, s: QRational = ONE) -> Poly:
    out = dict(a)
    for k, v in b.items():
        out[k] = out.get(k, ZERO) + s * v
        if out[k].is_zero():
            del out[k]
    return out


def _pmul(a: Poly, b: Poly) -> Poly:
    out: Poly = {}
    for i, x in a.items():
        for j, y in b.items():
            out = _padd(out, {i + j: x * y})
    return out


def character(x: Element, conv: PairingConvention = DEFAULT_CONVENTION) -> QRational:
    val = {3: conv.point_z3, -3: conv.point_z3, 4: conv.point_z4, -4: conv.point_z4}
    acc = ZERO
    for m, c in x.terms.items():
        w = monomial_word(m)
        if any(abs(l) < 3 for l in w):
            raise ValueError("element is not in the quotient algebra")
        f = 1
        for l in w:
            f *= val[l]
        if f:
            acc = acc + c * f
    return acc


def diagonal_poly(x: Element, conv: PairingConvention = DEFAULT_CONVENTION) -> Poly:
    """Diagonal of a normal-form element in the mu1 representation, as a polynomial in Y = q^n."""
    out: Poly = {}
    for m, c in x.terms.items():
        w = monomial_word(m)
        if any(abs(l) < 3 for l in w):
            raise ValueError("element is not in the quotient algebra")
        if any(abs(l) == 4 for l in w):
            # normal monomials with z4 letters are never balanced
            continue
        out = _padd(out, {len(w): c * qpow(conv.diag_offset * len(w))})
    return out


def mu1_summand(x: Element, conv: PairingConvention = DEFAULT_CONVENTION) -> Poly:
    return _padd({0: character(x, conv)} if not character(x, conv).is_zero() else {}, diagonal_poly(x, conv), -ONE)


def printed_p2_summand() -> Poly:
    """1 - (2 + q^-2 - q^2) X (1 - X) - (1 - X)^2 - Y^4 with X = q^2 Y^2."""
    a = qpow(0) * 2 + qpow(-2) - qpow(2)
    X: Poly = {2: qpow(2)}
    one_minus_X = _padd({0: ONE}, X, -ONE)
    out: Poly = {0: ONE}
    out = _padd(out, _pmul(X, one_minus_X), -a)
    out = _padd(out, _pmul(one_minus_X, one_minus_X), -ONE)
    out = _padd(out, {4: ONE}, -ONE)
    return out


def summand_at(poly: Poly, q0: Fraction, n: int) -> Fraction:
    return sum((evaluate_at(c, q0) * q0 ** (k * n) for k, c in poly.items()), Fraction(0))


@dataclass(frozen=True)
class PairingResult:
    projection: str
    module: str
    exact: QRational
    value: int | None
    summand: tuple[tuple[int, str], ...] = ()

    @property
    def integral(self) -> bool:
        return self.value is not None


def _as_int(x: QRational) -> int | None:
    if not x.is_constant():
        return None
    v = x.constant_value()
    return int(v) if v.denominator == 1 else None


def pairing(P, module: str, conv: PairingConvention = DEFAULT_CONVENTION, name: str = "") -> PairingResult:
    tr = quotient_kill(normal_form(trace_element(P)), (1, 2))
    if module == "mu0":
        exact = character(tr, conv)
        return PairingResult(name, module, exact, _as_int(exact))
    if module != "mu1":
        raise ValueError(f"unknown module {module!r}")
    s = mu1_summand(tr, conv)
    summand = tuple(sorted((k, str(c)) for k, c in s.items()))
    if 0 in s:
        # constant term: the series diverges
        return PairingResult(name, module, s[0], None, summand)
    exact = ZERO
    for k, c in s.items():
        exact = exact + geometric_sum(c, k)
    return PairingResult(name, module, exact, _as_int(exact), summand)


def _numeric_words(P) -> list[tuple[QRational, Word]]:
    # raw words of the diagonal, before any normal ordering
    if isinstance(P, ProjectionMatrix) and P.words:
        out = []
        for c, w in zip(P.coeffs, P.words):
            word = w + adjoint_word(w)
            if all(abs(l) > 2 for l in word):
                out.append((c, word))
        return out
    return [(c, monomial_word(m)) for m, c in normal_form(trace_element(P)).terms.items()]


def numeric_pairing(P, module: str, q0, cutoff: int = 60, conv: PairingConvention = DEFAULT_CONVENTION) -> float:
    q0f = float(q0)
    terms = _numeric_words(P)
    if module == "mu0":
        val = {3: conv.point_z3, -3: conv.point_z3, 4: conv.point_z4, -4: conv.point_z4}
        return float(sum(float(evaluate_at(c, Fraction(q0))) * np.prod([val[l] for l in w]) for c, w in terms))
    if module != "mu1":
        raise ValueError(f"unknown module {module!r}")
    deg = max((len(w) for _, w in terms), default=0)
    size = cutoff + deg + 1
    Z3, Z4 = podles_matrices(conv, q0f, size)
    val = {3: conv.point_z3, -3: conv.point_z3, 4: conv.point_z4, -4: conv.point_z4}
    char = sum(float(evaluate_at(c, Fraction(q0))) * np.prod([val[l] for l in w]) for c, w in terms)
    diag = np.zeros(size)
    for c, w in terms:
        diag += float(evaluate_at(c, Fraction(q0))) * np.diag(_word_matrix(w, Z3, Z4))
    return float(np.sum(char - diag[:cutoff]))


def calibrate_mu1(offsets: Iterable[int] = (-1, 0, 1)) -> list[PairingConvention]:
    """Conventions that represent the quotient and reproduce the printed P2 summand."""
    offsets = list(offsets)
    target = printed_p2_summand()
    P2 = named_projection("P2")
    q0 = Fraction(1, 2)
    good = []
    for raises, d, s in itertools.product((True, False), offsets, offsets):
        conv = PairingConvention(raises, d, s)
        if not convention_is_representation(conv):
            continue
        if mu1_summand(normal_form(P2.trace()), conv) != target:
            continue
        # the raw, un-normalized diagonal words must agree as well
        Z3, Z4 = podles_matrices(conv, float(q0), 20)
        diag = sum(float(evaluate_at(c, q0)) * np.diag(_word_matrix(w, Z3, Z4)) for c, w in _numeric_words(P2))
        want = np.array([float(summand_at(target, q0, n)) for n in range(12)])
        if np.max(np.abs((1 - diag[:12]) - want)) <= 1e-12:
            good.append(conv)
    return good


def pairing_table(
    which: Sequence[str] = PROJECTIONS, conv: PairingConvention = DEFAULT_CONVENTION
) -> dict[str, dict[str, PairingResult]]:
    COEFFS.fill(2)
    mats = {w: named_projection(w) for w in which}

    def one(w: str) -> tuple[str, dict[str, PairingResult]]:
        return w, {m: pairing(mats[w], m, conv, w) for m in ("mu0", "mu1")}

    with ThreadPoolExecutor() as ex:
        return dict(ex.map(one, which))


def k0_summary_report(conv: PairingConvention = DEFAULT_CONVENTION) -> dict:
    table = pairing_table(PROJECTIONS, conv)
    val = {w: (table[w]["mu0"].value, table[w]["mu1"].value) for w in table}
    M = [[val["P1"][0], val["P2"][0]], [val["P1"][1], val["P2"][1]]]
    det = M[0][0] * M[1][1] - M[0][1] * M[1][0]
    unit = val["1"]
    G = named_projection("G")
    rank_G = sum(1 for i in range(G.shape[0]) if G[i, i] == Element.scalar(1))
    return {
        "pairings": {w: {"mu0": v[0], "mu1": v[1]} for w, v in val.items()},
        "pairing_matrix": M,
        "determinant": det,
        "unimodular": abs(det) == 1,
        # pi(G) is a rank-two free projection, so it pairs as twice the unit
        "pi_G_rank": rank_G,
        "pi_G_matches_unit_multiple": val["G"] == (rank_G * unit[0], rank_G * unit[1]),
        "convention": conv.describe(),
    }
