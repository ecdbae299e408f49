"""Weighted-shift representation of the 7-sphere generators on l^2(N^3).

Basis vectors e_{n,m,k}.  z1 is diagonal, z2, z3, z4 raise k, m, n:

    z1 e = q^(n+m+k) e
    z2 e = q^(n+m) sqrt(1 - q^(2(k+1))) e_{n,m,k+1}
    z3 e = q^n sqrt(1 - q^(2(m+1))) e_{n,m+1,k}
    z4 e = sqrt(1 - q^(2(n+1))) e_{n+1,m,k}

Adjoints are transposes.  Truncation at ``cutoff`` breaks the shifts at the
boundary, so identities are only asserted on interior basis vectors.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Mapping, Sequence

import numpy as np
import scipy.sparse as sp

from .ncalg import Element, monomial_word, sphere_relations
from .scalar import ONE, ZERO, QRational, evaluate_at, qpow

Index = tuple[int, int, int]

# axis of the index moved by each generator; z1 moves nothing
_AXIS = {1: None, 2: 2, 3: 1, 4: 0}


def _flat(idx: Index, c: int) -> int:
    n, m, k = idx
    return (n * c + m) * c + k


def _unflat(j: int, c: int) -> Index:
    return (j // (c * c), (j // c) % c, j % c)


@dataclass
class FockOperator:
    cutoff: int
    matrix: sp.csr_matrix
    degree: int = 0
    exact_diagonal: dict[Index, QRational] | None = None

    def __matmul__(self, other: "FockOperator") -> "FockOperator":
        return FockOperator(self.cutoff, (self.matrix @ other.matrix).tocsr(), self.degree + other.degree)

    def __add__(self, other: "FockOperator") -> "FockOperator":
        return FockOperator(self.cutoff, (self.matrix + other.matrix).tocsr(), max(self.degree, other.degree))

    def __sub__(self, other: "FockOperator") -> "FockOperator":
        return FockOperator(self.cutoff, (self.matrix - other.matrix).tocsr(), max(self.degree, other.degree))

    def scale(self, c: float) -> "FockOperator":
        return FockOperator(self.cutoff, (self.matrix * c).tocsr(), self.degree)

    @property
    def T(self) -> "FockOperator":
        return FockOperator(self.cutoff, self.matrix.T.tocsr(), self.degree)

    def entry(self, out: Index, inp: Index) -> float:
        return float(self.matrix[_flat(out, self.cutoff), _flat(inp, self.cutoff)])

    def diagonal(self, idx: Index) -> float:
        return self.entry(idx, idx)

    def interior(self, margin: int | None = None) -> list[int]:
        margin = self.degree if margin is None else margin
        top = self.cutoff - 1 - margin
        if top < 0:
            return []
        c = self.cutoff
        return [_flat((n, m, k), c) for n in range(top + 1) for m in range(top + 1) for k in range(top + 1)]

    def interior_residual(self, margin: int | None = None) -> float:
        cols = self.interior(margin)
        if not cols:
            raise ValueError("no interior vectors at this cutoff")
        block = self.matrix[:, cols]
        return float(np.max(np.abs(block.data))) if block.nnz else 0.0


def _identity(cutoff: int) -> sp.csr_matrix:
    return sp.identity(cutoff**3, format="csr", dtype=float)


@lru_cache(maxsize=64)
def _generator_matrix(i: int, q0: float, cutoff: int) -> sp.csr_matrix:
    c = cutoff
    size = c**3
    rows, cols, vals = [], [], []
    for j in range(size):
        n, m, k = _unflat(j, c)
        if i == 1:
            rows.append(j), cols.append(j), vals.append(q0 ** (n + m + k))
            continue
        if i == 2:
            tgt, amp = (n, m, k + 1), q0 ** (n + m) * math.sqrt(1 - q0 ** (2 * (k + 1)))
        elif i == 3:
            tgt, amp = (n, m + 1, k), q0**n * math.sqrt(1 - q0 ** (2 * (m + 1)))
        else:
            tgt, amp = (n + 1, m, k), math.sqrt(1 - q0 ** (2 * (n + 1)))
        if max(tgt) < c:
            rows.append(_flat(tgt, c)), cols.append(j), vals.append(amp)
    return sp.csr_matrix((vals, (rows, cols)), shape=(size, size))


def rep_generator(i: int, q0, cutoff: int) -> FockOperator:
    """Operator of z_i (i > 0) or z_{-i}^* (i < 0)."""
    if i == 0 or abs(i) > 4:
        raise ValueError(f"invalid generator {i}")
    q0 = float(q0)
    if not 0 < q0 < 1:
        raise ValueError("q must lie in (0, 1)")
    mat = _generator_matrix(abs(i), q0, cutoff)
    return FockOperator(cutoff, mat if i > 0 else mat.T.tocsr(), 1)


def rep_word(w: Sequence[int], q0, cutoff: int) -> FockOperator:
    mat = _identity(cutoff)
    for l in w:
        mat = mat @ rep_generator(l, q0, cutoff).matrix
    return FockOperator(cutoff, mat.tocsr(), len(w))


def rep_combination(terms: Mapping[tuple, QRational], q0, cutoff: int) -> FockOperator:
    size = cutoff**3
    acc = sp.csr_matrix((size, size))
    deg = 0
    for w, c in terms.items():
        acc = acc + rep_word(w, q0, cutoff).matrix * float(evaluate_at(c, Fraction(q0)))
        deg = max(deg, len(w))
    return FockOperator(cutoff, acc.tocsr(), deg)


def rep_element(x: Element, q0, cutoff: int) -> FockOperator:
    return rep_combination({monomial_word(m): c for m, c in x.terms.items()}, q0, cutoff)


# ---------------------------------------------------------------------------
# exact amplitudes


@dataclass(frozen=True)
class Amplitude:
    """q^exponent * prod over crossings x of sqrt(1 - q^(2x))^count on each axis."""

    target: Index | None
    exponent: int = 0
    crossings: tuple[tuple[int, int], ...] = ()

    def squared(self) -> QRational:
        if self.target is None:
            return ZERO
        out = qpow(2 * self.exponent)
        for x, cnt in self.crossings:
            out = out * (ONE - qpow(2 * x)) ** cnt
        return out

    def exact(self) -> QRational:
        if self.target is None:
            return ZERO
        if any(cnt % 2 for _, cnt in self.crossings):
            raise ValueError("amplitude is not rational")
        out = qpow(self.exponent)
        for x, cnt in self.crossings:
            out = out * (ONE - qpow(2 * x)) ** (cnt // 2)
        return out

    def value(self, q0: float) -> float:
        if self.target is None:
            return 0.0
        v = q0**self.exponent
        for x, cnt in self.crossings:
            v *= math.sqrt(1 - q0 ** (2 * x)) ** cnt
        return v


def word_amplitude(w: Sequence[int], src: Index) -> Amplitude:
    """The single nonzero matrix element of a word on e_src, exactly."""
    idx = list(src)
    e = 0
    cross: dict[int, int] = {}
    for l in reversed(w):
        i = abs(l)
        n, m, k = idx
        if i == 1:
            e += n + m + k
            continue
        ax = _AXIS[i]
        pre = {2: n + m, 3: n, 4: 0}[i]
        if l > 0:
            x = idx[ax] + 1
            idx[ax] = x
        else:
            x = idx[ax]
            if x == 0:
                return Amplitude(None)
            idx[ax] = x - 1
        e += pre
        cross[x] = cross.get(x, 0) + 1
    return Amplitude(tuple(idx), e, tuple(sorted(cross.items())))


def exact_diagonal(w: Sequence[int], idx: Index) -> QRational:
    amp = word_amplitude(w, idx)
    if amp.target is None:
        return ZERO
    if amp.target != idx:
        raise ValueError("word does not act diagonally")
    return amp.exact()


def expected_diagonals(idx: Index) -> dict[int, QRational]:
    """lambda_n, delta_{n,m}, gamma_{n,m,k} and the z1 eigenvalue."""
    n, m, k = idx
    return {
        4: ONE - qpow(2 * n),
        3: qpow(2 * n) * (ONE - qpow(2 * m)),
        2: (ONE - qpow(2 * k)) * qpow(2 * (n + m)),
        1: qpow(2 * (n + m + k)),
    }


# ---------------------------------------------------------------------------
# constants of the ideal J1 acting on the normalised basis


def balancing_rt(n: int, m: int, k: int) -> tuple[int, int]:
    return max(0, k + m - n), max(0, n - m - k)


def _qprod(lo: int, hi: int) -> QRational:
    out = ONE
    for i in range(lo, hi + 1):
        out = out * (ONE - qpow(2 * i))
    return out


def _half_norm_exponent(n: int, m: int, k: int) -> int:
    r, t = balancing_rt(n, m, k)
    return n * m + n * k + m * k + (r + t) * (n + m + k)


def normalization_N(n: int, m: int, k: int) -> QRational:
    """Squared norm of z1^r z1*^t z2^k z3^m z4^n applied to the vacuum."""
    return qpow(2 * _half_norm_exponent(n, m, k)) * _qprod(1, n) * _qprod(1, m) * _qprod(1, k)


def is_balanced(ni: Sequence[int], mi: Sequence[int]) -> bool:
    n1, n2, n3, n4 = ni
    m1, m2, m3, m4 = mi
    return n2 + n3 + m1 + m4 == n1 + n4 + m2 + m3


def j1_word(ni: Sequence[int], mi: Sequence[int]) -> tuple[int, ...]:
    n1, n2, n3, n4 = ni
    m1, m2, m3, m4 = mi
    return (-4,) * n4 + (-3,) * n3 + (-2,) * n2 + (-1,) * n1 + (1,) * m1 + (2,) * m2 + (3,) * m3 + (4,) * m4


@dataclass(frozen=True)
class RepConstant:
    """Action of a J1 monomial on the normalised basis vector xi_{n,m,k}.

    ``K`` is the coefficient on unnormalised vectors and is rational;
    the normalised coefficient is C = K * sqrt(norm_ratio).
    """

    target: Index | None
    K: QRational
    norm_ratio: QRational
    exponent: int = 0

    @property
    def C_squared(self) -> QRational:
        return self.K * self.K * self.norm_ratio

    def C(self, q0) -> float:
        if self.target is None:
            return 0.0
        f = Fraction(q0)
        return float(evaluate_at(self.K, f)) * math.sqrt(float(evaluate_at(self.norm_ratio, f)))


def rep_constant_C(ni: Sequence[int], mi: Sequence[int], n: int, m: int, k: int) -> RepConstant:
    if len(ni) != 4 or len(mi) != 4 or min(*ni, *mi, n, m, k) < 0:
        raise ValueError("exponents and indices must be non-negative 4-tuples")
    if not is_balanced(ni, mi):
        raise ValueError(f"unbalanced monomial n={tuple(ni)} m={tuple(mi)}")
    n1, n2, n3, n4 = ni
    m1, m2, m3, m4 = mi
    tgt = (m4 + n - n4, m3 + m - n3, m2 + k - n2)
    if min(tgt) < 0:
        return RepConstant(None, ZERO, ZERO)
    n_, m_, k_ = n + m4, m + m3, k + m2
    S = n_ + m_ + k_
    e = m3 * n_ + m2 * (n_ + m_) + (m1 + n1) * S + n2 * (n_ + m_) + n3 * n_
    K = qpow(e + _half_norm_exponent(n, m, k) - _half_norm_exponent(*tgt))
    K = K * _qprod(tgt[0] + 1, n_) * _qprod(tgt[1] + 1, m_) * _qprod(tgt[2] + 1, k_)
    ratio = normalization_N(*tgt) / normalization_N(n, m, k)
    return RepConstant(tgt, K, ratio, e)


# -- the closed forms as printed, kept for the discrepancy audit ------------


def _pprod(lo: int, hi: int, shift: int = 0) -> QRational:
    out = ONE
    for i in range(lo, hi + 1):
        out = out * (ONE - qpow(2 * (shift - i) if shift else 2 * i))
    return out


def printed_K_parts(ni, mi, n, m, k) -> tuple[QRational, QRational, QRational]:
    n1, n2, n3, n4 = ni
    m1, m2, m3, m4 = mi
    r, t = balancing_rt(n, m, k)
    K1 = qpow(-m4 * (r + t + k + m) + n4 * (n3 + n2 + n1 + m1 + m2 + m3 + r + t + k + m))
    K1 = K1 * _pprod(0, n4 - 1, m4 + n)
    K2 = qpow(-m3 * (r + t + m) + n3 * (n2 + n1 + m1 + m2 + r + t + k) + 2 * n3 * (m4 + n - n4))
    K2 = K2 * _pprod(0, n3 - 1, m3 + m)
    K3 = qpow(-m2 * (r + t) + n2 * (n1 + m1) + 2 * n2 * (m4 + m - n4 + m3 + m - n3))
    K3 = K3 * _pprod(0, n2 - 1, m2 + k)
    return K1, K2, K3


def printed_N(n: int, m: int, k: int) -> QRational:
    r, t = balancing_rt(n, m, k)
    return qpow(n * (2 * (m + k) + r + t) + m * (2 * k + r + t)) * _qprod(1, n) * _qprod(1, m) * _qprod(1, k)


def printed_C_squared(ni, mi, n, m, k) -> QRational:
    n1, n2, n3, n4 = ni
    m1, m2, m3, m4 = mi
    r, t = balancing_rt(n, m, k)
    K1, K2, K3 = printed_K_parts(ni, mi, n, m, k)
    K = K1 * K2 * K3
    e1 = (m3 + m - n3) * 2 * (n2 - m2) + (n3 - m3) * (2 * k + r + t)
    e2 = (m4 + n - n4) * 2 * (n3 - m3 + n2 - m2) + (2 * (m + k) + r + t) * (n4 - m4)
    prods = _qprod(m4 + n - n4 + 1, n) * _qprod(m4 + m - n3 + 1, m) * _qprod(m2 + k - n2 + 1, k)
    return K * K * qpow(2 * e1 - e2) / prods


def printed_C(ni, mi, n, m, k, q0) -> float:
    tgt = (mi[3] + n - ni[3], mi[2] + m - ni[2], mi[1] + k - ni[1])
    if min(tgt) < 0:
        return 0.0
    K1, K2, K3 = printed_K_parts(ni, mi, n, m, k)
    sign = 1.0 if float(evaluate_at(K1 * K2 * K3, Fraction(q0))) >= 0 else -1.0
    try:
        sq = printed_C_squared(ni, mi, n, m, k)
    except ZeroDivisionError:
        # a printed product range reaches the factor 1 - q^0
        return math.nan
    return sign * math.sqrt(float(evaluate_at(sq, Fraction(q0))))


def j1_monomials(max_degree: int) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    """Balanced normal monomials with n1, m1 >= 1 up to the given degree."""
    out = []
    rng = range(max_degree + 1)
    for n4 in rng:
        for n3 in rng:
            for n2 in rng:
                for n1 in range(1, max_degree + 1):
                    for m1 in range(1, max_degree + 1):
                        for m2 in rng:
                            for m3 in rng:
                                for m4 in rng:
                                    ni, mi = (n1, n2, n3, n4), (m1, m2, m3, m4)
                                    if sum(ni) + sum(mi) > max_degree or n4 * m4:
                                        continue
                                    if is_balanced(ni, mi):
                                        out.append((ni, mi))
    return out


# ---------------------------------------------------------------------------


def trace_z1z1star(q0, cutoff: int) -> Fraction:
    """Partial trace of z1 z1^* over the box [0, cutoff)^3."""
    q0 = Fraction(q0)
    s = sum(q0 ** (2 * j) for j in range(cutoff))
    return s**3


@dataclass
class RelationResult:
    label: str
    residual: float
    passed: bool


def check_relations(q0, cutoff: int, tol: float = 1e-10) -> list[RelationResult]:
    if cutoff < 4:
        raise ValueError("relation check needs cutoff >= 4")
    out = []
    for label, rel in sphere_relations():
        op = rep_combination(rel, q0, cutoff)
        res = op.interior_residual()
        out.append(RelationResult(label, res, res <= tol))
    return out


def homomorphism_residual(w: Sequence[int], q0, cutoff: int) -> float:
    from .ncalg import normal_form

    lhs = rep_element(normal_form(tuple(w)), q0, cutoff)
    rhs = rep_word(w, q0, cutoff)
    diff = lhs - rhs
    diff.degree = len(w)
    return diff.interior_residual()
