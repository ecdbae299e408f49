"""Smith normal form, graph K-theory and the positive cones of the AF picture."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

from .graphck import Graph

Matrix = list[list[int]]


def _identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def _matmul(A: Matrix, B: Matrix) -> Matrix:
    if not A:
        return []
    inner = len(B)
    cols = len(B[0]) if B else 0
    return [[sum(A[i][t] * B[t][j] for t in range(inner)) for j in range(cols)] for i in range(len(A))]


def smith_normal_form(M: Sequence[Sequence[int]]) -> tuple[Matrix, Matrix, Matrix]:
    """Return (U, D, V) with D = U M V, U and V unimodular, D diagonal with d1 | d2 | ..."""
    D = [list(map(int, r)) for r in M]
    m = len(D)
    n = len(D[0]) if m else 0
    U, V = _identity(m), _identity(n)

    def swap_rows(i, j):
        D[i], D[j] = D[j], D[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for R in D:
            R[i], R[j] = R[j], R[i]
        for R in V:
            R[i], R[j] = R[j], R[i]

    def add_row(src, dst, f):  # row_dst += f * row_src
        D[dst] = [a + f * b for a, b in zip(D[dst], D[src])]
        U[dst] = [a + f * b for a, b in zip(U[dst], U[src])]

    def add_col(src, dst, f):
        for R in D:
            R[dst] += f * R[src]
        for R in V:
            R[dst] += f * R[src]

    t = 0
    while t < min(m, n):
        nz = [(abs(D[i][j]), i, j) for i in range(t, m) for j in range(t, n) if D[i][j]]
        if not nz:
            break
        _, i, j = min(nz)
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            done = True
            for i in range(t + 1, m):
                if D[i][t]:
                    add_row(t, i, -(D[i][t] // D[t][t]))
                    if D[i][t]:
                        swap_rows(t, i)
                        done = False
            for j in range(t + 1, n):
                if D[t][j]:
                    add_col(t, j, -(D[t][j] // D[t][t]))
                    if D[t][j]:
                        swap_cols(t, j)
                        done = False
            if not done:
                continue
            # enforce divisibility of the remaining block
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n) if D[i][j] % D[t][t]), None)
            if bad is None:
                break
            add_row(bad[0], t, 1)
        if D[t][t] < 0:
            D[t] = [-a for a in D[t]]
            U[t] = [-a for a in U[t]]
        t += 1
    return U, D, V


def snf_diagonal(M: Sequence[Sequence[int]]) -> list[int]:
    _, D, _ = smith_normal_form(M)
    return [D[i][i] for i in range(min(len(D), len(D[0]) if D else 0))]


def determinant(M: Sequence[Sequence[int]]) -> int:
    n = len(M)
    if n == 0:
        return 1
    from fractions import Fraction

    A = [[Fraction(x) for x in r] for r in M]
    det = Fraction(1)
    for c in range(n):
        p = next((r for r in range(c, n) if A[r][c] != 0), None)
        if p is None:
            return 0
        if p != c:
            A[c], A[p] = A[p], A[c]
            det = -det
        det *= A[c][c]
        for r in range(c + 1, n):
            f = A[r][c] / A[c][c]
            A[r] = [a - f * b for a, b in zip(A[r], A[c])]
    return int(det)


@dataclass(frozen=True)
class KGroups:
    k0_rank: int
    k0_torsion: tuple[int, ...]
    k1_rank: int

    def __str__(self) -> str:
        parts = [f"Z^{self.k0_rank}"] if self.k0_rank else []
        parts += [f"Z/{d}" for d in self.k0_torsion]
        k0 = " + ".join(parts) or "0"
        k1 = f"Z^{self.k1_rank}" if self.k1_rank else "0"
        return f"K0 = {k0}, K1 = {k1}"


def k_theory_matrix(g: Graph) -> tuple[Matrix, list[str]]:
    """(A^t - I) with rows over all vertices and columns over regular vertices."""
    A = g.adjacency()
    regular = [v for v in g.vertices if g.is_regular(v)]
    idx = {v: i for i, v in enumerate(g.vertices)}
    M = []
    for w in g.vertices:
        row = []
        for v in regular:
            a = A[idx[v]][idx[w]]
            assert a is not None
            row.append(a - (1 if v == w else 0))
        M.append(row)
    return M, regular


def k_theory(g: Graph) -> KGroups:
    M, regular = k_theory_matrix(g)
    rows, cols = len(g.vertices), len(regular)
    diag = snf_diagonal(M) if cols else []
    rank = sum(1 for d in diag if d)
    torsion = tuple(d for d in diag if d > 1)
    return KGroups(rows - rank, torsion, cols - rank)


# ---------------------------------------------------------------------------
# positive cones in the coordinates of the generator lists


def cone_G(v: Sequence[int]) -> bool:
    if len(v) != 4:
        raise ValueError("C*(G) classes have four coordinates")
    n1, n2, n3, n4 = v
    return (
        min(v) >= 0
        or n1 >= 1
        or (n1 >= 0 and n2 >= 1)
        or (n1 >= 0 and n2 >= 0 and n3 >= 1)
    )


def cone_F(v: Sequence[int]) -> bool:
    if len(v) != 3:
        raise ValueError("C*(F) classes have three coordinates")
    n1, n2, n3 = v
    return min(v) >= 0 or n1 >= 1 or (n1 >= 0 and n2 >= 1)


def cone_CP3(v: Sequence[int]) -> bool:
    """Positive classes of the total space: a nonzero positive quotient class with any
    multiple of the minimal projection, or a nonnegative multiple of it alone."""
    if len(v) != 4:
        raise ValueError("total-space classes have four coordinates")
    head, n4 = tuple(v[:3]), v[3]
    if any(head):
        return cone_F(head)
    return n4 >= 0


CONES = {"G": cone_G, "F": cone_F, "CP3": cone_CP3}


def positive_cone(v: Sequence[int], algebra: str) -> bool:
    try:
        return CONES[algebra](v)
    except KeyError:
        raise ValueError(f"unknown algebra {algebra}") from None


def order_iso_check(B: int) -> bool:
    if B < 1:
        raise ValueError("box bound must be positive")
    unit = (1, 0, 0, 0)
    if not (cone_G(unit) and cone_CP3(unit)):
        return False
    box = range(-B, B + 1)
    return all(cone_G(v) == cone_CP3(v) for v in itertools.product(box, repeat=4))
