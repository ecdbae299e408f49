"""Normal ordering in the polynomial *-algebra of the quantum 7-sphere.

Letters are nonzero ints: ``+i`` is z_i and ``-i`` is z_i^*, for i in 1..4.
A normal monomial is the exponent 8-tuple (n4, n3, n2, n1, m1, m2, m3, m4) of

    z4*^n4 z3*^n3 z2*^n2 z1*^n1 z1^m1 z2^m2 z3^m3 z4^m4,   n4 * m4 == 0.

Two reduction paths are provided.  ``normal_form`` folds a word letter by
letter through a cached monomial-times-letter product and is the default.
``reduce_word`` runs the plain rewriting system with a pluggable redex choice;
it exists to test confluence and termination against the fast path.
"""
from __future__ import annotations

import heapq
import random
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Iterable, Iterator, Mapping, Sequence

from .scalar import ONE, ZERO, QRational, qpow

Letter = int
Word = tuple[int, ...]
NormalMonomial = tuple[int, int, int, int, int, int, int, int]

UNIT: NormalMonomial = (0,) * 8
_ORDER = (-4, -3, -2, -1, 1, 2, 3, 4)
_SLOT = {l: s for s, l in enumerate(_ORDER)}
_ONE_MINUS_Q2 = ONE - qpow(2)

MU_CHARGE = {1: 1, 2: -1, 3: -1, 4: 1}


def check_letter(l: int) -> int:
    if l == 0 or abs(l) > 4:
        raise ValueError(f"invalid letter {l}")
    return l


def letter_name(l: int) -> str:
    return f"z{abs(l)}" + ("'" if l < 0 else "")


def monomial_word(m: NormalMonomial) -> Word:
    out: list[int] = []
    for l, e in zip(_ORDER, m):
        out.extend([l] * e)
    return tuple(out)


def monomial_from_letter(l: int) -> NormalMonomial:
    m = [0] * 8
    m[_SLOT[check_letter(l)]] = 1
    return tuple(m)  # type: ignore[return-value]


def is_normal_word(w: Sequence[int]) -> bool:
    slots = [_SLOT[l] for l in w]
    if any(a > b for a, b in zip(slots, slots[1:])):
        return False
    return not (-4 in w and 4 in w)


def word_to_monomial(w: Sequence[int]) -> NormalMonomial:
    if not is_normal_word(w):
        raise ValueError(f"word {tuple(w)} is not normal")
    m = [0] * 8
    for l in w:
        m[_SLOT[l]] += 1
    return tuple(m)  # type: ignore[return-value]


def adjoint_word(w: Sequence[int]) -> Word:
    return tuple(-l for l in reversed(w))


def adjoint_monomial(m: NormalMonomial) -> NormalMonomial:
    return m[::-1]  # type: ignore[return-value]


def mu_weight(m: NormalMonomial) -> int:
    n4, n3, n2, n1, m1, m2, m3, m4 = m
    return (m1 + m4 - m2 - m3) - (n1 + n4 - n2 - n3)


def gauge_weight(m: NormalMonomial) -> int:
    return sum(m[4:]) - sum(m[:4])


def degree(m: NormalMonomial) -> int:
    return sum(m)


# ---------------------------------------------------------------------------
# rewrite rules on adjacent pairs and the z4* W z4 contraction


def pair_rule(x: int, y: int) -> list[tuple[QRational, Word]] | None:
    """Rewrite of the adjacent pair ``x y``; None when already in order."""
    if _SLOT[x] <= _SLOT[y]:
        return None
    if x > 0 and y > 0:  # R1
        return [(qpow(-1), (y, x))]
    if x < 0 and y < 0:  # R2
        return [(qpow(-1), (y, x))]
    # x unstarred, y starred
    i, j = x, -y
    if i != j:  # R3
        return [(qpow(-1), (y, x))]
    if i < 4:  # R4
        return [(ONE, (y, x))] + [(-_ONE_MINUS_Q2, (l, -l)) for l in range(1, i)]
    return [(ONE, ())] + [(-ONE, (l, -l)) for l in range(1, 4)]  # R5


def contract_rule(middle: Sequence[int]) -> list[tuple[QRational, Word]]:
    """R6: z4* W z4 with W free of 4-letters."""
    w = tuple(middle)
    k = len(w)
    return [(qpow(k), w)] + [(-qpow(k + 2), (l, -l) + w) for l in range(1, 4)]


def redexes(w: Sequence[int]) -> list[tuple[int, int]]:
    """All redex positions as (start, end) spans, end exclusive."""
    out = []
    for p in range(len(w) - 1):
        if _SLOT[w[p]] > _SLOT[w[p + 1]]:
            out.append((p, p + 2))
    for p, l in enumerate(w):
        if l != -4:
            continue
        for r in range(p + 1, len(w)):
            if w[r] == 4:
                out.append((p, r + 1))
                break
            if abs(w[r]) == 4:
                break
    return out


def rewrite_at(w: Word, span: tuple[int, int]) -> list[tuple[QRational, Word]]:
    p, r = span
    if r - p == 2 and _SLOT[w[p]] > _SLOT[w[p + 1]]:
        rep = pair_rule(w[p], w[p + 1])
    else:
        rep = contract_rule(w[p + 1 : r - 1])
    assert rep is not None
    return [(c, w[:p] + v + w[r:]) for c, v in rep]


def _measure(w: Word, base: int = 8) -> tuple[int, int, int]:
    fours = sum(1 for l in w if abs(l) == 4)
    weight = sum(base ** abs(l) for l in w)
    keys = [(0, l) if l < 0 else (1, l) for l in w]
    inv = sum(1 for a in range(len(keys)) for b in range(a + 1, len(keys)) if keys[a] > keys[b])
    return fours, weight, inv


Strategy = Callable[[Word, list], tuple[int, int]]


def leftmost(w: Word, spans: list) -> tuple[int, int]:
    return min(spans)


def rightmost(w: Word, spans: list) -> tuple[int, int]:
    return max(spans, key=lambda s: (s[1], s[0]))


def random_strategy(rng: random.Random) -> Strategy:
    def pick(w: Word, spans: list) -> tuple[int, int]:
        return rng.choice(sorted(spans))

    return pick


@dataclass
class ReductionStats:
    steps: int = 0
    max_depth: int = 0


def reduce_word(
    terms: Mapping[Word, QRational] | Word,
    strategy: Strategy = leftmost,
    stats: ReductionStats | None = None,
) -> "Element":
    """Reduce a formal combination of words with the plain rewriting system.

    Terms are processed largest-measure first so equal words merge before
    either is rewritten again.
    """
    if isinstance(terms, tuple):
        terms = {terms: ONE}
    stats = stats if stats is not None else ReductionStats()
    pending: dict[Word, QRational] = {}
    depth: dict[Word, int] = {}
    heap: list = []

    def push(w: Word, c: QRational, d: int) -> None:
        if w in pending:
            pending[w] = pending[w] + c
            depth[w] = max(depth[w], d)
            return
        pending[w] = c
        depth[w] = d
        f, wt, inv = _measure(w)
        heapq.heappush(heap, ((-f, -wt, -inv), w))

    for w, c in terms.items():
        push(tuple(check_letter(l) for l in w), QRational.coerce(c), 0)

    out: dict[NormalMonomial, QRational] = {}
    while heap:
        _, w = heapq.heappop(heap)
        c = pending.pop(w)
        d = depth.pop(w)
        stats.max_depth = max(stats.max_depth, d)
        if c.is_zero():
            continue
        spans = redexes(w)
        if not spans:
            m = word_to_monomial(w)
            out[m] = out.get(m, ZERO) + c
            continue
        stats.steps += 1
        for c2, w2 in rewrite_at(w, strategy(w, spans)):
            push(w2, c * c2, d + 1)
    return Element(out)


# ---------------------------------------------------------------------------
# fast path: cached monomial * letter


@lru_cache(maxsize=None)
def mono_times_letter(m: NormalMonomial, l: int) -> tuple[tuple[NormalMonomial, QRational], ...]:
    w = monomial_word(m)
    if not w:
        return ((monomial_from_letter(l), ONE),)
    if l == 4 and m[0] > 0:
        # z4*^{n4} W z4 with m4 == 0
        mid = w[m[0] :]
        head = (-4,) * (m[0] - 1)
        acc: dict[NormalMonomial, QRational] = {}
        for c, v in contract_rule(mid):
            _accumulate(acc, fold_word(head + v), c)
        return tuple(acc.items())
    rule = pair_rule(w[-1], l)
    if rule is None:
        return ((word_to_monomial(w + (l,)), ONE),)
    prefix = word_to_monomial(w[:-1])
    acc = {}
    for c, v in rule:
        part: dict[NormalMonomial, QRational] = {prefix: ONE}
        for x in v:
            part = _times_letter(part, x)
        _accumulate(acc, part, c)
    return tuple(acc.items())


def _accumulate(acc: dict, part: Mapping[NormalMonomial, QRational], c: QRational) -> None:
    for k, v in part.items():
        s = acc.get(k, ZERO) + c * v
        if s.is_zero():
            acc.pop(k, None)
        else:
            acc[k] = s


def _times_letter(terms: Mapping[NormalMonomial, QRational], l: int) -> dict:
    acc: dict[NormalMonomial, QRational] = {}
    for m, c in terms.items():
        for m2, c2 in mono_times_letter(m, l):
            s = acc.get(m2, ZERO) + c * c2
            if s.is_zero():
                acc.pop(m2, None)
            else:
                acc[m2] = s
    return acc


def fold_word(w: Iterable[int]) -> dict[NormalMonomial, QRational]:
    terms: dict[NormalMonomial, QRational] = {UNIT: ONE}
    for l in w:
        terms = _times_letter(terms, check_letter(l))
    return terms


@lru_cache(maxsize=200_000)
def mono_product(a: NormalMonomial, b: NormalMonomial) -> tuple[tuple[NormalMonomial, QRational], ...]:
    terms: dict[NormalMonomial, QRational] = {a: ONE}
    for l in monomial_word(b):
        terms = _times_letter(terms, l)
    return tuple(terms.items())


def normal_form(x: "Word | Mapping[Word, QRational] | Element") -> "Element":
    if isinstance(x, Element):
        return x
    if isinstance(x, tuple):
        return Element(fold_word(x))
    acc: dict[NormalMonomial, QRational] = {}
    for w, c in x.items():
        _accumulate(acc, fold_word(w), QRational.coerce(c))
    return Element(acc)


# ---------------------------------------------------------------------------


class Element:
    """Finite QRational combination of normal monomials (immutable)."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[NormalMonomial, QRational] | None = None):
        clean = {}
        for m, c in (terms or {}).items():
            c = QRational.coerce(c)
            if not c.is_zero():
                clean[tuple(m)] = c
        self.terms: dict[NormalMonomial, QRational] = clean

    @classmethod
    def scalar(cls, c) -> "Element":
        return cls({UNIT: QRational.coerce(c)})

    @classmethod
    def letter(cls, l: int) -> "Element":
        return cls({monomial_from_letter(l): ONE})

    @classmethod
    def monomial(cls, m: Sequence[int], c=ONE) -> "Element":
        m = tuple(m)
        if len(m) != 8 or min(m) < 0 or (m[0] and m[7]):
            raise ValueError(f"not a normal monomial: {m}")
        return cls({m: c})  # type: ignore[dict-item]

    @classmethod
    def word(cls, w: Sequence[int], c=ONE) -> "Element":
        return normal_form(tuple(w)) * c

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __iter__(self) -> Iterator[tuple[NormalMonomial, QRational]]:
        return iter(sorted(self.terms.items()))

    def __len__(self) -> int:
        return len(self.terms)

    def coefficient(self, m: Sequence[int]) -> QRational:
        return self.terms.get(tuple(m), ZERO)  # type: ignore[arg-type]

    def _coerce(self, other) -> "Element":
        if isinstance(other, Element):
            return other
        return Element.scalar(other)

    def __add__(self, other) -> "Element":
        other = self._coerce(other)
        acc = dict(self.terms)
        _accumulate(acc, other.terms, ONE)
        return Element(acc)

    __radd__ = __add__

    def __neg__(self) -> "Element":
        return Element({m: -c for m, c in self.terms.items()})

    def __sub__(self, other) -> "Element":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "Element":
        return self._coerce(other) - self

    def scale(self, c) -> "Element":
        c = QRational.coerce(c)
        return Element({m: c * v for m, v in self.terms.items()})

    def __mul__(self, other) -> "Element":
        if not isinstance(other, Element):
            return self.scale(other)
        acc: dict[NormalMonomial, QRational] = {}
        for a, ca in self.terms.items():
            for b, cb in other.terms.items():
                _accumulate(acc, dict(mono_product(a, b)), ca * cb)
        return Element(acc)

    def __rmul__(self, other) -> "Element":
        return self.scale(other)

    def __pow__(self, e: int) -> "Element":
        if e < 0:
            raise ValueError("negative power of an algebra element")
        out = Element.scalar(1)
        for _ in range(e):
            out = out * self
        return out

    def adjoint(self) -> "Element":
        return Element({adjoint_monomial(m): c for m, c in self.terms.items()})

    @property
    def star(self) -> "Element":
        return self.adjoint()

    def __eq__(self, other) -> bool:
        if not isinstance(other, Element):
            try:
                other = Element.scalar(other)
            except TypeError:
                return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def weights(self, kind: str = "mu") -> set[int]:
        f = mu_weight if kind == "mu" else gauge_weight
        return {f(m) for m in self.terms}

    def __str__(self) -> str:
        from .parse import render

        return render(self)

    def __repr__(self) -> str:
        return f"Element({str(self)!r})"


def z(i: int) -> Element:
    return Element.letter(i)


def zs(i: int) -> Element:
    return Element.letter(-i)


def adjoint(x: Element) -> Element:
    return x.adjoint()


def multiply(x: Element, y: Element) -> Element:
    return x * y


def weight_component(x: Element, w: int, kind: str = "mu") -> Element:
    f = mu_weight if kind == "mu" else gauge_weight
    return Element({m: c for m, c in x.terms.items() if f(m) == w})


def is_mu_invariant(x: Element) -> bool:
    return weight_component(x, 0) == x


def quotient_kill(x: Element, kill: Iterable[int]) -> Element:
    kill = set(kill)
    if not kill <= {1, 2, 3}:
        raise ValueError("only z1, z2, z3 may be killed")
    bad = [s for s, l in enumerate(_ORDER) if abs(l) in kill]
    return Element({m: c for m, c in x.terms.items() if all(m[s] == 0 for s in bad)})


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class AlgMatrix:
    rows: tuple[tuple[Element, ...], ...]

    @classmethod
    def build(cls, rows: Iterable[Iterable]) -> "AlgMatrix":
        out = tuple(tuple(e if isinstance(e, Element) else Element.scalar(e) for e in r) for r in rows)
        if out and len({len(r) for r in out}) != 1:
            raise ValueError("ragged matrix")
        return cls(out)

    @classmethod
    def identity(cls, n: int) -> "AlgMatrix":
        return cls.build([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), len(self.rows[0]) if self.rows else 0

    def __getitem__(self, ij: tuple[int, int]) -> Element:
        i, j = ij
        return self.rows[i][j]

    def __matmul__(self, other: "AlgMatrix") -> "AlgMatrix":
        n, k = self.shape
        k2, p = other.shape
        if k != k2:
            raise ValueError("shape mismatch")
        out = []
        for i in range(n):
            row = []
            for j in range(p):
                acc = Element()
                for t in range(k):
                    a, b = self.rows[i][t], other.rows[t][j]
                    if a and b:
                        acc = acc + a * b
                row.append(acc)
            out.append(tuple(row))
        return AlgMatrix(tuple(out))

    def __sub__(self, other: "AlgMatrix") -> "AlgMatrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return AlgMatrix(tuple(tuple(a - b for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows)))

    def adjoint(self) -> "AlgMatrix":
        n, p = self.shape
        return AlgMatrix(tuple(tuple(self.rows[i][j].adjoint() for i in range(n)) for j in range(p)))

    def map(self, f: Callable[[Element], Element]) -> "AlgMatrix":
        return AlgMatrix(tuple(tuple(f(e) for e in r) for r in self.rows))

    def is_zero(self) -> bool:
        return all(e.is_zero() for r in self.rows for e in r)

    def trace(self) -> Element:
        n, p = self.shape
        if n != p:
            raise ValueError("trace of a non-square matrix")
        acc = Element()
        for i in range(n):
            acc = acc + self.rows[i][i]
        return acc

    def __str__(self) -> str:
        return "\n".join("[ " + " , ".join(str(e) for e in r) + " ]" for r in self.rows)


# ---------------------------------------------------------------------------
# defining relations, as (label, lhs - rhs) in the free algebra


def sphere_relations() -> list[tuple[str, dict[Word, QRational]]]:
    rels: list[tuple[str, dict[Word, QRational]]] = []
    for i in range(1, 5):
        for j in range(i + 1, 5):
            rels.append((f"z{i}z{j}=q z{j}z{i}", {(i, j): ONE, (j, i): -qpow(1)}))
    for i in range(1, 5):
        for j in range(1, 5):
            if i != j:
                rels.append((f"z{j}'z{i}=q z{i}z{j}'", {(-j, i): ONE, (i, -j): -qpow(1)}))
    for k in range(1, 5):
        r: dict[Word, QRational] = {(-k, k): ONE, (k, -k): -ONE}
        for j in range(1, k):
            r[(j, -j)] = -_ONE_MINUS_Q2
        rels.append((f"z{k}'z{k} commutator", r))
    rels.append(("sphere", {(k, -k): ONE for k in range(1, 5)} | {(): -ONE}))
    return rels


def verify_sphere_relations() -> dict[str, bool]:
    return {label: normal_form(r).is_zero() for label, r in sphere_relations()}
