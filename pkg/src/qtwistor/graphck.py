"""Directed graphs and exact Cuntz-Krieger computations.

Terms S_a S_b^* are keyed by pairs of paths with a common range.  Equality is
decided by pushing every term down to a common left length with CK3, which
is only available at vertices emitting finitely many (and at least one) edges.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from pathlib import Path as FsPath
from typing import Hashable, Iterable, Mapping, Sequence

Edge = tuple[str, Hashable]


class CKError(ValueError):
    pass


@dataclass(frozen=True)
class EdgeFamily:
    name: str
    src: str
    dst: str
    mult: int | None  # None means countably infinite
    mu_weight: int = 1

    def indices(self, bound: int | None = None) -> range:
        if self.mult is not None:
            return range(self.mult)
        if bound is None:
            raise CKError(f"family {self.name} is infinite")
        return range(bound)


@dataclass(frozen=True)
class Graph:
    name: str
    vertices: tuple[str, ...]
    families: tuple[EdgeFamily, ...]

    def __post_init__(self):
        vs = set(self.vertices)
        for f in self.families:
            if f.src not in vs or f.dst not in vs:
                raise CKError(f"family {f.name} uses an undeclared vertex")
        if len({f.name for f in self.families}) != len(self.families):
            raise CKError("duplicate family names")

    @property
    def family(self) -> dict[str, EdgeFamily]:
        return _family_index(self)

    def out_families(self, v: str) -> list[EdgeFamily]:
        return [f for f in self.families if f.src == v]

    def is_regular(self, v: str) -> bool:
        out = self.out_families(v)
        return bool(out) and all(f.mult is not None for f in out)

    def out_edges(self, v: str) -> list[Edge]:
        if not self.is_regular(v):
            kind = "a sink" if not self.out_families(v) else "an infinite emitter"
            raise CKError(f"vertex {v} is {kind}")
        return [(f.name, i) for f in self.out_families(v) for i in f.indices()]

    def adjacency(self) -> list[list[int | None]]:
        idx = {v: i for i, v in enumerate(self.vertices)}
        A: list[list[int | None]] = [[0] * len(self.vertices) for _ in self.vertices]
        for f in self.families:
            i, j = idx[f.src], idx[f.dst]
            if f.mult is None or A[i][j] is None:
                A[i][j] = None
            else:
                A[i][j] += f.mult
        return A

    def edge_src(self, e: Edge) -> str:
        return self.family[e[0]].src

    def edge_dst(self, e: Edge) -> str:
        return self.family[e[0]].dst

    def edge(self, name: str, index: Hashable = 0) -> Edge:
        fam = self.family[name]
        if fam.mult is not None and not (isinstance(index, int) and 0 <= index < fam.mult):
            raise CKError(f"edge index {index} out of range for {name}")
        return (name, index)

    # -- paths --
    def vertex(self, v: str) -> "Path":
        if v not in self.vertices:
            raise CKError(f"unknown vertex {v}")
        return Path(v, (), v)

    def path(self, *edges: Edge | str) -> "Path":
        es = tuple(e if isinstance(e, tuple) else (e, 0) for e in edges)
        if not es:
            raise CKError("empty edge list; use vertex()")
        for a, b in zip(es, es[1:]):
            if self.edge_dst(a) != self.edge_src(b):
                raise CKError(f"edges {a} and {b} are not composable")
        return Path(self.edge_src(es[0]), es, self.edge_dst(es[-1]))

    def paths_from(self, v: str, length: int) -> list["Path"]:
        out = [self.vertex(v)]
        for _ in range(length):
            out = [p.extend(e, self.edge_dst(e)) for p in out for e in self.out_edges(p.rng)]
        return out


@lru_cache(maxsize=None)
def _family_index(g: Graph) -> dict[str, EdgeFamily]:
    return {f.name: f for f in g.families}


@dataclass(frozen=True, order=True)
class Path:
    src: str
    edges: tuple[Edge, ...]
    rng: str

    def __len__(self) -> int:
        return len(self.edges)

    def extend(self, e: Edge, dst: str) -> "Path":
        return Path(self.src, self.edges + (e,), dst)

    def concat(self, other: "Path") -> "Path":
        if self.rng != other.src:
            raise CKError("paths are not composable")
        return Path(self.src, self.edges + other.edges, other.rng)

    def strip_prefix(self, prefix: "Path") -> "Path | None":
        """The path p' with self = prefix p', or None."""
        if prefix.src != self.src or self.edges[: len(prefix)] != prefix.edges:
            return None
        return Path(prefix.rng, self.edges[len(prefix) :], self.rng)

    def __str__(self) -> str:
        if not self.edges:
            return self.src
        parts = []
        for name, i in self.edges:
            parts.append(name if i == 0 else f"{name}[{i}]")
        return ".".join(parts)


Key = tuple[Path, Path]


class CKElement:
    """Finite combination of S_a S_b^* over one graph."""

    __slots__ = ("graph", "terms")

    def __init__(self, graph: Graph, terms: Mapping[Key, Fraction | int] | None = None):
        self.graph = graph
        clean: dict[Key, Fraction] = {}
        for (a, b), c in (terms or {}).items():
            if a.rng != b.rng:
                raise CKError(f"range mismatch in S_{a} S_{b}^*")
            if c != 0:
                clean[(a, b)] = Fraction(c)
        self.terms = clean

    @classmethod
    def vertex(cls, g: Graph, v: str) -> "CKElement":
        p = g.vertex(v)
        return cls(g, {(p, p): 1})

    @classmethod
    def s(cls, g: Graph, a: Path, b: Path | None = None) -> "CKElement":
        """S_a S_b^* (b defaults to the range vertex)."""
        b = g.vertex(a.rng) if b is None else b
        return cls(g, {(a, b): 1})

    def _check(self, other: "CKElement") -> None:
        if other.graph != self.graph:
            raise CKError("elements live over different graphs")

    def __add__(self, other: "CKElement") -> "CKElement":
        self._check(other)
        acc = dict(self.terms)
        for k, c in other.terms.items():
            acc[k] = acc.get(k, 0) + c
        return CKElement(self.graph, acc)

    def __neg__(self) -> "CKElement":
        return CKElement(self.graph, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other: "CKElement") -> "CKElement":
        return self + (-other)

    def scale(self, c) -> "CKElement":
        return CKElement(self.graph, {k: c * v for k, v in self.terms.items()})

    def __mul__(self, other: "CKElement") -> "CKElement":
        if not isinstance(other, CKElement):
            return self.scale(other)
        self._check(other)
        acc: dict[Key, Fraction] = {}
        for (a, b), c1 in self.terms.items():
            for (g, d), c2 in other.terms.items():
                key = _term_product(a, b, g, d)
                if key is not None:
                    acc[key] = acc.get(key, 0) + c1 * c2
        return CKElement(self.graph, acc)

    def adjoint(self) -> "CKElement":
        return CKElement(self.graph, {(b, a): c for (a, b), c in self.terms.items()})

    def is_zero(self) -> bool:
        return not self.terms

    def max_left_length(self) -> int:
        return max((len(a) for a, _ in self.terms), default=0)

    def weights(self, kind: str = "mu") -> set[int]:
        return {path_weight(self.graph, a, kind) - path_weight(self.graph, b, kind) for a, b in self.terms}

    def __pow__(self, e: int) -> "CKElement":
        if e < 1:
            raise ValueError("use a vertex projection for the zeroth power")
        out = self
        for _ in range(e - 1):
            out = out * self
        return out

    def __repr__(self) -> str:
        parts = [f"{c}*S[{a}]S[{b}]^*" for (a, b), c in sorted(self.terms.items())]
        return "CKElement(" + " + ".join(parts) + ")"


def _term_product(a: Path, b: Path, g: Path, d: Path) -> Key | None:
    rest = g.strip_prefix(b)
    if rest is not None:
        return (a.concat(rest), d)
    rest = b.strip_prefix(g)
    if rest is not None:
        return (a, d.concat(rest))
    return None


def ck_multiply(x: CKElement, y: CKElement) -> CKElement:
    return x * y


def ck_adjoint(x: CKElement) -> CKElement:
    return x.adjoint()


def expand_to_depth(x: CKElement, D: int) -> CKElement:
    g = x.graph
    acc: dict[Key, Fraction] = {}
    stack = list(x.terms.items())
    while stack:
        (a, b), c = stack.pop()
        if len(a) >= D:
            acc[(a, b)] = acc.get((a, b), 0) + c
            continue
        for e in g.out_edges(a.rng):
            dst = g.edge_dst(e)
            stack.append(((a.extend(e, dst), b.extend(e, dst)), c))
    return CKElement(g, acc)


def ck_equals(x: CKElement, y: CKElement) -> bool:
    diff = x - y
    if diff.is_zero():
        return True
    return expand_to_depth(diff, diff.max_left_length()).is_zero()


def path_weight(g: Graph, p: Path, kind: str = "mu") -> int:
    if kind == "gauge":
        return len(p)
    fam = g.family
    return sum(fam[name].mu_weight for name, _ in p.edges)


def is_homogeneous(x: CKElement, kind: str = "mu") -> bool:
    return len(x.weights(kind)) <= 1


# ---------------------------------------------------------------------------
# truncated path representation: S_a S_b^* xi_mu = xi_{a mu'} when mu = b mu'


def act_on_path(x: CKElement, mu: Path) -> dict[Path, Fraction]:
    out: dict[Path, Fraction] = {}
    for (a, b), c in x.terms.items():
        rest = mu.strip_prefix(b)
        if rest is not None:
            p = a.concat(rest)
            out[p] = out.get(p, 0) + c
    return {p: c for p, c in out.items() if c != 0}


def path_rep_equal(x: CKElement, y: CKElement, lengths: Iterable[int], vertices: Iterable[str] | None = None) -> bool:
    """Compare x and y on basis vectors xi_mu for regular-graph paths of the given lengths."""
    g = x.graph
    vs = list(vertices) if vertices is not None else list(g.vertices)
    for v in vs:
        for L in lengths:
            for mu in g.paths_from(v, L):
                if act_on_path(x, mu) != act_on_path(y, mu):
                    return False
    return True


# ---------------------------------------------------------------------------
# presets


def graph_L(n: int, mu_plus: Iterable[int] | None = None) -> Graph:
    """L_{2n+1}: vertices v1..v_{n+1}, one edge e_ij for each i <= j."""
    plus = set(range(1, n + 2)) if mu_plus is None else set(mu_plus)
    vs = tuple(f"v{i}" for i in range(1, n + 2))
    fams = tuple(
        EdgeFamily(f"e{i}{j}", f"v{i}", f"v{j}", 1, 1 if i in plus else -1)
        for i in range(1, n + 2)
        for j in range(i, n + 2)
    )
    return Graph(f"L{2 * n + 1}", vs, fams)


def graph_L3() -> Graph:
    return graph_L(1)


def graph_L5() -> Graph:
    return graph_L(2, mu_plus={1})


def graph_L7() -> Graph:
    return graph_L(3, mu_plus={1, 4})


def graph_F() -> Graph:
    fams = (
        EdgeFamily("alpha", "w1", "w2", None, 0),
        EdgeFamily("beta", "w1", "w3", None, 0),
        EdgeFamily("delta", "w1", "w3", None, 0),
        EdgeFamily("gamma", "w2", "w3", None, 0),
    )
    return Graph("F", ("w1", "w2", "w3"), fams)


def graph_G() -> Graph:
    vs = tuple(f"v{i}" for i in range(1, 5))
    fams = tuple(EdgeFamily(f"f{i}{j}", f"v{i}", f"v{j}", None, 0) for i in range(1, 5) for j in range(i + 1, 5))
    return Graph("G", vs, fams)


PRESETS = {"L3": graph_L3, "L5": graph_L5, "L7": graph_L7, "F": graph_F, "G": graph_G}


def load_graph(source: str | dict) -> Graph:
    if isinstance(source, str):
        if source in PRESETS:
            return PRESETS[source]()
        data = json.loads(FsPath(source).read_text())
    else:
        data = source
    try:
        vertices = tuple(str(v) for v in data["vertices"])
        fams = []
        for e in data["edges"]:
            mult = e.get("mult", 1)
            mult = None if mult in ("inf", None) else int(mult)
            if mult is not None and mult < 1:
                raise CKError(f"multiplicity of {e['name']} must be positive")
            fams.append(EdgeFamily(str(e["name"]), str(e["src"]), str(e["dst"]), mult, int(e.get("mu_weight", 1))))
    except (KeyError, TypeError) as err:
        raise CKError(f"malformed graph description: {err}") from err
    return Graph(str(data.get("name", "custom")), vertices, tuple(fams))


# ---------------------------------------------------------------------------
# the isomorphism from C*(F) onto the fixed points of C*(L5)


def _loop(g: Graph, i: int, times: int) -> tuple[Edge, ...]:
    return ((f"e{i}{i}", 0),) * times


def phi_image(family: str, *idx: int) -> CKElement:
    g = graph_L5()
    if any(i < 0 for i in idx):
        raise CKError("indices must be non-negative")
    if family == "P":
        (j,) = idx
        return CKElement.vertex(g, f"v{j}")
    if family == "alpha":
        (n,) = idx
        return CKElement.s(g, g.path(*_loop(g, 1, n), "e12", *_loop(g, 2, n + 1)))
    if family == "beta":
        n, m = idx
        if m > n:
            raise CKError("beta_{n,m} needs n >= m")
        return CKElement.s(g, g.path(*_loop(g, 1, n), "e12", *_loop(g, 2, m), "e23", *_loop(g, 3, n - m)))
    if family == "delta":
        (n,) = idx
        return CKElement.s(g, g.path(*_loop(g, 1, n), "e13", *_loop(g, 3, n + 1)))
    if family == "gamma":
        (n,) = idx
        return CKElement.s(g, g.path(*_loop(g, 2, n), "e23"), g.path(*_loop(g, 3, n + 1)))
    raise CKError(f"unknown family {family}")


# source and range vertex (in F, with w_j -> v_j) of each edge family
PHI_ENDS = {"alpha": (1, 2), "beta": (1, 3), "delta": (1, 3), "gamma": (2, 3)}


def phi_edges(n_max: int) -> list[tuple[str, tuple[int, ...]]]:
    out: list[tuple[str, tuple[int, ...]]] = []
    for n in range(n_max + 1):
        out.append(("alpha", (n,)))
        out.append(("delta", (n,)))
        out.append(("gamma", (n,)))
        for m in range(n + 1):
            out.append(("beta", (n, m)))
    return out


@dataclass
class CheckRecord:
    check: str
    passed: bool
    detail: str = ""


def verify_phi_ck(n_max: int) -> list[CheckRecord]:
    if n_max < 1:
        raise CKError("n_max must be at least 1")
    g = graph_L5()
    edges = phi_edges(n_max)
    images = {e: phi_image(e[0], *e[1]) for e in edges}
    P = {j: phi_image("P", j) for j in (1, 2, 3)}
    out: list[CheckRecord] = []
    for (fam, idx), x in images.items():
        s, r = PHI_ENDS[fam]
        out.append(CheckRecord(f"CK1 {fam}{idx}", ck_equals(x.adjoint() * x, P[r])))
        out.append(CheckRecord(f"weight {fam}{idx}", x.weights() == {0}))
        out.append(CheckRecord(f"source {fam}{idx}", ck_equals(P[s] * x, x) and ck_equals(x * P[r], x)))
    for e1, e2 in itertools.combinations(edges, 2):
        x, y = images[e1], images[e2]
        if not ck_equals(x.adjoint() * y, CKElement(g)):
            out.append(CheckRecord(f"orthogonal {e1} {e2}", False))
    out.append(CheckRecord("orthogonal ranges", all(r.passed for r in out if r.check.startswith("orthogonal"))))
    for j in (1, 2, 3):
        ranges = [images[e] * images[e].adjoint() for e in edges if PHI_ENDS[e[0]][0] == j]
        if not ranges:
            continue
        rest = P[j]
        for r_ in ranges:
            rest = rest - r_
        D = max(rest.max_left_length(), 1)
        canon = expand_to_depth(rest, D)
        nonneg = all(c >= 0 for c in canon.terms.values())
        proj = ck_equals(rest * rest, rest) and ck_equals(rest.adjoint(), rest)
        out.append(CheckRecord(f"CK2 w{j}", nonneg and proj))
    return out


def fixedpoint_generators(n_max: int) -> list[CKElement]:
    """Spot list of the weight-zero generators of C*(L5) used in the surjectivity argument."""
    g = graph_L5()
    out = []
    L = lambda i, t: _loop(g, i, t)
    for n in range(n_max + 1):
        for i in (1, 2, 3):
            if n:
                p = g.path(*L(i, n))
                out.append(CKElement.s(g, p, p))
        out.append(phi_image("alpha", n))
        out.append(phi_image("delta", n))
        out.append(phi_image("gamma", n))
        for m in range(n_max + 1):
            a = g.path(*L(2, n), "e23", *L(3, m))
            b = g.path(*L(2, m), "e23", *L(3, n))
            out.append(CKElement.s(g, a, b))
            out.append(CKElement.s(g, g.path(*L(1, n), "e12", *L(2, n)), g.path(*L(1, m), "e12", *L(2, m))))
            out.append(CKElement.s(g, g.path(*L(1, n), "e13", *L(3, n)), g.path(*L(1, m), "e13", *L(3, m))))
            p = g.path(*L(1, n), "e12", *L(2, m))
            out.append(CKElement.s(g, p, p))
            p = g.path(*L(1, n), "e13", *L(3, m))
            out.append(CKElement.s(g, p, p))
            if m <= n:
                out.append(phi_image("beta", n, m))
    return out


@dataclass
class SpanResult:
    status: str  # "member", "inconclusive"
    products: int
    coefficients: dict[int, Fraction] = field(default_factory=dict)


def _solve_exact(columns: list[dict], target: dict) -> dict[int, Fraction] | None:
    """Solve sum_j x_j columns[j] = target over Q, or None if inconsistent."""
    keys = sorted(set(target).union(*[set(c) for c in columns]), key=repr)
    rows = [[Fraction(c.get(k, 0)) for c in columns] + [Fraction(target.get(k, 0))] for k in keys]
    ncol = len(columns)
    pivots = []
    r = 0
    for col in range(ncol):
        piv = next((i for i in range(r, len(rows)) if rows[i][col] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        pv = rows[r][col]
        rows[r] = [v / pv for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][col] != 0:
                f = rows[i][col]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
    if any(row[-1] != 0 and all(v == 0 for v in row[:-1]) for row in rows):
        return None
    return {col: rows[i][-1] for i, col in enumerate(pivots) if rows[i][-1] != 0}


def span_membership(x: CKElement, generators: Sequence[CKElement], max_length: int, budget: int = 5000) -> SpanResult:
    """Is x a linear combination of products of at most max_length generators?"""
    gens = list(generators) + [y.adjoint() for y in generators]
    seen: dict[frozenset, CKElement] = {}
    layer = []
    for y in gens:
        k = frozenset(y.terms.items())
        if k not in seen and not y.is_zero():
            seen[k] = y
            layer.append(y)
    for _ in range(max_length - 1):
        nxt = []
        for a in layer:
            for b in gens:
                p = a * b
                if p.is_zero():
                    continue
                k = frozenset(p.terms.items())
                if k in seen:
                    continue
                seen[k] = p
                nxt.append(p)
                if len(seen) > budget:
                    return SpanResult("inconclusive", len(seen))
        layer = nxt
    prods = list(seen.values())
    D = max([x.max_left_length()] + [p.max_left_length() for p in prods])
    canon = lambda e: expand_to_depth(e, D).terms
    sol = _solve_exact([canon(p) for p in prods], canon(x))
    if sol is None:
        return SpanResult("inconclusive", len(prods))
    return SpanResult("member", len(prods), sol)


# ---------------------------------------------------------------------------
# freeness of the twisted circle action on C*(L7)


@dataclass(frozen=True)
class TensorTerm:
    x: CKElement
    y: CKElement
    coeff: Fraction = Fraction(1)


def phi_free(terms: Sequence[TensorTerm]) -> dict[int, CKElement]:
    """Phi(sum x_j (x) y_j) = sum (x_j y_j) (x) u^{w(y_j)}, graded by the circle power."""
    out: dict[int, CKElement] = {}
    for t in terms:
        ws = t.y.weights()
        if len(ws) != 1:
            raise CKError("second tensor factor must be weight homogeneous")
        (w,) = ws
        prod = (t.x * t.y).scale(t.coeff)
        out[w] = out[w] + prod if w in out else prod
    return out


def graded_equals(lhs: Mapping[int, CKElement], rhs: Mapping[int, CKElement]) -> bool:
    for d in set(lhs) | set(rhs):
        a, b = lhs.get(d), rhs.get(d)
        g = (a or b).graph
        if not ck_equals(a or CKElement(g), b or CKElement(g)):
            return False
    return True


def _loop_name(v: str) -> str:
    i = v[1:]
    return f"e{i}{i}"


def _corrected(g: Graph, beta: Path, target: int) -> TensorTerm | None:
    """A term with x y = S_beta S_beta^* and w(y) = target, using loop powers at r(beta)."""
    v = beta.rng
    loop = _loop_name(v)
    lw = g.family[loop].mu_weight
    d = target + path_weight(g, beta)
    if d % lw == 0 and d // lw >= 0:
        t = d // lw
        lam = g.path(*((loop, 0),) * t) if t else g.vertex(v)
        # y = S_lam S_beta^*, x = S_beta S_lam^*
        return TensorTerm(CKElement.s(g, beta, lam), CKElement.s(g, lam, beta))
    if len(g.out_edges(v)) == 1:
        t = -d // lw
        lam = g.path(*((loop, 0),) * t)
        full = beta.concat(lam)
        # y = (S_beta S_lam)^*, valid since S_lam S_lam^* = P_v at a single-loop vertex
        return TensorTerm(CKElement.s(g, full), CKElement.s(g, full).adjoint())
    return None


@dataclass
class WitnessResult:
    vertex: int
    k: int
    sign: int
    scheme: str
    terms: list[TensorTerm]
    image: dict[int, CKElement]
    passed: bool


def freeness_witness(i: int, k: int, sign: int, scheme: str = "auto", max_extra: int = 3) -> WitnessResult:
    """Witness for P_{v_i} (x) u^{sign k} in the image of Phi over C*(L7).

    ``scheme`` is "loop" for the one-term loop witnesses, "printed" for the
    B1/B2/B3 partition at v2, "corrector" for the loop-power corrector over
    all paths of length k, and "auto" to pick the first applicable one.
    """
    if k < 1 or sign not in (1, -1) or i not in (1, 2, 3, 4):
        raise CKError("need k >= 1, sign = +-1 and a vertex 1..4")
    g = graph_L7()
    v = f"v{i}"
    target = {sign * k: CKElement.vertex(g, v)}
    loop = _loop_name(v)
    lw = g.family[loop].mu_weight
    schemes = [scheme] if scheme != "auto" else ["loop", "printed", "corrector"]
    for sch in schemes:
        terms = _witness_terms(g, i, k, sign, sch, lw, loop, max_extra)
        if terms is None:
            continue
        image = phi_free(terms)
        ok = graded_equals(image, target)
        if ok or scheme != "auto":
            return WitnessResult(i, k, sign, sch, terms, image, ok)
    return WitnessResult(i, k, sign, "none", [], {}, False)


def _witness_terms(g, i, k, sign, sch, lw, loop, max_extra) -> list[TensorTerm] | None:
    v = f"v{i}"
    if sch == "loop":
        lam = g.path(*((loop, 0),) * k)
        if lw == sign:
            return [TensorTerm(CKElement.s(g, lam).adjoint(), CKElement.s(g, lam))]
        if len(g.out_edges(v)) == 1:
            return [TensorTerm(CKElement.s(g, lam), CKElement.s(g, lam).adjoint())]
        return None
    if sch == "printed":
        if (i, sign) != (2, 1):
            return None
        return printed_v2_witness(k)
    # corrector with a bounded search over longer path sets
    for extra in range(max_extra + 1):
        terms = []
        for beta in g.paths_from(v, k + extra):
            t = _corrected(g, beta, sign * k)
            if t is None:
                break
            terms.append(t)
        else:
            return terms
    return None


def v2_partition(k: int) -> tuple[list[Path], list[tuple[Path, int]], list[tuple[Path, int]]]:
    """Paths of length k from v2 split as B1 (all sources in v2, v3), B2, B3 with their loop counts l."""
    g = graph_L7()
    B1, B2, B3 = [], [], []
    for beta in g.paths_from("v2", k):
        srcs = {g.edge_src(e) for e in beta.edges}
        if srcs <= {"v2", "v3"}:
            B1.append(beta)
            continue
        l = sum(1 for e in beta.edges if e[0] == "e44")
        if any(e[0] == "e34" for e in beta.edges):
            B2.append((beta, l))
        else:
            B3.append((beta, l))
    return B1, B2, B3


def printed_v2_witness(k: int, b3_power: str = "2l") -> list[TensorTerm]:
    """The three-part witness at v2; B3 correctors use alpha_{2l} (or alpha_l if requested)."""
    g = graph_L7()
    B1, B2, B3 = v2_partition(k)
    alpha = lambda t: g.path(*(("e44", 0),) * t) if t else g.vertex("v4")
    terms = [TensorTerm(CKElement.s(g, b), CKElement.s(g, b).adjoint()) for b in B1]
    for beta, l in B2:
        a = alpha(2 * l)
        terms.append(TensorTerm(CKElement.s(g, beta, a), CKElement.s(g, a, beta)))
    for beta, l in B3:
        a = alpha(2 * l if b3_power == "2l" else l)
        terms.append(TensorTerm(CKElement.s(g, beta, a), CKElement.s(g, a, beta)))
    return terms
