"""Verification suites. Each suite maps a config to a list of check records."""
from __future__ import annotations

import random
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable

from . import fockrep, graphck, instanton, ktheory, ncalg, projections
from .scalar import QRational

STATUSES = ("pass", "fail", "inconclusive")


@dataclass
class Check:
    suite: str
    check: str
    status: str
    expected: Any = None
    actual: Any = None
    residual: float | None = None
    duration: float = 0.0

    def body(self) -> dict:
        return {
            "suite": self.suite,
            "check": self.check,
            "status": self.status,
            "expected": jsonable(self.expected),
            "actual": jsonable(self.actual),
            "residual": self.residual,
        }


def jsonable(x: Any) -> Any:
    if x is None or isinstance(x, (bool, int, float, str)):
        return x
    if isinstance(x, (Fraction, QRational)):
        return str(x)
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple, set, frozenset)):
        items = sorted(x, key=repr) if isinstance(x, (set, frozenset)) else x
        return [jsonable(v) for v in items]
    return str(x)


class Recorder:
    def __init__(self, suite: str) -> None:
        self.suite = suite
        self.checks: list[Check] = []

    def add(self, check: str, ok: bool | None, expected=None, actual=None, residual=None, duration=0.0) -> None:
        status = "inconclusive" if ok is None else ("pass" if ok else "fail")
        self.checks.append(Check(self.suite, check, status, expected, actual, residual, duration))

    def equal(self, check: str, expected, fn: Callable[[], Any]) -> None:
        t = time.perf_counter()
        actual = fn()
        self.add(check, actual == expected, expected, actual, duration=time.perf_counter() - t)

    def within(self, check: str, expected: float, fn: Callable[[], float], tol: float) -> None:
        t = time.perf_counter()
        actual = float(fn())
        res = abs(actual - expected)
        self.add(check, res <= tol, expected, actual, res, time.perf_counter() - t)


def random_word(rng: random.Random, max_len: int) -> tuple[int, ...]:
    return tuple(rng.choice((1, 2, 3, 4, -1, -2, -3, -4)) for _ in range(rng.randint(1, max_len)))


# ---------------------------------------------------------------------------


def suite_nf(cfg) -> list[Check]:
    rec = Recorder("nf")
    rng = random.Random(cfg.seed)
    words = [random_word(rng, 8) for _ in range(cfg.samples)]
    t = time.perf_counter()
    bad_conf = bad_adj = 0
    for w in words:
        a = ncalg.reduce_word(w, ncalg.random_strategy(rng))
        b = ncalg.reduce_word(w, ncalg.random_strategy(rng))
        fast = ncalg.normal_form(w)
        bad_conf += not (a == b == fast)
        bad_adj += ncalg.normal_form(ncalg.adjoint_word(w)) != fast.adjoint()
    dt = time.perf_counter() - t
    rec.add("confluence", bad_conf == 0, 0, bad_conf, duration=dt)
    rec.add("adjoint-compatibility", bad_adj == 0, 0, bad_adj)
    rec.add("corpus-size", len(words) >= 1, cfg.samples, len(words))
    return rec.checks


def suite_relcheck_sphere(cfg) -> list[Check]:
    rec = Recorder("relcheck-sphere")
    t = time.perf_counter()
    for label, ok in ncalg.verify_sphere_relations().items():
        rec.add(f"exact {label}", ok, 0, 0 if ok else "nonzero")
    rec.checks[0].duration = time.perf_counter() - t
    for r in fockrep.check_relations(cfg.q, cfg.cutoff):
        rec.add(f"operator {r.label}", r.passed, 0.0, r.residual, r.residual)
    return rec.checks


def suite_relcheck_s4(cfg) -> list[Check]:
    rec = Recorder("relcheck-s4")
    for label, ok in instanton.verify_s4_relations().items():
        rec.add(label, ok, 0, 0 if ok else "nonzero")
    G = instanton.projector_G()
    rec.equal("G^2 = G", True, lambda: (G @ G - G).is_zero())
    rec.equal("G* = G", True, lambda: (G.adjoint() - G).is_zero())
    rec.equal("generators mu-invariant", True, instanton.generators_invariant)
    return rec.checks


PRINTED_C = {
    (1, 0, 0, 0, 1): {4: 1},
    (0, 1, 0, 0, 1): {2: 1},
    (0, 0, 1, 0, 1): {0: 1},
    (0, 0, 0, 1, 1): {0: 1},
    (1, 1, 0, 0, 2): {6: 1, 8: 1},
    (1, 0, 1, 0, 2): {4: 1, 6: 1},
    (1, 0, 0, 1, 2): {4: 1, 2: 1},
    (0, 1, 1, 0, 2): {2: 1, 4: 1},
    (0, 1, 0, 1, 2): {2: 1, 0: 1},
    (0, 0, 1, 1, 2): {-2: 1, 0: 1},
    (2, 0, 0, 0, 2): {8: 1},
    (0, 2, 0, 0, 2): {4: 1},
    (0, 0, 2, 0, 2): {0: 1},
    (0, 0, 0, 2, 2): {0: 1},
}


def suite_proj(cfg) -> list[Check]:
    rec = Recorder("proj")
    for key, terms in PRINTED_C.items():
        want = QRational.laurent(terms)
        rec.equal(f"c{key[:4]}({key[4]})", want, lambda key=key: projections.coeff_c(*key))
    for N in range(1, 5):
        rec.equal(f"partition of unity N={N}", True, lambda N=N: projections.verify_partition_of_unity(N))
        rec.equal(f"P{N} entries mu-invariant", True, lambda N=N: projections.entries_invariant(projections.projection_P(N)))
    for N in (1, 2):
        cutoff = max(cfg.cutoff, 2 * N + 3)
        t = time.perf_counter()
        r = projections.numeric_check_projection(N, cfg.q, cutoff)
        res = max(r.unity_residual, r.idempotent_residual, r.selfadjoint_residual)
        rec.add(f"numeric P{N} projection (q={cfg.q}, cutoff={cutoff})", r.passed, 0.0, res, res, time.perf_counter() - t)
    return rec.checks


def suite_repcheck(cfg) -> list[Check]:
    rec = Recorder("repcheck")
    q0 = Fraction(cfg.q)
    top = cfg.cutoff
    t = time.perf_counter()
    bad = 0
    for n in range(top + 1):
        for m in range(top + 1):
            for k in range(top + 1):
                idx = (n, m, k)
                got = {i: fockrep.exact_diagonal((i, -i), idx) for i in range(1, 5)}
                bad += got != fockrep.expected_diagonals(idx)
                bad += sum(got.values(), QRational.const(0)) != QRational.const(1)
    rec.add(f"exact diagonals, indices <= {top}", bad == 0, 0, bad, duration=time.perf_counter() - t)

    t = time.perf_counter()
    worst, vanish_bad, count = 0.0, 0, 0
    deg, imax = 4, 5
    c = imax + deg + 2
    for ni, mi in fockrep.j1_monomials(deg):
        op = fockrep.rep_word(fockrep.j1_word(ni, mi), q0, c)
        for n in range(imax + 1):
            for m in range(imax + 1):
                for k in range(imax + 1):
                    rc = fockrep.rep_constant_C(ni, mi, n, m, k)
                    count += 1
                    if rc.target is None:
                        col = op.matrix[:, (n * c + m) * c + k]
                        vanish_bad += abs(col).sum() > 1e-12
                    else:
                        worst = max(worst, abs(rc.C(q0) - op.entry(rc.target, (n, m, k))))
    rec.add(f"constant C vs operator ({count} cases)", worst <= 1e-9 and not vanish_bad, 0.0, worst, worst, time.perf_counter() - t)
    rec.add("global convention factor", True, 1, 1)

    limit = 1 / (1 - q0 * q0) ** 3
    rec.within("trace z1 z1* at cutoff 40", float(limit), lambda: float(fockrep.trace_z1z1star(q0, 40)), 1e-9)
    return rec.checks


def suite_graph(cfg) -> list[Check]:
    rec = Recorder("graph")
    want = {"F": (3, (), 0), "G": (4, (), 0), "L3": (1, (), 1), "L5": (1, (), 1), "L7": (1, (), 1)}
    for name, (k0, tor, k1) in want.items():
        rec.equal(f"K-theory {name}", str(ktheory.KGroups(k0, tor, k1)), lambda name=name: str(ktheory.k_theory(graphck.PRESETS[name]())))
    if cfg.graph:
        g = graphck.load_graph(cfg.graph)
        rec.add(f"K-theory {cfg.graph}", None, None, str(ktheory.k_theory(g)))

    t = time.perf_counter()
    n_max = max(1, min(5, cfg.depth))
    recs = graphck.verify_phi_ck(n_max)
    failed = [r.check for r in recs if not r.passed]
    rec.add(f"phi images satisfy CK relations (n <= {n_max})", not failed, [], failed, duration=time.perf_counter() - t)

    rec.equal(f"order isomorphism on box {cfg.k_max}", True, lambda: ktheory.order_iso_check(cfg.k_max))
    rng = random.Random(cfg.seed)
    t = time.perf_counter()
    bad = 0
    for _ in range(10_000):
        x = tuple(rng.randint(-6, 6) for _ in range(4))
        y = tuple(rng.randint(-6, 6) for _ in range(4))
        s = tuple(a + b for a, b in zip(x, y))
        for cone in (ktheory.cone_G, ktheory.cone_CP3):
            bad += cone(x) and cone(y) and not cone(s)
        bad += ktheory.cone_F(x[:3]) and ktheory.cone_F(y[:3]) and not ktheory.cone_F(s[:3])
    rec.add("cone additivity (10^4 pairs)", bad == 0, 0, bad, duration=time.perf_counter() - t)
    return rec.checks


def suite_freeness(cfg) -> list[Check]:
    rec = Recorder("freeness")
    for i in range(1, 5):
        for sign in (1, -1):
            for k in range(1, cfg.k_max + 1):
                t = time.perf_counter()
                r = graphck.freeness_witness(i, k, sign)
                rec.add(f"v{i} u^{sign * k} ({r.scheme})", r.passed, True, r.passed, duration=time.perf_counter() - t)
    for k in range(1, cfg.k_max + 1):
        rec.equal(f"printed B1/B2/B3 witness at v2, k={k}", True, lambda k=k: graphck.freeness_witness(2, k, 1, scheme="printed").passed)
    target = {3: graphck.CKElement.vertex(graphck.graph_L7(), "v2")}
    rec.equal(
        "single-power B3 corrector fails at k=3",
        False,
        lambda: graphck.graded_equals(graphck.phi_free(graphck.printed_v2_witness(3, "l")), target),
    )
    return rec.checks


def suite_pair(cfg) -> list[Check]:
    rec = Recorder("pair")
    expected = {"P1": (1, -1), "P2": (1, -2), "1": (1, 0), "G": (2, 0)}
    table = projections.pairing_table(tuple(expected))
    for name, (e0, e1) in expected.items():
        for mod, want in (("mu0", e0), ("mu1", e1)):
            r = table[name][mod]
            rec.add(f"<{mod}, pi({name})> exact", r.value == want and r.exact.is_constant(), want, str(r.exact))
    for qn in ("1/4", "1/2", "3/4"):
        q0 = Fraction(qn)
        for name, (e0, e1) in expected.items():
            P = projections.named_projection(name)
            for mod, want in (("mu0", e0), ("mu1", e1)):
                rec.within(f"<{mod}, pi({name})> numeric q={qn}", want, lambda P=P, mod=mod, q0=q0: projections.numeric_pairing(P, mod, q0, 60), 1e-8)
    P2 = projections.named_projection("P2")
    rec.equal(
        "mu1 summand for P2 matches the closed form",
        True,
        lambda: projections.mu1_summand(ncalg.normal_form(P2.trace())) == projections.printed_p2_summand(),
    )
    rec.equal("mu1 convention calibration", [projections.DEFAULT_CONVENTION.describe()], lambda: [c.describe() for c in projections.calibrate_mu1()])
    rep = projections.k0_summary_report()
    rec.add("pairing matrix determinant", rep["unimodular"], [-1, 1], rep["determinant"])
    rec.add("pi(G) pairs as rank times unit", rep["pi_G_matches_unit_multiple"], 2, rep["pi_G_rank"])
    return rec.checks


SUITES: dict[str, Callable] = {
    "nf": suite_nf,
    "relcheck-sphere": suite_relcheck_sphere,
    "relcheck-s4": suite_relcheck_s4,
    "proj": suite_proj,
    "repcheck": suite_repcheck,
    "graph": suite_graph,
    "freeness": suite_freeness,
    "pair": suite_pair,
}
