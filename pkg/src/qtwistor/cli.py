"""Command-line entry point: run verification suites and emit JSON reports."""
from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Sequence

from .suites import SUITES, Check, Recorder, jsonable

SUITE_ORDER = tuple(SUITES)
SCHEMA = "qtwistor-report/1"


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class Config:
    q: Fraction = Fraction(1, 2)
    cutoff: int = 10
    depth: int = 8
    k_max: int = 6
    suites: tuple[str, ...] = SUITE_ORDER
    graph: str | None = None
    out: str | None = None
    seed: int = 0
    samples: int = 500

    def __post_init__(self) -> None:
        if not 0 < self.q < 1:
            raise ConfigError("q must lie strictly between 0 and 1")
        if self.cutoff < 4:
            raise ConfigError("cutoff must be at least 4")
        if self.depth < 2:
            raise ConfigError("depth must be at least 2")
        if self.k_max < 1:
            raise ConfigError("k-max must be at least 1")
        unknown = [s for s in self.suites if s not in SUITES]
        if unknown:
            raise ConfigError(f"unknown suite(s): {', '.join(unknown)}")

    def body(self) -> dict:
        d = asdict(self)
        d["q"] = str(self.q)
        d["suites"] = list(self.suites)
        d.pop("out")
        return d


def parse_suites(text: str) -> tuple[str, ...]:
    names = [s.strip() for s in text.split(",") if s.strip()]
    if "all" in names:
        return SUITE_ORDER
    return tuple(dict.fromkeys(names))


@dataclass
class Report:
    config: dict
    checks: list[Check]
    data: dict = field(default_factory=dict)

    @property
    def failed(self) -> list[Check]:
        return [c for c in self.checks if c.status == "fail"]

    @property
    def ok(self) -> bool:
        return not self.failed

    def body(self) -> dict:
        out = {"schema": SCHEMA, "config": self.config, "checks": [c.body() for c in self.checks]}
        if self.data:
            out["data"] = jsonable(self.data)
        counts = {s: sum(c.status == s for c in self.checks) for s in ("pass", "fail", "inconclusive")}
        out["summary"] = counts
        return out

    def to_json(self) -> str:
        timing = {f"{c.suite}/{c.check}": round(c.duration, 6) for c in self.checks}
        return json.dumps({"body": self.body(), "timing": timing}, indent=2, sort_keys=False)

    def summary(self) -> str:
        lines = []
        suites = list(dict.fromkeys(c.suite for c in self.checks))
        for s in suites:
            cs = [c for c in self.checks if c.suite == s]
            bad = [c for c in cs if c.status != "pass"]
            lines.append(f"{s:16s} {len(cs) - len(bad):4d}/{len(cs):<4d} {'ok' if not any(c.status == 'fail' for c in cs) else 'FAIL'}")
            for c in bad:
                lines.append(f"    [{c.status}] {c.check}: expected {jsonable(c.expected)}, got {jsonable(c.actual)}")
        lines.append("all checks passed" if self.ok else f"{len(self.failed)} check(s) failed")
        return "\n".join(lines)


def run(config: Config) -> Report:
    """Execute the configured suites concurrently; assemble records in suite order."""
    if config.graph:
        from .graphck import load_graph

        load_graph(config.graph)  # fail before any suite runs
    with ThreadPoolExecutor(max_workers=min(4, len(config.suites) or 1)) as ex:
        results = list(ex.map(lambda s: SUITES[s](config), config.suites))
    checks = [c for r in results for c in r]
    return Report(config.body(), checks)


# ---------------------------------------------------------------------------
# focused subcommands


def cmd_nf(args) -> Report:
    from .parse import parse

    x = parse(args.expr)
    return Report({"expr": args.expr}, [], {"normal_form": str(x), "terms": len(x)})


def cmd_graph_ktheory(args) -> Report:
    from .graphck import load_graph
    from .ktheory import k_theory

    source = args.graph or args.preset
    kg = k_theory(load_graph(source))
    rec = Recorder("graph")
    rec.add(f"K-theory {source}", None if args.graph else True, None, str(kg))
    data = {"graph": source, "K0_rank": kg.k0_rank, "K0_torsion": list(kg.k0_torsion), "K1_rank": kg.k1_rank, "text": str(kg)}
    return Report({"graph": source}, rec.checks, data)


def cmd_graph_freeness(args) -> Report:
    from .graphck import freeness_witness

    rec = Recorder("freeness")
    vertices = [args.vertex] if args.vertex else [1, 2, 3, 4]
    for i in vertices:
        for sign in (1, -1):
            r = freeness_witness(i, args.k, sign)
            rec.add(f"v{i} u^{sign * args.k} ({r.scheme})", r.passed, True, r.passed)
    return Report({"k": args.k, "vertices": vertices}, rec.checks)


def cmd_proj(args) -> Report:
    from . import projections as pj

    N, q0 = args.N, args.q
    rec = Recorder("proj")
    table = {"".join(map(str, j)): str(c) for j, c in pj.COEFFS.level(N).items()}
    rec.equal(f"partition of unity N={N}", True, lambda: pj.verify_partition_of_unity(N))
    cutoff = max(args.cutoff, 2 * N + 3)
    r = pj.numeric_check_projection(N, q0, cutoff)
    res = {"unity": r.unity_residual, "idempotent": r.idempotent_residual, "selfadjoint": r.selfadjoint_residual}
    rec.add(f"numeric P{N} projection", r.passed, 0.0, max(res.values()), max(res.values()))
    data = {"N": N, "q": str(q0), "cutoff": cutoff, "coefficients": table, "residuals": res}
    return Report({"N": N, "q": str(q0), "cutoff": cutoff}, rec.checks, data)


def cmd_pair(args) -> Report:
    from . import projections as pj

    which = tuple(w.strip() for w in args.which.split(",") if w.strip())
    for w in which:
        if w not in pj.PROJECTIONS:
            raise ConfigError(f"unknown projection {w!r}")
    table = pj.pairing_table(which)
    rec = Recorder("pair")
    data = {}
    for w in which:
        row = {}
        for mod in ("mu0", "mu1"):
            r = table[w][mod]
            rec.add(f"<{mod}, pi({w})> integral", r.integral, "integer", str(r.exact))
            row[mod] = r.value
        data[w] = row
    return Report({"which": list(which)}, rec.checks, {"pairings": data, "convention": pj.DEFAULT_CONVENTION.describe()})


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    def common(suppress: bool) -> argparse.ArgumentParser:
        d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
        p = argparse.ArgumentParser(add_help=False)
        p.add_argument("--q", type=_fraction, default=d(Fraction(1, 2)), help="deformation parameter, e.g. 1/2")
        p.add_argument("--cutoff", type=int, default=d(10))
        p.add_argument("--depth", type=int, default=d(8))
        p.add_argument("--k-max", dest="k_max", type=int, default=d(6))
        p.add_argument("--suite", default=d("all"), help="comma-separated suite names or 'all'")
        p.add_argument("--graph", default=d(None), help="graph JSON file")
        p.add_argument("--out", default=d(None), help="write the JSON report here")
        p.add_argument("--seed", type=int, default=d(0))
        p.add_argument("--samples", type=int, default=d(500), help="random words for the nf suite")
        p.add_argument("--json", action="store_true", default=d(False), help="print the JSON report")
        return p

    parser = argparse.ArgumentParser(prog="qtwistor", parents=[common(False)], description=__doc__)
    sub = parser.add_subparsers(dest="cmd")
    sp = common(True)
    sub.add_parser("run", parents=[sp], help="run verification suites")
    p = sub.add_parser("nf", parents=[sp], help="normal form of an expression")
    p.add_argument("expr")
    g = sub.add_parser("graph", help="graph algebra tools")
    gsub = g.add_subparsers(dest="gcmd", required=True)
    p = gsub.add_parser("ktheory", parents=[sp])
    p.add_argument("--preset", default="F", help="L3, L5, L7, F or G; --graph overrides")
    p = gsub.add_parser("freeness", parents=[sp])
    p.add_argument("--k", type=int, default=3)
    p.add_argument("--vertex", type=int, choices=[1, 2, 3, 4])
    sub.add_parser("repcheck", parents=[sp], help="representation suite")
    p = sub.add_parser("proj", parents=[sp], help="projection P_N")
    p.add_argument("--N", type=int, default=2)
    p = sub.add_parser("pair", parents=[sp], help="index pairing table")
    p.add_argument("--which", default="P1,P2,G,1")
    return parser


def _config(args, suites: tuple[str, ...] | None = None) -> Config:
    return Config(
        q=args.q,
        cutoff=args.cutoff,
        depth=args.depth,
        k_max=args.k_max,
        suites=suites if suites is not None else parse_suites(args.suite),
        graph=args.graph,
        out=args.out,
        seed=args.seed,
        samples=args.samples,
    )


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cmd = args.cmd or "run"
        if cmd == "run":
            report = run(_config(args))
        elif cmd == "repcheck":
            report = run(_config(args, ("repcheck",)))
        elif cmd == "nf":
            report = cmd_nf(args)
        elif cmd == "graph":
            if args.gcmd == "ktheory":
                report = cmd_graph_ktheory(args)
            else:
                if args.k < 1:
                    raise ConfigError("k must be at least 1")
                report = cmd_graph_freeness(args)
        elif cmd == "proj":
            _config(args, ())
            if args.N < 1:
                raise ConfigError("N must be at least 1")
            report = cmd_proj(args)
        else:
            report = cmd_pair(args)
    except (ConfigError, OSError, ValueError) as exc:
        print(f"qtwistor: error: {exc}", file=sys.stderr)
        return 2
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(report.to_json())
    if args.json:
        print(json.dumps(report.body(), indent=2))
    else:
        if report.data:
            print(json.dumps(jsonable(report.data), indent=2))
        print(report.summary())
    return 0 if report.ok else 1


if __name__ == "__main__":
    sys.exit(main())
