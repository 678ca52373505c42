"""Command-line entry point: homology, verification suites, the integer
counterexamples and a reduction benchmark.

Every command builds a JSON report; ``--format table`` renders that same
report as text.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import asdict, dataclass
from pathlib import Path

from . import __version__
from .chain_modules import (
    DEFAULT_CELL_CAP,
    REDUCTION_KINDS,
    LinearSystem,
    boundary,
    complex_of,
    free_linear,
    generators_by_degree,
    lattice_subcomplex,
    orbit_quotient_complex,
)
from .errors import ContractViolation, InvalidInput, ResourceCapError, SymhomError
from .exact_linalg import Echelon
from .generators import (
    FacetComplex,
    SimpleGraph,
    complete_graph,
    counterexample_x,
    counterexample_y,
    cycle_graph,
    full_simplex,
    hollow_triangle,
    n1_graph,
    or_a,
    simplex_boundary,
    sym_a,
    witness_cycle_a,
)
from .structure_maps import CUBICAL, SIMPLICIAL, identity_suite
from .symmetries import DEFAULT_GROUP_CAP

EXIT_OK, EXIT_USAGE, EXIT_CAP, EXIT_CONTRACT = 0, 2, 3, 4

REDUCE_CHOICES = ("none",) + tuple(REDUCTION_KINDS)
SIMPLICIAL_REDUCTIONS = {"deg", "sym", "deg+sym"}

BUILTINS = {
    "hollow-triangle": ("complex", hollow_triangle),
    "tetrahedron-boundary": ("complex", lambda: simplex_boundary(3)),
    "triangle": ("complex", lambda: full_simplex(2)),
    "K2": ("graph", lambda: complete_graph(2)),
    "K3": ("graph", lambda: complete_graph(3)),
    "C5": ("graph", lambda: cycle_graph(5)),
    "flip-quotient": ("flip", None),
    "Y_t": ("yoneda", "t"),
    "Y_r": ("yoneda", "r"),
    "Y_rt": ("yoneda", "rt"),
}

# homology of the symmetry sub-complex lattices, degree -> (betti, torsion)
REFERENCE_TABLE = {
    "t": {1: (0, []), 2: (0, []), 3: (0, []), 4: (0, [2])},
    "r": {1: (0, []), 2: (0, []), 3: (0, [2])},
    "rt": {1: (0, []), 2: (0, []), 3: (0, [2])},
}
REFERENCE_KIND = {"t": "tCon", "r": "rCon", "rt": "rtCon"}


@dataclass
class RunConfig:
    command: str
    input: str | None = None
    system: str = "sym"
    ring: str = "Q"
    max_dim: int = 3
    reduce: str = "none"
    suite: str | None = None
    which: str | None = None
    cap_cells: int = DEFAULT_CELL_CAP
    cap_group: int = DEFAULT_GROUP_CAP
    output: str | None = None
    format: str = "json"


# ---------------------------------------------------------------------------
# building systems


def load_system(cfg: RunConfig, default: str = "hollow-triangle") -> LinearSystem:
    """The free system described by ``--input`` (a JSON file or ``builtin:NAME``)."""
    src = cfg.input or f"builtin:{default}"
    top = cfg.max_dim + 1
    if src.startswith("builtin:"):
        name = src[len("builtin:"):]
        if name not in BUILTINS:
            raise InvalidInput(f"unknown builtin {name!r}; choose from {sorted(BUILTINS)}")
        kind, make = BUILTINS[name]
        if kind == "flip":
            return free_linear(counterexample_x(top))
        if kind == "yoneda":
            return free_linear(counterexample_y(make, top, cfg.cap_cells))
        obj = make()
    else:
        path = Path(src)
        if not path.is_file():
            raise InvalidInput(f"input file {src!r} not found")
        try:
            doc = json.loads(path.read_text())
        except json.JSONDecodeError as exc:
            raise InvalidInput(f"{src}: malformed JSON at line {exc.lineno}: {exc.msg}") from None
        if isinstance(doc, dict) and "facets" in doc:
            obj = FacetComplex.from_json(doc)
        elif isinstance(doc, dict) and "edges" in doc:
            obj = SimpleGraph.from_json(doc)
        else:
            raise InvalidInput(f"{src}: expected an object with 'facets' or 'edges'")
    if isinstance(obj, FacetComplex):
        if cfg.system == "or":
            return free_linear(or_a(obj, top, cell_cap=cfg.cap_cells)[0])
        return free_linear(sym_a(obj, top, cfg.cap_cells))
    return free_linear(n1_graph(obj, top, cell_cap=cfg.cap_cells))


def check_reduction(cfg: RunConfig, X: LinearSystem) -> None:
    if cfg.reduce == "none":
        return
    if cfg.ring == "Z":
        raise InvalidInput("quotient reductions preserve homology only over a field; use --ring q")
    simp = X.mode == SIMPLICIAL
    if simp != (cfg.reduce in SIMPLICIAL_REDUCTIONS):
        raise InvalidInput(f"--reduce {cfg.reduce} does not apply to a {X.mode} system")
    needs = {"sym": {"t"}, "deg+sym": {"t"}, "t": {"t"}, "r": {"r"}, "rt": {"r", "t"}}.get(cfg.reduce, set())
    if not needs <= X.flags:
        raise InvalidInput(f"--reduce {cfg.reduce} needs symmetries {sorted(needs)}; {X.name} has {sorted(X.flags)}")


def _homology_rows(X: LinearSystem, cfg: RunConfig, reduced) -> list[dict]:
    hom = reduced.homology()
    rows = []
    for n, h in hom.items():
        rows.append({"n": n, "dim_full": len(X.chain_basis(n)), "dim_reduced": reduced.dim(n),
                     "betti": h.betti, "torsion": list(h.torsion)})
    return rows


def _header(cfg: RunConfig) -> dict:
    return {"config": asdict(cfg), "version": __version__}


# ---------------------------------------------------------------------------
# commands


def cmd_homology(cfg: RunConfig) -> tuple[dict, bool]:
    X = load_system(cfg)
    check_reduction(cfg, X)
    if cfg.reduce == "none":
        C = complex_of(X, cfg.max_dim, cfg.ring)
    else:
        C = orbit_quotient_complex(X, REDUCTION_KINDS[cfg.reduce], cfg.max_dim)
    report = _header(cfg) | {"system": X.name, "mode": X.mode, "degrees": _homology_rows(X, cfg, C)}
    return report, True


def _verify_identities(cfg: RunConfig) -> dict:
    out = {}
    for mode, top in ((SIMPLICIAL, min(cfg.max_dim + 1, 8)), (CUBICAL, min(cfg.max_dim, 8))):
        recs = identity_suite(mode, top)
        fails = [r for r in recs if not r["passed"]]
        out[mode] = {"max_degree": top, "instances": len(recs), "failures": fails[:20], "passed": not fails}
    return out


def _verify_homotopy(cfg: RunConfig) -> dict:
    from . import projections as pr

    X = load_system(cfg, "tetrahedron-boundary")
    cap = cfg.cap_group
    checks = []
    ops = []
    if X.mode == SIMPLICIAL:
        ops.append(("p", lambda n, x: pr.p_full(X, n, x, cap), lambda n, x: pr.h_sym(X, n, x, cap)))
    else:
        if "r" in X.flags:
            ops.append(("q", lambda n, x: pr.q_full(X, n, x, cap), lambda n, x: pr.h_rev(X, n, x, cap)))
        if "t" in X.flags:
            ops.append(("p_t", lambda n, x: pr.p_cubical_t(X, n, x, cap), None))
        if {"t", "r"} <= X.flags:
            ops.append(("u", lambda n, x: pr.u_hyper(X, n, x, cap), None))
    for name, op, h in ops:
        for n in range(X.lo, cfg.max_dim + 1):
            for law, fn in (("chain_map", pr.check_chain_map), ("idempotent", pr.check_idempotent)):
                bad = fn(X, op, n)
                checks.append({"operator": name, "law": law, "n": n, "passed": bad is None,
                               **({"witness": [str(v) for v in bad]} if bad else {})})
            if h is not None:
                bad = pr.check_homotopy(X, op, h, n)
                checks.append({"operator": name, "law": "homotopy", "n": n, "passed": bad is None,
                               **({"witness": [str(v) for v in bad]} if bad else {})})
    return {"system": X.name, "checks": checks, "passed": all(c["passed"] for c in checks)}


def _verify_functor(cfg: RunConfig) -> dict:
    from . import s_functor as sf

    X = load_system(cfg, "K2")
    if X.mode != CUBICAL:
        raise InvalidInput("the functor suite needs a cubical input (a graph or a Yoneda builtin)")
    c36 = sf.check_complex_shift(X, cfg.max_dim)
    c38 = sf.check_moore_shift(X, cfg.max_dim)
    pos = sf.check_poscon_acyclic(X, cfg.max_dim, "Z")
    ids = sf.linear_identity_suite(sf.apply_s(X).system, cfg.max_dim - 1)
    fails = [r for r in ids if not r["passed"]]
    return {
        "system": X.name,
        "chains_equal_after_shift": c36,
        "moore_complexes_equal_after_shift": c38,
        "positive_connections": pos,
        "simplicial_identities": {"instances": len(ids), "failures": fails[:20], "passed": not fails},
        "passed": c36["passed"] and c38["passed"] and pos["passed"] and not fails,
    }


def _verify_splitting(cfg: RunConfig) -> dict:
    from . import projections as pr
    from .chain_modules import span_rank, subcomplex_generators, symmetry_kind_for

    X = load_system(cfg, "tetrahedron-boundary")
    op = pr.projection_for(X)
    C = complex_of(X, cfg.max_dim, "Q")
    P = pr.image_complex(X, op, C)
    kind = symmetry_kind_for(X)
    rows = []
    for n in range(X.lo, cfg.max_dim + 1):
        dim = C.dim(n)
        ker = pr.kernel_dimension(X, op, n)
        gens = subcomplex_generators(kind, X, n)
        sym_rank = span_rank(gens, X.chain_basis(n))
        killed = all(not op(n, g) for g in gens)
        rows.append({"n": n, "dim": dim, "image": P.dim(n), "kernel": ker, "symmetry_span": sym_rank,
                     "passed": ker + P.dim(n) == dim and ker == sym_rank and killed})
    return {"system": X.name, "degrees": rows, "passed": all(r["passed"] for r in rows)}


SUITES = {
    "identities": _verify_identities,
    "homotopy": _verify_homotopy,
    "functor": _verify_functor,
    "splitting": _verify_splitting,
}


def cmd_verify(cfg: RunConfig) -> tuple[dict, bool]:
    if cfg.suite not in SUITES:
        raise InvalidInput(f"unknown suite {cfg.suite!r}; choose from {sorted(SUITES)}")
    body = SUITES[cfg.suite](cfg)
    ok = body.get("passed", all(v["passed"] for v in body.values() if isinstance(v, dict)))
    return _header(cfg) | {"suite": cfg.suite, "passed": ok, "result": body}, ok


def flip_quotient_report(max_dim: int = 4) -> dict:
    """Cycle ``a``, its non-boundary status, and the two sub-complex lattices."""
    X = free_linear(counterexample_x(max_dim + 1), "Z")
    C = complex_of(X, max_dim, "Z")
    a = witness_cycle_a()
    da = boundary(X, 3, a.coeffs)
    # is a in the integer span of the degree-4 boundaries?
    ech = Echelon("Z")
    idx = {b: k for k, b in enumerate(C.bases[3])}
    for col in C.differential(4).column_dicts():
        if col:
            ech.insert(col)
    is_boundary = ech.solve({idx[b]: c for b, c in a.coeffs.items()}) is not None
    lattices = {}
    for kind in ("sDeg", "DegPlusSDeg"):
        L = lattice_subcomplex(generators_by_degree(kind, X, C), C, kind)
        lattices[kind] = {n: {"betti": h.betti, "torsion": list(h.torsion)} for n, h in L.homology().items()}
    h3_nonzero = all(lat[3]["betti"] or lat[3]["torsion"] for lat in lattices.values())
    return {
        "witness": {"chain": {"".join(map(str, b)): c for b, c in sorted(a.coeffs.items())},
                    "is_cycle": not da, "is_boundary": is_boundary},
        "lattice_homology": {k: {str(n): v for n, v in lat.items()} for k, lat in lattices.items()},
        "passed": not da and not is_boundary and h3_nonzero,
    }


def yoneda_report(which: str) -> dict:
    top = max(REFERENCE_TABLE[which])
    Y = free_linear(counterexample_y(which, top + 1), "Z")
    C = complex_of(Y, top, "Z")
    kind = REFERENCE_KIND[which]
    L = lattice_subcomplex(generators_by_degree(kind, Y, C), C, kind)
    hom = L.homology()
    rows = []
    for n, (betti, tors) in sorted(REFERENCE_TABLE[which].items()):
        h = hom[n]
        rows.append({"n": n, "betti": h.betti, "torsion": list(h.torsion),
                     "reference": {"betti": betti, "torsion": tors},
                     "match": h.betti == betti and list(h.torsion) == tors})
    ranks = {str(n): L.dim(n) for n in L.degrees()}
    return {"system": Y.name, "subcomplex": kind, "ranks": ranks, "degrees": rows,
            "passed": all(r["match"] for r in rows)}


def cmd_counterexample(cfg: RunConfig) -> tuple[dict, bool]:
    cfg.ring = "Z"
    if cfg.which == "simplicial":
        body = flip_quotient_report()
    elif cfg.which in REFERENCE_TABLE:
        body = yoneda_report(cfg.which)
    else:
        raise InvalidInput("choose one of simplicial, t, r, rt")
    return _header(cfg) | {"which": cfg.which, "passed": body["passed"], "result": body}, body["passed"]


def default_reduction(X: LinearSystem) -> str:
    if X.mode == SIMPLICIAL:
        return "deg+sym" if "t" in X.flags else "deg"
    return {frozenset(): "poscon", frozenset({"t"}): "t", frozenset({"r"}): "r"}.get(X.flags, "rt")


def cmd_bench(cfg: RunConfig) -> tuple[dict, bool]:
    X = load_system(cfg, "C5")
    if cfg.reduce == "none":
        cfg.reduce = default_reduction(X)
    cfg.ring = "Q"
    check_reduction(cfg, X)
    t0 = time.perf_counter()
    full = complex_of(X, cfg.max_dim, "Q")
    hf = full.homology()
    t1 = time.perf_counter()
    red = orbit_quotient_complex(X, REDUCTION_KINDS[cfg.reduce], cfg.max_dim)
    hr = red.homology()
    t2 = time.perf_counter()
    rows = [{"n": n, "dim_full": full.dim(n), "dim_reduced": red.dim(n),
             "betti_full": hf[n].betti, "betti_reduced": hr[n].betti} for n in hf]
    ok = all(r["betti_full"] == r["betti_reduced"] for r in rows)
    report = _header(cfg) | {"system": X.name, "degrees": rows, "passed": ok,
                             "seconds": {"full": round(t1 - t0, 4), "reduced": round(t2 - t1, 4)}}
    return report, ok


COMMANDS = {
    "homology": cmd_homology,
    "verify": cmd_verify,
    "counterexample": cmd_counterexample,
    "bench": cmd_bench,
}


# ---------------------------------------------------------------------------
# rendering and argument parsing


def render_table(report: dict) -> str:
    lines = [f"{report['config']['command']}  (version {report['version']})"]
    rows = report.get("degrees") or report.get("result", {}).get("degrees")
    if rows:
        keys = list(rows[0])
        lines.append("  ".join(f"{k:>12}" for k in keys))
        for r in rows:
            lines.append("  ".join(f"{json.dumps(r[k], sort_keys=True):>12}" for k in keys))
    if "passed" in report:
        lines.append("PASS" if report["passed"] else "FAIL")
    if not rows:
        lines.append(json.dumps(report.get("result", report), indent=2, sort_keys=True))
    return "\n".join(lines)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", help="JSON facet list or graph, or builtin:NAME")
    common.add_argument("--system", choices=("sym", "or"), default="sym",
                        help="for facet lists: all vertex tuples or ordered ones")
    common.add_argument("--ring", choices=("q", "z", "Q", "Z"), default="q")
    common.add_argument("--max-dim", type=int, default=3, help="highest degree to report")
    common.add_argument("--reduce", choices=REDUCE_CHOICES, default="none")
    common.add_argument("--output", help="write the report here instead of stdout")
    common.add_argument("--cap-cells", type=int, default=DEFAULT_CELL_CAP)
    common.add_argument("--cap-group", type=int, default=DEFAULT_GROUP_CAP)
    common.add_argument("--format", choices=("json", "table"), default="json")

    parser = _Parser(prog="symhom", description="Homology of simplicial and cubical sets with symmetries.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    sub.add_parser("homology", parents=[common], help="homology, optionally of a reduced complex")
    v = sub.add_parser("verify", parents=[common], help="run a verification suite")
    v.add_argument("suite", choices=sorted(SUITES))
    c = sub.add_parser("counterexample", parents=[common], help="integer sub-complex homology examples")
    c.add_argument("which", choices=("simplicial", "t", "r", "rt"))
    sub.add_parser("bench", parents=[common], help="full versus reduced complex sizes and timings")
    return parser


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    if ns.max_dim < 0:
        raise InvalidInput("--max-dim must be nonnegative")
    return RunConfig(command=ns.command, input=ns.input, system=ns.system, ring=ns.ring.upper(),
                     max_dim=ns.max_dim, reduce=ns.reduce, suite=getattr(ns, "suite", None),
                     which=getattr(ns, "which", None), cap_cells=ns.cap_cells, cap_group=ns.cap_group,
                     output=ns.output, format=ns.format)


def run(cfg: RunConfig) -> tuple[dict, int]:
    report, ok = COMMANDS[cfg.command](cfg)
    return report, EXIT_OK if ok else EXIT_CONTRACT


def main(argv: list[str] | None = None) -> int:
    ns = build_parser().parse_args(argv)
    try:
        cfg = config_from_args(ns)
        report, code = run(cfg)
    except InvalidInput as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ResourceCapError as exc:
        print(f"resource cap: {exc}", file=sys.stderr)
        return EXIT_CAP
    except ContractViolation as exc:
        print(f"contract violation: {exc}", file=sys.stderr)
        return EXIT_CONTRACT
    except SymhomError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONTRACT
    text = json.dumps(report, indent=2, sort_keys=True) if cfg.format == "json" else render_table(report)
    if cfg.output:
        Path(cfg.output).write_text(text + "\n")
    else:
        print(text)
    return code


if __name__ == "__main__":
    raise SystemExit(main())
