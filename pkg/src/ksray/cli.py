"""Command-line interface: construction, verification, search, realization.

Every claim-producing subcommand exits 0 when all claims verify, 1 when
any claim is refuted, and 2 on input errors.  Reports are reproducible:
the JSON output contains no timings, so identical inputs and seeds give
byte-identical bytes.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

from . import bounds, graphs, ks_assign, quadform, ray_sets, realize
from .exact_linalg import Rational, scalar_identity_check

# Expected KS-assignment existence per dimension: established by exhaustive
# search (d = 3, 4, 5) and by the block structure for d >= 6, where an
# assignment exists iff some qutrit block can carry a 13-ray KS assignment.
def _ks_expected(d: int) -> int:
    if d == 3 or d == 5:
        return 1
    if d == 4:
        return 0
    return 1 if ray_sets.optimal_decomposition(d).m >= 1 else 0


@dataclass
class Claim:
    """One verified-or-refuted fact in a report."""

    name: str
    expected: Rational | None
    computed: Rational | None
    verified: bool
    method: str
    elapsed: float


@dataclass
class Report:
    """All claims checked for one dimension."""

    dimension: int
    ray_count: int
    claims: list[Claim] = field(default_factory=list)

    @property
    def all_verified(self) -> bool:
        return all(c.verified for c in self.claims)


def _claim(
    report: Report,
    name: str,
    expected: Rational | None,
    method: str,
    compute: Callable[[], Rational | None],
) -> Rational | None:
    start = time.perf_counter()
    computed = compute()
    elapsed = time.perf_counter() - start
    verified = computed is not None and expected is not None and computed == expected
    report.claims.append(Claim(name, expected, computed, verified, method, elapsed))
    return computed


def report_to_json(report: Report) -> dict:
    """Timing-free JSON so identical inputs give byte-identical output."""
    return {
        "dimension": report.dimension,
        "ray_count": report.ray_count,
        "claims": [
            {
                "name": c.name,
                "expected": None if c.expected is None else str(c.expected),
                "computed": None if c.computed is None else str(c.computed),
                "verified": c.verified,
                "method": c.method,
            }
            for c in report.claims
        ],
        "all_verified": report.all_verified,
    }


def render_report(report: Report) -> str:
    lines = [f"dimension {report.dimension}: {report.ray_count} rays"]
    for c in report.claims:
        expected = "-" if c.expected is None else str(c.expected)
        computed = "-" if c.computed is None else str(c.computed)
        status = "ok" if c.verified else "REFUTED"
        lines.append(
            f"  {c.name:<34} expected {expected:<8} computed {computed:<8} "
            f"{status:<8} {c.method:<26} {c.elapsed:8.3f}s"
        )
    verdict = "VERIFIED" if report.all_verified else "REFUTED"
    done = sum(1 for c in report.claims if c.verified)
    lines.append(f"RESULT: {verdict} ({done}/{len(report.claims)} claims)")
    return "\n".join(lines)


def _bool_rational(value: bool) -> Rational:
    return Fraction(1) if value else Fraction(0)


def _realization_claim(
    report: Report,
    graph: graphs.Graph,
    dimension: int,
    reference: ray_sets.RaySet,
    seeds: int,
    max_iters: int,
) -> None:
    def run() -> Rational:
        matched_all = True
        any_good = False
        for seed in range(seeds):
            rep = realize.realize_graph(
                graph, dimension, seed=seed, max_iters=max_iters, reference=reference
            )
            if rep.converged and not rep.degenerate:
                any_good = True
                if not rep.matched_reference:
                    matched_all = False
        return _bool_rational(any_good and matched_all)

    _claim(
        report,
        f"realization_unique[{seeds} seeds]",
        Fraction(1),
        "alternating_minimization",
        run,
    )


def run_report(
    d: int,
    seeds: int = 10,
    ks_limit: int | None = None,
    realize_iters: int = 2000,
) -> Report:
    """Construct, verify, bound, search, and (for d = 3, 4) realize."""
    if d < 3:
        raise ValueError("dimension must be at least 3")
    rays = ray_sets.build_for_dimension(d)
    form = quadform.build_inequality(d)
    report = Report(d, rays.ray_count)

    _claim(
        report,
        "ray_count",
        Fraction(ray_sets.expected_ray_count(d)),
        "construction",
        lambda: Fraction(rays.ray_count),
    )
    _claim(
        report,
        "quantum_identity",
        form.quantum_value,
        "operator",
        lambda: scalar_identity_check(quadform.quantum_operator(form, rays)),
    )

    maxima: list[Rational] = []

    def classical(name: str, method: Callable[[], bounds.BoundResult]) -> None:
        def run() -> Rational:
            result = method()
            maxima.append(result.maximum)
            return result.maximum

        _claim(report, f"classical_bound[{name}]", form.classical_bound, name, run)

    if len(form.variables) <= bounds.EXHAUSTIVE_CAP:
        classical("exhaustive", lambda: bounds.max_exhaustive(form))
    classical("branch_bound", lambda: bounds.max_branch_bound(form))
    if rays.layout is not None:
        classical("block_dp", lambda: bounds.max_block_dp(form, rays.layout))

    _claim(
        report,
        "contextuality_gap",
        Fraction(1),
        "comparison",
        lambda: _bool_rational(
            bool(maxima) and all(m < form.quantum_value for m in maxima)
        ),
    )
    _claim(
        report,
        "ks_assignment_exists",
        Fraction(_ks_expected(d)),
        "backtracking",
        lambda: _bool_rational(
            bool(ks_assign.find_ks_assignments(rays, limit=ks_limit or 1))
        ),
    )

    if d == 4:
        triple = ("7", "8", "9")
        hexagon = quadform.build_hexagon(triple)
        _claim(
            report,
            "hexagon_identity[7,8,9]",
            hexagon.quantum_value,
            "operator",
            lambda: scalar_identity_check(quadform.quantum_operator(hexagon, rays)),
        )

        def hexagon_max() -> Rational | None:
            constraints = ks_assign.partial_constraints(
                rays, [ray_sets.rays_at_vertex(v) for v in triple]
            )
            result = ks_assign.max_over_constrained(hexagon, rays, constraints)
            return None if result is None else result.maximum

        _claim(
            report,
            "hexagon_constrained_max[7,8,9]",
            hexagon.classical_bound,
            "constrained",
            hexagon_max,
        )
    if d == 5:
        l5p = quadform.build_L5prime()
        _claim(
            report,
            "l5prime_identity",
            l5p.quantum_value,
            "operator",
            lambda: scalar_identity_check(quadform.quantum_operator(l5p, rays)),
        )

        def l5p_max() -> Rational | None:
            result = ks_assign.max_over_constrained(
                l5p, rays, ks_assign.full_constraints(rays)
            )
            return None if result is None else result.maximum

        _claim(
            report,
            "l5prime_constrained_max",
            l5p.classical_bound,
            "constrained",
            l5p_max,
        )

    if d == 3:
        _realization_claim(
            report,
            ray_sets.orthogonality_graph(rays),
            3,
            rays,
            seeds,
            realize_iters,
        )
    if d == 4:
        _realization_claim(
            report, graphs.line_graph(graphs.base_graph_9()), 4, rays, seeds,
            realize_iters,
        )
    return report


# ---------------------------------------------------------------------------
# Subcommands


def _print_json(data) -> None:
    print(json.dumps(data, indent=2, sort_keys=True))


def _cmd_construct(args) -> int:
    rays = ray_sets.build_for_dimension(args.dim)
    text = json.dumps(ray_sets.rayset_to_json(rays), indent=2, sort_keys=True)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return 0


def _cmd_graph(args) -> int:
    rays = ray_sets.build_for_dimension(args.dim)
    dot = graphs.export_dot(ray_sets.orthogonality_graph(rays))
    with open(args.dot, "w", encoding="utf-8") as fh:
        fh.write(dot)
    return 0


def _cmd_verify_quantum(args) -> int:
    d = args.dim
    rays = ray_sets.build_for_dimension(d)
    form = quadform.build_inequality(d)
    report = Report(d, rays.ray_count)
    _claim(
        report,
        "quantum_identity",
        form.quantum_value,
        "operator",
        lambda: scalar_identity_check(quadform.quantum_operator(form, rays)),
    )
    _emit(args, report)
    return 0 if report.all_verified else 1


_METHODS = {
    "exhaustive": "exhaustive",
    "bb": "branch_bound",
    "blockdp": "block_dp",
}


def _cmd_bound(args) -> int:
    d = args.dim
    rays = ray_sets.build_for_dimension(d)
    form = quadform.build_inequality(d)
    if args.method == "exhaustive":
        result = bounds.max_exhaustive(form)
    elif args.method == "bb":
        result = bounds.max_branch_bound(form)
    else:
        if rays.layout is None:
            raise ValueError("block_dp needs the block layout of d >= 6")
        result = bounds.max_block_dp(form, rays.layout)
    report = Report(d, rays.ray_count)
    report.claims.append(
        Claim(
            f"classical_bound[{result.method}]",
            form.classical_bound,
            result.maximum,
            result.maximum == form.classical_bound,
            result.method,
            0.0,
        )
    )
    if args.json:
        data = report_to_json(report)
        data["bound"] = bounds.bound_result_to_json(result)
        _print_json(data)
    else:
        print(render_report(report))
        print(f"evaluations: {result.evaluations}")
    return 0 if report.all_verified else 1


def _cmd_ks_search(args) -> int:
    d = args.dim
    rays = ray_sets.build_for_dimension(d)
    found = ks_assign.find_ks_assignments(rays, limit=args.limit)
    expected = _ks_expected(d)
    verified = bool(found) == bool(expected)
    if args.json:
        _print_json(
            {
                "dimension": d,
                "count": len(found),
                "limit": args.limit,
                "expected_exists": bool(expected),
                "verified": verified,
                "assignments": found,
            }
        )
    else:
        label = "assignments" if args.limit is None else f"assignments (limit {args.limit})"
        print(f"dimension {d}: {len(found)} KS value {label}")
        print(f"expected {'some' if expected else 'none'}: "
              f"{'ok' if verified else 'REFUTED'}")
        for assignment in found[: args.show]:
            ones = [k for k, v in sorted(assignment.items()) if v == 1]
            print("  1-rays:", " ".join(ones) if ones else "(none)")
    return 0 if verified else 1


def _cmd_hexagon(args) -> int:
    triple = tuple(t.strip() for t in args.triple.split(","))
    rays = ray_sets.build_18ray()
    hexagon = quadform.build_hexagon(triple)
    report = Report(4, rays.ray_count)
    _claim(
        report,
        f"hexagon_identity[{args.triple}]",
        hexagon.quantum_value,
        "operator",
        lambda: scalar_identity_check(quadform.quantum_operator(hexagon, rays)),
    )

    def constrained() -> Rational | None:
        constraints = ks_assign.partial_constraints(
            rays, [ray_sets.rays_at_vertex(v) for v in triple]
        )
        result = ks_assign.max_over_constrained(hexagon, rays, constraints)
        return None if result is None else result.maximum

    _claim(
        report,
        f"hexagon_constrained_max[{args.triple}]",
        hexagon.classical_bound,
        "constrained",
        constrained,
    )
    _emit(args, report)
    return 0 if report.all_verified else 1


def _cmd_probe(args) -> int:
    d = args.dim
    form = quadform.build_inequality(d)
    value = bounds.continuous_probe(form, args.samples, args.seed)
    within = value <= form.classical_bound
    if args.json:
        _print_json(
            {
                "dimension": d,
                "samples": args.samples,
                "seed": args.seed,
                "value": str(value),
                "classical_bound": str(form.classical_bound),
                "within_bound": within,
            }
        )
    else:
        print(
            f"continuous probe (dim {d}, {args.samples} samples, seed {args.seed}): "
            f"{value}"
        )
        print(f"classical bound {form.classical_bound}: "
              f"{'ok' if within else 'EXCEEDED'}")
    return 0 if within else 1


def _cmd_realize(args) -> int:
    with open(args.graph, "r", encoding="utf-8") as fh:
        graph = graphs.graph_from_json(json.load(fh))
    reference = None
    if args.reference:
        with open(args.reference, "r", encoding="utf-8") as fh:
            reference = ray_sets.rayset_from_json(json.load(fh))
    runs = []
    good = matched = 0
    for seed in range(args.seeds):
        rep = realize.realize_graph(
            graph,
            args.dim,
            seed=seed,
            max_iters=args.max_iters,
            reference=reference,
            tol=args.tol,
        )
        runs.append(rep)
        if rep.converged and not rep.degenerate:
            good += 1
            if rep.matched_reference:
                matched += 1
    ok = good >= 1 and (reference is None or matched == good)
    if args.json:
        _print_json(
            {
                "dimension": args.dim,
                "seeds": args.seeds,
                "tol": args.tol,
                "converged_nondegenerate": good,
                "matched_reference": matched if reference is not None else None,
                "verified": ok,
                "runs": [realize.report_to_json(r) for r in runs],
            }
        )
    else:
        for seed, rep in enumerate(runs):
            state = "converged" if rep.converged else "stalled"
            extra = " degenerate" if rep.degenerate else ""
            match = (
                ""
                if reference is None
                else (" match" if rep.matched_reference else " MISMATCH")
            )
            print(
                f"seed {seed:3d}: {state}{extra} residual {rep.residual:.3e} "
                f"({rep.iterations} sweeps){match}"
            )
        print(
            f"{good}/{args.seeds} converged nondegenerate"
            + ("" if reference is None else f", {matched} matched the reference")
        )
        print("ok" if ok else "REFUTED")
    return 0 if ok else 1


def _cmd_report(args) -> int:
    report = run_report(args.dim, seeds=args.seeds, realize_iters=args.max_iters)
    _emit(args, report)
    return 0 if report.all_verified else 1


def _emit(args, report: Report) -> None:
    if args.json:
        _print_json(report_to_json(report))
    else:
        print(render_report(report))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ksray",
        description=(
            "Construct Kochen-Specker ray sets, verify their quantum operator "
            "identities, compute exact classical bounds, search for KS value "
            "assignments, and test realization uniqueness."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, func, help_: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_)
        p.set_defaults(func=func)
        p.add_argument("--json", action="store_true", help="emit JSON output")
        p.add_argument(
            "--threads",
            type=int,
            default=1,
            help="worker count; solvers are deterministic and results do not "
            "depend on it (current solvers are single-threaded)",
        )
        return p

    p = add("construct", _cmd_construct, "build the ray set for a dimension")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--out", help="output file (default: stdout)")

    p = add("graph", _cmd_graph, "export the orthogonality graph as DOT")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--dot", required=True, help="output DOT file")

    p = add("verify-quantum", _cmd_verify_quantum, "check the operator identity")
    p.add_argument("--dim", type=int, required=True)

    p = add("bound", _cmd_bound, "compute the exact classical bound")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument(
        "--method", choices=("exhaustive", "bb", "blockdp"), required=True
    )

    p = add("ks-search", _cmd_ks_search, "search for KS value assignments")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--limit", type=int, default=None)
    p.add_argument("--show", type=int, default=5, help="assignments to print")

    p = add("hexagon", _cmd_hexagon, "hexagon identity and constrained bound")
    p.add_argument("--triple", required=True, help="comma-separated vertices, e.g. 7,8,9")

    p = add("realize", _cmd_realize, "realize a graph JSON file by unit rays")
    p.add_argument("--graph", required=True, help="Graph JSON file")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--seeds", type=int, default=10)
    p.add_argument("--tol", type=float, default=realize.DEFAULT_SIGNATURE_TOL)
    p.add_argument("--max-iters", type=int, default=2000)
    p.add_argument("--reference", help="RaySet JSON to compare signatures against")

    p = add("probe", _cmd_probe, "continuous-relaxation probe of the inequality")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--samples", type=int, default=10000)
    p.add_argument("--seed", type=int, default=0)

    p = add("report", _cmd_report, "full verification report for a dimension")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--seeds", type=int, default=10, help="realization seeds")
    p.add_argument("--max-iters", type=int, default=2000)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "threads", 1) < 1:
        print("error: --threads must be at least 1", file=sys.stderr)
        return 2
    try:
        return args.func(args)
    except (ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
