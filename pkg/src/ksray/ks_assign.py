"""KS value-assignment search: exclusivity plus completeness constraints.

A KS value assignment gives each ray 0 or 1 so that no two orthogonal
rays are both 1 (exclusivity) and every basis - every set of d mutually
orthogonal rays - contains exactly one 1 (completeness).  The search is
plain backtracking with forced-zero propagation; the constraint systems
in scope have at most a few dozen rays.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .bounds import BoundResult
from .graphs import Graph, cliques_of_size
from .quadform import QuadForm, evaluate
from .ray_sets import RaySet, orthogonality_graph


@dataclass(frozen=True)
class Basis:
    """d mutually orthogonal rays, stored as a sorted label tuple."""

    rays: tuple[str, ...]

    def __post_init__(self) -> None:
        if tuple(sorted(self.rays)) != self.rays:
            raise ValueError("basis labels must be sorted")
        if len(set(self.rays)) != len(self.rays):
            raise ValueError("basis labels must be distinct")


@dataclass(frozen=True)
class KSConstraints:
    """Exclusivity graph plus the bases on which completeness is imposed.

    Every completeness basis must be a clique of the exclusivity graph.
    """

    exclusivity_graph: Graph
    completeness_bases: tuple[Basis, ...]

    def __post_init__(self) -> None:
        g = self.exclusivity_graph
        for basis in self.completeness_bases:
            for i, a in enumerate(basis.rays):
                for b in basis.rays[i + 1 :]:
                    if not g.has_edge(a, b):
                        raise ValueError(
                            f"basis {basis.rays} is not a clique of the "
                            "exclusivity graph"
                        )


def enumerate_bases(s: RaySet) -> tuple[Basis, ...]:
    """All d-cliques of the orthogonality graph, in lexicographic order."""
    return tuple(
        Basis(clique)
        for clique in cliques_of_size(orthogonality_graph(s), s.dimension)
    )


def full_constraints(s: RaySet) -> KSConstraints:
    """Exclusivity on every orthogonal pair, completeness on every basis."""
    return KSConstraints(orthogonality_graph(s), enumerate_bases(s))


def partial_constraints(s: RaySet, bases: Iterable[Sequence[str]]) -> KSConstraints:
    """Full exclusivity but completeness only on the given bases."""
    return KSConstraints(
        orthogonality_graph(s),
        tuple(Basis(tuple(sorted(b))) for b in bases),
    )


def _backtrack(
    labels: Sequence[str],
    constraints: KSConstraints,
    limit: int | None,
    objective: QuadForm | None,
):
    """Enumerate assignments satisfying the constraints.

    Branches on rays in descending orthogonality-degree order, value 1
    before 0, propagating forced zeros from exclusivity and failing as
    soon as a completeness basis is fully assigned with no 1.  With an
    objective, tracks the exact maximum instead of collecting assignments.
    """
    g = constraints.exclusivity_graph
    n = len(labels)
    index = {v: i for i, v in enumerate(labels)}
    neighbors = [
        [index[u] for u in g.neighbors(v) if u in index] for v in labels
    ]
    bases = [
        tuple(index[r] for r in basis.rays)
        for basis in constraints.completeness_bases
    ]
    member_of: list[list[int]] = [[] for _ in range(n)]
    for b, rays in enumerate(bases):
        for i in rays:
            member_of[i].append(b)
    ones = [0] * len(bases)
    unassigned = [len(rays) for rays in bases]
    values = [-1] * n
    order = sorted(range(n), key=lambda i: (-len(neighbors[i]), labels[i]))

    found: list[dict[str, int]] = []
    best: list = [None, None]  # [max value, argmax assignment]
    nodes = [0]

    def set_value(i: int, val: int, trail: list[int]) -> bool:
        if values[i] != -1:
            return values[i] == val
        values[i] = val
        trail.append(i)
        # Update every counter before reporting failure, so the trail-based
        # undo always reverses exactly what happened.
        ok = True
        for b in member_of[i]:
            unassigned[b] -= 1
            if val == 1:
                ones[b] += 1
                if ones[b] > 1:
                    ok = False
            elif ones[b] == 0 and unassigned[b] == 0:
                ok = False
        if not ok:
            return False
        if val == 1:
            for j in neighbors[i]:
                if not set_value(j, 0, trail):
                    return False
        return True

    def undo(trail: list[int], depth: int) -> None:
        while len(trail) > depth:
            i = trail.pop()
            for b in member_of[i]:
                unassigned[b] += 1
                if values[i] == 1:
                    ones[b] -= 1
            values[i] = -1

    def record() -> None:
        assignment = {labels[i]: values[i] for i in range(n)}
        if objective is None:
            found.append(assignment)
        else:
            value = evaluate(objective, assignment)
            if best[0] is None or value > best[0]:
                best[0] = value
                best[1] = assignment

    def search(pos: int, trail: list[int]) -> bool:
        """Returns True when the search should stop (limit reached)."""
        nodes[0] += 1
        while pos < n and values[order[pos]] != -1:
            pos += 1
        if pos == n:
            record()
            return limit is not None and objective is None and len(found) >= limit
        i = order[pos]
        for val in (1, 0):
            mark = len(trail)
            if set_value(i, val, trail):
                if search(pos + 1, trail):
                    return True
            undo(trail, mark)
        return False

    search(0, [])
    return found, best, nodes[0]


def find_ks_assignments(
    s: RaySet, limit: int | None = None
) -> list[dict[str, int]]:
    """All (or the first ``limit``) KS value assignments of a ray set.

    Output is sorted canonically by the value tuple in label order, so it
    is independent of search order.
    """
    constraints = full_constraints(s)
    found, _, _ = _backtrack(s.labels, constraints, limit, None)
    return sorted(found, key=lambda a: tuple(a[v] for v in s.labels))


def max_over_constrained(
    f: QuadForm, s: RaySet, constraints: KSConstraints
) -> BoundResult | None:
    """Exact maximum of ``f`` over assignments satisfying the constraints.

    Returns None when no feasible assignment exists.  The search assigns
    every ray of the constraint system, so the witness covers all labels.
    """
    missing = set(f.variables) - set(s.labels)
    if missing:
        raise ValueError(f"form variables not in the ray set: {sorted(missing)}")
    _, best, nodes = _backtrack(s.labels, constraints, None, f)
    if best[0] is None:
        return None
    return BoundResult(
        maximum=best[0],
        argmax=best[1],
        method="constrained",
        evaluations=nodes,
    )
