"""Numerical realization of orthogonality graphs by unit rays.

Starting from seeded random unit vectors, each ray is cyclically reset to
the least-eigenvector direction of its neighbors' projector sum, which
monotonically decreases the residual sum of squared overlaps on graph
edges.  A converged, nondegenerate run realizes the graph; comparing its
squared-overlap Gram matrix against a reference set tests uniqueness up
to a global unitary.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

import numpy as np

from .graphs import Graph, cliques_of_size
from .ray_sets import RaySet

# A run counts as converged once the residual is below this; exact
# solutions sit many orders of magnitude lower than stalled runs.
CONVERGENCE_RESIDUAL = 1e-20

# A required basis clique with |det Gram| below this marks the run as
# degenerate (its rays fail to span).
DEGENERACY_DET = 1e-6

DEFAULT_SIGNATURE_TOL = 1e-6


@dataclass(frozen=True)
class FloatRaySet:
    """Unit-norm floating-point rays labeled like the target graph."""

    dimension: int
    labels: tuple[str, ...]
    rays: np.ndarray  # shape (len(labels), dimension), unit rows

    def __post_init__(self) -> None:
        if self.rays.shape != (len(self.labels), self.dimension):
            raise ValueError("ray array shape does not match labels/dimension")
        norms = np.linalg.norm(self.rays, axis=1)
        if np.any(np.abs(norms - 1.0) > 1e-12):
            raise ValueError("rays must be unit norm (within 1e-12)")


@dataclass(frozen=True)
class RealizationReport:
    """Outcome of one realization run."""

    residual: float
    degenerate: bool
    gram: np.ndarray  # squared normalized overlaps
    matched_reference: bool
    converged: bool
    iterations: int
    rays: FloatRaySet


def float_rayset(s: RaySet) -> FloatRaySet:
    """Normalize an exact ray set into floating point."""
    arr = np.array([[float(c) for c in vec] for _, vec in s.rays], dtype=float)
    arr /= np.linalg.norm(arr, axis=1, keepdims=True)
    return FloatRaySet(s.dimension, s.labels, arr)


def squared_overlaps(s: Union[FloatRaySet, RaySet]) -> tuple[tuple[str, ...], np.ndarray]:
    """Labels plus the matrix of squared overlaps |<u|v>|^2 for unit rays."""
    if isinstance(s, RaySet):
        s = float_rayset(s)
    return s.labels, (s.rays @ s.rays.T) ** 2


def residual(s: FloatRaySet, g: Graph) -> float:
    """Sum of squared overlaps over the graph's adjacent pairs."""
    if set(s.labels) != set(g.vertices):
        raise ValueError("ray labels do not match the graph's vertices")
    pos = {v: i for i, v in enumerate(s.labels)}
    total = 0.0
    for a, b in g.edges():
        total += float(s.rays[pos[a]] @ s.rays[pos[b]]) ** 2
    return total


def basis_degenerate(s: FloatRaySet, g: Graph) -> bool:
    """Whether some required basis clique of ``g`` fails to span.

    Every clique of ``g`` with as many vertices as the dimension must be a
    basis; a near-singular Gram determinant on one of them disqualifies
    the realization.
    """
    pos = {v: i for i, v in enumerate(s.labels)}
    for clique in cliques_of_size(g, s.dimension):
        sub = s.rays[[pos[v] for v in clique]]
        if abs(float(np.linalg.det(sub @ sub.T))) < DEGENERACY_DET:
            return True
    return False


def compare_gram(
    a: Union[FloatRaySet, RaySet],
    b: Union[FloatRaySet, RaySet],
    tol: float,
) -> bool:
    """Whether two sets have entrywise-equal squared-overlap matrices.

    Labels are matched pairwise; the comparison is invariant under global
    orthogonal maps, per-ray sign flips and scaling.
    """
    labels_a, gram_a = squared_overlaps(a)
    labels_b, gram_b = squared_overlaps(b)
    if set(labels_a) != set(labels_b):
        raise ValueError("label sets differ; nothing to compare")
    order_a = np.argsort(np.array(labels_a))
    order_b = np.argsort(np.array(labels_b))
    ga = gram_a[np.ix_(order_a, order_a)]
    gb = gram_b[np.ix_(order_b, order_b)]
    return bool(np.all(np.abs(ga - gb) < tol))


def realize_graph(
    g: Graph,
    dimension: int,
    seed: int,
    max_iters: int = 2000,
    reference: Union[FloatRaySet, RaySet, None] = None,
    tol: float = DEFAULT_SIGNATURE_TOL,
) -> RealizationReport:
    """Attempt to realize ``g``'s adjacency as exact orthogonality.

    One unit ray per vertex is drawn from a seeded sphere distribution and
    refined by cyclic least-eigenvector updates until the residual drops
    below ``CONVERGENCE_RESIDUAL`` or ``max_iters`` sweeps pass.  The run
    is flagged degenerate when any clique of ``g`` of size ``dimension``
    (a required basis) has near-singular Gram determinant.  With a
    ``reference``, ``matched_reference`` records signature agreement
    within ``tol``; failure is reported, never raised.
    """
    if dimension < 2:
        raise ValueError("realization needs dimension at least 2")
    rng = np.random.default_rng(seed)
    n = g.vertex_count
    rays = rng.normal(size=(n, dimension))
    rays /= np.linalg.norm(rays, axis=1, keepdims=True)
    neighbor_idx = [
        [g.index(u) for u in g.neighbors(v)] for v in g.vertices
    ]

    def current_residual() -> float:
        total = 0.0
        for i, nbrs in enumerate(neighbor_idx):
            for j in nbrs:
                if j > i:
                    total += float(rays[i] @ rays[j]) ** 2
        return total

    sweeps = 0
    res = current_residual()
    last_check = res
    for sweeps in range(1, max_iters + 1):
        for i, nbrs in enumerate(neighbor_idx):
            if not nbrs:
                continue
            block = rays[nbrs]
            m = block.T @ block
            _, eigvecs = np.linalg.eigh(m)
            rays[i] = eigvecs[:, 0]
        res = current_residual()
        if res < CONVERGENCE_RESIDUAL:
            break
        # Stalled descent cannot reach the threshold; give up early.
        if sweeps % 100 == 0:
            if res > last_check * 0.5 and res > 1e-12:
                break
            last_check = res

    converged = res < CONVERGENCE_RESIDUAL
    fset = FloatRaySet(
        dimension, g.vertices, rays / np.linalg.norm(rays, axis=1, keepdims=True)
    )
    degenerate = basis_degenerate(fset, g)

    matched = False
    if reference is not None and converged and not degenerate:
        matched = compare_gram(fset, reference, tol)

    _, gram = squared_overlaps(fset)
    return RealizationReport(
        residual=res,
        degenerate=degenerate,
        gram=gram,
        matched_reference=matched,
        converged=converged,
        iterations=sweeps,
        rays=fset,
    )


def report_to_json(r: RealizationReport) -> dict:
    """JSON-ready dict (floats in shortest round-trip form via json)."""
    return {
        "residual": r.residual,
        "degenerate": r.degenerate,
        "gram": [[float(x) for x in row] for row in r.gram],
        "matched_reference": r.matched_reference,
        "converged": r.converged,
        "iterations": r.iterations,
    }
