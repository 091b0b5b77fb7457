"""Numerical realization of orthogonality graphs and Gram comparison."""

import numpy as np
import pytest

import ksray as K
from ksray.graphs import graph_from_edges
from ksray.realize import CONVERGENCE_RESIDUAL, FloatRaySet


def test_residual_of_exact_18ray_set(s18, g9):
    fs = K.float_rayset(s18)
    assert K.residual(fs, K.line_graph(g9)) < 1e-24


def test_residual_of_parallel_rays():
    g = graph_from_edges(("a", "b"), [("a", "b")])
    rays = FloatRaySet(2, ("a", "b"), np.array([[1.0, 0.0], [1.0, 0.0]]))
    assert K.residual(rays, g) == 1.0


def test_residual_orthonormal_basis_complete_graph():
    g = graph_from_edges(("a", "b", "c"), [("a", "b"), ("b", "c"), ("a", "c")])
    rays = FloatRaySet(3, ("a", "b", "c"), np.eye(3))
    assert K.residual(rays, g) == 0.0


def test_residual_label_mismatch(s18, g9):
    with pytest.raises(ValueError):
        K.residual(K.float_rayset(s18), g9)


def test_residual_rotation_invariant(s18, g9):
    fs = K.float_rayset(s18)
    lg = K.line_graph(g9)
    rng = np.random.default_rng(0)
    q, _ = np.linalg.qr(rng.normal(size=(4, 4)))
    rotated = FloatRaySet(4, fs.labels, fs.rays @ q)
    assert abs(K.residual(rotated, lg) - K.residual(fs, lg)) < 1e-10


def test_realize_single_edge_dimension_2():
    g = graph_from_edges(("a", "b"), [("a", "b")])
    report = K.realize_graph(g, 2, seed=0, max_iters=10)
    assert report.converged
    assert report.iterations == 1
    assert report.residual < CONVERGENCE_RESIDUAL


def test_realize_rejects_dimension_1(g9):
    with pytest.raises(ValueError):
        K.realize_graph(g9, 1, seed=0)


def test_realize_line_graph_matches_reference(s18, g9):
    report = K.realize_graph(
        K.line_graph(g9), 4, seed=0, max_iters=2000, reference=s18
    )
    assert report.converged
    assert not report.degenerate
    assert report.matched_reference


def test_realize_delta13_matches_reference(s13):
    graph = K.orthogonality_graph(s13)
    report = K.realize_graph(graph, 3, seed=1, max_iters=2000, reference=s13)
    assert report.converged and not report.degenerate and report.matched_reference


def test_matched_realization_spot_overlap(s18, g9):
    # One concrete squared overlap agrees with the exact reference value.
    lg = K.line_graph(g9)
    report = K.realize_graph(lg, 4, seed=3, max_iters=2000, reference=s18)
    assert report.matched_reference
    labels, ref = K.squared_overlaps(s18)
    i, j = labels.index("v16"), labels.index("v67")
    gi, gj = lg.vertices.index("v16"), lg.vertices.index("v67")
    assert abs(report.gram[gi, gj] - ref[i, j]) < 1e-6


def test_compare_gram_reflexive_symmetric(s13, s18):
    assert K.compare_gram(s18, s18, 1e-12)
    a = K.float_rayset(s18)
    assert K.compare_gram(a, s18, 1e-12) and K.compare_gram(s18, a, 1e-12)
    with pytest.raises(ValueError):
        K.compare_gram(s13, s18, 1e-6)


def test_compare_gram_sign_flip_invariant(s18):
    fs = K.float_rayset(s18)
    flipped = fs.rays.copy()
    flipped[::2] *= -1.0
    assert K.compare_gram(FloatRaySet(4, fs.labels, flipped), s18, 1e-12)


def test_compare_gram_plane_rotation(s18):
    # The 45-degree rotation in the plane spanned by v16 and v17
    # (coordinates 3 and 4) is a global orthogonal map, so the squared
    # overlaps are unchanged.
    r = np.sqrt(0.5) * np.array([[1.0, 1.0], [1.0, -1.0]])
    q = np.block(
        [[np.eye(2), np.zeros((2, 2))], [np.zeros((2, 2)), r]]
    )
    fs = K.float_rayset(s18)
    rotated = FloatRaySet(4, fs.labels, fs.rays @ q.T)
    assert K.compare_gram(rotated, s18, 1e-12)


def test_compare_gram_exact_hadamard_image(s18):
    # An integer Hadamard matrix is twice an orthogonal matrix, so applying
    # it keeps all entries integral and the signature exactly equal.
    h = (
        (1, 1, 1, 1),
        (1, -1, 1, -1),
        (1, 1, -1, -1),
        (1, -1, -1, 1),
    )

    def apply(vec):
        return tuple(sum(h[i][j] * vec[j] for j in range(4)) for i in range(4))

    other = K.RaySet(4, tuple((l, apply(v)) for l, v in s18.rays))
    assert K.gram_signature(other) == K.gram_signature(s18)
    assert K.compare_gram(other, s18, 1e-12)


def test_compare_gram_detects_different_realization(s18, g9):
    rng = np.random.default_rng(5)
    rays = rng.normal(size=(18, 4))
    rays /= np.linalg.norm(rays, axis=1, keepdims=True)
    random_set = FloatRaySet(4, s18.labels, rays)
    assert not K.compare_gram(random_set, s18, 1e-6)


def test_basis_degenerate_detection():
    g = graph_from_edges(("a", "b"), [("a", "b")])
    eps = 1e-5
    nearly_parallel = np.array([[1.0, 0.0], [np.sqrt(1 - eps**2), eps]])
    assert K.basis_degenerate(FloatRaySet(2, ("a", "b"), nearly_parallel), g)
    assert not K.basis_degenerate(FloatRaySet(2, ("a", "b"), np.eye(2)), g)


def test_float_rayset_requires_unit_norm():
    with pytest.raises(ValueError):
        FloatRaySet(2, ("a",), np.array([[2.0, 0.0]]))


def test_report_json_round_trips_through_floats(s13):
    graph = K.orthogonality_graph(s13)
    report = K.realize_graph(graph, 3, seed=0, max_iters=500, reference=s13)
    data = K.report_to_json(report)
    assert set(data) == {
        "residual",
        "degenerate",
        "gram",
        "matched_reference",
        "converged",
        "iterations",
    }
    assert data["matched_reference"] == report.matched_reference
    assert data["gram"][0][0] == pytest.approx(1.0)
