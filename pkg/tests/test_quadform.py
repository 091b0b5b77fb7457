"""Inequality builders, evaluation, canonical form, quantum operators."""

import random
from fractions import Fraction

import pytest

import ksray as K
from ksray.exact_linalg import mat_mul, scalar_identity_check, trace
from ksray.quadform import make_form

F = Fraction


# --- L4 -----------------------------------------------------------------------


def test_l4_structure(l4):
    assert len(l4.variables) == 18
    assert all(c == 1 for c in l4.linear.values())
    assert len(l4.quadratic) == 54  # 9 vertices x C(4,2) shared-vertex pairs
    assert all(c == -1 for c in l4.quadratic.values())
    assert l4.quadratic[("v12", "v16")] == -1
    assert l4.classical_bound == 4
    assert l4.quantum_value == F(9, 2)
    assert not l4.requires_ks_constraints


def test_l4_evaluate_anchors(l4):
    zeros = {v: 0 for v in l4.variables}
    ones = {v: 1 for v in l4.variables}
    halves = {v: F(1, 2) for v in l4.variables}
    assert K.evaluate(l4, zeros) == 0
    assert K.evaluate(l4, ones) == 18 - 54
    assert K.evaluate(l4, halves) == F(-9, 2)


def test_l4_vertex_sum_rewrite(l4, g9):
    # Equivalent form: sum over vertices of v_i (2 - v_i) / 2, where v_i is
    # the number of chosen edges at vertex i.
    edges_at = {
        v: ["v" + "".join(sorted((v, u))) for u in g9.neighbors(v)]
        for v in g9.vertices
    }
    rng = random.Random(42)
    for _ in range(1000):
        a = {v: rng.randint(0, 1) for v in l4.variables}
        via_vertices = sum(
            (lambda s: F(s * (2 - s), 2))(sum(a[e] for e in edges_at[v]))
            for v in g9.vertices
        )
        assert K.evaluate(l4, a) == via_vertices


def test_l4_below_edge_sum_everywhere(l4):
    # L4 <= sum of the edge variables, checked by exact maximization of the
    # difference over all 2^18 assignments.
    diff = make_form(
        l4.variables,
        linear={v: l4.linear[v] - 1 for v in l4.variables},
        quadratic=l4.quadratic,
    )
    assert K.max_exhaustive(diff).maximum <= 0


# --- L3 -----------------------------------------------------------------------


def test_l3_structure(l3):
    assert len(l3.variables) == 13
    assert l3.linear["h0"] == F(1, 2)
    assert l3.linear["y1+"] == 1
    assert l3.linear["z2"] == 1
    assert len(l3.quadratic) == 24  # the full orthogonality relation
    assert l3.classical_bound == F(7, 2)
    assert l3.quantum_value == F(11, 3)


def test_l3_below_variable_sum_everywhere(l3):
    diff = make_form(
        l3.variables,
        linear={v: l3.linear[v] - 1 for v in l3.variables},
        quadratic=l3.quadratic,
    )
    assert K.max_exhaustive(diff).maximum <= 0


def test_l3_rejects_wrong_sets(s18, s25):
    with pytest.raises(ValueError):
        K.build_L3(s18)
    with pytest.raises(ValueError):
        K.build_L3(s25)


def test_l3_accepts_embedded_block():
    s = K.build_general(6)
    block1 = K.subset(s, [l for l in s.labels if l.startswith("b1:")])
    f = K.build_L3(block1)
    assert f.linear["b1:h0"] == F(1, 2)
    assert f.quantum_value == F(11, 3)


# --- L5 -----------------------------------------------------------------------


def test_l5_structure(l5):
    assert len(l5.variables) == 25
    assert l5.linear["z3"] == 2  # shared ray collects both unit weights
    assert l5.classical_bound == F(43, 6)
    assert l5.quantum_value == F(22, 3)
    assert len(l5.quadratic) == 92


def test_l5_zprime_coefficients(l5):
    # From (11/3) x (2-x): linear 11/3 extra, pairwise -22/3 among the four.
    assert l5.linear["z1"] == 1 + F(11, 3)
    assert l5.linear["Z2"] == 1 + F(11, 3)
    # z1, z2 are orthogonal inside the lowercase copy too: -1 there.
    assert l5.quadratic[("z1", "z2")] == -1 - F(22, 3)
    # z1 vs an uppercase ray: cross product only.
    assert l5.quadratic[("Y1+", "z1")] == -1


# --- Ld -----------------------------------------------------------------------


def test_ld6_structure():
    f = K.build_Ld(6)
    assert len(f.variables) == 26
    assert f.classical_bound == F(21, 22)
    assert f.quantum_value == 1
    assert f.linear["b1:z1"] == F(3, 11)
    assert f.linear["b1:h0"] == F(3, 22)
    # cross-block coupling between qutrit blocks
    assert f.quadratic[("b1:z1", "b2:z1")] == F(-3, 11)


def test_ld7_structure():
    f = K.build_Ld(7)
    assert len(f.variables) == 31
    assert f.linear["b2:v12"] == F(2, 9)
    # qutrit-ququart cross terms carry unit weight
    assert f.quadratic[("b1:z1", "b2:v12")] == -1


def test_ld_rejects_small_dimension():
    with pytest.raises(ValueError):
        K.build_Ld(5)


# --- hexagon and L5' ------------------------------------------------------------


def test_hexagon_789_variables():
    f = K.build_hexagon(("7", "8", "9"))
    assert f.variables == ("v12", "v16", "v23", "v34", "v45", "v56")
    assert not f.quadratic
    assert f.classical_bound == 1
    assert f.quantum_value == F(3, 2)
    assert f.requires_ks_constraints


def test_hexagon_accepts_ints():
    assert K.build_hexagon((7, 8, 9)).variables == K.build_hexagon(("7", "8", "9")).variables


def test_hexagon_rejects_adjacent_triple():
    with pytest.raises(ValueError):
        K.build_hexagon(("1", "2", "3"))  # 1-2 is an edge
    with pytest.raises(ValueError):
        K.build_hexagon(("7", "7", "9"))


@pytest.mark.parametrize("triple", [("1", "3", "5"), ("2", "4", "6"), ("7", "8", "9")])
def test_hexagon_edges_form_one_six_cycle(triple, g9):
    f = K.build_hexagon(triple)
    pairs = [(l[1], l[2]) for l in f.variables]
    degree = {}
    for a, b in pairs:
        degree[a] = degree.get(a, 0) + 1
        degree[b] = degree.get(b, 0) + 1
    assert len(degree) == 6
    assert all(d == 2 for d in degree.values())
    # connected 2-regular on 6 vertices = a single hexagon
    adj = {v: [] for v in degree}
    for a, b in pairs:
        adj[a].append(b)
        adj[b].append(a)
    seen = set()
    stack = [next(iter(adj))]
    while stack:
        v = stack.pop()
        if v in seen:
            continue
        seen.add(v)
        stack.extend(adj[v])
    assert len(seen) == 6


def test_l5prime_structure(l5prime):
    assert len(l5prime.variables) == 12
    assert l5prime.linear["h0"] == F(1, 2)
    assert l5prime.linear["H3"] == F(1, 2)
    assert l5prime.linear["z1"] == F(2, 3)
    assert l5prime.linear["Z3"] == F(2, 3)
    assert not l5prime.quadratic
    assert l5prime.classical_bound == F(7, 6)
    assert l5prime.quantum_value == F(4, 3)
    assert l5prime.requires_ks_constraints


# --- evaluation and canonical form --------------------------------------------


def test_evaluate_missing_variable(l4):
    with pytest.raises(ValueError):
        K.evaluate(l4, {v: 0 for v in l4.variables[:-1]})


def test_make_form_folds_squares_and_merges():
    f = make_form(
        ("a", "b"),
        linear={"a": 1},
        quadratic={("a", "a"): 2, ("b", "a"): F(1, 2), ("a", "b"): F(1, 2)},
    )
    assert f.linear["a"] == 3  # 1 + folded square
    assert f.quadratic == {("a", "b"): 1}


def test_make_form_drops_zeros():
    f = make_form(("a", "b"), linear={"a": 0}, quadratic={("a", "b"): 0})
    assert not f.linear
    assert not f.quadratic


def test_make_form_rejects_unknown_labels():
    with pytest.raises(ValueError):
        make_form(("a",), linear={"b": 1})
    with pytest.raises(ValueError):
        make_form(("a", "b"), quadratic={("a", "c"): 1})


def test_rename_variables(l4):
    renamed = K.rename_variables(l4, {v: "x:" + v for v in l4.variables})
    assert renamed.variables[0] == "x:v12"
    assert renamed.quadratic[("x:v12", "x:v16")] == -1
    assert renamed.classical_bound == l4.classical_bound


# --- quantum operators -----------------------------------------------------------


def test_quantum_operator_l4(l4, s18):
    assert scalar_identity_check(K.quantum_operator(l4, s18)) == F(9, 2)


def test_quantum_operator_l5(l5, s25):
    assert scalar_identity_check(K.quantum_operator(l5, s25)) == F(22, 3)


def test_quantum_operator_ld6():
    op = K.quantum_operator(K.build_Ld(6), K.build_general(6))
    assert scalar_identity_check(op) == 1


def test_quantum_operator_rejects_nonorthogonal_pairs(s13):
    bad = make_form(("h0", "h1"), quadratic={("h0", "h1"): 1})
    with pytest.raises(ValueError):
        K.quantum_operator(bad, s13)


def test_quantum_value_matches_for_every_builder(s13, s18, s25, l3, l4, l5, l5prime):
    cases = [
        (l3, s13),
        (l4, s18),
        (l5, s25),
        (l5prime, s25),
        (K.build_hexagon(("7", "8", "9")), s18),
        (K.build_Ld(6), K.build_general(6)),
        (K.build_Ld(7), K.build_general(7)),
    ]
    for f, s in cases:
        assert scalar_identity_check(K.quantum_operator(f, s)) == f.quantum_value


def test_state_independence(l4, s18):
    # Five hand-built symmetric trace-1 rational states all give 9/2.
    op = K.quantum_operator(l4, s18)
    states = [
        [[F(1, 4) if i == j else F(0) for j in range(4)] for i in range(4)],
        [[F(1) if i == j == 0 else F(0) for j in range(4)] for i in range(4)],
        [
            [F(1, 2), F(1, 4), F(0), F(0)],
            [F(1, 4), F(1, 4), F(0), F(0)],
            [F(0), F(0), F(1, 8), F(0)],
            [F(0), F(0), F(0), F(1, 8)],
        ],
        [[F(i == j, 10) * (i + 1) for j in range(4)] for i in range(4)],
        [
            [F(1, 3), F(0), F(1, 6), F(0)],
            [F(0), F(1, 3), F(0), F(0)],
            [F(1, 6), F(0), F(1, 6), F(0)],
            [F(0), F(0), F(0), F(1, 6)],
        ],
    ]
    for rho in states:
        rho_t = tuple(tuple(row) for row in rho)
        assert trace(rho_t) == 1
        assert trace(mat_mul(rho_t, op)) == F(9, 2)


# --- dimension dispatch and JSON -------------------------------------------------


@pytest.mark.parametrize(
    "d,classical,quantum",
    [
        (3, F(7, 2), F(11, 3)),
        (4, F(4), F(9, 2)),
        (5, F(43, 6), F(22, 3)),
        (6, F(21, 22), F(1)),
    ],
)
def test_build_inequality_dispatch(d, classical, quantum):
    f = K.quadform.build_inequality(d)
    assert f.classical_bound == classical
    assert f.quantum_value == quantum


@pytest.mark.parametrize("builder", ["l3", "l4", "l5", "l5prime"])
def test_quadform_json_round_trip(builder, request):
    f = request.getfixturevalue(builder)
    data = K.quadform_to_json(f)
    again = K.quadform_from_json(data)
    assert again == f


def test_quadform_json_shape(l4):
    data = K.quadform_to_json(l4)
    assert data["classical_bound"] == "4"
    assert data["quantum_value"] == "9/2"
    assert data["requires_ks_constraints"] is False
    assert ["v12", "v16", "-1"] in data["quadratic"]
