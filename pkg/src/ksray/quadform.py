"""Quadratic pseudo-Boolean expressions over ray-labeled binary variables.

A :class:`QuadForm` is kept canonical: square terms are folded into the
linear part (x^2 = x for binary x), duplicate pair keys are merged by
addition, pair keys are sorted, and exact zeros are dropped.  The stored
``classical_bound`` and ``quantum_value`` are claims to be verified by
:mod:`ksray.bounds` and :func:`quantum_operator`, not trusted facts.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Mapping

from .exact_linalg import (
    RatMatrix,
    Rational,
    RationalLike,
    identity,
    inner_product,
    rational,
    weighted_operator,
)
from .graphs import base_graph_9
from .ray_sets import (
    RaySet,
    build_13ray,
    build_18ray,
    build_25ray,
    build_general,
    subset,
)

# Assignments map variable labels to exact values; binary assignments use
# 0 and 1, the continuous relaxation uses rationals in [0, 1].
Assignment = Mapping[str, RationalLike]

Q3 = Fraction(11, 3)  # quantum value of the 13-ray expression
C3 = Fraction(7, 2)  # its classical bound
Q4 = Fraction(9, 2)  # quantum value of the 18-ray expression
C4 = Fraction(4)  # its classical bound


@dataclass(frozen=True)
class QuadForm:
    """Canonical quadratic expression: constant + linear + pairwise terms.

    ``quadratic`` is keyed by sorted distinct label pairs.  Every keyed
    label appears in ``variables``.
    """

    variables: tuple[str, ...]
    constant: Rational
    linear: dict[str, Rational]
    quadratic: dict[tuple[str, str], Rational]
    classical_bound: Rational | None = None
    quantum_value: Rational | None = None
    requires_ks_constraints: bool = False

    def __post_init__(self) -> None:
        known = set(self.variables)
        if len(known) != len(self.variables):
            raise ValueError("variables must be unique")
        for label in self.linear:
            if label not in known:
                raise ValueError(f"linear term on unknown variable {label!r}")
        for a, b in self.quadratic:
            if a >= b:
                raise ValueError(f"pair key ({a!r}, {b!r}) is not sorted-distinct")
            if a not in known or b not in known:
                raise ValueError(f"quadratic term on unknown pair ({a!r}, {b!r})")


def make_form(
    variables: Iterable[str],
    constant: RationalLike = 0,
    linear: Mapping[str, RationalLike] | None = None,
    quadratic: Mapping[tuple[str, str], RationalLike] | None = None,
    classical_bound: RationalLike | None = None,
    quantum_value: RationalLike | None = None,
    requires_ks_constraints: bool = False,
) -> QuadForm:
    """Canonicalizing constructor: folds squares, merges pairs, drops zeros."""
    vars_t = tuple(variables)
    known = set(vars_t)
    lin: defaultdict[str, Fraction] = defaultdict(Fraction)
    for label, c in (linear or {}).items():
        if label not in known:
            raise ValueError(f"linear term on unknown variable {label!r}")
        lin[label] += rational(c)
    quad: defaultdict[tuple[str, str], Fraction] = defaultdict(Fraction)
    for (a, b), c in (quadratic or {}).items():
        if a not in known or b not in known:
            raise ValueError(f"quadratic term on unknown pair ({a!r}, {b!r})")
        c = rational(c)
        if a == b:
            lin[a] += c  # x^2 = x on binaries
        else:
            quad[(a, b) if a < b else (b, a)] += c
    ordered_lin = {v: lin[v] for v in vars_t if lin[v] != 0}
    ordered_quad = {k: quad[k] for k in sorted(quad) if quad[k] != 0}
    return QuadForm(
        vars_t,
        rational(constant),
        ordered_lin,
        ordered_quad,
        None if classical_bound is None else rational(classical_bound),
        None if quantum_value is None else rational(quantum_value),
        requires_ks_constraints,
    )


class _Accumulator:
    """Mutable term collector used by the composite builders."""

    def __init__(self) -> None:
        self.constant = Fraction(0)
        self.linear: defaultdict[str, Fraction] = defaultdict(Fraction)
        self.quadratic: defaultdict[tuple[str, str], Fraction] = defaultdict(Fraction)

    def add_linear(self, label: str, coeff: Rational) -> None:
        self.linear[label] += coeff

    def add_pair(self, a: str, b: str, coeff: Rational) -> None:
        if a == b:
            self.linear[a] += coeff
        else:
            self.quadratic[(a, b) if a < b else (b, a)] += coeff

    def add_form(self, f: QuadForm, factor: Rational = Fraction(1)) -> None:
        self.constant += factor * f.constant
        for label, c in f.linear.items():
            self.add_linear(label, factor * c)
        for (a, b), c in f.quadratic.items():
            self.add_pair(a, b, factor * c)

    def form(self, variables: Iterable[str], **claims) -> QuadForm:
        return make_form(
            variables,
            constant=self.constant,
            linear=dict(self.linear),
            quadratic=dict(self.quadratic),
            **claims,
        )


def rename_variables(f: QuadForm, mapping: Mapping[str, str]) -> QuadForm:
    """Relabel variables (claims and flags carry over)."""
    def ren(label: str) -> str:
        return mapping.get(label, label)

    return make_form(
        tuple(ren(v) for v in f.variables),
        constant=f.constant,
        linear={ren(l): c for l, c in f.linear.items()},
        quadratic={(ren(a), ren(b)): c for (a, b), c in f.quadratic.items()},
        classical_bound=f.classical_bound,
        quantum_value=f.quantum_value,
        requires_ks_constraints=f.requires_ks_constraints,
    )


def _local_label(label: str) -> str:
    """Strip an optional block prefix 'b<k>:' from a ray label."""
    return label.split(":", 1)[1] if ":" in label else label


def build_L4() -> QuadForm:
    """18-variable expression: unit weight per edge ray, -1 per pair of rays
    whose base-graph edges share a vertex.  Classically at most 4, quantum
    value 9/2."""
    s = build_18ray()
    g = base_graph_9()
    endpoints = {"v" + "".join(e): set(e) for e in g.edges()}
    linear = {label: Fraction(1) for label in s.labels}
    quadratic: dict[tuple[str, str], Fraction] = {}
    for a, b in combinations(s.labels, 2):
        if endpoints[a] & endpoints[b]:
            quadratic[(a, b)] = Fraction(-1)
    return make_form(
        s.labels,
        linear=linear,
        quadratic=quadratic,
        classical_bound=C4,
        quantum_value=Q4,
    )


def build_L3(set13: RaySet) -> QuadForm:
    """13-variable expression on a qutrit-type ray set: weight 1 on y and z
    rays, 1/2 on h rays, -1 on every orthogonal pair.  Classically at most
    7/2, quantum value 11/3.

    Accepts the 13-ray set itself, a block-embedded copy, or either
    sub-copy of the 25-ray set (labels classified case-insensitively by
    their leading letter after any block prefix).
    """
    if set13.ray_count != 13:
        raise ValueError(f"expected 13 rays, got {set13.ray_count}")
    weights = {"y": Fraction(1), "h": Fraction(1, 2), "z": Fraction(1)}
    classes: dict[str, int] = {"y": 0, "h": 0, "z": 0}
    linear: dict[str, Fraction] = {}
    for label in set13.labels:
        cls = _local_label(label)[0].lower()
        if cls not in weights:
            raise ValueError(f"ray label {label!r} is not of y/h/z type")
        classes[cls] += 1
        linear[label] = weights[cls]
    if classes != {"y": 6, "h": 4, "z": 3}:
        raise ValueError(f"wrong label classes for a 13-ray set: {classes}")
    quadratic: dict[tuple[str, str], Fraction] = {}
    rays = set13.rays
    for i in range(len(rays)):
        for j in range(i + 1, len(rays)):
            if inner_product(rays[i][1], rays[j][1]) == 0:
                quadratic[(rays[i][0], rays[j][0])] = Fraction(-1)
    return make_form(
        set13.labels,
        linear=linear,
        quadratic=quadratic,
        classical_bound=C3,
        quantum_value=Q3,
    )


def build_L5() -> QuadForm:
    """25-variable expression in dimension 5.

    Sum of the 13-ray expressions on the lowercase and uppercase copies
    (the shared ray z3 accumulates both unit weights), plus the folded
    expansion of (11/3) x (2 - x) for x = z1 + z2 + Z2 + Z3, minus the
    cross products (z1 + z2) * (uppercase sum) and (Z2 + Z3) *
    (lowercase sum).  Classically at most 43/6, quantum value 22/3.
    """
    s = build_25ray()
    lower = [l for l in s.labels if not l[0].isupper()]
    upper = [l for l in s.labels if l[0].isupper() or l == "z3"]
    acc = _Accumulator()
    acc.add_form(build_L3(subset(s, lower)))
    acc.add_form(build_L3(subset(s, upper)))
    zprime = ("z1", "z2", "Z2", "Z3")
    for x in zprime:
        acc.add_linear(x, Q3)  # (11/3) (x(2-x)) folds to (11/3) x - (22/3) pairwise
    for a, b in combinations(zprime, 2):
        acc.add_pair(a, b, -2 * Q3)
    for x in ("z1", "z2"):
        for u in upper:
            acc.add_pair(x, u, Fraction(-1))
    for x in ("Z2", "Z3"):
        for u in lower:
            acc.add_pair(x, u, Fraction(-1))
    return acc.form(
        s.labels,
        classical_bound=Fraction(43, 6),
        quantum_value=Fraction(22, 3),
    )


def build_Ld(d: int) -> QuadForm:
    """Block-composed expression for d >= 6 over :func:`build_general`.

    (1/q3) sum of 13-ray expressions on qutrit blocks plus (1/q4) sum of
    18-ray expressions on ququart blocks, minus all cross-block products:
    full weight between qutrit and ququart blocks, 1/q3 between distinct
    qutrit blocks, 1/q4 between distinct ququart blocks.  Classically at
    most 21/22, quantum value 1.
    """
    s = build_general(d)
    assert s.layout is not None
    acc = _Accumulator()
    qutrit_blocks: list[list[str]] = []
    ququart_blocks: list[list[str]] = []
    l4 = build_L4()
    for k, block in enumerate(s.layout.blocks, start=1):
        labels = [l for l in s.labels if l.startswith(f"b{k}:")]
        if block.kind == "qutrit":
            qutrit_blocks.append(labels)
            acc.add_form(build_L3(subset(s, labels)), factor=1 / Q3)
        else:
            ququart_blocks.append(labels)
            prefixed = rename_variables(l4, {v: f"b{k}:{v}" for v in l4.variables})
            acc.add_form(prefixed, factor=1 / Q4)
    for vk in qutrit_blocks:
        for el in ququart_blocks:
            for u in vk:
                for w in el:
                    acc.add_pair(u, w, Fraction(-1))
    for vk, vk2 in combinations(qutrit_blocks, 2):
        for u in vk:
            for w in vk2:
                acc.add_pair(u, w, -1 / Q3)
    for el, el2 in combinations(ququart_blocks, 2):
        for u in el:
            for w in el2:
                acc.add_pair(u, w, -1 / Q4)
    return acc.form(
        s.labels,
        classical_bound=C3 / Q3,
        quantum_value=Fraction(1),
    )


def build_hexagon(triple: Iterable[str | int]) -> QuadForm:
    """Unit weights on the six edge rays avoiding an independent vertex triple.

    The six surviving edges always form a hexagon in the base graph.  The
    classical bound 1 holds only under KS-assignment constraints (the form
    is flagged accordingly); the quantum value is 3/2.
    """
    verts = tuple(sorted(str(t) for t in triple))
    g = base_graph_9()
    if len(set(verts)) != 3:
        raise ValueError("need three distinct vertices")
    for v in verts:
        if v not in g.vertices:
            raise ValueError(f"unknown base-graph vertex {v!r}")
    for a, b in combinations(verts, 2):
        if g.has_edge(a, b):
            raise ValueError(f"triple {verts} is not independent: edge {a}-{b}")
    labels = [
        "v" + "".join(e) for e in g.edges() if not (set(e) & set(verts))
    ]
    return make_form(
        sorted(labels),
        linear={l: Fraction(1) for l in labels},
        classical_bound=Fraction(1),
        quantum_value=Fraction(3, 2),
        requires_ks_constraints=True,
    )


def build_L5prime() -> QuadForm:
    """The 12-projection residue of the dimension-5 expression under KS
    constraints: weight 1/2 on the eight h/H rays, 2/3 on z1, z2, Z2, Z3.

    Classical bound 7/6 (valid only for KS-constrained assignments, hence
    the flag); quantum value 4/3.
    """
    s = build_25ray()
    linear: dict[str, Fraction] = {}
    for label in s.labels:
        if label[0] in ("h", "H"):
            linear[label] = Fraction(1, 2)
        elif label in ("z1", "z2", "Z2", "Z3"):
            linear[label] = Fraction(2, 3)
    return make_form(
        [l for l in s.labels if l in linear],
        linear=linear,
        classical_bound=Fraction(7, 6),
        quantum_value=Fraction(4, 3),
        requires_ks_constraints=True,
    )


def build_inequality(d: int) -> QuadForm:
    """The dimension-d inequality: 13-ray, 18-ray, 25-ray, or block form."""
    if d == 3:
        return build_L3(build_13ray())
    if d == 4:
        return build_L4()
    if d == 5:
        return build_L5()
    return build_Ld(d)


def evaluate(f: QuadForm, assignment: Assignment) -> Rational:
    """Exact value of ``f`` at an assignment covering all its variables."""
    values: dict[str, Fraction] = {}
    for v in f.variables:
        if v not in assignment:
            raise ValueError(f"assignment is missing variable {v!r}")
        values[v] = rational(assignment[v])
    total = f.constant
    for label, c in f.linear.items():
        total += c * values[label]
    for (a, b), c in f.quadratic.items():
        total += c * values[a] * values[b]
    return total


def quantum_operator(f: QuadForm, s: RaySet) -> RatMatrix:
    """Operator obtained by substituting each variable's rank-1 projector.

    Quadratic terms contribute zero because they pair orthogonal rays
    (products of orthogonal projectors vanish); this precondition is
    verified, not assumed.
    """
    for a, b in f.quadratic:
        if inner_product(s.vector(a), s.vector(b)) != 0:
            raise ValueError(
                f"quadratic term ({a!r}, {b!r}) pairs non-orthogonal rays; "
                "the operator substitution is undefined"
            )
    op = weighted_operator(
        [(c, s.vector(label)) for label, c in f.linear.items()], s.dimension
    )
    if f.constant == 0:
        return op
    eye = identity(s.dimension)
    return tuple(
        tuple(op[i][j] + f.constant * eye[i][j] for j in range(s.dimension))
        for i in range(s.dimension)
    )


def quadform_to_json(f: QuadForm) -> dict:
    """JSON-ready dict with exact rational strings."""
    return {
        "variables": list(f.variables),
        "constant": str(f.constant),
        "linear": {l: str(c) for l, c in f.linear.items()},
        "quadratic": [[a, b, str(c)] for (a, b), c in f.quadratic.items()],
        "classical_bound": None if f.classical_bound is None else str(f.classical_bound),
        "quantum_value": None if f.quantum_value is None else str(f.quantum_value),
        "requires_ks_constraints": f.requires_ks_constraints,
    }


def quadform_from_json(data: dict) -> QuadForm:
    """Inverse of :func:`quadform_to_json`."""
    cb = data.get("classical_bound")
    qv = data.get("quantum_value")
    return make_form(
        [str(v) for v in data["variables"]],
        constant=str(data.get("constant", "0")),
        linear={str(l): str(c) for l, c in data.get("linear", {}).items()},
        quadratic={(str(a), str(b)): str(c) for a, b, c in data.get("quadratic", [])},
        classical_bound=None if cb is None else str(cb),
        quantum_value=None if qv is None else str(qv),
        requires_ks_constraints=bool(data.get("requires_ks_constraints", False)),
    )
