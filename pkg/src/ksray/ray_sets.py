"""Construction of the ray families: 13 rays in dimension 3, 18 in
dimension 4, 25 in dimension 5, and the block-composed sets for every
dimension d >= 6, together with orthogonality graphs, Gram signatures,
and the optimal block-decomposition count 5d - 2*floor(d/3).

All coordinates are exact rationals; the constructed vectors are in fact
integer vectors with entries in {-1, 0, 1}.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, NamedTuple

from .exact_linalg import RatMatrix, RayVec, inner_product, norm_sq, rational, ray
from .graphs import Graph, base_graph_9, graph_from_edges

QUTRIT = "qutrit"
QUQUART = "ququart"
BLOCK_SIZE = {QUTRIT: 3, QUQUART: 4}


@dataclass(frozen=True)
class Block:
    """One direct summand of a block layout: its kind and 1-based offset."""

    kind: str
    offset: int

    def __post_init__(self) -> None:
        if self.kind not in BLOCK_SIZE:
            raise ValueError(f"unknown block kind {self.kind!r}")

    @property
    def size(self) -> int:
        return BLOCK_SIZE[self.kind]


@dataclass(frozen=True)
class BlockLayout:
    """Contiguous partition of coordinates 1..d into qutrit/ququart blocks."""

    blocks: tuple[Block, ...]

    def __post_init__(self) -> None:
        offset = 1
        for block in self.blocks:
            if block.offset != offset:
                raise ValueError(
                    f"block offsets must tile coordinates contiguously; "
                    f"expected {offset}, got {block.offset}"
                )
            offset += block.size
        object.__setattr__(self, "_dimension", offset - 1)

    @property
    def dimension(self) -> int:
        return self._dimension  # type: ignore[attr-defined]

    @property
    def m(self) -> int:
        """Number of qutrit blocks."""
        return sum(1 for b in self.blocks if b.kind == QUTRIT)

    @property
    def n(self) -> int:
        """Number of ququart blocks."""
        return sum(1 for b in self.blocks if b.kind == QUQUART)


@dataclass(frozen=True)
class RaySet:
    """Ordered, labeled rays of one dimension, with optional block layout.

    Labels are unique, no two rays are parallel, and ``aliases`` maps
    alternative names onto stored labels (used for the shared ray of the
    25-ray set).
    """

    dimension: int
    rays: tuple[tuple[str, RayVec], ...]
    aliases: dict[str, str] = field(default_factory=dict)
    layout: BlockLayout | None = None

    def __post_init__(self) -> None:
        if self.dimension < 3:
            raise ValueError("ray sets live in dimension at least 3")
        labels = [label for label, _ in self.rays]
        if len(set(labels)) != len(labels):
            raise ValueError("ray labels must be unique")
        for label, vec in self.rays:
            if len(vec) != self.dimension:
                raise ValueError(
                    f"ray {label!r} has dimension {len(vec)}, expected {self.dimension}"
                )
        for alias, target in self.aliases.items():
            if target not in set(labels):
                raise ValueError(f"alias {alias!r} points at unknown label {target!r}")
            if alias in set(labels):
                raise ValueError(f"alias {alias!r} collides with a stored label")
        vecs = [vec for _, vec in self.rays]
        for i in range(len(vecs)):
            for j in range(i + 1, len(vecs)):
                if _parallel(vecs[i], vecs[j]):
                    raise ValueError(
                        f"rays {labels[i]!r} and {labels[j]!r} are parallel"
                    )
        object.__setattr__(
            self, "_by_label", {label: vec for label, vec in self.rays}
        )

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(label for label, _ in self.rays)

    @property
    def ray_count(self) -> int:
        return len(self.rays)

    def vector(self, label: str) -> RayVec:
        """Look up a ray by label, resolving aliases."""
        table = self._by_label  # type: ignore[attr-defined]
        key = self.aliases.get(label, label)
        try:
            return table[key]
        except KeyError:
            raise ValueError(f"unknown ray label {label!r}") from None


def _parallel(u: RayVec, v: RayVec) -> bool:
    """Exact parallelism test via cross-ratios of first nonzero components."""
    fu = next(i for i, c in enumerate(u) if c != 0)
    fv = next(i for i, c in enumerate(v) if c != 0)
    if fu != fv:
        return False
    return all(u[j] * v[fu] == v[j] * u[fu] for j in range(len(u)))


def _embed(vec: RayVec, offset: int, dimension: int) -> RayVec:
    """Zero-pad a vector into coordinates offset..offset+len-1 (1-based)."""
    zero = Fraction(0)
    before = (zero,) * (offset - 1)
    after = (zero,) * (dimension - offset + 1 - len(vec))
    return before + tuple(vec) + after


# The 13 qutrit rays: coordinate axes z_k, axis sums/differences y_k^+-,
# and the four diagonals h_alpha with a single sign flipped (h_0 has none).
_RAYS_13 = (
    ("h0", (1, 1, 1)),
    ("h1", (-1, 1, 1)),
    ("h2", (1, -1, 1)),
    ("h3", (1, 1, -1)),
    ("y1+", (0, 1, 1)),
    ("y1-", (0, 1, -1)),
    ("y2+", (1, 0, 1)),
    ("y2-", (1, 0, -1)),
    ("y3+", (1, 1, 0)),
    ("y3-", (1, -1, 0)),
    ("z1", (1, 0, 0)),
    ("z2", (0, 1, 0)),
    ("z3", (0, 0, 1)),
)

# The 18 ququart rays, one per edge of the base graph; two rays are
# orthogonal whenever their edges share a vertex.
_RAYS_18 = (
    ("v12", (1, 0, 0, 0)),
    ("v16", (0, 0, 1, -1)),
    ("v17", (0, 0, 1, 1)),
    ("v18", (0, 1, 0, 0)),
    ("v23", (0, 1, -1, 0)),
    ("v28", (0, 0, 0, 1)),
    ("v29", (0, 1, 1, 0)),
    ("v34", (-1, 1, 1, 1)),
    ("v37", (1, 1, 1, -1)),
    ("v39", (1, 0, 0, 1)),
    ("v45", (0, 1, 0, -1)),
    ("v47", (1, 1, -1, 1)),
    ("v48", (1, 0, 1, 0)),
    ("v56", (1, 1, 1, 1)),
    ("v58", (1, 0, -1, 0)),
    ("v59", (1, -1, 1, -1)),
    ("v67", (1, -1, 0, 0)),
    ("v69", (1, 1, -1, -1)),
)


def build_13ray() -> RaySet:
    """The 13-ray qutrit set (labels h0..h3, y1+..y3-, z1..z3)."""
    return RaySet(3, tuple((label, ray(coords)) for label, coords in _RAYS_13))


def build_18ray() -> RaySet:
    """The 18-ray ququart set, labeled by the base-graph edges (v12, ...)."""
    return RaySet(4, tuple((label, ray(coords)) for label, coords in _RAYS_18))


def build_25ray() -> RaySet:
    """The 25-ray set in dimension 5.

    Lowercase rays are the 13-ray set on coordinates 1..3, uppercase rays
    the same set on coordinates 3..5.  The two copies share one ray,
    stored once as ``z3`` with alias ``Z1``.
    """
    rays: list[tuple[str, RayVec]] = []
    for label, coords in _RAYS_13:
        rays.append((label, _embed(ray(coords), 1, 5)))
    for label, coords in _RAYS_13:
        upper = label.upper()
        if upper == "Z1":
            continue  # identical to lowercase z3
        rays.append((upper, _embed(ray(coords), 3, 5)))
    return RaySet(5, tuple(rays), aliases={"Z1": "z3"})


class Decomposition(NamedTuple):
    m: int
    n: int
    count: int


def optimal_decomposition(d: int) -> Decomposition:
    """Ray-minimal split d = 3m + 4n, giving 13m + 18n = 5d - 2*floor(d/3) rays."""
    if d < 6:
        raise ValueError("block decomposition requires dimension at least 6")
    m = 4 * (d // 3) - d
    n = d - 3 * (d // 3)
    return Decomposition(m, n, 13 * m + 18 * n)


def build_general(d: int, m: int | None = None, n: int | None = None) -> RaySet:
    """Block-composed ray set for d >= 6: m qutrit blocks then n ququart blocks.

    With ``m`` and ``n`` omitted the optimal decomposition is used.  Block
    k (1-based) contributes its local set zero-padded onto consecutive
    coordinates, with labels ``"b{k}:{local label}"``.
    """
    if d < 6:
        raise ValueError(
            "build_general serves d >= 6; use build_13ray, build_18ray, or "
            "build_25ray for d = 3, 4, 5"
        )
    if (m is None) != (n is None):
        raise ValueError("give both m and n, or neither")
    if m is None:
        m, n, _ = optimal_decomposition(d)
    assert n is not None
    if m < 0 or n < 0 or 3 * m + 4 * n != d:
        raise ValueError(f"(m={m}, n={n}) is not a decomposition of d={d}")

    blocks: list[Block] = []
    rays: list[tuple[str, RayVec]] = []
    offset = 1
    for k in range(1, m + n + 1):
        kind = QUTRIT if k <= m else QUQUART
        local = _RAYS_13 if kind == QUTRIT else _RAYS_18
        blocks.append(Block(kind, offset))
        for label, coords in local:
            rays.append((f"b{k}:{label}", _embed(ray(coords), offset, d)))
        offset += BLOCK_SIZE[kind]
    return RaySet(d, tuple(rays), layout=BlockLayout(tuple(blocks)))


def expected_ray_count(d: int) -> int:
    """Ray count of the construction for dimension d (13, 18, 25, then the formula)."""
    if d < 3:
        raise ValueError("constructions start at dimension 3")
    special = {3: 13, 4: 18, 5: 25}
    if d in special:
        return special[d]
    return optimal_decomposition(d).count


def build_for_dimension(d: int) -> RaySet:
    """The ray construction for any d >= 3: 13, 18, 25, then block-composed."""
    if d == 3:
        return build_13ray()
    if d == 4:
        return build_18ray()
    if d == 5:
        return build_25ray()
    return build_general(d)


def subset(s: RaySet, labels: Iterable[str]) -> RaySet:
    """Sub-RaySet on the given labels, preserving order (drops aliases/layout)."""
    keep = set(labels)
    unknown = keep - set(s.labels)
    if unknown:
        raise ValueError(f"unknown labels: {sorted(unknown)}")
    return RaySet(
        s.dimension,
        tuple((label, vec) for label, vec in s.rays if label in keep),
    )


def orthogonality_graph(s: RaySet) -> Graph:
    """Graph on the ray labels with an edge for every orthogonal pair."""
    edges = []
    rays = s.rays
    for i in range(len(rays)):
        for j in range(i + 1, len(rays)):
            if inner_product(rays[i][1], rays[j][1]) == 0:
                edges.append((rays[i][0], rays[j][0]))
    return graph_from_edges(s.labels, edges)


def gram_signature(s: RaySet) -> RatMatrix:
    """Matrix of squared normalized overlaps (v_i.v_j)^2 / (|v_i|^2 |v_j|^2).

    Invariant under global orthogonal transformations and per-ray scaling,
    which makes it the right fingerprint for uniqueness-up-to-unitary
    comparisons.
    """
    vecs = [vec for _, vec in s.rays]
    norms = [norm_sq(v) for v in vecs]
    out = []
    for i, u in enumerate(vecs):
        row = []
        for j, v in enumerate(vecs):
            ip = inner_product(u, v)
            row.append(ip * ip / (norms[i] * norms[j]))
        out.append(tuple(row))
    return tuple(out)


def rays_at_vertex(vertex: str) -> tuple[str, ...]:
    """Labels of the four 18-ray-set rays whose base-graph edge touches ``vertex``."""
    g = base_graph_9()
    if vertex not in g.vertices:
        raise ValueError(f"unknown base-graph vertex {vertex!r}")
    return tuple(
        "v" + "".join(sorted((vertex, other))) for other in g.neighbors(vertex)
    )


def rayset_to_json(s: RaySet) -> dict:
    """JSON-ready dict with exact rational coordinate strings."""
    data: dict = {
        "dimension": s.dimension,
        "rays": [
            {"label": label, "coords": [str(c) for c in vec]}
            for label, vec in s.rays
        ],
        "aliases": dict(sorted(s.aliases.items())),
        "layout": None,
    }
    if s.layout is not None:
        data["layout"] = {
            "blocks": [
                {"kind": b.kind, "offset": b.offset} for b in s.layout.blocks
            ]
        }
    return data


def rayset_from_json(data: dict) -> RaySet:
    """Inverse of :func:`rayset_to_json`."""
    layout = None
    if data.get("layout"):
        layout = BlockLayout(
            tuple(
                Block(str(b["kind"]), int(b["offset"]))
                for b in data["layout"]["blocks"]
            )
        )
    return RaySet(
        int(data["dimension"]),
        tuple(
            (str(r["label"]), tuple(rational(c) for c in r["coords"]))
            for r in data["rays"]
        ),
        aliases={str(k): str(v) for k, v in data.get("aliases", {}).items()},
        layout=layout,
    )
