"""Exact binary maximization of quadratic forms by three independent routes.

* :func:`max_exhaustive` walks all 2^n assignments in Gray-code order,
  updating the value incrementally from the flipped variable alone.
* :func:`max_branch_bound` is a depth-first search with an optimistic
  per-variable bound.
* :func:`max_block_dp` exploits a block layout whose cross terms depend
  only on per-block sums.

All three scale every coefficient by the least common denominator and run
on 64-bit integers, so the results are exact; the hot loops are jitted
with numba when it is available and fall back to the identical pure-Python
code otherwise.  The continuous-relaxation probe and mixture averaging
live here too.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .exact_linalg import Rational, RationalLike, rational
from .quadform import Assignment, QuadForm, evaluate, make_form
from .ray_sets import BlockLayout

try:  # pragma: no cover - exercised implicitly by every solver call
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    HAVE_NUMBA = False

    def njit(*args, **kwargs):
        if args and callable(args[0]):
            return args[0]

        def wrap(func):
            return func

        return wrap


# 2^26 Gray steps run in seconds under numba; anything larger must go to
# branch-and-bound or block DP.
EXHAUSTIVE_CAP = 26

_VERY_NEGATIVE = -(1 << 62)


@dataclass(frozen=True)
class BoundResult:
    """Exact maximum with a witnessing assignment.

    ``evaluations`` counts assignments visited (exhaustive), search nodes
    (branch_bound / constrained), or per-block assignments plus block-sum
    tuples (block_dp).
    """

    maximum: Rational
    argmax: dict[str, int]
    method: str
    evaluations: int


def bound_result_to_json(r: BoundResult) -> dict:
    return {
        "maximum": str(r.maximum),
        "argmax": {k: v for k, v in sorted(r.argmax.items())},
        "method": r.method,
        "evaluations": r.evaluations,
    }


# ---------------------------------------------------------------------------
# Integer scaling


@dataclass(frozen=True)
class _ScaledForm:
    """Form data scaled to 64-bit integers: value = constant + raw/scale."""

    variables: tuple[str, ...]
    constant: Fraction
    scale: int
    linear: np.ndarray  # (n,) int64
    indptr: np.ndarray  # CSR over both directions of every pair
    nbr: np.ndarray
    coef: np.ndarray


def _scaled(f: QuadForm, order: Sequence[str] | None = None) -> _ScaledForm:
    variables = tuple(order) if order is not None else f.variables
    if set(variables) != set(f.variables):
        raise ValueError("variable order must be a permutation of the form's variables")
    index = {v: i for i, v in enumerate(variables)}
    denoms = [c.denominator for c in f.linear.values()]
    denoms += [c.denominator for c in f.quadratic.values()]
    scale = math.lcm(*denoms) if denoms else 1
    n = len(variables)
    linear = np.zeros(n, dtype=np.int64)
    for label, c in f.linear.items():
        linear[index[label]] = int(c * scale)
    adj: list[list[tuple[int, int]]] = [[] for _ in range(n)]
    for (a, b), c in f.quadratic.items():
        ci = int(c * scale)
        adj[index[a]].append((index[b], ci))
        adj[index[b]].append((index[a], ci))
    indptr = np.zeros(n + 1, dtype=np.int64)
    for i in range(n):
        indptr[i + 1] = indptr[i] + len(adj[i])
    nbr = np.zeros(int(indptr[-1]), dtype=np.int64)
    coef = np.zeros(int(indptr[-1]), dtype=np.int64)
    pos = 0
    for i in range(n):
        for j, ci in sorted(adj[i]):
            nbr[pos] = j
            coef[pos] = ci
            pos += 1
    return _ScaledForm(variables, f.constant, scale, linear, indptr, nbr, coef)


def _unpack_mask(sf: _ScaledForm, mask: int) -> dict[str, int]:
    return {v: (mask >> i) & 1 for i, v in enumerate(sf.variables)}


# ---------------------------------------------------------------------------
# Gray-code exhaustive enumeration


def _gray_max_kernel(n, linear, indptr, nbr, coef):
    """Walk all 2^n assignments in binary-reflected Gray order.

    Each step flips one variable; the value changes by that variable's
    linear coefficient plus its couplings to the currently set neighbors.
    Returns the best raw value and the first state attaining it.
    """
    total = 1 << n
    state = 0
    cur = 0
    best = 0
    best_state = 0
    for step in range(1, total):
        s = step
        i = 0
        while s & 1 == 0:
            s >>= 1
            i += 1
        delta = linear[i]
        for p in range(indptr[i], indptr[i + 1]):
            if (state >> nbr[p]) & 1:
                delta += coef[p]
        mask = 1 << i
        if state & mask:
            cur -= delta
        else:
            cur += delta
        state ^= mask
        if cur > best:
            best = cur
            best_state = state
    return best, best_state


def _gray_checkpoint_kernel(n, linear, indptr, nbr, coef, steps):
    """Record the incremental value after each requested step (sorted input)."""
    out = np.zeros(len(steps), dtype=np.int64)
    ptr = 0
    while ptr < len(steps) and steps[ptr] == 0:
        ptr += 1
    total = 1 << n
    state = 0
    cur = 0
    for step in range(1, total):
        if ptr >= len(steps):
            break
        s = step
        i = 0
        while s & 1 == 0:
            s >>= 1
            i += 1
        delta = linear[i]
        for p in range(indptr[i], indptr[i + 1]):
            if (state >> nbr[p]) & 1:
                delta += coef[p]
        mask = 1 << i
        if state & mask:
            cur -= delta
        else:
            cur += delta
        state ^= mask
        while ptr < len(steps) and steps[ptr] == step:
            out[ptr] = cur
            ptr += 1
    return out


def _gray_popcount_kernel(n, linear, indptr, nbr, coef):
    """Best raw value and first attaining state for every popcount 0..n."""
    best = np.full(n + 1, _VERY_NEGATIVE, dtype=np.int64)
    best_state = np.zeros(n + 1, dtype=np.int64)
    best[0] = 0
    total = 1 << n
    state = 0
    cur = 0
    pc = 0
    for step in range(1, total):
        s = step
        i = 0
        while s & 1 == 0:
            s >>= 1
            i += 1
        delta = linear[i]
        for p in range(indptr[i], indptr[i + 1]):
            if (state >> nbr[p]) & 1:
                delta += coef[p]
        mask = 1 << i
        if state & mask:
            cur -= delta
            pc -= 1
        else:
            cur += delta
            pc += 1
        state ^= mask
        if cur > best[pc]:
            best[pc] = cur
            best_state[pc] = state
    return best, best_state


def _branch_bound_kernel(n, linear, indptr, nbr, coef, pindptr, pnbr, pcoef):
    """Iterative DFS maximization with an optimistic per-variable bound.

    ``opt[i]`` holds variable i's linear coefficient plus all positive
    couplings to variables not assigned 0; a node's bound is its fixed
    value plus the positive part of ``opt`` over free variables.  Branch
    value 1 is tried first.  Returns (best raw, best mask, nodes visited).
    """
    opt = linear.copy()
    for i in range(n):
        for p in range(pindptr[i], pindptr[i + 1]):
            opt[i] += pcoef[p]
    assigned = np.full(n, -1, dtype=np.int8)
    value = np.zeros(n + 1, dtype=np.int64)
    stage = np.zeros(n + 1, dtype=np.int8)
    best = _VERY_NEGATIVE
    best_mask = 0
    nodes = 0
    depth = 0
    stage[0] = 0
    while depth >= 0:
        st = stage[depth]
        if st == 0:
            nodes += 1
            if depth == n:
                if value[depth] > best:
                    best = value[depth]
                    m = 0
                    for i in range(n):
                        if assigned[i] == 1:
                            m |= 1 << i
                    best_mask = m
                depth -= 1
                continue
            ub = value[depth]
            for i in range(depth, n):
                if opt[i] > 0:
                    ub += opt[i]
            if ub <= best:
                depth -= 1
                continue
            stage[depth] = 1
            continue
        if st == 1:
            assigned[depth] = 1
            delta = linear[depth]
            for p in range(indptr[depth], indptr[depth + 1]):
                j = nbr[p]
                if j < depth and assigned[j] == 1:
                    delta += coef[p]
            value[depth + 1] = value[depth] + delta
            stage[depth] = 2
            stage[depth + 1] = 0
            depth += 1
            continue
        if st == 2:
            assigned[depth] = 0
            value[depth + 1] = value[depth]
            for p in range(pindptr[depth], pindptr[depth + 1]):
                opt[pnbr[p]] -= pcoef[p]
            stage[depth] = 3
            stage[depth + 1] = 0
            depth += 1
            continue
        for p in range(pindptr[depth], pindptr[depth + 1]):
            opt[pnbr[p]] += pcoef[p]
        assigned[depth] = -1
        depth -= 1
    return best, best_mask, nodes


if HAVE_NUMBA:
    _gray_max_kernel = njit(cache=True)(_gray_max_kernel)
    _gray_checkpoint_kernel = njit(cache=True)(_gray_checkpoint_kernel)
    _gray_popcount_kernel = njit(cache=True)(_gray_popcount_kernel)
    _branch_bound_kernel = njit(cache=True)(_branch_bound_kernel)


def max_exhaustive(f: QuadForm) -> BoundResult:
    """Exact maximum over all 2^n binary assignments (n <= 26)."""
    n = len(f.variables)
    if n > EXHAUSTIVE_CAP:
        raise ValueError(
            f"{n} variables exceed the exhaustive cap of {EXHAUSTIVE_CAP}; "
            "use max_branch_bound or max_block_dp"
        )
    sf = _scaled(f)
    best, best_state = _gray_max_kernel(n, sf.linear, sf.indptr, sf.nbr, sf.coef)
    return BoundResult(
        maximum=sf.constant + Fraction(int(best), sf.scale),
        argmax=_unpack_mask(sf, int(best_state)),
        method="exhaustive",
        evaluations=1 << n,
    )


def gray_assignment(f: QuadForm, step: int) -> dict[str, int]:
    """Assignment reached after ``step`` Gray-code flips (step 0 = all zeros)."""
    n = len(f.variables)
    if not 0 <= step < (1 << n):
        raise ValueError(f"step {step} out of range for {n} variables")
    state = step ^ (step >> 1)
    return {v: (state >> i) & 1 for i, v in enumerate(f.variables)}


def gray_checkpoint_values(f: QuadForm, steps: Iterable[int]) -> list[Rational]:
    """Incremental Gray-walk values at the requested step indices.

    Matching these against :func:`ksray.quadform.evaluate` at
    :func:`gray_assignment` checks the incremental update rule.
    """
    n = len(f.variables)
    if n > EXHAUSTIVE_CAP:
        raise ValueError(f"{n} variables exceed the exhaustive cap of {EXHAUSTIVE_CAP}")
    wanted = list(steps)
    for s in wanted:
        if not 0 <= s < (1 << n):
            raise ValueError(f"step {s} out of range for {n} variables")
    order = np.argsort(np.asarray(wanted, dtype=np.int64), kind="stable")
    sorted_steps = np.asarray(wanted, dtype=np.int64)[order]
    sf = _scaled(f)
    raw = _gray_checkpoint_kernel(
        n, sf.linear, sf.indptr, sf.nbr, sf.coef, sorted_steps
    )
    out: list[Rational] = [Fraction(0)] * len(wanted)
    for pos, orig in enumerate(order):
        out[int(orig)] = sf.constant + Fraction(int(raw[pos]), sf.scale)
    return out


def max_branch_bound(f: QuadForm) -> BoundResult:
    """Exact maximum by depth-first branch and bound.

    Branches on variables in descending coupling-degree order, value 1
    first; prunes when the optimistic bound cannot beat the incumbent.
    """
    degree = {v: 0 for v in f.variables}
    for a, b in f.quadratic:
        degree[a] += 1
        degree[b] += 1
    order = sorted(f.variables, key=lambda v: (-degree[v], v))
    sf = _scaled(f, order)
    n = len(order)
    pos_adj: list[list[tuple[int, int]]] = [[] for _ in range(n)]
    for i in range(n):
        for p in range(int(sf.indptr[i]), int(sf.indptr[i + 1])):
            if sf.coef[p] > 0:
                pos_adj[i].append((int(sf.nbr[p]), int(sf.coef[p])))
    pindptr = np.zeros(n + 1, dtype=np.int64)
    for i in range(n):
        pindptr[i + 1] = pindptr[i] + len(pos_adj[i])
    pnbr = np.zeros(int(pindptr[-1]), dtype=np.int64)
    pcoef = np.zeros(int(pindptr[-1]), dtype=np.int64)
    pos = 0
    for i in range(n):
        for j, c in pos_adj[i]:
            pnbr[pos] = j
            pcoef[pos] = c
            pos += 1
    best, best_mask, nodes = _branch_bound_kernel(
        n, sf.linear, sf.indptr, sf.nbr, sf.coef, pindptr, pnbr, pcoef
    )
    return BoundResult(
        maximum=sf.constant + Fraction(int(best), sf.scale),
        argmax=_unpack_mask(sf, int(best_mask)),
        method="branch_bound",
        evaluations=int(nodes),
    )


# ---------------------------------------------------------------------------
# Block dynamic programming


def max_block_dp(f: QuadForm, layout: BlockLayout) -> BoundResult:
    """Exact maximum for forms whose cross-block terms depend only on block sums.

    Per block, a Gray walk records the best within-block value for every
    block sum; the block-sum tuples are then maximized exactly.  The
    structural precondition (every cross-block pair present with one
    shared coefficient per block pair, or absent entirely) is verified
    before running.
    """
    nblocks = len(layout.blocks)
    block_vars: list[list[str]] = [[] for _ in range(nblocks)]
    for v in f.variables:
        if not v.startswith("b") or ":" not in v:
            raise ValueError(f"variable {v!r} carries no block prefix 'b<k>:'")
        k = v.split(":", 1)[0][1:]
        if not k.isdigit() or not 1 <= int(k) <= nblocks:
            raise ValueError(f"variable {v!r} names no block of the layout")
        block_vars[int(k) - 1].append(v)
    block_of = {
        v: k for k, labels in enumerate(block_vars) for v in labels
    }

    # Verify the cross-block structure and collect the shared coefficients.
    cross: dict[tuple[int, int], Fraction] = {}
    seen: dict[tuple[int, int], int] = {}
    for (a, b), c in f.quadratic.items():
        ka, kb = block_of[a], block_of[b]
        if ka == kb:
            continue
        key = (min(ka, kb), max(ka, kb))
        if key in cross and cross[key] != c:
            raise ValueError(
                f"cross-block coefficients differ within block pair {key}; "
                "the form is not block-sum expressible"
            )
        cross[key] = c
        seen[key] = seen.get(key, 0) + 1
    for key, count in seen.items():
        expected = len(block_vars[key[0]]) * len(block_vars[key[1]])
        if count != expected:
            raise ValueError(
                f"block pair {key} has {count} cross terms, expected {expected} "
                "or none; the form is not block-sum expressible"
            )

    denoms = [c.denominator for c in f.linear.values()]
    denoms += [c.denominator for c in f.quadratic.values()]
    scale = math.lcm(*denoms) if denoms else 1

    evaluations = 0
    per_block_best: list[np.ndarray] = []
    per_block_state: list[np.ndarray] = []
    for labels in block_vars:
        sub = make_subform(f, labels)
        sf = _scaled(sub, labels)
        factor = scale // sf.scale
        nk = len(labels)
        best, state = _gray_popcount_kernel(
            nk, sf.linear, sf.indptr, sf.nbr, sf.coef
        )
        per_block_best.append(best * factor)  # every popcount 0..nk is reachable
        per_block_state.append(state)
        evaluations += 1 << nk

    # Dense grid over block-sum tuples, exact in scaled int64 arithmetic.
    shape = tuple(len(labels) + 1 for labels in block_vars)
    grid = np.zeros(shape, dtype=np.int64)
    for k in range(nblocks):
        axis_shape = [1] * nblocks
        axis_shape[k] = shape[k]
        grid = grid + per_block_best[k].reshape(axis_shape)
    for (ka, kb), c in cross.items():
        ci = int(c * scale)
        sa = np.arange(shape[ka], dtype=np.int64)
        sb = np.arange(shape[kb], dtype=np.int64)
        axis_a = [1] * nblocks
        axis_a[ka] = shape[ka]
        axis_b = [1] * nblocks
        axis_b[kb] = shape[kb]
        grid = grid + ci * sa.reshape(axis_a) * sb.reshape(axis_b)
    evaluations += grid.size

    flat_best = int(grid.max())
    idx = np.unravel_index(int(np.argmax(grid)), shape)
    argmax: dict[str, int] = {}
    for k, labels in enumerate(block_vars):
        state = int(per_block_state[k][idx[k]])
        for i, v in enumerate(labels):
            argmax[v] = (state >> i) & 1
    return BoundResult(
        maximum=f.constant + Fraction(flat_best, scale),
        argmax=argmax,
        method="block_dp",
        evaluations=evaluations,
    )


def make_subform(f: QuadForm, labels: Sequence[str]) -> QuadForm:
    """Restriction of ``f`` to a subset of variables (other terms dropped)."""
    keep = set(labels)
    return make_form(
        tuple(labels),
        linear={l: c for l, c in f.linear.items() if l in keep},
        quadratic={
            (a, b): c for (a, b), c in f.quadratic.items() if a in keep and b in keep
        },
    )


# ---------------------------------------------------------------------------
# Continuous relaxation probe and mixtures


def coordinate_ascent(f: QuadForm, start: Sequence[float]) -> dict[str, int]:
    """Cyclic coordinate ascent from a point in [0,1]^n to a binary local max.

    The form is multilinear in each variable, so each coordinate is set to
    1 when its partial derivative is positive and to 0 otherwise.
    """
    x = np.asarray(start, dtype=float).reshape(1, -1)
    if x.shape[1] != len(f.variables):
        raise ValueError("start point has the wrong dimension")
    final = _ascend(f, x)
    return {v: int(final[0, i]) for i, v in enumerate(f.variables)}


def _dense(f: QuadForm) -> tuple[np.ndarray, np.ndarray]:
    n = len(f.variables)
    index = {v: i for i, v in enumerate(f.variables)}
    lin = np.zeros(n)
    for label, c in f.linear.items():
        lin[index[label]] = float(c)
    quad = np.zeros((n, n))
    for (a, b), c in f.quadratic.items():
        quad[index[a], index[b]] = float(c)
        quad[index[b], index[a]] = float(c)
    return lin, quad


def _ascend(f: QuadForm, points: np.ndarray) -> np.ndarray:
    lin, quad = _dense(f)
    x = points.copy()
    n = x.shape[1]
    for _ in range(4 * n + 8):  # safety cap; each pass is monotone per sample
        changed = False
        for i in range(n):
            grad = lin[i] + x @ quad[:, i]
            col = (grad > 0).astype(float)
            if not np.array_equal(col, x[:, i]):
                changed = True
                x[:, i] = col
        if not changed:
            break
    return x


def continuous_probe(f: QuadForm, samples: int, seed: int) -> Rational:
    """Best exact value over seeded uniform starts followed by coordinate ascent.

    Floating point drives the ascent; the best final binary candidate is
    re-evaluated exactly.
    """
    if samples < 1:
        raise ValueError("need at least one sample")
    rng = np.random.default_rng(seed)
    starts = rng.random((samples, len(f.variables)))
    finals = _ascend(f, starts)
    lin, quad = _dense(f)
    values = finals @ lin + 0.5 * np.einsum("ij,ij->i", finals @ quad, finals)
    best = finals[int(np.argmax(values))]
    assignment = {v: int(best[i]) for i, v in enumerate(f.variables)}
    return evaluate(f, assignment)


def mixture_value(
    f: QuadForm, weighted: Iterable[tuple[RationalLike, Assignment]]
) -> Rational:
    """Exact average of ``f`` under a probability mixture of assignments."""
    total = Fraction(0)
    weight_sum = Fraction(0)
    for weight, assignment in weighted:
        w = rational(weight)
        if w < 0:
            raise ValueError("mixture weights must be nonnegative")
        weight_sum += w
        total += w * evaluate(f, assignment)
    if weight_sum != 1:
        raise ValueError(f"mixture weights must sum to 1, got {weight_sum}")
    return total
