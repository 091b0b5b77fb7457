"""Exact rational vectors, matrices, and rank-1 projectors.

Everything in this module is built on ``fractions.Fraction``, so dot
products, projectors, and operator sums are exact.  Floating point never
enters; the numerical realization code lives in :mod:`ksray.realize`.

Vectors and matrices are plain tuples (``RayVec``, ``RatMatrix``), which
keeps the arithmetic helpers small and makes every value hashable and
safely shareable.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence, Union

Rational = Fraction
RayVec = tuple[Rational, ...]
RatMatrix = tuple[tuple[Rational, ...], ...]

RationalLike = Union[Rational, int, str]

# Accept the unicode minus sign on input; serialization always emits ASCII.
_UNICODE_MINUS = "\u2212"


def rational(value: RationalLike) -> Rational:
    """Coerce an int, Fraction, or ``"p/q"`` string to an exact Rational."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip().replace(_UNICODE_MINUS, "-"))
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


def rational_str(value: Rational) -> str:
    """Serialize as ``"p/q"``, or ``"p"`` when the denominator is 1."""
    return str(value)


def ray(components: Iterable[RationalLike]) -> RayVec:
    """Build a ray vector, rejecting the zero vector and dimensions below 3."""
    vec = tuple(rational(c) for c in components)
    if len(vec) < 3:
        raise ValueError(f"ray dimension must be at least 3, got {len(vec)}")
    if all(c == 0 for c in vec):
        raise ValueError("ray must be a nonzero vector")
    return vec


def inner_product(u: RayVec, v: RayVec) -> Rational:
    """Exact dot product of two vectors of equal dimension."""
    if len(u) != len(v):
        raise ValueError(f"dimension mismatch: {len(u)} vs {len(v)}")
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


def norm_sq(v: RayVec) -> Rational:
    """Exact squared Euclidean norm."""
    return sum((c * c for c in v), Fraction(0))


def identity(dimension: int) -> RatMatrix:
    """Exact identity matrix."""
    one, zero = Fraction(1), Fraction(0)
    return tuple(
        tuple(one if i == j else zero for j in range(dimension))
        for i in range(dimension)
    )


def projector(v: Sequence[Rational]) -> RatMatrix:
    """Rank-1 projector onto ``v``: the matrix v v^T / (v.v).

    Idempotent with trace exactly 1 for every nonzero ``v``; invariant
    under rescaling of ``v``.
    """
    nsq = norm_sq(tuple(v))
    if nsq == 0:
        raise ValueError("cannot project onto the zero vector")
    return tuple(tuple(vi * vj / nsq for vj in v) for vi in v)


def weighted_operator(
    terms: Iterable[tuple[RationalLike, RayVec]], dimension: int
) -> RatMatrix:
    """Exact weighted sum of rank-1 projectors, sum_k c_k |v_k><v_k|/<v_k|v_k>."""
    rows = [[Fraction(0)] * dimension for _ in range(dimension)]
    for coeff, vec in terms:
        if len(vec) != dimension:
            raise ValueError(
                f"dimension mismatch: vector has {len(vec)}, expected {dimension}"
            )
        c = rational(coeff)
        proj = projector(vec)
        for i in range(dimension):
            row = rows[i]
            prow = proj[i]
            for j in range(dimension):
                row[j] += c * prow[j]
    return tuple(tuple(row) for row in rows)


def mat_mul(a: RatMatrix, b: RatMatrix) -> RatMatrix:
    """Exact matrix product of two square matrices of equal dimension."""
    n = len(a)
    if len(b) != n:
        raise ValueError(f"dimension mismatch: {n} vs {len(b)}")
    return tuple(
        tuple(sum((a[i][k] * b[k][j] for k in range(n)), Fraction(0)) for j in range(n))
        for i in range(n)
    )


def trace(m: RatMatrix) -> Rational:
    """Exact trace."""
    return sum((m[i][i] for i in range(len(m))), Fraction(0))


def scalar_identity_check(m: RatMatrix) -> Rational | None:
    """Return q when ``m`` equals q times the identity exactly, else None.

    Every diagonal entry must equal q and every off-diagonal entry must be
    exactly zero.
    """
    n = len(m)
    if n == 0 or any(len(row) != n for row in m):
        raise ValueError("matrix must be square and nonempty")
    q = m[0][0]
    for i in range(n):
        for j in range(n):
            if i == j:
                if m[i][j] != q:
                    return None
            elif m[i][j] != 0:
                return None
    return q
