"""The oriented-simplex characteristic function and its coboundary calculus.

delta(v_0 .. v_2n) is 0 when the origin lies strictly outside the convex
hull, and otherwise the orientation sign of (v_1-v_0, ..., v_2n-v_0).
Membership is decided by exact barycentric coordinates over Fractions, so
the only undefined inputs are the genuine null sets: degenerate simplices
and origins sitting exactly on a facet.  Those raise instead of guessing;
the fuzzers treat them as a resample signal.

The alternating-sum coboundary over point tuples makes delta a top cocycle:
for any 2n+2 generic points the signed sum of the 2n+2 facet values cancels
pairwise.  Appending a fixed auxiliary point exhibits delta as the
coboundary of a cochain that is neither symplectically invariant nor
compactly supported; a pinned witness for that non-invariance lives here so
the regression suite can assert it.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Callable, List, Sequence, Tuple

from . import linalg
from .errors import DegenerateSimplexError, NonGenericConfigError

Point = Tuple[Fraction, ...]


def _det_fractions(cols: Sequence[Sequence[Fraction]]) -> Fraction:
    matrix = tuple(tuple(cols[j][i] for j in range(len(cols)))
                   for i in range(len(cols[0])))
    return linalg.mat_det(matrix)


def delta(points: Sequence[Point]) -> int:
    """Characteristic value of the oriented simplex spanned by the points."""
    dim = len(points[0])
    if len(points) != dim + 1:
        raise ValueError(f"need {dim + 1} points in dimension {dim}")
    rows = [tuple(p[i] for p in points) for i in range(dim)]
    rows.append(tuple(Fraction(1) for _ in points))
    rhs = [Fraction(0)] * dim + [Fraction(1)]
    try:
        bary = linalg.solve(tuple(rows), tuple(rhs))
    except ZeroDivisionError:
        raise DegenerateSimplexError("degenerate simplex")
    if any(b == 0 for b in bary):
        raise DegenerateSimplexError("origin lies on a facet")
    if any(b < 0 for b in bary):
        return 0
    edges = [tuple(p[i] - points[0][i] for i in range(dim)) for p in points[1:]]
    det = _det_fractions(edges)
    return 1 if det > 0 else -1


def delta_w(w: Point, points: Sequence[Point]) -> int:
    """The potential cochain: delta with the auxiliary point prepended."""
    return delta([w] + list(points))


def as_coboundary(phi: Callable[..., object], points: Sequence[Point]):
    """Alternating sum of phi over the facets of the point tuple."""
    total = None
    for k in range(len(points)):
        value = phi(*(points[:k] + points[k + 1:]))
        if k % 2:
            value = -value
        total = value if total is None else total + value
    return total


def tid_check(points: Sequence[Point]) -> bool:
    """The top cocycle identity on 2n+2 points; non-generic configs resample."""
    dim = len(points[0])
    if len(points) != dim + 2:
        raise ValueError(f"need {dim + 2} points in dimension {dim}")
    try:
        total = as_coboundary(lambda *pts: delta(pts), points)
    except DegenerateSimplexError as exc:
        raise NonGenericConfigError(str(exc))
    return total == 0


# -- seeded sampling -----------------------------------------------------------


def random_point(rng: random.Random, dim: int) -> Point:
    return tuple(Fraction(rng.randint(-100, 100), rng.randint(1, 8))
                 for _ in range(dim))


def random_config(rng: random.Random, dim: int, count: int) -> List[Point]:
    return [random_point(rng, dim) for _ in range(count)]


def random_symplectic(rng: random.Random, dim: int):
    """A random rational matrix preserving the standard symplectic form."""
    n = dim // 2

    def small() -> Fraction:
        return Fraction(rng.randint(-3, 3), rng.randint(1, 3))

    mat = linalg.identity(dim, Fraction(1), Fraction(0))
    for _ in range(4):
        kind = rng.randrange(2)
        sblock = [[Fraction(0)] * n for _ in range(n)]
        for i in range(n):
            for j in range(i, n):
                sblock[i][j] = sblock[j][i] = small()
        gen = [[Fraction(1) if i == j else Fraction(0) for j in range(dim)]
               for i in range(dim)]
        for i in range(n):
            for j in range(n):
                if kind == 0:
                    gen[i][n + j] = sblock[i][j]
                else:
                    gen[n + i][j] = sblock[i][j]
        mat = linalg.mat_mul(mat, linalg.mat_from_rows(gen))
    return mat


def standard_form(dim: int):
    """The block form matrix J with J[i][n+i] = 1 used by random_symplectic."""
    n = dim // 2
    rows = [[Fraction(0)] * dim for _ in range(dim)]
    for i in range(n):
        rows[i][n + i] = Fraction(1)
        rows[n + i][i] = Fraction(-1)
    return linalg.mat_from_rows(rows)


def apply_matrix(matrix, point: Point) -> Point:
    return tuple(sum(matrix[i][j] * point[j] for j in range(len(point)))
                 for i in range(len(point)))


def non_invariance_witness():
    """A pinned (w, config, symplectic map) with delta_w(config) != delta_w(A config).

    The triangle (w, v0, v1) straddles the origin; after the quarter-turn
    both moved points sit above it, so the auxiliary-point cochain changes
    value while delta itself is unchanged termwise.
    """
    w = (Fraction(10), Fraction(0))
    config = [(Fraction(-5), Fraction(1)), (Fraction(-5), Fraction(-1))]
    rotate = linalg.mat_from_rows([
        [Fraction(0), Fraction(1)],
        [Fraction(-1), Fraction(0)],
    ])
    return w, config, rotate


# -- fuzz driver ---------------------------------------------------------------


def fuzz(dim: int, count: int, seed: int, max_resamples: int = 50) -> dict:
    """Run the identity fuzzer; exact pass counts, deterministic per seed."""
    rng = random.Random(seed)
    passed = failed = resampled = 0
    first_failure = None
    for _ in range(count):
        for _ in range(max_resamples):
            config = random_config(rng, dim, dim + 2)
            try:
                ok = tid_check(config)
            except NonGenericConfigError:
                resampled += 1
                continue
            if ok:
                passed += 1
            else:
                failed += 1
                if first_failure is None:
                    first_failure = [[str(c) for c in p] for p in config]
            break
        else:
            raise NonGenericConfigError("could not sample a generic configuration")
    return {
        "dim": dim,
        "count": count,
        "passed": passed,
        "failed": failed,
        "resampled": resampled,
        "seed": seed,
        "first_failure": first_failure,
    }
