"""Extended exchange matrices and ice quivers.

An exchange matrix has ``n + m`` rows and ``n`` columns of integers.
The top ``n x n`` block (the principal part) must be skew-symmetrizable:
there are positive integers ``d_1..d_n`` with ``d_i b_ij = -d_j b_ji``.
The remaining ``m`` rows belong to frozen variables and are arbitrary.
Matrix mutation in an exchangeable direction negates the touched row and
column and corrects the rest; it is an involution and preserves both the
rank and the symmetrizer.

Skew-symmetric principal parts correspond to ice quivers: ``b_ij`` is
the arrow count from i to j minus the count from j to i.  Quivers have
no loops, no two-cycles and no arrows between two frozen vertices.

All indices in the public interface are 1-based.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import List, Sequence, Tuple

from .errors import (
    InvalidIndexError,
    InvalidQuiverError,
    MalformedInputError,
    NotSkewSymmetricError,
    NotSkewSymmetrizableError,
)

__all__ = [
    "ExchangeMatrix",
    "IceQuiver",
    "skew_symmetrizer",
    "mutate_matrix",
    "matrix_rank",
    "quiver_to_matrix",
    "matrix_to_quiver",
    "is_acyclic",
    "random_exchange_matrix",
]

Rows = Tuple[Tuple[int, ...], ...]


def skew_symmetrizer(rows: Sequence[Sequence[int]], n: int) -> Tuple[int, ...]:
    """Positive integer diagonal d with d_i b_ij = -d_j b_ji, or raise.

    The ratios d_j / d_i are forced along every pair with b_ij != 0, so
    the witness is determined on each connected component of that
    constraint graph up to scale.  Each component is scaled to the
    primitive positive integer vector, which makes the returned witness
    the smallest one and gives overall gcd 1.
    """
    for i in range(n):
        if rows[i][i] != 0:
            raise NotSkewSymmetrizableError(f"nonzero diagonal entry at index {i + 1}")
    for i in range(n):
        for j in range(i + 1, n):
            bij, bji = rows[i][j], rows[j][i]
            if (bij == 0) != (bji == 0) or bij * bji > 0:
                raise NotSkewSymmetrizableError(
                    f"entries ({i + 1},{j + 1}) and ({j + 1},{i + 1}) do not oppose in sign"
                )
    weights: List[Fraction | None] = [None] * n
    for root in range(n):
        if weights[root] is not None:
            continue
        weights[root] = Fraction(1)
        component = [root]
        queue = [root]
        while queue:
            i = queue.pop()
            for j in range(n):
                if j == i or rows[i][j] == 0:
                    continue
                expected = weights[i] * abs(rows[i][j]) / abs(rows[j][i])
                if weights[j] is None:
                    weights[j] = expected
                    component.append(j)
                    queue.append(j)
                elif weights[j] != expected:
                    raise NotSkewSymmetrizableError(
                        "inconsistent symmetrizer ratios around a cycle"
                    )
        denom_lcm = 1
        for k in component:
            d = weights[k].denominator
            denom_lcm = denom_lcm * d // gcd(denom_lcm, d)
        numer_gcd = 0
        for k in component:
            numer_gcd = gcd(numer_gcd, int(weights[k] * denom_lcm))
        for k in component:
            weights[k] = weights[k] * denom_lcm / numer_gcd
    d = tuple(int(w) for w in weights)
    for i in range(n):
        for j in range(n):
            if d[i] * rows[i][j] != -d[j] * rows[j][i]:
                raise NotSkewSymmetrizableError("no positive integer symmetrizer exists")
    return d


class ExchangeMatrix:
    """A validated (n + m) x n integer matrix with skew-symmetrizable principal part."""

    __slots__ = ("n", "m", "rows", "symmetrizer")

    def __init__(self, n: int, m: int, rows: Sequence[Sequence[int]]):
        if not isinstance(n, int) or not isinstance(m, int) or n < 1 or m < 0:
            raise MalformedInputError("need n >= 1 exchangeable and m >= 0 frozen indices")
        if len(rows) != n + m or any(len(r) != n for r in rows):
            raise MalformedInputError(f"matrix must be {n + m} rows of {n} integers")
        frozen_rows = []
        for r in rows:
            for v in r:
                if not isinstance(v, int) or isinstance(v, bool):
                    raise MalformedInputError("matrix entries must be integers")
            frozen_rows.append(tuple(r))
        self.n = n
        self.m = m
        self.rows: Rows = tuple(frozen_rows)
        self.symmetrizer = skew_symmetrizer(self.rows, n)

    def entry(self, i: int, j: int) -> int:
        """b_ij with 1-based indices, i a row in 1..n+m, j a column in 1..n."""
        return self.rows[i - 1][j - 1]

    def principal_part(self) -> Rows:
        return self.rows[: self.n]

    def is_skew_symmetric(self) -> bool:
        p = self.rows
        return all(p[i][j] == -p[j][i] for i in range(self.n) for j in range(self.n))

    def column(self, j: int) -> Tuple[int, ...]:
        return tuple(self.rows[k][j - 1] for k in range(self.n + self.m))

    def __eq__(self, other):
        return (
            isinstance(other, ExchangeMatrix)
            and self.n == other.n
            and self.m == other.m
            and self.rows == other.rows
        )

    def __hash__(self):
        return hash((self.n, self.m, self.rows))

    def __repr__(self):
        return f"ExchangeMatrix(n={self.n}, m={self.m}, rows={self.rows!r})"


def mutate_matrix(matrix: ExchangeMatrix, i: int) -> ExchangeMatrix:
    """Matrix mutation in the exchangeable direction i."""
    if not 1 <= i <= matrix.n:
        raise InvalidIndexError(
            f"mutation direction {i} is not an exchangeable index in 1..{matrix.n}"
        )
    b = matrix.rows
    i0 = i - 1
    new_rows = []
    for j in range(matrix.n + matrix.m):
        row = []
        for k in range(matrix.n):
            if j == i0 or k == i0:
                row.append(-b[j][k])
            else:
                # The correction term is always even, so the halving is exact.
                row.append(b[j][k] + (abs(b[j][i0]) * b[i0][k] + b[j][i0] * abs(b[i0][k])) // 2)
        new_rows.append(row)
    return ExchangeMatrix(matrix.n, matrix.m, new_rows)


def matrix_rank(matrix: ExchangeMatrix) -> int:
    """Exact rank of the full (n + m) x n matrix.

    Fraction-free Bareiss elimination with full pivoting: every division
    by the previous pivot is exact because the working entries are
    minors of the original matrix, so the whole computation stays in the
    integers.
    """
    a = [list(row) for row in matrix.rows]
    nrows, ncols = matrix.n + matrix.m, matrix.n
    rank = 0
    prev = 1
    while rank < nrows and rank < ncols:
        pivot = None
        for r in range(rank, nrows):
            for c in range(rank, ncols):
                if a[r][c] != 0:
                    pivot = (r, c)
                    break
            if pivot:
                break
        if pivot is None:
            break
        pr, pc = pivot
        a[rank], a[pr] = a[pr], a[rank]
        if pc != rank:
            for r in range(nrows):
                a[r][rank], a[r][pc] = a[r][pc], a[r][rank]
        for r in range(rank + 1, nrows):
            for c in range(rank + 1, ncols):
                a[r][c] = (a[r][c] * a[rank][rank] - a[r][rank] * a[rank][c]) // prev
            a[r][rank] = 0
        prev = a[rank][rank]
        rank += 1
    return rank


class IceQuiver:
    """A finite quiver on n exchangeable and m frozen vertices."""

    __slots__ = ("n", "m", "arrows")

    def __init__(self, n: int, m: int, arrows: Sequence[Tuple[int, int, int]]):
        if not isinstance(n, int) or not isinstance(m, int) or n < 1 or m < 0:
            raise MalformedInputError("need n >= 1 exchangeable and m >= 0 frozen vertices")
        merged = {}
        for item in arrows:
            if len(item) != 3:
                raise MalformedInputError("each arrow must be (source, target, multiplicity)")
            s, t, mult = item
            if not all(isinstance(v, int) for v in (s, t, mult)):
                raise MalformedInputError("arrow entries must be integers")
            if not (1 <= s <= n + m and 1 <= t <= n + m):
                raise InvalidQuiverError(f"arrow ({s},{t}) leaves the vertex range 1..{n + m}")
            if mult < 1:
                raise InvalidQuiverError("arrow multiplicities must be positive")
            if s == t:
                raise InvalidQuiverError(f"loop at vertex {s}")
            if s > n and t > n:
                raise InvalidQuiverError(f"arrow between frozen vertices {s} and {t}")
            merged[(s, t)] = merged.get((s, t), 0) + mult
        for (s, t) in merged:
            if (t, s) in merged:
                raise InvalidQuiverError(f"two-cycle between vertices {s} and {t}")
        self.n = n
        self.m = m
        self.arrows: Tuple[Tuple[int, int, int], ...] = tuple(
            (s, t, mult) for (s, t), mult in sorted(merged.items())
        )

    def __eq__(self, other):
        return (
            isinstance(other, IceQuiver)
            and (self.n, self.m, self.arrows) == (other.n, other.m, other.arrows)
        )

    def __hash__(self):
        return hash((self.n, self.m, self.arrows))

    def __repr__(self):
        return f"IceQuiver(n={self.n}, m={self.m}, arrows={self.arrows!r})"


def quiver_to_matrix(quiver: IceQuiver) -> ExchangeMatrix:
    """The exchange matrix of an ice quiver: b_ij = #(i to j) - #(j to i)."""
    n, m = quiver.n, quiver.m
    rows = [[0] * n for _ in range(n + m)]
    for s, t, mult in quiver.arrows:
        if t <= n:
            rows[s - 1][t - 1] += mult
        if s <= n:
            rows[t - 1][s - 1] -= mult
    return ExchangeMatrix(n, m, rows)


def matrix_to_quiver(matrix: ExchangeMatrix) -> IceQuiver:
    """The ice quiver of a matrix whose principal part is skew-symmetric."""
    if not matrix.is_skew_symmetric():
        raise NotSkewSymmetricError(
            "only matrices with a skew-symmetric principal part have a quiver"
        )
    n, m = matrix.n, matrix.m
    arrows = []
    for i in range(n):
        for j in range(i + 1, n):
            v = matrix.rows[i][j]
            if v > 0:
                arrows.append((i + 1, j + 1, v))
            elif v < 0:
                arrows.append((j + 1, i + 1, -v))
    for f in range(n, n + m):
        for k in range(n):
            v = matrix.rows[f][k]
            if v > 0:
                arrows.append((f + 1, k + 1, v))
            elif v < 0:
                arrows.append((k + 1, f + 1, -v))
    return IceQuiver(n, m, arrows)


def is_acyclic(matrix: ExchangeMatrix) -> bool:
    """Whether the exchangeable part has no directed cycle (edges i -> j where b_ij > 0)."""
    n = matrix.n
    WHITE, GRAY, BLACK = 0, 1, 2
    state = [WHITE] * n
    for start in range(n):
        if state[start] != WHITE:
            continue
        stack = [(start, 0)]
        state[start] = GRAY
        while stack:
            v, nxt = stack.pop()
            advanced = False
            for w in range(nxt, n):
                if matrix.rows[v][w] > 0:
                    if state[w] == GRAY:
                        return False
                    if state[w] == WHITE:
                        stack.append((v, w + 1))
                        state[w] = GRAY
                        stack.append((w, 0))
                        advanced = True
                        break
            if not advanced:
                state[v] = BLACK
    return True


def random_exchange_matrix(rng, n: int, m: int = 0, entry_bound: int = 3,
                           symmetrizer_choices: Sequence[int] = (1, 2, 3)) -> ExchangeMatrix:
    """A random skew-symmetrizable matrix with entries in [-entry_bound, entry_bound].

    A symmetrizer d is sampled first; each unordered exchangeable pair
    then gets b_ij = t * d_j / g and b_ji = -t * d_i / g with
    g = gcd(d_i, d_j) and t an integer small enough to respect the entry
    bound, which satisfies d_i b_ij = -d_j b_ji by construction.  Frozen
    rows are unconstrained.
    """
    d = [rng.choice(list(symmetrizer_choices)) for _ in range(n)]
    rows = [[0] * n for _ in range(n + m)]
    for i in range(n):
        for j in range(i + 1, n):
            g = gcd(d[i], d[j])
            t_max = entry_bound * g // max(d[i], d[j])
            t = rng.randint(-t_max, t_max) if t_max > 0 else 0
            rows[i][j] = t * d[j] // g
            rows[j][i] = -t * d[i] // g
    for f in range(n, n + m):
        for k in range(n):
            rows[f][k] = rng.randint(-entry_bound, entry_bound)
    return ExchangeMatrix(n, m, rows)
