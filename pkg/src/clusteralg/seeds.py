"""Seeds and seed mutation.

A seed couples an exchange matrix with one tracked Laurent polynomial
per exchangeable index.  The polynomials live in the variables of the
starting seed, so the initial seed tracks the variables themselves and
every mutation rewrites one entry through the exchange relation

    x_i * x_i' = prod(x_k^{b_ki} : b_ki > 0) + prod(x_k^{-b_ki} : b_ki < 0)

with the product running over all rows of column i, frozen ones
included.  The division by the old variable is exact in the Laurent
ring; that this always holds is the Laurent phenomenon, and the code
treats a failure as an internal error rather than a user error.

Two seeds are the same up to relabelling when some permutation of the
exchangeable indices (frozen ones stay put) matches both the cluster
entries and the matrix.  ``canonical_form`` sorts the cluster entries
into the canonical polynomial order and permutes the matrix along; the
sorted form is a unique representative because cluster entries are
pairwise distinct.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Iterable, List, Sequence, Tuple

from .errors import ClusterAlgError, InvalidIndexError, IsolatedIndexError, MalformedInputError
from .exchange import ExchangeMatrix, matrix_rank, mutate_matrix
from .fields import CoefficientSpec
from .laurent import LaurentPoly, exact_divide

__all__ = [
    "Seed",
    "initial_seed",
    "exchange_polynomial",
    "mutate_seed",
    "mutate_seed_path",
    "canonical_form",
    "permute_exchangeables",
    "seed_key",
    "ExplorationReport",
    "explore",
    "LaurentPhenomenonReport",
    "verify_laurent_phenomenon",
]


class Seed:
    """An exchange matrix plus tracked cluster variables.

    Equality compares the matrix, the cluster and the frozen names but
    not the mutation history, so mutating twice in the same direction
    returns a seed equal to the original.
    """

    __slots__ = ("matrix", "cluster", "frozen_names", "history")

    def __init__(self, matrix: ExchangeMatrix, cluster: Sequence[LaurentPoly],
                 frozen_names: Sequence[str] = (), history: Sequence[int] = ()):
        n, m = matrix.n, matrix.m
        cluster = tuple(cluster)
        if len(cluster) != n:
            raise MalformedInputError(f"need exactly {n} cluster entries")
        ambient = n + m
        for p in cluster:
            if not isinstance(p, LaurentPoly) or p.ambient != ambient:
                raise MalformedInputError(
                    f"cluster entries must be Laurent polynomials in {ambient} variables"
                )
        if len(set(p.sort_key() for p in cluster)) != n:
            raise MalformedInputError("cluster entries must be pairwise distinct")
        frozen_names = tuple(frozen_names) if frozen_names else tuple(
            f"x{n + 1 + k}" for k in range(m)
        )
        if len(frozen_names) != m:
            raise MalformedInputError(f"need exactly {m} frozen names")
        if len(set(frozen_names)) != m:
            raise MalformedInputError("frozen names must be distinct")
        self.matrix = matrix
        self.cluster = cluster
        self.frozen_names = frozen_names
        self.history = tuple(history)

    @property
    def n(self) -> int:
        return self.matrix.n

    @property
    def m(self) -> int:
        return self.matrix.m

    @property
    def ambient(self) -> int:
        return self.matrix.n + self.matrix.m

    def variable_names(self) -> Tuple[str, ...]:
        return tuple(f"x{k + 1}" for k in range(self.n)) + self.frozen_names

    def __eq__(self, other):
        return (
            isinstance(other, Seed)
            and self.matrix == other.matrix
            and self.cluster == other.cluster
            and self.frozen_names == other.frozen_names
        )

    def __hash__(self):
        return hash((self.matrix, self.cluster, self.frozen_names))

    def __repr__(self):
        vars_txt = ", ".join(p.text() for p in self.cluster)
        return f"Seed(n={self.n}, m={self.m}, cluster=[{vars_txt}], history={self.history})"


def initial_seed(matrix: ExchangeMatrix, frozen_names: Sequence[str] = (),
                 field: CoefficientSpec | None = None) -> Seed:
    """The seed tracking the plain variables x_1..x_n.

    When a coefficient field is supplied, exchangeable indices whose
    exchange polynomial would be the constant 2 (entire matrix column
    zero) are rejected: over a field that constant is a unit and the
    standing assumptions on exchange polynomials fail.  Over the
    integers such indices are allowed.
    """
    ambient = matrix.n + matrix.m
    if field is not None and field.is_field:
        for i in range(1, matrix.n + 1):
            if all(v == 0 for v in matrix.column(i)):
                raise IsolatedIndexError(
                    f"index {i} is isolated (zero column) and the coefficients form a field"
                )
    cluster = tuple(LaurentPoly.variable(ambient, i) for i in range(1, matrix.n + 1))
    return Seed(matrix, cluster, frozen_names, ())


def exchange_polynomial(matrix: ExchangeMatrix, i: int) -> LaurentPoly:
    """The two-monomial exchange polynomial of direction i, in the seed's own frame.

    Both monomials have coefficient 1 and disjoint supports, and neither
    involves x_i.  A zero column gives 1 + 1 = 2, the isolated case.
    """
    if not 1 <= i <= matrix.n:
        raise InvalidIndexError(
            f"direction {i} is not an exchangeable index in 1..{matrix.n}"
        )
    ambient = matrix.n + matrix.m
    pos = [0] * ambient
    neg = [0] * ambient
    for k in range(ambient):
        b = matrix.rows[k][i - 1]
        if b > 0:
            pos[k] = b
        elif b < 0:
            neg[k] = -b
    return LaurentPoly(ambient, [(tuple(pos), 1), (tuple(neg), 1)])


def mutate_seed(seed: Seed, i: int) -> Seed:
    """Mutate in direction i, rewriting the tracked variable exactly."""
    matrix = seed.matrix
    if not 1 <= i <= matrix.n:
        raise InvalidIndexError(
            f"direction {i} is not an exchangeable index in 1..{matrix.n}"
        )
    ambient = seed.ambient

    def tracked(k: int) -> LaurentPoly:
        if k < matrix.n:
            return seed.cluster[k]
        return LaurentPoly.variable(ambient, k + 1)

    pos = LaurentPoly.one(ambient)
    neg = LaurentPoly.one(ambient)
    for k in range(ambient):
        b = matrix.rows[k][i - 1]
        if b > 0:
            pos = pos * tracked(k) ** b
        elif b < 0:
            neg = neg * tracked(k) ** (-b)
    new_var = exact_divide(pos + neg, seed.cluster[i - 1])
    if new_var is None:
        raise ClusterAlgError(
            "internal error: exchange relation produced a non-Laurent variable"
        )
    cluster = list(seed.cluster)
    cluster[i - 1] = new_var
    return Seed(mutate_matrix(matrix, i), cluster, seed.frozen_names, seed.history + (i,))


def mutate_seed_path(seed: Seed, path: Iterable[int]) -> Seed:
    for i in path:
        seed = mutate_seed(seed, i)
    return seed


def permute_exchangeables(seed: Seed, perm: Sequence[int]) -> Seed:
    """Relabel exchangeable indices: new index p holds what perm[p] held (1-based values)."""
    n = seed.n
    if sorted(perm) != list(range(1, n + 1)):
        raise MalformedInputError("perm must list each exchangeable index exactly once")
    order = [p - 1 for p in perm]
    rows = []
    for r in range(n):
        rows.append([seed.matrix.rows[order[r]][order[c]] for c in range(n)])
    for r in range(n, n + seed.m):
        rows.append([seed.matrix.rows[r][order[c]] for c in range(n)])
    matrix = ExchangeMatrix(n, seed.m, rows)
    cluster = [seed.cluster[k] for k in order]
    return Seed(matrix, cluster, seed.frozen_names, seed.history)


def canonical_form(seed: Seed) -> Seed:
    """The representative with cluster entries in canonical polynomial order."""
    n = seed.n
    order = sorted(range(1, n + 1), key=lambda k: seed.cluster[k - 1].sort_key())
    return permute_exchangeables(seed, order)


def seed_key(seed: Seed):
    """A hashable key identifying the seed up to exchangeable relabelling."""
    canon = canonical_form(seed)
    return (canon.matrix.rows, tuple(p.sort_key() for p in canon.cluster))


@dataclass
class ExplorationReport:
    seeds_found: int
    cluster_variables: Tuple[LaurentPoly, ...]
    finite: bool
    limit_hit: str | None
    depth_reached: int


def explore(seed: Seed, max_seeds: int = 20000, max_depth: int = 32) -> ExplorationReport:
    """Breadth-first closure of the mutation class up to relabelling.

    Stops early when the number of distinct seeds would pass
    ``max_seeds`` or the search depth would pass ``max_depth``; the
    report then says which limit was hit and ``finite`` is False (the
    closure may still be finite, it just was not proven within budget).
    """
    start_key = seed_key(seed)
    visited = {start_key}
    variables: Dict[object, LaurentPoly] = {p.sort_key(): p for p in seed.cluster}
    frontier = [seed]
    depth = 0
    limit_hit = None
    while frontier:
        if depth >= max_depth:
            limit_hit = f"max-depth {max_depth} reached with unexplored seeds"
            break
        next_frontier = []
        for current in frontier:
            last = current.history[-1] if current.history else 0
            for i in range(1, current.n + 1):
                if i == last:
                    continue  # undoing the previous mutation cannot reach anything new
                child = mutate_seed(current, i)
                key = seed_key(child)
                if key in visited:
                    continue
                if len(visited) >= max_seeds:
                    limit_hit = f"max-seeds {max_seeds} reached"
                    break
                visited.add(key)
                for p in child.cluster:
                    variables.setdefault(p.sort_key(), p)
                next_frontier.append(child)
            if limit_hit:
                break
        if limit_hit:
            break
        frontier = next_frontier
        if frontier:
            depth += 1
    ordered = tuple(variables[k] for k in sorted(variables))
    return ExplorationReport(
        seeds_found=len(visited),
        cluster_variables=ordered,
        finite=limit_hit is None,
        limit_hit=limit_hit,
        depth_reached=depth,
    )


@dataclass
class LaurentPhenomenonReport:
    depth: int
    seeds_visited: int
    variables: Tuple[LaurentPoly, ...]
    all_integer: bool
    max_coefficient: int


def verify_laurent_phenomenon(seed: Seed, depth: int) -> LaurentPhenomenonReport:
    """Walk every mutation sequence up to the given depth (deduplicating
    revisited seeds) and record the cluster variables encountered.

    Every variable produced by ``mutate_seed`` is a Laurent polynomial
    by construction; the report additionally records whether all of
    their coefficients are integers, and the largest magnitude seen.
    """
    if depth < 0:
        raise MalformedInputError("depth must be nonnegative")
    visited = {seed_key(seed)}
    variables: Dict[object, LaurentPoly] = {p.sort_key(): p for p in seed.cluster}
    frontier = [seed]
    for _ in range(depth):
        next_frontier = []
        for current in frontier:
            last = current.history[-1] if current.history else 0
            for i in range(1, current.n + 1):
                if i == last:
                    continue
                child = mutate_seed(current, i)
                key = seed_key(child)
                if key in visited:
                    continue
                visited.add(key)
                for p in child.cluster:
                    variables.setdefault(p.sort_key(), p)
                next_frontier.append(child)
        frontier = next_frontier
        if not frontier:
            break
    ordered = tuple(variables[k] for k in sorted(variables))
    all_integer = all(p.is_integral() for p in ordered)
    max_coeff = 0
    for p in ordered:
        c = p.max_coefficient()
        if c > max_coeff:
            max_coeff = c
    return LaurentPhenomenonReport(
        depth=depth,
        seeds_visited=len(visited),
        variables=ordered,
        all_integer=all_integer,
        max_coefficient=int(max_coeff) if all_integer else max_coeff,
    )
