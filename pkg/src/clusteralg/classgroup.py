"""Divisor class groups of upper cluster algebras.

Everything here is conditional on the starfish property: the upper
algebra equals the intersection of the initial Laurent ring with the n
adjacent ones.  A full-rank exchange matrix establishes it; otherwise
the caller must assert it explicitly, because for rank-deficient seeds
the theory gives no presentation (an A3 seed, for example, has trivial
sum of counts minus n yet a nontrivial class group) and guessing would
silently produce wrong answers.

Under starfish, the height-one primes containing a cluster variable x_i
are in bijection with the irreducible factors of its exchange
polynomial, every such prime takes valuation 1 on x_i and 0 on the
other cluster variables, and the class group is presented by Z^t
(t = sum of the factor counts) modulo the n rows of that valuation
table.  The rows are disjoint blocks of ones, so the Smith normal form
has n invariant factors equal to 1 and the group is free of rank t - n.
The Smith normal form code is general; the presentation does not
hardcode the block shape.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Sequence, Tuple

from .errors import MalformedInputError, StarfishNotEstablishedError
from .exchange import ExchangeMatrix, matrix_rank
from .factors import count_irreducible_factors, explicit_factors_over_q
from .fields import CoefficientSpec
from .laurent import LaurentPoly
from .seeds import Seed, exchange_polynomial

__all__ = [
    "smith_normal_form",
    "SmithNormalForm",
    "require_starfish",
    "PrimeDivisorData",
    "prime_divisor_data",
    "ClassGroupPresentation",
    "class_group",
    "UfdVerdict",
    "is_ufd",
]


@dataclass(frozen=True)
class SmithNormalForm:
    invariant_factors: Tuple[int, ...]  # positive, each dividing the next
    rank: int


def smith_normal_form(mat: Sequence[Sequence[int]]) -> SmithNormalForm:
    """Smith normal form data of an integer matrix.

    Classic row and column reduction: bring the smallest nonzero entry
    to the pivot, clear its row and column with euclidean steps, then
    absorb any deeper entry the pivot does not divide and redo.  The
    nonzero diagonal entries, made positive, are the invariant factors.
    """
    a = [list(row) for row in mat]
    nrows = len(a)
    ncols = len(a[0]) if nrows else 0
    if any(len(r) != ncols for r in a):
        raise MalformedInputError("ragged matrix")
    t = 0
    while t < min(nrows, ncols):
        # smallest nonzero entry in the remaining block
        pivot = None
        for r in range(t, nrows):
            for c in range(t, ncols):
                if a[r][c] != 0 and (pivot is None or abs(a[r][c]) < abs(a[pivot[0]][pivot[1]])):
                    pivot = (r, c)
        if pivot is None:
            break
        a[t], a[pivot[0]] = a[pivot[0]], a[t]
        if pivot[1] != t:
            for r in range(nrows):
                a[r][t], a[r][pivot[1]] = a[r][pivot[1]], a[r][t]
        dirty = False
        for r in range(t + 1, nrows):
            if a[r][t]:
                q = a[r][t] // a[t][t]
                for c in range(t, ncols):
                    a[r][c] -= q * a[t][c]
                if a[r][t]:
                    dirty = True
        for c in range(t + 1, ncols):
            if a[t][c]:
                q = a[t][c] // a[t][t]
                for r in range(t, nrows):
                    a[r][c] -= q * a[r][t]
                if a[t][c]:
                    dirty = True
        if dirty:
            continue  # a smaller remainder appeared somewhere; pick pivot again
        # the pivot must divide everything deeper in the block
        offender = None
        for r in range(t + 1, nrows):
            for c in range(t + 1, ncols):
                if a[r][c] % a[t][t] != 0:
                    offender = r
                    break
            if offender is not None:
                break
        if offender is not None:
            for c in range(t, ncols):
                a[t][c] += a[offender][c]
            continue
        t += 1
    factors = [abs(a[k][k]) for k in range(t)]
    return SmithNormalForm(invariant_factors=tuple(factors), rank=t)


def require_starfish(matrix: ExchangeMatrix, assert_starfish: bool) -> str:
    """Gate for starfish-conditional operations.

    Returns how the hypothesis was established: "full-rank" when the
    matrix proves it, "asserted" when the caller vouched for it.
    """
    if matrix_rank(matrix) == matrix.n:
        return "full-rank"
    if assert_starfish:
        return "asserted"
    raise StarfishNotEstablishedError(
        "the exchange matrix does not have full rank; pass assert_starfish=True "
        "only if the starfish property is known by other means"
    )


@dataclass(frozen=True)
class PrimeDivisorData:
    """Height-one primes over one cluster variable.

    The primes are named by the irreducible rational factors of the
    exchange polynomial.  Each takes valuation 1 on x_i and valuation 0
    on every other cluster variable of the seed.
    """

    direction: int
    factors: Tuple[LaurentPoly, ...]
    cluster_valuations: Tuple[Tuple[int, ...], ...]  # one row per prime, columns = x_1..x_n

    @property
    def count(self) -> int:
        return len(self.factors)


def prime_divisor_data(seed: Seed, i: int, field: CoefficientSpec,
                       assert_starfish: bool = False) -> PrimeDivisorData:
    """Explicit prime data for direction i, over Z or Q only."""
    if field.is_field and field.order != 1:
        raise MalformedInputError(
            "explicit prime divisors are computed over Z or Q only"
        )
    require_starfish(seed.matrix, assert_starfish)
    factors = explicit_factors_over_q(exchange_polynomial(seed.matrix, i))
    n = seed.n
    rows = tuple(
        tuple(1 if j == i else 0 for j in range(1, n + 1)) for _ in factors
    )
    return PrimeDivisorData(direction=i, factors=factors, cluster_valuations=rows)


@dataclass(frozen=True)
class ClassGroupPresentation:
    t: int
    counts: Tuple[int, ...]  # l_i per exchangeable direction
    relation_rows: Tuple[Tuple[int, ...], ...]  # valuations of x_i on all primes
    invariant_factors: Tuple[int, ...]
    free_rank: int
    basis: str  # how starfish was established

    def to_json(self) -> dict:
        return {
            "t": self.t,
            "rank": self.free_rank,
            "invariantFactors": list(self.invariant_factors),
            "perVariable": [
                {"i": k + 1, "l": l} for k, l in enumerate(self.counts)
            ],
        }


def class_group(seed: Seed, field: CoefficientSpec,
                assert_starfish: bool = False) -> ClassGroupPresentation:
    """Presentation of the divisor class group under starfish.

    Z^t modulo the rows of the prime valuation table of the cluster
    variables; the quotient is computed by Smith normal form and comes
    out free of rank t - n.
    """
    basis = require_starfish(seed.matrix, assert_starfish)
    n = seed.n
    counts = tuple(count_irreducible_factors(seed, i, field) for i in range(1, n + 1))
    t = sum(counts)
    rows = []
    offset = 0
    for i, l in enumerate(counts):
        row = [0] * t
        for k in range(l):
            row[offset + k] = 1
        rows.append(tuple(row))
        offset += l
    snf = smith_normal_form(rows)
    if any(v != 1 for v in snf.invariant_factors):
        raise MalformedInputError(
            "internal error: the relation rows must reduce to unit invariant factors"
        )
    return ClassGroupPresentation(
        t=t,
        counts=counts,
        relation_rows=tuple(rows),
        invariant_factors=snf.invariant_factors,
        free_rank=t - snf.rank,
        basis=basis,
    )


@dataclass(frozen=True)
class UfdVerdict:
    ufd: bool
    nontrivial: Tuple[Tuple[int, int], ...]  # (direction, count) for every l_i > 1
    basis: str

    def to_json(self) -> dict:
        return {
            "ufd": self.ufd,
            "nontrivial": [{"i": i, "l": l} for i, l in self.nontrivial],
        }


def is_ufd(seed: Seed, field: CoefficientSpec, assert_starfish: bool = False) -> UfdVerdict:
    """Whether the upper algebra is factorial: trivial class group, all l_i = 1."""
    pres = class_group(seed, field, assert_starfish)
    bad = tuple((i + 1, l) for i, l in enumerate(pres.counts) if l > 1)
    return UfdVerdict(ufd=pres.free_rank == 0, nontrivial=bad, basis=pres.basis)
