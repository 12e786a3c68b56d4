"""Membership tests and valuations in the upper cluster algebra.

The workhorse is the adjacent expansion: split an element u along the
powers of x_i, say u = sum(c_j * x_i^j), and substitute
x_i = f_i / x_i' where f_i is the exchange polynomial of direction i.
Since f_i involves neither x_i nor x_i', distinct powers j land on
distinct powers of x_i' and nothing can cancel across them, so u lies
in the adjacent Laurent ring exactly when f_i^|j| divides c_j for every
negative j.  Running this for every direction tests membership in the
intersection of the initial Laurent ring with all n adjacent ones; when
the exchange matrix has full rank that intersection is the upper
algebra itself, otherwise the test is an upper bound and the
certificate says so.

Valuations at the height-one primes over x_i are computed in the same
adjacent frame: the prime attached to an irreducible factor r of f_i
measures the multiplicity of r in the expansion.  The pairing of x_i
against u is the largest s with u / x_i^s still in the algebra, which
equals the minimum of those valuations because every prime over x_i
takes valuation 1 on it.  The iterative pairing re-derives the same
number by repeated membership tests, bounded above by the formula
value so that it terminates unconditionally.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Sequence, Tuple

from .classgroup import require_starfish
from .errors import (
    InvalidIndexError,
    IsolatedIndexError,
    MalformedInputError,
    NotInAdjacentRingError,
    UndefinedValuationError,
)
from .exchange import ExchangeMatrix, matrix_rank, mutate_matrix
from .factors import explicit_factors_over_q, to_monomial_binomial
from .laurent import LaurentPoly, coefficients_in_variable, exact_divide, multiplicity
from .seeds import Seed, exchange_polynomial

__all__ = [
    "DirectionCheck",
    "expand_in_direction",
    "adjacent_expansion",
    "MembershipCertificate",
    "is_member_star",
    "is_laurent_in_seed",
    "valuation_at_prime",
    "valuation_pairing_fast",
    "valuation_pairing_iterative",
    "LocalFactorization",
    "local_factorization",
]


@dataclass(frozen=True)
class DirectionCheck:
    """Outcome of one adjacent-ring divisibility check.

    For a passing check, ``witnesses`` holds the quotient c_j / f^|j|
    for every negative power j, and ``expansion`` is u rewritten in the
    adjacent frame where slot i means the new variable x_i'.  For a
    failing check, ``failing_power`` is the first (most negative) j
    whose coefficient f^|j| does not divide, and ``remainder_nonzero``
    records that the division left a remainder.
    """

    direction: int
    ok: bool
    witnesses: Tuple[Tuple[int, LaurentPoly], ...]
    failing_power: int | None
    remainder_nonzero: bool
    expansion: LaurentPoly | None


def expand_in_direction(u: LaurentPoly, matrix: ExchangeMatrix, i: int) -> DirectionCheck:
    """Check u against the adjacent Laurent ring of direction i."""
    if not 1 <= i <= matrix.n:
        raise InvalidIndexError(f"direction {i} is not exchangeable")
    if u.ambient != matrix.n + matrix.m:
        raise MalformedInputError("element does not live in the seed's ambient ring")
    f = exchange_polynomial(matrix, i)
    decomposition = coefficients_in_variable(u, i)
    witnesses: List[Tuple[int, LaurentPoly]] = []
    pieces: List[Tuple[int, LaurentPoly]] = []
    f_powers: Dict[int, LaurentPoly] = {0: LaurentPoly.one(u.ambient)}

    def f_power(k: int) -> LaurentPoly:
        if k not in f_powers:
            f_powers[k] = f_power(k - 1) * f
        return f_powers[k]

    for j, c_j in decomposition.items():
        if j < 0:
            q = exact_divide(c_j, f_power(-j))
            if q is None:
                return DirectionCheck(
                    direction=i,
                    ok=False,
                    witnesses=tuple(witnesses),
                    failing_power=j,
                    remainder_nonzero=True,
                    expansion=None,
                )
            witnesses.append((j, q))
            pieces.append((j, q))
        else:
            pieces.append((j, c_j * f_power(j)))
    expansion = LaurentPoly.zero(u.ambient)
    for j, piece in pieces:
        shift = tuple(-j if k == i - 1 else 0 for k in range(u.ambient))
        expansion = expansion + piece.shifted(shift)
    return DirectionCheck(
        direction=i,
        ok=True,
        witnesses=tuple(witnesses),
        failing_power=None,
        remainder_nonzero=False,
        expansion=expansion,
    )


def adjacent_expansion(u: LaurentPoly, matrix: ExchangeMatrix, i: int) -> LaurentPoly | None:
    """u rewritten in the adjacent frame of direction i, or None if not Laurent there."""
    check = expand_in_direction(u, matrix, i)
    return check.expansion if check.ok else None


@dataclass(frozen=True)
class MembershipCertificate:
    member: bool
    starfish_basis: str  # "full-rank" or "upper-bound-only"
    directions: Tuple[DirectionCheck, ...]

    def to_json(self) -> dict:
        dirs = []
        for d in self.directions:
            entry: dict = {"direction": d.direction, "ok": d.ok}
            if d.ok:
                entry["witnesses"] = {str(j): q.text() for j, q in d.witnesses}
            else:
                entry["failingPower"] = d.failing_power
                entry["remainderNonzero"] = d.remainder_nonzero
            dirs.append(entry)
        return {
            "member": self.member,
            "starfishBasis": self.starfish_basis,
            "directions": dirs,
        }


def is_member_star(u: LaurentPoly, seed: Seed) -> MembershipCertificate:
    """Test u against the initial Laurent ring and all n adjacent ones.

    The input is already a Laurent polynomial in the seed's frame, so
    membership in the initial ring is syntactic; the certificate
    records one divisibility check per direction.  The verdict equals
    membership in the upper algebra when the matrix has full rank;
    otherwise it is only an upper bound and starfish_basis says so.
    """
    checks = []
    member = True
    for i in range(1, seed.n + 1):
        check = expand_in_direction(u, seed.matrix, i)
        checks.append(check)
        if not check.ok:
            member = False
    basis = "full-rank" if matrix_rank(seed.matrix) == seed.n else "upper-bound-only"
    return MembershipCertificate(member=member, starfish_basis=basis, directions=tuple(checks))


def is_laurent_in_seed(u: LaurentPoly, seed: Seed, path: Sequence[int]) -> bool:
    """Follow the mutation path, rewriting u through each frame in turn.

    Returns False at the first frame along the path where u stops being
    a Laurent polynomial, True if it stays Laurent all the way to the
    final seed.  The element must be given in the starting seed's frame.
    """
    matrix = seed.matrix
    current = u
    for i in path:
        check = expand_in_direction(current, matrix, i)
        if not check.ok:
            return False
        current = check.expansion
        matrix = mutate_matrix(matrix, i)
    return True


def _direction_primes(matrix: ExchangeMatrix, i: int) -> Tuple[LaurentPoly, ...]:
    f = exchange_polynomial(matrix, i)
    if to_monomial_binomial(f).is_isolated:
        raise IsolatedIndexError(
            f"direction {i} is isolated; its prime is the constant 2 and rational "
            "valuation data does not apply"
        )
    return explicit_factors_over_q(f)


def valuation_at_prime(u: LaurentPoly, seed: Seed, i: int, k: int) -> int:
    """Valuation of u at the k-th prime over x_i (1-based within direction i).

    The element must lie in the adjacent Laurent ring of direction i;
    the valuation is the multiplicity of the k-th irreducible factor of
    the exchange polynomial in the adjacent expansion of u.
    """
    if u.is_zero():
        raise UndefinedValuationError("the zero element has no valuation")
    primes = _direction_primes(seed.matrix, i)
    if not 1 <= k <= len(primes):
        raise InvalidIndexError(
            f"direction {i} has {len(primes)} primes, index {k} is out of range"
        )
    check = expand_in_direction(u, seed.matrix, i)
    if not check.ok:
        raise NotInAdjacentRingError(
            f"element is not in the adjacent Laurent ring of direction {i}"
        )
    return multiplicity(check.expansion, primes[k - 1])


def _pairing_fast_unchecked(u: LaurentPoly, seed: Seed, i: int) -> int:
    primes = _direction_primes(seed.matrix, i)
    check = expand_in_direction(u, seed.matrix, i)
    if not check.ok:
        raise NotInAdjacentRingError(
            f"element is not in the adjacent Laurent ring of direction {i}"
        )
    # Every prime over x_i takes valuation 1 on x_i, so no flooring is needed.
    return min(multiplicity(check.expansion, r) for r in primes)


def _require_member(u: LaurentPoly, seed: Seed):
    if u.is_zero():
        raise UndefinedValuationError("the zero element has no valuation")
    cert = is_member_star(u, seed)
    if not cert.member:
        failed = [d.direction for d in cert.directions if not d.ok]
        raise NotInAdjacentRingError(
            f"element is outside the upper algebra (fails directions {failed})"
        )


def valuation_pairing_fast(u: LaurentPoly, seed: Seed, i: int,
                           assert_starfish: bool = False) -> int:
    """The pairing of x_i with u: min over the primes over x_i of their valuation on u."""
    require_starfish(seed.matrix, assert_starfish)
    if not 1 <= i <= seed.n:
        raise InvalidIndexError(f"direction {i} is not exchangeable")
    _require_member(u, seed)
    return _pairing_fast_unchecked(u, seed, i)


def valuation_pairing_iterative(u: LaurentPoly, seed: Seed, i: int,
                                assert_starfish: bool = False) -> int:
    """The pairing of x_i with u, by direct search.

    Tests u / x_i^s for membership with s increasing.  The formula value
    serves as a hard upper bound, so the loop terminates even if a
    membership test were to misbehave; agreement of the two routes is
    what the property tests pin down.
    """
    require_starfish(seed.matrix, assert_starfish)
    if not 1 <= i <= seed.n:
        raise InvalidIndexError(f"direction {i} is not exchangeable")
    _require_member(u, seed)
    bound = _pairing_fast_unchecked(u, seed, i)
    step = tuple(-1 if k == i - 1 else 0 for k in range(u.ambient))
    current = u
    for s in range(1, bound + 1):
        current = current.shifted(step)
        if not is_member_star(current, seed).member:
            return s - 1
    return bound


@dataclass(frozen=True)
class LocalFactorization:
    """u = x_1^{s_1} ... x_n^{s_n} * cofactor with all pairings of the cofactor zero."""

    exponents: Tuple[int, ...]
    cofactor: LaurentPoly

    def to_json(self) -> dict:
        return {
            "exponents": list(self.exponents),
            "cofactor": self.cofactor.text(),
        }


def local_factorization(u: LaurentPoly, seed: Seed,
                        assert_starfish: bool = False) -> LocalFactorization:
    """Split off the largest cluster monomial dividing u inside the algebra.

    The exponents are the pairings of each cluster variable with u; they
    do not depend on the order in which they are read off because the
    primes over distinct directions are distinct.  Both postconditions
    are verified before returning: the cofactor pairs to zero with every
    cluster variable, and monomial times cofactor reproduces u.
    """
    require_starfish(seed.matrix, assert_starfish)
    _require_member(u, seed)
    n = seed.n
    exponents = tuple(_pairing_fast_unchecked(u, seed, i) for i in range(1, n + 1))
    shift = tuple(
        -exponents[k] if k < n else 0 for k in range(u.ambient)
    )
    cofactor = u.shifted(shift)
    for i in range(1, n + 1):
        if _pairing_fast_unchecked(cofactor, seed, i) != 0:
            raise MalformedInputError(
                "internal error: cofactor still pairs nontrivially with a cluster variable"
            )
    back = cofactor.shifted(tuple(-s for s in shift))
    if back != u:
        raise MalformedInputError("internal error: local factorization does not multiply back")
    return LocalFactorization(exponents=exponents, cofactor=cofactor)
