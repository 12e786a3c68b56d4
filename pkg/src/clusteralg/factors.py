"""Irreducible factor counts for exchange polynomials.

An exchange polynomial is either the constant 2 (isolated direction) or
a sum of two monomials with coefficient 1 and disjoint nonnegative
supports.  Writing the two exponent vectors as d*U and d*V, where d is
their joint content, the polynomial is (x^U)^d + (x^V)^d, so its
factorizations mirror those of t^d + 1.  Over the rationals

    t^d + 1 = prod of Phi_e(t) over e dividing 2d but not d,

with Phi_e the e-th cyclotomic polynomial, and each Phi_e factor
homogenizes to an honest factor in the original variables.  Over a
field whose largest root-of-unity order is N', the factor Phi_e splits
further into phi(e) * phi(N') / phi(lcm(e, N')) pieces.  Counting over
the integers matches counting over the rationals for non-isolated
directions (the binomial is primitive); the isolated constant 2 is a
single prime over the integers and is rejected over a field.

``brute_force_factor_count_oracle`` recounts over the rationals without
any of this: exhaustive trial division by bounded-coefficient
candidates.  Newton polytopes multiply by Minkowski sum, and the only
summands of a segment are its subsegments, so every candidate factor of
a binomial is (a monomial times) a polynomial supported on the lattice
points k*(U - V); U - V is primitive because the supports of U and V
are disjoint and their joint content is 1.  That keeps the search space
small while remaining exhaustive.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product as iter_product
from math import gcd
from typing import List, Tuple

from .errors import (
    IsolatedIndexError,
    MalformedInputError,
    OracleRefusedError,
)
from .exchange import ExchangeMatrix
from .fields import CoefficientSpec
from .laurent import Exponent, LaurentPoly, exact_divide
from .seeds import Seed, exchange_polynomial

__all__ = [
    "MonomialBinomial",
    "to_monomial_binomial",
    "divisors",
    "euler_phi",
    "cyclotomic_polynomial",
    "factor_index_set",
    "count_factors_of_td_plus_one",
    "count_irreducible_factors",
    "explicit_factors_over_q",
    "share_common_factor",
    "brute_force_factor_count_oracle",
]


@dataclass(frozen=True)
class MonomialBinomial:
    """Normalized shape data of an exchange polynomial x^a + x^b.

    ``a`` is the lexicographically larger exponent vector, ``d`` the
    joint content of a and b, and ``u``, ``v`` the primitive vectors
    with a = d*u, b = d*v.  The isolated constant 2 is encoded with
    d = 0 and all vectors zero.
    """

    ambient: int
    a: Exponent
    b: Exponent
    d: int
    u: Exponent
    v: Exponent

    @property
    def is_isolated(self) -> bool:
        return self.d == 0


def to_monomial_binomial(f: LaurentPoly) -> MonomialBinomial:
    """Validate exchange shape and extract the monomial pair."""
    terms = f.terms()
    zero = (0,) * f.ambient
    if len(terms) == 1:
        exp, c = terms[0]
        if exp == zero and c == 2:
            return MonomialBinomial(f.ambient, zero, zero, 0, zero, zero)
        raise MalformedInputError("not an exchange polynomial: single term other than 2")
    if len(terms) != 2:
        raise MalformedInputError("not an exchange polynomial: need exactly two terms")
    (e1, c1), (e2, c2) = terms
    if c1 != 1 or c2 != 1:
        raise MalformedInputError("not an exchange polynomial: coefficients must be 1")
    if any(v < 0 for v in e1) or any(v < 0 for v in e2):
        raise MalformedInputError("not an exchange polynomial: exponents must be nonnegative")
    if any(p > 0 and q > 0 for p, q in zip(e1, e2)):
        raise MalformedInputError("not an exchange polynomial: supports must be disjoint")
    a, b = (e1, e2) if e1 > e2 else (e2, e1)
    d = 0
    for v in a + b:
        d = gcd(d, v)
    u = tuple(v // d for v in a)
    v_vec = tuple(w // d for w in b)
    return MonomialBinomial(f.ambient, a, b, d, u, v_vec)


def divisors(k: int) -> Tuple[int, ...]:
    if k < 1:
        raise MalformedInputError("divisors of a positive integer only")
    small, large = [], []
    i = 1
    while i * i <= k:
        if k % i == 0:
            small.append(i)
            if i != k // i:
                large.append(k // i)
        i += 1
    return tuple(small + large[::-1])


def euler_phi(k: int) -> int:
    if k < 1:
        raise MalformedInputError("euler phi of a positive integer only")
    result = k
    p = 2
    rest = k
    while p * p <= rest:
        if rest % p == 0:
            while rest % p == 0:
                rest //= p
            result -= result // p
        p += 1
    if rest > 1:
        result -= result // rest
    return result


def _upoly_mul(a: Tuple[int, ...], b: Tuple[int, ...]) -> Tuple[int, ...]:
    out = [0] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca:
            for j, cb in enumerate(b):
                out[i + j] += ca * cb
    return tuple(out)


def _upoly_divide_exact(num: Tuple[int, ...], den: Tuple[int, ...]) -> Tuple[int, ...]:
    # Monic divisor long division over the integers; remainder must vanish.
    num_l = list(num)
    deg_n, deg_d = len(num) - 1, len(den) - 1
    assert den[-1] == 1
    out = [0] * (deg_n - deg_d + 1)
    for k in range(deg_n - deg_d, -1, -1):
        c = num_l[k + deg_d]
        out[k] = c
        if c:
            for j, cd in enumerate(den):
                num_l[k + j] -= c * cd
    assert all(v == 0 for v in num_l)
    return tuple(out)


@lru_cache(maxsize=None)
def cyclotomic_polynomial(e: int) -> Tuple[int, ...]:
    """Coefficients of the e-th cyclotomic polynomial, ascending degree.

    Computed from the definition: divide t^e - 1 by the cyclotomic
    polynomials of all proper divisors of e.
    """
    if e < 1:
        raise MalformedInputError("cyclotomic index must be positive")
    poly = tuple([-1] + [0] * (e - 1) + [1])
    for d in divisors(e):
        if d < e:
            poly = _upoly_divide_exact(poly, cyclotomic_polynomial(d))
    return poly


def factor_index_set(d: int) -> Tuple[int, ...]:
    """The orders e with e | 2d and e not dividing d, ascending."""
    if d < 1:
        raise MalformedInputError("content d must be positive")
    return tuple(e for e in divisors(2 * d) if d % e != 0)


def count_factors_of_td_plus_one(d: int, field: CoefficientSpec) -> int:
    """Number of irreducible factors of t^d + 1 over the given ring."""
    n_eff = field.effective_order
    total = 0
    for e in factor_index_set(d):
        l = e * n_eff // gcd(e, n_eff)
        total += euler_phi(e) * euler_phi(n_eff) // euler_phi(l)
    return total


def count_irreducible_factors(seed: Seed | ExchangeMatrix, i: int, field: CoefficientSpec) -> int:
    """The factor count l_i of the i-th exchange polynomial over the ring."""
    matrix = seed.matrix if isinstance(seed, Seed) else seed
    mb = to_monomial_binomial(exchange_polynomial(matrix, i))
    if mb.is_isolated:
        if field.is_field:
            raise IsolatedIndexError(
                f"direction {i} is isolated; the constant 2 is a unit over a field"
            )
        return 1
    return count_factors_of_td_plus_one(mb.d, field)


def explicit_factors_over_q(f: LaurentPoly) -> Tuple[LaurentPoly, ...]:
    """The irreducible rational factors of a non-isolated exchange polynomial.

    Each order e in the factor index set contributes the homogenization
    of Phi_e along the two primitive monomials: with Phi_e of degree
    D = phi(e) and coefficients c_k, the factor is
    sum(c_k * x^(k*U + (D-k)*V)).  The factors multiply back to f.
    """
    mb = to_monomial_binomial(f)
    if mb.is_isolated:
        raise IsolatedIndexError("the constant 2 has no rational factorization data")
    out = []
    for e in factor_index_set(mb.d):
        coeffs = cyclotomic_polynomial(e)
        deg = len(coeffs) - 1
        terms = []
        for k, c in enumerate(coeffs):
            if c == 0:
                continue
            exp = tuple(k * uu + (deg - k) * vv for uu, vv in zip(mb.u, mb.v))
            terms.append((exp, c))
        out.append(LaurentPoly(f.ambient, terms))
    return tuple(out)


def share_common_factor(seed: Seed | ExchangeMatrix, i: int, j: int) -> bool:
    """Whether the exchange polynomials of directions i and j share a factor.

    Factors of a binomial are supported on its Newton segment, so two
    exchange polynomials can only share one when their primitive
    monomial pairs agree up to swap; they then do exactly when their
    factor index sets intersect.  This is independent of the field.
    """
    matrix = seed.matrix if isinstance(seed, Seed) else seed
    mb_i = to_monomial_binomial(exchange_polynomial(matrix, i))
    mb_j = to_monomial_binomial(exchange_polynomial(matrix, j))
    if mb_i.is_isolated or mb_j.is_isolated:
        # Over the integers the constant 2 is prime and never divides a
        # primitive binomial, so only two isolated directions share.
        return mb_i.is_isolated and mb_j.is_isolated
    if (mb_i.u, mb_i.v) not in ((mb_j.u, mb_j.v), (mb_j.v, mb_j.u)):
        return False
    return bool(set(factor_index_set(mb_i.d)) & set(factor_index_set(mb_j.d)))


def _segment_degree(p: LaurentPoly, w: Exponent) -> int:
    """Span of p's support along direction w, validating segment shape."""
    axis = next(k for k, v in enumerate(w) if v != 0)
    ks = []
    base = p.terms()[0][0]
    for exp, _ in p.terms():
        delta = exp[axis] - base[axis]
        if delta % w[axis] != 0:
            raise OracleRefusedError("support left the expected segment")
        k = delta // w[axis]
        if tuple(b + k * ww for b, ww in zip(base, w)) != exp:
            raise OracleRefusedError("support left the expected segment")
        ks.append(k)
    return max(ks) - min(ks)


def _count_segment_factors(p: LaurentPoly, w: Exponent) -> int:
    """Irreducible factor count over Q of a segment-supported polynomial,
    by exhaustive trial division and recursion on both parts."""
    span = _segment_degree(p, w)
    if span == 0:
        return 0  # single term: a unit of the Laurent ring
    bound = int(p.max_coefficient()) + 1
    for deg in range(1, span // 2 + 1):
        for coeffs in iter_product(range(-bound, bound + 1), repeat=deg + 1):
            if coeffs[0] == 0 or coeffs[-1] <= 0:
                continue
            g = 0
            for c in coeffs:
                g = gcd(g, c)
            if g != 1:
                continue
            candidate = LaurentPoly(
                p.ambient,
                [(tuple(k * ww for ww in w), c) for k, c in enumerate(coeffs) if c != 0],
            )
            q = exact_divide(p, candidate)
            if q is not None:
                return _count_segment_factors(candidate, w) + _count_segment_factors(q, w)
    return 1


def brute_force_factor_count_oracle(f: LaurentPoly, max_total_degree: int = 8,
                                    max_active_vars: int = 3) -> int:
    """Count irreducible rational factors of an exchange binomial by search.

    Candidates are supported on the lattice points of the binomial's
    Newton segment with integer coefficients bounded by the largest
    coefficient of the current polynomial plus 1; each hit is divided
    out exactly and both parts are recounted recursively.  Refuses
    inputs outside the configured degree and variable bounds, and the
    isolated constant 2.  No cyclotomic bookkeeping is involved.
    """
    mb = to_monomial_binomial(f)
    if mb.is_isolated:
        raise OracleRefusedError("the constant 2 is a unit over the rationals")
    if f.total_degree() > max_total_degree:
        raise OracleRefusedError(
            f"total degree {f.total_degree()} exceeds the bound {max_total_degree}"
        )
    active = f.active_variables()
    if len(active) > max_active_vars:
        raise OracleRefusedError(
            f"{len(active)} active variables exceed the bound {max_active_vars}"
        )
    w = tuple(a - b for a, b in zip(mb.u, mb.v))
    return _count_segment_factors(f, w)
