"""Exact sparse Laurent polynomial arithmetic over the rationals.

A polynomial in ``ambient`` variables is a map from exponent vectors
(tuples of signed integers, one per variable) to nonzero rational
coefficients.  The zero polynomial is the empty map.  Construction
normalizes: duplicate exponent vectors are summed and zero coefficients
dropped, so two polynomials are equal exactly when their term maps are.

The canonical term order, used for printing, comparison keys and
division, is plain lexicographic order on exponent vectors, ascending.
The text form writes terms in that order, coefficient first, variables
as ``x{i}^{e}`` joined by ``*``, for example ``3*x1^-1*x2^2 + 1``.

Division is exact or nothing: ``exact_divide`` either finds the unique
Laurent quotient or reports that none exists.  It works by shifting both
operands to honest polynomials whose per-variable minimum exponent is
zero, running single-divisor elimination against the lexicographically
leading term, and shifting back.  Monomials are units of the Laurent
ring, which is why the shift is harmless.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Iterable, Mapping, Sequence, Tuple, Union

from .errors import (
    AmbientMismatchError,
    InvalidIndexError,
    InvalidPrimeError,
    MalformedInputError,
    PolynomialDivisionError,
    TermBudgetError,
    UndefinedValuationError,
)
from .fields import CoefficientSpec

__all__ = [
    "Exponent",
    "LaurentPoly",
    "normalize",
    "exact_divide",
    "multiplicity",
    "coefficients_in_variable",
    "is_unit",
    "DEFAULT_TERM_BUDGET",
]

Exponent = Tuple[int, ...]
Scalar = Union[int, Fraction]

DEFAULT_TERM_BUDGET = 10**6


def _as_fraction(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    raise MalformedInputError(
        f"coefficients must be integers or Fractions, got {type(c).__name__}"
    )


class LaurentPoly:
    """An immutable Laurent polynomial in a fixed number of variables."""

    __slots__ = ("ambient", "_terms", "_sorted")

    def __init__(self, ambient: int, terms: Union[Mapping[Exponent, Scalar], Iterable[Tuple[Exponent, Scalar]]] = ()):
        if not isinstance(ambient, int) or ambient < 0:
            raise MalformedInputError("ambient variable count must be a nonnegative integer")
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: Dict[Exponent, Fraction] = {}
        for exp, c in items:
            exp = tuple(exp)
            if len(exp) != ambient or not all(isinstance(e, int) for e in exp):
                raise MalformedInputError(
                    f"exponent vector {exp!r} does not fit ambient size {ambient}"
                )
            c = _as_fraction(c)
            s = acc.get(exp, Fraction(0)) + c
            if s:
                acc[exp] = s
            else:
                acc.pop(exp, None)
        self.ambient = ambient
        self._terms = acc
        self._sorted = tuple(sorted(acc.items()))

    # -- constructors ---------------------------------------------------

    @classmethod
    def zero(cls, ambient: int) -> "LaurentPoly":
        return cls(ambient)

    @classmethod
    def constant(cls, ambient: int, c: Scalar) -> "LaurentPoly":
        return cls(ambient, {(0,) * ambient: c})

    @classmethod
    def one(cls, ambient: int) -> "LaurentPoly":
        return cls.constant(ambient, 1)

    @classmethod
    def variable(cls, ambient: int, i: int) -> "LaurentPoly":
        """The variable x_i, 1-based."""
        if not 1 <= i <= ambient:
            raise InvalidIndexError(f"variable index {i} out of range 1..{ambient}")
        exp = tuple(1 if k == i - 1 else 0 for k in range(ambient))
        return cls(ambient, {exp: 1})

    @classmethod
    def monomial(cls, ambient: int, exponent: Sequence[int], coeff: Scalar = 1) -> "LaurentPoly":
        return cls(ambient, {tuple(exponent): coeff})

    # -- inspection -----------------------------------------------------

    def terms(self) -> Tuple[Tuple[Exponent, Fraction], ...]:
        """Terms in canonical (ascending lexicographic) order."""
        return self._sorted

    def coefficient(self, exponent: Sequence[int]) -> Fraction:
        return self._terms.get(tuple(exponent), Fraction(0))

    def term_count(self) -> int:
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_one(self) -> bool:
        return self._sorted == (((0,) * self.ambient, Fraction(1)),)

    def is_single_term(self) -> bool:
        return len(self._terms) == 1

    def is_integral(self) -> bool:
        """Whether every coefficient is an integer."""
        return all(c.denominator == 1 for c in self._terms.values())

    def max_coefficient(self) -> Fraction:
        """Largest coefficient magnitude, 0 for the zero polynomial."""
        if not self._terms:
            return Fraction(0)
        return max(abs(c) for c in self._terms.values())

    def total_degree(self) -> int:
        """Max over terms of the sum of exponents.  Sensible for honest polynomials."""
        if not self._terms:
            return 0
        return max(sum(exp) for exp in self._terms)

    def active_variables(self) -> Tuple[int, ...]:
        """1-based indices of variables that appear with a nonzero exponent."""
        seen = set()
        for exp in self._terms:
            for k, e in enumerate(exp):
                if e != 0:
                    seen.add(k + 1)
        return tuple(sorted(seen))

    def sort_key(self):
        """A total-order key: polynomials compare by their canonical term list."""
        return self._sorted

    # -- arithmetic -----------------------------------------------------

    def _check_same_ambient(self, other: "LaurentPoly"):
        if self.ambient != other.ambient:
            raise AmbientMismatchError(
                f"mixing polynomials in {self.ambient} and {other.ambient} variables"
            )

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = LaurentPoly.constant(self.ambient, other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        self._check_same_ambient(other)
        acc = dict(self._terms)
        for exp, c in other._terms.items():
            s = acc.get(exp, Fraction(0)) + c
            if s:
                acc[exp] = s
            else:
                acc.pop(exp, None)
        return LaurentPoly(self.ambient, acc)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly(self.ambient, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = LaurentPoly.constant(self.ambient, other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = _as_fraction(other)
            if c == 0:
                return LaurentPoly.zero(self.ambient)
            return LaurentPoly(self.ambient, {e: v * c for e, v in self._terms.items()})
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        self._check_same_ambient(other)
        acc: Dict[Exponent, Fraction] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                exp = tuple(a + b for a, b in zip(e1, e2))
                s = acc.get(exp, Fraction(0)) + c1 * c2
                if s:
                    acc[exp] = s
                else:
                    acc.pop(exp, None)
        return LaurentPoly(self.ambient, acc)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            if not self.is_single_term():
                raise PolynomialDivisionError(
                    "negative powers are only defined for single-term polynomials"
                )
            (exp, c), = self._terms.items()
            return LaurentPoly(self.ambient, {tuple(e * k for e in exp): c ** k})
        result = LaurentPoly.one(self.ambient)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base if k > 1 else base
            k >>= 1
        return result

    def shifted(self, delta: Sequence[int]) -> "LaurentPoly":
        """Multiply by the monomial x^delta."""
        delta = tuple(delta)
        if len(delta) != self.ambient:
            raise MalformedInputError("shift vector does not fit the ambient size")
        return LaurentPoly(
            self.ambient,
            {tuple(a + b for a, b in zip(exp, delta)): c for exp, c in self._terms.items()},
        )

    # -- comparison and text --------------------------------------------

    def __eq__(self, other):
        return (
            isinstance(other, LaurentPoly)
            and self.ambient == other.ambient
            and self._sorted == other._sorted
        )

    def __hash__(self):
        return hash((self.ambient, self._sorted))

    def text(self, names: Sequence[str] | None = None) -> str:
        """Canonical text form, deterministic and parseable."""
        if names is not None and len(names) != self.ambient:
            raise MalformedInputError("need one name per variable")
        if not self._sorted:
            return "0"
        parts = []
        for idx, (exp, c) in enumerate(self._sorted):
            mag = abs(c)
            monos = []
            for k, e in enumerate(exp):
                if e == 0:
                    continue
                name = names[k] if names is not None else f"x{k + 1}"
                monos.append(name if e == 1 else f"{name}^{e}")
            if not monos:
                body = str(mag)
            elif mag == 1:
                body = "*".join(monos)
            else:
                body = "*".join([str(mag)] + monos)
            if idx == 0:
                parts.append(("-" if c < 0 else "") + body)
            else:
                parts.append((" - " if c < 0 else " + ") + body)
        return "".join(parts)

    def __str__(self):
        return self.text()

    def __repr__(self):
        return f"LaurentPoly({self.ambient}, {self.text()!r})"


def normalize(ambient: int, raw_terms) -> LaurentPoly:
    """Build a normalized polynomial from raw (exponent, coefficient) data."""
    return LaurentPoly(ambient, raw_terms)


def _min_exponents(p: LaurentPoly) -> Exponent:
    mins = None
    for exp in p._terms:
        if mins is None:
            mins = list(exp)
        else:
            mins = [min(a, b) for a, b in zip(mins, exp)]
    assert mins is not None
    return tuple(mins)


def exact_divide(a: LaurentPoly, b: LaurentPoly, term_budget: int = DEFAULT_TERM_BUDGET) -> LaurentPoly | None:
    """Return a/b when b divides a exactly in the Laurent ring, else None.

    Both operands are shifted so that every variable has minimum exponent
    zero; after the shift neither has a monomial factor, so divisibility
    of the shifted honest polynomials is equivalent to divisibility in
    the Laurent ring.  The honest division eliminates against the
    divisor's lexicographically last (largest) term; the first time that
    term fails to divide the running leading term, no quotient exists.
    The quotient term count is capped by ``term_budget`` to guard against
    pathological inputs.
    """
    a._check_same_ambient(b)
    if b.is_zero():
        raise PolynomialDivisionError("division by the zero polynomial")
    if a.is_zero():
        return LaurentPoly.zero(a.ambient)
    shift_a = _min_exponents(a)
    shift_b = _min_exponents(b)
    A = {tuple(e - s for e, s in zip(exp, shift_a)): c for exp, c in a._terms.items()}
    B = {tuple(e - s for e, s in zip(exp, shift_b)): c for exp, c in b._terms.items()}
    lead_b = max(B)
    lc_b = B[lead_b]
    quotient: Dict[Exponent, Fraction] = {}
    rem = dict(A)
    while rem:
        lead_r = max(rem)
        t_exp = tuple(r - s for r, s in zip(lead_r, lead_b))
        if any(e < 0 for e in t_exp):
            return None
        if len(quotient) >= term_budget:
            raise TermBudgetError(
                f"quotient exceeded the term budget of {term_budget} terms"
            )
        t_coeff = rem[lead_r] / lc_b
        quotient[t_exp] = t_coeff
        for exp, c in B.items():
            key = tuple(e + t for e, t in zip(exp, t_exp))
            s = rem.get(key, Fraction(0)) - c * t_coeff
            if s:
                rem[key] = s
            else:
                rem.pop(key, None)
    offset = tuple(sa - sb for sa, sb in zip(shift_a, shift_b))
    return LaurentPoly(
        a.ambient,
        {tuple(e + o for e, o in zip(exp, offset)): c for exp, c in quotient.items()},
    )


def multiplicity(a: LaurentPoly, p: LaurentPoly) -> int:
    """Largest e such that p^e divides a.

    Undefined for a = 0.  The reference element p must be a nonzero
    non-unit; single-term polynomials are units of the Laurent ring over
    a field, so they are rejected.
    """
    a._check_same_ambient(p)
    if a.is_zero():
        raise UndefinedValuationError("the zero polynomial has no multiplicity")
    if p.is_zero() or p.is_single_term():
        raise InvalidPrimeError("multiplicity reference must be a nonzero non-unit")
    e = 0
    current = a
    while True:
        q = exact_divide(current, p)
        if q is None:
            return e
        current = q
        e += 1


def coefficients_in_variable(u: LaurentPoly, i: int) -> Dict[int, LaurentPoly]:
    """Decompose u as a Laurent polynomial in x_i.

    Returns a map from the power j to the coefficient of x_i^j, each
    coefficient living in the same ambient ring with the i-th exponent
    zeroed.  Summing coefficient * x_i^j over the map recovers u.
    """
    if not 1 <= i <= u.ambient:
        raise InvalidIndexError(f"variable index {i} out of range 1..{u.ambient}")
    split: Dict[int, Dict[Exponent, Fraction]] = {}
    for exp, c in u._terms.items():
        j = exp[i - 1]
        rest = exp[: i - 1] + (0,) + exp[i:]
        split.setdefault(j, {})[rest] = c
    return {j: LaurentPoly(u.ambient, terms) for j, terms in sorted(split.items())}


def is_unit(u: LaurentPoly, n: int, field: CoefficientSpec) -> bool:
    """Whether u is a unit of the (upper) cluster algebra.

    Units are exactly the scalars times monomials in the frozen
    variables (indices above n), with the scalar a unit of the
    coefficient ring: any nonzero scalar over a field, and +-1 over the
    integers.
    """
    if not isinstance(n, int) or not 0 <= n <= u.ambient:
        raise MalformedInputError("exchangeable count n must satisfy 0 <= n <= ambient")
    if not u.is_single_term():
        return False
    (exp, coeff), = u._terms.items()
    if any(exp[k] != 0 for k in range(n)):
        return False
    return field.coefficient_is_unit(coeff)
