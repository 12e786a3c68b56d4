"""Shared helpers for randomized tests."""

from fractions import Fraction
import random

from clusteralg import LaurentPoly


def random_poly(rng: random.Random, ambient: int, max_terms: int = 4,
                exp_range: int = 3, allow_fractions: bool = False) -> LaurentPoly:
    terms = []
    for _ in range(rng.randint(0, max_terms)):
        e = tuple(rng.randint(-exp_range, exp_range) for _ in range(ambient))
        if allow_fractions:
            c = Fraction(rng.randint(-9, 9), rng.randint(1, 9))
        else:
            c = rng.randint(-9, 9)
        terms.append((e, c))
    return LaurentPoly(ambient, terms)


def random_nonzero_poly(rng: random.Random, ambient: int, **kw) -> LaurentPoly:
    while True:
        p = random_poly(rng, ambient, **kw)
        if not p.is_zero():
            return p
