"""Coefficient rings.

Two kinds are supported: the ring of integers, and cyclotomic fields
``Q(zeta_N)`` where ``N = 1`` means the plain rationals.  The only thing
factor counting needs to know about a field is which roots of unity it
contains, so the whole field is summarised by its effective root-of-unity
order: ``N`` when ``N`` is even, ``2N`` when it is odd (because ``-zeta``
is then a primitive ``2N``-th root).  The integers behave like the
rationals here, with effective order 2.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import MalformedInputError, UnknownFieldError

__all__ = ["CoefficientSpec", "PRESET_FIELDS"]


@dataclass(frozen=True)
class CoefficientSpec:
    """Description of the coefficient ring K."""

    kind: str  # "Z" or "cyclotomic"
    order: int = 1  # root-of-unity order N, only meaningful for "cyclotomic"

    def __post_init__(self):
        if self.kind not in ("Z", "cyclotomic"):
            raise MalformedInputError(f"unknown coefficient kind {self.kind!r}")
        if not isinstance(self.order, int) or self.order < 1:
            raise MalformedInputError("root-of-unity order must be a positive integer")
        if self.kind == "Z" and self.order != 1:
            raise MalformedInputError("the integers carry no root-of-unity order")

    @classmethod
    def integers(cls) -> "CoefficientSpec":
        return cls("Z")

    @classmethod
    def rationals(cls) -> "CoefficientSpec":
        return cls("cyclotomic", 1)

    @classmethod
    def cyclotomic(cls, order: int) -> "CoefficientSpec":
        return cls("cyclotomic", order)

    @property
    def is_field(self) -> bool:
        return self.kind == "cyclotomic"

    @property
    def effective_order(self) -> int:
        """Largest N' such that the ring contains a primitive N'-th root of unity."""
        if self.kind == "Z":
            return 2
        return self.order if self.order % 2 == 0 else 2 * self.order

    def has_primitive_root(self, d: int) -> bool:
        """Whether the ring contains a primitive d-th root of unity."""
        if d < 1:
            raise MalformedInputError("root order must be positive")
        return self.effective_order % d == 0

    def coefficient_is_unit(self, c: Fraction) -> bool:
        """Whether a rational scalar is a unit of the ring."""
        if self.kind == "Z":
            return c == 1 or c == -1
        return c != 0

    @classmethod
    def parse(cls, text: str) -> "CoefficientSpec":
        """Parse "Z", "Q" or "Q(zeta,N)"."""
        if not isinstance(text, str):
            raise UnknownFieldError("field description must be a string")
        s = text.strip()
        if s == "Z":
            return cls.integers()
        if s == "Q":
            return cls.rationals()
        if s.startswith("Q(zeta,") and s.endswith(")"):
            body = s[len("Q(zeta,"):-1].strip()
            if body.isdigit() and int(body) >= 1:
                return cls.cyclotomic(int(body))
        raise UnknownFieldError(f"unrecognised field {text!r}; expected Z, Q or Q(zeta,N)")

    def to_json(self) -> dict:
        if self.kind == "Z":
            return {"K": "Z"}
        if self.order == 1:
            return {"K": "Q"}
        return {"K": "Q(zeta)", "N": self.order}

    @classmethod
    def from_json(cls, obj) -> "CoefficientSpec":
        if not isinstance(obj, dict) or "K" not in obj:
            raise UnknownFieldError("field JSON must be an object with a K key")
        k = obj["K"]
        if k == "Z":
            return cls.integers()
        if k == "Q":
            return cls.rationals()
        if k == "Q(zeta)":
            n = obj.get("N")
            if isinstance(n, int) and n >= 1:
                return cls.cyclotomic(n)
        raise UnknownFieldError(f"unrecognised field JSON {obj!r}")

    def __str__(self) -> str:
        if self.kind == "Z":
            return "Z"
        if self.order == 1:
            return "Q"
        return f"Q(zeta,{self.order})"


PRESET_FIELDS = (
    CoefficientSpec.integers(),
    CoefficientSpec.rationals(),
    CoefficientSpec.cyclotomic(4),
    CoefficientSpec.cyclotomic(6),
    CoefficientSpec.cyclotomic(12),
)
