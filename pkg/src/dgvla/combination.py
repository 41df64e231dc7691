"""Sparse finite linear combinations with exact coefficients."""

from __future__ import annotations

from fractions import Fraction
from typing import Any, Dict, Hashable, Iterator, Mapping, Optional, TypeVar

C = TypeVar("C", bound="Combination")


class Combination:
    """Immutable mapping key -> nonzero Fraction, kept sorted by key.

    Subclasses fix what the keys mean and how they print.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Optional[Mapping[Any, Any]] = None) -> None:
        clean: Dict[Hashable, Fraction] = {}
        if terms:
            for key, c in terms.items():
                if c:
                    clean[self._key(key)] = Fraction(c)
        self._terms = dict(sorted(clean.items()))
        self._hash: Optional[int] = None

    @staticmethod
    def _key(key):
        return key

    @classmethod
    def zero(cls: type[C]) -> C:
        return cls()

    @classmethod
    def _raw(cls: type[C], terms: Dict[Hashable, Fraction]) -> C:
        # trusted constructor: keys already normalized, coefficients Fractions
        obj = cls.__new__(cls)
        obj._terms = dict(sorted((k, c) for k, c in terms.items() if c))
        obj._hash = None
        return obj

    def items(self) -> Iterator[tuple[Any, Fraction]]:
        return iter(self._terms.items())

    def keys(self):
        return self._terms.keys()

    @property
    def terms(self) -> Dict[Any, Fraction]:
        return dict(self._terms)

    def coeff(self, key) -> Fraction:
        return self._terms.get(key, Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __add__(self: C, other: C) -> C:
        if type(other) is not type(self):
            return NotImplemented
        out = dict(self._terms)
        for k, c in other._terms.items():
            out[k] = out.get(k, 0) + c
        return self._raw(out)

    def __neg__(self: C) -> C:
        return self._raw({k: -c for k, c in self._terms.items()})

    def __sub__(self: C, other: C) -> C:
        if type(other) is not type(self):
            return NotImplemented
        out = dict(self._terms)
        for k, c in other._terms.items():
            out[k] = out.get(k, 0) - c
        return self._raw(out)

    def __mul__(self: C, scalar) -> C:
        s = Fraction(scalar)
        return self._raw({k: s * c for k, c in self._terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        if type(other) is not type(self):
            return NotImplemented
        return self._terms == other._terms  # type: ignore[attr-defined]

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((type(self).__name__, frozenset(self._terms.items())))
        return self._hash

    def __repr__(self) -> str:
        return f"{type(self).__name__}({str(self)!r})"
