"""Function algebra of an infinitesimal n-simplex on a d-dimensional chart.

Generators ``delta(i, a)`` stand for the coordinate ``a`` of ``x_i - x_0``
(slot ``i`` in ``1..n``, coordinate ``a`` in ``1..d``).  The ring is

    Q[x][delta] / (delta_{i,a} delta_{i,b},
                   delta_{i,a} delta_{j,b} + delta_{i,b} delta_{j,a})

so a nonzero monomial uses distinct slots and distinct coordinates, and
swapping the coordinates carried by two slots flips its sign.  Monomials are
stored in normal form ``(slots, coords)`` with both tuples increasing,
slot ``slots[t]`` paired with coordinate ``coords[t]``; the sign of any
other pairing is absorbed into the coefficient.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations
from math import comb
from numbers import Rational
from typing import Iterator

from .errors import ShapeError
from .poly import Poly, format_poly

Key = tuple[tuple[int, ...], tuple[int, ...]]
UNIT: Key = ((), ())


def _perm_sign(seq: list[int]) -> int:
    """Sign of the permutation sorting ``seq`` (entries distinct)."""
    inversions = sum(1 for i in range(len(seq)) for j in range(i + 1, len(seq)) if seq[i] > seq[j])
    return -1 if inversions % 2 else 1


def normalize_pairs(pairs) -> tuple[int, Key]:
    """Normal form of a product of generators given as ``(slot, coord)`` pairs.

    Returns ``(0, UNIT)`` when the product vanishes.
    """
    pairs = sorted(pairs)
    slots = tuple(p[0] for p in pairs)
    coords = [p[1] for p in pairs]
    if len(set(slots)) != len(slots) or len(set(coords)) != len(coords):
        return 0, UNIT
    return _perm_sign(coords), (slots, tuple(sorted(coords)))


@lru_cache(maxsize=None)
def _merge(k1: Key, k2: Key) -> tuple[int, Key]:
    if set(k1[0]) & set(k2[0]) or set(k1[1]) & set(k2[1]):
        return 0, UNIT
    return normalize_pairs(list(zip(*k1)) + list(zip(*k2)))


class WeilElement:
    """Immutable element of the infinitesimal-simplex algebra ``W(n, d)``."""

    __slots__ = ("n", "d", "terms")

    def __init__(self, n: int, d: int, terms: dict[Key, Poly] | None = None):
        self.n = n
        self.d = d
        clean: dict[Key, Poly] = {}
        for key, c in (terms or {}).items():
            slots, coords = key
            if len(slots) != len(coords):
                raise ShapeError(f"unbalanced Weil monomial {key}")
            if any(not 1 <= s <= n for s in slots) or any(not 1 <= a <= d for a in coords):
                raise ShapeError(f"Weil monomial {key} outside W({n}, {d})")
            if not isinstance(c, Poly):
                c = Poly.const(c, d)
            elif c.dim != d:
                raise ShapeError(f"coefficient dimension {c.dim} != {d}")
            sign, nk = normalize_pairs(zip(slots, coords))
            if sign and c:
                total = clean.get(nk, Poly.zero(d)) + (c if sign > 0 else -c)
                if total:
                    clean[nk] = total
                else:
                    clean.pop(nk, None)
        self.terms = clean

    @classmethod
    def _raw(cls, n: int, d: int, terms: dict[Key, Poly]) -> WeilElement:
        w = object.__new__(cls)
        w.n = n
        w.d = d
        w.terms = terms
        return w

    @classmethod
    def zero(cls, n: int, d: int) -> WeilElement:
        return cls._raw(n, d, {})

    @classmethod
    def const(cls, value, n: int, d: int) -> WeilElement:
        p = value if isinstance(value, Poly) else Poly.const(value, d)
        if p.dim != d:
            raise ShapeError(f"coefficient dimension {p.dim} != {d}")
        return cls._raw(n, d, {UNIT: p} if p else {})

    @classmethod
    def one(cls, n: int, d: int) -> WeilElement:
        return cls.const(1, n, d)

    @classmethod
    def generator(cls, slot: int, coord: int, n: int, d: int) -> WeilElement:
        if not 1 <= slot <= n or not 1 <= coord <= d:
            raise ShapeError(f"generator delta_{{{slot},{coord}}} outside W({n}, {d})")
        return cls._raw(n, d, {((slot,), (coord,)): Poly.one(d)})

    @staticmethod
    def basis(n: int, d: int, k: int) -> list[Key]:
        """Normal-form monomials of degree ``k``; there are C(n,k)*C(d,k) of them."""
        return [(s, a) for s in combinations(range(1, n + 1), k)
                for a in combinations(range(1, d + 1), k)]

    @staticmethod
    def dimension(n: int, d: int, k: int) -> int:
        return comb(n, k) * comb(d, k)

    # access

    def coefficient(self, key: Key) -> Poly:
        return self.terms.get(key, Poly.zero(self.d))

    def constant(self) -> Poly:
        return self.coefficient(UNIT)

    def component(self, k: int) -> WeilElement:
        return WeilElement._raw(self.n, self.d,
                                {key: c for key, c in self.terms.items() if len(key[0]) == k})

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __iter__(self) -> Iterator[tuple[Key, Poly]]:
        return iter(sorted(self.terms.items(), key=lambda t: (len(t[0][0]), t[0])))

    # arithmetic

    def _check(self, other: WeilElement) -> None:
        if (self.n, self.d) != (other.n, other.d):
            raise ShapeError(f"W({self.n}, {self.d}) vs W({other.n}, {other.d})")

    def _lift(self, other):
        if isinstance(other, WeilElement):
            self._check(other)
            return other
        if isinstance(other, (int, Rational, Poly)):
            return WeilElement.const(other, self.n, self.d)
        return NotImplemented

    def __add__(self, other) -> WeilElement:
        other = self._lift(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for key, c in other.terms.items():
            v = out.get(key)
            if v is None:
                out[key] = c
            else:
                v = v + c
                if v:
                    out[key] = v
                else:
                    del out[key]
        return WeilElement._raw(self.n, self.d, out)

    __radd__ = __add__

    def __neg__(self) -> WeilElement:
        return WeilElement._raw(self.n, self.d, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other) -> WeilElement:
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> WeilElement:
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other) -> WeilElement:
        if isinstance(other, (int, Rational, Poly)):
            if isinstance(other, Poly) and other.dim != self.d:
                raise ShapeError(f"coefficient dimension {other.dim} != {self.d}")
            out = {k: c * other for k, c in self.terms.items()}
            return WeilElement._raw(self.n, self.d, {k: c for k, c in out.items() if c})
        if not isinstance(other, WeilElement):
            return NotImplemented
        self._check(other)
        out: dict[Key, Poly] = {}
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                sign, key = _merge(k1, k2)
                if not sign:
                    continue
                prod = c1 * c2
                if sign < 0:
                    prod = -prod
                v = out.get(key)
                out[key] = prod if v is None else v + prod
        return WeilElement._raw(self.n, self.d, {k: c for k, c in out.items() if c})

    __rmul__ = __mul__

    def degenerate(self, i: int, j: int) -> WeilElement:
        """Substitute ``delta_i := delta_j`` (``j = 0``: ``delta_i := 0``)."""
        if not 1 <= i <= self.n or not 0 <= j <= self.n or i == j:
            raise ShapeError(f"bad degeneracy slots ({i}, {j}) for n = {self.n}")
        out: dict[Key, Poly] = {}
        for (slots, coords), c in self.terms.items():
            if i in slots:
                if j == 0 or j in slots:
                    continue
                sign, key = normalize_pairs((j if s == i else s, a) for s, a in zip(slots, coords))
            else:
                sign, key = 1, (slots, coords)
            v = out.get(key, Poly.zero(self.d)) + (c if sign > 0 else -c)
            if v:
                out[key] = v
            else:
                out.pop(key, None)
        return WeilElement._raw(self.n, self.d, out)

    def __eq__(self, other) -> bool:
        if isinstance(other, WeilElement):
            return (self.n, self.d) == (other.n, other.d) and self.terms == other.terms
        if isinstance(other, (int, Rational, Poly)):
            return self == WeilElement.const(other, self.n, self.d)
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.n, self.d, frozenset(self.terms.items())))

    def leading_term_str(self, names=None) -> str | None:
        """Lowest-order Weil monomial with the leading term of its coefficient."""
        if not self.terms:
            return None
        (slots, coords), c = next(iter(self))
        exp, a = c.leading_term()
        mono = "*".join(f"d{s}_{k}" for s, k in zip(slots, coords))
        lead = format_poly(Poly(self.d, {exp: a}), names)
        return f"({lead})" + (f"*{mono}" if mono else "")

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for (slots, coords), c in self:
            mono = "*".join(f"d{s}_{a}" for s, a in zip(slots, coords))
            parts.append(f"({c})" + (f"*{mono}" if mono else ""))
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"WeilElement(n={self.n}, d={self.d}, {self})"


def weil_degenerate(a: WeilElement, i: int, j: int) -> WeilElement:
    return a.degenerate(i, j)
