"""Sparse multivariate polynomials with exact rational coefficients.

A :class:`Poly` lives in ``Q[x1, ..., xd]`` for a fixed chart dimension ``d``.
Arithmetic runs on FLINT's exact ``fmpq_mpoly`` type; the public view of a
polynomial is a dict from exponent tuples to :class:`fractions.Fraction` with
zero coefficients never present.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Iterable, Iterator, Mapping, Sequence

import flint

from ._text import Cursor
from .errors import ParseError, ShapeError

Rat = Fraction
Exponent = tuple[int, ...]


def as_rat(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(f"not an exact rational: {value!r}")


def grlex_key(exp: Exponent) -> tuple:
    return (sum(exp), exp)


def _ctx(dim: int):
    return _CONTEXTS.get(dim) or _CONTEXTS.setdefault(
        dim, flint.fmpq_mpoly_ctx.get(("x", dim), "deglex"))


_CONTEXTS: dict[int, object] = {}


def _to_fmpq(value) -> flint.fmpq:
    c = as_rat(value)
    return flint.fmpq(c.numerator, c.denominator)


def _from_fmpq(c) -> Fraction:
    return Fraction(int(c.p), int(c.q))


class Poly:
    """Immutable polynomial in ``dim`` variables.

    Arithmetic is delegated to FLINT's ``fmpq_mpoly``; the exponent-to-Fraction
    view in :attr:`terms` is built on demand.
    """

    __slots__ = ("dim", "_p", "_terms", "_hash")

    def __init__(self, dim: int, terms: Mapping[Exponent, object] | None = None):
        if dim < 1:
            raise ShapeError("polynomials need at least one variable")
        clean: dict[Exponent, Fraction] = {}
        for exp, c in (terms or {}).items():
            exp = tuple(exp)
            if len(exp) != dim or any(e < 0 for e in exp):
                raise ShapeError(f"bad exponent {exp} for dimension {dim}")
            clean[exp] = clean.get(exp, 0) + as_rat(c)
        p = _ctx(dim).from_dict({e: _to_fmpq(c) for e, c in clean.items() if c})
        self._init(dim, p)

    def _init(self, dim: int, p) -> None:
        self.dim = dim
        self._p = p
        self._terms = None
        self._hash = None

    @classmethod
    def _wrap(cls, dim: int, p) -> Poly:
        out = object.__new__(cls)
        out._init(dim, p)
        return out

    @classmethod
    def _raw(cls, dim: int, terms: Mapping[Exponent, Fraction]) -> Poly:
        return cls._wrap(dim, _ctx(dim).from_dict({e: _to_fmpq(c) for e, c in terms.items()}))

    @property
    def terms(self) -> dict[Exponent, Fraction]:
        """Nonzero terms as ``{exponent: Fraction}`` (read-only view)."""
        if self._terms is None:
            self._terms = {tuple(e): _from_fmpq(c)
                           for e, c in zip(self._p.monoms(), self._p.coeffs())}
        return self._terms

    # constructors

    @classmethod
    def zero(cls, dim: int) -> Poly:
        return cls._wrap(dim, _ctx(dim).from_dict({}))

    @classmethod
    def const(cls, value, dim: int) -> Poly:
        return cls._wrap(dim, _ctx(dim).constant(_to_fmpq(value)))

    @classmethod
    def one(cls, dim: int) -> Poly:
        return cls.const(1, dim)

    @classmethod
    def var(cls, index: int, dim: int) -> Poly:
        """The coordinate ``x_index`` (1-based)."""
        if not 1 <= index <= dim:
            raise ShapeError(f"variable x{index} outside dimension {dim}")
        return cls._wrap(dim, _ctx(dim).gen(index - 1))

    @classmethod
    def monomial(cls, exp: Sequence[int], coeff=1) -> Poly:
        return cls(len(exp), {tuple(exp): coeff})

    # predicates

    def is_zero(self) -> bool:
        return self._p.is_zero()

    def __bool__(self) -> bool:
        return not self._p.is_zero()

    def is_const(self) -> bool:
        return self._p.total_degree() <= 0

    def constant_term(self) -> Fraction:
        return self.terms.get((0,) * self.dim, Fraction(0))

    def degree(self) -> int:
        return self._p.total_degree()

    # arithmetic

    def _other(self, other):
        if isinstance(other, Poly):
            if other.dim != self.dim:
                raise ShapeError(f"dimension mismatch: {self.dim} vs {other.dim}")
            return other._p
        if isinstance(other, (int, Rational)):
            return _to_fmpq(other)
        return None

    def __add__(self, other) -> Poly:
        o = self._other(other)
        if o is None:
            return NotImplemented
        return Poly._wrap(self.dim, self._p + o)

    __radd__ = __add__

    def __neg__(self) -> Poly:
        return Poly._wrap(self.dim, -self._p)

    def __sub__(self, other) -> Poly:
        o = self._other(other)
        if o is None:
            return NotImplemented
        return Poly._wrap(self.dim, self._p - o)

    def __rsub__(self, other) -> Poly:
        o = self._other(other)
        if o is None:
            return NotImplemented
        return Poly._wrap(self.dim, o - self._p)

    def __mul__(self, other) -> Poly:
        o = self._other(other)
        if o is None:
            return NotImplemented
        return Poly._wrap(self.dim, self._p * o)

    __rmul__ = __mul__

    def scale(self, factor) -> Poly:
        return Poly._wrap(self.dim, self._p * _to_fmpq(factor))

    def __pow__(self, n: int) -> Poly:
        if n < 0:
            raise ValueError("negative power of a polynomial")
        return Poly._wrap(self.dim, self._p ** n)

    def diff(self, index: int) -> Poly:
        """Partial derivative with respect to ``x_index`` (1-based)."""
        if not 1 <= index <= self.dim:
            raise ShapeError(f"variable x{index} outside dimension {self.dim}")
        return Poly._wrap(self.dim, self._p.derivative(index - 1))

    def __call__(self, *point) -> Fraction:
        return self.eval_at(point)

    def eval_at(self, point: Sequence) -> Fraction:
        if len(point) != self.dim:
            raise ShapeError(f"point of length {len(point)} for dimension {self.dim}")
        return _from_fmpq(self._p(*[_to_fmpq(v) for v in point]))

    def substitute(self, values: Sequence, one):
        """Evaluate with ring elements ``values`` (any commutative ring with ``one``)."""
        if len(values) != self.dim:
            raise ShapeError(f"{len(values)} values for dimension {self.dim}")
        powers: list[dict[int, object]] = [{0: one} for _ in values]

        def power(i: int, k: int):
            cache = powers[i]
            if k not in cache:
                cache[k] = power(i, k - 1) * values[i]
            return cache[k]

        total = None
        for exp, c in self.terms.items():
            term = one * c
            for i, k in enumerate(exp):
                if k:
                    term = term * power(i, k)
            total = term if total is None else total + term
        return one * 0 if total is None else total

    # comparison

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.dim == other.dim and self._p == other._p
        if isinstance(other, (int, Rational)):
            return self._p == _to_fmpq(other)
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.dim, str(self._p)))
        return self._hash

    # canonical ordering and text

    def sorted_terms(self) -> list[tuple[Exponent, Fraction]]:
        """Terms in decreasing graded-lexicographic order."""
        return sorted(self.terms.items(), key=lambda t: grlex_key(t[0]), reverse=True)

    def leading_term(self) -> tuple[Exponent, Fraction] | None:
        if self.is_zero():
            return None
        exp = max(self.terms, key=grlex_key)
        return exp, self.terms[exp]

    def __iter__(self) -> Iterator[tuple[Exponent, Fraction]]:
        return iter(self.sorted_terms())

    def __reduce__(self):
        return (Poly, (self.dim, self.terms))

    def to_str(self, names: Sequence[str] | None = None) -> str:
        return format_poly(self, names)

    def __str__(self) -> str:
        return format_poly(self)

    def __repr__(self) -> str:
        return f"Poly({self.dim}, {format_poly(self)!r})"


def default_names(dim: int) -> list[str]:
    return [f"x{i}" for i in range(1, dim + 1)]


def _monomial_str(exp: Exponent, names: Sequence[str]) -> str:
    parts = []
    for name, k in zip(names, exp):
        if k == 1:
            parts.append(name)
        elif k > 1:
            parts.append(f"{name}^{k}")
    return "*".join(parts)


def format_poly(p: Poly, names: Sequence[str] | None = None) -> str:
    """ASCII form, e.g. ``3/2*x1^2*x2 - x3 + 1``; ``0`` for the zero polynomial."""
    names = list(names) if names is not None else default_names(p.dim)
    if not p.terms:
        return "0"
    out = []
    for k, (exp, c) in enumerate(p.sorted_terms()):
        sign = "-" if c < 0 else "+"
        a = abs(c)
        mono = _monomial_str(exp, names)
        if not mono:
            body = str(a)
        elif a == 1:
            body = mono
        else:
            body = f"{a}*{mono}"
        if k == 0:
            out.append(body if sign == "+" else "-" + body)
        else:
            out.append(f" {sign} {body}")
    return "".join(out)


def parse_poly(text: str, dim: int, names: Sequence[str] | None = None) -> Poly:
    """Parse the ASCII polynomial syntax produced by :func:`format_poly`."""
    cur = Cursor(text)
    try:
        p = read_poly(cur, dim, names)
    except RecursionError:
        raise cur.error("parentheses nested too deeply") from None
    cur.skip()
    if not cur.eof():
        raise cur.error(f"unexpected {cur.peek()!r}", "'+'", "'-'", "'*'", "end of input")
    return p


# literal powers beyond this are refused rather than expanded
MAX_EXPONENT = 64


def read_poly(cur: Cursor, dim: int, names: Sequence[str] | None = None,
              newlines: bool = True) -> Poly:
    """Read a polynomial from a cursor; stops at the first character it cannot use."""
    lookup = {n: i for i, n in enumerate(names if names is not None else default_names(dim))}
    cur.skip(newlines)
    negate = False
    if cur.accept("-"):
        negate = True
    else:
        cur.accept("+")
    total = _read_term(cur, dim, lookup, newlines)
    if negate:
        total = -total
    while True:
        cur.skip(newlines)
        if cur.accept("+"):
            total = total + _read_term(cur, dim, lookup, newlines)
        elif cur.at("-") and not cur.at("->"):
            cur.accept("-")
            total = total - _read_term(cur, dim, lookup, newlines)
        else:
            return total


def _read_term(cur: Cursor, dim: int, lookup: dict[str, int], newlines: bool) -> Poly:
    term = _read_factor(cur, dim, lookup, newlines)
    while True:
        cur.skip(newlines)
        if cur.accept("*"):
            term = term * _read_factor(cur, dim, lookup, newlines)
        elif cur.accept("/"):
            cur.skip(newlines)
            line, col = cur.line, cur.col
            den = cur.read_int()
            if den == 0:
                raise ParseError("division by zero", line, col)
            term = term.scale(Fraction(1, den))
        else:
            return term


def _read_factor(cur: Cursor, dim: int, lookup: dict[str, int], newlines: bool) -> Poly:
    cur.skip(newlines)
    ch = cur.peek()
    if ch.isdigit():
        base = Poly.const(cur.read_int(), dim)
    elif ch.isalpha() or ch == "_":
        line, col = cur.line, cur.col
        name = cur.read_name()
        if name not in lookup:
            raise ParseError(f"unknown variable {name!r}", line, col, tuple(lookup))
        base = Poly.var(lookup[name] + 1, dim)
    elif ch == "(":
        cur.accept("(")
        base = read_poly(cur, dim, [n for n, _ in sorted(lookup.items(), key=lambda t: t[1])], newlines)
        cur.skip(newlines)
        cur.expect(")")
    else:
        raise cur.error(f"unexpected {ch or 'end of input'!r}", "number", "variable", "'('")
    if cur.accept("^"):
        line, col = cur.line, cur.col
        k = cur.read_int()
        if k > MAX_EXPONENT:
            raise ParseError(f"exponent {k} exceeds {MAX_EXPONENT}", line, col)
        base = base ** k
    return base


def poly_sum(polys: Iterable[Poly], dim: int) -> Poly:
    total = Poly.zero(dim)
    for p in polys:
        total = total + p
    return total
