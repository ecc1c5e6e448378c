"""Small immutable matrices over an exact commutative ring.

Entries are :class:`~gerbeforms.poly.Poly` for chart-level data and
:class:`~gerbeforms.weil.WeilElement` inside combinatorial evaluations; the
class only relies on ``+``, ``-``, ``*`` and ``is_zero`` of its entries.
"""

from __future__ import annotations

from numbers import Rational
from typing import Callable, Iterator, Sequence

from ._text import Cursor
from .errors import ShapeError
from .poly import Poly, format_poly, read_poly


class Matrix:
    __slots__ = ("rows", "nrows", "ncols")

    def __init__(self, rows: Sequence[Sequence]):
        rows = tuple(tuple(r) for r in rows)
        if not rows or any(len(r) != len(rows[0]) for r in rows) or not rows[0]:
            raise ShapeError("matrix rows must be non-empty and of equal length")
        self.rows = rows
        self.nrows = len(rows)
        self.ncols = len(rows[0])

    @classmethod
    def identity(cls, k: int, one) -> Matrix:
        zero = one * 0
        return cls([[one if i == j else zero for j in range(k)] for i in range(k)])

    @classmethod
    def zeros(cls, k: int, zero, ncols: int | None = None) -> Matrix:
        return cls([[zero] * (ncols or k) for _ in range(k)])

    @classmethod
    def unit(cls, i: int, j: int, k: int, dim: int, coeff: Poly | int = 1) -> Matrix:
        """``coeff * E_ij`` with 1-based ``i, j`` as k-by-k polynomial matrix."""
        if not (1 <= i <= k and 1 <= j <= k):
            raise ShapeError(f"E{i}{j} outside size {k}")
        c = coeff if isinstance(coeff, Poly) else Poly.const(coeff, dim)
        z = Poly.zero(dim)
        return cls([[c if (r, s) == (i - 1, j - 1) else z for s in range(k)] for r in range(k)])

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    @property
    def size(self) -> int:
        if self.nrows != self.ncols:
            raise ShapeError(f"matrix of shape {self.shape} is not square")
        return self.nrows

    def __getitem__(self, ij: tuple[int, int]):
        i, j = ij
        return self.rows[i][j]

    def __iter__(self) -> Iterator[tuple]:
        return iter(self.rows)

    def entries(self) -> Iterator:
        for r in self.rows:
            yield from r

    def map(self, f: Callable) -> Matrix:
        return Matrix([[f(x) for x in r] for r in self.rows])

    def is_zero(self) -> bool:
        return all(x.is_zero() if hasattr(x, "is_zero") else x == 0 for x in self.entries())

    def _same_shape(self, other: Matrix) -> None:
        if self.shape != other.shape:
            raise ShapeError(f"shape mismatch: {self.shape} vs {other.shape}")

    def __add__(self, other: Matrix) -> Matrix:
        if not isinstance(other, Matrix):
            return NotImplemented
        self._same_shape(other)
        return Matrix([[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __sub__(self, other: Matrix) -> Matrix:
        if not isinstance(other, Matrix):
            return NotImplemented
        self._same_shape(other)
        return Matrix([[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __neg__(self) -> Matrix:
        return Matrix([[-a for a in r] for r in self.rows])

    def __mul__(self, scalar) -> Matrix:
        if isinstance(scalar, Matrix):
            return NotImplemented
        return Matrix([[a * scalar for a in r] for r in self.rows])

    def __rmul__(self, scalar) -> Matrix:
        return self.__mul__(scalar)

    def __matmul__(self, other: Matrix) -> Matrix:
        if not isinstance(other, Matrix):
            return NotImplemented
        if self.ncols != other.nrows:
            raise ShapeError(f"cannot multiply {self.shape} by {other.shape}")
        cols = list(zip(*other.rows))
        out = []
        for r in self.rows:
            row = []
            for c in cols:
                acc = None
                for a, b in zip(r, c):
                    if a.is_zero() or b.is_zero():
                        continue
                    t = a * b
                    acc = t if acc is None else acc + t
                row.append(acc if acc is not None else r[0] * 0)
            out.append(row)
        return Matrix(out)

    def transpose(self) -> Matrix:
        return Matrix(list(zip(*self.rows)))

    def commutator(self, other: Matrix) -> Matrix:
        return self @ other - other @ self

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.rows == other.rows

    def __hash__(self) -> int:
        return hash(self.rows)

    def to_str(self, names: Sequence[str] | None = None) -> str:
        return format_matrix(self, names)

    def __str__(self) -> str:
        return self.to_str()

    def __repr__(self) -> str:
        return f"Matrix({self})"


def poly_matrix(rows: Sequence[Sequence], dim: int) -> Matrix:
    """Matrix of polynomials from ints, fractions, strings or Polys."""
    def conv(x):
        if isinstance(x, Poly):
            return x
        if isinstance(x, (int, Rational)):
            return Poly.const(x, dim)
        if isinstance(x, str):
            from .poly import parse_poly
            return parse_poly(x, dim)
        raise TypeError(f"cannot use {x!r} as a polynomial")
    return Matrix([[conv(x) for x in r] for r in rows])


def format_matrix(m: Matrix, names: Sequence[str] | None = None) -> str:
    return "[" + ", ".join(
        "[" + ", ".join(format_poly(x, names) for x in r) + "]" for r in m.rows) + "]"


def read_matrix(cur: Cursor, dim: int, names: Sequence[str] | None = None) -> Matrix:
    """Read ``[[p11, p12], [p21, p22]]`` with polynomial entries."""
    cur.skip()
    line, col = cur.line, cur.col
    cur.expect("[")
    rows = []
    while True:
        cur.skip()
        cur.expect("[")
        row = []
        while True:
            row.append(read_poly(cur, dim, names))
            cur.skip()
            if cur.accept(","):
                continue
            cur.expect("]")
            break
        rows.append(row)
        cur.skip()
        if cur.accept(","):
            continue
        cur.expect("]")
        break
    if any(len(r) != len(rows[0]) for r in rows):
        from .errors import ParseError
        raise ParseError("ragged matrix literal", line, col)
    return Matrix(rows)


def parse_matrix(text: str, dim: int, names: Sequence[str] | None = None) -> Matrix:
    cur = Cursor(text)
    m = read_matrix(cur, dim, names)
    cur.skip()
    if not cur.eof():
        raise cur.error(f"unexpected {cur.peek()!r}", "end of input")
    return m
