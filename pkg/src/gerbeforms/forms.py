"""Lie-algebra valued polynomial differential forms on one coordinate chart.

A :class:`LieForm` of degree ``n`` is a sum ``sum_I X_I dx_I`` over strictly
increasing index tuples ``I`` with matrix coefficients ``X_I``.  The value
side tag says whether the matrices live in ``Lie(H)`` (``"H"``) or in
``Lie(A)`` (``"A"``); pairings check the tags and dispatch to the crossed
module action where the sides differ.

Degree-0 objects are group elements (:class:`~gerbeforms.groups.GroupMap`),
never forms, so every degree-0 operation takes a ``GroupMap``.

Sign conventions:

* ``[X dx_I, Y dx_J] = [X, Y] dx_I ^ dx_J``, so ``1/2 [w, w]`` for a
  1-form is ``sum_{a<b} [X_a, X_b] dx_a ^ dx_b``;
* ``d0(g) = g^-1 dg`` and ``d0_tilde(g) = dg g^-1``;
* ``d1(w) = dw + 1/2 [w, w]`` and ``d1_tilde(w) = dw - 1/2 [w, w]``;
* twisting by an A-side 1-form ``m`` adds ``[m, w]`` in every degree.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Iterator, Mapping, Sequence

from ._text import Cursor
from .crossed import CrossedModuleInstance
from .errors import ShapeError
from .groups import GroupMap, matrix_dim, zero_matrix
from .matrix import Matrix, format_matrix, read_matrix
from .poly import default_names, format_poly, Poly

HALF = Fraction(1, 2)
SIDES = ("H", "A")

Index = tuple[int, ...]


def merge_indices(first: Index, second: Index) -> tuple[int, Index]:
    """Sign and sorted union of ``dx_first ^ dx_second``; sign 0 on overlap."""
    if set(first) & set(second):
        return 0, ()
    seq = first + second
    inversions = sum(1 for a in first for b in second if a > b)
    return (-1) ** inversions, tuple(sorted(seq))


class LieForm:
    """Immutable matrix-valued n-form with polynomial coefficients, ``n >= 1``."""

    __slots__ = ("degree", "dim", "side", "size", "coeffs")

    def __init__(self, degree: int, dim: int, side: str, size: int,
                 coeffs: Mapping[Index, Matrix] | None = None):
        if degree < 1:
            raise ShapeError("forms have degree >= 1; degree 0 is a GroupMap")
        if side not in SIDES:
            raise ShapeError(f"value side must be H or A, got {side!r}")
        clean: dict[Index, Matrix] = {}
        for idx, x in (coeffs or {}).items():
            idx = tuple(idx)
            if len(idx) != degree or any(a >= b for a, b in zip(idx, idx[1:])):
                raise ShapeError(f"index {idx} is not strictly increasing of length {degree}")
            if not all(1 <= a <= dim for a in idx):
                raise ShapeError(f"index {idx} outside chart dimension {dim}")
            if x.shape != (size, size):
                raise ShapeError(f"coefficient of shape {x.shape}, expected {size}x{size}")
            if matrix_dim(x) != dim:
                raise ShapeError("coefficient ring dimension differs from chart dimension")
            if not x.is_zero():
                clean[idx] = x
        object.__setattr__(self, "degree", degree)
        object.__setattr__(self, "dim", dim)
        object.__setattr__(self, "side", side)
        object.__setattr__(self, "size", size)
        object.__setattr__(self, "coeffs", clean)

    def __setattr__(self, name, value):
        raise AttributeError("LieForm is immutable")

    @classmethod
    def zero(cls, degree: int, dim: int, side: str, size: int) -> LieForm:
        return cls(degree, dim, side, size)

    @classmethod
    def from_terms(cls, terms: Mapping[Index, Matrix], degree: int, side: str = "H") -> LieForm:
        x = next(iter(terms.values()))
        return cls(degree, matrix_dim(x), side, x.size, terms)

    def like(self, coeffs: Mapping[Index, Matrix], degree: int | None = None,
             side: str | None = None, size: int | None = None) -> LieForm:
        return LieForm(self.degree if degree is None else degree, self.dim,
                       side or self.side, size or self.size, coeffs)

    def __getitem__(self, idx: Index) -> Matrix:
        x = self.coeffs.get(tuple(idx))
        return x if x is not None else zero_matrix(self.size, self.dim)

    def __iter__(self) -> Iterator[tuple[Index, Matrix]]:
        return iter(sorted(self.coeffs.items()))

    def is_zero(self) -> bool:
        return not self.coeffs

    def map(self, f: Callable[[Matrix], Matrix], side: str | None = None,
            size: int | None = None) -> LieForm:
        return self.like({i: f(x) for i, x in self.coeffs.items()}, side=side, size=size)

    def _check_compatible(self, other: LieForm) -> None:
        if not isinstance(other, LieForm):
            raise ShapeError(f"expected a LieForm, got {type(other).__name__}")
        if (self.degree, self.dim, self.side, self.size) != (other.degree, other.dim, other.side, other.size):
            raise ShapeError(
                f"cannot add deg {self.degree} side {self.side} to deg {other.degree} side {other.side}")

    def __add__(self, other: LieForm) -> LieForm:
        self._check_compatible(other)
        out = dict(self.coeffs)
        for i, x in other.coeffs.items():
            out[i] = out[i] + x if i in out else x
        return self.like(out)

    def __neg__(self) -> LieForm:
        return self.map(lambda x: -x)

    def __sub__(self, other: LieForm) -> LieForm:
        return self + (-other)

    def __mul__(self, scalar) -> LieForm:
        if isinstance(scalar, LieForm):
            return NotImplemented
        return self.map(lambda x: x * scalar)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, LieForm):
            return NotImplemented
        return ((self.degree, self.dim, self.side, self.size, self.coeffs)
                == (other.degree, other.dim, other.side, other.size, other.coeffs))

    def __hash__(self) -> int:
        return hash((self.degree, self.side, frozenset(self.coeffs.items())))

    def leading_term_str(self, names: Sequence[str] | None = None) -> str | None:
        for idx, x in self:
            for i, row in enumerate(x.rows):
                for j, p in enumerate(row):
                    if not p.is_zero():
                        exp, c = p.leading_term()
                        mono = format_poly(Poly(p.dim, {exp: c}), names)
                        return f"dx{idx} [{i + 1},{j + 1}] {mono}"
        return None

    def to_str(self, names: Sequence[str] | None = None) -> str:
        return format_form(self, names)

    def __str__(self) -> str:
        return self.to_str()

    def __repr__(self) -> str:
        return f"LieForm({self})"


# -- pairings ---------------------------------------------------------------

def _pair(a: LieForm, b: LieForm, op: Callable[[Matrix, Matrix], Matrix], side: str,
          size: int) -> LieForm:
    if a.dim != b.dim:
        raise ShapeError(f"chart dimensions differ: {a.dim} vs {b.dim}")
    out: dict[Index, Matrix] = {}
    for i, x in a.coeffs.items():
        for j, y in b.coeffs.items():
            sign, k = merge_indices(i, j)
            if not sign:
                continue
            z = op(x, y)
            if sign < 0:
                z = -z
            out[k] = out[k] + z if k in out else z
    return LieForm(a.degree + b.degree, a.dim, side, size, out)


def lie_bracket(a: LieForm, b: LieForm) -> LieForm:
    """Graded bracket of two forms with values on the same side."""
    if a.side != b.side or a.size != b.size:
        raise ShapeError(f"bracket needs equal value sides, got {a.side} and {b.side}")
    return _pair(a, b, Matrix.commutator, a.side, a.size)


def act_bracket(cm: CrossedModuleInstance, u: LieForm, g: LieForm) -> LieForm:
    """``[u, g]`` for an A-side form ``u`` and an H-side form ``g``."""
    if u.side != "A" or g.side != "H":
        raise ShapeError("act_bracket pairs an A-side form with an H-side form")
    return _pair(u, g, cm.lie_act, "H", g.size)


def act_bracket0(cm: CrossedModuleInstance, u: LieForm, g: GroupMap) -> LieForm:
    """``[u, g]`` for an A-side form and an H-valued group element."""
    if u.side != "A":
        raise ShapeError("act_bracket0 needs an A-side form")
    return LieForm(u.degree, u.dim, "H", g.size,
                   {i: cm.bracket0(x, g) for i, x in u.coeffs.items()})


def group_bracket(cm: CrossedModuleInstance, g: GroupMap, w: LieForm) -> LieForm:
    """``[g, w] = g(w) - w`` with ``g`` acting through the boundary."""
    return apply_aut(cm, cm.boundary(g), w) - w


def bracket(a, b, cm: CrossedModuleInstance | None = None) -> LieForm:
    """The graded bracket, dispatched on degrees and value sides.

    Supports form/form on either side combination, and a group element
    paired with a form on either position.
    """
    if isinstance(a, GroupMap):
        if b.side == "A":
            return -act_bracket0(_need(cm), b, a)
        return group_bracket(_need(cm), a, b)
    if isinstance(b, GroupMap):
        if a.side != "A":
            raise ShapeError("a group element pairs on the right only with an A-side form")
        return act_bracket0(_need(cm), a, b)
    if a.side == b.side:
        return lie_bracket(a, b)
    if a.side == "A":
        return act_bracket(_need(cm), a, b)
    # [g, u] = -[Y, U-action] dx_g ^ dx_u
    cm = _need(cm)
    return _pair(a, b, lambda y, u: -cm.lie_act(u, y), "H", a.size)


def _need(cm: CrossedModuleInstance | None) -> CrossedModuleInstance:
    if cm is None:
        raise ShapeError("mixed-side pairing needs a crossed module instance")
    return cm


def boundary(cm: CrossedModuleInstance, w: LieForm) -> LieForm:
    """``i(w)``: push an H-side form to the A side."""
    if w.side != "H":
        raise ShapeError("boundary applies to H-side forms")
    return LieForm(w.degree, w.dim, "A", cm.a_size,
                   {i: cm.boundary_lie(x) for i, x in w.coeffs.items()})


# -- actions ----------------------------------------------------------------

def adjoint(g: GroupMap, w: LieForm, right: bool = False) -> LieForm:
    """Left adjoint action ``g w g^-1``, or the right one ``g^-1 w g``."""
    if g.size != w.size:
        raise ShapeError(f"group size {g.size} does not match form size {w.size}")
    if right:
        return w.map(lambda x: g.inv @ x @ g.mat)
    return w.map(g.conj)


def gauge_term(g: GroupMap) -> dict[Index, Matrix]:
    """Coefficients of ``g d(g^-1)``."""
    out = {}
    for a in range(1, g.dim + 1):
        x = g.mat @ g.inv.map(lambda p: p.diff(a))
        if not x.is_zero():
            out[(a,)] = x
    return out


def twisted_conjugate(g: GroupMap, w: LieForm) -> LieForm:
    """``g* w = g w g^-1 + g d(g^-1)`` for a 1-form ``w``."""
    if w.degree != 1:
        raise ShapeError("twisted conjugation applies to 1-forms")
    return adjoint(g, w) + w.like(gauge_term(g))


def apply_aut(cm: CrossedModuleInstance, r: GroupMap, w: LieForm) -> LieForm:
    """Action of an A-valued element: through the crossed module on the H side,
    by conjugation on the A side."""
    if r.size != cm.a_size:
        raise ShapeError(f"automorphism of size {r.size}, instance expects {cm.a_size}")
    if w.side == "H":
        return w.map(lambda x: cm.act_lie(r, x))
    return adjoint(r, w)


def aut_twisted_conjugate(r: GroupMap, m: LieForm) -> LieForm:
    """``r* m`` for an A-side connection 1-form."""
    if m.side != "A":
        raise ShapeError("twisted conjugation by an automorphism acts on A-side forms")
    return twisted_conjugate(r, m)


# -- differentials ------------------------------------------------------------

def exterior_derivative(w: LieForm) -> LieForm:
    """Plain ``d`` on coefficients, ``d(X dx_I) = sum_a dX/dx_a dx_a ^ dx_I``."""
    out: dict[Index, Matrix] = {}
    for idx, x in w.coeffs.items():
        for a in range(1, w.dim + 1):
            if a in idx:
                continue
            dx = x.map(lambda p: p.diff(a))
            if dx.is_zero():
                continue
            sign, k = merge_indices((a,), idx)
            if sign < 0:
                dx = -dx
            out[k] = out[k] + dx if k in out else dx
    return w.like(out, degree=w.degree + 1)


def d(w: LieForm) -> LieForm:
    """The differential on forms of degree ``n >= 2`` (no quadratic term)."""
    if w.degree < 2:
        raise ShapeError("d applies to degree >= 2; use d1 or d0 below that")
    return exterior_derivative(w)


def _group_derivative(g: GroupMap, left: bool) -> dict[Index, Matrix]:
    out = {}
    for a in range(1, g.dim + 1):
        dg = g.mat.map(lambda p: p.diff(a))
        if dg.is_zero():
            continue
        out[(a,)] = g.inv @ dg if left else dg @ g.inv
    return out


def d0(g: GroupMap, side: str = "H") -> LieForm:
    """``g^-1 dg``."""
    return LieForm(1, g.dim, side, g.size, _group_derivative(g, left=True))


def d0_tilde(g: GroupMap, side: str = "H") -> LieForm:
    """``dg g^-1``."""
    return LieForm(1, g.dim, side, g.size, _group_derivative(g, left=False))


def _check_degree(w: LieForm, n: int) -> None:
    if not isinstance(w, LieForm) or w.degree != n:
        raise ShapeError(f"expected a {n}-form")


def d1(w: LieForm) -> LieForm:
    _check_degree(w, 1)
    return exterior_derivative(w) + lie_bracket(w, w) * HALF


def d1_tilde(w: LieForm) -> LieForm:
    _check_degree(w, 1)
    return exterior_derivative(w) - lie_bracket(w, w) * HALF


def differential(w, tilde: bool = False):
    """Untwisted differential in the degree of ``w`` (a GroupMap means degree 0)."""
    if isinstance(w, GroupMap):
        return d0_tilde(w) if tilde else d0(w)
    if w.degree == 1:
        return d1_tilde(w) if tilde else d1(w)
    return d(w)


def _check_twist(m: LieForm) -> None:
    if not isinstance(m, LieForm) or m.degree != 1 or m.side != "A":
        raise ShapeError("the twisting form m must be an A-side 1-form")


def d0_m_tilde(cm: CrossedModuleInstance, g: GroupMap, m: LieForm) -> LieForm:
    """``D_m g g^-1 = dg g^-1 + [m, g]``."""
    _check_twist(m)
    return d0_tilde(g) + act_bracket0(cm, m, g)


def d0_m(cm: CrossedModuleInstance, g: GroupMap, m: LieForm) -> LieForm:
    """``g^-1 D_m g = g^-1 (dg g^-1 + [m, g]) g``."""
    return adjoint(g, d0_m_tilde(cm, g, m), right=True)


def dn_m(cm: CrossedModuleInstance, w, m: LieForm, tilde: bool = False):
    """Twisted differential ``d^n_m w = d^n w + [m, w]`` in the degree of ``w``.

    ``w`` may be a GroupMap (degree 0) or a form on either side; on the A side
    ``[m, w]`` is the ordinary bracket.
    """
    _check_twist(m)
    if isinstance(w, GroupMap):
        return d0_m_tilde(cm, w, m) if tilde else d0_m(cm, w, m)
    if tilde and w.degree != 1:
        raise ShapeError("the tilde variant exists in degrees 0 and 1 only")
    return differential(w, tilde) + bracket(m, w, cm)


def d1_m(cm: CrossedModuleInstance, w: LieForm, m: LieForm) -> LieForm:
    _check_degree(w, 1)
    return dn_m(cm, w, m)


def d1_m_tilde(cm: CrossedModuleInstance, w: LieForm, m: LieForm) -> LieForm:
    _check_degree(w, 1)
    return dn_m(cm, w, m, tilde=True)


def covariant(w: LieForm, conn: LieForm) -> LieForm:
    """``d w + [conn, w]`` for a same-side connection 1-form (degree of ``w`` >= 2)."""
    return d(w) + lie_bracket(conn, w)


# -- literal syntax ---------------------------------------------------------------

def format_form(w: LieForm, names: Sequence[str] | None = None) -> str:
    """``deg=2 side=H {(1,2): [[0, x2], [0, 0]]}``."""
    body = ", ".join(
        "(" + ",".join(map(str, idx)) + "): " + format_matrix(x, names) for idx, x in w)
    return f"deg={w.degree} side={w.side} {{{body}}}"


def read_form(cur: Cursor, dim: int, sizes: Mapping[str, int] | int,
              names: Sequence[str] | None = None) -> LieForm:
    """Read a form literal; ``sizes`` maps each side to its matrix size."""
    cur.skip()
    line, col = cur.line, cur.col
    for key in ("deg", "="):
        cur.skip()
        cur.expect(key)
    cur.skip()
    degree = cur.read_int()
    cur.skip()
    cur.expect("side")
    cur.skip()
    cur.expect("=")
    cur.skip()
    side = cur.peek()
    if side not in SIDES:
        raise cur.error(f"unexpected {side or 'end of input'!r}", "'H'", "'A'")
    cur.accept(side)
    size = sizes if isinstance(sizes, int) else sizes[side]
    cur.skip()
    cur.expect("{")
    coeffs: dict[Index, Matrix] = {}
    cur.skip()
    if not cur.accept("}"):
        while True:
            cur.skip()
            iline, icol = cur.line, cur.col
            cur.expect("(")
            idx = []
            while True:
                cur.skip()
                idx.append(cur.read_int())
                cur.skip()
                if cur.accept(","):
                    continue
                cur.expect(")")
                break
            cur.skip()
            cur.expect(":")
            x = read_matrix(cur, dim, names)
            key = tuple(idx)
            if key in coeffs:
                raise _parse_error(f"duplicate index {key}", iline, icol)
            coeffs[key] = x
            cur.skip()
            if cur.accept(","):
                continue
            cur.expect("}")
            break
    try:
        return LieForm(degree, dim, side, size, coeffs)
    except ShapeError as exc:
        raise _parse_error(str(exc), line, col) from None


def _parse_error(message: str, line: int, col: int):
    from .errors import ParseError
    return ParseError(message, line, col)


def parse_form(text: str, dim: int, sizes: Mapping[str, int] | int,
               names: Sequence[str] | None = None) -> LieForm:
    cur = Cursor(text)
    w = read_form(cur, dim, sizes, names)
    cur.skip()
    if not cur.eof():
        raise cur.error(f"unexpected {cur.peek()!r}", "end of input")
    return w


def unit_form(idx: Index, i: int, j: int, size: int, dim: int, coeff: Poly | int = 1,
              side: str = "H") -> LieForm:
    """``coeff E_ij dx_idx``, a convenience for examples and tests."""
    return LieForm(len(idx), dim, side, size, {tuple(idx): Matrix.unit(i, j, size, dim, coeff)})


__all__ = [
    "LieForm", "merge_indices", "lie_bracket", "act_bracket", "act_bracket0", "group_bracket",
    "bracket", "boundary", "adjoint", "twisted_conjugate", "aut_twisted_conjugate", "apply_aut",
    "gauge_term", "exterior_derivative", "d", "d0", "d0_tilde", "d1", "d1_tilde", "differential",
    "d0_m", "d0_m_tilde", "dn_m", "d1_m", "d1_m_tilde", "covariant", "format_form", "read_form",
    "parse_form", "unit_form", "default_names",
]
