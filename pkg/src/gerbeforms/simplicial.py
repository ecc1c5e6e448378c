"""Combinatorial forms: group-valued functions on infinitesimal simplices.

A point of the infinitesimal ``N``-simplex is recorded by its displacement
from the symbolic base point ``x``: a tuple of ``d`` elements of the Weil
algebra ``W(N, d)``.  The canonical configuration is ``x_0 = x`` and
``x_s = x + delta_s``.  A :class:`CombForm` of degree ``n`` evaluates ``n + 1``
such points to a matrix over ``W(N, d)``.

``lift`` sends ``sum_I X_I dx_I`` to
``(x_0, ..., x_n) -> I + sum_I X_I(x_0) prod_k (x_k - x_0)_{I_k}``;
``extract`` reads the coefficient of ``delta_{1,a_1} ... delta_{n,a_n}``.
Neither carries a factorial: the scalar example ``x2 dx1`` pins the
convention (its differential has coefficient ``-1`` on
``delta_{1,1} delta_{2,2}``).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Callable, Sequence

from .crossed import CrossedModuleInstance
from .errors import MalformedFormError, ShapeError
from .forms import LieForm
from .groups import GroupMap
from .matrix import Matrix
from .poly import Poly
from .weil import WeilElement

Point = tuple[WeilElement, ...]
Evaluator = Callable[[Sequence[Point]], Matrix]


def canonical_points(n: int, d: int) -> list[Point]:
    """``x_0 = x`` and ``x_s = x + delta_s`` inside ``W(n, d)``."""
    zero = WeilElement.zero(n, d)
    pts = [tuple(zero for _ in range(d))]
    for s in range(1, n + 1):
        pts.append(tuple(WeilElement.generator(s, a, n, d) for a in range(1, d + 1)))
    return pts


def shift_poly(p: Poly, disp: Point) -> WeilElement:
    """``p(x + disp)`` as an element of the Weil algebra (exact Taylor expansion)."""
    w = disp[0]
    values = [WeilElement.const(Poly.var(a + 1, p.dim), w.n, w.d) + h for a, h in enumerate(disp)]
    return p.substitute(values, WeilElement.one(w.n, w.d))


def shift_matrix(x: Matrix, disp: Point) -> Matrix:
    w = disp[0]
    zero = WeilElement.zero(w.n, w.d)
    return Matrix([[zero if p.is_zero() else shift_poly(p, disp) for p in row] for row in x.rows])


def weil_identity(k: int, n: int, d: int) -> Matrix:
    return Matrix.identity(k, WeilElement.one(n, d))


def weil_inverse(x: Matrix) -> Matrix:
    """Inverse of ``I + N`` with nilpotent ``N`` (entries without constant Weil part)."""
    w = x[0, 0]
    eye = weil_identity(x.size, w.n, w.d)
    nil = x - eye
    if any(not e.constant().is_zero() for e in nil.entries()):
        raise ShapeError("only unipotent Weil matrices are inverted")
    inv, term = eye, eye
    for _ in range(w.n):
        term = term @ (-nil)
        if term.is_zero():
            break
        inv = inv + term
    return inv


def _weil_dims(points: Sequence[Point]) -> tuple[int, int]:
    w = points[0][0]
    return w.n, w.d


@dataclass(frozen=True)
class CombForm:
    """A combinatorial n-form given by an evaluator on ``n + 1`` points."""

    n: int
    d: int
    size: int
    side: str
    evaluator: Evaluator
    provenance: str = "composite"

    def __call__(self, *points: Point) -> Matrix:
        if len(points) != self.n + 1:
            raise ShapeError(f"a {self.n}-form takes {self.n + 1} points, got {len(points)}")
        return self.evaluator(points)

    def canonical(self) -> Matrix:
        return self(*canonical_points(self.n, self.d))


def lift(w: LieForm | None, n: int | None = None, d: int | None = None,
         size: int | None = None, side: str = "H") -> CombForm:
    """Combinatorial form of a Lie-valued form; ``None`` with shape data lifts 0."""
    if w is not None:
        n, d, size, side = w.degree, w.dim, w.size, w.side
        coeffs = list(w.coeffs.items())
    else:
        coeffs = []

    def evaluator(points: Sequence[Point]) -> Matrix:
        N, dd = _weil_dims(points)
        base = points[0]
        diffs = [tuple(p[a] - base[a] for a in range(dd)) for p in points[1:]]
        out = weil_identity(size, N, dd)
        for idx, x in coeffs:
            mono = WeilElement.one(N, dd)
            for k, a in enumerate(idx):
                mono = mono * diffs[k][a - 1]
                if mono.is_zero():
                    break
            if mono.is_zero():
                continue
            out = out + shift_matrix(x, base).map(lambda e: e * mono)
        return out

    return CombForm(n, d, size, side, evaluator, "lifted")


def check_degenerate(F: CombForm) -> list[tuple[int, int]]:
    """Degeneracies ``(i, j)`` on which ``F`` is not the identity (``j = 0``: slot i collapsed to x_0)."""
    value = F.canonical()
    eye = weil_identity(F.size, F.n, F.d)
    bad = []
    for i in range(1, F.n + 1):
        for j in range(0, F.n + 1):
            if i == j:
                continue
            if value.map(lambda e: e.degenerate(i, j)) != eye:
                bad.append((i, j))
    return bad


def extract(F: CombForm, check: bool = True) -> LieForm:
    """Lie-valued form of a normalized combinatorial form."""
    if check:
        bad = check_degenerate(F)
        if bad:
            raise MalformedFormError(f"not trivial on degenerate simplices {bad}")
    value = F.canonical()
    slots = tuple(range(1, F.n + 1))
    coeffs = {}
    for idx in combinations(range(1, F.d + 1), F.n):
        key = (slots, idx)
        coeffs[idx] = Matrix([[e.coefficient(key) for e in row] for row in value.rows])
    return LieForm(F.n, F.d, F.side, F.size, coeffs)


def _face(points: Sequence[Point], i: int) -> list[Point]:
    return [p for k, p in enumerate(points) if k != i]


def _weil_action(cm: CrossedModuleInstance | None) -> Callable[[Matrix, Matrix], Matrix]:
    """How an A-valued Weil matrix acts on an H-valued one."""
    if cm is None or cm.name == "INNER":
        return lambda a, h: a @ h @ weil_inverse(a)
    if cm.name == "ABELIAN":
        return lambda a, h: h
    raise ShapeError(f"no combinatorial action for instance {cm.name}")


def comb_d(F: CombForm, twist: CombForm | None = None, tilde: bool = False,
           cm: CrossedModuleInstance | None = None) -> CombForm:
    """Alexander-Spanier differential, optionally twisted by an A-valued 1-form."""
    if twist is not None:
        if tilde:
            raise ShapeError("the tilde differential has no combinatorial twisted variant here")
        if twist.n != 1 or twist.d != F.d:
            raise ShapeError("the twist must be a combinatorial 1-form on the same chart")
    if tilde and F.n != 1:
        raise ShapeError("the tilde differential is defined on 1-forms")
    act = _weil_action(cm) if twist is not None else None
    n = F.n

    def evaluator(points: Sequence[Point]) -> Matrix:
        if n == 1:
            x0, x1, x2 = points
            f01, f12, f20 = F(x0, x1), F(x1, x2), F(x2, x0)
            if tilde:
                return f20 @ f12 @ f01
            if twist is None:
                return f01 @ f12 @ f20
            m01, m12 = twist(x0, x1), twist(x1, x2)
            return f01 @ act(m01, f12) @ act(m01 @ m12, f20)
        faces = [F(*_face(points, i)) for i in range(n + 2)]
        first = faces[0]
        if twist is not None:
            first = act(twist(points[0], points[1]), first)
        out = first
        for i in range(1, n + 2):
            f = faces[i]
            out = out @ (weil_inverse(f) if i % 2 else f)
        return out

    return CombForm(n + 1, F.d, F.size, F.side, evaluator)


def comb_d0(g: GroupMap, tilde: bool = False, side: str = "H", twist: CombForm | None = None,
            cm: CrossedModuleInstance | None = None) -> CombForm:
    """``g(x_0)^-1 g(x_1)``, or ``g(x_1) g(x_0)^-1`` for the tilde variant.

    With ``twist`` the second factor is acted on: ``g(x_0)^-1 m(x_0, x_1)(g(x_1))``.
    """
    if twist is not None and tilde:
        raise ShapeError("the tilde differential has no combinatorial twisted variant here")
    act = _weil_action(cm) if twist is not None else None

    def evaluator(points: Sequence[Point]) -> Matrix:
        x0, x1 = points
        if tilde:
            return shift_matrix(g.mat, x1) @ shift_matrix(g.inv, x0)
        g1 = shift_matrix(g.mat, x1)
        if twist is not None:
            g1 = act(twist(x0, x1), g1)
        return shift_matrix(g.inv, x0) @ g1

    return CombForm(1, g.dim, g.size, side, evaluator)


def permuted(F: CombForm, perm: Sequence[int]) -> CombForm:
    """``(x_0, ..., x_n) -> F(x_perm[0], ..., x_perm[n])``."""
    if sorted(perm) != list(range(F.n + 1)):
        raise ShapeError(f"{perm} is not a permutation of 0..{F.n}")

    def evaluator(points: Sequence[Point]) -> Matrix:
        return F.evaluator([points[k] for k in perm])

    return CombForm(F.n, F.d, F.size, F.side, evaluator)


def perm_sign(perm: Sequence[int]) -> int:
    inv = sum(1 for i in range(len(perm)) for j in range(i + 1, len(perm)) if perm[i] > perm[j])
    return -1 if inv % 2 else 1
