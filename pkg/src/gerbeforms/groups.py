"""Group-valued polynomial functions with an explicitly stored inverse."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import ShapeError
from .matrix import Matrix
from .poly import Poly


def identity_matrix(k: int, dim: int) -> Matrix:
    return Matrix.identity(k, Poly.one(dim))


def zero_matrix(k: int, dim: int) -> Matrix:
    return Matrix.zeros(k, Poly.zero(dim))


def matrix_dim(m: Matrix) -> int:
    return m[0, 0].dim


@dataclass(frozen=True, eq=False)
class GroupMap:
    """A k-by-k invertible polynomial matrix together with its inverse.

    Inverses are never computed by division: whoever builds a ``GroupMap``
    supplies ``inv`` and the constructor verifies ``mat @ inv == I``.
    """

    mat: Matrix
    inv: Matrix

    def __post_init__(self):
        if self.mat.shape != self.inv.shape or self.mat.nrows != self.mat.ncols:
            raise ShapeError(f"group element shapes {self.mat.shape} / {self.inv.shape}")
        if self.mat @ self.inv != identity_matrix(self.size, self.dim):
            raise ShapeError("stored inverse does not satisfy mat * inv = I")

    @classmethod
    def identity(cls, k: int, dim: int) -> GroupMap:
        e = identity_matrix(k, dim)
        return cls._trusted(e, e)

    @classmethod
    def _trusted(cls, mat: Matrix, inv: Matrix) -> GroupMap:
        g = object.__new__(cls)
        object.__setattr__(g, "mat", mat)
        object.__setattr__(g, "inv", inv)
        return g

    @classmethod
    def unipotent(cls, nilpotent: Matrix) -> GroupMap:
        """``I + N`` for nilpotent ``N``; the inverse is the finite series sum (-N)^j."""
        k = nilpotent.size
        dim = matrix_dim(nilpotent)
        eye = identity_matrix(k, dim)
        inv = eye
        term = eye
        for _ in range(k):
            term = term @ (-nilpotent)
            if term.is_zero():
                break
            inv = inv + term
        return cls(eye + nilpotent, inv)

    @property
    def size(self) -> int:
        return self.mat.nrows

    @property
    def dim(self) -> int:
        return matrix_dim(self.mat)

    def __mul__(self, other: GroupMap) -> GroupMap:
        if not isinstance(other, GroupMap):
            return NotImplemented
        if other.size != self.size:
            raise ShapeError(f"group size mismatch: {self.size} vs {other.size}")
        return GroupMap._trusted(self.mat @ other.mat, other.inv @ self.inv)

    def inverse(self) -> GroupMap:
        return GroupMap._trusted(self.inv, self.mat)

    def eval_at(self, point: Sequence) -> list[list[Fraction]]:
        return [[x.eval_at(point) for x in row] for row in self.mat.rows]

    def conj(self, x: Matrix) -> Matrix:
        """``g x g^-1``."""
        return self.mat @ x @ self.inv

    def is_identity(self) -> bool:
        return self.mat == identity_matrix(self.size, self.dim)

    def __eq__(self, other) -> bool:
        if not isinstance(other, GroupMap):
            return NotImplemented
        return self.mat == other.mat

    def __hash__(self) -> int:
        return hash(self.mat)

    def __repr__(self) -> str:
        return f"GroupMap({self.mat})"


def group_ops(g: GroupMap, h: GroupMap | None = None, op: str = "mul", point=None):
    """Dispatch ``mul``, ``inv`` or ``eval_at`` on group maps."""
    if op == "mul":
        if h is None:
            raise ShapeError("mul needs two operands")
        return g * h
    if op == "inv":
        return g.inverse()
    if op == "eval_at":
        return g.eval_at(point)
    raise ValueError(f"unknown group operation {op!r}")
