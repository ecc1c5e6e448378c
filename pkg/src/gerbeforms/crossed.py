"""Matrix crossed modules ``i: H -> A`` with their Lie-level actions.

``H`` plays the role of the structure group ``G`` and ``A`` the role of
``Aut(G)``.  Both are realized as groups of polynomial matrices; ``A`` acts
on ``H``, on ``Lie(H)``, and infinitesimally through ``Lie(A)``.

Two instances ship:

* :func:`inner` -- ``H = A = GL_k``, action by conjugation, ``i`` the identity;
* :func:`abelian` -- ``H`` the commutative group of 2x2 matrices ``I + a E12``,
  ``A`` trivial (1x1), every action trivial.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable

from .groups import GroupMap, identity_matrix, matrix_dim, zero_matrix
from .matrix import Matrix
from .poly import Poly
from .report import Report
from . import sampling


@dataclass(frozen=True)
class CrossedModuleInstance:
    """A crossed module presented by callables on polynomial matrices.

    ``bracket0(U, h)`` is the pairing ``[u, h]`` of a ``Lie(A)`` element with
    a group element of ``H``; for ``inner`` it is ``(U h - h U) h^-1``.
    """

    name: str
    h_size: int
    a_size: int
    act: Callable[[GroupMap, GroupMap], GroupMap]
    act_lie: Callable[[GroupMap, Matrix], Matrix]
    lie_act: Callable[[Matrix, Matrix], Matrix]
    bracket0: Callable[[Matrix, GroupMap], Matrix]
    boundary: Callable[[GroupMap], GroupMap]
    boundary_lie: Callable[[Matrix], Matrix]
    sample_h: Callable[[random.Random, int, int], GroupMap]
    sample_a: Callable[[random.Random, int, int], GroupMap]
    sample_h_lie: Callable[[random.Random, int, int], Matrix]
    sample_a_lie: Callable[[random.Random, int, int], Matrix]

    def size(self, side: str) -> int:
        return self.h_size if side == "H" else self.a_size


def inner(k: int = 2) -> CrossedModuleInstance:
    """``GL_k`` acting on itself by conjugation, ``i = id``."""

    def act(a: GroupMap, h: GroupMap) -> GroupMap:
        return a * h * a.inverse()

    def act_lie(a: GroupMap, y: Matrix) -> Matrix:
        return a.conj(y)

    def lie_act(u: Matrix, y: Matrix) -> Matrix:
        return u @ y - y @ u

    def bracket0(u: Matrix, h: GroupMap) -> Matrix:
        return (u @ h.mat - h.mat @ u) @ h.inv

    return CrossedModuleInstance(
        name="INNER", h_size=k, a_size=k,
        act=act, act_lie=act_lie, lie_act=lie_act, bracket0=bracket0,
        boundary=lambda h: h, boundary_lie=lambda y: y,
        sample_h=lambda rng, dim, deg: sampling.random_gl(rng, k, dim, deg),
        sample_a=lambda rng, dim, deg: sampling.random_gl(rng, k, dim, deg),
        sample_h_lie=lambda rng, dim, deg: sampling.random_matrix(rng, k, dim, deg),
        sample_a_lie=lambda rng, dim, deg: sampling.random_matrix(rng, k, dim, deg),
    )


def abelian() -> CrossedModuleInstance:
    """Upper unipotent 2x2 matrices with the trivial group acting trivially."""
    upper = lambda i, j: (i, j) == (0, 1)  # noqa: E731

    def act(a: GroupMap, h: GroupMap) -> GroupMap:
        return h

    def act_lie(a: GroupMap, y: Matrix) -> Matrix:
        return y

    def lie_act(u: Matrix, y: Matrix) -> Matrix:
        return zero_matrix(2, matrix_dim(y))

    def bracket0(u: Matrix, h: GroupMap) -> Matrix:
        return zero_matrix(2, h.dim)

    return CrossedModuleInstance(
        name="ABELIAN", h_size=2, a_size=1,
        act=act, act_lie=act_lie, lie_act=lie_act, bracket0=bracket0,
        boundary=lambda h: GroupMap.identity(1, h.dim),
        boundary_lie=lambda y: zero_matrix(1, matrix_dim(y)),
        sample_h=lambda rng, dim, deg: GroupMap.unipotent(
            sampling.random_matrix(rng, 2, dim, deg, mask=upper)),
        sample_a=lambda rng, dim, deg: GroupMap.identity(1, dim),
        sample_h_lie=lambda rng, dim, deg: sampling.random_matrix(rng, 2, dim, deg, mask=upper),
        sample_a_lie=lambda rng, dim, deg: zero_matrix(1, dim),
    )


INSTANCES = {"INNER": inner, "ABELIAN": abelian}


def instance_by_name(name: str, size: int | None = None) -> CrossedModuleInstance:
    key = name.upper()
    if key == "INNER":
        return inner(size or 2)
    if key == "ABELIAN":
        return abelian()
    raise ValueError(f"unknown crossed module instance {name!r}")


def check_crossed_axioms(cm: CrossedModuleInstance, samples: int = 20, seed: int = 0,
                         dim: int = 2, degree: int = 2) -> Report:
    """Equivariance, Peiffer and derivation identities on seeded samples.

    Also checks the Lie-level shadows ``i(u.y) = [u, i(y)]`` and
    ``i(y).y' = [y, y']``.
    """
    report = Report(f"crossed module {cm.name}")
    for s in range(samples):
        rng = sampling.rng_for(seed, "axioms", s)
        a = cm.sample_a(rng, dim, degree)
        h = cm.sample_h(rng, dim, degree)
        h2 = cm.sample_h(rng, dim, degree)
        u = cm.sample_a_lie(rng, dim, degree)
        y1 = cm.sample_h_lie(rng, dim, degree)
        y2 = cm.sample_h_lie(rng, dim, degree)

        lhs = cm.boundary(cm.act(a, h)).mat
        rhs = (a * cm.boundary(h) * a.inverse()).mat
        report.check("equivariance", (s,), lhs - rhs)

        report.check("peiffer", (s,), cm.act(cm.boundary(h), h2).mat - (h * h2 * h.inverse()).mat)

        br = y1.commutator(y2)
        lhs = cm.lie_act(u, br)
        rhs = cm.lie_act(u, y1).commutator(y2) + y1.commutator(cm.lie_act(u, y2))
        report.check("derivation", (s,), lhs - rhs)

        report.check("comp:i-bra", (s, 1), cm.lie_act(cm.boundary_lie(y1), y2) - br)
        report.check("comp:i-bra", (s, 2),
                     cm.boundary_lie(cm.lie_act(u, y1)) - u.commutator(cm.boundary_lie(y1)))
    return report
