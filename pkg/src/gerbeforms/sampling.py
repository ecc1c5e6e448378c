"""Seeded random samples of polynomials, matrices, group elements and forms.

Every stream is a :class:`random.Random` seeded from a SHA-256 digest of the
root seed and a label path, so samples can be drawn independently per trial
or per cochain index and still be reproducible.
"""

from __future__ import annotations

import hashlib
import random
from fractions import Fraction
from itertools import product

from .groups import GroupMap, identity_matrix
from .matrix import Matrix
from .poly import Poly

COEFFS = [Fraction(c) for c in (1, -1, 2, -2, 3)] + [Fraction(1, 2), Fraction(-3, 2)]


def derive_seed(root: int, *labels) -> int:
    text = ":".join([str(root), *map(str, labels)])
    return int.from_bytes(hashlib.sha256(text.encode()).digest()[:8], "big")


def rng_for(root: int, *labels) -> random.Random:
    return random.Random(derive_seed(root, *labels))


def monomials(dim: int, degree: int) -> list[tuple[int, ...]]:
    return [e for e in product(range(degree + 1), repeat=dim) if sum(e) <= degree]


def random_poly(rng: random.Random, dim: int, degree: int, density: float = 0.4,
                constant: bool = True) -> Poly:
    terms = {}
    for exp in monomials(dim, degree):
        if not constant and sum(exp) == 0:
            continue
        if rng.random() < density:
            terms[exp] = rng.choice(COEFFS)
    return Poly(dim, terms)


def random_matrix(rng: random.Random, k: int, dim: int, degree: int, density: float = 0.4,
                  mask=None) -> Matrix:
    """Random polynomial matrix; ``mask(i, j)`` selects the entries allowed to be nonzero."""
    z = Poly.zero(dim)
    rows = []
    for i in range(k):
        row = []
        for j in range(k):
            if mask is None or mask(i, j):
                row.append(random_poly(rng, dim, degree, density))
            else:
                row.append(z)
        rows.append(row)
    return Matrix(rows)


def random_unipotent(rng: random.Random, k: int, dim: int, degree: int, lower: bool = False,
                     density: float = 0.4) -> GroupMap:
    mask = (lambda i, j: i > j) if lower else (lambda i, j: i < j)
    return GroupMap.unipotent(random_matrix(rng, k, dim, degree, density, mask))


def random_gl(rng: random.Random, k: int, dim: int, degree: int, density: float = 0.4) -> GroupMap:
    """Product of an upper and a lower unipotent matrix: generic, with polynomial inverse.

    Each factor gets entries of degree ``max(1, degree // 2)`` so the product
    stays within ``degree`` while its inverse stays small.
    """
    if k == 1:
        return GroupMap.identity(1, dim)
    half = max(1, degree // 2)
    upper = random_unipotent(rng, k, dim, half, False, density)
    lower = random_unipotent(rng, k, dim, half, True, density)
    return upper * lower


def identity(k: int, dim: int) -> GroupMap:
    return GroupMap(identity_matrix(k, dim), identity_matrix(k, dim))


def random_form(rng: random.Random, degree: int, dim: int, size: int, poly_degree: int,
                side: str = "H", density: float = 0.4, mask=None):
    """Random form with every increasing index tuple populated by a random matrix."""
    from itertools import combinations

    from .forms import LieForm

    coeffs = {idx: random_matrix(rng, size, dim, poly_degree, density, mask)
              for idx in combinations(range(1, dim + 1), degree)}
    return LieForm(degree, dim, side, size, coeffs)


def random_cm_form(rng: random.Random, cm, degree: int, dim: int, poly_degree: int,
                   side: str = "H"):
    """Random form valued in the Lie algebra of one side of a crossed module."""
    from itertools import combinations

    from .forms import LieForm

    sample = cm.sample_h_lie if side == "H" else cm.sample_a_lie
    coeffs = {idx: sample(rng, dim, poly_degree) for idx in combinations(range(1, dim + 1), degree)}
    return LieForm(degree, dim, side, cm.size(side), coeffs)
