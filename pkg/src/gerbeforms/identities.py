"""Seeded identity suites: classical form identities and combinatorial equivalence.

Each trial draws fresh forms and group elements from its own stream and
records one residual per identity; every identity is stated so that its
residual must be exactly zero.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations

from . import forms as F
from . import simplicial as S
from .crossed import CrossedModuleInstance, inner
from .forms import bracket
from .matrix import Matrix
from .poly import Poly
from .report import Record, Report
from .sampling import random_cm_form, rng_for

FORMS_IDS = (
    "grcom", "jac", "jac1", "jac3", "defdn1", "d0d1", "defd0d1a", "minom", "d1add", "d1add-a",
    "addm", "dndn1", "dndn1a", "falsebianchi", "def:bianchiclas", "funct:d1", "funct:dnm",
    "funct:dnm1", "leibniz", "comp:i-bra", "eq:grcom1", "crosshomprop", "compbra", "defdo",
    "def:bra-a",
)


@dataclass(frozen=True)
class SuiteParams:
    seed: int = 0
    trials: int = 10
    dim: int = 3
    size: int = 3
    degree: int = 2

    def as_dict(self) -> dict:
        return {"trials": self.trials, "dim": self.dim, "size": self.size, "degree": self.degree}


def _graded_sign(p: int, q: int) -> int:
    return (-1) ** (p * q + 1)


def forms_trial(cm: CrossedModuleInstance, report: Report, seed: int, t: int, dim: int,
                degree: int) -> None:
    """Run every forms identity once on samples drawn for trial ``t``."""
    rng = rng_for(seed, "forms", t)
    form = lambda n, side="H": random_cm_form(rng, cm, n, dim, degree, side)  # noqa: E731
    f, g, h = form(1), form(1), form(1)
    big = form(2)
    m, u1 = form(1, "A"), form(1, "A")
    u2 = form(2, "A") if dim >= 2 else None
    grp, grp2 = cm.sample_h(rng, dim, degree), cm.sample_h(rng, dim, degree)
    aut = cm.sample_a(rng, dim, degree)
    chk = report.check

    # graded commutativity and Jacobi
    for tag, (a, b) in {"11": (f, g), "12": (f, big), "21": (big, f)}.items():
        chk("grcom", (t, tag), bracket(a, b) - bracket(b, a) * _graded_sign(a.degree, b.degree))
    chk("grcom", (t, "even"), bracket(big, big))
    chk("jac", (t,), bracket(f, bracket(g, h)) - bracket(bracket(f, g), h)
        - bracket(g, bracket(f, h)) * (-1) ** (f.degree * g.degree))
    chk("jac1", (t,), bracket(f, bracket(f, f)))
    chk("jac3", (t,), bracket(f, bracket(g, g) * F.HALF) - bracket(bracket(f, g), g))

    # untwisted differentials
    chk("defdn1", (t, 1), F.exterior_derivative(F.exterior_derivative(f)))
    chk("defdn1", (t, 2), F.exterior_derivative(F.d(big)))
    chk("d0d1", (t,), F.d1(F.d0(grp)))
    chk("defd0d1a", (t,), F.d1_tilde(F.d0_tilde(grp)))
    chk("defdo", (t,), F.d0(grp * grp2) - F.adjoint(grp2, F.d0(grp), right=True) - F.d0(grp2))
    chk("minom", (t, "sum"), F.d1(f + g) - F.d1(f) - F.d1(g) - bracket(f, g))
    chk("minom", (t, "neg"), F.d1(-f) + F.d1(f) - bracket(f, f))

    # twisted differentials
    dm = F.d1(m)
    chk("d1add", (t,), F.d1_m(cm, f + g, m) - F.d1_m(cm, f, m) - F.d1_m(cm, g, m) - bracket(f, g))
    chk("d1add-a", (t,), F.d1_m(cm, -f, m) + F.d1_m(cm, f, m) - bracket(f, f))
    shifted = m + F.boundary(cm, g)
    chk("addm", (t, 1), F.dn_m(cm, f, shifted) - F.dn_m(cm, f, m) - bracket(g, f))
    chk("addm", (t, 2), F.dn_m(cm, big, shifted) - F.dn_m(cm, big, m) - bracket(g, big))
    chk("dndn1", (t,), F.dn_m(cm, F.dn_m(cm, big, m), m) - bracket(dm, big, cm))
    chk("dndn1a", (t, "d"), F.dn_m(cm, F.d0_m(cm, grp, m), m) - bracket(grp.inverse(), dm, cm))
    chk("dndn1a", (t, "tilde"),
        F.dn_m(cm, F.d0_m_tilde(cm, grp, m), m, tilde=True) - bracket(dm, grp, cm))
    d1f = F.d1_m(cm, f, m)
    chk("falsebianchi", (t,), F.dn_m(cm, d1f, m) - bracket(dm, f, cm) - bracket(d1f, f))
    chk("def:bianchiclas", (t,), F.covariant(F.d1(f), f))

    # functoriality
    chk("funct:d1", (t,), F.adjoint(grp, F.d1(f)) - F.d1(F.twisted_conjugate(grp, f)))
    m_star = F.twisted_conjugate(aut, m)
    for w in (f, big):
        lhs = F.apply_aut(cm, aut, F.dn_m(cm, w, m))
        uw = F.apply_aut(cm, aut, w)
        chk("funct:dnm", (t, w.degree), lhs - F.dn_m(cm, uw, m_star))
        rhs = (F.dn_m(cm, uw, m) + bracket(F.adjoint(aut, m) - m, uw, cm)
               + bracket(m.like(F.gauge_term(aut)), uw, cm))
        chk("funct:dnm1", (t, w.degree), lhs - rhs)

    # Leibniz: (1,1) with the plain exterior derivative, then i, j >= 2
    dd = F.exterior_derivative
    chk("leibniz", (t, 1, 1), dd(bracket(f, g)) - bracket(dd(f), g) + bracket(f, dd(g)))
    chk("leibniz", (t, 2, 2), dd(bracket(big, big)) - bracket(dd(big), big)
        - bracket(big, dd(big)))

    # mixed pairings
    chk("comp:i-bra", (t, "i"), F.boundary(cm, bracket(u1, f, cm)) - bracket(u1, F.boundary(cm, f)))
    chk("comp:i-bra", (t, "bra"), bracket(F.boundary(cm, f), g, cm) - bracket(f, g))
    if u2 is not None:
        chk("eq:grcom1", (t, 1, 2),
            bracket(f, u2, cm) - bracket(u2, f, cm) * _graded_sign(f.degree, u2.degree))
    chk("eq:grcom1", (t, 1, 1), bracket(f, u1, cm) - bracket(u1, f, cm) * _graded_sign(1, 1))
    chk("crosshomprop", (t,), bracket(grp.inverse(), u1, cm)
        - F.adjoint(grp, bracket(u1, grp, cm), right=True))
    chk("compbra", (t,), F.apply_aut(cm, aut, bracket(u1, f, cm))
        - bracket(F.apply_aut(cm, aut, u1), F.apply_aut(cm, aut, f), cm))
    chk("def:bra-a", (t,), bracket(u1, grp * grp2, cm) - bracket(u1, grp, cm)
        - F.adjoint(grp, bracket(u1, grp2, cm)))


def run_forms_suite(params: SuiteParams, cm: CrossedModuleInstance | None = None) -> Report:
    cm = cm or inner(params.size)
    report = Report("forms identities")
    for t in range(params.trials):
        forms_trial(cm, report, params.seed, t, params.dim, params.degree)
    return report


# -- combinatorial versus classical differentials ------------------------------

EQUIV_IDS = (
    "defd1comb", "defd1", "d1-tilde", "def:d1ma", "defdn", "def:dnma", "defdoa", "d0-tilde",
    "def:doma", "lift-extract", "def:nform", "perm", "def:dncomb",
)


@dataclass(frozen=True)
class EquivParams:
    seed: int = 0
    ones: int = 25
    twos: int = 10
    dim: int = 3
    size: int = 2
    degree: int = 2

    def as_dict(self) -> dict:
        return {"ones": self.ones, "twos": self.twos, "dim": self.dim, "size": self.size,
                "degree": self.degree}


def _degeneracy(report: Report, index: tuple, comb: S.CombForm) -> None:
    bad = S.check_degenerate(comb)
    lead = None if not bad else f"not identity on degeneracies {bad}"
    report.add(Record("def:nform", index, not bad, lead))


def _perm_law(report: Report, index: tuple, comb: S.CombForm) -> None:
    """Every permutation of the points acts by the inverse power of its signature."""
    value = comb.canonical()
    inverse = S.weil_inverse(value)
    for perm in permutations(range(comb.n + 1)):
        got = S.permuted(comb, perm).canonical()
        want = value if S.perm_sign(perm) > 0 else inverse
        report.check("perm", index + (perm,), got - want)


def worked_examples(report: Report) -> None:
    """The scalar ``x2 dx1`` and matrix ``E12 dx1 + E21 dx2`` examples, frozen."""
    scalar = F.LieForm(1, 2, "H", 1, {(1,): Matrix([[Poly.var(2, 2)]])})
    value = S.comb_d(S.lift(scalar)).canonical()
    key = ((1, 2), (1, 2))
    coeff = value[0, 0].coefficient(key) - Poly.const(-1, 2)
    report.check("defd1comb", ("scalar", "d1_1*d2_2"), coeff)
    report.check("defd1comb", ("scalar", "extract"),
                 S.extract(S.comb_d(S.lift(scalar))) - F.unit_form((1, 2), 1, 1, 1, 2, -1))
    w = F.unit_form((1,), 1, 2, 2, 2) + F.unit_form((2,), 2, 1, 2, 2)
    diag = F.unit_form((1, 2), 1, 1, 2, 2) - F.unit_form((1, 2), 2, 2, 2, 2)
    got = S.extract(S.comb_d(S.lift(w)))
    report.check("defd1comb", ("matrix", "frozen"), got - diag)
    report.check("defd1comb", ("matrix", "d1"), got - F.d1(w))


def equiv_one_form(cm: CrossedModuleInstance, report: Report, seed: int, t: int, dim: int,
                   degree: int) -> None:
    rng = rng_for(seed, "equiv", 1, t)
    w = random_cm_form(rng, cm, 1, dim, degree)
    m = random_cm_form(rng, cm, 1, dim, degree, "A")
    g = cm.sample_h(rng, dim, degree)
    lw, lm = S.lift(w), S.lift(m)
    idx = (1, t)
    report.check("lift-extract", idx, S.extract(lw) - w)
    _degeneracy(report, idx + ("lift",), lw)
    _perm_law(report, idx, lw)
    dw = S.comb_d(lw)
    _degeneracy(report, idx + ("d",), dw)
    report.check("defd1", idx, S.extract(dw, check=False) - F.d1(w))
    report.check("d1-tilde", idx, S.extract(S.comb_d(lw, tilde=True)) - F.d1_tilde(w))
    report.check("def:d1ma", idx, S.extract(S.comb_d(lw, lm, cm=cm)) - F.d1_m(cm, w, m))
    report.check("defdoa", idx, S.extract(S.comb_d0(g)) - F.d0(g))
    report.check("d0-tilde", idx, S.extract(S.comb_d0(g, tilde=True)) - F.d0_tilde(g))
    report.check("def:doma", idx, S.extract(S.comb_d0(g, twist=lm, cm=cm)) - F.d0_m(cm, g, m))


def equiv_two_form(cm: CrossedModuleInstance, report: Report, seed: int, t: int, dim: int,
                   degree: int) -> None:
    rng = rng_for(seed, "equiv", 2, t)
    w = random_cm_form(rng, cm, 2, dim, degree)
    m = random_cm_form(rng, cm, 1, dim, degree, "A")
    lw = S.lift(w)
    idx = (2, t)
    report.check("lift-extract", idx, S.extract(lw) - w)
    _degeneracy(report, idx + ("lift",), lw)
    _perm_law(report, idx, lw)
    dw = S.comb_d(lw)
    _degeneracy(report, idx + ("d",), dw)
    report.check("defdn", idx, S.extract(dw, check=False) - F.d(w))
    report.check("def:dnma", idx, S.extract(S.comb_d(lw, S.lift(m), cm=cm)) - F.dn_m(cm, w, m))
    # the Alexander-Spanier composite d(d w) is the identity on the nose
    eye = S.weil_identity(w.size, 4, dim)
    report.check("def:dncomb", idx, S.comb_d(dw).canonical() - eye)


def run_equiv_suite(params: EquivParams, cm: CrossedModuleInstance | None = None) -> Report:
    cm = cm or inner(params.size)
    report = Report("combinatorial equivalence")
    worked_examples(report)
    for t in range(params.ones):
        equiv_one_form(cm, report, params.seed, t, params.dim, params.degree)
    for t in range(params.twos):
        equiv_two_form(cm, report, params.seed, t, params.dim, params.degree)
    return report
