"""Gerbe data on a cover with one global chart, its equations and its transport.

Every cochain is stored on all ordered index tuples, repeated indices
included, with indices running over ``1..N``.  Normalization on repeated
indices (``lambda_ii = 1``, ``g_iij = g_ijj = 1``, ``theta_ii = 1``) is part
of the data model.

Checkers return a :class:`~gerbeforms.report.Report` with one record per
equation and index tuple; equation ids are the labels listed in
:data:`EQUATION_IDS`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from . import forms as F
from .crossed import CrossedModuleInstance
from .errors import CheckRefused, RejectedInputError, ShapeError
from .forms import LieForm, bracket
from .groups import GroupMap
from .report import Report
from .sampling import random_cm_form, rng_for

EQUATION_IDS = {
    "coc1": "lambda_ij lambda_jk = i(g_ijk) lambda_ik",
    "coc2": "lambda_ij(g_jkl) g_ijl = g_ijk g_ikl",
    "normalization": "lambda_ii = 1, g_iij = g_ijj = 1, theta_ii = 1",
    "cocep13clas0": "lambda_ij* m_j = m_i - i(gamma_ij)",
    "cocep5clas1": "delta^1_lambda(gamma)_ijk = D_{m_i} g_ijk g_ijk^-1",
    "ifi": "nu_i = d1 m_i - i(B_i)",
    "bij1a": "delta_ij = lambda_ij(B_j) - B_i - d1_{m_i}(-gamma_ij)",
    "defom": "omega_i = d2_{m_i}(B_i)",
    "cockap1": "lambda_ij(nu_j) = nu_i - i(delta_ij)",
    "cockap2": "delta^1_lambda(delta)_ijk = [nu_i, g_ijk]",
    "relnufi": "d3_{m_i}(omega_i) = [nu_i, B_i]",
    "ificonj": "d2_{m_i}(nu_i) + i(omega_i) = 0",
    "comoioj1": "lambda_ij(omega_j) + [lambda_ij(nu_j), gamma_ij] = omega_i + d2_{m_i}(delta_ij)",
    "comd1": "d1_{m_i} delta^1_lambda(-gamma) = delta^1_lambda d1_m(-gamma)",
    "cech-defect": "delta^1_lambda delta^0_lambda(B)_ijk = [g_ijk, B_i]",
    "cob1": "lambda'_ij = i(theta_ij) r_i lambda_ij r_j^-1",
    "cob2": "g'_ijk theta_ik = lambda'_ij(theta_jk) theta_ij r_i(g_ijk)",
    "mi": "m'_i = r_i* m_i + i(e_i)",
    "eiteij4a": "(gamma' - theta r(gamma)) + (lambda'(e_j) - theta e_i) = D_{m'_i} theta theta^-1",
    "bbprime": "B'_i = r_i(B_i) - d1_{m'_i}(-e_i) - n_i",
    "ni1": "nu'_i = r_i(nu_i) + i(n_i)",
    "niri": "(delta' - theta r(delta)) + (lambda'(n_j) - theta n_i) = [nu'_i, theta_ij]",
    "coboun-om1": "omega'_i = r_i(omega_i) + [r_i(nu_i), e_i] - d2_{m'_i}(n_i)",
    "coboun-om1a": "omega'_i = r_i(omega_i) + [nu'_i, e_i] - d2_{r_i* m_i}(n_i)",
    "simp": "omega'_i = omega_i + d2_{m_i}(alpha_i) - [nu'_i, E_i]",
    "g1-cocycle": "g_ij g_jk = g_ik",
    "con:local": "omega_j = omega_i^{g_ij} + g_ij^-1 d g_ij",
    "kappa-gluing": "kappa_j = kappa_i^{g_ij}",
    "bianchiclas": "d kappa_i + [omega_i, kappa_i] = 0",
}


def pairs(N: int) -> list[tuple[int, int]]:
    return list(product(range(1, N + 1), repeat=2))


def triples(N: int) -> list[tuple[int, int, int]]:
    return list(product(range(1, N + 1), repeat=3))


def quadruples(N: int) -> list[tuple[int, ...]]:
    return list(product(range(1, N + 1), repeat=4))


@dataclass(frozen=True)
class Cover:
    N: int
    dim: int

    def __post_init__(self):
        if self.N < 3:
            raise RejectedInputError(f"a cover needs N >= 3 charts, got {self.N}")
        if self.dim < 1:
            raise RejectedInputError("chart dimension must be positive")


@dataclass
class GerbeCocycle:
    lam: dict[tuple[int, int], GroupMap]
    g: dict[tuple[int, int, int], GroupMap]


@dataclass
class ConnectionData:
    m: dict[int, LieForm]
    gamma: dict[tuple[int, int], LieForm]


@dataclass
class CurvingData:
    B: dict[int, LieForm]


@dataclass
class DerivedCurving:
    nu: dict[int, LieForm]
    delta: dict[tuple[int, int], LieForm]
    omega3: dict[int, LieForm]


@dataclass
class CoboundaryData:
    r: dict[int, GroupMap]
    theta: dict[tuple[int, int], GroupMap]
    e: dict[int, LieForm] = field(default_factory=dict)
    n: dict[int, LieForm] = field(default_factory=dict)


@dataclass
class BundleData:
    g1: dict[tuple[int, int], GroupMap]
    omega1: dict[int, LieForm]


@dataclass
class GerbeData:
    """Everything known about one gerbe description on one cover."""

    cm: CrossedModuleInstance
    cover: Cover
    cocycle: GerbeCocycle | None = None
    connection: ConnectionData | None = None
    curving: CurvingData | None = None
    derived: DerivedCurving | None = None


# -- Cech differentials -----------------------------------------------------

def lambda_ijk(c: GerbeCocycle, i: int, j: int, k: int) -> GroupMap:
    return c.lam[i, j] * c.lam[j, k] * c.lam[i, k].inverse()


def cech_delta(cm: CrossedModuleInstance, level: int, lam: dict, forms: dict, N: int) -> dict:
    """Twisted Cech differential of an indexed family of forms.

    Level 0 sends ``f_i`` to ``lambda_ij(f_j) - f_i``; level 1 sends ``f_ij``
    to ``f_ij + lambda_ij(f_jk) - lambda_ijk(f_ik)``.
    """
    def check(idx):
        if any(not 1 <= a <= N for a in idx):
            raise ShapeError(f"index {idx} outside the cover 1..{N}")

    for key in forms:
        check(key if isinstance(key, tuple) else (key,))
    if level == 0:
        return {(i, j): F.apply_aut(cm, lam[i, j], forms[j]) - forms[i] for i, j in pairs(N)}
    if level == 1:
        out = {}
        for i, j, k in triples(N):
            ljk = lam[i, j] * lam[j, k] * lam[i, k].inverse()
            out[i, j, k] = (forms[i, j] + F.apply_aut(cm, lam[i, j], forms[j, k])
                            - F.apply_aut(cm, ljk, forms[i, k]))
        return out
    raise ShapeError(f"Cech level must be 0 or 1, got {level}")


# -- checks -----------------------------------------------------------------

def _group_residual(a: GroupMap, b: GroupMap):
    return a.mat - b.mat


def check_normalization(cm: CrossedModuleInstance, c: GerbeCocycle, N: int,
                        theta: dict | None = None) -> Report:
    report = Report("normalization")
    for i in range(1, N + 1):
        report.check("normalization", ("lambda", i, i), _group_residual(
            c.lam[i, i], GroupMap.identity(cm.a_size, c.lam[i, i].dim)))
        if theta is not None:
            report.check("normalization", ("theta", i, i), _group_residual(
                theta[i, i], GroupMap.identity(cm.h_size, theta[i, i].dim)))
        for j in range(1, N + 1):
            for key in ((i, i, j), (i, j, j)):
                report.check("normalization", ("g",) + key, _group_residual(
                    c.g[key], GroupMap.identity(cm.h_size, c.g[key].dim)))
    return report


def check_cocycle(cm: CrossedModuleInstance, c: GerbeCocycle, N: int) -> Report:
    report = Report("gerbe cocycle")
    for i, j, k in triples(N):
        lhs = c.lam[i, j] * c.lam[j, k]
        rhs = cm.boundary(c.g[i, j, k]) * c.lam[i, k]
        report.check("coc1", (i, j, k), _group_residual(lhs, rhs))
    for i, j, k, l in quadruples(N):
        lhs = cm.act(c.lam[i, j], c.g[j, k, l]) * c.g[i, j, l]
        rhs = c.g[i, j, k] * c.g[i, k, l]
        report.check("coc2", (i, j, k, l), _group_residual(lhs, rhs))
    return report


def check_connection(cm: CrossedModuleInstance, c: GerbeCocycle, conn: ConnectionData,
                     N: int) -> Report:
    report = Report("connection")
    for i, j in pairs(N):
        lhs = F.twisted_conjugate(c.lam[i, j], conn.m[j])
        report.check("cocep13clas0", (i, j),
                     lhs - conn.m[i] + F.boundary(cm, conn.gamma[i, j]))
    dg = cech_delta(cm, 1, c.lam, conn.gamma, N)
    for i, j, k in triples(N):
        report.check("cocep5clas1", (i, j, k),
                     dg[i, j, k] - F.d0_m_tilde(cm, c.g[i, j, k], conn.m[i]))
    return report


def derive_curving(cm: CrossedModuleInstance, c: GerbeCocycle, conn: ConnectionData,
                   curving: CurvingData, N: int, check: bool = True) -> DerivedCurving:
    """Fake curvature, its gluing defect and the 3-curvature from a curving."""
    if check:
        report = check_connection(cm, c, conn, N)
        if not report.passed:
            first = report.first_failure()
            raise CheckRefused(
                f"connection check failed at {first.equation} {first.index}: {first.leading}",
                report)
    m, B = conn.m, curving.B
    nu = {i: F.d1(m[i]) - F.boundary(cm, B[i]) for i in range(1, N + 1)}
    delta = {(i, j): F.apply_aut(cm, c.lam[i, j], B[j]) - B[i] - F.d1_m(cm, -conn.gamma[i, j], m[i])
             for i, j in pairs(N)}
    omega3 = {i: F.dn_m(cm, B[i], m[i]) for i in range(1, N + 1)}
    return DerivedCurving(nu, delta, omega3)


def check_curving(cm: CrossedModuleInstance, c: GerbeCocycle, conn: ConnectionData,
                  dc: DerivedCurving, N: int, curving: CurvingData | None = None) -> Report:
    """Gluing laws of the derived curving; with ``curving`` also its defining formulas."""
    report = Report("curving")
    m = conn.m
    if curving is not None:
        ref = derive_curving(cm, c, conn, curving, N, check=False)
        for i in range(1, N + 1):
            report.check("ifi", (i,), dc.nu[i] - ref.nu[i])
        for i, j in pairs(N):
            report.check("bij1a", (i, j), dc.delta[i, j] - ref.delta[i, j])
        for i in range(1, N + 1):
            report.check("defom", (i,), dc.omega3[i] - ref.omega3[i])
    for i, j in pairs(N):
        report.check("cockap1", (i, j), F.apply_aut(cm, c.lam[i, j], dc.nu[j]) - dc.nu[i]
                     + F.boundary(cm, dc.delta[i, j]))
    dd = cech_delta(cm, 1, c.lam, dc.delta, N)
    for i, j, k in triples(N):
        report.check("cockap2", (i, j, k), dd[i, j, k] - bracket(dc.nu[i], c.g[i, j, k], cm))
    if curving is not None:
        for i in range(1, N + 1):
            report.check("relnufi", (i,), F.dn_m(cm, dc.omega3[i], m[i])
                         - bracket(dc.nu[i], curving.B[i], cm))
    for i in range(1, N + 1):
        report.check("ificonj", (i,), F.dn_m(cm, dc.nu[i], m[i]) + F.boundary(cm, dc.omega3[i]))
    for i, j in pairs(N):
        lam = c.lam[i, j]
        lhs = F.apply_aut(cm, lam, dc.omega3[j]) + bracket(F.apply_aut(cm, lam, dc.nu[j]),
                                                           conn.gamma[i, j], cm)
        rhs = dc.omega3[i] + F.dn_m(cm, dc.delta[i, j], m[i])
        report.check("comoioj1", (i, j), lhs - rhs)
    return report


def verify_comd1(cm: CrossedModuleInstance, c: GerbeCocycle, conn: ConnectionData,
                 N: int) -> Report:
    report = Report("comd1")
    m = conn.m
    gt = {key: -value for key, value in conn.gamma.items()}
    dg = cech_delta(cm, 1, c.lam, gt, N)
    d1g = {(i, j): F.d1_m(cm, gt[i, j], m[i]) for i, j in pairs(N)}
    for i, j, k in triples(N):
        lhs = F.d1_m(cm, dg[i, j, k], m[i])
        rhs = (d1g[i, j] + F.apply_aut(cm, c.lam[i, j], d1g[j, k])
               - F.apply_aut(cm, lambda_ijk(c, i, j, k), d1g[i, k]))
        report.check("comd1", (i, j, k), lhs - rhs)
    return report


def check_cech_defect(cm: CrossedModuleInstance, c: GerbeCocycle, B: dict, N: int) -> Report:
    report = Report("cech defect")
    dd = cech_delta(cm, 1, c.lam, cech_delta(cm, 0, c.lam, B, N), N)
    for i, j, k in triples(N):
        report.check("cech-defect", (i, j, k), dd[i, j, k] - bracket(c.g[i, j, k], B[i], cm))
    return report


def check_all(data: GerbeData, lemmas: bool = True) -> Report:
    """Every applicable check on a gerbe description.

    ``lemmas=False`` skips the commutation lemma (comd1), whose left side is
    the costliest computation once coefficients grow large.
    """
    cm, N = data.cm, data.cover.N
    report = Report("gerbe")
    c = data.cocycle
    if c is None:
        return report
    report.merge(check_normalization(cm, c, N))
    report.merge(check_cocycle(cm, c, N))
    if data.connection is None:
        return report
    report.merge(check_connection(cm, c, data.connection, N))
    if lemmas:
        report.merge(verify_comd1(cm, c, data.connection, N))
    dc = data.derived
    if dc is None and data.curving is not None:
        dc = derive_curving(cm, c, data.connection, data.curving, N, check=False)
    if dc is not None:
        report.merge(check_curving(cm, c, data.connection, dc, N, data.curving))
    return report


# -- coboundaries -------------------------------------------------------------

def apply_gerbe_coboundary(cm: CrossedModuleInstance, cb: CoboundaryData, c: GerbeCocycle,
                           N: int) -> GerbeCocycle:
    r, th = cb.r, cb.theta
    lam = {(i, j): cm.boundary(th[i, j]) * r[i] * c.lam[i, j] * r[j].inverse() for i, j in pairs(N)}
    g = {}
    for i, j, k in triples(N):
        g[i, j, k] = (cm.act(lam[i, j], th[j, k]) * th[i, j] * cm.act(r[i], c.g[i, j, k])
                      * th[i, k].inverse())
    return GerbeCocycle(lam, g)


def apply_connection_coboundary(cm: CrossedModuleInstance, cb: CoboundaryData,
                                primed: GerbeCocycle, conn: ConnectionData, N: int) -> ConnectionData:
    """Transport ``(m, gamma)``; ``gamma'`` solves the transport relation for gamma'."""
    m = {i: F.twisted_conjugate(cb.r[i], conn.m[i]) + F.boundary(cm, cb.e[i])
         for i in range(1, N + 1)}
    gamma = {}
    for i, j in pairs(N):
        th = cb.theta[i, j]
        gamma[i, j] = (F.adjoint(th, F.apply_aut(cm, cb.r[i], conn.gamma[i, j]))
                       + F.adjoint(th, cb.e[i]) - F.apply_aut(cm, primed.lam[i, j], cb.e[j])
                       + F.d0_m_tilde(cm, th, m[i]))
    return ConnectionData(m, gamma)


def apply_curving_coboundary(cm: CrossedModuleInstance, cb: CoboundaryData,
                             primed_conn: ConnectionData, curving: CurvingData, N: int) -> CurvingData:
    return CurvingData({i: F.apply_aut(cm, cb.r[i], curving.B[i])
                        - F.d1_m(cm, -cb.e[i], primed_conn.m[i]) - cb.n[i]
                        for i in range(1, N + 1)})


def transport(data: GerbeData, cb: CoboundaryData) -> GerbeData:
    """Push every layer present in ``data`` along the coboundary ``cb``."""
    cm, N = data.cm, data.cover.N
    c2 = apply_gerbe_coboundary(cm, cb, data.cocycle, N)
    out = GerbeData(cm, data.cover, c2)
    if data.connection is not None:
        out.connection = apply_connection_coboundary(cm, cb, c2, data.connection, N)
        if data.curving is not None:
            out.curving = apply_curving_coboundary(cm, cb, out.connection, data.curving, N)
            out.derived = derive_curving(cm, c2, out.connection, out.curving, N, check=False)
    return out


def check_coboundary_consistency(cm: CrossedModuleInstance, cb: CoboundaryData,
                                 original: GerbeData, primed: GerbeData) -> Report:
    """Transport laws between a description and its image under ``cb``."""
    N = original.cover.N
    report = Report("coboundary consistency")
    c, c2 = original.cocycle, primed.cocycle
    for i, j in pairs(N):
        rhs = cm.boundary(cb.theta[i, j]) * cb.r[i] * c.lam[i, j] * cb.r[j].inverse()
        report.check("cob1", (i, j), _group_residual(c2.lam[i, j], rhs))
    for i, j, k in triples(N):
        lhs = c2.g[i, j, k] * cb.theta[i, k]
        rhs = (cm.act(c2.lam[i, j], cb.theta[j, k]) * cb.theta[i, j]
               * cm.act(cb.r[i], c.g[i, j, k]))
        report.check("cob2", (i, j, k), _group_residual(lhs, rhs))
    conn, conn2 = original.connection, primed.connection
    if conn is None or conn2 is None:
        return report
    r_star = {i: F.twisted_conjugate(cb.r[i], conn.m[i]) for i in range(1, N + 1)}
    for i in range(1, N + 1):
        report.check("mi", (i,), conn2.m[i] - r_star[i] - F.boundary(cm, cb.e[i]))
    for i, j in pairs(N):
        th = cb.theta[i, j]
        lhs = ((conn2.gamma[i, j] - F.adjoint(th, F.apply_aut(cm, cb.r[i], conn.gamma[i, j])))
               + (F.apply_aut(cm, c2.lam[i, j], cb.e[j]) - F.adjoint(th, cb.e[i])))
        report.check("eiteij4a", (i, j), lhs - F.d0_m_tilde(cm, th, conn2.m[i]))
    if original.curving is None or primed.curving is None:
        return report
    B, B2 = original.curving.B, primed.curving.B
    for i in range(1, N + 1):
        rhs = F.apply_aut(cm, cb.r[i], B[i]) - F.d1_m(cm, -cb.e[i], conn2.m[i]) - cb.n[i]
        report.check("bbprime", (i,), B2[i] - rhs)
    dc = derive_curving(cm, c, conn, original.curving, N, check=False)
    dc2 = derive_curving(cm, c2, conn2, primed.curving, N, check=False)
    for i in range(1, N + 1):
        r_nu = F.apply_aut(cm, cb.r[i], dc.nu[i])
        report.check("ni1", (i,), dc2.nu[i] - r_nu - F.boundary(cm, cb.n[i]))
    for i, j in pairs(N):
        th = cb.theta[i, j]
        # theta conjugates r_i(delta_ij) exactly as it conjugates n_i
        lhs = ((dc2.delta[i, j] - F.adjoint(th, F.apply_aut(cm, cb.r[i], dc.delta[i, j])))
               + (F.apply_aut(cm, c2.lam[i, j], cb.n[j]) - F.adjoint(th, cb.n[i])))
        report.check("niri", (i, j), lhs - bracket(dc2.nu[i], th, cm))
    for i in range(1, N + 1):
        r_om = F.apply_aut(cm, cb.r[i], dc.omega3[i])
        r_nu = F.apply_aut(cm, cb.r[i], dc.nu[i])
        om1 = r_om + bracket(r_nu, cb.e[i], cm) - F.dn_m(cm, cb.n[i], conn2.m[i])
        om1a = r_om + bracket(dc2.nu[i], cb.e[i], cm) - F.dn_m(cm, cb.n[i], r_star[i])
        report.check("coboun-om1", (i,), dc2.omega3[i] - om1)
        report.check("coboun-om1a", (i,), dc2.omega3[i] - om1a)
    return report


def identity_coboundary(cm: CrossedModuleInstance, N: int, dim: int) -> CoboundaryData:
    r = {i: GroupMap.identity(cm.a_size, dim) for i in range(1, N + 1)}
    theta = {key: GroupMap.identity(cm.h_size, dim) for key in pairs(N)}
    e = {i: LieForm.zero(1, dim, "H", cm.h_size) for i in range(1, N + 1)}
    n = {i: LieForm.zero(2, dim, "H", cm.h_size) for i in range(1, N + 1)}
    return CoboundaryData(r, theta, e, n)


def _require_identity(cb: CoboundaryData) -> None:
    for i, r in cb.r.items():
        if not r.is_identity():
            raise RejectedInputError(f"r_{i} must be the identity for the reduction check")
    for key, th in cb.theta.items():
        if not th.is_identity():
            raise RejectedInputError(f"theta_{key} must be the identity for the reduction check")


def remark_check(data: GerbeData, cb: CoboundaryData) -> Report:
    """Reduction of the 3-curvature transport when ``r = 1`` and ``theta = 1``.

    With ``E_i = -e_i`` and ``alpha_i = -n_i`` the transported 3-curvature
    must equal ``omega_i + d2_{m_i}(alpha_i) - [nu'_i, E_i]``.
    """
    _require_identity(cb)
    cm, N = data.cm, data.cover.N
    if data.connection is None or data.curving is None:
        raise RejectedInputError("the reduction check needs a connection and a curving")
    primed = transport(data, cb)
    dc = derive_curving(cm, data.cocycle, data.connection, data.curving, N, check=False)
    report = Report("reduction")
    for i in range(1, N + 1):
        E, alpha = -cb.e[i], -cb.n[i]
        m = data.connection.m[i]
        expected = dc.omega3[i] + F.dn_m(cm, alpha, m) - bracket(primed.derived.nu[i], E, cm)
        report.check("simp", (i,), primed.derived.omega3[i] - expected)
    return report


# -- bundles ------------------------------------------------------------------

def bundle_curvature(b: BundleData) -> dict[int, LieForm]:
    return {i: F.d1(w) for i, w in b.omega1.items()}


def bundle_check(b: BundleData, N: int) -> Report:
    report = Report("bundle")
    g, w = b.g1, b.omega1
    for i, j, k in triples(N):
        report.check("g1-cocycle", (i, j, k), _group_residual(g[i, j] * g[j, k], g[i, k]))
    kappa = bundle_curvature(b)
    for i, j in pairs(N):
        report.check("con:local", (i, j), w[j] - F.adjoint(g[i, j], w[i], right=True) - F.d0(g[i, j]))
    for i, j in pairs(N):
        report.check("kappa-gluing", (i, j), kappa[j] - F.adjoint(g[i, j], kappa[i], right=True))
    for i in range(1, N + 1):
        report.check("bianchiclas", (i,), F.covariant(kappa[i], w[i]))
    return report


def generate_bundle(cm: CrossedModuleInstance, seed: int, N: int, dim: int, degree: int) -> BundleData:
    """Gauge transport of one global connection by a seeded 0-cochain ``h_i``."""
    Cover(N, dim)
    rng = rng_for(seed, "bundle")
    h = {i: cm.sample_h(rng_for(seed, "bundle", "h", i), dim, degree) for i in range(1, N + 1)}
    w = random_cm_form(rng, cm, 1, dim, degree)
    g1 = {(i, j): h[i].inverse() * h[j] for i, j in pairs(N)}
    omega1 = {i: F.twisted_conjugate(h[i].inverse(), w) for i in range(1, N + 1)}
    return BundleData(g1, omega1)


# -- generator ----------------------------------------------------------------

def trivial_data(cm: CrossedModuleInstance, cover: Cover, m: LieForm, B: LieForm) -> GerbeData:
    N, dim = cover.N, cover.dim
    lam = {key: GroupMap.identity(cm.a_size, dim) for key in pairs(N)}
    g = {key: GroupMap.identity(cm.h_size, dim) for key in triples(N)}
    conn = ConnectionData({i: m for i in range(1, N + 1)},
                          {key: LieForm.zero(1, dim, "H", cm.h_size) for key in pairs(N)})
    curving = CurvingData({i: B for i in range(1, N + 1)})
    data = GerbeData(cm, cover, GerbeCocycle(lam, g), conn, curving)
    data.derived = derive_curving(cm, data.cocycle, conn, curving, N, check=False)
    return data


def random_coboundary(cm: CrossedModuleInstance, seed: int, N: int, dim: int, degree: int,
                      label: str = "coboundary") -> CoboundaryData:
    """Seeded coboundary with unipotent-product ``r_i``, ``theta_ij`` and ``theta_ii = 1``."""
    r = {i: cm.sample_a(rng_for(seed, label, "r", i), dim, degree) for i in range(1, N + 1)}
    theta = {}
    for i, j in pairs(N):
        theta[i, j] = (GroupMap.identity(cm.h_size, dim) if i == j
                       else cm.sample_h(rng_for(seed, label, "theta", i, j), dim, degree))
    e = {i: random_cm_form(rng_for(seed, label, "e", i), cm, 1, dim, degree)
         for i in range(1, N + 1)}
    n = {i: random_cm_form(rng_for(seed, label, "n", i), cm, 2, dim, degree)
         for i in range(1, N + 1)}
    return CoboundaryData(r, theta, e, n)


def reduced_coboundary(cm: CrossedModuleInstance, seed: int, N: int, dim: int,
                       degree: int) -> CoboundaryData:
    """``r = 1``, ``theta = 1`` with seeded ``e_i`` and ``n_i``, as in the reduction check."""
    cb = random_coboundary(cm, seed, N, dim, degree, "reduced")
    unit = identity_coboundary(cm, N, dim)
    return CoboundaryData(unit.r, unit.theta, cb.e, cb.n)


def generate_exact(cm: CrossedModuleInstance, seed: int, N: int = 3, dim: int = 2,
                   degree: int = 1, identity: bool = False) -> tuple[GerbeData, CoboundaryData]:
    """Exact nontrivial gerbe data: the trivial description pushed by a seeded coboundary.

    Returns the transported description together with the coboundary used.
    """
    cover = Cover(N, dim)
    m = random_cm_form(rng_for(seed, "base", "m"), cm, 1, dim, degree, "A")
    B = random_cm_form(rng_for(seed, "base", "B"), cm, 2, dim, degree)
    base = trivial_data(cm, cover, m, B)
    cb = identity_coboundary(cm, N, dim) if identity else random_coboundary(cm, seed, N, dim, degree)
    return transport(base, cb), cb

