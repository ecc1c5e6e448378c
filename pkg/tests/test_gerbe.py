from dataclasses import replace

import pytest
from hypothesis import given, settings, strategies as st

from gerbeforms import forms as F
from gerbeforms import gerbe as G
from gerbeforms.crossed import abelian, inner
from gerbeforms.errors import CheckRefused, RejectedInputError, ShapeError
from gerbeforms.forms import LieForm, unit_form
from gerbeforms.groups import GroupMap
from gerbeforms.matrix import Matrix
from gerbeforms.poly import Poly
from gerbeforms.sampling import random_cm_form, rng_for

CM = inner(2)
N, DIM = 3, 2
CLOSURE = ["coc1", "coc2", "cocep13clas0", "cocep5clas1", "cockap1", "cockap2", "comd1",
           "relnufi", "ificonj", "comoioj1"]


def e12(idx=(1,), dim=DIM):
    return unit_form(idx, 1, 2, 2, dim)


def zero(deg, side="H"):
    return LieForm.zero(deg, DIM, side, 2)


def trivial(m=None, B=None, cm=CM):
    m = m if m is not None else zero(1, "A")
    B = B if B is not None else zero(2)
    return G.trivial_data(cm, G.Cover(N, DIM), m, B)


def unipotent(coeff):
    return GroupMap.unipotent(Matrix.unit(1, 2, 2, DIM, coeff))


def failing(report, equation):
    return [r.index for r in report.failures() if r.equation == equation]


# -- cover and Cech differential ----------------------------------------------------

def test_cover_needs_three_charts():
    with pytest.raises(RejectedInputError):
        G.Cover(2, 2)
    with pytest.raises(RejectedInputError):
        G.generate_exact(CM, 0, N=2)


def test_cech_delta_trivial_twist():
    data = trivial()
    lam = data.cocycle.lam
    f = random_cm_form(rng_for(0, "f"), CM, 1, DIM, 1)
    assert all(v.is_zero() for v in G.cech_delta(CM, 0, lam, {i: f for i in (1, 2, 3)}, N).values())
    gam = {key: random_cm_form(rng_for(1, "gam", *key), CM, 1, DIM, 1) for key in G.pairs(N)}
    d1 = G.cech_delta(CM, 1, lam, gam, N)
    for i, j, k in G.triples(N):
        assert d1[i, j, k] == gam[i, j] + gam[j, k] - gam[i, k]


def test_cech_delta_rejects_bad_index():
    lam = trivial().cocycle.lam
    with pytest.raises(ShapeError):
        G.cech_delta(CM, 0, lam, {1: zero(2), 4: zero(2)}, N)
    with pytest.raises(ShapeError):
        G.cech_delta(CM, 2, lam, {}, N)


@pytest.mark.parametrize("seed", range(3))
def test_cech_defect(seed):
    data, _ = G.generate_exact(CM, seed)
    assert G.check_cech_defect(CM, data.cocycle, data.curving.B, N).passed


# -- trivial data and engineered failures ----------------------------------------------

def test_trivial_data_passes_everything():
    assert G.check_all(trivial()).passed


def test_corrupted_g_fails_coc1_at_its_triple():
    data = trivial()
    data.cocycle.g[1, 2, 3] = unipotent(Poly.var(1, DIM))
    report = G.check_cocycle(CM, data.cocycle, N)
    assert (1, 2, 3) in failing(report, "coc1")
    assert set(failing(report, "coc1")) == {(1, 2, 3)}


def test_perturbed_gamma_fails_cocep13clas0():
    data = trivial()
    data.connection.gamma[1, 2] = e12()
    report = G.check_connection(CM, data.cocycle, data.connection, N)
    assert failing(report, "cocep13clas0") == [(1, 2)]
    with pytest.raises(CheckRefused) as exc:
        G.derive_curving(CM, data.cocycle, data.connection, data.curving, N)
    assert "cocep13clas0" in str(exc.value) and exc.value.report is not None


def test_perturbed_gamma_is_seen_by_comd1():
    data, _ = G.generate_exact(CM, 1)
    gamma = dict(data.connection.gamma)
    gamma[1, 2] = gamma[1, 2] + unit_form((1,), 1, 2, 2, DIM, Poly.var(2, DIM))
    report = G.verify_comd1(CM, data.cocycle, replace(data.connection, gamma=gamma), N)
    assert not report.passed


def test_derived_curving_examples():
    # flat m and B = 0 give vanishing derived data
    flat = unit_form((1,), 1, 1, 2, DIM, 1, "A") - unit_form((1,), 2, 2, 2, DIM, 1, "A")
    dc = trivial(m=flat).derived
    assert all(w.is_zero() for part in (dc.nu, dc.delta, dc.omega3) for w in part.values())
    B = e12((1, 2))
    dc = trivial(B=B).derived
    assert all(dc.nu[i] == -F.boundary(CM, B) for i in (1, 2, 3))
    assert all(w.is_zero() for part in (dc.delta, dc.omega3) for w in part.values())


def test_zeroed_omega_fails_defom():
    data, _ = G.generate_exact(CM, 0, dim=3)
    i = next(i for i, w in data.derived.omega3.items() if not w.is_zero())
    data.derived.omega3[i] = LieForm.zero(3, 3, "H", 2)
    report = G.check_all(data)
    assert failing(report, "defom") == [(i,)]


# -- generator closure ------------------------------------------------------------------

@pytest.mark.parametrize("cm", [inner(2), inner(3), abelian()], ids=["INNER2", "INNER3", "ABELIAN"])
def test_generated_data_closes(cm):
    data, _ = G.generate_exact(cm, 4)
    report = G.check_all(data)
    assert report.passed
    assert set(CLOSURE) <= set(report.equations())


def test_generated_data_closes_in_three_dimensions():
    # with d = 2 the 4-form equations are vacuous; d = 3 exercises them
    data, _ = G.generate_exact(CM, 2, dim=3)
    report = G.check_all(data)
    assert report.passed
    assert any(not data.derived.omega3[i].is_zero() for i in (1, 2, 3))


def test_identity_coboundary_gives_trivial_data():
    data, cb = G.generate_exact(CM, 3, identity=True)
    assert all(g.is_identity() for g in data.cocycle.lam.values())
    assert all(g.is_identity() for g in data.cocycle.g.values())
    assert all(w.is_zero() for w in data.connection.gamma.values())


def test_seeds_differ():
    a, _ = G.generate_exact(CM, 0)
    b, _ = G.generate_exact(CM, 1)
    assert any(a.cocycle.lam[k] != b.cocycle.lam[k] for k in G.pairs(N))


# -- transport -----------------------------------------------------------------------------

def test_identity_transport_is_identity():
    data, _ = G.generate_exact(CM, 5)
    cb = G.identity_coboundary(CM, N, DIM)
    primed = G.transport(data, cb)
    assert primed.cocycle.lam == data.cocycle.lam and primed.cocycle.g == data.cocycle.g
    assert primed.connection.m == data.connection.m
    assert primed.connection.gamma == data.connection.gamma
    assert primed.curving.B == data.curving.B
    assert G.check_coboundary_consistency(CM, cb, data, primed).passed


def test_pure_e_shift():
    base = trivial()
    cb = G.identity_coboundary(CM, N, DIM)
    cb.e = {i: e12() for i in (1, 2, 3)}
    primed = G.transport(base, cb)
    assert all(primed.connection.m[i] == F.boundary(CM, e12()) for i in (1, 2, 3))
    assert all(w.is_zero() for w in primed.connection.gamma.values())


def test_pure_n_shift():
    base = trivial(B=random_cm_form(rng_for(0, "B"), CM, 2, DIM, 1))
    cb = G.identity_coboundary(CM, N, DIM)
    cb.n = {i: e12((1, 2)) for i in (1, 2, 3)}
    primed = G.transport(base, cb)
    assert all(primed.curving.B[i] == base.curving.B[i] - e12((1, 2)) for i in (1, 2, 3))


def test_trivial_cocycle_pushed_by_coboundary():
    cb = G.random_coboundary(CM, 7, N, DIM, 1)
    c2 = G.apply_gerbe_coboundary(CM, cb, trivial().cocycle, N)
    for i, j in G.pairs(N):
        assert c2.lam[i, j] == CM.boundary(cb.theta[i, j]) * cb.r[i] * cb.r[j].inverse()
    assert G.check_cocycle(CM, c2, N).passed


def compose(cm, first, second):
    """Coboundary equal to applying ``first`` then ``second``."""
    r = {i: second.r[i] * first.r[i] for i in first.r}
    theta = {k: second.theta[k] * cm.act(second.r[k[0]], first.theta[k]) for k in first.theta}
    e = {i: F.apply_aut(cm, second.r[i], first.e[i]) + second.e[i] for i in first.e}
    return G.CoboundaryData(r, theta, e, {})


@pytest.mark.parametrize("seed", range(2))
def test_successive_coboundaries_compose(seed):
    data, _ = G.generate_exact(CM, seed)
    data.curving = data.derived = None
    a = G.random_coboundary(CM, seed, N, DIM, 1, "a")
    b = G.random_coboundary(CM, seed, N, DIM, 1, "b")
    twice = G.transport(G.transport(data, a), b)
    once = G.transport(data, compose(CM, a, b))
    assert twice.cocycle.lam == once.cocycle.lam
    assert twice.cocycle.g == once.cocycle.g
    assert twice.connection.m == once.connection.m
    assert twice.connection.gamma == once.connection.gamma


@settings(max_examples=5)
@given(st.integers(0, 10_000))
def test_transport_closure(seed):
    data, _ = G.generate_exact(CM, seed)
    cb = G.random_coboundary(CM, seed, N, DIM, 1, "further")
    primed = G.transport(data, cb)
    assert G.check_all(primed).passed
    assert G.check_coboundary_consistency(CM, cb, data, primed).passed


@settings(max_examples=3)
@given(st.integers(0, 10_000))
def test_transport_consistency_in_three_dimensions(seed):
    # 3-forms are nonzero here, so coboun-om1 and coboun-om1a carry content
    data, _ = G.generate_exact(CM, seed, dim=3)
    cb = G.random_coboundary(CM, seed, N, 3, 1, "further")
    primed = G.transport(data, cb)
    report = G.check_coboundary_consistency(CM, cb, data, primed)
    assert report.passed
    assert {"ni1", "niri", "coboun-om1", "coboun-om1a"} <= set(report.equations())


def test_check_all_can_skip_the_lemma():
    data, _ = G.generate_exact(CM, 0)
    assert "comd1" in G.check_all(data).equations()
    assert "comd1" not in G.check_all(data, lemmas=False).equations()


def test_corrupted_n_fails_coboun_om1a():
    # n_i enters through d2(n_i), a 3-form, so this needs d = 3
    data, _ = G.generate_exact(CM, 0, dim=3)
    cb = G.random_coboundary(CM, 0, N, 3, 1, "further")
    primed = G.transport(data, cb)
    cb.n[2] = cb.n[2] + unit_form((1, 2), 1, 2, 2, 3, Poly.var(3, 3))
    report = G.check_coboundary_consistency(CM, cb, data, primed)
    assert (2,) in failing(report, "coboun-om1a")


# -- reduction check --------------------------------------------------------------------------

def test_remark_trivial_and_seeded():
    base = trivial(m=random_cm_form(rng_for(0, "m"), CM, 1, DIM, 1, "A"),
                   B=random_cm_form(rng_for(0, "B"), CM, 2, DIM, 1))
    assert G.remark_check(base, G.identity_coboundary(CM, N, DIM)).passed
    assert G.remark_check(base, G.reduced_coboundary(CM, 1, N, DIM, 1)).passed
    data, _ = G.generate_exact(CM, 2)
    assert G.remark_check(data, G.reduced_coboundary(CM, 2, N, DIM, 1)).passed


def test_remark_rejects_nontrivial_r():
    data, _ = G.generate_exact(CM, 0)
    with pytest.raises(RejectedInputError):
        G.remark_check(data, G.random_coboundary(CM, 0, N, DIM, 1))


# -- bundles ------------------------------------------------------------------------------------

def test_global_bundle():
    w = random_cm_form(rng_for(0, "w"), CM, 1, DIM, 2)
    b = G.BundleData({k: GroupMap.identity(2, DIM) for k in G.pairs(N)}, {i: w for i in (1, 2, 3)})
    assert G.bundle_check(b, N).passed
    assert all(k == F.d1(w) for k in G.bundle_curvature(b).values())


@pytest.mark.parametrize("seed", range(3))
def test_gauge_bundle(seed):
    assert G.bundle_check(G.generate_bundle(CM, seed, N, 3, 2), N).passed


def test_perturbed_bundle_fails_con_local():
    b = G.generate_bundle(CM, 0, N, DIM, 1)
    b.omega1[2] = b.omega1[2] + e12()
    report = G.bundle_check(b, N)
    assert (1, 2) in failing(report, "con:local")
    assert all(2 in idx for idx in failing(report, "con:local"))
