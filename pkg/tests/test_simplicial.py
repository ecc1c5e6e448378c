from itertools import permutations

import pytest
from hypothesis import given, strategies as st

from gerbeforms import forms as F
from gerbeforms import simplicial as S
from gerbeforms.crossed import abelian, inner
from gerbeforms.errors import MalformedFormError, ShapeError
from gerbeforms.forms import LieForm, unit_form
from gerbeforms.identities import EQUIV_IDS, EquivParams, run_equiv_suite
from gerbeforms.matrix import Matrix
from gerbeforms.poly import Poly
from gerbeforms.sampling import random_cm_form, rng_for
from gerbeforms.weil import WeilElement

CM = inner(2)
seeds = st.integers(0, 100_000)


def weil_matrix(rows, n, d):
    return Matrix([[WeilElement.const(v, n, d) if not isinstance(v, WeilElement) else v
                    for v in row] for row in rows])


def scalar_example():
    return LieForm(1, 2, "H", 1, {(1,): Matrix([[Poly.var(2, 2)]])})


def test_lift_zero_is_identity():
    F0 = S.lift(None, 2, 3, 2)
    assert F0.canonical() == S.weil_identity(2, 2, 3)


def test_lift_unit_example():
    w = unit_form((1,), 1, 2, 2, 2)
    d11 = WeilElement.generator(1, 1, 1, 2)
    want = S.weil_identity(2, 1, 2) + weil_matrix([[0, d11], [0, 0]], 1, 2)
    assert S.lift(w).canonical() == want
    assert S.extract(S.lift(w)) == w


def test_lift_scalar_example():
    d11 = WeilElement.generator(1, 1, 1, 2)
    x2 = Poly.var(2, 2)
    assert S.lift(scalar_example()).canonical() == weil_matrix([[1 + d11 * x2]], 1, 2)


def test_scalar_differential_coefficient():
    value = S.comb_d(S.lift(scalar_example())).canonical()
    d = [[WeilElement.generator(s, a, 2, 2) for a in (1, 2)] for s in (1, 2)]
    # d_{1,2} d_{2,1} = -d_{1,1} d_{2,2}
    assert value == weil_matrix([[1 + d[0][1] * d[1][0]]], 2, 2)
    assert value[0, 0].coefficient(((1, 2), (1, 2))) == Poly.const(-1, 2)
    assert S.extract(S.comb_d(S.lift(scalar_example()))) == unit_form((1, 2), 1, 1, 1, 2, -1)


def test_matrix_differential_example():
    w = unit_form((1,), 1, 2, 2, 2) + unit_form((2,), 2, 1, 2, 2)
    want = unit_form((1, 2), 1, 1, 2, 2) - unit_form((1, 2), 2, 2, 2, 2)
    got = S.extract(S.comb_d(S.lift(w)))
    assert got == want == F.d1(w)


def test_comb_d_of_zero():
    assert S.comb_d(S.lift(None, 1, 2, 2)).canonical() == S.weil_identity(2, 2, 2)


def test_malformed_form_rejected():
    double = S.CombForm(1, 2, 2, "H", lambda pts: S.weil_identity(2, 1, 2) * 2)
    assert S.check_degenerate(double) == [(1, 0)]
    with pytest.raises(MalformedFormError):
        S.extract(double)


def test_shape_errors():
    w = S.lift(random_cm_form(rng_for(0, "s"), CM, 2, 3, 1))
    m = S.lift(random_cm_form(rng_for(1, "s"), CM, 1, 3, 1, "A"))
    with pytest.raises(ShapeError):
        S.comb_d(w, tilde=True)
    with pytest.raises(ShapeError):
        S.comb_d(S.lift(None, 1, 3, 2), m, tilde=True)
    with pytest.raises(ShapeError):
        S.comb_d(w, w, cm=CM)
    with pytest.raises(ShapeError):
        w(*S.canonical_points(1, 3))
    with pytest.raises(ShapeError):
        S.permuted(w, [0, 0, 1])


@given(seeds, st.integers(1, 3))
def test_lift_extract_round_trip(seed, degree):
    w = random_cm_form(rng_for(seed, "rt"), CM, degree, 3, 2)
    lw = S.lift(w)
    assert S.check_degenerate(lw) == []
    assert S.extract(lw) == w


@given(seeds)
def test_one_form_equivalences(seed):
    rng = rng_for(seed, "eq1")
    w = random_cm_form(rng, CM, 1, 3, 2)
    m = random_cm_form(rng, CM, 1, 3, 2, "A")
    lw = S.lift(w)
    assert S.extract(S.comb_d(lw)) == F.d1(w)
    assert S.extract(S.comb_d(lw, tilde=True)) == F.d1_tilde(w)
    assert S.extract(S.comb_d(lw, S.lift(m), cm=CM)) == F.d1_m(CM, w, m)


@given(seeds)
def test_two_form_equivalences(seed):
    rng = rng_for(seed, "eq2")
    w = random_cm_form(rng, CM, 2, 3, 2)
    m = random_cm_form(rng, CM, 1, 3, 2, "A")
    lw = S.lift(w)
    assert S.extract(S.comb_d(lw)) == F.d(w)
    assert S.extract(S.comb_d(lw, S.lift(m), cm=CM)) == F.dn_m(CM, w, m)


@given(seeds)
def test_degree_zero_equivalences(seed):
    rng = rng_for(seed, "eq0")
    g = CM.sample_h(rng, 3, 2)
    m = random_cm_form(rng, CM, 1, 3, 2, "A")
    assert S.extract(S.comb_d0(g)) == F.d0(g)
    assert S.extract(S.comb_d0(g, tilde=True)) == F.d0_tilde(g)
    assert S.extract(S.comb_d0(g, twist=S.lift(m), cm=CM)) == F.d0_m(CM, g, m)


@given(seeds, st.integers(1, 2))
def test_permutation_law(seed, degree):
    lw = S.lift(random_cm_form(rng_for(seed, "perm"), CM, degree, 3, 2))
    value = lw.canonical()
    for perm in permutations(range(degree + 1)):
        got = S.permuted(lw, perm).canonical()
        want = value if S.perm_sign(perm) > 0 else S.weil_inverse(value)
        assert got == want


def test_differential_of_differential_is_identity():
    w = random_cm_form(rng_for(3, "dd"), CM, 2, 3, 2)
    dd = S.comb_d(S.comb_d(S.lift(w)))
    assert dd.canonical() == S.weil_identity(2, 4, 3)


def test_abelian_twist_is_trivial():
    cm = abelian()
    rng = rng_for(0, "ab")
    w = random_cm_form(rng, cm, 1, 3, 2)
    m = LieForm(1, 3, "A", 1, {(1,): Matrix([[Poly.var(2, 3)]])})
    assert S.extract(S.comb_d(S.lift(w), S.lift(m), cm=cm)) == F.d1_m(cm, w, m) == F.d1(w)


def test_unknown_instance_has_no_combinatorial_action():
    from dataclasses import replace
    other = replace(CM, name="OUTER")
    w = S.lift(random_cm_form(rng_for(0, "o"), CM, 1, 2, 1))
    m = S.lift(random_cm_form(rng_for(1, "o"), CM, 1, 2, 1, "A"))
    with pytest.raises(ShapeError):
        S.comb_d(w, m, cm=other)


def test_equivalence_suite_small():
    report = run_equiv_suite(EquivParams(seed=2, ones=2, twos=1))
    assert report.passed
    assert set(report.equations()) == set(EQUIV_IDS)


def test_equivalence_suite_abelian():
    assert run_equiv_suite(EquivParams(seed=2, ones=2, twos=1), abelian()).passed
