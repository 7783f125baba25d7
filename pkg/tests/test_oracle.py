import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bohr_rogosinski import oracle as o
from bohr_rogosinski.extremal import build_extremal_pair
from bohr_rogosinski.psi import PsiModel
from bohr_rogosinski.series import Series, derivative, evaluate
from bohr_rogosinski.solvers import ClassTag, RadiusProblem, solve
from bohr_rogosinski.weights import WeightSequence

CLASSICAL = PsiModel.classical()
T = 64


def at(s: Series, z: complex) -> complex:
    return evaluate(s, z, strict=True).value


# Schwarz functions and members


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**31), st.sampled_from(o.FAMILIES), st.booleans(), st.floats(0.05, 0.6), st.floats(0, 2 * math.pi))
def test_schwarz_functions_shrink(seed, fam, real, r, t):
    w = o.random_schwarz(seed, fam, T, real=real)
    z = r * np.exp(1j * t)
    assert w.omega.coeffs[0] == 0
    assert abs(at(w.omega, z)) <= r + 1e-12
    if real:
        assert w.omega.is_real()


def test_schwarz_constructors_validate():
    with pytest.raises(ValueError):
        o.schwarz_scalar(1.5)
    with pytest.raises(ValueError):
        o.schwarz_blaschke([0.1, 0.2, 0.3])
    with pytest.raises(ValueError):
        o.blaschke_factor(1.0)
    with pytest.raises(ValueError):
        o.random_schwarz(0, "nope")


def test_random_schwarz_is_deterministic():
    a = o.random_schwarz(5, o.BLASCHKE)
    b = o.random_schwarz(5, o.BLASCHKE)
    assert np.array_equal(a.omega.coeffs, b.omega.coeffs)


def test_blaschke_is_unimodular_on_circle_limit():
    w = o.schwarz_blaschke([0.3 + 0.2j], 400)
    z = 0.97 * np.exp(0.7j)
    expected = z * (z - (0.3 + 0.2j)) / (1 - np.conj(0.3 + 0.2j) * z)
    assert abs(at(w.omega, z) - expected) < 1e-10


@pytest.mark.parametrize("seed", range(4))
def test_starlike_member_relation(seed):
    psi = PsiModel.janowski(0.8, -0.5)
    w = o.random_schwarz(seed, o.FAMILIES[seed % 3], T)
    f = o.starlike_member(psi, w)
    z = 0.3 * np.exp(0.4j)
    lhs = z * at(derivative(f), z) / at(f, z)
    assert abs(lhs - psi_eval_complex(psi, at(w.omega, z))) < 1e-10


@pytest.mark.parametrize("seed", range(4))
def test_convex_member_relation(seed):
    w = o.random_schwarz(seed, o.FAMILIES[seed % 3], T)
    f = o.convex_member(CLASSICAL, w)
    z = 0.3 * np.exp(1.1j)
    fp, fpp = derivative(f), derivative(derivative(f))
    lhs = 1 + z * at(fpp, z) / at(fp, z)
    assert abs(lhs - psi_eval_complex(CLASSICAL, at(w.omega, z))) < 1e-9


def test_odd_convex_member_is_odd_and_in_symmetric_class():
    w1 = o.random_schwarz(3, o.BLASCHKE, T)
    f = o.odd_convex_member(CLASSICAL, w1)
    assert np.allclose(f.coeffs[::2], 0)
    z = 0.25 * np.exp(0.3j)
    fp = derivative(f)
    zfp = Series(np.arange(f.order + 1) * f.coeffs)
    lhs = 2 * at(derivative(zfp), z) / (at(fp, z) + at(fp, -z))
    assert abs(lhs - psi_eval_complex(CLASSICAL, at(w1.omega, z * z))) < 1e-9


def test_ks_member_relation():
    w = o.random_schwarz(1, o.SCALAR, T)
    wh = o.random_schwarz(2, o.BLASCHKE, T + 2)
    f = o.ks_member(CLASSICAL, w, wh)
    h = o.starlike_member(PsiModel.janowski(0.0, -1.0), wh)
    z = 0.2 * np.exp(2.0j)
    G = -at(h, z) * at(h, -z) / z
    lhs = z * at(derivative(f), z) / G
    assert abs(lhs - psi_eval_complex(CLASSICAL, at(w.omega, z))) < 1e-9


def test_ks_member_order_check():
    with pytest.raises(ValueError):
        o.ks_member(CLASSICAL, o.random_schwarz(1, o.SCALAR, T), o.random_schwarz(2, o.SCALAR, T))


def test_real_members_have_real_coefficients():
    w = o.random_schwarz(7, o.BLASCHKE, T, real=True)
    assert o.starlike_member(CLASSICAL, w).is_real(1e-14)
    assert o.convex_member(CLASSICAL, w).is_real(1e-14)


def psi_eval_complex(psi: PsiModel, w: complex) -> complex:
    return (1 + psi.D * w) / (1 + psi.E * w)


# lemma checks


def test_lemma_identical_functions_margin_zero():
    f = o.koebe(T)
    c = o.check_series_lemma(f, f, 1, 32, 1 / 3)
    assert c.ok and c.margin == 0.0


def test_lemma_koebe_half_argument():
    f = o.koebe(T)
    g = o.make_subordinate(f, o.schwarz_scalar(0.5, T))
    c = o.check_series_lemma(f, g, 1, 32, 1 / 3)
    assert c.ok and c.margin > 0


def test_lemma_at_r_zero():
    f = o.koebe(T)
    g = o.make_subordinate(f, o.schwarz_scalar(0.5, T))
    assert o.check_series_lemma(f, g, 1, 32, 0.0).margin == 0.0


def test_lemma_fails_for_n_two_with_identity_majorant():
    # f = z, g = w(z) = z (z - a)/(1 - conj(a) z): g has mass at z^2 while f does not
    f = Series.identity(T)
    w = o.schwarz_blaschke([0.5], T)
    g = o.make_subordinate(f, w)
    assert o.check_series_lemma(f, g, 1, T, 0.25).ok
    assert not o.check_series_lemma(f, g, 2, T, 0.25).ok


def test_weighted_lemma_trivial_cases():
    f = o.koebe(T)
    assert o.check_weighted_lemma(f, f, WeightSequence.odd(), 0.3).margin == 0.0
    g = o.make_subordinate(f, o.schwarz_monomial(2, T))
    c = o.check_weighted_lemma(f, g, WeightSequence.none(), 0.3)
    assert c.ok and c.margin == 0.0


def test_operator_axioms_at_zero():
    f = Series([0.5, -1.0, 0.25j, 0.0])
    g = Series([1.0, 0.5, 0.5, 0.5])
    res = o.check_operator_axioms(f, g, 2 - 1j, 0, 0.4)
    assert set(res) == {"nonnegative", "subadditive", "homogeneous", "submultiplicative", "unit"}
    assert all(res.values())


def test_product_and_unit_properties_fail_above_zero():
    one, z = Series.constant(1.0, 8), Series.identity(8)
    r = 0.5
    assert not o.bohr_operator(one * z, 1, r) <= o.bohr_operator(one, 1, r) * o.bohr_operator(z, 1, r)
    assert o.bohr_operator(one, 1, r) != 1.0
    assert set(o.check_operator_axioms(one, z, 1.0, 1, r)) == {"nonnegative", "subadditive", "homogeneous"}


def test_small_suites_pass():
    assert o.lemma_suite(3, pairs=60).ok
    assert o.weighted_lemma_suite(3, pairs=40).ok
    for N in (0, 1, 2, 3):
        assert o.operator_suite(3, pairs=60, N=N).ok
    assert o.growth_suite(3, samples=20).ok


def test_suite_is_seed_deterministic():
    a = o.lemma_suite(11, pairs=20, Ns=(2,))
    b = o.lemma_suite(11, pairs=20, Ns=(2,))
    assert (a.passed, a.total, a.failures) == (b.passed, b.total, b.failures)


def test_failure_line_format():
    line = o.format_failure("radius[sc]", "0:1", 0.3, 1.5, -0.2)
    assert line == "FAIL radius[sc] seed=0:1 r=0.3 theta=1.5 margin=-0.2"


# growth and radius inequalities


def test_growth_upper_bound_attained_by_extremal():
    f0 = build_extremal_pair(CLASSICAL, T).f0
    c = o.check_growth_bounds(f0, CLASSICAL, 0.4)
    assert c.ok and abs(c.margin) < 1e-12


def test_growth_convex_sandwich():
    f = o.convex_member(CLASSICAL, o.random_schwarz(4, o.BLASCHKE, T))
    assert o.check_growth_bounds(f, CLASSICAL, 0.4, convex=True).ok


def test_radius_inequality_at_zero_radius():
    p = RadiusProblem(ClassTag.GEN_STARLIKE, CLASSICAL, beta=0.1, m=1)
    res = solve(p)
    f = o.starlike_member(CLASSICAL, o.random_schwarz(0, o.SCALAR, T))
    c = o.check_radius_inequality(p, res, f, f, 0.0)
    assert c.ok and abs(c.margin - (res.rhs - 0.1)) < 1e-12  # only beta |f'(0)| = beta survives


@pytest.mark.parametrize("beta,m", [(0.0, math.inf), (0.1, 1), (0.2, 3)])
def test_radius_inequality_sharp_for_extremal(beta, m):
    p = RadiusProblem(ClassTag.GEN_STARLIKE, CLASSICAL, beta=beta, m=m)
    res = solve(p)
    f0 = build_extremal_pair(CLASSICAL, 160).f0
    c = o.check_radius_inequality(p, res, f0, f0, res.rb)
    assert abs(c.margin) <= 1e-6


def test_radius_suite_on_section_two_instances():
    problems = [p for p in o.golden_problems() if p.class_tag.is_starlike_section]
    rep = o.radius_suite([solve(p) for p in problems], seed=1, subordinates=10, theta_samples=32)
    assert rep.ok, rep.failures[:3]


def test_radius_suite_on_symmetric_class():
    problems = [p for p in o.golden_problems() if p.class_tag is ClassTag.CS and p.m == math.inf]
    rep = o.radius_suite([solve(p) for p in problems], seed=1, subordinates=10, theta_samples=32)
    assert rep.ok, rep.failures[:3]


# Counterexamples to the subordination-class radii as stated (classical psi, N = 1).
# Each function below is an explicit class member; the inequality fails at
# 0.9 * rb against the class constant and against the function's own boundary
# distance d(0, boundary f(D)).


def _sc_koebe():
    return o.starlike_member(CLASSICAL, o.schwarz_monomial(1, 200))  # z/(1-z)^2, real


def _cc_half_plane():
    return o.convex_member(CLASSICAL, o.schwarz_monomial(1, 200))  # z/(1-z), real


def _ks_half_plane():
    # h = z/(1-z) lies in S*(1/2); then G = z/(1-z^2) and f = z/(1-z)
    return o.ks_member(CLASSICAL, o.schwarz_monomial(1, 200), o.schwarz_monomial(1, 202))


def _cs_artanh():
    return o.odd_convex_member(CLASSICAL, o.schwarz_monomial(1, 200))  # artanh z, psi evaluated at z^2


def test_counterexample_members_are_the_expected_functions():
    odd = np.zeros(50)
    odd[1::2] = 1.0 / np.arange(1, 50, 2)
    assert np.allclose(_cs_artanh().coeffs.real[:50], odd)
    assert np.allclose(_sc_koebe().coeffs.real[:50], np.arange(50))
    assert np.allclose(_cc_half_plane().coeffs.real[1:50], 1.0)
    assert np.allclose(_ks_half_plane().coeffs.real[1:50], 1.0)


@pytest.mark.parametrize(
    "tag,m,member,true_distance",
    [
        (ClassTag.SC, math.inf, _sc_koebe, 0.25),
        (ClassTag.SC, 1, _sc_koebe, 0.25),
        (ClassTag.CC, 1, _cc_half_plane, 0.5),
        (ClassTag.KS, 1, _ks_half_plane, 0.5),
    ],
)
def test_stated_radius_fails_for_explicit_member(tag, m, member, true_distance):
    p = RadiusProblem(tag, CLASSICAL, m=m)
    res = solve(p)
    f = member()
    r = 0.9 * res.rb
    c = o.check_radius_inequality(p, res, f, f, r)
    assert not c.ok
    # also above the function's own boundary distance, so not an artifact of the class constant
    assert res.rhs - c.margin > true_distance


def test_ks_m_inf_fails_against_class_constant():
    p = RadiusProblem(ClassTag.KS, CLASSICAL)
    res = solve(p)
    f = _ks_half_plane()
    c = o.check_radius_inequality(p, res, f, f, 0.9 * res.rb)
    assert not c.ok and abs((res.rhs - c.margin) - 0.3 / 0.7) < 1e-10


def test_cs_m1_fails_for_artanh():
    # artanh z is odd with 1 + z f''/f' = psi(z^2); at r = 0.3 the m = 1 sum is 2 artanh(0.3)
    p = RadiusProblem(ClassTag.CS, CLASSICAL, m=1)
    res = solve(p)
    r = 0.9 * res.rb
    c = o.check_radius_inequality(p, res, _cs_artanh(), _cs_artanh(), r)
    assert not c.ok and abs(c.margin - (math.pi**2 / 16 - 2 * math.atanh(r))) < 1e-12
    assert res.equation.lhs(r) < 2 * math.atanh(r) - 0.25  # the solved LHS misses most of the member's sum
