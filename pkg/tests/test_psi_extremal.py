import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bohr_rogosinski.errors import DivergenceError
from bohr_rogosinski.extremal import (
    build_extremal_pair,
    convex_distance,
    cs_distance,
    cs_integrand,
    janowski_f0,
    janowski_starlike_distance,
    ks_distance,
    ks_growth_series,
    starlike_distance,
    symmetric_k_prime,
)
from bohr_rogosinski.psi import PsiModel, load_custom, psi_eval, psi_majorant_tail, psi_series
from bohr_rogosinski.quadrature import log_weighted, nested_double
from bohr_rogosinski.series import evaluate, tail_sum

janowski_params = st.tuples(st.floats(-1, 1), st.floats(-1, 1)).filter(lambda p: p[1] < p[0] - 1e-3)


def test_janowski_validation():
    with pytest.raises(ValueError):
        PsiModel.janowski(0.5, 0.5)
    with pytest.raises(ValueError):
        PsiModel.janowski(1.0, -1.5)
    with pytest.raises(ValueError):
        PsiModel.order_alpha(1.0)
    with pytest.raises(ValueError):
        PsiModel.custom([2.0, 1.0])


def test_classical_coefficients():
    assert np.allclose(psi_series(PsiModel.classical(), 6).coeffs.real, [1, 2, 2, 2, 2, 2, 2])


def test_order_alpha_is_janowski():
    m = PsiModel.order_alpha(0.25)
    assert (m.D, m.E) == (0.5, -1.0)


@settings(max_examples=40, deadline=None)
@given(janowski_params, st.floats(-0.6, 0.6))
def test_janowski_series_matches_closed_form(p, x):
    m = PsiModel.janowski(*p)
    s = psi_series(m, 128)
    assert abs(evaluate(s, x).value - psi_eval(m, x)) < 1e-10


@settings(max_examples=40, deadline=None)
@given(janowski_params, st.integers(1, 6), st.floats(0.0, 0.6))
def test_majorant_tail_closed_form_vs_series(p, N, t):
    m = PsiModel.janowski(*p)
    ref = tail_sum(psi_series(m, 256), N, t)
    assert abs(psi_majorant_tail(m, N, t) - ref) < 1e-10


def test_majorant_tail_e_zero():
    m = PsiModel.janowski(0.7, 0.0)
    assert psi_majorant_tail(m, 1, 0.3) == pytest.approx(0.21)
    assert psi_majorant_tail(m, 2, 0.3) == 0.0


def test_psi_eval_domain_and_pole():
    with pytest.raises(ValueError):
        psi_eval(PsiModel.classical(), 1.5)
    with pytest.raises(ZeroDivisionError):
        psi_eval(PsiModel.classical(), 1.0)


def test_custom_psi_file(tmp_path):
    f = tmp_path / "psi.txt"
    f.write_text("# classical, truncated\n1 0\n2 0\n2 0\n2 0\n")
    m = load_custom(f)
    assert m.kind == "custom" and len(m.coeffs) == 4
    assert psi_series(m, 10).order == 3  # never padded
    with pytest.raises(DivergenceError):
        psi_majorant_tail(m, 6, 0.2)


def test_custom_exact_polynomial():
    m = PsiModel.custom([1.0, 0.5], exact=True)
    assert psi_eval(m, -0.5) == pytest.approx(0.75)
    assert psi_series(m, 5).order == 5


def test_custom_bad_file(tmp_path):
    f = tmp_path / "bad.txt"
    f.write_text("2 0\n")
    with pytest.raises(ValueError):
        load_custom(f)


# extremal functions


def test_classical_f0_is_koebe():
    pair = build_extremal_pair(PsiModel.classical(), 128)
    assert np.allclose(pair.f0.coeffs.real[:101], np.arange(101), atol=1e-10)
    assert np.allclose(pair.k_psi.coeffs.real[1:60], 1.0, atol=1e-12)


def test_orders_of_extremal_pair():
    pair = build_extremal_pair(PsiModel.classical(), 64)
    assert pair.k_psi_prime.order == 64
    assert pair.f0.order == 65 and pair.k_psi.order == 65


@settings(max_examples=25, deadline=None)
@given(janowski_params, st.floats(-0.5, 0.5))
def test_janowski_f0_closed_form(p, x):
    D, E = p
    pair = build_extremal_pair(PsiModel.janowski(D, E), 160)
    assert abs(evaluate(pair.f0, x).value.real - janowski_f0(D, E, x)) < 1e-10


def test_f0_satisfies_defining_ode():
    m = PsiModel.janowski(0.6, -0.3)
    pair = build_extremal_pair(m, 128)
    x = 0.4
    f = evaluate(pair.f0, x).value
    from bohr_rogosinski.series import derivative

    fp = evaluate(derivative(pair.f0), x).value
    assert abs(x * fp / f - psi_eval(m, x)) < 1e-10


def test_classical_distances():
    m = PsiModel.classical()
    assert abs(starlike_distance(m) - 0.25) < 1e-10
    assert abs(convex_distance(m) - 0.5) < 1e-10
    assert abs(ks_distance(m) - math.log(2) / 2) < 1e-9
    assert abs(cs_distance(m) - math.pi**2 / 16) < 1e-9


def test_cs_distance_two_routes():
    m = PsiModel.classical()
    h = cs_integrand(m)
    assert abs(log_weighted(h, 1.0) - nested_double(h, 1.0, 1e-10)) < 1e-7


@settings(max_examples=20, deadline=None)
@given(st.floats(0.0, 0.95))
def test_order_alpha_starlike_distance(alpha):
    assert abs(starlike_distance(PsiModel.order_alpha(alpha)) - 4 ** (-(1 - alpha))) < 1e-10


@settings(max_examples=20, deadline=None)
@given(janowski_params)
def test_janowski_distance_closed_form(p):
    D, E = p
    assert abs(starlike_distance(PsiModel.janowski(D, E)) - janowski_starlike_distance(D, E)) < 1e-9


def test_janowski_e0_convex_distance():
    D = 0.7
    assert abs(convex_distance(PsiModel.janowski(D, 0.0)) - (1 - math.exp(-D)) / D) < 1e-10


def test_janowski_one_zero_starlike_distance_is_inverse_e():
    assert abs(starlike_distance(PsiModel.janowski(1.0, 0.0)) - math.exp(-1)) < 1e-10


def test_symmetric_k_prime_classical():
    K = symmetric_k_prime(build_extremal_pair(PsiModel.classical(), 128))
    expected = np.where(np.arange(129) % 2 == 0, 1.0, 0.0)
    assert np.allclose(K.coeffs.real, expected, atol=1e-10)


def test_ks_growth_series_classical_is_half_plane_map():
    # psi/(1-z^2) = 1/(1-z)^2 for classical psi, so F = z/(1-z)
    F = ks_growth_series(PsiModel.classical(), 64)
    assert np.allclose(F.coeffs.real[1:60], 1.0, atol=1e-12)
