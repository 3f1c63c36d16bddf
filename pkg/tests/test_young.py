import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from orliczmorrey import young as Y
from orliczmorrey.quadrature import DivergentIntegralError
from orliczmorrey.tables import log_grid

BUILTINS = [Y.power(1), Y.power(2), Y.power(3.5), Y.scaled_power(3), Y.exp_minus_linear(), Y.zygmund(),
            Y.linfty_step()]


def brute_conjugate(phi, s, r=None):
    """O(N^2) Legendre scan used as the reference for the fast path."""
    r = np.concatenate([[0.0], log_grid(-6, 6, 400)]) if r is None else r
    vals = np.asarray(phi(r), dtype=float)
    finite = np.isfinite(vals)
    return np.max(np.outer(s, r[finite]) - vals[finite], axis=1)


def power_law_auxiliary(c, q, p):
    """Symbolic chain for a power-law input ``c t^q``: returns (A, m) with
    the outer integral equal to ``A s^m``."""
    pp = p / (p - 1.0)
    k = ((q - pp) / c) ** (pp / (q - pp))
    m = pp * q / (q - pp)
    return k / m, m


def conj_of_monomial(a, m, r):
    """``sup_s (r s - a s^m)`` in closed form."""
    s_star = (r / (a * m)) ** (1.0 / (m - 1.0))
    return r * s_star - a * s_star ** m


# -- evaluation and inverse -------------------------------------------------

def test_evaluate_examples():
    assert Y.power(2)(3.0) == 9.0
    assert Y.linfty_step()(0.5) == 0.0
    assert Y.exp_minus_linear()(0.0) == 0.0
    assert Y.linfty_step()(1.5) == math.inf


def test_inverse_examples():
    assert Y.power(2).inverse(9.0) == pytest.approx(3.0)
    assert Y.linfty_step().inverse(7.0) == 1.0
    assert Y.scaled_power(2).inverse(2.0) == pytest.approx(2.0)


def test_inverse_rejects_negative():
    with pytest.raises(ValueError):
        Y.power(2).inverse(-1.0)


def test_invalid_kinds():
    with pytest.raises(ValueError):
        Y.YoungFunction("cubic")
    with pytest.raises(ValueError):
        Y.power(0.5)


def test_tabulated_convexity_check():
    x = np.array([1.0, 2.0, 3.0])
    with pytest.raises(ValueError):
        Y.tabulated(x, np.array([1.0, 3.0, 3.5]), check=True)
    phi = Y.tabulated(x, x ** 2, check=True)
    assert phi(2.0) == pytest.approx(4.0)


def test_infinity_is_absorbing():
    step = Y.linfty_step(2.0)
    r = np.linspace(2.01, 50, 30)
    assert np.all(np.isinf(step(r)))


@pytest.mark.parametrize("phi", BUILTINS, ids=str)
def test_sandwich(phi):
    r = log_grid(-6, 6, 16)
    eps = 1e-3
    with np.errstate(invalid="ignore"):
        lhs = np.asarray(phi(phi.inverse(r)), dtype=float)
        rhs = np.asarray(phi.inverse(phi(r)), dtype=float)
    assert np.all(lhs <= r * (1 + eps))
    assert np.all(r <= rhs * (1 + eps))


@given(st.floats(1.05, 6.0), st.floats(1e-4, 1e4), st.floats(0.0, 1.0))
def test_convexity_homogeneity(p, t, a):
    phi = Y.power(p)
    assert phi(a * t) <= a * phi(t) * (1 + 1e-12) + 1e-300
    assert phi((1 + a) * t) >= (1 + a) * phi(t) * (1 - 1e-12)


# -- conjugation ----------------------------------------------------------

@pytest.mark.parametrize("p", [1.5, 2.0, 3.0, 5.0])
def test_scaled_power_conjugate_numeric(p):
    conj = Y.conjugate(Y.scaled_power(p), method="numeric")
    q = p / (p - 1)
    s = log_grid(-4, 4, 8)
    np.testing.assert_allclose(conj(s), s ** q / q, rtol=1e-4)


def test_closed_form_conjugates():
    assert Y.conjugate(Y.power(1)) == Y.linfty_step(1.0)
    assert Y.conjugate(Y.exp_minus_linear()) == Y.zygmund()
    assert Y.conjugate(Y.scaled_power(3)) == Y.scaled_power(1.5)


def test_numeric_conjugate_matches_brute_force():
    phi = Y.exp_minus_linear()
    s = log_grid(-2, 1.5, 6)
    fast = Y.conjugate(phi, method="numeric")(s)
    np.testing.assert_allclose(fast, brute_conjugate(phi, s), rtol=1e-3)


def test_numeric_conjugate_of_tabulated_matches_brute_force():
    x = log_grid(-3, 3, 20)
    phi = Y.tabulated(x, x ** 2.5 + x ** 1.5)
    s = log_grid(-1, 2, 5)
    fast = Y.conjugate(phi)(s)
    dense = log_grid(-3, 3, 2000)
    np.testing.assert_allclose(fast, brute_conjugate(phi, s, dense), rtol=1e-3)


def test_exp_conjugate_matches_zygmund():
    s = log_grid(-3, 3, 8)
    num = Y.conjugate(Y.exp_minus_linear(), method="numeric")(s)
    np.testing.assert_allclose(num, Y.zygmund()(s), rtol=1e-3)


@pytest.mark.parametrize("phi", BUILTINS, ids=str)
def test_young_inequality_for_inverses(phi):
    r = log_grid(-5, 5, 12)
    prod = np.asarray(phi.inverse(r)) * np.asarray(Y.conjugate(phi).inverse(r))
    assert np.all(prod >= r * (1 - 1e-3))
    assert np.all(prod <= 2 * r * (1 + 1e-3))


# -- growth classes ---------------------------------------------------------

def test_classify_power_one():
    c = Y.classify(Y.power(1))
    assert c.delta2.holds and c.delta2.k == pytest.approx(2.0)
    assert not c.nabla2.holds


@pytest.mark.parametrize("p", [1.5, 2.0, 4.0])
def test_classify_power(p):
    c = Y.classify(Y.power(p))
    assert c.delta2.holds and c.nabla2.holds
    assert c.indices.a_index == pytest.approx(p, abs=1e-6)
    assert c.indices.b_index == pytest.approx(p, abs=1e-6)


def test_classify_exp_and_zygmund():
    e = Y.classify(Y.exp_minus_linear())
    assert e.nabla2.holds and not e.delta2.holds
    z = Y.classify(Y.zygmund())
    assert z.delta2.holds and not z.nabla2.holds


@pytest.mark.parametrize("phi", [Y.power(1), Y.power(2), Y.exp_minus_linear(), Y.zygmund()], ids=str)
def test_growth_duality(phi):
    assert Y.classify(phi).nabla2.holds == Y.classify(Y.conjugate(phi)).delta2.holds


def test_classify_step_is_degenerate():
    c = Y.classify(Y.linfty_step())
    assert c.degenerate and c.indices is None


# -- domination and constructions ---------------------------------------------

def test_domination_examples():
    d = Y.dominates_globally(Y.power(2), Y.power(2))
    assert d.holds and d.c == 1.0
    d = Y.dominates_globally(Y.power(2), Y.power(1))
    assert not d.holds and d.worst_s <= 1e-12


def test_build_Q_examples():
    s = log_grid(-4, 4, 4)
    np.testing.assert_allclose(Y.build_Q(Y.power(2), 0.5, 1)(s), s, rtol=1e-9)
    assert Y.build_Q(Y.power(3), 0.0, 1) == Y.power(3)
    q, a = 4.0, 0.25
    p = 1 / (a + 1 / q)
    np.testing.assert_allclose(Y.build_Q(Y.power(q), a, 1)(s), s ** p, rtol=1e-9)
    d = Y.dominates_globally(Y.power(p), Y.build_Q(Y.power(q), a, 1))
    assert d.holds and d.c == pytest.approx(1.0)


def test_build_Q_alpha_range():
    with pytest.raises(ValueError, match="alpha"):
        Y.build_Q(Y.power(2), 1.0, 1)


def test_psi_p_power_law_oracle():
    n, alpha, q = 1, 0.25, 6.0
    p = n / alpha
    out = Y.build_auxiliary(Y.power(q), p, "psi_p")
    a, m = power_law_auxiliary(1.0, q, p)
    r = log_grid(-3, 3, 6)
    np.testing.assert_allclose(out(r), conj_of_monomial(a, m, r), rtol=1e-4)


def test_phi_p_power_law_oracle():
    # conj(scaled_power(3)) = t^1.5 / 1.5
    p = 4.0
    out = Y.build_auxiliary(Y.scaled_power(3), p, "phi_p")
    a, m = power_law_auxiliary(1 / 1.5, 1.5, p)
    s = log_grid(-2, 1, 6)
    np.testing.assert_allclose(out(s), a * s ** m, rtol=1e-4)


def test_auxiliary_outputs_vanish_at_zero_and_are_convex():
    out = Y.build_auxiliary(Y.power(5), 4.0, "psi_p")
    assert out(0.0) == 0.0
    assert Y.is_convex(out, tol=1e-6)


def test_auxiliary_divergence():
    # power(1): t / t^{1 + 4/3} is not integrable at 0
    with pytest.raises(DivergentIntegralError):
        Y.build_auxiliary(Y.power(1), 4.0, "psi_p")


@pytest.mark.parametrize("builder", ["Q", "psi_p", "phi_p"])
def test_sandwich_for_constructions(builder):
    if builder == "Q":
        phi = Y.build_Q(Y.power(4), 0.25, 1)
    elif builder == "psi_p":
        phi = Y.build_auxiliary(Y.power(6), 4.0, "psi_p")
    else:
        phi = Y.build_auxiliary(Y.scaled_power(3), 4.0, "phi_p")
    r = log_grid(-3, 3, 12)
    with np.errstate(invalid="ignore"):
        assert np.all(np.asarray(phi(phi.inverse(r))) <= r * (1 + 1e-3))
        assert np.all(r <= np.asarray(phi.inverse(phi(r))) * (1 + 1e-3))


# -- config and CSV -----------------------------------------------------------

def test_from_spec_roundtrip(tmp_path):
    assert Y.from_spec({"kind": "power", "p": 2, "coef": 3}) == Y.power(2, 3)
    assert Y.from_spec({"kind": "linfty_step", "jump": 2}) == Y.linfty_step(2)
    with pytest.raises(ValueError):
        Y.from_spec({"kind": "power", "p": 2, "q": 1})
    path = tmp_path / "phi.csv"
    Y.save_csv(Y.power(2), path, r=log_grid(-2, 2, 8))
    loaded = Y.from_spec({"kind": "tabulated", "csv": str(path)})
    assert loaded(1.5) == pytest.approx(2.25, rel=1e-2)


@settings(max_examples=25, deadline=None)
@given(st.floats(1.1, 5.0))
def test_double_conjugation(p):
    phi = Y.power(p)
    back = Y.conjugate(Y.conjugate(phi, method="numeric"), method="numeric")
    s = log_grid(-2, 2, 4)
    np.testing.assert_allclose(back(s), phi(s), rtol=1e-3)
