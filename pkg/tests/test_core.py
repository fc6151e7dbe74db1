import math

import numpy as np
import pytest
import scipy.special as sp
from hypothesis import given, settings, strategies as st

import oracles
from landen_kit import (
    DomainError,
    ModulusParameter,
    PoleError,
    complete_E,
    complete_K,
    jacobi_complex,
    jacobi_complex_minor,
    jacobi_minor,
    jacobi_real,
    jacobi_zeta,
)

xs = st.floats(-20, 20, allow_nan=False)
ms = st.floats(0.0, 1.0, allow_nan=False)


@settings(max_examples=300, deadline=None)
@given(xs, ms)
def test_pythagorean_identities(x, m):
    s, c, d = jacobi_real(x, m)
    assert abs(s * s + c * c - 1) < 1e-12
    assert abs(d * d + m * s * s - 1) < 1e-12


@settings(max_examples=100, deadline=None)
@given(st.floats(-8, 8), st.floats(0.01, 0.99))
def test_double_argument(x, m):
    s, c, d = jacobi_real(x, m)
    assert abs(2 * s * c * d / (1 - m * s ** 4) - jacobi_real(2 * x, m).sn) < 1e-11


def test_against_mpmath_grid():
    rng = np.random.default_rng(3)
    worst = 0.0
    for x, m in zip(rng.uniform(-30, 30, 300), rng.uniform(0, 1, 300)):
        t = jacobi_real(x, m)
        for name, v in zip(("sn", "cn", "dn"), t):
            worst = max(worst, abs(v - oracles.ellipfun(name, x, m)))
    assert worst < 1e-13


def test_against_scipy_ellipj():
    x = np.linspace(-6, 6, 41)
    for m in (0.05, 0.3, 0.7, 0.95):
        s, c, d, _ = sp.ellipj(x, m)
        ours = np.array([jacobi_real(v, m) for v in x])
        assert np.max(np.abs(ours - np.column_stack([s, c, d]))) < 1e-13


@pytest.mark.parametrize("m", [0.0, 1e-12, 0.1, 0.5, 0.9, 0.999999, 1 - 1e-12])
def test_complete_integrals(m):
    assert complete_K(m) == pytest.approx(oracles.K(m), rel=1e-14)
    assert complete_E(m) == pytest.approx(oracles.E(m), rel=1e-14)


def test_K_near_one_through_complement():
    mp_ = ModulusParameter.from_complement(1e-30)
    c = oracles._ctx
    ref = c.pi / (2 * c.agm(1, c.sqrt(c.mpf("1e-30"))))
    assert complete_K(mp_) == pytest.approx(float(ref), rel=1e-14)


def test_complete_K_diverges_at_one():
    with pytest.raises(DomainError):
        complete_K(1.0)


def test_limits():
    for x in np.linspace(-10, 10, 21):
        assert jacobi_real(x, 0.0) == pytest.approx((math.sin(x), math.cos(x), 1.0), abs=1e-13)
        sech = 1 / math.cosh(x)
        assert jacobi_real(x, 1.0) == pytest.approx((math.tanh(x), sech, sech), abs=1e-13)


@pytest.mark.parametrize("m", [0.1, 0.3, 0.5, 0.7, 0.9])
def test_legendre_relation(m):
    K, E = complete_K(m), complete_E(m)
    Kp, Ep = complete_K(1 - m), complete_E(1 - m)
    assert abs(E * Kp + Ep * K - K * Kp - math.pi / 2) < 1e-12


@pytest.mark.parametrize("m", [0.2, 0.5, 0.8])
def test_zeta_derivative_and_oracle(m):
    h = 1e-5
    for x in np.linspace(-3, 3, 13):
        fd = (jacobi_zeta(x + h, m) - jacobi_zeta(x - h, m)) / (2 * h)
        assert abs(fd - (jacobi_real(x, m).dn ** 2 - complete_E(m) / complete_K(m))) < 1e-7
        assert abs(jacobi_zeta(x, m) - oracles.zeta(x, m)) < 1e-13


def test_minor_functions_and_poles():
    x, m = 0.7, 0.4
    s, c, d = jacobi_real(x, m)
    assert jacobi_minor("cs", x, m) == pytest.approx(c / s)
    assert jacobi_minor("nd", x, m) == pytest.approx(1 / d)
    with pytest.raises(PoleError):
        jacobi_minor("ns", 0.0, m)
    with pytest.raises(PoleError):
        jacobi_minor("sc", complete_K(m), m)


def test_complex_against_mpmath():
    rng = np.random.default_rng(11)
    for x, y, m in zip(rng.uniform(-3, 3, 40), rng.uniform(-3, 3, 40), rng.uniform(0.05, 0.95, 40)):
        z = complex(x, y)
        t = jacobi_complex(z, m)
        for name, v in zip(("sn", "cn", "dn"), t):
            ref = oracles.ellipfun_c(name, z, m)
            assert abs(v - ref) / max(1.0, abs(ref)) < 1e-11


def test_complex_pole():
    m = 0.5
    with pytest.raises(PoleError):
        jacobi_complex(1j * complete_K(1 - m), m)
    assert jacobi_complex_minor("ns", 0.3 + 0.2j, m) == pytest.approx(1 / complex(jacobi_complex(0.3 + 0.2j, m).sn))


@pytest.mark.parametrize("bad", [-0.1, 1.1, float("nan")])
def test_domain(bad):
    with pytest.raises(DomainError):
        jacobi_real(0.3, bad)


def test_extended_precision_agrees():
    s, c, d = jacobi_real(1.3, 0.6, extended=True)
    assert float(s) == pytest.approx(oracles.ellipfun("sn", 1.3, 0.6), abs=1e-16)
