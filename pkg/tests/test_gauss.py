import math

import numpy as np
import pytest

import oracles
from landen_kit import DomainError, PoleError, jacobi_minor, jacobi_real
from landen_kit import gauss, landen


@pytest.mark.parametrize("p", range(2, 7))
def test_ascending_parameter_matches_nome_root(p):
    for m in (0.2, 0.5, 0.8, 1e-4):
        g = gauss.make_gauss_data(p, m)
        assert g.m_tilde.complement == pytest.approx(oracles.gauss_m_tilde_complement(p, m), rel=1e-11)
        assert g.m_tilde.m > m


@pytest.mark.parametrize("kind", ["dc", "nc", "sc"])
@pytest.mark.parametrize("p", range(2, 7))
def test_gauss_sums_against_mpmath(p, kind):
    rng = np.random.default_rng(10 * p)
    for m in (0.2, 0.5, 0.8):
        g = gauss.make_gauss_data(p, m)
        mt = oracles.gauss_m_tilde(p, m)
        done = 0
        while done < 8:
            x = rng.uniform(-3, 3)
            try:
                v = gauss.gauss_sum(kind, p, m, x, g)
            except PoleError:
                continue
            num, den = {"dc": ("dn", "cn"), "nc": (None, "cn"), "sc": ("sn", "cn")}[kind]
            ref = (oracles.ellipfun(num, x, mt) if num else 1.0) / oracles.ellipfun(den, x, mt)
            if abs(ref) > 1e6:
                continue
            assert abs(v.real - ref) / max(1, abs(ref)) < 1e-9
            assert abs(v.imag) < 1e-10
            done += 1


def test_verify_gauss_sum_report():
    rep = gauss.verify_gauss_sum("dc", 3, 0.5, np.linspace(-2, 2, 11))
    assert rep.passed and rep.extra["max_imag"] < 1e-10


def test_classical_quadratic_forms():
    rng = np.random.default_rng(5)
    for u, m in zip(rng.uniform(-5, 5, 100), rng.uniform(0.01, 0.99, 100)):
        for fn in (gauss.classical_gauss, gauss.classical_landen):
            x, mt, rhs = fn(u, m)
            t = jacobi_real(x, mt)
            assert max(abs(a - b) for a, b in zip((t.dn, t.cn, t.sn), rhs)) < 1e-11


def test_classical_gauss_parameter():
    k = 0.5
    _, mt, _ = gauss.classical_gauss(0.1, k * k)
    assert mt.m == pytest.approx(4 * k / (1 + k) ** 2)


@pytest.mark.parametrize("p", range(2, 7))
def test_roundtrips(p):
    for m in (0.1, 0.5, 0.9):
        assert gauss.verify_gauss_landen_inverse(p, m).passed


def test_complement_constants_equal():
    for p in (2, 3, 5):
        g = gauss.make_gauss_data(p, 0.3)
        d = landen.make_transform_data(p, 0.7)
        assert g.beta == pytest.approx(d.alpha, rel=1e-14)
        assert g.Kp == pytest.approx(d.K, rel=1e-14)


def test_sc_product_reads_x_not_beta_x():
    rep = gauss.verify_sc_product_readings(2, 0.25, np.linspace(-1, 1, 7))
    assert rep.passed
    assert rep.extra["beta_x_reading_residual"] > 1e-3


def test_sc_p2_example():
    v = gauss.gauss_sum("sc", 2, 0.25, 0.5).real
    u = 0.5 / 1.5
    _, _, (_, cn, sn) = gauss.classical_gauss(u, 0.25)
    assert v == pytest.approx(sn / cn, rel=1e-12)


def test_m_zero_rejected():
    with pytest.raises(DomainError):
        gauss.make_gauss_data(3, 0.0)


def test_pole_raised():
    g = gauss.make_gauss_data(3, 0.5)
    mt = g.m_tilde
    K = float(oracles._ctx.ellipk(mt.m))
    with pytest.raises(PoleError):
        gauss.gauss_sum("nc", 3, 0.5, K)
    assert math.isinf(jacobi_minor("nc", 0.1, 0.5)) is False
