import numpy as np
import pytest

import oracles
from landen_kit import DomainError, PoleError
from landen_kit import complex_landen as cl


def test_p2_reductions_random():
    rng = np.random.default_rng(21)
    for m, u in zip(rng.uniform(0.05, 0.95, 30), rng.uniform(-2, 2, 30)):
        rep = cl.verify_p2_reductions(m, [u])
        assert rep.max_residual < 1e-10


def test_classical_complex_against_mpmath():
    # the classical formulas evaluated through mpmath at the complex parameter
    m, u = 0.4, 0.3
    x, mt, (dn, cn, sn) = cl.classical_complex(u, m)
    c = oracles._ctx
    for name, v in (("dn", dn), ("cn", cn), ("sn", sn)):
        ref = complex(c.ellipfun(name, c.mpc(x), m=c.mpc(mt)))
        assert abs(v - ref) < 1e-12


@pytest.mark.parametrize("p", range(2, 8))
def test_duality_and_consistency(p):
    rep = cl.verify_duality(p, 0.5, np.linspace(-1, 1, 5))
    assert rep.passed, rep.extra


@pytest.mark.parametrize("p", [3, 4])
def test_sum_against_mpmath_at_complex_m_tilde(p):
    d = cl.make_complex_shift_data(p, 0.3)
    c = oracles._ctx
    for x in (0.2, -0.5):
        for kind in ("dn", "cn", "sn"):
            v = cl.complex_landen_sum(kind, p, 0.3, x, d)
            ref = complex(c.ellipfun(kind, c.mpf(x), m=c.mpc(d.m_tilde)))
            assert abs(v - ref) / max(1, abs(ref)) < 1e-9


def test_printed_odd_reading_fails():
    rep = cl.verify_duality(3, 0.5, [0.3], reading="printed")
    assert not rep.passed


def test_domain():
    with pytest.raises(DomainError):
        cl.make_complex_shift_data(3, 0.0)
    with pytest.raises(DomainError):
        cl.make_complex_shift_data(3, 1.0)


def test_pole_guard():
    d = cl.make_complex_shift_data(2, 0.5)
    # at x = iK'/scale the first term sits on the pole of sn, cn, dn
    scale = complex(d.ext["delta2"] / d.ext["k"])
    with pytest.raises(PoleError):
        cl.complex_landen_sum("cn", 2, 0.5, 1j * d.Kp / scale, d)
