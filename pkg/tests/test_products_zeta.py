import numpy as np
import pytest

import oracles
from landen_kit import DomainError, ParityError
from landen_kit import landen, products_zeta as pz

KINDS = [k.value for k in pz.ProductKind]
FUNCS = {
    "sn_cn": ("sn", "cn"), "sn_dn": ("sn", "dn"), "cn_dn": ("cn", "dn"), "dn2": ("dn", "dn"),
    "sn_cn_dn": ("sn", "cn", "dn"), "dn3": ("dn", "dn", "dn"), "cn3": ("cn", "cn", "cn"), "sn3": ("sn", "sn", "sn"),
}


@pytest.mark.parametrize("kind", KINDS)
@pytest.mark.parametrize("p", range(2, 7))
def test_products_against_mpmath(kind, p):
    rng = np.random.default_rng(p)
    for m in (0.1, 0.5, 0.9):
        mt = oracles.landen_m_tilde(p, m)
        d = landen.make_transform_data(p, m)
        for x in rng.uniform(-3, 3, 4):
            ref = np.prod([oracles.ellipfun(f, x, mt) for f in FUNCS[kind]])
            assert abs(pz.product_transform(kind, p, m, x, d) - ref) < 1e-9


@pytest.mark.parametrize("p", range(2, 8))
def test_zeta_and_E(p):
    for m in (0.2, 0.5, 0.8):
        mt = oracles.landen_m_tilde(p, m)
        for x in (0.3, -1.7, 2.9):
            assert abs(pz.zeta_transform(p, m, x) - oracles.zeta(x, mt)) < 1e-9
        assert pz.E_transform(p, m) == pytest.approx(oracles.E(mt), abs=1e-10)


def test_printed_coefficients_fail():
    d = landen.make_transform_data(3, 0.5)
    ref = pz.product_target("sn_cn_dn", 0.7, d.modulus_tilde)
    assert abs(pz.product_transform("sn_cn_dn", 3, 0.5, 0.7, d, reading="printed") - ref) > 1e-4
    ref = pz.product_target("dn3", 0.7, d.modulus_tilde)
    assert abs(pz.product_transform("dn3", 3, 0.5, 0.7, d, reading="printed") - ref) > 1e-4


def test_derivative_chain():
    h = 1e-5
    for p in (2, 3, 4):
        d = landen.make_transform_data(p, 0.6)
        mt = d.modulus_tilde.m
        for x in (0.2, 1.4):
            fd = (landen.landen_sum("dn", p, 0.6, x + h, d) - landen.landen_sum("dn", p, 0.6, x - h, d)) / (2 * h)
            assert abs(fd + mt * pz.product_transform("sn_cn", p, 0.6, x, d)) < 1e-6


@pytest.mark.parametrize("p", [3, 5, 7])
def test_odd_consistency_conditions(p):
    for m in (0.2, 0.5, 0.8):
        rep = pz.verify_consistency_odd(p, m, [0.0, 0.4, 1.9])
        assert rep.passed, rep


@pytest.mark.parametrize("which", pz.REMARKABLE)
@pytest.mark.parametrize("p", [2, 4, 6])
def test_remarkable_identities(which, p):
    for m in (0.2, 0.5, 0.8):
        rep = pz.verify_remarkable_identities(which, p, m, [0.1, 0.9, -2.0])
        assert rep.passed, (which, p, m, rep.max_residual)


def test_lattice_sums_are_x_independent():
    ls = pz.lattice_sums(5, 0.4)
    for x in (0.0, 0.8, -1.3):
        direct = pz.direct_pair_sums(5, 0.4, x)
        assert direct["A_d"] == pytest.approx(ls.A_d, abs=1e-12)
        assert direct["A_s"] == pytest.approx(ls.A_s, abs=1e-12)
        assert direct["A_c"] == pytest.approx(ls.A_c, abs=1e-12)


def test_errors():
    with pytest.raises(DomainError):
        pz.product_transform("dn2", 3, 0.0, 0.1)
    with pytest.raises(ParityError):
        pz.verify_consistency_odd(4, 0.5)
    with pytest.raises(ParityError):
        pz.verify_remarkable_identities("eq99", 3, 0.5, 0.1)
