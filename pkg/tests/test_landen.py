import math

import numpy as np
import pytest

import oracles
from landen_kit import DomainError, ModulusParameter, ParityError, UnsupportedOrder, complete_K, jacobi_real
from landen_kit import landen

M_GRID = [0.1 * i for i in range(1, 10)]


@pytest.mark.parametrize("p", range(2, 8))
def test_m_tilde_matches_nome_power(p):
    for m in M_GRID + [1e-6, 0.999, 0.99999]:
        d = landen.make_transform_data(p, m)
        ref = oracles.landen_m_tilde(p, m)
        assert d.modulus_tilde.m == pytest.approx(ref, rel=1e-12)


@pytest.mark.parametrize("p", range(2, 8))
@pytest.mark.parametrize("kind", ["dn", "cn", "sn"])
def test_transforms_against_mpmath(p, kind):
    rng = np.random.default_rng(p)
    for m in (0.1, 0.5, 0.9):
        mt = oracles.landen_m_tilde(p, m)
        d = landen.make_transform_data(p, m)
        for x in rng.uniform(-5, 5, 10):
            assert abs(landen.landen_sum(kind, p, m, x, d) - oracles.ellipfun(kind, x, mt)) < 1e-10


@pytest.mark.parametrize("m", [1e-12, 1e-6, 1e-3, 0.02])
@pytest.mark.parametrize("p", [4, 6, 7, 11])
def test_small_m_uses_well_conditioned_route(p, m):
    mt = landen.make_transform_data(p, m).modulus_tilde.m
    for x in (0.4, -2.2, 4.9):
        for kind in ("sn", "cn", "dn"):
            assert abs(landen.landen_sum(kind, p, m, x) - oracles.ellipfun(kind, x, mt)) < 1e-12


def test_period_relation():
    for p in range(2, 8):
        for m in M_GRID:
            rep = landen.verify_period_relation(p, m)
            assert rep.passed, rep


def test_m_tilde_equivalence_and_closed_forms():
    for p in range(2, 8):
        for m in M_GRID:
            assert landen.verify_m_tilde_equivalence(p, m).passed
    for p in (2, 3, 4):
        for m in M_GRID:
            assert landen.m_tilde_closed_form(p, m) == pytest.approx(oracles.landen_m_tilde(p, m), rel=1e-11, abs=1e-15)


def test_p2_closed_form_is_classical():
    for m in (0.2, 0.7):
        kp = math.sqrt(1 - m)
        assert landen.m_tilde_closed_form(2, m) == pytest.approx(((1 - kp) / (1 + kp)) ** 2, rel=1e-13)


def test_monotone_in_m_and_p():
    grid = np.linspace(0.05, 0.95, 19)
    prev = None
    for p in range(2, 8):
        row = [landen.make_transform_data(p, m).modulus_tilde.m for m in grid]
        assert all(a < b for a, b in zip(row, row[1:]))
        assert all(mt < m for mt, m in zip(row, grid))
        if prev is not None:
            assert all(b < a for a, b in zip(prev, row))
        prev = row


@pytest.mark.parametrize("p", [3, 5, 7])
def test_sum_equals_product(p):
    for m in (0.15, 0.5, 0.85):
        d = landen.make_transform_data(p, m)
        for x in np.linspace(-3, 3, 9):
            for kind in ("dn", "cn", "sn"):
                a = landen.landen_sum(kind, p, m, x, d, force_sum=True)
                assert a == pytest.approx(landen.landen_product(kind, p, m, x, d), abs=1e-10)


@pytest.mark.parametrize("p", [2, 4, 6])
def test_even_sn_zeta_form_equals_product(p):
    for m in (0.2, 0.6):
        d = landen.make_transform_data(p, m)
        for x in np.linspace(-3, 3, 7):
            assert landen.landen_sum("sn", p, m, x, d, force_sum=True) == pytest.approx(
                landen.landen_sn_even_product(p, m, x, d), abs=1e-10)


@pytest.mark.parametrize("p", [2, 4, 6])
def test_identity_81(p):
    for m in M_GRID:
        lhs, rhs = landen.identity_81_sides(p, m)
        assert abs(lhs - rhs) / max(1, abs(rhs)) < 1e-9


def test_identity_81_needs_even_p():
    with pytest.raises(ParityError):
        landen.identity_81_sides(3, 0.5)
    with pytest.raises(ParityError):
        landen.landen_product("dn", 4, 0.5, 0.1)


@pytest.mark.parametrize("p", range(2, 8))
def test_trig_limits(p):
    for y in np.linspace(-2, 2, 9):
        for _, lhs, rhs in landen.trig_limit_sides(p, y):
            assert abs(lhs - rhs) < 1e-8
        if p % 2:
            assert abs(landen.landen_product("cn", p, 1e-12, y) - math.cos(y)) < 1e-8
        else:
            assert abs(landen.landen_sn_even_product(p, 1e-12, y) - math.sin(y)) < 1e-8


def test_m_zero_exact():
    d = landen.make_transform_data(3, 0.0)
    assert d.m_tilde == 0.0 and d.alpha == pytest.approx(1 / 3)
    assert landen.landen_sum("cn", 3, 0.0, 0.4) == math.cos(0.4)


def test_bad_order_and_domain():
    with pytest.raises((UnsupportedOrder, DomainError)):
        landen.make_transform_data(1, 0.5)
    with pytest.raises(DomainError):
        landen.make_transform_data(3, 1.0)


def test_near_one_keeps_relative_precision():
    m = ModulusParameter.from_complement(1e-20)
    d = landen.make_transform_data(3, m)
    ref = oracles.landen_m_tilde(3, 0.5)  # sanity of the oracle itself
    assert 0 < ref < 0.5
    assert d.K == pytest.approx(complete_K(m), rel=1e-14)
    mt = d.modulus_tilde
    s = landen.landen_sum("dn", 3, m, 0.8, d)
    assert s == pytest.approx(jacobi_real(0.8, mt).dn, abs=1e-10)
