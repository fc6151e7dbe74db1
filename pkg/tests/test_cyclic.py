import numpy as np
import pytest

import oracles
from landen_kit import ApplicabilityError, DomainError, PoleError
from landen_kit import cyclic, landen

IDS = [i.value for i in cyclic.IdentityId]
XS = [0.37, -1.21, 2.05]


def _applicable_cases(row, p_max=6):
    for p in range(2, p_max + 1):
        for r in ([1] if row.no_shift else range(1, p)):
            if not row.applicable(p, r):
                yield p, r


@pytest.mark.parametrize("ident", [i for i in IDS if i != "eq19"])
def test_identity_holds(ident):
    row = cyclic.CATALOG[cyclic.IdentityId(ident)]
    for p, r in _applicable_cases(row):
        rep = cyclic.evaluate_case(ident, p, r, 0.6, XS)
        assert rep.status in ("pass", "skipped-pole"), (ident, p, r, rep.max_residual)


def test_ds_minus_ns_prefactor_fails_where_f1_holds():
    rep = cyclic.evaluate_case("eq19", 4, 1, 0.5, XS)
    assert rep.max_residual > 0.1
    assert cyclic.evaluate_case("f1", 4, 1, 0.5, XS).passed


def test_dn_pair_sum_against_mpmath():
    p, r, m, x = 5, 2, 0.45, 0.3
    d = landen.make_transform_data(p, m)
    K = oracles.K(m)
    pts = [d.alpha * x + 2 * j * K / p for j in range(p + r)]
    lhs = sum(oracles.ellipfun("dn", pts[j], m) * oracles.ellipfun("dn", pts[j + r], m) for j in range(p))
    rep = cyclic.evaluate_identity("eq86", p, r, m, x)
    assert rep.extra["lhs"] == pytest.approx(lhs, abs=1e-12)
    a = 2 * r * K / p
    sn, cn, dn = (oracles.ellipfun(f, a, m) for f in ("sn", "cn", "dn"))
    assert rep.extra["rhs"] == pytest.approx(p * (dn - cn / sn * oracles.zeta(a, m)), abs=1e-12)


def test_dn_pair_sum_twenty_x():
    for x in np.linspace(-3, 3, 20):
        for p in (3, 4, 5):
            assert cyclic.evaluate_identity("eq86", p, 1, 0.7, x).max_residual < 1e-9


@pytest.mark.parametrize("ident", IDS)
def test_rotation_invariance(ident):
    row = cyclic.CATALOG[cyclic.IdentityId(ident)]
    for p, r in list(_applicable_cases(row, 5))[:4]:
        for x in XS:
            try:
                a = cyclic.evaluate_identity(ident, p, r, 0.5, x)
                b = cyclic.evaluate_identity(ident, p, r, 0.5, x, start=2)
            except PoleError:
                continue
            assert abs(a.max_residual - b.max_residual) < 1e-12


def test_index_wrap_breaks_sn_cn_identities():
    rep = cyclic.evaluate_identity("eq85", 5, 1, 0.5, 0.4, index_mode="wrap")
    assert rep.max_residual > 1e-3
    assert cyclic.evaluate_identity("eq85", 5, 1, 0.5, 0.4).passed


def test_even_p_bare_x_reading():
    rep = cyclic.evaluate_case("f11", 4, 1, 0.5, XS)
    assert rep.passed
    assert rep.extra["passing_readings"] == ["validated"]


def test_applicability_and_domain():
    with pytest.raises(ApplicabilityError):
        cyclic.evaluate_identity("f7", 4, 1, 0.5, 0.1)
    with pytest.raises(ApplicabilityError):
        cyclic.evaluate_identity("f11", 4, 2, 0.5, 0.1)
    with pytest.raises(DomainError):
        cyclic.evaluate_identity("f1", 4, 4, 0.5, 0.1)
    with pytest.raises(DomainError):
        cyclic.evaluate_identity("f1", 4, 1, 0.0, 0.1)
    rep = cyclic.evaluate_case("f7", 4, 1, 0.5, XS)
    assert rep.status == "error" and rep.extra["applicable"] is False


def test_pattern_parser():
    assert cyclic.parse_pattern("dn^2[0]*dn[+1] - sn[-1]") == [
        (1, [("dn", 2, 0), ("dn", 1, 1)]), (-1, [("sn", 1, -1)])]
    with pytest.raises(ValueError):
        cyclic.parse_pattern("tan[0]")


def test_sweep_order_is_deterministic_with_threads():
    a = cyclic.catalog_sweep(range(2, 5), (0.3,), XS, ids=["f1", "f2", "eq86"])
    b = cyclic.catalog_sweep(range(2, 5), (0.3,), XS, ids=["f1", "f2", "eq86"], workers=4)
    assert [(r.id, r.params, r.max_residual) for r in a] == [(r.id, r.params, r.max_residual) for r in b]
    assert cyclic.catalog_sweep(range(2, 5), (0.3,), []) == []
