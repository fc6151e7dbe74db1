import math

import pytest

import oracles
from landen_kit import DomainError, NonConservation, ParityError, RangeError
from landen_kit import sg_oracle as sg


def test_sech_kink_has_C_two():
    c = sg.compute_C(sg.base_profile("sech"))
    assert c.C == pytest.approx(2.0, abs=1e-12)
    assert c.family is sg.Family.sech


@pytest.mark.parametrize("mt", [0.1, 0.5, 0.9])
def test_single_term_constants(mt):
    dn = sg.compute_C(sg.base_profile("dn", mt))
    assert dn.C == pytest.approx(4 * mt - 2, abs=1e-12) and dn.family is sg.Family.dn_type
    cn = sg.compute_C(sg.base_profile("cn", mt))
    assert cn.C == pytest.approx(4 / mt - 2, rel=1e-12) and cn.family is sg.Family.cn_type
    sn = sg.compute_C(sg.base_profile("sn", mt))
    assert sg.infer_m_tilde_from_C(sn, sg.Family.sn_type) == pytest.approx(mt, abs=1e-12)


@pytest.mark.parametrize("form", sg.FORMS)
def test_superposition_m_tilde_against_nome(form):
    parity = {"eq31": 1, "eq50": 1, "eq36": 0, "eq54": 0}.get(form)
    for p in range(2, 8):
        if parity is not None and p % 2 != parity:
            continue
        for m in (0.2, 0.7):
            prof = sg.build_superposition(form, p, m)
            c = sg.compute_C(prof)
            mt = sg.infer_m_tilde_from_C(c, sg.FORM_BRANCH[form][1])
            assert mt == pytest.approx(oracles.landen_m_tilde(p, m), rel=1e-9, abs=1e-15)


def test_table1_example_through_C():
    c = sg.compute_C(sg.build_superposition("eq22", 4, 0.75))
    assert sg.infer_m_tilde_from_C(c, "dn_type") == pytest.approx(8.6655e-4, rel=1e-4)
    c = sg.compute_C(sg.build_superposition("eq36", 2, 0.5))
    assert sg.infer_m_tilde_from_C(c, "cn_type") == pytest.approx(0.029437, rel=1e-4)


@pytest.mark.parametrize("form", sg.FORMS)
def test_ode_residual(form):
    p = 3 if form in ("eq22", "eq31", "eq50") else 4
    rep = sg.verify_ode_residual(sg.build_superposition(form, p, 0.5))
    assert rep.passed and rep.max_residual < 1e-5


def test_perturbed_profile_is_rejected():
    base = sg.base_profile("dn", 0.5)
    bad = sg.custom_profile(lambda x: base.psi(x) - 0.1, base.dpsi, branch="static", length=base.length)
    rep = sg.verify_ode_residual(bad, [0.9, 1.3, 1.8, 2.2])
    assert not rep.passed
    with pytest.raises(NonConservation):
        sg.compute_C(bad)


def test_parity_and_range_errors():
    with pytest.raises(ParityError):
        sg.build_superposition("eq31", 4, 0.5)
    with pytest.raises(ParityError):
        sg.build_superposition("eq54", 3, 0.5)
    with pytest.raises(RangeError):
        sg.infer_m_tilde_from_C(3.0, "dn_type")
    with pytest.raises(RangeError):
        sg.infer_m_tilde_from_C(1.0, "cn_type")
    with pytest.raises(DomainError):
        sg.TravelingWaveFrame(0.5)


def test_classification_ranges():
    assert sg.classify(1.0, sg.Branch.static) is sg.Family.dn_type
    assert sg.classify(5.0, sg.Branch.static) is sg.Family.cn_type
    assert sg.classify(1.0, sg.Branch.traveling) is sg.Family.sn_type
    assert sg.classify(5.0, sg.Branch.traveling) is sg.Family.sn_inverse


def test_traveling_field_solves_in_eta():
    prof = sg.base_profile("sn", 0.4)
    frame = sg.TravelingWaveFrame(2.0)
    field = sg.traveling_field(prof, frame)
    x, t = 0.7, 0.2
    assert field(x, t) == pytest.approx(2 * math.asin(prof.psi(frame.eta(x, t))), abs=1e-12)


def test_closed_form_C_agrees_with_sampled():
    for form, p in (("eq22", 3), ("eq31", 5), ("eq36", 2), ("eq50", 3), ("eq54", 4)):
        c = sg.compute_C(sg.build_superposition(form, p, 0.6))
        assert sg.closed_form_C(form, p, 0.6) == pytest.approx(c.C, rel=1e-9)


def test_oracle_battery_passes():
    reps = sg.oracle_battery("eq50", 5, 0.8)
    assert [r.status for r in reps] == ["pass", "pass", "pass"]
