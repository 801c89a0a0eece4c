import math

import pytest

from nuceft.errors import DomainError
from nuceft.models import (CONSTANTS, OpeParams, convert_length,
                           hopping_coefficient, pionless_params_for)
from nuceft.trotter import (compose_total_error, dynpi_p1_bound,
                            general_npfo_bound, ope_p1_bound,
                            pionless_p1_bound, pionless_p2_bound,
                            pionless_p2_coefficient, product_formula_error,
                            steps_for_budget, upsilon)
from nuceft.truncation import boson_cutoffs, realized_shells
from nuceft.verify import verify_trotter


def pionless_p1_reference(t, eta, params):
    """Second transcription of the first-order coefficient, kept deliberately
    independent of the implementation."""
    h = params.h
    C = params.C_slash
    D = params.D_slash
    interactions = (2 * abs(C) * math.floor(eta / 2)
                    + (2 * abs(3 * C + D) + abs(D)) * math.floor(eta / 3)
                    + (2 * abs(6 * C + 4 * D) + 4 * abs(D)) * math.floor(eta / 4))
    return t ** 2 * (15 * h ** 2 * eta + 6 * h * interactions)


def test_pionless_p1_double_entry():
    for a_L in (1.4, 2.2):
        params = pionless_params_for(a_L)
        for eta in (1, 2, 3, 4, 7, 40, 100):
            for t in (0.1, 0.7635238930596975, 2.0):
                want = pionless_p1_reference(t, eta, params)
                assert pionless_p1_bound(t, eta, params) == \
                    pytest.approx(want, rel=1e-12)


def test_pionless_p1_frozen_value():
    params = pionless_params_for(2.2)
    assert pionless_p1_bound(1.0, 40, params) == pytest.approx(199258.2306)
    assert pionless_p1_bound(1.0, 2, params) == pytest.approx(2621.1042)
    params14 = pionless_params_for(1.4)
    assert pionless_p1_bound(1.0, 2, params14) == pytest.approx(
        15829.372800000001)


def test_pionless_p2_frozen_value():
    params = pionless_params_for(2.2)
    assert pionless_p2_coefficient(40, params) == pytest.approx(
        6402608.657444999)
    assert pionless_p2_bound(0.5, 40, params) == pytest.approx(
        0.5 ** 3 * 6402608.657444999)


def test_pionless_bounds_scale_with_eta_floors():
    params = pionless_params_for(2.2)
    # below two fermions the interaction classes are empty
    lone = pionless_p1_bound(1.0, 1, params)
    assert lone == pytest.approx(15 * params.h ** 2)
    assert pionless_p1_bound(1.0, 0, params) == 0.0


def test_ope_p1_classes():
    params = OpeParams.from_lecs(2.2, 22.0)
    shells = realized_shells(22.0, 2.2)
    report = ope_p1_bound(1.0, 40, params, shells)
    # frozen total for the reference benchmark configuration
    assert report.total == pytest.approx(107429802320.93866, rel=1e-10)
    h = hopping_coefficient(2.2)
    assert report["kinetic_kinetic"] == pytest.approx(30 * h * h * 40)
    assert report["contact_contact"] == 0.0
    # every class is nonnegative and the long-range pairs dominate
    assert all(v >= 0 for _, v in report.classes)
    assert report["lr_lr_cross"] > report["kinetic_kinetic"]
    # quadratic eta scaling is absent: all classes are linear in eta
    double = ope_p1_bound(1.0, 80, params, shells)
    assert double.total == pytest.approx(2 * report.total, rel=1e-12)


def test_ope_p1_empty_shells():
    params = OpeParams.from_lecs(2.2, 2.2)
    report = ope_p1_bound(1.0, 4, params, [])
    assert report["kinetic_lr"] == 0.0
    assert report["lr_lr_same"] == 0.0
    assert report.total > 0  # contact pieces remain


def test_dynpi_p1_frozen_total():
    lecs = OpeParams.from_lecs(2.2, 2.2)
    from nuceft.models import DynPiParams
    eps_cut = (0.05 / 2) ** 2 / 2
    dig = boson_cutoffs(40, 400.0, eps_cut, 2.2, 10, lecs.C, lecs.C_I2)
    params = DynPiParams(2.2, lecs.C, lecs.C_I2, dig)
    report = dynpi_p1_bound(1.0, 40, params, dig, 10)
    assert report.total == pytest.approx(1.4949396544330846e+31, rel=1e-10)
    # the pure-boson class carries the only L dependence
    bigger = dynpi_p1_bound(1.0, 40, params, dig, 20)
    assert bigger["boson_kinetic_potential"] == pytest.approx(
        2 * report["boson_kinetic_potential"], rel=1e-12)
    assert bigger.total - bigger["boson_kinetic_potential"] == pytest.approx(
        report.total - report["boson_kinetic_potential"], rel=1e-12)


def test_general_npfo_bound_reference_values():
    # frozen: hand-audited products for small cases
    h = 10.58
    assert general_npfo_bound(1, [2, 2], [h, h], 2) == pytest.approx(
        h * h * (2 * 2 * 1 * 2 * 1 * 2 ** 2) * 2, rel=1e-12)
    with pytest.raises(DomainError):
        general_npfo_bound(1, [2], [1.0], 2)
    with pytest.raises(DomainError):
        general_npfo_bound(2, [2, 2, 0], [1, 1, 1], 2)


def test_by_hand_comparison():
    params = pionless_params_for(1.4)
    h, C, D = params.h, params.C_slash, params.D_slash
    general = (15 * general_npfo_bound(1, [2, 2], [h, h], 2)
               + 6 * (general_npfo_bound(1, [2, 4], [h, C / 2], 2)
                      + general_npfo_bound(1, [2, 6], [h, D / 6], 2)))
    manual = pionless_p1_bound(1.0, 2, params)
    assert general == pytest.approx(2603147.2128, rel=1e-9)
    assert manual == pytest.approx(15829.3728, rel=1e-9)
    assert general / manual > 50


def test_upsilon():
    assert upsilon(4) == 10
    assert upsilon(6) == 50
    with pytest.raises(DomainError):
        upsilon(3)
    with pytest.raises(DomainError):
        upsilon(2)


def test_product_formula_error_conventions():
    assert product_formula_error(1, 2.0, 5.0) == pytest.approx(2.0 ** 2 * 5 / 2)
    assert product_formula_error(2, 2.0, 5.0) == pytest.approx(2.0 ** 3 * 5)
    u = upsilon(4)
    assert product_formula_error(4, 0.5, 3.0) == pytest.approx(
        2 * u ** 5 * 0.5 ** 5 * 3 / 5)


def test_steps_for_budget_meets_budget_tightly():
    for p in (1, 2):
        for coeff in (10.0, 1e6):
            for budget in (1e-1, 1e-3):
                t = 0.76
                r = steps_for_budget(p, t, coeff, budget)
                assert r * product_formula_error(p, t / r, coeff) <= budget * (1 + 1e-12)
                if r > 1:
                    r2 = r - 1
                    assert r2 * product_formula_error(p, t / r2, coeff) > budget


def test_steps_for_budget_floor_at_one():
    assert steps_for_budget(1, 0.1, 1e-6, 1.0) == 1
    with pytest.raises(DomainError):
        steps_for_budget(1, 0.1, 1.0, 0.0)


def test_compose_total_error_channels():
    led = compose_total_error("evolution", "pionless", 0.1, "fault-tolerant")
    assert led == {"prod": pytest.approx(0.05), "syn": pytest.approx(0.05)}
    led = compose_total_error("evolution", "pionless", 0.1, "near-term")
    assert led == {"prod": pytest.approx(0.1)}
    led = compose_total_error("evolution", "ope", 0.1, "fault-tolerant")
    assert set(led) == {"prod", "trunc", "syn"}
    assert sum(led.values()) == pytest.approx(0.1)
    led = compose_total_error("evolution", "dynpi", 0.1, "near-term")
    assert led["prod"] == pytest.approx(0.05)
    # the state-overlap share converts quadratically to a trace-distance cut
    assert led["eps_cut"] == pytest.approx((0.05 / 2) ** 2 / 2)


def test_oracle_dominance_suite():
    for name, ok, detail in verify_trotter():
        assert ok, f"{name}: {detail}"
