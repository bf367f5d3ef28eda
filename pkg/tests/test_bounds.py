"""Order bounds: closed form, certificates, LP evaluation/optimization,
integrality cuts, diameter and defect bounds, duality, and inversion."""

import math
from fractions import Fraction

import pytest

from hyplp.bounds import (BoundResult, DssCheck, LPConditionError, Refinement,
                          biregular_bound, closed_form_h_bound,
                          defect_lower_bounds, defect_region,
                          diameter_order_bound, dss_gen_bound,
                          duality_transform, feng_li_threshold, imp2_bound,
                          integrality_refinements, largest_divisible_order,
                          lp_bound_evaluate, lp_bound_optimize, moore_order,
                          ru1_bound, select_diameter, strictly_below_int,
                          tau2_lower)
from hyplp.orthopoly import FPoly, Params, largest_zero_G

P32 = Params(3, 2)
P33 = Params(3, 3)
SQRT2 = math.sqrt(2.0)
SQRT3 = math.sqrt(3.0)

PETERSEN_CERT = FPoly(P32, (Fraction(5), Fraction(5), Fraction(3), Fraction(1)))


def test_moore_order_values():
    assert [moore_order(P32, d) for d in range(4)] == [1, 4, 10, 22]
    assert moore_order(P33, 2) == 31
    assert moore_order(Params(4, 2), 4) == 161


def test_select_diameter():
    assert select_diameter(P32, -1) == 1
    assert select_diameter(P32, -3) == 1
    assert select_diameter(P32, 1) == 2
    assert select_diameter(P32, 1 + 1e-12) == 2
    assert select_diameter(P32, 1.2) == 3
    assert select_diameter(P32, SQRT2) == 3


def test_closed_form_petersen_point():
    b = closed_form_h_bound(P32, 1)
    assert b.value == 10
    assert b.theorem == "CLOSED_FORM"
    assert b.params["d"] == 2 and b.params["c"] == 1
    assert b.certificate is not None
    assert b.certificate.coeffs == (5, 5, 3, 1)


def test_closed_form_exact_c_values():
    b = closed_form_h_bound(Params(5, 3), 2)
    assert b.value == 41 and b.params["c"] == Fraction(8, 3)
    b = closed_form_h_bound(P33, 2)
    assert b.value == 25 and b.params["c"] == Fraction(4, 3)
    b = closed_form_h_bound(P33, 0)
    assert b.value == 11 and b.params == {"r": 3, "u": 3, "theta": 0, "d": 2, "c": 6}


def test_closed_form_float_theta():
    b = closed_form_h_bound(Params(4, 2), SQRT2)
    assert b.value == pytest.approx(19.108834, abs=1e-5)
    # heawood meets the (3, 2) bound at sqrt(2): d = 3, c = 3, order 14
    b = closed_form_h_bound(P32, SQRT2)
    assert b.params["d"] == 3
    assert b.params["c"] == pytest.approx(3.0, abs=1e-9)
    assert b.value == pytest.approx(14.0, abs=1e-8)


def test_closed_form_low_theta_degenerates_to_d1():
    assert closed_form_h_bound(P32, -3).value == 2
    b = closed_form_h_bound(P32, -2)
    assert b.value == Fraction(5, 2) and b.params["c"] == 2


def test_closed_form_exact_and_float_paths_agree():
    for r, u, th in [(3, 2, Fraction(1, 2)), (4, 3, Fraction(3, 2)),
                     (3, 3, Fraction(-1, 3))]:
        p = Params(r, u)
        exact = closed_form_h_bound(p, th)
        approx = closed_form_h_bound(p, float(th))
        assert float(exact.value) == pytest.approx(approx.value, abs=1e-8)


def test_closed_form_domain_errors():
    with pytest.raises(ValueError):
        closed_form_h_bound(P32, 2 * SQRT2)  # at the spectral top
    with pytest.raises(ValueError):
        closed_form_h_bound(P32, -3.5)  # below -k


def test_certificate_reevaluates_to_same_bound():
    b = lp_bound_evaluate(P32, PETERSEN_CERT, taus=[1, -2])
    assert b.value == 10
    assert any("equality conditions met" in note for note in b.notes)
    assert any("girth >= 4" in note for note in b.notes)


def test_lp_evaluate_rejects_broken_hypotheses():
    with pytest.raises(LPConditionError) as e:
        lp_bound_evaluate(P32, FPoly(P32, (Fraction(0), Fraction(1))), taus=[-1])
    assert "f_0 > 0" in str(e.value)
    with pytest.raises(LPConditionError):
        lp_bound_evaluate(P32, FPoly(P32, (Fraction(1), Fraction(-1))), taus=[-1])
    with pytest.raises(LPConditionError):
        lp_bound_evaluate(P32, PETERSEN_CERT, taus=[3])  # f(3) = 50 > 0
    with pytest.raises(LPConditionError):
        lp_bound_evaluate(P32, PETERSEN_CERT, theta=2.0)  # positive inside interval
    with pytest.raises(ValueError):
        lp_bound_evaluate(P32, PETERSEN_CERT, taus=[1, 1])
    with pytest.raises(ValueError):
        lp_bound_evaluate(P32, PETERSEN_CERT)
    with pytest.raises(ValueError):
        lp_bound_evaluate(P32, PETERSEN_CERT, taus=[1], theta=1)
    with pytest.raises(ValueError):
        lp_bound_evaluate(Params(4, 2), PETERSEN_CERT, taus=[1])


def test_lp_evaluate_interval_mode_exact_value():
    f = FPoly(Params(6, 2), (Fraction(153, 2), Fraction(64), Fraction(121, 4),
                             Fraction(9), Fraction(1)))
    b = lp_bound_evaluate(Params(6, 2), f, theta=2)
    assert b.value == Fraction(136, 3)
    assert any("certified on [-6.0, 2.0]" in note for note in b.notes)
    assert any("vanishes at theta" in note for note in b.notes)


def test_lp_optimize_recovers_petersen_point():
    b = lp_bound_optimize(P32, 1.0, 4)
    assert 10 - 1e-4 <= b.value <= 10.01
    assert b.theorem == "LP_OPT"
    assert b.certificate is not None
    # the reported value must re-verify from the stored certificate
    again = lp_bound_evaluate(P32, b.certificate, theta=1.0)
    assert again.value == b.value


def test_lp_optimize_beats_closed_form_when_it_can():
    closed = closed_form_h_bound(Params(4, 2), SQRT2)
    b = lp_bound_optimize(Params(4, 2), SQRT2, 6)
    assert b.value <= 19.15
    assert float(b.value) < float(closed.value)
    assert b.value >= 18.4


def test_lp_optimize_matches_closed_form_when_it_cannot():
    # at (3, 3, sqrt3) the closed-form certificate is already LP-optimal
    closed = closed_form_h_bound(P33, SQRT3)
    b = lp_bound_optimize(P33, SQRT3, 8)
    assert b.value <= 20.86
    assert float(b.value) >= float(closed.value) - 1e-3
    assert float(closed.value) == pytest.approx(20.856406, abs=1e-5)


def test_lp_optimize_input_validation():
    with pytest.raises(ValueError):
        lp_bound_optimize(P32, 1.0, 0)
    with pytest.raises(ValueError):
        lp_bound_optimize(P32, 3.0, 4)
    with pytest.raises(ValueError):
        lp_bound_optimize(P32, -3.5, 4)


def test_strictly_below_and_divisibility():
    assert strictly_below_int(5) == 4
    assert strictly_below_int(5.0) == 4
    assert strictly_below_int(5.3) == 5
    assert strictly_below_int(Fraction(136, 3)) == 45
    assert largest_divisible_order(41, 5, 3) == 39
    assert largest_divisible_order(24.7, 3, 3) == 24
    assert largest_divisible_order(Fraction(49, 2), 3, 2) == 24


def test_integrality_refinement_chain():
    b = integrality_refinements(closed_form_h_bound(P33, 2), P33)
    assert b.value == 24
    assert [s.name for s in b.refinements] == ["c-integrality", "divisibility"]
    assert (b.refinements[0].before, b.refinements[0].after) == (25, 24)
    b = integrality_refinements(closed_form_h_bound(Params(5, 3), 2), Params(5, 3))
    assert b.value == 39
    b = integrality_refinements(closed_form_h_bound(P32, 1), P32)
    assert b.value == 10  # integer c: no strict cut, divisibility already met


def test_feng_li_threshold_values():
    assert feng_li_threshold(P32, 1) == pytest.approx(1.0)
    assert feng_li_threshold(P33, 1) == pytest.approx(2.0)
    with pytest.raises(ValueError):
        feng_li_threshold(P32, 0)


def test_diameter_order_bound():
    b = diameter_order_bound(P32, 1)
    assert b.value == 10 and b.params["equality_possible"]
    assert diameter_order_bound(P33, 1).value == 31
    assert not diameter_order_bound(P33, 1).params["equality_possible"]
    assert diameter_order_bound(Params(4, 2), 2).value == 161
    with pytest.raises(ValueError):
        diameter_order_bound(Params(2, 2), 1)
    with pytest.raises(ValueError):
        diameter_order_bound(P32, 0)


def test_dss_check_petersen_tight():
    for lam in (1, -2):
        chk = dss_gen_bound(P32, 2, 10, lam)
        assert chk.passed and chk.slack == 0
        assert chk.order_bound == 10


def test_dss_check_failure_reports_order_cap():
    chk = dss_gen_bound(Params(5, 2), 2, 32, 2)
    assert not chk.passed
    assert chk.slack == -8
    assert chk.order_bound == 24
    with pytest.raises(ValueError):
        dss_gen_bound(P32, 2, 10, 3)  # lam = k
    with pytest.raises(ValueError):
        dss_gen_bound(P32, 0, 10, 1)


def test_imp2_cases():
    b = imp2_bound(Params(8, 2), 2, 2.19258)
    assert b.params["case"] == "between"
    assert b.value == pytest.approx(64.99977, abs=1e-3)
    b = imp2_bound(P32, 2, 0.5)
    assert b.params["case"] == "between"
    assert b.params["c"] == pytest.approx(11 / 6, abs=1e-9)
    assert b.value == pytest.approx(4 + 6 / (11 / 6), abs=1e-9)
    b = imp2_bound(P32, 2, -1.0)
    assert b.params["case"] == "at-or-below-lambda_{d-1}"
    assert b.value == 4
    b = imp2_bound(P32, 2, 1.5)
    assert b.params["case"] == "at-or-above-lambda_d"
    assert b.value == pytest.approx(10 - 1.75, abs=1e-9)


def test_imp2_between_stays_below_comparison():
    # the "between" branch must not exceed moore(d) + G_d(tau2)
    for r, u in [(3, 2), (4, 2), (3, 3)]:
        p = Params(r, u)
        for d in (2, 3):
            lo = largest_zero_G(p, d - 1)
            hi = largest_zero_G(p, d)
            for t in range(1, 10):
                tau = lo + (hi - lo) * t / 10
                imp2_bound(p, d, tau)  # raises if the comparison fails


def test_defect_region_collapses_at_zero():
    for p, d in [(Params(8, 2), 2), (P32, 3), (Params(4, 2), 4)]:
        lower, mid, upper = defect_region(p, d, 0)
        assert mid == pytest.approx(largest_zero_G(p, d), abs=1e-8)
        assert lower == pytest.approx(mid, abs=1e-6)
        assert upper == pytest.approx(mid, abs=1e-6)


def test_defect_region_widens_with_defect():
    p = Params(8, 2)
    prev_lower, _, prev_upper = defect_region(p, 2, 0)
    for e in (2, 5, 8, 20):
        lower, _, upper = defect_region(p, 2, e)
        assert lower < prev_lower and upper > prev_upper
        prev_lower, prev_upper = lower, upper


def test_defect_region_known_row():
    lower, mid, upper = defect_region(Params(8, 2), 2, 8)
    assert lower == pytest.approx(2.09503, abs=5e-6)
    assert mid == pytest.approx(2.19258, abs=5e-6)
    assert upper == pytest.approx(3.40512, abs=5e-6)


def test_defect_region_validation():
    with pytest.raises(ValueError):
        defect_region(P32, 1, 0)
    with pytest.raises(ValueError):
        defect_region(P32, 2, -1)
    with pytest.raises(ValueError):
        defect_region(P32, 2, 6)  # cap is k*q = 6


def test_defect_lower_bounds_inverts_the_region():
    for p, d in [(Params(8, 2), 2), (P32, 3)]:
        for e in (1.0, 3.0, 5.0):
            lower, _, upper = defect_region(p, d, e)
            assert defect_lower_bounds(p, d, lower) == pytest.approx(e, abs=1e-6)
            assert defect_lower_bounds(p, d, upper) == pytest.approx(e, abs=1e-6)


def test_defect_lower_bounds_extremes():
    assert defect_lower_bounds(P32, 2, 1.0) == pytest.approx(0.0, abs=1e-9)
    assert defect_lower_bounds(P32, 2, -1.5) == 6.0  # full k*q below lambda_1


def test_duality_transform_involution():
    r2, u2, th2, scale = duality_transform(4, 3, 1)
    assert (r2, u2, th2, scale) == (3, 4, 2, Fraction(3, 4))
    r3, u3, th3, scale2 = duality_transform(r2, u2, th2)
    assert (r3, u3, th3) == (4, 3, 1)
    assert scale * scale2 == 1
    with pytest.raises(ValueError):
        duality_transform(1, 3, 0)


def test_ru1_bound_availability():
    b = ru1_bound(16, 3)
    assert b is not None and b.value == 51
    assert ru1_bound(15, 3) is None
    assert ru1_bound(24, 4).value == 100
    with pytest.raises(ValueError):
        ru1_bound(5, 2)


def test_tau2_lower_examples():
    assert tau2_lower(P32, 10)[:2] == (2, 1)
    assert tau2_lower(P32, 10)[2] == pytest.approx(1.0, abs=1e-9)
    d, c, lam = tau2_lower(P32, 4)
    assert (d, c) == (1, 1) and lam == -1.0
    d, c, lam = tau2_lower(P32, 2)
    assert (d, c) == (1, 3) and lam == -3.0
    d, c, lam = tau2_lower(Params(4, 3), 15)
    assert (d, c) == (2, 8)
    assert lam == pytest.approx(0.0, abs=1e-9)
    d, c, lam = tau2_lower(P33, 9)
    assert (d, c) == (2, 12)
    assert lam == pytest.approx((-11 + math.sqrt(97)) / 2, abs=1e-9)
    with pytest.raises(ValueError):
        tau2_lower(P32, 1)


def test_order_to_tau2_and_back():
    # h_bound(tau2_lower(n)) returns n for orders between Moore levels
    for r, u in [(3, 2), (4, 2), (3, 3), (4, 3)]:
        p = Params(r, u)
        for n in range(3, 40, 3):
            d, c, lam = tau2_lower(p, n)
            back = closed_form_h_bound(p, lam)
            assert float(back.value) == pytest.approx(n, rel=1e-6), (r, u, n)


def test_closed_form_monotone_in_theta():
    for r, u in [(3, 2), (3, 3)]:
        p = Params(r, u)
        top = u - 2 + 2 * math.sqrt((r - 1) * (u - 1))
        prev = 0.0
        for t in range(60):
            th = -r + (top - 0.01 + r) * t / 59
            v = float(closed_form_h_bound(p, th).value)
            assert v >= prev - 1e-7, (r, u, th)
            prev = v


def test_biregular_bound_scales():
    base = closed_form_h_bound(P32, 1)
    assert biregular_bound(P32, base) == 25
    floatbase = BoundResult(10.0, "CLOSED_FORM", {})
    assert biregular_bound(P32, floatbase) == pytest.approx(25.0)


def test_bound_result_rejects_non_finite():
    with pytest.raises(ValueError):
        BoundResult(math.inf, "X", {})


def test_refinement_records_are_frozen():
    ref = Refinement("c-integrality", 25, 24)
    with pytest.raises(AttributeError):
        ref.after = 23
    chk = DssCheck(True, 0, 10)
    with pytest.raises(AttributeError):
        chk.passed = False
