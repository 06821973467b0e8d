import math

import pytest
from hypothesis import given, settings, strategies as st

from oracles import composite_simpson
from topoqsl.bath import BathKind, BathParams, decay_factor, decay_state
from topoqsl.errors import FrozenDynamicsError, QuadratureError
from topoqsl.qsl import (
    QslResult,
    QuadratureControl,
    ScanAxis,
    Window,
    adaptive_simpson,
    averaged_norms,
    qsl_closed_form_max_coherent,
    qsl_ml,
    qsl_mt,
    qsl_unified,
    scan,
    _bound_time,
)
from topoqsl.qubit import MAXIMALLY_COHERENT, BlochVector


def rel_err(got, want):
    return abs(got - want) / max(abs(want), 1e-300)


def fermionic(s, b=0.4, **kw):
    return BathParams(kind=BathKind.FERMIONIC, s=s, b_field=b, **kw)


def bosonic(s, b=0.4, **kw):
    return BathParams(kind=BathKind.BOSONIC, s=s, b_field=b, **kw)


W11 = Window(tau=1.0, tau_d=1.0)


def abs_speed(params):
    return lambda t: abs(decay_state(params, t)[1])


# ---------------------------------------------------------------------------
# domain types


def test_window_validation():
    Window(tau=0.0, tau_d=0.5)
    with pytest.raises(ValueError, match="tau must be >= 0"):
        Window(tau=-0.1, tau_d=1.0)
    with pytest.raises(ValueError, match="tau_d must be > 0"):
        Window(tau=1.0, tau_d=0.0)


def test_quadrature_control_validation():
    with pytest.raises(ValueError):
        QuadratureControl(abs_tol=0.0)
    with pytest.raises(ValueError):
        QuadratureControl(rel_tol=-1.0)
    with pytest.raises(ValueError):
        QuadratureControl(max_depth=0)


def test_qsl_result_validation():
    with pytest.raises(ValueError):
        QslResult(ml=1.0, mt=0.5, unified=0.5, f_rel_purity=1.0,
                  alpha_at_tau=1.0, alpha_at_target=1.0,
                  ml_denominator=1.0, mt_denominator=1.0)
    with pytest.raises(ValueError):
        QslResult(ml=-1.0, mt=0.5, unified=0.5, f_rel_purity=1.0,
                  alpha_at_tau=1.0, alpha_at_target=1.0,
                  ml_denominator=1.0, mt_denominator=1.0)


# ---------------------------------------------------------------------------
# quadrature


def test_adaptive_simpson_polynomial_exact():
    got = adaptive_simpson(lambda t: t**3 - 2.0 * t + 1.0, 0.0, 2.0)
    assert got == pytest.approx(2.0, rel=1e-13)


def test_adaptive_simpson_sine():
    assert rel_err(adaptive_simpson(math.sin, 0.0, math.pi), 2.0) < 1e-10


def test_adaptive_simpson_degenerate_and_zero():
    assert adaptive_simpson(math.sin, 1.0, 1.0) == 0.0
    assert adaptive_simpson(lambda t: 0.0, 0.0, 3.0) == 0.0
    with pytest.raises(ValueError):
        adaptive_simpson(math.sin, 2.0, 1.0)


def test_adaptive_simpson_kinked_integrand():
    got = adaptive_simpson(lambda t: abs(t - math.e / 3.0), 0.0, 2.0)
    c = math.e / 3.0
    want = c * c / 2.0 + (2.0 - c) ** 2 / 2.0
    assert rel_err(got, want) < 1e-9


def test_adaptive_simpson_depth_exhaustion():
    ctl = QuadratureControl(abs_tol=1e-15, rel_tol=1e-15, max_depth=2)
    with pytest.raises(QuadratureError):
        adaptive_simpson(lambda t: abs(t - math.e / 3.0), 0.0, 2.0, ctl)


def test_adaptive_simpson_matches_refined_fixed_grid():
    # 10x-refined composite Simpson as the reference
    f = abs_speed(fermionic(0.5))
    refined = composite_simpson(f, 1.0, 2.0, 2000)
    assert rel_err(adaptive_simpson(f, 1.0, 2.0), refined) < 1e-8


# ---------------------------------------------------------------------------
# averaged norms


def test_averaged_norms_frozen_dynamics():
    ml_den, mt_den = averaged_norms(fermionic(1.0, b=0.0), MAXIMALLY_COHERENT, W11)
    assert (ml_den, mt_den) == (0.0, 0.0)


def test_averaged_norms_equatorial_relations():
    params = fermionic(1.5)
    ml_den, mt_den = averaged_norms(params, MAXIMALLY_COHERENT, W11)
    avg_speed = adaptive_simpson(abs_speed(params), 1.0, 2.0) / 1.0
    assert rel_err(ml_den, 0.5 * avg_speed) < 1e-8
    assert rel_err(mt_den, math.sqrt(2.0) * ml_den) < 1e-14


def test_averaged_norms_monotone_window_identity():
    # sub-Ohmic decay is monotone, so avg |da/dt| = |alpha(tau) - alpha(target)| / tau_d
    params = fermionic(0.5)
    avg = adaptive_simpson(abs_speed(params), 1.0, 2.0) / 1.0
    drop = decay_factor(params, 1.0) - decay_factor(params, 2.0)
    assert rel_err(avg, drop) < 1e-8


# ---------------------------------------------------------------------------
# bound times


def test_bounds_vanish_when_frozen():
    res = qsl_unified(fermionic(1.0, b=0.0), MAXIMALLY_COHERENT, W11)
    assert res.ml == res.mt == res.unified == 0.0
    assert res.f_rel_purity == 1.0
    assert res.alpha_at_tau == res.alpha_at_target == 1.0


def test_bound_time_inconsistency_guard():
    assert _bound_time(0.0, 0.0) == 0.0
    with pytest.raises(FrozenDynamicsError):
        _bound_time(1.0, 0.0)


def test_ml_equals_elementary_oracle_at_s2():
    # s = 2 is elementary: alpha(t) = exp(-32 pi B^2 (1 - e^(-t^2/4))) is
    # monotone on the window, so tau_qsl = tau_d * alpha(tau)
    want = math.exp(-32.0 * math.pi * 0.16 * (1.0 - math.exp(-0.25)))
    res = qsl_unified(fermionic(2.0), MAXIMALLY_COHERENT, W11)
    assert rel_err(res.unified, want) < 1e-9
    closed = qsl_closed_form_max_coherent(fermionic(2.0), W11)
    assert rel_err(closed, want) < 1e-9


def test_mt_is_ml_over_sqrt2():
    for params in (fermionic(0.7), bosonic(1.5), fermionic(2.5, b=0.9)):
        res = qsl_unified(params, MAXIMALLY_COHERENT, W11)
        assert rel_err(res.mt, res.ml / math.sqrt(2.0)) < 1e-12
        assert res.unified == res.ml  # ml is the tighter bound


def test_ml_mt_wrappers_match_unified():
    params = bosonic(2.0)
    res = qsl_unified(params, MAXIMALLY_COHERENT, W11)
    assert qsl_ml(params, MAXIMALLY_COHERENT, W11) == res.ml
    assert qsl_mt(params, MAXIMALLY_COHERENT, W11) == res.mt


@settings(max_examples=25, deadline=None)
@given(
    st.sampled_from([BathKind.FERMIONIC, BathKind.BOSONIC]),
    st.floats(0.1, 3.0),
    st.floats(0.05, 1.0),
    st.floats(0.0, 4.0),
)
def test_ml_tighter_and_below_driving_time(kind, s, b, tau):
    params = BathParams(kind=kind, s=s, b_field=b)
    w = Window(tau=tau, tau_d=1.0)
    res = qsl_unified(params, MAXIMALLY_COHERENT, w)
    assert res.ml >= res.mt
    assert res.unified <= w.tau_d + 1e-9


def test_bound_scales_with_vanishing_window():
    for tau_d in (1e-2, 1e-3):
        res = qsl_unified(fermionic(1.0), MAXIMALLY_COHERENT, Window(tau=1.0, tau_d=tau_d))
        assert res.unified <= tau_d * (1.0 + 1e-6)


def test_bounds_with_population_imbalance():
    # vz != 0 exercises the fermionic a^2 weighting in the generator norm
    v0 = BlochVector(0.4, 0.3, 0.6)
    res = qsl_unified(fermionic(1.2), v0, W11)
    assert 0.0 < res.unified <= 1.0 + 1e-9
    assert res.ml >= res.mt


def test_closed_form_is_frozen_at_zero_field():
    assert qsl_closed_form_max_coherent(fermionic(1.0, b=0.0), W11) == 0.0


def test_closed_form_reduces_to_alpha_on_monotone_windows():
    for params in (fermionic(0.5), fermionic(1.0), bosonic(1.5)):
        got = qsl_closed_form_max_coherent(params, W11)
        assert rel_err(got, decay_factor(params, 1.0)) < 1e-8


@pytest.mark.parametrize("kind", [BathKind.FERMIONIC, BathKind.BOSONIC])
@pytest.mark.parametrize("s", [0.3, 1.0, 2.5])
@pytest.mark.parametrize("tau", [0.2, 1.0, 4.0])
def test_closed_form_matches_pipeline(kind, s, tau):
    params = BathParams(kind=kind, s=s, b_field=0.4)
    w = Window(tau=tau, tau_d=1.0)
    closed = qsl_closed_form_max_coherent(params, w)
    unified = qsl_unified(params, MAXIMALLY_COHERENT, w).unified
    assert abs(closed - unified) <= 1e-8 * max(1.0, abs(closed), abs(unified))


# ---------------------------------------------------------------------------
# scans


def test_scan_single_zero_field_point():
    table = scan(fermionic(1.0), MAXIMALLY_COHERENT, W11, ScanAxis.B_FIELD, 0.0, 0.0, 1)
    assert len(table.rows) == 1
    row = table.rows[0]
    assert row.error is None
    assert (row.axis, row.value) == ("b", 0.0)
    assert row.result.unified == 0.0


def test_scan_ordering_and_both_kinds():
    table = scan(
        fermionic(1.0),
        MAXIMALLY_COHERENT,
        W11,
        ScanAxis.OHMIC_S,
        0.5,
        1.5,
        3,
        kinds=[BathKind.FERMIONIC, BathKind.BOSONIC],
    )
    assert len(table.rows) == 6
    keys = [(row.value, row.kind.value) for row in table.rows]
    assert keys == sorted(keys)
    assert keys[0] == (0.5, "bosonic") and keys[1] == (0.5, "fermionic")


def test_scan_records_row_errors_without_aborting():
    table = scan(fermionic(1.0), MAXIMALLY_COHERENT, W11, ScanAxis.OHMIC_S, -0.5, 0.5, 3)
    errors = [row for row in table.rows if row.error is not None]
    oks = [row for row in table.rows if row.error is None]
    assert len(errors) == 2 and "s must be > 0" in errors[0].error
    assert len(oks) == 1 and oks[0].value == 0.5


def test_scan_tau_axis_moves_window():
    table = scan(bosonic(2.5), MAXIMALLY_COHERENT, W11, ScanAxis.INITIAL_TAU, 5.0, 10.0, 6)
    values = [row.result.unified for row in table.rows]
    assert all(v > 0 for v in values)
    spread = (max(values) - min(values)) / (sum(values) / len(values))
    assert spread < 0.05  # bosonic coherence trapping plateau


def test_scan_concurrent_rows_match_sequential():
    args = (fermionic(1.0), MAXIMALLY_COHERENT, W11, ScanAxis.B_FIELD, 0.0, 1.0, 5)
    kinds = [BathKind.FERMIONIC, BathKind.BOSONIC]
    sequential = scan(*args, kinds=kinds, max_workers=1)
    threaded = scan(*args, kinds=kinds, max_workers=4)
    assert sequential == threaded


def test_scan_validation():
    with pytest.raises(ValueError):
        scan(fermionic(1.0), MAXIMALLY_COHERENT, W11, ScanAxis.B_FIELD, 1.0, 0.0, 3)
    with pytest.raises(ValueError):
        scan(fermionic(1.0), MAXIMALLY_COHERENT, W11, ScanAxis.B_FIELD, 0.0, 1.0, 0)
    with pytest.raises(ValueError):
        scan(fermionic(1.0), MAXIMALLY_COHERENT, W11, ScanAxis.B_FIELD, 0.0, 1.0, 1)
