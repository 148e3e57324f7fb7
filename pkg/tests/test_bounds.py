"""Unconditional and two-sided-coefficient bounds on the squared distance."""

import math

import numpy as np
import pytest

import spandist as sd
from spandist import BoundMethod, Field, IntervalData, VectorSystem, vector

from conftest import random_rows


# d^2 = 1 for the worked example; the five bound values are hand-derived.
FIXED_POINT_TABLE = {
    BoundMethod.TOTAL_NORM: 4.0 / 3.0,
    BoundMethod.OFFDIAG_FROBENIUS: (1.0 + 3.0 * math.sqrt(2.0)) / (2.0 + math.sqrt(2.0)),
    BoundMethod.OFFDIAG_MAX: 4.0 / 3.0,
    BoundMethod.ROW_SUMS: 4.0 / 3.0,
    BoundMethod.FROBENIUS: 3.0 - 5.0 / math.sqrt(7.0),
}

BOUND_FNS = {
    BoundMethod.TOTAL_NORM: sd.bound_total_norm,
    BoundMethod.OFFDIAG_FROBENIUS: sd.bound_offdiag_frobenius,
    BoundMethod.OFFDIAG_MAX: sd.bound_offdiag_max,
    BoundMethod.ROW_SUMS: sd.bound_row_sums,
    BoundMethod.FROBENIUS: sd.bound_frobenius,
}


@pytest.mark.parametrize("method", list(FIXED_POINT_TABLE))
def test_fixed_point_table(system_b, x_b, method):
    got = BOUND_FNS[method](system_b, x_b)
    assert got == pytest.approx(FIXED_POINT_TABLE[method], abs=1e-12)


def test_full_report_on_worked_example(system_b, x_b):
    report = sd.full_bound_report(system_b, x_b)
    assert report.exact_d2 == pytest.approx(1.0, abs=1e-12)
    assert [e.method for e in report.entries] == list(sd.bounds.UNCONDITIONAL_METHODS)
    for entry in report.entries:
        assert entry.value == pytest.approx(FIXED_POINT_TABLE[entry.method], abs=1e-12)
        assert entry.slack >= 0.0
        assert entry.tightness == pytest.approx(
            (entry.value - report.exact_d2) / (1.0 + report.exact_d2))
    assert report.entry(BoundMethod.TOTAL_NORM).strict_expected


@pytest.mark.parametrize("field", [Field.REAL, Field.COMPLEX])
@pytest.mark.parametrize("seed", range(4))
def test_bounds_dominate_exact_distance(field, seed):
    cfg = sd.GeneratorConfig(seed=seed, trials=5, dim=6, n=3, field=field, conditioning=30.0)
    for trial in range(cfg.trials):
        inst = sd.generate_instance(cfg, trial)
        exact = sd.distance_sq_oracle(inst.system, inst.x)
        for fn in BOUND_FNS.values():
            assert fn(inst.system, inst.x) >= exact - 1e-10 * (1.0 + exact)


@pytest.mark.parametrize("field", [Field.REAL, Field.COMPLEX])
def test_orthonormal_collapse_closed_forms(field):
    cfg = sd.GeneratorConfig(seed=13, trials=5, dim=6, n=4, field=field, orthonormal=True)
    for trial in range(cfg.trials):
        inst = sd.generate_instance(cfg, trial)
        s = float(sum(abs(b) ** 2 for b in sd.exact_distance(inst.system, inst.x).beta))
        bessel = sd.norm_sq(inst.x) - s
        n = inst.system.n
        scale = 1e-10 * (1.0 + bessel + s)
        assert abs(sd.bound_offdiag_frobenius(inst.system, inst.x) - bessel) <= scale
        assert abs(sd.bound_offdiag_max(inst.system, inst.x) - bessel) <= scale
        assert abs(sd.bound_row_sums(inst.system, inst.x) - bessel) <= scale
        assert abs(sd.bound_total_norm(inst.system, inst.x)
                   - (bessel + s * (1.0 - 1.0 / n))) <= scale
        assert abs(sd.bound_frobenius(inst.system, inst.x)
                   - (bessel + s * (1.0 - 1.0 / math.sqrt(n)))) <= scale


def test_bounds_reject_orthogonal_x(system_b):
    x = vector([0.0, 0.0, 1.0])
    with pytest.raises(sd.OrthogonalComplementError):
        sd.bound_total_norm(system_b, x)


def test_bounds_reject_dependent_system():
    system = VectorSystem.from_rows([[1.0, 0.0], [2.0, 0.0]])
    with pytest.raises(sd.LinearDependenceError):
        sd.bound_frobenius(system, vector([1.0, 1.0]))


@pytest.mark.parametrize("rhs_fn, bound_fn", [
    (sd.bessel_rhs_offdiag_frobenius, sd.bound_offdiag_frobenius),
    (sd.bessel_rhs_offdiag_max, sd.bound_offdiag_max),
    (sd.bessel_rhs_row_sums, sd.bound_row_sums),
])
def test_bessel_refinements_dominate_coefficient_energy(rhs_fn, bound_fn):
    rng = np.random.default_rng(41)
    for _ in range(5):
        system = VectorSystem.from_rows(random_rows(rng, 4, 6, Field.COMPLEX))
        x = vector(random_rows(rng, 1, 6, Field.COMPLEX)[0])
        s = float(sum(abs(sd.inner_product(x, v)) ** 2 for v in system.vectors))
        assert rhs_fn(system, x) >= s - 1e-10 * (1.0 + s)


def test_bessel_refinements_allow_dependent_systems():
    system = VectorSystem.from_rows([[1.0, 0.0], [2.0, 0.0]])
    x = vector([1.0, 1.0])
    s = 1.0 + 4.0
    assert sd.bessel_rhs_row_sums(system, x) >= s - 1e-12


# --- two-sided coefficient condition ------------------------------------------


@pytest.fixture
def planar():
    """{e1, e2} in R^3 with x = (1,1,1) and coefficient box [0,2]^2."""
    system = VectorSystem.from_rows(np.eye(3)[:2])
    x = vector([1.0, 1.0, 1.0])
    iv = IntervalData(gammas=(0.0, 0.0), Gammas=(2.0, 2.0))
    return system, x, iv


def test_condition_verdict_hand_example(planar):
    system, x, iv = planar
    v = sd.condition_verdict(system, x, iv)
    # Re<(2,2,0)-(1,1,1), (1,1,1)-(0,0,0)> = (1,1,-1).(1,1,1) = 1
    assert v.re_inner == pytest.approx(1.0, abs=1e-12)
    assert v.holds
    assert v.forms_agree


def test_conditional_bounds_hand_example(planar):
    system, x, iv = planar
    # quarter of ||sum (Gamma_i - gamma_i) x_i||^2 = ||(2,2,0)||^2 / 4 = 2
    assert sd.bound_cond_half_width(system, x, iv) == pytest.approx(2.0, abs=1e-12)
    for method in sd.bounds.CONDITIONAL_METHODS:
        if method is BoundMethod.COND_HALF_WIDTH:
            continue
        assert sd.bound_cond_relaxed(system, x, iv, method) == pytest.approx(2.0, abs=1e-12)
    # and they all dominate the true squared distance, which is 1
    assert sd.distance_sq_oracle(system, x) == pytest.approx(1.0, abs=1e-12)


def test_condition_violation_detected():
    system = VectorSystem.from_rows(np.eye(2))
    x = vector([10.0, 10.0])  # far outside the coefficient box
    iv = IntervalData(gammas=(0.0, 0.0), Gammas=(1.0, 1.0))
    v = sd.condition_verdict(system, x, iv)
    assert not v.holds
    assert v.forms_agree
    with pytest.raises(sd.ConditionNotSatisfiedError):
        sd.bound_cond_half_width(system, x, iv)


def test_half_width_bound_is_tightest_relaxation():
    cfg = sd.GeneratorConfig(seed=19, trials=6, dim=5, n=3, field=sd.Field.COMPLEX,
                             conditioning=50.0, intervals=True)
    for trial in range(cfg.trials):
        inst = sd.generate_instance(cfg, trial)
        base = sd.bound_cond_half_width(inst.system, inst.x, inst.intervals)
        for method in (BoundMethod.COND_OFFDIAG_MAX, BoundMethod.COND_OFFDIAG_FROBENIUS,
                       BoundMethod.COND_ROW_SUMS):
            relaxed = sd.bound_cond_relaxed(inst.system, inst.x, inst.intervals, method)
            assert base <= relaxed * (1 + 1e-10) + 1e-12


def test_full_report_includes_conditional_entries(planar):
    system, x, iv = planar
    report = sd.full_bound_report(system, x, iv)
    methods = [e.method for e in report.entries]
    assert methods == list(sd.bounds.UNCONDITIONAL_METHODS) + list(sd.bounds.CONDITIONAL_METHODS)


def test_interval_data_validation():
    with pytest.raises(ValueError):
        IntervalData(gammas=(0.0,), Gammas=(1.0, 2.0))  # length mismatch
    with pytest.raises(ValueError):
        IntervalData(gammas=(), Gammas=())
    with pytest.raises(ValueError):
        IntervalData(gammas=(math.nan,), Gammas=(1.0,))
    # reversed endpoints are legal data (scalars may be complex, so there is
    # no ordering to enforce); the condition check is what rejects them
    IntervalData(gammas=(3.0,), Gammas=(1.0,))


# --- reverse inequality for orthonormal systems --------------------------------


def test_reverse_bessel_gap_orthonormal():
    system = VectorSystem.from_rows(np.eye(3)[:2])
    x = vector([1.0, 1.0, 0.5])
    iv = IntervalData(gammas=(0.0, 0.0), Gammas=(2.0, 2.0))
    v = sd.reverse_bessel_gap(system, x, iv)
    assert v.holds
    assert v.bessel_gap == pytest.approx(0.25, abs=1e-12)
    assert v.quarter_width_sq == pytest.approx(2.0, abs=1e-12)


def test_reverse_bessel_sharpness():
    # single basis vector, x = e1 + e2, coefficient interval [0, 2]:
    # gap = ||x||^2 - |<x,e1>|^2 = 1 equals a quarter of |2 - 0|^2 = 1
    system = VectorSystem.from_rows(np.eye(2)[:1])
    x = vector([1.0, 1.0])
    iv = IntervalData(gammas=(0.0,), Gammas=(2.0,))
    v = sd.reverse_bessel_gap(system, x, iv)
    assert v.holds
    assert v.bessel_gap == pytest.approx(v.quarter_width_sq, abs=1e-12)


def test_reverse_bessel_requires_orthonormal(system_b, x_b):
    iv = IntervalData(gammas=(0.0, 0.0), Gammas=(2.0, 2.0))
    with pytest.raises(sd.NotOrthonormalError):
        sd.reverse_bessel_gap(system_b, x_b, iv)
