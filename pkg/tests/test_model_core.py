import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from diskpower.model_core import (EMPIRICAL, THEORETICAL, DiskSpec, PowerModel,
                                  ValidationError, calibrate, power_ratio,
                                  predict_from_reference, preset,
                                  relative_power)


def spec(n=1, rpm=10000.0, d=2.6, **kw):
    return DiskSpec(model_id=kw.pop("model_id", "s"), platters=n, rpm=rpm,
                    diameter_in=d, **kw)


spec_strategy = st.builds(
    spec,
    n=st.integers(min_value=1, max_value=8),
    rpm=st.floats(min_value=100.0, max_value=200000.0),
    d=st.floats(min_value=0.5, max_value=6.0),
)


class TestValidation:
    def test_zero_platters_rejected(self):
        with pytest.raises(ValidationError) as exc:
            spec(n=0)
        assert exc.value.field_name == "platters"

    def test_nonpositive_rpm_rejected(self):
        with pytest.raises(ValidationError) as exc:
            spec(rpm=0)
        assert exc.value.field_name == "rpm"

    def test_nonpositive_diameter_rejected(self):
        with pytest.raises(ValidationError) as exc:
            spec(d=-1.0)
        assert exc.value.field_name == "diameter_in"

    def test_model_exponents_must_be_positive(self):
        with pytest.raises(ValidationError):
            PowerModel(rpm_exp=0.0)
        with pytest.raises(ValidationError):
            PowerModel(constant_k=-1.0)

    def test_unknown_preset(self):
        with pytest.raises(ValidationError):
            preset("nope")


class TestRelativePower:
    def test_identity_case(self):
        assert relative_power(spec(n=1, rpm=1, d=1), EMPIRICAL) == 1.0

    def test_linear_in_platters(self):
        assert relative_power(spec(n=2, rpm=1, d=1), EMPIRICAL) == 2.0

    def test_calibrated_reproduces_example1_row1(self):
        s = spec(rpm=15098, d=2.6, measured_watts=0.91)
        model = calibrate([s])
        assert relative_power(s, model) == pytest.approx(0.91, rel=1e-15)


class TestPowerRatio:
    def test_equal_specs_unit_ratio(self):
        a = spec(rpm=15098)
        assert power_ratio(a, a, EMPIRICAL) == 1.0

    def test_example1_row1(self):
        a, b = spec(rpm=15098), spec(rpm=16263)
        assert 0.91 * power_ratio(a, b) == pytest.approx(1.121, abs=1e-3)

    def test_example1_row2(self):
        a, b = spec(rpm=19972), spec(rpm=55819)
        assert 2 * power_ratio(a, b) == pytest.approx(35.550, abs=0.05)

    def test_independent_of_constant_k(self):
        a, b = spec(rpm=10000), spec(rpm=7200, d=3.5)
        expected = power_ratio(a, b, EMPIRICAL)
        for k in (0.001, 1.0, 42.0):
            model = PowerModel(constant_k=k)
            assert power_ratio(a, b, model) == expected  # bit-identical


class TestPredictFromReference:
    def test_example1_row1(self):
        got = predict_from_reference(spec(rpm=15098), 0.91, spec(rpm=16263))
        assert got == pytest.approx(1.121, rel=1e-3)

    def test_example1_row3(self):
        got = predict_from_reference(spec(rpm=55819), 35.55, spec(rpm=143470))
        assert got == pytest.approx(499.78, abs=0.5)

    def test_unit_ratio(self):
        s = spec(rpm=7200)
        assert predict_from_reference(s, 7.7, s) == 7.7

    def test_nonpositive_ref_watts(self):
        with pytest.raises(ValidationError):
            predict_from_reference(spec(), 0.0, spec())


class TestCalibrate:
    def test_empty_observations(self):
        with pytest.raises(ValidationError):
            calibrate([])

    def test_missing_watts_names_record(self):
        with pytest.raises(ValidationError) as exc:
            calibrate([spec(model_id="nowatts")])
        assert "nowatts" in str(exc.value)

    def test_unit_spec_gives_k_equal_watts(self):
        model = calibrate([spec(n=1, rpm=1, d=1, measured_watts=5.0)])
        assert model.constant_k == 5.0

    def test_duplicate_observations_idempotent(self):
        s = spec(rpm=15098, d=2.6, measured_watts=0.91)
        assert calibrate([s]).constant_k == calibrate([s, s]).constant_k

    def test_exponents_untouched(self):
        model = calibrate([spec(measured_watts=3.0)], THEORETICAL)
        assert (model.platter_exp, model.rpm_exp, model.diameter_exp) == (1, 3, 5)


# -- spec invariants as properties --------------------------------------

@given(a=spec_strategy, b=spec_strategy,
       k=st.floats(min_value=1e-16, max_value=1e3))
def test_ratio_prediction_consistency(a, b, k):
    model = PowerModel(constant_k=k)
    ratio = relative_power(b, model) / relative_power(a, model)
    assert ratio == pytest.approx(power_ratio(a, b, model), rel=1e-12)


@given(a=spec_strategy, b=spec_strategy, k=st.floats(min_value=1e-12, max_value=1e6))
def test_calibration_invariance_of_ratios(a, b, k):
    assert power_ratio(a, b, PowerModel(constant_k=k)) == power_ratio(a, b, EMPIRICAL)


@given(a=spec_strategy, b=spec_strategy,
       shared_rpm=st.floats(min_value=100.0, max_value=200000.0),
       factor=st.floats(min_value=0.5, max_value=2.0))
def test_common_parameter_cancellation(a, b, shared_rpm, factor):
    from dataclasses import replace
    a1, b1 = replace(a, rpm=shared_rpm), replace(b, rpm=shared_rpm)
    a2, b2 = replace(a, rpm=shared_rpm * factor), replace(b, rpm=shared_rpm * factor)
    assert power_ratio(a1, b1) == pytest.approx(power_ratio(a2, b2), rel=1e-12)


@given(s=spec_strategy, factor=st.floats(min_value=1.01, max_value=10.0))
def test_monotonicity(s, factor):
    from dataclasses import replace
    base = relative_power(s)
    assert relative_power(replace(s, platters=s.platters + 1)) > base
    assert relative_power(replace(s, rpm=s.rpm * factor)) > base
    assert relative_power(replace(s, diameter_in=s.diameter_in * factor)) > base


@given(a=spec_strategy, b=spec_strategy, c=spec_strategy)
def test_ratio_composition(a, b, c):
    assert power_ratio(a, c) == pytest.approx(
        power_ratio(a, b) * power_ratio(b, c), rel=1e-12)
