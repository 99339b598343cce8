import math
from dataclasses import replace

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from diskpower.drag_theory import (DragParams, QuadratureSettings,
                                   analytic_power, drag_force_per_area,
                                   drag_params_from_spec, inches_to_meters,
                                   numerical_power, recover_exponent,
                                   rpm_to_rad_s, tangential_speed)
from diskpower.model_core import THEORETICAL, DiskSpec, ValidationError, power_ratio

BASE = DragParams(radius_m=0.033, omega_rad_s=1581.1)

params_strategy = st.builds(
    DragParams,
    radius_m=st.floats(min_value=0.005, max_value=0.2),
    omega_rad_s=st.floats(min_value=1.0, max_value=2e4),
    air_density=st.floats(min_value=0.1, max_value=10.0),
    drag_coefficient=st.floats(min_value=0.001, max_value=5.0),
    sides=st.sampled_from([1, 2]),
)


class TestUnitBridges:
    def test_60_rpm_is_2pi(self):
        assert rpm_to_rad_s(60) == pytest.approx(2 * math.pi, rel=1e-15)

    def test_zero(self):
        assert rpm_to_rad_s(0) == 0.0
        assert inches_to_meters(0) == 0.0

    def test_15098_rpm(self):
        assert rpm_to_rad_s(15098) == pytest.approx(1581.06, abs=0.01)

    def test_inch_constant(self):
        assert inches_to_meters(1) == 0.0254

    def test_negative_rejected(self):
        with pytest.raises(ValidationError):
            rpm_to_rad_s(-1)
        with pytest.raises(ValidationError):
            inches_to_meters(-0.5)


class TestPointwise:
    def test_no_motion_no_drag(self):
        assert drag_force_per_area(1, 1, 0) == 0.0

    def test_simple_value(self):
        assert drag_force_per_area(1, 1, 2) == 2.0

    def test_hand_checked_value(self):
        # 0.5 * 1.2 * 10^2 * 0.01
        assert drag_force_per_area(1.2, 0.01, 10) == pytest.approx(0.6, rel=1e-15)

    def test_negative_speed_rejected(self):
        with pytest.raises(ValidationError):
            drag_force_per_area(1, 1, -1)

    def test_tangential_speed(self):
        assert tangential_speed(0, 0.05) == 0.0
        assert tangential_speed(10, 0.1) == pytest.approx(1.0)
        assert tangential_speed(1581.1, 0.033) == pytest.approx(52.18, abs=0.01)


class TestAnalyticPower:
    def test_zero_omega(self):
        assert analytic_power(replace(BASE, omega_rad_s=0.0)) == 0.0

    def test_scaling_laws(self):
        p = analytic_power(BASE)
        assert analytic_power(replace(BASE, radius_m=2 * BASE.radius_m)) == \
            pytest.approx(32 * p, rel=1e-12)
        assert analytic_power(replace(BASE, omega_rad_s=2 * BASE.omega_rad_s)) == \
            pytest.approx(8 * p, rel=1e-12)

    def test_sides_factor(self):
        one = analytic_power(replace(BASE, sides=1))
        two = analytic_power(replace(BASE, sides=2))
        assert two == 2 * one

    def test_matches_fine_quadrature_oracle(self):
        # Oracle: numerical_power on a 2048x2048 grid, computed up front.
        oracle = 234.0367076958103
        assert analytic_power(BASE) == pytest.approx(oracle, rel=1e-6)


class TestNumericalPower:
    def test_zero_omega_any_grid(self):
        assert numerical_power(replace(BASE, omega_rad_s=0.0),
                               QuadratureSettings(3, 7)) == 0.0

    def test_converges_to_analytic_at_512(self):
        got = numerical_power(BASE, QuadratureSettings(512, 512))
        assert got == pytest.approx(analytic_power(BASE), rel=1e-4)

    def test_second_order_radial_convergence(self):
        exact = analytic_power(BASE)
        errors = [abs(numerical_power(BASE, QuadratureSettings(n, 64)) - exact)
                  for n in (128, 256, 512)]
        assert errors[0] / errors[1] == pytest.approx(4.0, rel=0.05)
        assert errors[1] / errors[2] == pytest.approx(4.0, rel=0.05)

    @given(p=params_strategy)
    @settings(max_examples=25, deadline=None)
    def test_angular_cells_do_not_matter(self, p):
        a = numerical_power(p, QuadratureSettings(64, 1))
        b = numerical_power(p, QuadratureSettings(64, 509))
        assert a == pytest.approx(b, rel=1e-12)

    @given(p=params_strategy)
    @settings(max_examples=15, deadline=None)
    def test_refinement_errors_nonincreasing(self, p):
        exact = analytic_power(p)
        errors = [abs(numerical_power(p, QuadratureSettings(n, n)) - exact) / exact
                  for n in (32, 64, 128, 256, 512)]
        assert all(e2 <= e1 for e1, e2 in zip(errors, errors[1:]))
        assert errors[-1] <= 1e-4


class TestRecoverExponent:
    MULTS = [1, 2, 4, 8, 16]

    def test_omega_slope_analytic(self):
        res = recover_exponent("omega", BASE, self.MULTS, "analytic")
        assert res.fitted_exponent == pytest.approx(3.0, abs=1e-9)
        assert res.residual <= 1e-12

    def test_radius_slope_analytic(self):
        res = recover_exponent("radius", BASE, self.MULTS, "analytic")
        assert res.fitted_exponent == pytest.approx(5.0, abs=1e-9)

    def test_radius_slope_numerical(self):
        res = recover_exponent("radius", BASE, self.MULTS, "numerical",
                               QuadratureSettings(512, 512))
        assert res.fitted_exponent == pytest.approx(5.0, abs=1e-3)

    def test_too_few_multipliers(self):
        with pytest.raises(ValidationError):
            recover_exponent("omega", BASE, [1, 2], "analytic")

    def test_zero_omega_base_rejected_for_omega_sweep(self):
        with pytest.raises(ValidationError):
            recover_exponent("omega", replace(BASE, omega_rad_s=0.0),
                             self.MULTS, "analytic")

    def test_samples_recorded(self):
        res = recover_exponent("omega", BASE, self.MULTS, "analytic")
        assert len(res.samples) == 5
        assert all(power > 0 for _, power in res.samples)


@given(a_rpm=st.floats(min_value=1000, max_value=60000),
       b_rpm=st.floats(min_value=1000, max_value=60000),
       a_d=st.floats(min_value=1.0, max_value=5.0),
       b_d=st.floats(min_value=1.0, max_value=5.0))
@settings(max_examples=50)
def test_theoretical_preset_matches_drag_ratio(a_rpm, b_rpm, a_d, b_d):
    a = DiskSpec("a", 1, a_rpm, a_d)
    b = DiskSpec("b", 1, b_rpm, b_d)
    drag_ratio = analytic_power(drag_params_from_spec(b)) / \
        analytic_power(drag_params_from_spec(a))
    assert power_ratio(a, b, THEORETICAL) == pytest.approx(drag_ratio, rel=1e-9)


class TestDragParamsValidation:
    def test_bad_sides(self):
        with pytest.raises(ValidationError):
            DragParams(radius_m=0.03, omega_rad_s=100.0, sides=3)

    def test_bad_radius(self):
        with pytest.raises(ValidationError):
            DragParams(radius_m=0.0, omega_rad_s=100.0)

    def test_bad_quadrature(self):
        with pytest.raises(ValidationError):
            QuadratureSettings(0, 8)
