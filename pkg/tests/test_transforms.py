import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from stochorder import (
    ConditionVariant,
    Direction,
    Dominance,
    GridSpec,
    NumericError,
    ParameterError,
    PQRegion,
    check_convexity_conditions,
    classify_pq,
    compare_transforms,
    make_exp,
    make_log_shift,
    make_power,
    make_transform,
)

CONVEX = ConditionVariant.CONVEX_CASE
CONCAVE = ConditionVariant.CONCAVE_CASE
SMALL_GRID = GridSpec(0.5, 2.0, 16)


class TestTransformConstruction:
    def test_exp_basics(self):
        t = make_exp()
        assert t.direction is Direction.INCREASING
        assert t.eval(1.0) == pytest.approx(math.e)
        assert t.inverse(t.eval(0.7)) == pytest.approx(0.7)

    def test_power_increasing_and_decreasing(self):
        assert make_power(2.0).direction is Direction.INCREASING
        assert make_power(-1.5).direction is Direction.DECREASING

    def test_power_zero_rejected(self):
        with pytest.raises(ParameterError):
            make_power(0.0)

    def test_log_shift_values(self):
        t = make_log_shift()
        assert t.eval(0.0) == pytest.approx(1.0)
        assert t.inverse(1.0) == pytest.approx(0.0, abs=1e-12)
        assert t.d2(1.0) < 0

    def test_callable_protocol(self):
        assert make_power(2.0)(3.0) == pytest.approx(9.0)

    def test_inconsistent_custom_transform_rejected(self):
        with pytest.raises(NumericError):
            make_transform(
                eval=lambda x: x**2,
                inverse=lambda y: y,  # wrong inverse
                direction=Direction.INCREASING,
            )

    def test_wrong_direction_rejected(self):
        with pytest.raises(NumericError):
            make_transform(
                eval=lambda x: x**2,
                inverse=lambda y: math.sqrt(y),
                direction=Direction.DECREASING,
            )

    def test_fd_fallback_derivatives(self):
        t = make_transform(
            eval=lambda x: x**3,
            inverse=lambda y: y ** (1 / 3),
            direction=Direction.INCREASING,
        )
        assert t.d1(2.0) == pytest.approx(12.0, rel=1e-4)
        assert t.d2(2.0) == pytest.approx(12.0, rel=1e-3)

    @given(st.floats(-3.0, 3.0).filter(lambda r: abs(r) > 0.05))
    @settings(max_examples=50, deadline=None)
    def test_power_inverse_roundtrip(self, r):
        t = make_power(r)
        for x in (0.3, 1.0, 4.2):
            assert t.inverse(t.eval(x)) == pytest.approx(x, rel=1e-9)


class TestGridSpec:
    def test_validation(self):
        with pytest.raises(ParameterError):
            GridSpec(1.0, 0.5, 8)
        with pytest.raises(ParameterError):
            GridSpec(0.5, 1.0, 1)

    def test_points_are_log_spaced(self):
        pts = GridSpec(1e-2, 1e2, 5).points()
        np.testing.assert_allclose(pts, [1e-2, 1e-1, 1, 10, 100], rtol=1e-12)


class TestConvexityConditions:
    def test_exp_pair_satisfies_convex_case(self):
        rep = check_convexity_conditions(make_exp(), make_exp(), CONVEX, SMALL_GRID)
        assert rep.condition_a_holds and rep.condition_b_holds
        # the product condition is tight for the exponential pair
        assert rep.worst_violation_b == pytest.approx(0.0, abs=1e-9)

    def test_exp_pair_fails_concave_case(self):
        rep = check_convexity_conditions(make_exp(), make_exp(), CONCAVE, SMALL_GRID)
        assert not rep.condition_a_holds

    def test_conjugate_pair_a3_is_concave(self):
        p, q = 2.0, 2.0
        rep = check_convexity_conditions(
            make_power(1 / q), make_power(1 / p), CONCAVE, SMALL_GRID
        )
        assert rep.both_hold

    def test_conjugate_pair_a1_is_convex(self):
        q = 0.8
        p = 1.0 / (1.0 - 1.0 / q)  # p = -4
        rep = check_convexity_conditions(
            make_power(1 / q), make_power(1 / p), CONVEX, SMALL_GRID
        )
        assert rep.both_hold

    def test_interior_violation_reported_with_point(self):
        # p = q = 3 gives 1/p + 1/q < 1 strictly inside A3's complement for
        # the convex case
        rep = check_convexity_conditions(
            make_power(1 / 3), make_power(1 / 3), CONVEX, SMALL_GRID
        )
        assert not rep.condition_a_holds
        u, v = rep.worst_point
        assert SMALL_GRID.lo <= u <= SMALL_GRID.hi
        assert SMALL_GRID.lo <= v <= SMALL_GRID.hi

    def test_logshift_power_pair(self):
        # paired with x^(1/p), the shifted log satisfies the concave-case
        # conditions exactly when p >= 2
        psi2 = make_power(1 / 2.0)
        rep = check_convexity_conditions(make_log_shift(), psi2, CONCAVE, SMALL_GRID)
        assert rep.both_hold
        psi_small = make_power(1 / 1.5)
        rep_bad = check_convexity_conditions(
            make_log_shift(), psi_small, CONCAVE, SMALL_GRID
        )
        assert not rep_bad.condition_b_holds

    def test_overflowing_grid_raises(self):
        with pytest.raises(NumericError):
            check_convexity_conditions(
                make_exp(), make_exp(), CONVEX, GridSpec(1e-3, 1e3, 8)
            )


class TestClassifyPQ:
    @pytest.mark.parametrize(
        "p,q,region",
        [
            (-1.0, -1.0, PQRegion.A0),
            (-4.0, 0.8, PQRegion.A1),
            (0.8, -4.0, PQRegion.A2),
            (2.0, 2.0, PQRegion.A3),
            (3.0, 1.5, PQRegion.A3),
            (0.5, 0.5, PQRegion.NONE),
            (2.0, 1.5, PQRegion.NONE),  # 1/p + 1/q > 1
            (-2.0, 0.9, PQRegion.NONE),  # 1/p + 1/q < 1
            (-2.0, 2.0, PQRegion.NONE),
        ],
    )
    def test_known_points(self, p, q, region):
        assert classify_pq(p, q) is region

    def test_boundaries_included(self):
        assert classify_pq(-4.0, 0.8) is PQRegion.A1   # exactly conjugate
        assert classify_pq(2.0, 2.0) is PQRegion.A3

    def test_zero_rejected(self):
        with pytest.raises(ParameterError):
            classify_pq(0.0, 2.0)

    @given(
        st.floats(-5, 5).filter(lambda t: abs(t) > 1e-3 and abs(t - 1) > 1e-3),
        st.floats(-5, 5).filter(lambda t: abs(t) > 1e-3 and abs(t - 1) > 1e-3),
    )
    @settings(max_examples=150, deadline=None)
    def test_regions_match_grid_conditions(self, p, q):
        if abs(1 / p + 1 / q - 1) <= 1e-3:
            return
        region = classify_pq(p, q)
        phi, psi = make_power(1 / q), make_power(1 / p)
        convex = check_convexity_conditions(phi, psi, CONVEX, SMALL_GRID).both_hold
        concave = check_convexity_conditions(phi, psi, CONCAVE, SMALL_GRID).both_hold
        assert convex == (region in (PQRegion.A0, PQRegion.A1, PQRegion.A2))
        assert concave == (region is PQRegion.A3)


class TestCompareTransforms:
    def test_exp_dominates_negative_power_in_convex_case(self):
        # cases (iii): decreasing phi1, increasing phi2, composition convex
        phi1 = make_power(-0.5)  # x^(1/q), q = -2
        result = compare_transforms(phi1, make_exp(), CONVEX, GridSpec(0.5, 2.0, 64))
        assert result is Dominance.PHI2_BETTER

    def test_conjugate_exponent_dominates_within_a3(self):
        p = 2.0
        q_star = 1.0 / (1.0 - 1.0 / p)
        phi_q = make_power(1 / 3.0)       # q = 3 with 1/p + 1/q < 1
        phi_qstar = make_power(1 / q_star)
        result = compare_transforms(phi_q, phi_qstar, CONCAVE, GridSpec(0.5, 2.0, 64))
        assert result is Dominance.PHI2_BETTER

    def test_non_dominance_is_undetermined(self):
        p = 2.0
        q_star = 1.0 / (1.0 - 1.0 / p)
        phi_q = make_power(1 / 3.0)
        phi_qstar = make_power(1 / q_star)
        # reversed roles: x^(q/q*) is convex, not concave
        result = compare_transforms(phi_qstar, phi_q, CONCAVE, GridSpec(0.5, 2.0, 64))
        assert result is Dominance.UNDETERMINED

    def test_self_comparison_is_better(self):
        # g is the identity, both convex and concave
        phi = make_power(0.5)
        assert compare_transforms(phi, phi, CONVEX) is Dominance.PHI2_BETTER
