import pytest

from balanced_tamari.exceptions import ArityError, NonStabilizingError, PolynomialSyntaxError
from balanced_tamari.polynomial import parse_polynomial
from balanced_tamari.series import (
    BUILTIN_SUBSTITUTIONS,
    FunctionalEquation,
    builtin_equation,
    custom_equation,
    iterate_fixed_point,
    series,
)

MAXIMAL = [
    1, 1, 1, 1, 2, 2, 2, 4, 6, 9, 11, 13, 22, 38, 60, 89, 128, 183, 256, 353, 512, 805, 1336,
    2221, 3594, 5665, 8774, 13433, 20359,
]
INTERVALS = [
    1, 1, 3, 1, 7, 12, 6, 52, 119, 137, 195, 231, 1019, 3503, 6593, 12616, 26178, 43500, 64157,
    94688, 232560, 817757, 2233757, 5179734,
]
MAXIMAL_INTERVALS = [
    1, 1, 1, 1, 3, 2, 2, 6, 9, 15, 15, 17, 41, 77, 125, 178, 252, 376, 531, 740, 1192, 2179,
    4273, 7738, 13012, 20776, 32389, 49841, 75457, 113011,
]


class TestKnownSequences:

    def test_balanced(self):
        assert series("balanced", 12) == [1, 1, 2, 1, 4, 6, 4, 17, 32, 44, 60, 70]

    def test_balanced_one_leaf(self):
        assert series("balanced", 1) == [1]

    def test_maximal(self):
        assert series("maximal", 29) == MAXIMAL

    def test_intervals(self):
        assert series("intervals", 24) == INTERVALS

    def test_maximal_intervals(self):
        assert series("maximal_intervals", 30) == MAXIMAL_INTERVALS

    def test_dashes_are_accepted(self):
        assert series("maximal-intervals", 10) == MAXIMAL_INTERVALS[:10]

    @pytest.mark.parametrize("which", sorted(BUILTIN_SUBSTITUTIONS))
    def test_longer_truncations_keep_earlier_coefficients(self, which):
        longer = series(which, 30)
        for n in (1, 5, 12, 20):
            assert series(which, n) == longer[:n]


class TestEquations:

    def test_builtin_shapes(self):
        eq = builtin_equation("maximal")
        assert eq.arity == 3
        assert eq.seed == parse_polynomial("x", 3)
        assert eq.substitution[2] == parse_polynomial("x*y", 3)

    def test_unknown_builtin(self):
        with pytest.raises(ValueError):
            builtin_equation("perfect")

    def test_first_iterates(self):
        a0, a1, a2 = builtin_equation("balanced").iterates(2)
        assert a0 == parse_polynomial("x", 2)
        assert a1 == parse_polynomial("x + 2*x*y + x^2", 2)
        assert a2 == parse_polynomial(
            "x + 2*x*y + x^2 + 4*x^2*y + 2*x^3 + 4*x^2*y^2 + 4*x^3*y + x^4", 2
        )

    def test_truncated_iterates(self):
        iterates = builtin_equation("balanced").iterates(2, max_x_degree=2)
        assert iterates[2] == parse_polynomial("x + 2*x*y + x^2 + 4*x^2*y + 4*x^2*y^2", 2)

    def test_stabilized_iterate(self):
        index, stable = builtin_equation("balanced").stabilized_iterate(5)
        assert index > 0
        assert stable.univariate_coefficients(5) == [1, 1, 2, 1, 4]

    def test_custom_matches_builtin(self):
        eq = custom_equation(["x^2 + 2*x*y", "x"])
        assert iterate_fixed_point(eq, 12) == series("balanced", 12)

    def test_powers_of_two(self):
        eq = custom_equation(["x^2"])
        assert iterate_fixed_point(eq, 8) == [1, 1, 0, 1, 0, 0, 0, 1]

    def test_custom_seed(self):
        eq = custom_equation(["x^2"], seed="2*x")
        assert iterate_fixed_point(eq, 4) == [2, 2, 0, 2]

    def test_split_buds_match_the_merged_equation(self):
        # z1 and z2 kept apart as v2 and v3
        names = ["v0^2 + v1*v2 + v3*v1 + v4", "v0", "v3*v1 + v4", "v1*v2 + v4", "v0^3 + v0^2*v1"]
        eq = FunctionalEquation(
            name="split",
            seed=parse_polynomial("v0", 5),
            substitution=tuple(parse_polynomial(text, 5) for text in names),
        )
        assert iterate_fixed_point(eq, 20) == series("maximal_intervals", 20)

    def test_never_settles(self):
        eq = custom_equation(["x"])
        with pytest.raises(NonStabilizingError):
            iterate_fixed_point(eq, 5)
        with pytest.raises(NonStabilizingError):
            eq.stabilized_iterate(3)

    def test_auxiliary_orbit_that_never_vanishes(self):
        # y keeps collecting powers of x but never feeds back into the first slot
        eq = custom_equation(["x^2", "x + y"])
        assert iterate_fixed_point(eq, 8) == [1, 1, 0, 1, 0, 0, 0, 1]
        _, stable = eq.stabilized_iterate(8)
        assert stable.univariate_coefficients(8) == [1, 1, 0, 1, 0, 0, 0, 1]

    def test_constant_seed_never_settles(self):
        eq = custom_equation(["x^2"], seed="1 + x")
        with pytest.raises(NonStabilizingError):
            iterate_fixed_point(eq, 4)

    @pytest.mark.parametrize("which", sorted(BUILTIN_SUBSTITUTIONS))
    def test_builtins_pass_the_stability_check(self, which):
        builtin_equation(which).check_truncation_stability(12)

    @pytest.mark.parametrize(
        "substitution",
        [["x^2 + 1", "x"], ["x^2", "x + 2"], ["x + x*y", "x"]],
    )
    def test_stability_check_rejects(self, substitution):
        with pytest.raises(NonStabilizingError):
            custom_equation(substitution).check_truncation_stability()

    def test_stability_check_runs_the_iteration(self):
        eq = custom_equation(["y", "x^2"])
        eq.check_truncation_stability()
        assert iterate_fixed_point(eq, 4) == [1, 1, 0, 1]

    def test_degree_must_be_positive(self):
        with pytest.raises(ValueError):
            iterate_fixed_point(builtin_equation("balanced"), 0)

    def test_arity_checks(self):
        with pytest.raises(ArityError):
            custom_equation([])
        with pytest.raises(ArityError):
            custom_equation(["x"] * 5)
        with pytest.raises(ArityError):
            FunctionalEquation(
                name="bad",
                seed=parse_polynomial("x", 1),
                substitution=(parse_polynomial("x", 2), parse_polynomial("y", 2)),
            )

    def test_bad_text(self):
        with pytest.raises(PolynomialSyntaxError):
            custom_equation(["x^2 + 2*x*w", "x"])
