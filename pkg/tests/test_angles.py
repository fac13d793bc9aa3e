import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from onewaylab.angles import Angle, as_angle


def test_exact_normalization():
    assert Angle.exact(9, 4) == Angle.exact(1, 4)
    assert Angle.exact(-1, 4) == Angle.exact(7, 4)
    assert Angle.exact(2) == Angle.exact(0)


def test_radians_of_exact():
    assert Angle.exact(1, 2).radians == pytest.approx(math.pi / 2)
    assert Angle.exact(3, 2).radians == pytest.approx(3 * math.pi / 2)


def test_inexact_never_equals_exact():
    assert Angle.from_radians(math.pi) != Angle.exact(1)
    assert Angle.from_radians(0.0) != Angle.exact(0)


def test_negated_and_plus_pi():
    assert Angle.exact(1, 4).negated() == Angle.exact(7, 4)
    assert Angle.exact(1, 4).plus_pi() == Angle.exact(5, 4)
    assert Angle.exact(3, 2).minus_pi() == Angle.exact(1, 2)
    assert Angle.from_radians(1.0).negated().radians == pytest.approx(2 * math.pi - 1.0)


def test_axis_classification():
    assert Angle.exact(0).is_x_axis
    assert Angle.exact(1).is_x_axis
    assert Angle.exact(1, 2).is_y_axis
    assert Angle.exact(3, 2).is_y_axis
    assert not Angle.exact(1, 4).is_pauli_axis
    assert not Angle.from_radians(0.0).is_x_axis


def test_as_angle_coercions():
    assert as_angle(0) == Angle.exact(0)
    assert as_angle(Fraction(1, 2)) == Angle.exact(1, 2)
    assert not as_angle(0.5).is_exact
    assert as_angle(Angle.exact(1)) == Angle.exact(1)
    with pytest.raises(TypeError):
        as_angle("pi")


@given(st.fractions(min_value=-8, max_value=8))
def test_double_negation_roundtrip(frac):
    a = Angle.exact(frac)
    assert a.negated().negated() == a
    assert a.plus_pi().plus_pi() == a


def test_fraction_refused_for_inexact():
    with pytest.raises(ValueError):
        Angle.from_radians(1.0).fraction
