"""Tests for reid_gale.services.group_action."""

import itertools

import pytest

from reid_gale.errors import DegenerateWeight, GroupActionError, NotFaithful, NotSL
from reid_gale.services.group_action import (
    age,
    element,
    is_junior_point,
    junior_points,
    pairing,
    parse_group,
    validate_action,
    weight,
)
from reid_gale.types.group import JuniorPoint


# ---------------------------------------------------------------------------
# 1. Validation
# ---------------------------------------------------------------------------

class TestValidateAction:
    @pytest.mark.parametrize("r,a,b,c", [(3, 1, 1, 1), (19, 1, 3, 15), (6, 1, 1, 4), (7, 1, 2, 4)])
    def test_accepts(self, r, a, b, c):
        action = validate_action(r, a, b, c)
        assert action.r == r
        assert action.weights == (a, b, c)

    def test_normalizes_weights(self):
        assert validate_action(3, 4, -2, 1).weights == (1, 1, 1)

    @pytest.mark.parametrize("r,a,b,c,error", [
        (5, 1, 1, 1, NotSL),
        (6, 2, 2, 2, NotFaithful),
        (3, 3, 1, 2, DegenerateWeight),
        (1, 1, 1, 1, GroupActionError),
    ])
    def test_rejects(self, r, a, b, c, error):
        with pytest.raises(error):
            validate_action(r, a, b, c)

    def test_error_code(self):
        with pytest.raises(NotSL) as exc:
            validate_action(5, 1, 1, 1)
        assert exc.value.code == "group_action.NotSL"

    def test_parse_group(self):
        assert parse_group("19,1,3,15").label() == "1/19(1,3,15)"
        with pytest.raises(GroupActionError):
            parse_group("19,1")


# ---------------------------------------------------------------------------
# 2. Characters
# ---------------------------------------------------------------------------

def test_weight_is_a_homomorphism():
    """weight(m + n) = weight(m) + weight(n) mod r, negative exponents included."""
    action = validate_action(19, 1, 3, 15)
    vectors = list(itertools.product(range(-2, 3), repeat=3))
    for m, n in itertools.product(vectors[::7], vectors[::5]):
        total = tuple(x + y for x, y in zip(m, n))
        assert weight(action, total) == (weight(action, m) + weight(action, n)) % 19


def test_invariant_monomials_have_weight_zero():
    action = validate_action(3, 1, 1, 1)
    assert weight(action, (1, 1, 1)) == 0
    assert weight(action, (3, 0, 0)) == 0
    assert weight(action, (0, 0, 2)) == 2


# ---------------------------------------------------------------------------
# 3. Junior points
# ---------------------------------------------------------------------------

class TestJuniorPoints:
    def test_1_6_1_1_4(self):
        points = [p.numerators for p in junior_points(validate_action(6, 1, 1, 4))]
        assert points == [(0, 0, 6), (0, 6, 0), (1, 1, 4), (2, 2, 2), (3, 3, 0), (6, 0, 0)]

    def test_1_19_counts(self):
        points = junior_points(validate_action(19, 1, 3, 15))
        assert len(points) == 12
        assert sum(1 for p in points if p.interior) == 9
        assert sum(1 for p in points if p.is_corner) == 3

    @pytest.mark.parametrize("r,a,b,c", [(3, 1, 1, 1), (19, 1, 3, 15), (6, 1, 1, 4), (11, 1, 2, 8)])
    def test_count_matches_age_one_elements(self, r, a, b, c):
        action = validate_action(r, a, b, c)
        age_one = sum(1 for k in range(1, r) if age(action, k) == 1)
        assert len(junior_points(action)) == age_one + 3

    def test_elements_and_ages(self):
        action = validate_action(19, 1, 3, 15)
        assert element(action, 4) == (4, 12, 3)
        assert age(action, 4) == 1
        assert age(action, 5) == 2

    def test_membership(self):
        action = validate_action(19, 1, 3, 15)
        assert is_junior_point(action, (14, 4, 1))
        assert not is_junior_point(action, (5, 15, 18))

    def test_point_properties(self):
        p = JuniorPoint((3, 3, 0))
        assert p.boundary and not p.interior and not p.is_corner
        assert JuniorPoint((6, 0, 0)).is_corner
        assert p.label() == "3,3,0"
        assert pairing(JuniorPoint((1, 1, 1)), (0, 0, 2)) == 2
