"""
Tests for the depolarizing-pair threshold
"""

import math

import pytest

from src.apps.classifiers.exceptions import InvalidParameterError
from src.apps.classifiers.threshold import (
    binding_value,
    conjecture_value,
    depolarizing_threshold,
    restricted_is_ppt,
    two_term_root,
)
from src.apps.entanglement.schemas import SeesawConfig

SMALL = SeesawConfig(restarts=4, max_iters=300)


def test_closed_forms():
    assert conjecture_value(3) == pytest.approx(0.476627, abs=1e-6)
    assert conjecture_value(2) == pytest.approx(1 / math.sqrt(3), abs=1e-12)
    assert binding_value(3) == 0.25


@pytest.mark.parametrize("d", [2, 3, 4, 5])
def test_two_term_root_matches_conjecture(d):
    assert two_term_root(d) == pytest.approx(conjecture_value(d), abs=1e-12)


@pytest.mark.parametrize("d", [2, 3, 4, 5, 10])
def test_binding_value_below_conjecture(d):
    assert binding_value(d) < conjecture_value(d)


def test_restricted_sign_around_qutrit_threshold():
    assert restricted_is_ppt(3, 0.47)
    assert not restricted_is_ppt(3, 0.48)


@pytest.mark.parametrize("d, expected", [(2, 0.577350), (3, 0.476627)])
def test_threshold(d, expected):
    result = depolarizing_threshold(d, SMALL)
    assert result.q_star == pytest.approx(expected, abs=1e-4)
    assert result.q_low == result.q_star < result.q_high
    assert restricted_is_ppt(d, result.q_star)
    assert result.restricted_min >= -1e-12
    assert result.q_high - result.q_low <= 1e-5
    assert result.binding_value < result.q_star
    assert abs(result.difference) <= 1e-3
    assert not result.conjecture_violated(1e-3)
    assert not result.restriction_violated
    assert result.unrestricted_min >= result.restricted_min - 1e-6


def test_threshold_tolerance_override():
    result = depolarizing_threshold(2, SMALL, tolerance=1e-3)
    assert result.q_high - result.q_low <= 1e-3
    assert result.q_star == pytest.approx(1 / math.sqrt(3), abs=1.1e-3)


@pytest.mark.parametrize("d", [1, 6])
def test_threshold_dimension_range(d):
    with pytest.raises(InvalidParameterError):
        depolarizing_threshold(d, SMALL)
