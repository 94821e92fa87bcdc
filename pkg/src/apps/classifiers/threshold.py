# src/apps/classifiers/threshold.py

"""
PPT-inducing threshold of the depolarizing pair Phi_q (x) Phi_q

Bisection on the sign of the Schmidt-restricted worst case, then a
cross-check of the result against the unrestricted worst-case search. The
conjectured closed form is reported next to the measurement, never used in
its place.
"""

import math
from typing import Optional

from src.apps.channels.families import depolarizing_cp_range, depolarizing_pair
from src.apps.classifiers.constants import (
    MAX_THRESHOLD_DIMENSION,
    MIN_THRESHOLD_DIMENSION,
    RESTRICTION_TOLERANCE,
    SIGN_TOLERANCE,
)
from src.apps.classifiers.exceptions import InvalidParameterError
from src.apps.classifiers.schemas import ThresholdResult
from src.apps.entanglement.schemas import SeesawConfig
from src.apps.entanglement.seesaw import worst_case_output_pt
from src.apps.entanglement.simplex import schmidt_diagonal_state, schmidt_restricted_worst_case
from src.common.decorators import log_duration
from src.core.config import settings
from src.core.logging import get_logger

logger = get_logger(__name__)


def conjecture_value(d: int) -> float:
    """(1 + sqrt 3) / (d + 1 + sqrt 3)"""
    return (1.0 + math.sqrt(3.0)) / (d + 1.0 + math.sqrt(3.0))


def binding_value(d: int) -> float:
    """1 / (d + 1), the largest q with Phi_q entanglement binding."""
    return 1.0 / (d + 1.0)


def two_term_root(d: int) -> float:
    """
    Positive root of (d^2 + 2d - 2) q^2 - (2d - 4) q - 2, where the output of
    the input with Schmidt weights (1/2, 1/2, 0, ...) stops being PPT.
    """
    a, b, c = d * d + 2.0 * d - 2.0, -(2.0 * d - 4.0), -2.0
    return (-b + math.sqrt(b * b - 4.0 * a * c)) / (2.0 * a)


def check_threshold_dimension(d: int) -> int:
    if int(d) != d or not MIN_THRESHOLD_DIMENSION <= d <= MAX_THRESHOLD_DIMENSION:
        raise InvalidParameterError(
            f"threshold runs need {MIN_THRESHOLD_DIMENSION} <= d <= {MAX_THRESHOLD_DIMENSION}, got {d}", "d"
        )
    return int(d)


def restricted_is_ppt(d: int, q: float) -> bool:
    return schmidt_restricted_worst_case(d, q).min_value >= -SIGN_TOLERANCE


@log_duration("depolarizing threshold")
def depolarizing_threshold(
    d: int,
    cfg: Optional[SeesawConfig] = None,
    tolerance: Optional[float] = None,
) -> ThresholdResult:
    """
    Bisect q over the CP range [-1/(d^2-1), 1] keeping a PPT-inducing q_low and
    a non-PPT-inducing q_high, until q_high - q_low <= tolerance.

    q_star is q_low, the largest q whose restricted check came out PPT. It
    is cross-checked with the unrestricted worst-case search, warm started
    from the restricted minimizer; an unrestricted value below the
    restricted one flags `restriction_violated`.
    """
    d = check_threshold_dimension(d)
    cfg = cfg or SeesawConfig()
    tolerance = settings.bisection_tolerance if tolerance is None else tolerance
    q_low, q_high = depolarizing_cp_range(d)

    steps = 0
    while q_high - q_low > tolerance:
        mid = 0.5 * (q_low + q_high)
        if restricted_is_ppt(d, mid):
            q_low = mid
        else:
            q_high = mid
        steps += 1
        logger.debug("bisection step", d=d, q_low=q_low, q_high=q_high, step=steps)

    q_star = q_low
    restricted = schmidt_restricted_worst_case(d, q_star)
    unrestricted = worst_case_output_pt(
        depolarizing_pair(d, q_star),
        cfg=cfg,
        start=schmidt_diagonal_state(restricted.weights),
    )
    violated = unrestricted.min_value < restricted.min_value - RESTRICTION_TOLERANCE
    if violated:
        logger.warning(
            "unrestricted search beats the Schmidt-diagonal restriction",
            d=d,
            q=q_star,
            restricted_min=restricted.min_value,
            unrestricted_min=unrestricted.min_value,
        )

    result = ThresholdResult(
        d=d,
        q_star=q_star,
        q_low=q_low,
        q_high=q_high,
        conjecture_value=conjecture_value(d),
        binding_value=binding_value(d),
        restricted_min=restricted.min_value,
        unrestricted_min=unrestricted.min_value,
        restriction_violated=violated,
    )
    logger.info(
        "threshold found",
        d=d,
        q_star=q_star,
        conjecture=result.conjecture_value,
        difference=result.difference,
        steps=steps,
    )
    return result
