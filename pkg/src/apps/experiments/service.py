# src/apps/experiments/service.py

"""
Experiment commands

Each command turns a RunSpec into a report; `render` writes a report as
RFC-4180 CSV or JSON with numbers at the configured significant digits.
"""

import csv
import io
import json
from typing import Any, Callable, Union

import numpy as np

from src.apps.channels.families import depolarizing, depolarizing_cp_range, depolarizing_pair
from src.apps.channels.models import Channel
from src.apps.channels.repository import load_channel
from src.apps.classifiers.schemas import ThresholdResult, Verdict
from src.apps.classifiers.service import (
    classify_ppt_inducing,
    complete_positivity_test,
    distillation_prohibiting_refute,
    entanglement_annihilating_two_qubit,
    entanglement_binding_certify,
    entanglement_breaking_test,
    one_sided_ppt_inducing,
    positivity_test,
)
from src.apps.classifiers.threshold import check_threshold_dimension, depolarizing_threshold
from src.apps.entanglement.simplex import restricted_objective, schmidt_restricted_worst_case
from src.apps.experiments.constants import (
    CLASSIFY_COLUMNS,
    CONJECTURE_COLUMNS,
    CONJECTURE_TOLERANCE,
    DEFAULT_CONJECTURE_DMAX,
    DEFAULT_SWEEP_STEPS,
    DEFAULT_SWEEP_TOLERANCE,
    FULL_PRECISION_KEYS,
    SWEEP_COLUMNS,
    THRESHOLD_COLUMNS,
)
from src.apps.experiments.exceptions import InvalidParameterError
from src.apps.experiments.schemas import ChannelSummary, RunSpec, TableReport, VerdictReport
from src.common.decorators import log_duration
from src.common.enums import ChannelFamily, Command, OutputFormat, VerdictTag
from src.common.utils import format_number, parallel_map, round_significant
from src.core.config import settings
from src.core.logging import get_logger

logger = get_logger(__name__)

Report = Union[VerdictReport, TableReport]


def resolve_channel(spec: RunSpec) -> Channel:
    """
    Raises:
        ChannelParseError: the channel file cannot be read
        NotCompletelyPositiveError: q outside the CP range, or a non-CP file
            without `allow_non_tp`
    """
    if spec.file is not None:
        return load_channel(spec.file, allow_non_tp=spec.allow_non_tp)
    if spec.family == ChannelFamily.DEPOLARIZING_PAIR:
        return depolarizing_pair(spec.d, spec.q)
    return depolarizing(spec.d, spec.q)


# ==============================================================================
# Commands
# ==============================================================================

@log_duration("classify")
def cmd_classify(spec: RunSpec) -> VerdictReport:
    """
    All verdicts that apply to the channel. Complete positivity comes first,
    with positivity added when it fails. Maps on A (x) B get PPT-inducing,
    distillation-prohibiting and (on 2 (x) 2) annihilating verdicts; CP maps
    end with breaking and binding.
    `one_sided` replaces all of them with the one-sided test on phi (x) Id_d.
    """
    ch = resolve_channel(spec)
    cfg = spec.seesaw_config()
    summary = ChannelSummary(name=ch.name, d=ch.d, subsystems=ch.subsystems)
    if spec.one_sided:
        return VerdictReport(channel=summary, verdicts=[one_sided_ppt_inducing(ch, ch.d)])

    cp = complete_positivity_test(ch)
    verdicts: list[Verdict] = [cp]
    positive = cp
    if not cp.certified:
        positive = positivity_test(ch, cfg)
        verdicts.append(positive)

    # a map that is not positive has non-PSD outputs, so PPT-inducing does not apply
    if ch.is_bipartite and not positive.refuted:
        ppt = classify_ppt_inducing(ch, cfg)
        verdicts.append(ppt)
        if cp.certified:
            verdicts.append(distillation_prohibiting_refute(ch, cfg, ppt_verdict=ppt))
        if ch.subsystems == (2, 2):
            verdicts.append(entanglement_annihilating_two_qubit(ch, cfg, ppt_verdict=ppt))

    if cp.certified:
        verdicts.append(entanglement_breaking_test(ch))
        verdicts.append(entanglement_binding_certify(ch, cfg))
    return VerdictReport(channel=summary, verdicts=verdicts)


def _threshold_row(result: ThresholdResult) -> list[Any]:
    return [
        result.d,
        result.q_star,
        result.q_low,
        result.q_high,
        result.conjecture_value,
        result.binding_value,
        result.restricted_min,
        result.unrestricted_min,
    ]


@log_duration("threshold")
def cmd_threshold(spec: RunSpec) -> TableReport:
    result = depolarizing_threshold(spec.d, spec.seesaw_config(), tolerance=spec.tol)
    return TableReport(
        command=Command.THRESHOLD,
        columns=list(THRESHOLD_COLUMNS),
        rows=[_threshold_row(result)],
        summary={"restriction_violated": result.restriction_violated, "difference": result.difference},
    )


def sweep_grid(d: int, qmin: float, qmax: float, steps: int) -> list[float]:
    """
    Raises:
        InvalidParameterError: the interval leaves the CP range of Phi_q
    """
    low, high = depolarizing_cp_range(d)
    tol = settings.psd_tolerance
    if qmin < low - tol or qmax > high + tol:
        raise InvalidParameterError(f"[{qmin}, {qmax}] leaves the CP range [{low:.9g}, {high}]", "q")
    return [float(q) for q in np.linspace(qmin, qmax, steps)]


def sweep_verdict(d: int, q: float, min_value: float, tol: float) -> VerdictTag:
    """
    PPT-inducing verdict of the depolarizing pair at q. CERTIFIED needs the
    Choi state of Phi_q to be PPT; otherwise the restricted minimum decides.
    """
    if entanglement_binding_certify(depolarizing(d, q), refute=False).certified:
        return VerdictTag.CERTIFIED
    if min_value >= -tol:
        return VerdictTag.NUMERICALLY_LIKELY
    return VerdictTag.REFUTED


@log_duration("sweep")
def cmd_sweep(spec: RunSpec) -> TableReport:
    """
    Worst PT eigenvalue of depolarizing-pair outputs over an even q grid.
    Grid points run in parallel; rows keep grid order.
    """
    d = check_threshold_dimension(spec.d)
    qs = sweep_grid(d, spec.qmin, spec.qmax, spec.steps or DEFAULT_SWEEP_STEPS)
    tol = DEFAULT_SWEEP_TOLERANCE if spec.tol is None else spec.tol

    def evaluate(q: float) -> list[Any]:
        value = schmidt_restricted_worst_case(d, q).min_value
        return [q, value, sweep_verdict(d, q, value, tol).value]

    rows = parallel_map(evaluate, qs, spec.workers)
    summary: dict[str, Any] = {"d": d}
    for (q_prev, v_prev, _), (q_next, v_next, _) in zip(rows, rows[1:]):
        if v_prev >= 0.0 > v_next:
            summary["sign_change"] = [q_prev, q_next]
            break
    logger.info("sweep finished", d=d, points=len(rows), sign_change=summary.get("sign_change"))
    return TableReport(command=Command.SWEEP, columns=list(SWEEP_COLUMNS), rows=rows, summary=summary)


@log_duration("profile")
def cmd_profile(spec: RunSpec) -> TableReport:
    """
    Restricted objective over the Schmidt-weight grid, the uniform weights
    when the grid misses them, and the refined minimizer as the last row.
    `steps` sets the grid to multiples of 1/steps.
    """
    d = check_threshold_dimension(spec.d)
    step = None if spec.steps is None else 1.0 / spec.steps
    worst = schmidt_restricted_worst_case(d, spec.q, grid_step=step)

    rows = [[*point.weights, point.value] for point in worst.grid]
    uniform = tuple([1.0 / d] * d)
    if not any(np.allclose(point.weights, uniform) for point in worst.grid):
        rows.append([*uniform, restricted_objective(d, spec.q, uniform)])
    rows.append([*worst.weights, worst.min_value])

    return TableReport(
        command=Command.PROFILE,
        columns=[f"lambda_{k}" for k in range(1, d + 1)] + ["min_pt_eig"],
        rows=rows,
        summary={"argmin": list(worst.weights), "min_pt_eig": worst.min_value, "q": spec.q},
    )


@log_duration("conjecture sweep")
def cmd_conjecture(spec: RunSpec) -> TableReport:
    """
    Measured threshold next to the closed form for d = 2..dmax. A measured
    value below the closed form by more than the tolerance is flagged.
    """
    dmax = check_threshold_dimension(spec.dmax or DEFAULT_CONJECTURE_DMAX)
    cfg = spec.seesaw_config()
    results = parallel_map(
        lambda d: depolarizing_threshold(d, cfg, tolerance=spec.tol),
        range(2, dmax + 1),
        spec.workers,
    )

    rows = []
    violations = []
    for result in results:
        violated = result.conjecture_violated(CONJECTURE_TOLERANCE)
        if violated:
            violations.append(result.d)
            logger.warning(
                "measured threshold below the conjectured value",
                d=result.d,
                measured=result.q_star,
                conjecture=result.conjecture_value,
            )
        rows.append([result.d, result.q_star, result.conjecture_value, result.difference, violated])
    return TableReport(
        command=Command.CONJECTURE,
        columns=list(CONJECTURE_COLUMNS),
        rows=rows,
        summary={"violations": violations, "tolerance": CONJECTURE_TOLERANCE},
    )


COMMANDS: dict[str, Callable[[RunSpec], Report]] = {
    Command.CLASSIFY.value: cmd_classify,
    Command.THRESHOLD.value: cmd_threshold,
    Command.SWEEP.value: cmd_sweep,
    Command.PROFILE.value: cmd_profile,
    Command.CONJECTURE.value: cmd_conjecture,
}


def run(spec: RunSpec) -> Report:
    return COMMANDS[Command(spec.command).value](spec)


# ==============================================================================
# Rendering
# ==============================================================================

def _cell(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return format_number(value)
    return str(value)


def _verdict_rows(report: VerdictReport) -> list[list[Any]]:
    rows = []
    for verdict in report.verdicts:
        witness = verdict.witness
        rows.append(
            [
                verdict.claim,
                verdict.tag,
                verdict.method,
                verdict.margin,
                verdict.detail,
                None if witness is None else witness.kind,
                None if witness is None else witness.value,
            ]
        )
    return rows


def render_csv(report: Report) -> str:
    if isinstance(report, VerdictReport):
        columns, rows = list(CLASSIFY_COLUMNS), _verdict_rows(report)
    else:
        columns, rows = report.columns, report.rows
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\r\n")
    writer.writerow(columns)
    writer.writerows([_cell(value) for value in row] for row in rows)
    return buffer.getvalue()


def _rounded(value: Any, key: str = "") -> Any:
    """Round floats to the configured significant digits, except under FULL_PRECISION_KEYS."""
    if key in FULL_PRECISION_KEYS:
        return value
    if isinstance(value, dict):
        return {k: _rounded(v, k) for k, v in value.items()}
    if isinstance(value, list):
        return [_rounded(v, key) for v in value]
    if isinstance(value, float):
        return round_significant(value)
    return value


def render_json(report: Report) -> str:
    payload = report.model_dump(mode="json")
    if isinstance(report, TableReport):
        payload["rows"] = [dict(zip(report.columns, row)) for row in payload["rows"]]
    return json.dumps(_rounded(payload), indent=2, allow_nan=False) + "\n"


def render(report: Report, fmt: OutputFormat) -> str:
    if OutputFormat(fmt) == OutputFormat.JSON:
        return render_json(report)
    return render_csv(report)
