# src/apps/classifiers/service.py

"""
Channel classifiers

Exact spectral certificates run first, refutation searches second and the
block-positivity see-saw last. Every REFUTED verdict carries vectors that
`reverify` evaluates again without any search.
"""

from typing import Optional, Sequence

import numpy as np

from src.apps.channels.families import identity_channel
from src.apps.channels.models import Channel
from src.apps.channels.service import apply, is_completely_positive, require_completely_positive, tensor
from src.apps.classifiers.constants import (
    DETAIL_BREAKING,
    DETAIL_EXACT_TWO_QUBIT,
    DETAIL_PPT_CONSISTENT,
    DETAIL_SEARCH_CONFIDENCE,
    METHOD_BLOCK_POSITIVITY,
    METHOD_CHOI_DISTILLATION,
    METHOD_CHOI_PPT,
    METHOD_CHOI_PRODUCT,
    METHOD_CHOI_PSD,
    METHOD_LOCAL_FACTORS,
    METHOD_ONE_SIDED_CHOI_PPT,
    METHOD_OUTPUT_DISTILLATION,
    METHOD_PPT_INDUCING_SUBSET,
    METHOD_TRANSPOSED_CHOI_PSD,
    METHOD_WORST_CASE_OUTPUT,
    REVERIFY_TOLERANCE,
)
from src.apps.classifiers.exceptions import (
    DimensionMismatchError,
    InvalidParameterError,
    NotPositiveMapError,
    NumericalFailureError,
    ProportionRequirementError,
)
from src.apps.classifiers.schemas import Verdict, Witness
from src.apps.entanglement.constants import PPT_EXACT_MAX_PRODUCT
from src.apps.entanglement.schemas import SeesawConfig
from src.apps.entanglement.seesaw import (
    refute_one_copy_undistillability,
    refute_output_distillability,
    worst_case_output_pt,
)
from src.apps.entanglement.service import (
    block_positivity,
    maximally_entangled,
    ppt_report,
    product_value,
    pt_min_eigenpair,
)
from src.apps.linalg.schemas import BipartiteDims
from src.apps.linalg.service import expectation, min_eigenpair, min_eigenvalue, partial_transpose, projector, schmidt_decompose
from src.common.enums import BlockPositivityTag, ChannelProperty, Subsystem, VerdictTag, WitnessKind
from src.common.validators import psd_floor
from src.core.base_model import ComplexMatrix, ComplexVector
from src.core.logging import get_logger

logger = get_logger(__name__)

_STRENGTH = {
    VerdictTag.REFUTED.value: 0,
    VerdictTag.UNKNOWN.value: 1,
    VerdictTag.NUMERICALLY_LIKELY.value: 2,
    VerdictTag.CERTIFIED.value: 3,
}


def _report(ch: Channel, verdict: Verdict) -> Verdict:
    logger.info(
        "channel classified",
        channel=ch.name,
        claim=verdict.claim,
        tag=verdict.tag,
        method=verdict.method,
        margin=verdict.margin,
    )
    return verdict


def _choi_state(ch: Channel) -> ComplexMatrix:
    trace = ch.choi.trace
    if trace <= 0:
        raise InvalidParameterError(f"Choi operator of {ch.name} has trace {trace}", "choi")
    return ch.choi.matrix / trace


def _output_pt(ch: Channel, psi: ComplexVector, cut: BipartiteDims, which: Subsystem = Subsystem.B) -> ComplexMatrix:
    return partial_transpose(apply(ch, projector(psi)), cut, which)


def _agree(expected: float, actual: float) -> bool:
    return abs(expected - actual) <= REVERIFY_TOLERANCE * max(1.0, abs(expected))


# ==============================================================================
# PPT-inducing
# ==============================================================================

def _transposed_choi_verdict(ch: Channel, which: Subsystem) -> Verdict:
    m = ch.composite_choi.output_transposed(which)
    lowest = min_eigenvalue(m)
    return Verdict(
        claim=ChannelProperty.PPT_INDUCING,
        tag=VerdictTag.CERTIFIED if lowest >= psd_floor(m) else VerdictTag.UNKNOWN,
        method=METHOD_TRANSPOSED_CHOI_PSD,
        margin=lowest,
        detail=f"output {Subsystem(which).value} transposed",
    )


def ppt_inducing_sufficient(ch: Channel, which: Subsystem = Subsystem.B) -> Verdict:
    """
    CERTIFIED when the composite Choi with the output factor `which` (and not
    its reference) transposed is PSD, UNKNOWN otherwise.

    Raises:
        NotCompletelyPositiveError: the channel is not CP
        InvalidParameterError: the channel has no bipartition
    """
    require_completely_positive(ch)
    return _report(ch, _transposed_choi_verdict(ch, which))


def _output_refutation(
    ch: Channel,
    cut: BipartiteDims,
    psi: ComplexVector,
    w: ComplexVector,
    method: str,
) -> Verdict:
    """
    REFUTED verdict from an input psi and output witness w, after checking the
    output route against the product route:
    <w|PT_B(Phi[psi psi^dag])|w> = d <w (x) conj(psi)|Omega^{T_B}|w (x) conj(psi)>.
    """
    output_pt = _output_pt(ch, psi, cut)
    value = expectation(output_pt, w)
    product = ch.d * product_value(ch.composite_choi.output_transposed(Subsystem.B), w, psi.conj())
    if not _agree(value, product):
        raise NumericalFailureError(
            f"output and block-positivity refutations disagree for {ch.name}: {value:.12g} vs {product:.12g}"
        )
    mirrored = min_eigenvalue(_output_pt(ch, psi, cut, Subsystem.A))
    if not _agree(min_eigenvalue(output_pt), mirrored):
        raise NumericalFailureError(f"A- and B-transposed outputs of {ch.name} have different spectra")
    return Verdict(
        claim=ChannelProperty.PPT_INDUCING,
        tag=VerdictTag.REFUTED,
        method=method,
        margin=value,
        witness=Witness.build(WitnessKind.OUTPUT_PT, (psi, w), value, cut.as_tuple()),
    )


def classify_ppt_inducing(ch: Channel, cfg: Optional[SeesawConfig] = None) -> Verdict:
    """
    Decide whether every output of a map on A (x) B is PPT.

    1. composite Choi with output B (or A) transposed is PSD: CERTIFIED
    2. worst-case output search finds a negative PT eigenvalue: REFUTED
    3. block-positivity see-saw on the B-transposed Choi across AB|A'B':
       REFUTED on a negative product value, NUMERICALLY_LIKELY when the
       searches converged above -tol, UNKNOWN otherwise

    Raises:
        NotPositiveMapError: the map sends some state to a non-PSD operator
        InvalidParameterError: the channel has no bipartition
    """
    cfg = cfg or SeesawConfig()
    cut = ch.dims
    if not is_completely_positive(ch):
        positive = positivity_test(ch, cfg)
        if positive.refuted:
            raise NotPositiveMapError(positive.margin)

    for which in (Subsystem.B, Subsystem.A):
        sufficient = _transposed_choi_verdict(ch, which)
        if sufficient.certified:
            return _report(ch, sufficient)

    worst = worst_case_output_pt(ch, cut, cfg)
    if worst.min_value < -cfg.tol:
        return _report(
            ch, _output_refutation(ch, cut, worst.worst_input, worst.output_witness, METHOD_WORST_CASE_OUTPUT)
        )

    composite = ch.composite_choi
    bp = block_positivity(composite.output_transposed(Subsystem.B), composite.cut, cfg)
    if bp.refuted:
        return _report(ch, _output_refutation(ch, cut, bp.b.conj(), bp.a, METHOD_BLOCK_POSITIVITY))

    confident = bp.tag == BlockPositivityTag.NUMERICALLY_BLOCK_POSITIVE or worst.all_converged
    return _report(
        ch,
        Verdict(
            claim=ChannelProperty.PPT_INDUCING,
            tag=VerdictTag.NUMERICALLY_LIKELY if confident else VerdictTag.UNKNOWN,
            method=METHOD_BLOCK_POSITIVITY,
            margin=min(worst.min_value, ch.d * bp.margin),
        ),
    )


def one_sided_ppt_inducing(phi: Channel, d_b: int) -> Verdict:
    """
    phi (x) Id_B with d_b >= d_a is PPT-inducing iff the Choi of phi is PPT.
    A REFUTED verdict carries the maximally entangled input of A (x) B.

    Raises:
        ProportionRequirementError: d_b < d_a
        NotCompletelyPositiveError: phi is not CP
    """
    if d_b < phi.d:
        raise ProportionRequirementError(phi.d, d_b)
    require_completely_positive(phi)
    om = phi.choi.matrix
    lowest, _ = pt_min_eigenpair(om, phi.choi.dims)
    if lowest >= psd_floor(om):
        return _report(
            phi,
            Verdict(
                claim=ChannelProperty.ONE_SIDED_PPT_INDUCING,
                tag=VerdictTag.CERTIFIED,
                method=METHOD_ONE_SIDED_CHOI_PPT,
                margin=lowest,
            ),
        )

    cut = BipartiteDims.of(phi.d, d_b)
    psi = maximally_entangled(phi.d, d_b)
    value, w = min_eigenpair(_output_pt(tensor(phi, identity_channel(d_b)), psi, cut))
    return _report(
        phi,
        Verdict(
            claim=ChannelProperty.ONE_SIDED_PPT_INDUCING,
            tag=VerdictTag.REFUTED,
            method=METHOD_ONE_SIDED_CHOI_PPT,
            margin=value,
            witness=Witness.build(WitnessKind.OUTPUT_PT, (psi, w), value, cut.as_tuple()),
        ),
    )


# ==============================================================================
# Local maps
# ==============================================================================

def _embed_factor_witness(ch: Channel, index: int, witness: Witness) -> Witness:
    """
    Lift a Choi witness of factor `index` to the composite Choi: pair it with
    the basis product |k>|k'> of largest weight on the other factor's Choi,
    which keeps the sign and the Schmidt rank across AB|A'B'.
    """
    first, second = ch.factors
    other = second if index == 0 else first
    diagonal = np.real(np.diag(_choi_state(other)))
    partner = np.zeros(diagonal.shape[0], dtype=np.complex128)
    partner[int(np.argmax(diagonal))] = 1.0
    vector = witness.decoded()[0]
    local = np.kron(vector, partner) if index == 0 else np.kron(partner, vector)
    composite = local.reshape(first.d, first.d, second.d, second.d).transpose(0, 2, 1, 3).reshape(-1)

    cut = ch.choi.dims
    value = expectation(partial_transpose(_choi_state(ch), cut), composite)
    weights = None
    if witness.schmidt_weights is not None:
        weights = [float(x) for x in schmidt_decompose(composite, cut).weights]
    return Witness.build(WitnessKind(witness.kind), (composite,), value, cut.as_tuple(), weights)


def _local_conjunction(ch: Channel, claim: ChannelProperty, verdicts: Sequence[Verdict]) -> Verdict:
    """Verdict of a local map from those of its factors."""
    for index, verdict in enumerate(verdicts):
        if verdict.refuted:
            witness = _embed_factor_witness(ch, index, verdict.witness)
            return Verdict(
                claim=claim,
                tag=VerdictTag.REFUTED,
                method=METHOD_LOCAL_FACTORS,
                margin=witness.value,
                witness=witness,
                detail=f"factor {index}: {verdict.method}",
            )
    weakest = min(verdicts, key=lambda v: _STRENGTH[v.tag])
    details = {v.detail for v in verdicts if v.detail}
    return Verdict(
        claim=claim,
        tag=weakest.tag,
        method=METHOD_LOCAL_FACTORS,
        margin=min((v.margin for v in verdicts if v.margin is not None), default=None),
        detail=DETAIL_PPT_CONSISTENT if DETAIL_PPT_CONSISTENT in details else next(iter(details), None),
    )


# ==============================================================================
# Choi-state properties
# ==============================================================================

def entanglement_binding_certify(
    phi: Channel,
    cfg: Optional[SeesawConfig] = None,
    refute: bool = True,
) -> Verdict:
    """
    CERTIFIED when the Choi state is PPT, hence undistillable; REFUTED when a
    one-copy distillation witness on the Choi state is found. With
    `refute=False` an NPT Choi state gives UNKNOWN without searching.

    `detail` is "entanglement-breaking" for PPT Choi states with d^2 <= 6,
    where PPT means separable, and "ppt-consistent" above.

    Raises:
        NotCompletelyPositiveError: phi is not CP
    """
    cfg = cfg or SeesawConfig()
    require_completely_positive(phi)
    if len(phi.factors) == 2:
        factors = [entanglement_binding_certify(f, cfg, refute) for f in phi.factors]
        return _report(phi, _local_conjunction(phi, ChannelProperty.ENTANGLEMENT_BINDING, factors))

    rho, dims = _choi_state(phi), phi.choi.dims
    report = ppt_report(rho, dims)
    if report.is_ppt:
        return _report(
            phi,
            Verdict(
                claim=ChannelProperty.ENTANGLEMENT_BINDING,
                tag=VerdictTag.CERTIFIED,
                method=METHOD_CHOI_PPT,
                margin=report.min_pt_eigenvalue,
                detail=DETAIL_BREAKING if dims.side <= PPT_EXACT_MAX_PRODUCT else DETAIL_PPT_CONSISTENT,
            ),
        )

    found = refute_one_copy_undistillability(rho, dims, cfg) if refute else None
    if found is None:
        return _report(
            phi,
            Verdict(
                claim=ChannelProperty.ENTANGLEMENT_BINDING,
                tag=VerdictTag.UNKNOWN,
                method=METHOD_CHOI_DISTILLATION,
                margin=report.min_pt_eigenvalue,
            ),
        )
    witness = Witness.build(
        WitnessKind.CHOI_DISTILLATION,
        (found.vector,),
        found.value,
        dims.as_tuple(),
        [float(x) for x in found.schmidt_weights],
    )
    return _report(
        phi,
        Verdict(
            claim=ChannelProperty.ENTANGLEMENT_BINDING,
            tag=VerdictTag.REFUTED,
            method=METHOD_CHOI_DISTILLATION,
            margin=found.value,
            witness=witness,
        ),
    )


def entanglement_breaking_test(phi: Channel) -> Verdict:
    """
    Exact for d^2 <= 6 (PPT Choi iff separable). Above, an NPT Choi state
    refutes and a PPT one stays UNKNOWN with detail "ppt-consistent".

    Raises:
        NotCompletelyPositiveError: phi is not CP
    """
    require_completely_positive(phi)
    if len(phi.factors) == 2:
        factors = [entanglement_breaking_test(f) for f in phi.factors]
        return _report(phi, _local_conjunction(phi, ChannelProperty.ENTANGLEMENT_BREAKING, factors))

    rho, dims = _choi_state(phi), phi.choi.dims
    report = ppt_report(rho, dims)
    if not report.is_ppt:
        verdict = Verdict(
            claim=ChannelProperty.ENTANGLEMENT_BREAKING,
            tag=VerdictTag.REFUTED,
            method=METHOD_CHOI_PPT,
            margin=report.min_pt_eigenvalue,
            witness=Witness.build(
                WitnessKind.CHOI_PT, (report.witness,), report.min_pt_eigenvalue, dims.as_tuple()
            ),
        )
    elif dims.side <= PPT_EXACT_MAX_PRODUCT:
        verdict = Verdict(
            claim=ChannelProperty.ENTANGLEMENT_BREAKING,
            tag=VerdictTag.CERTIFIED,
            method=METHOD_CHOI_PPT,
            margin=report.min_pt_eigenvalue,
        )
    else:
        verdict = Verdict(
            claim=ChannelProperty.ENTANGLEMENT_BREAKING,
            tag=VerdictTag.UNKNOWN,
            method=METHOD_CHOI_PPT,
            margin=report.min_pt_eigenvalue,
            detail=DETAIL_PPT_CONSISTENT,
        )
    return _report(phi, verdict)


# ==============================================================================
# Output distillability
# ==============================================================================

def distillation_prohibiting_refute(
    ch: Channel,
    cfg: Optional[SeesawConfig] = None,
    ppt_verdict: Optional[Verdict] = None,
) -> Verdict:
    """
    CERTIFIED when the map is certified PPT-inducing; REFUTED when some pure
    input has an output with a one-copy distillation witness. A PPT-inducing
    verdict already at hand is reused, and its refuting input seeds the search.

    Raises:
        NotCompletelyPositiveError: the channel is not CP
    """
    cfg = cfg or SeesawConfig()
    require_completely_positive(ch)
    ppt = ppt_verdict or classify_ppt_inducing(ch, cfg)
    if ppt.certified:
        return _report(
            ch,
            Verdict(
                claim=ChannelProperty.DISTILLATION_PROHIBITING,
                tag=VerdictTag.CERTIFIED,
                method=METHOD_PPT_INDUCING_SUBSET,
                margin=ppt.margin,
                detail=ppt.method,
            ),
        )

    start = ppt.witness.decoded()[0] if ppt.refuted else None
    found = refute_output_distillability(ch, ch.dims, cfg, start=start)
    if found is not None:
        witness = Witness.build(
            WitnessKind.OUTPUT_DISTILLATION,
            (found.worst_input, found.witness.vector),
            found.witness.value,
            ch.dims.as_tuple(),
            [float(x) for x in found.witness.schmidt_weights],
        )
        return _report(
            ch,
            Verdict(
                claim=ChannelProperty.DISTILLATION_PROHIBITING,
                tag=VerdictTag.REFUTED,
                method=METHOD_OUTPUT_DISTILLATION,
                margin=found.witness.value,
                witness=witness,
            ),
        )
    likely = ppt.tag == VerdictTag.NUMERICALLY_LIKELY
    return _report(
        ch,
        Verdict(
            claim=ChannelProperty.DISTILLATION_PROHIBITING,
            tag=VerdictTag.NUMERICALLY_LIKELY if likely else VerdictTag.UNKNOWN,
            method=METHOD_OUTPUT_DISTILLATION,
            margin=ppt.margin,
        ),
    )


def entanglement_annihilating_two_qubit(
    ch: Channel,
    cfg: Optional[SeesawConfig] = None,
    ppt_verdict: Optional[Verdict] = None,
) -> Verdict:
    """
    On 2 (x) 2 an output is separable iff it is PPT, so annihilating and
    PPT-inducing coincide; the PPT-inducing verdict, computed here unless
    one is passed in, is relabelled.

    Raises:
        DimensionMismatchError: the channel does not act on 2 (x) 2
    """
    if ch.subsystems != (2, 2):
        raise DimensionMismatchError("2x2", ch.subsystems, "subsystems")
    verdict = ppt_verdict or classify_ppt_inducing(ch, cfg)
    detail = DETAIL_SEARCH_CONFIDENCE if verdict.tag == VerdictTag.NUMERICALLY_LIKELY else DETAIL_EXACT_TWO_QUBIT
    return verdict.model_copy(
        update={"claim": ChannelProperty.ENTANGLEMENT_ANNIHILATING.value, "detail": detail}
    )


# ==============================================================================
# Positivity
# ==============================================================================

def positivity_test(ch: Channel, cfg: Optional[SeesawConfig] = None) -> Verdict:
    """
    Positive iff the Choi operator is block-positive across S|S' (AB|A'B' for
    maps on A (x) B). CERTIFIED when it is PSD.
    """
    cfg = cfg or SeesawConfig()
    bp = block_positivity(ch.choi.matrix, ch.choi.dims, cfg)
    if bp.tag == BlockPositivityTag.CERTIFIED_PSD:
        verdict = Verdict(
            claim=ChannelProperty.POSITIVE, tag=VerdictTag.CERTIFIED, method=METHOD_CHOI_PSD, margin=bp.margin
        )
    elif bp.refuted:
        verdict = Verdict(
            claim=ChannelProperty.POSITIVE,
            tag=VerdictTag.REFUTED,
            method=METHOD_CHOI_PRODUCT,
            margin=bp.margin,
            witness=Witness.build(WitnessKind.CHOI_PRODUCT, (bp.a, bp.b), bp.margin, ch.choi.dims.as_tuple()),
        )
    else:
        verdict = Verdict(
            claim=ChannelProperty.POSITIVE,
            tag=(
                VerdictTag.NUMERICALLY_LIKELY
                if bp.tag == BlockPositivityTag.NUMERICALLY_BLOCK_POSITIVE
                else VerdictTag.UNKNOWN
            ),
            method=METHOD_CHOI_PRODUCT,
            margin=bp.margin,
        )
    return _report(ch, verdict)


def complete_positivity_test(ch: Channel) -> Verdict:
    """Exact: CERTIFIED iff the Choi operator is PSD, REFUTED with its lowest eigenvector."""
    om = ch.choi.matrix
    lowest, w = min_eigenpair(om)
    if lowest >= psd_floor(om):
        verdict = Verdict(
            claim=ChannelProperty.COMPLETELY_POSITIVE, tag=VerdictTag.CERTIFIED, method=METHOD_CHOI_PSD, margin=lowest
        )
    else:
        verdict = Verdict(
            claim=ChannelProperty.COMPLETELY_POSITIVE,
            tag=VerdictTag.REFUTED,
            method=METHOD_CHOI_PSD,
            margin=lowest,
            witness=Witness.build(WitnessKind.CHOI_EIGEN, (w,), expectation(om, w), ch.choi.dims.as_tuple()),
        )
    return _report(ch, verdict)


# ==============================================================================
# Re-verification
# ==============================================================================

def _channel_on_cut(ch: Channel, cut: BipartiteDims) -> Channel:
    if ch.d == cut.side:
        return ch
    if ch.d == cut.d_a:
        return tensor(ch, identity_channel(cut.d_b))
    raise DimensionMismatchError(cut.side, ch.d, "witness cut")


def reverify(verdict: Verdict, ch: Channel) -> float:
    """
    Evaluate the stored witness of a verdict directly on the channel, with no
    search involved, and return the value.

    Raises:
        InvalidParameterError: the verdict carries no witness
        NumericalFailureError: the value differs from the stored one
    """
    witness = verdict.witness
    if witness is None:
        raise InvalidParameterError(f"{verdict.claim} verdict carries no witness", "witness")
    vectors = witness.decoded()
    cut = BipartiteDims.of(*witness.cut)
    kind = WitnessKind(witness.kind)

    if kind in (WitnessKind.OUTPUT_PT, WitnessKind.OUTPUT_DISTILLATION):
        psi, w = vectors
        value = expectation(_output_pt(_channel_on_cut(ch, cut), psi, cut), w)
    elif kind in (WitnessKind.CHOI_PT, WitnessKind.CHOI_DISTILLATION):
        value = expectation(partial_transpose(_choi_state(ch), cut), vectors[0])
    elif kind == WitnessKind.CHOI_EIGEN:
        value = expectation(ch.choi.matrix, vectors[0])
    else:
        value = product_value(ch.choi.matrix, *vectors)

    if not _agree(witness.value, value):
        raise NumericalFailureError(
            f"witness of {verdict.claim} re-evaluates to {value:.12g}, stored {witness.value:.12g}"
        )
    logger.debug("witness re-verified", channel=ch.name, kind=kind.value, value=value)
    return value
