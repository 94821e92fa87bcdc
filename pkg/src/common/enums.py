# src/common/enums.py

"""Enumerations shared across apps."""

from enum import Enum


class Subsystem(str, Enum):
    """Factor of a bipartite operator"""
    A = "A"
    B = "B"


class VerdictTag(str, Enum):
    """Four-valued classification outcome"""
    CERTIFIED = "certified"
    NUMERICALLY_LIKELY = "numerically_likely"
    REFUTED = "refuted"
    UNKNOWN = "unknown"


class BlockPositivityTag(str, Enum):
    CERTIFIED_PSD = "certified_psd"
    NUMERICALLY_BLOCK_POSITIVE = "numerically_block_positive"
    REFUTED = "refuted"
    UNKNOWN = "unknown"


class WitnessKind(str, Enum):
    """What the stored witness vectors mean and how to re-evaluate them"""
    OUTPUT_PT = "output_pt"                      # <w| PT_B(Phi[psi psi^dag]) |w>
    OUTPUT_DISTILLATION = "output_distillation"  # same form, w of Schmidt rank <= 2
    CHOI_PT = "choi_pt"                          # <w| PT(Omega / tr Omega) |w>
    CHOI_DISTILLATION = "choi_distillation"      # same form, w of Schmidt rank <= 2
    CHOI_EIGEN = "choi_eigen"                    # <w| Omega |w>
    CHOI_PRODUCT = "choi_product"                # <a (x) b| Omega |a (x) b>


class ChannelKind(str, Enum):
    KRAUS = "kraus"
    CHOI = "choi"


class ApplyPath(str, Enum):
    """Which representation `apply` evaluates"""
    AUTO = "auto"
    KRAUS = "kraus"
    CHOI = "choi"


class ChannelFamily(str, Enum):
    DEPOLARIZING = "depolarizing"
    DEPOLARIZING_PAIR = "depolarizing2"


class Command(str, Enum):
    CLASSIFY = "classify"
    THRESHOLD = "threshold"
    SWEEP = "sweep"
    PROFILE = "profile"
    CONJECTURE = "conjecture"


class OutputFormat(str, Enum):
    CSV = "csv"
    JSON = "json"


class Eigensolver(str, Enum):
    LAPACK = "lapack"
    JACOBI = "jacobi"


class ChannelProperty(str, Enum):
    """Property a verdict speaks about"""
    COMPLETELY_POSITIVE = "completely_positive"
    POSITIVE = "positive"
    PPT_INDUCING = "ppt_inducing"
    ONE_SIDED_PPT_INDUCING = "one_sided_ppt_inducing"
    DISTILLATION_PROHIBITING = "distillation_prohibiting"
    ENTANGLEMENT_BREAKING = "entanglement_breaking"
    ENTANGLEMENT_BINDING = "entanglement_binding"
    ENTANGLEMENT_ANNIHILATING = "entanglement_annihilating"
