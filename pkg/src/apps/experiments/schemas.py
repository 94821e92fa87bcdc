# src/apps/experiments/schemas.py

"""
Run specifications and the reports the CLI writes
"""

from pathlib import Path
from typing import Any, Optional

from pydantic import Field, model_validator

from src.apps.classifiers.schemas import Verdict
from src.apps.entanglement.schemas import SeesawConfig
from src.common.enums import ChannelFamily, Command, Eigensolver, OutputFormat
from src.core.base_model import BaseSchema
from src.core.config import settings

_NEEDS_D = (Command.THRESHOLD, Command.SWEEP, Command.PROFILE)


class RunSpec(BaseSchema):
    """
    One CLI invocation. Identical specs produce identical output bytes.

    A channel comes either from a builtin `family` (with `d` and `q`) or from
    a channel `file`, never both.
    """
    command: Command
    family: Optional[ChannelFamily] = None
    file: Optional[Path] = None
    d: Optional[int] = Field(None, ge=2)
    q: Optional[float] = None
    qmin: Optional[float] = None
    qmax: Optional[float] = None
    steps: Optional[int] = Field(None, ge=2)
    dmax: Optional[int] = Field(None, ge=2)
    seed: int = Field(default_factory=lambda: settings.seed, ge=0)
    restarts: Optional[int] = Field(None, ge=1)
    tol: Optional[float] = Field(None, gt=0)
    workers: Optional[int] = Field(None, ge=1)
    eigensolver: Optional[Eigensolver] = None
    out: Optional[Path] = None
    format: OutputFormat = OutputFormat.CSV
    one_sided: bool = False
    allow_non_tp: bool = False

    @model_validator(mode="after")
    def check_sources(self) -> "RunSpec":
        if self.command == Command.CLASSIFY:
            if (self.family is None) == (self.file is None):
                raise ValueError("classify needs exactly one of --family or --file")
            if self.family is not None and (self.d is None or self.q is None):
                raise ValueError("--family needs --d and --q")
        elif self.file is not None:
            raise ValueError(f"{self.command} runs on the depolarizing family only, --file is not accepted")

        if self.command in _NEEDS_D and self.d is None:
            raise ValueError(f"{self.command} needs --d")
        if self.command == Command.PROFILE and self.q is None:
            raise ValueError("profile needs --q")
        if self.command == Command.SWEEP:
            if self.qmin is None or self.qmax is None:
                raise ValueError("sweep needs --qmin and --qmax")
            if self.qmin >= self.qmax:
                raise ValueError(f"--qmin must be below --qmax, got {self.qmin} >= {self.qmax}")
        return self

    def seesaw_config(self) -> SeesawConfig:
        """Search budget from settings with the run's overrides applied."""
        overrides: dict[str, Any] = {"restarts": self.restarts, "seed": self.seed, "workers": self.workers}
        if self.command == Command.CLASSIFY:
            overrides["tol"] = self.tol
        return SeesawConfig().with_overrides(**overrides)


class ChannelSummary(BaseSchema):
    name: str
    d: int
    subsystems: Optional[tuple[int, int]] = None


class VerdictReport(BaseSchema):
    """Every verdict `classify` produced for one channel."""
    command: Command = Command.CLASSIFY
    channel: ChannelSummary
    verdicts: list[Verdict]


class TableReport(BaseSchema):
    """
    Rows of a numerical experiment, each row aligned with `columns`.
    `summary` holds the headline numbers (argmin, violations, bracket).
    """
    command: Command
    columns: list[str]
    rows: list[list[Any]]
    summary: dict[str, Any] = Field(default_factory=dict)
